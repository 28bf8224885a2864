//! Index coding as a multi-unicast network through one shared bottleneck.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Edge, Network, Path, Session};
use crate::witness::{CutSetSequence, PathSetSequence, PermutationSequence, Witness};

/// Broadcast with side information: terminal `i` wants message `i` and
/// already holds the messages in `side[i]` (all indices 0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexCodingInstance {
    k: usize,
    m: usize,
    side: Vec<Vec<usize>>,
}

/// JSON form; message numbers in `side` are 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IndexJson {
    #[serde(rename = "K")]
    pub k: usize,
    pub m: usize,
    pub side: Vec<Vec<usize>>,
}

impl IndexCodingInstance {
    pub fn new(k: usize, m: usize, side: Vec<Vec<usize>>) -> Result<Self> {
        let bad = |msg: String| Err(Error::InvalidIndexInstance(msg));
        if k == 0 {
            return bad("K must be positive".into());
        }
        if m == 0 {
            return bad("m must be positive".into());
        }
        if side.len() != k {
            return bad(format!("side has {} entries for K = {k}", side.len()));
        }
        let mut side = side;
        for (i, h) in side.iter_mut().enumerate() {
            if let Some(&x) = h.iter().find(|&&x| x >= k) {
                return bad(format!("side[{}] names message {} of {k}", i + 1, x + 1));
            }
            if h.contains(&i) {
                return bad(format!("terminal {} already holds its own message", i + 1));
            }
            h.sort_unstable();
            h.dedup();
        }
        Ok(IndexCodingInstance { k, m, side })
    }

    pub fn from_json(json: &IndexJson) -> Result<Self> {
        let side = json
            .side
            .iter()
            .map(|h| {
                h.iter()
                    .map(|&x| {
                        x.checked_sub(1)
                            .ok_or_else(|| Error::InvalidIndexInstance("side: message numbers start at 1".into()))
                    })
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(json.k, json.m, side)
    }

    pub fn to_json(&self) -> IndexJson {
        IndexJson { k: self.k, m: self.m, side: self.side.iter().map(|h| h.iter().map(|x| x + 1).collect()).collect() }
    }

    pub fn terminals(&self) -> usize {
        self.k
    }

    pub fn message_length(&self) -> usize {
        self.m
    }

    pub fn side(&self, i: usize) -> &[usize] {
        &self.side[i]
    }
}

/// Network `s_i -> u -> v -> d_i` plus a direct edge `s_j -> d_i` whenever
/// terminal `i` holds message `j`, with the bottleneck witness: every cut is
/// `{(u,v)}` and every path runs through it.
///
/// Edge order: `(s_i,u)` for all `i`, then `(v,d_i)`, then `(u,v)`, then
/// side edges sorted by source then sink.
pub fn index_to_network(inst: &IndexCodingInstance) -> (Network, Witness) {
    let k = inst.k;
    let s = |i: usize| i;
    let u = k;
    let v = k + 1;
    let d = |i: usize| k + 2 + i;
    let mut names: Vec<String> = (1..=k).map(|i| format!("s{i}")).collect();
    names.push("u".into());
    names.push("v".into());
    names.extend((1..=k).map(|i| format!("d{i}")));

    let mut edges: Vec<Edge> = (0..k).map(|i| Edge { tail: s(i), head: u, index: 0 }).collect();
    edges.extend((0..k).map(|i| Edge { tail: v, head: d(i), index: 0 }));
    let bottleneck = edges.len();
    edges.push(Edge { tail: u, head: v, index: 0 });
    let mut side_edges: Vec<(usize, usize)> = (0..k).flat_map(|i| inst.side[i].iter().map(move |&j| (j, i))).collect();
    side_edges.sort_unstable();
    edges.extend(side_edges.iter().map(|&(j, i)| Edge { tail: s(j), head: d(i), index: 0 }));

    let sessions = (0..k).map(|i| Session { source: s(i), sink: d(i) }).collect();
    let net = Network::build(names, edges, sessions).expect("construction is a valid network");
    let witness = Witness {
        order: (0..k).collect(),
        cuts: CutSetSequence(vec![vec![bottleneck]; k]),
        perms: PermutationSequence(vec![vec![bottleneck]; k]),
        paths: PathSetSequence((0..k).map(|i| vec![Path(vec![i, bottleneck, k + i])]).collect()),
    };
    (net, witness)
}

/// Side-information digraph: an arc `(j, i)` whenever terminal `j` holds
/// message `i` (0-based), sorted.
pub fn side_information_graph(inst: &IndexCodingInstance) -> Vec<(usize, usize)> {
    let mut arcs: Vec<(usize, usize)> = (0..inst.k).flat_map(|j| inst.side[j].iter().map(move |&i| (j, i))).collect();
    arcs.sort_unstable();
    arcs
}

/// Outcome of ordering the side-information digraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reindex {
    /// `order[r]` is the terminal placed at position `r`; for every arc
    /// `(j, i)` terminal `i` comes before terminal `j`, so no later source
    /// has a direct edge to an earlier sink.
    Order(Vec<usize>),
    /// Terminals of a directed cycle, each holding the next one's message.
    Cycle(Vec<usize>),
}

/// Orders the terminals so that every held message belongs to an earlier
/// terminal, picking the smallest available terminal first.
pub fn acyclic_reindex(k: usize, arcs: &[(usize, usize)]) -> Reindex {
    // i must precede j for each arc (j, i).
    let mut preds = vec![0usize; k];
    let mut succs = vec![Vec::new(); k];
    for &(j, i) in arcs {
        preds[j] += 1;
        succs[i].push(j);
    }
    let mut order = Vec::with_capacity(k);
    let mut ready: std::collections::BTreeSet<usize> = (0..k).filter(|&x| preds[x] == 0).collect();
    while let Some(x) = ready.pop_first() {
        order.push(x);
        for &y in &succs[x] {
            preds[y] -= 1;
            if preds[y] == 0 {
                ready.insert(y);
            }
        }
    }
    if order.len() == k {
        return Reindex::Order(order);
    }
    // Walk arcs among the leftover terminals until one repeats.
    let left: Vec<bool> = (0..k).map(|x| preds[x] > 0).collect();
    let start = (0..k).find(|&x| left[x]).unwrap();
    let mut path = vec![start];
    loop {
        let x = *path.last().unwrap();
        let next = arcs
            .iter()
            .find(|&&(j, i)| j == x && left[i])
            .map(|&(_, i)| i)
            .expect("leftover terminal holds a leftover message");
        if let Some(pos) = path.iter().position(|&y| y == next) {
            return Reindex::Cycle(path[pos..].to_vec());
        }
        path.push(next);
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rawness {
    pub raw: bool,
    /// `m * K` when raw; otherwise only `l_min < m * K` is known.
    pub l_min: Option<usize>,
    pub reindex: Reindex,
}

/// Raw (no coding helps) exactly when the side-information digraph is acyclic.
pub fn decide_index_rawness(inst: &IndexCodingInstance) -> Rawness {
    let reindex = acyclic_reindex(inst.k, &side_information_graph(inst));
    let raw = matches!(reindex, Reindex::Order(_));
    Rawness { raw, l_min: raw.then_some(inst.m * inst.k), reindex }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::Reading;

    fn fig3() -> IndexCodingInstance {
        IndexCodingInstance::new(4, 2, vec![vec![], vec![0], vec![0, 1], vec![1, 2]]).unwrap()
    }

    #[test]
    fn fig3_network_shape() {
        let (net, w) = index_to_network(&fig3());
        assert_eq!(net.node_count(), 10);
        let side: Vec<(String, String)> = net.edges()[9..]
            .iter()
            .map(|e| (net.node_name(e.tail).to_string(), net.node_name(e.head).to_string()))
            .collect();
        let expect = [("s1", "d2"), ("s1", "d3"), ("s2", "d3"), ("s2", "d4"), ("s3", "d4")];
        assert_eq!(side.len(), expect.len());
        for ((a, b), (x, y)) in side.iter().zip(expect) {
            assert_eq!((a.as_str(), b.as_str()), (x, y));
        }
        w.verify(&net, Reading::Standard).unwrap();
    }

    #[test]
    fn fig3_is_raw() {
        let r = decide_index_rawness(&fig3());
        assert!(r.raw);
        assert_eq!(r.l_min, Some(8));
        assert_eq!(r.reindex, Reindex::Order(vec![0, 1, 2, 3]));
    }

    #[test]
    fn mutual_side_info_is_cyclic() {
        let inst = IndexCodingInstance::new(2, 1, vec![vec![1], vec![0]]).unwrap();
        let r = decide_index_rawness(&inst);
        assert!(!r.raw);
        assert_eq!(r.reindex, Reindex::Cycle(vec![0, 1]));
    }

    #[test]
    fn single_terminal_chain() {
        let inst = IndexCodingInstance::new(1, 3, vec![vec![]]).unwrap();
        let (net, _) = index_to_network(&inst);
        assert_eq!(net.node_count(), 4);
        assert_eq!(net.edge_count(), 3);
        assert_eq!(decide_index_rawness(&inst).l_min, Some(3));
    }

    #[test]
    fn own_message_rejected() {
        assert!(IndexCodingInstance::new(2, 1, vec![vec![0], vec![]]).is_err());
        assert!(IndexCodingInstance::new(2, 1, vec![vec![5], vec![]]).is_err());
    }
}
