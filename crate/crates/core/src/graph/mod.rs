//! Directed acyclic multigraphs with unit-capacity edges and unicast sessions.
//!
//! Every other module consumes [`Network`]. Nodes and edges are addressed by
//! dense integer ids; edge ids are the positions of the edges in the input
//! description and never change after validation.

mod flow;
mod paths;

use std::collections::{HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use flow::{edge_disjoint_paths, enumerate_min_cutsets, is_cut, min_cut, MinCut};
pub use paths::enumerate_paths;

pub type NodeId = usize;
pub type EdgeId = usize;

/// Default cap on enumerated paths and cut-sets.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub tail: NodeId,
    pub head: NodeId,
    pub index: u32,
}

/// A unicast session. Sessions are stored 0-based; user-facing output
/// numbers them from 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Session {
    pub source: NodeId,
    pub sink: NodeId,
}

/// JSON form of a network.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawNetwork {
    pub nodes: Vec<String>,
    pub edges: Vec<RawEdge>,
    pub sessions: Vec<RawSession>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawEdge {
    pub tail: String,
    pub head: String,
    #[serde(default)]
    pub index: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawSession {
    pub source: String,
    pub sink: String,
}

/// A validated network. Immutable once built.
#[derive(Debug, Clone)]
pub struct Network {
    names: Vec<String>,
    name_index: HashMap<String, NodeId>,
    edges: Vec<Edge>,
    sessions: Vec<Session>,
    out_edges: Vec<Vec<EdgeId>>,
    in_edges: Vec<Vec<EdgeId>>,
    topo: Vec<NodeId>,
}

/// Ordered edge sequence; consecutive edges share a node.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(pub Vec<EdgeId>);

impl Path {
    pub fn edges(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.contains(&e)
    }
}

impl From<Vec<EdgeId>> for Path {
    fn from(v: Vec<EdgeId>) -> Self {
        Path(v)
    }
}

/// Edge subset of a network, e.g. a routing domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    edges: Vec<EdgeId>,
    mask: Vec<bool>,
}

impl Subgraph {
    pub fn from_mask(mask: Vec<bool>) -> Self {
        let edges = mask.iter().enumerate().filter_map(|(e, &m)| m.then_some(e)).collect();
        Subgraph { edges, mask }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.mask.get(e).copied().unwrap_or(false)
    }

    /// True when no path exists (the session cannot reach its sink).
    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn mask(&self) -> &[bool] {
        &self.mask
    }
}

/// Generic truncatable enumeration result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enumeration<T> {
    pub items: Vec<T>,
    pub truncated: bool,
}

pub fn validate_network(raw: &RawNetwork) -> Result<Network> {
    Network::from_raw(raw)
}

impl Network {
    pub fn from_raw(raw: &RawNetwork) -> Result<Network> {
        let mut name_index = HashMap::with_capacity(raw.nodes.len());
        for (i, name) in raw.nodes.iter().enumerate() {
            if name_index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateNode(name.clone()));
            }
        }
        let lookup = |name: &str| -> Result<NodeId> {
            name_index.get(name).copied().ok_or_else(|| Error::UnknownNode(name.to_string()))
        };

        let mut edges = Vec::with_capacity(raw.edges.len());
        let mut seen = HashSet::new();
        for re in &raw.edges {
            let edge = Edge { tail: lookup(&re.tail)?, head: lookup(&re.head)?, index: re.index };
            if !seen.insert(edge) {
                return Err(Error::DuplicateEdge { tail: re.tail.clone(), head: re.head.clone(), index: re.index });
            }
            edges.push(edge);
        }

        let mut sessions = Vec::with_capacity(raw.sessions.len());
        for rs in &raw.sessions {
            sessions.push(Session { source: lookup(&rs.source)?, sink: lookup(&rs.sink)? });
        }

        Network::build(raw.nodes.clone(), edges, sessions)
    }

    /// Builds a network from already-resolved parts, running every check
    /// `from_raw` performs except name resolution.
    pub fn build(names: Vec<String>, edges: Vec<Edge>, sessions: Vec<Session>) -> Result<Network> {
        let n = names.len();
        let mut name_index = HashMap::with_capacity(n);
        for (i, name) in names.iter().enumerate() {
            if name_index.insert(name.clone(), i).is_some() {
                return Err(Error::DuplicateNode(name.clone()));
            }
        }
        let mut out_edges = vec![Vec::new(); n];
        let mut in_edges = vec![Vec::new(); n];
        let mut seen = HashSet::new();
        for (id, e) in edges.iter().enumerate() {
            if e.tail >= n || e.head >= n {
                return Err(Error::UnknownNode(format!("#{}", e.tail.max(e.head))));
            }
            if !seen.insert(*e) {
                return Err(Error::DuplicateEdge {
                    tail: names[e.tail].clone(),
                    head: names[e.head].clone(),
                    index: e.index,
                });
            }
            out_edges[e.tail].push(id);
            in_edges[e.head].push(id);
        }

        let topo = topological_order(n, &edges, &out_edges, &in_edges).map_err(|edge| Error::CycleDetected {
            edge,
            tail: names[edges[edge].tail].clone(),
            head: names[edges[edge].head].clone(),
        })?;

        for (i, s) in sessions.iter().enumerate() {
            if s.source >= n || s.sink >= n {
                return Err(Error::UnknownSession(i + 1));
            }
            if s.source == s.sink {
                return Err(Error::DegenerateSession { session: i + 1 });
            }
            if !in_edges[s.source].is_empty() {
                return Err(Error::SourceHasInEdge { session: i + 1 });
            }
            if !out_edges[s.sink].is_empty() {
                return Err(Error::SinkHasOutEdge { session: i + 1 });
            }
        }

        Ok(Network { names, name_index, edges, sessions, out_edges, in_edges, topo })
    }

    pub fn to_raw(&self) -> RawNetwork {
        RawNetwork {
            nodes: self.names.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| RawEdge { tail: self.names[e.tail].clone(), head: self.names[e.head].clone(), index: e.index })
                .collect(),
            sessions: self
                .sessions
                .iter()
                .map(|s| RawSession { source: self.names[s.source].clone(), sink: self.names[s.sink].clone() })
                .collect(),
        }
    }

    /// Same graph with sessions listed in `order` (`order[r]` is the old
    /// 0-based index of the session placed at position `r`).
    pub fn with_session_order(&self, order: &[usize]) -> Network {
        assert_eq!(order.len(), self.sessions.len(), "order must be a permutation");
        let mut net = self.clone();
        net.sessions = order.iter().map(|&i| self.sessions[i]).collect();
        net
    }

    pub fn node_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn session_count(&self) -> usize {
        self.sessions.len()
    }

    pub fn node_name(&self, v: NodeId) -> &str {
        &self.names[v]
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.name_index.get(name).copied()
    }

    pub fn edge(&self, e: EdgeId) -> Edge {
        self.edges[e]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn session(&self, i: usize) -> Session {
        self.sessions[i]
    }

    pub fn sessions(&self) -> &[Session] {
        &self.sessions
    }

    pub fn out_edges(&self, v: NodeId) -> &[EdgeId] {
        &self.out_edges[v]
    }

    pub fn in_edges(&self, v: NodeId) -> &[EdgeId] {
        &self.in_edges[v]
    }

    pub fn topological_order(&self) -> &[NodeId] {
        &self.topo
    }

    /// Edge ids sorted so that every edge comes after all edges entering its tail.
    pub fn edges_in_topological_order(&self) -> Vec<EdgeId> {
        self.topo.iter().flat_map(|&v| self.out_edges[v].iter().copied()).collect()
    }

    /// Readable label for diagnostics, e.g. `(s1,v2)#0`.
    pub fn edge_label(&self, e: EdgeId) -> String {
        let edge = self.edges[e];
        format!("({},{})#{}", self.names[edge.tail], self.names[edge.head], edge.index)
    }

    /// Nodes reachable from `u` without crossing `blocked` edges.
    pub fn reachable_from(&self, u: NodeId, blocked: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::from([u]);
        seen[u] = true;
        while let Some(x) = queue.pop_front() {
            for &e in &self.out_edges[x] {
                if blocked.get(e).copied().unwrap_or(false) {
                    continue;
                }
                let h = self.edges[e].head;
                if !seen[h] {
                    seen[h] = true;
                    queue.push_back(h);
                }
            }
        }
        seen
    }

    /// Nodes that reach `v` without crossing `blocked` edges.
    pub fn reaching(&self, v: NodeId, blocked: &[bool]) -> Vec<bool> {
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::from([v]);
        seen[v] = true;
        while let Some(x) = queue.pop_front() {
            for &e in &self.in_edges[x] {
                if blocked.get(e).copied().unwrap_or(false) {
                    continue;
                }
                let t = self.edges[e].tail;
                if !seen[t] {
                    seen[t] = true;
                    queue.push_back(t);
                }
            }
        }
        seen
    }

    /// A `u -> v` path avoiding `blocked` edges, if any (BFS, lowest edge ids first).
    pub fn find_path(&self, u: NodeId, v: NodeId, blocked: &[bool]) -> Option<Path> {
        let mut parent: Vec<Option<EdgeId>> = vec![None; self.node_count()];
        let mut seen = vec![false; self.node_count()];
        let mut queue = VecDeque::from([u]);
        seen[u] = true;
        while let Some(x) = queue.pop_front() {
            if x == v {
                break;
            }
            for &e in &self.out_edges[x] {
                if blocked.get(e).copied().unwrap_or(false) {
                    continue;
                }
                let h = self.edges[e].head;
                if !seen[h] {
                    seen[h] = true;
                    parent[h] = Some(e);
                    queue.push_back(h);
                }
            }
        }
        if !seen[v] {
            return None;
        }
        let mut edges = Vec::new();
        let mut x = v;
        while x != u {
            let e = parent[x].expect("BFS tree is connected");
            edges.push(e);
            x = self.edges[e].tail;
        }
        edges.reverse();
        Some(Path(edges))
    }

    /// Edges lying on some `u -> v` path.
    pub fn domain_between(&self, u: NodeId, v: NodeId) -> Subgraph {
        let fwd = self.reachable_from(u, &[]);
        let bwd = self.reaching(v, &[]);
        let mask = self.edges.iter().map(|e| u != v && fwd[e.tail] && bwd[e.head]).collect();
        Subgraph::from_mask(mask)
    }

    /// Routing domain of 0-based session `i`: the edges on its source-sink paths.
    pub fn routing_domain(&self, i: usize) -> Result<Subgraph> {
        let s = self.sessions.get(i).ok_or(Error::UnknownSession(i + 1))?;
        Ok(self.domain_between(s.source, s.sink))
    }

    /// Source reachability per session: `table[i][v]` is true when the
    /// source of 0-based session `i` reaches node `v`.
    pub fn source_reach(&self) -> Vec<Vec<bool>> {
        self.sessions.iter().map(|s| self.reachable_from(s.source, &[])).collect()
    }

    /// Largest 1-based session index whose source reaches `tail(e)`, or 0
    /// when no source does.
    pub fn alpha(&self, e: EdgeId) -> usize {
        let tail = self.edges[e].tail;
        self.sessions
            .iter()
            .enumerate()
            .rev()
            .find(|(_, s)| self.reachable_from(s.source, &[])[tail])
            .map_or(0, |(i, _)| i + 1)
    }

    /// [`Network::alpha`] for every edge at once.
    pub fn alpha_all(&self) -> Vec<usize> {
        alpha_from_reach(self, &self.source_reach())
    }

    /// Checks that `path` is a `u -> v` path of this network with no repeated edge.
    pub fn is_path_between(&self, path: &[EdgeId], u: NodeId, v: NodeId) -> bool {
        if path.is_empty() || path.iter().any(|&e| e >= self.edge_count()) {
            return false;
        }
        if self.edges[path[0]].tail != u || self.edges[*path.last().unwrap()].head != v {
            return false;
        }
        let consecutive = path.windows(2).all(|w| self.edges[w[0]].head == self.edges[w[1]].tail);
        let mut seen = HashSet::new();
        consecutive && path.iter().all(|e| seen.insert(*e))
    }
}

/// Alpha values computed from a precomputed source reachability table.
pub fn alpha_from_reach(net: &Network, reach: &[Vec<bool>]) -> Vec<usize> {
    net.edges
        .iter()
        .map(|edge| reach.iter().enumerate().rev().find(|(_, r)| r[edge.tail]).map_or(0, |(i, _)| i + 1))
        .collect()
}

/// Kahn's algorithm; on failure returns an edge lying on a cycle.
fn topological_order(
    n: usize,
    edges: &[Edge],
    out_edges: &[Vec<EdgeId>],
    in_edges: &[Vec<EdgeId>],
) -> std::result::Result<Vec<NodeId>, EdgeId> {
    let mut indeg: Vec<usize> = in_edges.iter().map(Vec::len).collect();
    let mut queue: VecDeque<NodeId> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &e in &out_edges[v] {
            let h = edges[e].head;
            indeg[h] -= 1;
            if indeg[h] == 0 {
                queue.push_back(h);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // Every unplaced node keeps an unplaced predecessor; walk back until a
    // node repeats and report the edge that closes the loop.
    let placed: HashSet<NodeId> = order.iter().copied().collect();
    let start = (0..n).find(|v| !placed.contains(v)).unwrap();
    let mut visited_at = HashMap::new();
    let mut v = start;
    let mut step = 0usize;
    loop {
        if visited_at.insert(v, step).is_some() {
            break;
        }
        let e = in_edges[v]
            .iter()
            .copied()
            .find(|&e| !placed.contains(&edges[e].tail))
            .expect("unplaced node has an unplaced predecessor");
        v = edges[e].tail;
        step += 1;
    }
    // `v` is on the cycle; its in-edge from the cycle closes it.
    let e = in_edges[v].iter().copied().find(|&e| !placed.contains(&edges[e].tail)).unwrap();
    Err(e)
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub fn raw(nodes: &[&str], edges: &[(&str, &str)], sessions: &[(&str, &str)]) -> RawNetwork {
        let mut counts: HashMap<(String, String), u32> = HashMap::new();
        RawNetwork {
            nodes: nodes.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(t, h)| {
                    let c = counts.entry((t.to_string(), h.to_string())).or_default();
                    let index = *c;
                    *c += 1;
                    RawEdge { tail: t.to_string(), head: h.to_string(), index }
                })
                .collect(),
            sessions: sessions.iter().map(|(s, d)| RawSession { source: s.to_string(), sink: d.to_string() }).collect(),
        }
    }

    pub fn net(nodes: &[&str], edges: &[(&str, &str)], sessions: &[(&str, &str)]) -> Network {
        validate_network(&raw(nodes, edges, sessions)).unwrap()
    }

    #[test]
    fn single_edge_is_valid() {
        let n = net(&["s", "d"], &[("s", "d")], &[("s", "d")]);
        assert_eq!(n.edge_count(), 1);
        assert_eq!(n.routing_domain(0).unwrap().edges(), &[0]);
    }

    #[test]
    fn two_cycle_is_rejected() {
        let r = raw(&["u", "v"], &[("u", "v"), ("v", "u")], &[]);
        match validate_network(&r) {
            Err(Error::CycleDetected { .. }) => {}
            other => panic!("expected cycle, got {other:?}"),
        }
    }

    #[test]
    fn self_loop_is_a_cycle() {
        let r = raw(&["u"], &[("u", "u")], &[]);
        assert!(matches!(validate_network(&r), Err(Error::CycleDetected { edge: 0, .. })));
    }

    #[test]
    fn source_and_sink_degree_rules() {
        let r = raw(&["a", "s", "d"], &[("a", "s"), ("s", "d")], &[("s", "d")]);
        assert_eq!(validate_network(&r).unwrap_err(), Error::SourceHasInEdge { session: 1 });
        let r = raw(&["s", "d", "x"], &[("s", "d"), ("d", "x")], &[("s", "d")]);
        assert_eq!(validate_network(&r).unwrap_err(), Error::SinkHasOutEdge { session: 1 });
    }

    #[test]
    fn duplicate_triple_rejected() {
        let mut r = raw(&["s", "d"], &[("s", "d"), ("s", "d")], &[("s", "d")]);
        r.edges[1].index = 0;
        assert!(matches!(validate_network(&r), Err(Error::DuplicateEdge { .. })));
    }

    #[test]
    fn unknown_node_rejected() {
        let r = raw(&["s", "d"], &[("s", "x")], &[]);
        assert_eq!(validate_network(&r).unwrap_err(), Error::UnknownNode("x".into()));
    }

    #[test]
    fn disconnected_session_has_empty_domain() {
        let n = net(&["s", "d", "x"], &[("s", "x")], &[("s", "d")]);
        assert!(n.routing_domain(0).unwrap().is_empty());
    }

    #[test]
    fn alpha_takes_largest_reaching_source() {
        // s1 and s3 reach x; s2 does not.
        let n = net(
            &["s1", "s2", "s3", "x", "y", "d1", "d2", "d3"],
            &[("s1", "x"), ("s3", "x"), ("x", "y"), ("s2", "d2"), ("y", "d1"), ("y", "d3")],
            &[("s1", "d1"), ("s2", "d2"), ("s3", "d3")],
        );
        assert_eq!(n.alpha(2), 3);
        assert_eq!(n.alpha(3), 2);
        assert_eq!(n.alpha(0), 1);
        assert_eq!(n.alpha_all(), vec![1, 3, 3, 2, 3, 3]);
    }

    #[test]
    fn alpha_zero_when_unreached() {
        let n = net(&["a", "b", "s", "d"], &[("a", "b"), ("s", "d")], &[("s", "d")]);
        assert_eq!(n.alpha(0), 0);
    }

    #[test]
    fn session_reordering_keeps_edges() {
        let n = net(&["s1", "s2", "d1", "d2"], &[("s1", "d1"), ("s2", "d2")], &[("s1", "d1"), ("s2", "d2")]);
        let r = n.with_session_order(&[1, 0]);
        assert_eq!(r.session(0), n.session(1));
        assert_eq!(r.edges(), n.edges());
    }
}
