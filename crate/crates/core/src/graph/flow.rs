//! Unit-capacity max-flow, minimum cut-sets and Menger path systems.

use std::collections::{BTreeSet, VecDeque};

use super::{EdgeId, Enumeration, Network, NodeId, Path};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinCut {
    pub value: usize,
    /// A minimum cut-set, sorted by edge id.
    pub cut: Vec<EdgeId>,
}

/// Maximum unit-capacity flow from `u` to `v`, as a per-edge 0/1 vector.
/// Augmenting paths are found by BFS scanning edges in id order, so the
/// result is deterministic.
fn max_flow(net: &Network, u: NodeId, v: NodeId) -> (usize, Vec<bool>) {
    let mut flow = vec![false; net.edge_count()];
    if u == v {
        return (0, flow);
    }
    let mut value = 0;
    while let Some(path) = augmenting_path(net, u, v, &flow) {
        for (e, forward) in path {
            flow[e] = forward;
        }
        value += 1;
    }
    (value, flow)
}

/// Residual BFS. Returns (edge, new flow value) pairs along the path.
fn augmenting_path(net: &Network, u: NodeId, v: NodeId, flow: &[bool]) -> Option<Vec<(EdgeId, bool)>> {
    let mut parent: Vec<Option<(EdgeId, bool)>> = vec![None; net.node_count()];
    let mut seen = vec![false; net.node_count()];
    seen[u] = true;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        if x == v {
            break;
        }
        for &e in net.out_edges(x) {
            let h = net.edge(e).head;
            if !flow[e] && !seen[h] {
                seen[h] = true;
                parent[h] = Some((e, true));
                queue.push_back(h);
            }
        }
        for &e in net.in_edges(x) {
            let t = net.edge(e).tail;
            if flow[e] && !seen[t] {
                seen[t] = true;
                parent[t] = Some((e, false));
                queue.push_back(t);
            }
        }
    }
    if !seen[v] {
        return None;
    }
    let mut steps = Vec::new();
    let mut x = v;
    while x != u {
        let (e, forward) = parent[x].expect("BFS tree is connected");
        steps.push((e, forward));
        let edge = net.edge(e);
        x = if forward { edge.tail } else { edge.head };
    }
    Some(steps)
}

/// Residual-reachable side of a maximum flow.
fn residual_side(net: &Network, u: NodeId, flow: &[bool]) -> Vec<bool> {
    let mut seen = vec![false; net.node_count()];
    seen[u] = true;
    let mut queue = VecDeque::from([u]);
    while let Some(x) = queue.pop_front() {
        for &e in net.out_edges(x) {
            let h = net.edge(e).head;
            if !flow[e] && !seen[h] {
                seen[h] = true;
                queue.push_back(h);
            }
        }
        for &e in net.in_edges(x) {
            let t = net.edge(e).tail;
            if flow[e] && !seen[t] {
                seen[t] = true;
                queue.push_back(t);
            }
        }
    }
    seen
}

/// Minimum `u -> v` cut. Value 0 with an empty cut when `v` is unreachable
/// or `u == v`.
pub fn min_cut(net: &Network, u: NodeId, v: NodeId) -> MinCut {
    let (value, flow) = max_flow(net, u, v);
    if value == 0 {
        return MinCut { value, cut: Vec::new() };
    }
    let side = residual_side(net, u, &flow);
    let cut = (0..net.edge_count())
        .filter(|&e| {
            let edge = net.edge(e);
            side[edge.tail] && !side[edge.head]
        })
        .collect::<Vec<_>>();
    debug_assert_eq!(cut.len(), value);
    MinCut { value, cut }
}

/// True when removing `edges` leaves no `u -> v` path.
pub fn is_cut(net: &Network, u: NodeId, v: NodeId, edges: &[EdgeId]) -> bool {
    let mut blocked = vec![false; net.edge_count()];
    for &e in edges {
        if e < blocked.len() {
            blocked[e] = true;
        }
    }
    !net.reachable_from(u, &blocked)[v]
}

/// Splits a 0/1 flow into edge-disjoint `u -> v` paths, always following
/// the lowest-id unused flow edge.
fn decompose(net: &Network, u: NodeId, v: NodeId, flow: &[bool]) -> Vec<Path> {
    let mut left = flow.to_vec();
    let mut paths = Vec::new();
    while let Some(&first) = net.out_edges(u).iter().find(|&&e| left[e]) {
        let mut edges = vec![first];
        left[first] = false;
        let mut x = net.edge(first).head;
        while x != v {
            let e = *net.out_edges(x).iter().find(|&&e| left[e]).expect("flow is conserved at inner nodes");
            left[e] = false;
            edges.push(e);
            x = net.edge(e).head;
        }
        paths.push(Path(edges));
    }
    paths
}

/// All minimum `u -> v` cut-sets, each sorted by edge id, listed in
/// lexicographic order and truncated at `limit`.
///
/// Every minimum cut-set meets each path of a maximum edge-disjoint system
/// in exactly one edge, so the candidates are the choices of one edge per
/// flow path; each candidate is then tested for the cut property.
pub fn enumerate_min_cutsets(net: &Network, u: NodeId, v: NodeId, limit: usize) -> Enumeration<Vec<EdgeId>> {
    let (value, flow) = max_flow(net, u, v);
    if value == 0 {
        return Enumeration { items: Vec::new(), truncated: false };
    }
    let paths = decompose(net, u, v, &flow);
    let mut found = BTreeSet::new();
    let mut choice = vec![0usize; paths.len()];
    let mut blocked = vec![false; net.edge_count()];
    'outer: loop {
        for (p, &c) in paths.iter().zip(&choice) {
            blocked[p.0[c]] = true;
        }
        if !net.reachable_from(u, &blocked)[v] {
            let mut cut: Vec<EdgeId> = paths.iter().zip(&choice).map(|(p, &c)| p.0[c]).collect();
            cut.sort_unstable();
            found.insert(cut);
        }
        for (p, &c) in paths.iter().zip(&choice) {
            blocked[p.0[c]] = false;
        }
        // Odometer step over the product of path positions.
        for k in (0..choice.len()).rev() {
            choice[k] += 1;
            if choice[k] < paths[k].len() {
                continue 'outer;
            }
            choice[k] = 0;
        }
        break;
    }
    let truncated = found.len() > limit;
    Enumeration { items: found.into_iter().take(limit).collect(), truncated }
}

/// `m` edge-disjoint `u -> v` paths where path `j` crosses `cut[j]`.
///
/// Fails with [`Error::CutNotSaturable`] unless `cut` is a minimum cut-set.
pub fn edge_disjoint_paths(net: &Network, u: NodeId, v: NodeId, cut: &[EdgeId]) -> Result<Vec<Path>> {
    if cut.iter().any(|&e| e >= net.edge_count()) {
        return Err(Error::CutNotSaturable);
    }
    let distinct: BTreeSet<EdgeId> = cut.iter().copied().collect();
    let (value, flow) = max_flow(net, u, v);
    if distinct.len() != cut.len() || cut.len() != value || !is_cut(net, u, v, cut) {
        return Err(Error::CutNotSaturable);
    }
    let paths = decompose(net, u, v, &flow);
    let mut ordered: Vec<Option<Path>> = vec![None; cut.len()];
    for p in paths {
        let mut hits = cut.iter().enumerate().filter(|(_, &c)| p.contains(c));
        let (j, _) = hits.next().ok_or(Error::CutNotSaturable)?;
        if hits.next().is_some() || ordered[j].is_some() {
            return Err(Error::CutNotSaturable);
        }
        ordered[j] = Some(p);
    }
    ordered.into_iter().map(|p| p.ok_or(Error::CutNotSaturable)).collect()
}

#[cfg(test)]
mod tests {
    use super::super::tests::net;
    use super::*;

    #[test]
    fn parallel_edges() {
        let n = net(&["s", "d"], &[("s", "d"), ("s", "d"), ("s", "d")], &[("s", "d")]);
        let mc = min_cut(&n, 0, 1);
        assert_eq!(mc.value, 3);
        assert_eq!(mc.cut, vec![0, 1, 2]);
        let cuts = enumerate_min_cutsets(&n, 0, 1, 10);
        assert_eq!(cuts.items, vec![vec![0, 1, 2]]);
        let paths = edge_disjoint_paths(&n, 0, 1, &[2, 0, 1]).unwrap();
        assert_eq!(paths, vec![Path(vec![2]), Path(vec![0]), Path(vec![1])]);
    }

    #[test]
    fn chain_has_two_cuts() {
        let n = net(&["s", "x", "d"], &[("s", "x"), ("x", "d")], &[("s", "d")]);
        assert_eq!(enumerate_min_cutsets(&n, 0, 2, 10).items, vec![vec![0], vec![1]]);
        assert_eq!(edge_disjoint_paths(&n, 0, 2, &[0]).unwrap(), vec![Path(vec![0, 1])]);
    }

    #[test]
    fn truncation_is_flagged() {
        let n = net(&["s", "x", "d"], &[("s", "x"), ("x", "d")], &[("s", "d")]);
        let e = enumerate_min_cutsets(&n, 0, 2, 1);
        assert!(e.truncated);
        assert_eq!(e.items, vec![vec![0]]);
    }

    #[test]
    fn non_minimum_cut_rejected() {
        let n = net(&["s", "a", "b", "d"], &[("s", "a"), ("s", "b"), ("a", "d"), ("b", "d")], &[("s", "d")]);
        assert_eq!(edge_disjoint_paths(&n, 0, 3, &[0]), Err(Error::CutNotSaturable));
        assert_eq!(edge_disjoint_paths(&n, 0, 3, &[0, 1, 2]), Err(Error::CutNotSaturable));
        assert!(edge_disjoint_paths(&n, 0, 3, &[2, 1]).is_ok());
    }

    #[test]
    fn unreachable_is_zero() {
        let n = net(&["s", "d", "x"], &[("s", "x")], &[("s", "d")]);
        assert_eq!(min_cut(&n, 0, 1), MinCut { value: 0, cut: vec![] });
        assert!(enumerate_min_cutsets(&n, 0, 1, 10).items.is_empty());
    }

    #[test]
    fn augmentation_reroutes_through_reverse_edges() {
        // Classic case where a greedy first path blocks the second.
        let n =
            net(&["s", "a", "b", "d"], &[("s", "a"), ("a", "b"), ("b", "d"), ("s", "b"), ("a", "d")], &[("s", "d")]);
        assert_eq!(min_cut(&n, 0, 3).value, 2);
    }
}
