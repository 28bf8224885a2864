//! Simple path enumeration.

use super::{EdgeId, Enumeration, Network, NodeId, Path};

/// All `u -> v` paths in lexicographic order of their edge-id sequences,
/// truncated at `limit` with the flag set.
pub fn enumerate_paths(net: &Network, u: NodeId, v: NodeId, limit: usize) -> Enumeration<Path> {
    let mut out = Enumeration { items: Vec::new(), truncated: false };
    if u == v {
        return out;
    }
    let useful = net.reaching(v, &[]);
    if !useful[u] {
        return out;
    }
    let mut stack: Vec<EdgeId> = Vec::new();
    walk(net, u, v, &useful, limit, &mut stack, &mut out);
    out
}

fn walk(
    net: &Network,
    x: NodeId,
    v: NodeId,
    useful: &[bool],
    limit: usize,
    stack: &mut Vec<EdgeId>,
    out: &mut Enumeration<Path>,
) {
    for &e in net.out_edges(x) {
        if out.truncated {
            return;
        }
        let h = net.edge(e).head;
        if !useful[h] {
            continue;
        }
        stack.push(e);
        if h == v {
            if out.items.len() == limit {
                out.truncated = true;
            } else {
                out.items.push(Path(stack.clone()));
            }
        } else {
            walk(net, h, v, useful, limit, stack, out);
        }
        stack.pop();
    }
}
