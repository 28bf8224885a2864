//! Slow reference implementations that share no code with the library's
//! algorithms: they read only the edge list and session list.

use infodist::graph::Network;
use infodist::rate::Q;
use num_traits::{One, Signed, Zero};

/// Plain DFS reachability avoiding `removed` edges.
pub fn reaches(net: &Network, from: usize, to: usize, removed: &[bool]) -> bool {
    let mut seen = vec![false; net.node_count()];
    let mut stack = vec![from];
    seen[from] = true;
    while let Some(u) = stack.pop() {
        if u == to {
            return true;
        }
        for (id, e) in net.edges().iter().enumerate() {
            if e.tail == u && !removed[id] && !seen[e.head] {
                seen[e.head] = true;
                stack.push(e.head);
            }
        }
    }
    false
}

/// Every subset of edges, by increasing size, until some size disconnects
/// `u` from `v`; returns that size and all disconnecting subsets of it.
pub fn min_cuts_by_subsets(net: &Network, u: usize, v: usize) -> (usize, Vec<Vec<usize>>) {
    let m = net.edge_count();
    assert!(m <= 20, "subset oracle limited to small graphs");
    let mut by_size: Vec<Vec<Vec<usize>>> = vec![Vec::new(); m + 1];
    for mask in 0u32..(1 << m) {
        let removed: Vec<bool> = (0..m).map(|i| mask >> i & 1 == 1).collect();
        if !reaches(net, u, v, &removed) {
            let set: Vec<usize> = (0..m).filter(|&i| removed[i]).collect();
            by_size[set.len()].push(set);
        }
    }
    let size = (0..=m).find(|&k| !by_size[k].is_empty()).unwrap_or(m);
    let mut cuts = std::mem::take(&mut by_size[size]);
    cuts.sort();
    (size, cuts)
}

/// All simple `u -> v` paths as edge lists.
pub fn all_paths(net: &Network, u: usize, v: usize) -> Vec<Vec<usize>> {
    fn walk(net: &Network, at: usize, v: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if at == v {
            out.push(path.clone());
            return;
        }
        for (id, e) in net.edges().iter().enumerate() {
            if e.tail == at {
                path.push(id);
                walk(net, e.head, v, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    if u != v {
        walk(net, u, v, &mut Vec::new(), &mut out);
    }
    out
}

/// Solves the square system `a x = b` by Gauss-Jordan elimination; `None`
/// if singular.
fn solve(mut a: Vec<Vec<Q>>, mut b: Vec<Q>) -> Option<Vec<Q>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        b.swap(col, p);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        b[col] *= &inv;
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot) {
                    *x -= &f * p;
                }
                let d = &f * &b[col];
                b[r] -= d;
            }
        }
    }
    Some(b)
}

/// Largest `lambda` with `lambda * direction` routable, by checking every
/// basic solution of the path-flow polytope in variables `(lambda, x_p)`.
pub fn max_lambda_by_vertices(net: &Network, direction: &[Q]) -> Q {
    let paths: Vec<(usize, Vec<usize>)> = net
        .sessions()
        .iter()
        .enumerate()
        .flat_map(|(i, s)| all_paths(net, s.source, s.sink).into_iter().map(move |p| (i, p)))
        .collect();
    let n = 1 + paths.len();
    // Rows of `row · z <= rhs`.
    let mut rows: Vec<(Vec<Q>, Q)> = Vec::new();
    for (i, d) in direction.iter().enumerate() {
        let mut row = vec![Q::zero(); n];
        row[0] = d.clone();
        for (c, (s, _)) in paths.iter().enumerate() {
            if *s == i {
                row[c + 1] = -Q::one();
            }
        }
        rows.push((row, Q::zero()));
    }
    for e in 0..net.edge_count() {
        let row: Vec<Q> = std::iter::once(Q::zero())
            .chain(paths.iter().map(|(_, p)| if p.contains(&e) { Q::one() } else { Q::zero() }))
            .collect();
        if row.iter().any(|x| !x.is_zero()) {
            rows.push((row, Q::one()));
        }
    }
    for c in 0..n {
        let mut row = vec![Q::zero(); n];
        row[c] = -Q::one();
        rows.push((row, Q::zero()));
    }
    let mut best: Option<Q> = None;
    let mut pick: Vec<usize> = (0..n).collect();
    loop {
        let a = pick.iter().map(|&r| rows[r].0.clone()).collect();
        let b = pick.iter().map(|&r| rows[r].1.clone()).collect();
        if let Some(z) = solve(a, b) {
            let feasible = rows.iter().all(|(row, rhs)| {
                let lhs: Q = row.iter().zip(&z).map(|(a, x)| a * x).sum();
                lhs <= *rhs
            });
            if feasible && best.as_ref().is_none_or(|b| z[0] > *b) {
                best = Some(z[0].clone());
            }
        }
        // Next n-subset of the rows in lexicographic order.
        let m = rows.len();
        let Some(i) = (0..n).rev().find(|&i| pick[i] < m - n + i) else { break };
        pick[i] += 1;
        for j in i + 1..n {
            pick[j] = pick[j - 1] + 1;
        }
    }
    let best = best.expect("origin is a vertex");
    assert!(!best.is_negative());
    best
}

/// Whether some session order, cut-set sequence, ordering and path system
/// satisfy the three certificate conditions, by exhaustive enumeration.
pub fn brute_force_distributive(net: &Network) -> bool {
    let k = net.session_count();
    let mut order: Vec<usize> = (0..k).collect();
    loop {
        if order_admits_witness(net, &order) {
            return true;
        }
        if !next_perm(&mut order) {
            return false;
        }
    }
}

fn next_perm(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else { return false };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn order_admits_witness(net: &Network, order: &[usize]) -> bool {
    let sessions: Vec<(usize, usize)> =
        order.iter().map(|&i| (net.sessions()[i].source, net.sessions()[i].sink)).collect();
    let k = sessions.len();
    let m = net.edge_count();
    let cut_choices: Vec<Vec<Vec<usize>>> = sessions.iter().map(|&(s, d)| min_cuts_by_subsets(net, s, d).1).collect();
    // alpha: largest 1-based rank whose source reaches the tail.
    let alpha: Vec<usize> = net
        .edges()
        .iter()
        .map(|e| {
            (0..k)
                .rev()
                .find(|&r| sessions[r].0 == e.tail || reaches(net, sessions[r].0, e.tail, &vec![false; m]))
                .map_or(0, |r| r + 1)
        })
        .collect();
    let paths: Vec<Vec<Vec<usize>>> = sessions.iter().map(|&(s, d)| all_paths(net, s, d)).collect();

    let mut pick = vec![0usize; k];
    loop {
        let cuts: Vec<&Vec<usize>> = pick.iter().zip(&cut_choices).map(|(&p, c)| &c[p]).collect();
        if cumulative(net, &sessions, &cuts) && some_ordering(&cuts, &alpha) && some_path_system(&cuts, &paths) {
            return true;
        }
        let Some(i) = (0..k).rev().find(|&i| pick[i] + 1 < cut_choices[i].len()) else { return false };
        pick[i] += 1;
        pick[i + 1..].iter_mut().for_each(|p| *p = 0);
    }
}

fn cumulative(net: &Network, sessions: &[(usize, usize)], cuts: &[&Vec<usize>]) -> bool {
    let m = net.edge_count();
    (0..sessions.len()).all(|i| {
        let removed: Vec<bool> = (0..m).map(|e| cuts[i].contains(&e)).collect();
        (i + 1..sessions.len()).all(|j| !reaches(net, sessions[j].0, sessions[i].1, &removed))
    })
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    let mut v = items.to_vec();
    v.sort_unstable();
    let mut out = vec![v.clone()];
    while next_perm(&mut v) {
        out.push(v.clone());
    }
    out
}

fn some_ordering(cuts: &[&Vec<usize>], alpha: &[usize]) -> bool {
    let options: Vec<Vec<Vec<usize>>> = cuts.iter().map(|c| permutations(c)).collect();
    let k = cuts.len();
    let mut pick = vec![0usize; k];
    loop {
        let t: Vec<&Vec<usize>> = pick.iter().zip(&options).map(|(&p, o)| &o[p]).collect();
        if ordering_ok(cuts, &t, alpha) {
            return true;
        }
        let Some(i) = (0..k).rev().find(|&i| pick[i] + 1 < options[i].len()) else { return false };
        pick[i] += 1;
        pick[i + 1..].iter_mut().for_each(|p| *p = 0);
    }
}

fn ordering_ok(cuts: &[&Vec<usize>], t: &[&Vec<usize>], alpha: &[usize]) -> bool {
    let before = |r: usize, e: usize| -> Vec<usize> {
        let pos = t[r].iter().position(|&x| x == e).unwrap();
        t[r][..pos].to_vec()
    };
    let mut all: Vec<usize> = cuts.iter().flat_map(|c| c.iter().copied()).collect();
    all.sort_unstable();
    all.dedup();
    all.into_iter().all(|e| {
        let ranks: Vec<usize> = (0..cuts.len()).filter(|&r| cuts[r].contains(&e)).collect();
        let last = ranks.last().unwrap() + 1;
        ranks.windows(2).all(|w| {
            let (a, b) = (before(w[0], e), before(w[1], e));
            let added_ok = b.iter().filter(|x| !a.contains(x)).all(|&x| alpha[x] <= last);
            let dropped_ok = a.iter().filter(|x| !b.contains(x)).all(|&x| alpha[x] < w[1] + 1);
            added_ok && dropped_ok
        })
    })
}

fn some_path_system(cuts: &[&Vec<usize>], paths: &[Vec<Vec<usize>>]) -> bool {
    // Slots: one per (rank, cut edge); candidates cross the cut only there.
    let slots: Vec<(usize, usize)> =
        cuts.iter().enumerate().flat_map(|(r, c)| c.iter().map(move |&e| (r, e))).collect();
    let candidates: Vec<Vec<&Vec<usize>>> = slots
        .iter()
        .map(|&(r, e)| {
            paths[r]
                .iter()
                .filter(|p| p.contains(&e) && cuts[r].iter().filter(|c| p.contains(c)).count() == 1)
                .collect()
        })
        .collect();
    fn assign<'a>(
        slots: &[(usize, usize)],
        candidates: &[Vec<&'a Vec<usize>>],
        chosen: &mut Vec<(&'a Vec<usize>, usize)>,
    ) -> bool {
        let i = chosen.len();
        if i == slots.len() {
            return true;
        }
        let crossing = slots[i].1;
        for &p in &candidates[i] {
            let clash = chosen.iter().any(|&(q, c)| c != crossing && p.iter().any(|e| q.contains(e)));
            if !clash {
                chosen.push((p, crossing));
                if assign(slots, candidates, chosen) {
                    return true;
                }
                chosen.pop();
            }
        }
        false
    }
    assign(&slots, &candidates, &mut Vec::new())
}
