//! Exhaustive certificate search.

use std::time::Instant;

use serde::Serialize;

use super::{
    check_distributive_with, check_pair, is_cumulative, CumulativeViolation, CutSetSequence, DistributiveViolation,
    PathSetSequence, PermutationSequence, Reading, Witness,
};
use crate::graph::{enumerate_min_cutsets, enumerate_paths, EdgeId, Network, Path, DEFAULT_ENUMERATION_LIMIT};

/// Search limits. Candidates count every visited cut-set sequence,
/// permutation node and path-set node.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Budget {
    pub max_candidates: u64,
    pub max_seconds: Option<f64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_candidates: 10_000_000, max_seconds: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SearchConfig {
    pub budget: Budget,
    pub reading: Reading,
    /// Try every session order consistent with cumulativity, not only the
    /// input order.
    pub reindex_sessions: bool,
    pub enumeration_limit: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig {
            budget: Budget::default(),
            reading: Reading::Standard,
            reindex_sessions: true,
            enumeration_limit: DEFAULT_ENUMERATION_LIMIT,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub candidates: u64,
    pub cut_sequences: u64,
    pub orders_tried: u64,
    pub permutation_nodes: u64,
    pub path_nodes: u64,
    pub rejected_cumulative: u64,
    pub rejected_distributive: u64,
    pub rejected_extendable: u64,
    pub enumeration_truncated: bool,
    pub budget_exceeded: bool,
    pub exhausted: bool,
}

/// First rejected candidate of each kind, for diagnostics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Rejection {
    /// No session order makes the cut-sets cumulative. The violation shown
    /// is for the input order.
    Cumulative { cuts: CutSetSequence, violation: Option<CumulativeViolation> },
    /// Cumulative under some order but no ordering of the cut-sets passes.
    /// The violation shown is for the sorted orderings under the first
    /// admissible session order.
    Distributive { cuts: CutSetSequence, order: Vec<usize>, violation: Option<DistributiveViolation> },
    /// No extendable path-set sequence exists for these cut-sets.
    Extendable { cuts: CutSetSequence },
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub status: Status,
    pub witness: Option<Witness>,
    pub rejections: Vec<Rejection>,
    pub stats: SearchStats,
}

struct Clock {
    start: Instant,
    budget: Budget,
    count: u64,
    exceeded: bool,
}

impl Clock {
    fn new(budget: Budget) -> Self {
        Clock { start: Instant::now(), budget, count: 0, exceeded: false }
    }

    /// Counts one candidate; false once the budget is spent.
    fn tick(&mut self) -> bool {
        if self.exceeded {
            return false;
        }
        self.count += 1;
        let over_count = self.count > self.budget.max_candidates;
        let over_time = self.count.is_multiple_of(256)
            && self.budget.max_seconds.is_some_and(|s| self.start.elapsed().as_secs_f64() > s);
        if over_count || over_time {
            self.exceeded = true;
        }
        !self.exceeded
    }
}

/// Next lexicographic permutation in place; false after the last one.
pub(crate) fn next_permutation(v: &mut [EdgeId]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Searches orderings of `w` (sessions in the network's order) for one
/// passing the distributive conditions, in lexicographic order of the
/// per-session permutations.
pub fn find_permutation_sequence(net: &Network, w: &CutSetSequence, reading: Reading) -> Option<PermutationSequence> {
    let mut clock = Clock::new(Budget { max_candidates: u64::MAX, max_seconds: None });
    permutation_search(w, &net.alpha_all(), reading, &mut clock).flatten()
}

/// `None` when the budget ran out.
fn permutation_search(
    w: &CutSetSequence,
    alpha: &[usize],
    reading: Reading,
    clock: &mut Clock,
) -> Option<Option<PermutationSequence>> {
    let k = w.len();
    // For each rank and cut edge: the previous rank containing it and the
    // last rank containing it (1-based).
    let mut links: Vec<Vec<(EdgeId, usize, usize)>> = vec![Vec::new(); k];
    for (r, cut) in w.0.iter().enumerate() {
        for &e in cut {
            let ranks = w.containing(e);
            let pos = ranks.iter().position(|&x| x == r).unwrap();
            if pos > 0 {
                links[r].push((e, ranks[pos - 1], ranks.last().unwrap() + 1));
            }
        }
    }
    let mut t = PermutationSequence(
        w.0.iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect(),
    );
    let found = assign_rank(0, &links, alpha, reading, &mut t, clock)?;
    Some(found.then_some(t))
}

fn assign_rank(
    r: usize,
    links: &[Vec<(EdgeId, usize, usize)>],
    alpha: &[usize],
    reading: Reading,
    t: &mut PermutationSequence,
    clock: &mut Clock,
) -> Option<bool> {
    if r == links.len() {
        return Some(true);
    }
    let mut perm = t.0[r].clone();
    perm.sort_unstable();
    loop {
        if !clock.tick() {
            return None;
        }
        t.0[r].clone_from(&perm);
        let ok = links[r].iter().all(|&(e, prev, last)| check_pair(t, alpha, e, prev, r, last, reading).is_none());
        if ok && assign_rank(r + 1, links, alpha, reading, t, clock)? {
            return Some(true);
        }
        if !next_permutation(&mut perm) {
            return Some(false);
        }
    }
}

/// Per-session search data, in input session order.
struct SessionData {
    cuts: Vec<Vec<EdgeId>>,
    paths: Vec<Path>,
}

/// Searches for a certificate: cut-set sequences in lexicographic order
/// (first session most significant), then session orders, then orderings
/// and path-sets. The first success is returned.
pub fn decide_information_distributive(net: &Network, cfg: &SearchConfig) -> Verdict {
    let k = net.session_count();
    let mut stats = SearchStats::default();
    let mut clock = Clock::new(cfg.budget);
    let mut rejections: Vec<Rejection> = Vec::new();

    let mut sessions = Vec::with_capacity(k);
    for s in net.sessions() {
        let cuts = enumerate_min_cutsets(net, s.source, s.sink, cfg.enumeration_limit);
        let paths = enumerate_paths(net, s.source, s.sink, cfg.enumeration_limit);
        stats.enumeration_truncated |= cuts.truncated || paths.truncated;
        let cuts = if cuts.items.is_empty() { vec![Vec::new()] } else { cuts.items };
        sessions.push(SessionData { cuts, paths: paths.items });
    }

    // bypass[i][c][j]: source j reaches sink i with cut candidate c of i removed.
    let bypass: Vec<Vec<Vec<bool>>> = (0..k)
        .map(|i| {
            sessions[i]
                .cuts
                .iter()
                .map(|cut| {
                    let blocked = super::blocked_mask(net, cut);
                    let sink = net.session(i).sink;
                    (0..k).map(|j| j != i && net.reachable_from(net.session(j).source, &blocked)[sink]).collect()
                })
                .collect()
        })
        .collect();
    let source_reach = net.source_reach();

    let mut choice = vec![0usize; k];
    let mut finished = k == 0;
    if k == 0 {
        stats.exhausted = true;
        return Verdict {
            status: Status::Yes,
            witness: Some(Witness {
                order: Vec::new(),
                cuts: CutSetSequence(Vec::new()),
                perms: PermutationSequence(Vec::new()),
                paths: PathSetSequence(Vec::new()),
            }),
            rejections,
            stats,
        };
    }
    while !finished {
        if !clock.tick() {
            break;
        }
        stats.cut_sequences += 1;
        let cuts: Vec<Vec<EdgeId>> = (0..k).map(|i| sessions[i].cuts[choice[i]].clone()).collect();

        // before[a][b]: session a must come before session b.
        let before: Vec<Vec<bool>> = (0..k).map(|a| (0..k).map(|b| bypass[b][choice[b]][a]).collect()).collect();
        let orders = if cfg.reindex_sessions {
            linear_extensions(&before)
        } else {
            let identity: Vec<usize> = (0..k).collect();
            let ok = (0..k).all(|i| (i + 1..k).all(|j| !before[j][i]));
            if ok {
                vec![identity]
            } else {
                Vec::new()
            }
        };

        let outcome = if orders.is_empty() {
            stats.rejected_cumulative += 1;
            if !rejections.iter().any(|r| matches!(r, Rejection::Cumulative { .. })) {
                rejections.push(Rejection::Cumulative {
                    cuts: CutSetSequence(cuts.clone()),
                    violation: is_cumulative(net, &CutSetSequence(cuts.clone())),
                });
            }
            Step::Next
        } else {
            try_candidate(net, cfg, &sessions, &cuts, &orders, &source_reach, &mut clock, &mut stats, &mut rejections)
        };
        match outcome {
            Step::Found(w) => {
                stats.candidates = clock.count;
                return Verdict { status: Status::Yes, witness: Some(w), rejections, stats };
            }
            Step::OutOfBudget => break,
            Step::Next => {}
        }

        finished = true;
        for i in (0..k).rev() {
            choice[i] += 1;
            if choice[i] < sessions[i].cuts.len() {
                finished = false;
                break;
            }
            choice[i] = 0;
        }
    }
    stats.candidates = clock.count;
    stats.budget_exceeded = clock.exceeded;
    stats.exhausted = finished && !clock.exceeded && !stats.enumeration_truncated;
    let status = if stats.exhausted { Status::No } else { Status::Unknown };
    Verdict { status, witness: None, rejections, stats }
}

enum Step {
    Found(Witness),
    Next,
    OutOfBudget,
}

#[allow(clippy::too_many_arguments)]
fn try_candidate(
    net: &Network,
    cfg: &SearchConfig,
    sessions: &[SessionData],
    cuts: &[Vec<EdgeId>],
    orders: &[Vec<usize>],
    source_reach: &[Vec<bool>],
    clock: &mut Clock,
    stats: &mut SearchStats,
    rejections: &mut Vec<Rejection>,
) -> Step {
    let mut chosen = None;
    for order in orders {
        stats.orders_tried += 1;
        let ranked = CutSetSequence(order.iter().map(|&i| cuts[i].clone()).collect());
        let alpha = alpha_for_order(net, source_reach, order);
        let before = clock.count;
        let found = permutation_search(&ranked, &alpha, cfg.reading, clock);
        stats.permutation_nodes += clock.count - before;
        match found {
            None => return Step::OutOfBudget,
            Some(Some(t)) => {
                chosen = Some((order.clone(), ranked, t));
                break;
            }
            Some(None) => {}
        }
    }
    let Some((order, ranked, perms)) = chosen else {
        stats.rejected_distributive += 1;
        if !rejections.iter().any(|r| matches!(r, Rejection::Distributive { .. })) {
            let ranked = CutSetSequence(orders[0].iter().map(|&i| cuts[i].clone()).collect());
            let sorted = PermutationSequence(
                ranked
                    .0
                    .iter()
                    .map(|c| {
                        let mut c = c.clone();
                        c.sort_unstable();
                        c
                    })
                    .collect(),
            );
            let alpha = alpha_for_order(net, source_reach, &orders[0]);
            rejections.push(Rejection::Distributive {
                cuts: CutSetSequence(cuts.to_vec()),
                order: orders[0].iter().map(|i| i + 1).collect(),
                violation: check_distributive_with(&ranked, &sorted, &alpha, cfg.reading).ok().flatten(),
            });
        }
        return Step::Next;
    };

    let before = clock.count;
    let paths = path_search(net, sessions, cuts, clock);
    stats.path_nodes += clock.count - before;
    match paths {
        None => Step::OutOfBudget,
        Some(None) => {
            stats.rejected_extendable += 1;
            if !rejections.iter().any(|r| matches!(r, Rejection::Extendable { .. })) {
                rejections.push(Rejection::Extendable { cuts: CutSetSequence(cuts.to_vec()) });
            }
            Step::Next
        }
        Some(Some(paths)) => {
            let witness = Witness {
                paths: PathSetSequence(order.iter().map(|&i| paths[i].clone()).collect()),
                order,
                cuts: ranked,
                perms,
            };
            witness.verify(net, cfg.reading).expect("search result must pass the independent checkers");
            Step::Found(witness)
        }
    }
}

/// Alpha values for sessions ranked by `order`.
fn alpha_for_order(net: &Network, source_reach: &[Vec<bool>], order: &[usize]) -> Vec<usize> {
    net.edges()
        .iter()
        .map(|edge| (0..order.len()).rev().find(|&r| source_reach[order[r]][edge.tail]).map_or(0, |r| r + 1))
        .collect()
}

/// All topological orders of the precedence relation, lexicographically.
fn linear_extensions(before: &[Vec<bool>]) -> Vec<Vec<usize>> {
    fn go(before: &[Vec<bool>], placed: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        let k = before.len();
        if placed.len() == k {
            out.push(placed.clone());
            return;
        }
        for b in 0..k {
            if used[b] || (0..k).any(|a| !used[a] && a != b && before[a][b]) {
                continue;
            }
            used[b] = true;
            placed.push(b);
            go(before, placed, used, out);
            placed.pop();
            used[b] = false;
        }
    }
    let mut out = Vec::new();
    go(before, &mut Vec::new(), &mut vec![false; before.len()], &mut out);
    out
}

/// One path per (session, cut edge), all paths sharing an edge crossing the
/// same cut edge. Sessions in input order. `None` when the budget ran out.
fn path_search(
    net: &Network,
    sessions: &[SessionData],
    cuts: &[Vec<EdgeId>],
    clock: &mut Clock,
) -> Option<Option<Vec<Vec<Path>>>> {
    struct Slot {
        session: usize,
        color: EdgeId,
        candidates: Vec<usize>,
    }
    let mut slots = Vec::new();
    for (i, cut) in cuts.iter().enumerate() {
        for &c in cut {
            let candidates: Vec<usize> = sessions[i]
                .paths
                .iter()
                .enumerate()
                .filter(|(_, p)| p.edges().iter().filter(|e| cut.contains(e)).count() == 1 && p.contains(c))
                .map(|(n, _)| n)
                .collect();
            if candidates.is_empty() {
                return Some(None);
            }
            slots.push(Slot { session: i, color: c, candidates });
        }
    }
    slots.sort_by_key(|s| s.candidates.len());

    fn place(
        idx: usize,
        slots: &[Slot],
        sessions: &[SessionData],
        owner: &mut [(EdgeId, u32)],
        picked: &mut [usize],
        clock: &mut Clock,
    ) -> Option<bool> {
        if idx == slots.len() {
            return Some(true);
        }
        let slot = &slots[idx];
        for &n in &slot.candidates {
            if !clock.tick() {
                return None;
            }
            let path = &sessions[slot.session].paths[n];
            let free = path.edges().iter().all(|&e| owner[e].1 == 0 || owner[e].0 == slot.color);
            if !free {
                continue;
            }
            for &e in path.edges() {
                owner[e] = (slot.color, owner[e].1 + 1);
            }
            picked[idx] = n;
            if place(idx + 1, slots, sessions, owner, picked, clock)? {
                return Some(true);
            }
            for &e in path.edges() {
                owner[e].1 -= 1;
            }
        }
        Some(false)
    }

    let mut owner = vec![(0usize, 0u32); net.edge_count()];
    let mut picked = vec![0usize; slots.len()];
    if !place(0, &slots, sessions, &mut owner, &mut picked, clock)? {
        return Some(None);
    }
    let mut result: Vec<Vec<Path>> = cuts.iter().map(|_| Vec::new()).collect();
    // Emit paths in the order of each session's cut-set.
    for (i, cut) in cuts.iter().enumerate() {
        for &c in cut {
            let idx = slots.iter().position(|s| s.session == i && s.color == c).unwrap();
            result[i].push(sessions[i].paths[picked[idx]].clone());
        }
    }
    Some(Some(result))
}
