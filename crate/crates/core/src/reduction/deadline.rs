//! Deadline-constrained unicast as a multi-unicast network over time slots.
//!
//! Session `t` injects at slot `t` and must be delivered by slot `t + tau`.
//! Every base node `v` gets a copy `v[t]` per slot, every base edge `e` a
//! copy `e[t]` from `u[t]` to `v[t + d_e]`, and the sessions are the extra
//! nodes `s_t`, `d_t` joined by `J` parallel taps `s_t -> s[t]` and
//! `d[t + tau] -> d_t`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{
    enumerate_min_cutsets, enumerate_paths, is_cut, min_cut, Edge, EdgeId, Network, NodeId, Path, Session,
    DEFAULT_ENUMERATION_LIMIT,
};
use crate::witness::{
    crossing_map, is_cumulative, is_distributive, is_extendable, next_permutation, CutSetSequence, PathSetSequence,
    PermutationSequence, Reading, Status, Witness,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeadlineEdgeJson {
    pub tail: String,
    pub head: String,
    pub delay: u64,
    /// Label used in reports; defaults to `e1`, `e2`, ... by position.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeadlineJson {
    pub edges: Vec<DeadlineEdgeJson>,
    pub source: String,
    pub sink: String,
    pub tau: u64,
    /// Last session index; defaults to `2 * tau`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<u64>,
    /// Parallel memory edges per intermediate node and slot; defaults to 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub memory: Option<u32>,
    /// Optional session-0 cut-set as labels like `e8[5]`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cut: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseEdge {
    pub tail: NodeId,
    pub head: NodeId,
    pub delay: u64,
    pub name: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeadlineInstance {
    pub nodes: Vec<String>,
    pub edges: Vec<BaseEdge>,
    pub source: NodeId,
    pub sink: NodeId,
    pub tau: u64,
    pub horizon: u64,
    pub memory: u32,
    pub cut: Option<Vec<(usize, u64)>>,
}

impl DeadlineInstance {
    pub fn from_json(json: &DeadlineJson) -> Result<Self> {
        let bad = |msg: String| Error::InvalidDeadlineInstance(msg);
        let mut nodes: Vec<String> = Vec::new();
        let mut index: HashMap<String, NodeId> = HashMap::new();
        let mut intern = |name: &str, nodes: &mut Vec<String>| -> NodeId {
            *index.entry(name.to_string()).or_insert_with(|| {
                nodes.push(name.to_string());
                nodes.len() - 1
            })
        };
        let source = intern(&json.source, &mut nodes);
        let sink = intern(&json.sink, &mut nodes);
        if source == sink {
            return Err(bad("source and sink coincide".into()));
        }
        let mut edges = Vec::with_capacity(json.edges.len());
        for (i, e) in json.edges.iter().enumerate() {
            if e.delay == 0 {
                return Err(bad(format!("edge {} has delay 0", i + 1)));
            }
            if e.tail == e.head {
                return Err(bad(format!("edge {} is a self-loop", i + 1)));
            }
            let name = e.name.clone().unwrap_or_else(|| format!("e{}", i + 1));
            if edges.iter().any(|b: &BaseEdge| b.name == name) {
                return Err(bad(format!("edge name `{name}` is used twice")));
            }
            edges.push(BaseEdge {
                tail: intern(&e.tail, &mut nodes),
                head: intern(&e.head, &mut nodes),
                delay: e.delay,
                name,
            });
        }
        for v in &nodes {
            if v.contains(['[', ']', '_']) {
                return Err(bad(format!("node name `{v}` may not contain `[`, `]` or `_`")));
            }
        }
        let cut = json
            .cut
            .as_ref()
            .map(|labels| {
                labels
                    .iter()
                    .map(|l| parse_label(l, &edges).ok_or_else(|| bad(format!("bad cut label `{l}`"))))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Ok(DeadlineInstance {
            nodes,
            edges,
            source,
            sink,
            tau: json.tau,
            horizon: json.horizon.unwrap_or(2 * json.tau),
            memory: json.memory.unwrap_or(0),
            cut,
        })
    }

    /// Shortest delay from the source to every node.
    pub fn shortest_delays(&self) -> Vec<Option<u64>> {
        let mut dist = vec![None; self.nodes.len()];
        let mut heap = BinaryHeap::from([Reverse((0u64, self.source))]);
        while let Some(Reverse((d, v))) = heap.pop() {
            if dist[v].is_some() {
                continue;
            }
            dist[v] = Some(d);
            for e in self.edges.iter().filter(|e| e.tail == v) {
                if dist[e.head].is_none() {
                    heap.push(Reverse((d + e.delay, e.head)));
                }
            }
        }
        dist
    }
}

fn parse_label(label: &str, edges: &[BaseEdge]) -> Option<(usize, u64)> {
    let (name, rest) = label.split_once('[')?;
    let t = rest.strip_suffix(']')?.parse().ok()?;
    let e = edges.iter().position(|b| b.name == name)?;
    Some((e, t))
}

/// What a time-extended edge is a copy of. Copies of one kind at different
/// slots are time shifts of each other.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum EdgeKind {
    Base { edge: usize },
    Memory { node: NodeId, copy: u32 },
    SourceTap { copy: u32 },
    SinkTap { copy: u32 },
}

/// `time` is the slot of the time-indexed node at the tail, except for
/// source taps where it is the slot of the head `s[t]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TimeLabel {
    #[serde(flatten)]
    pub kind: EdgeKind,
    pub time: u64,
}

#[derive(Debug, Clone)]
pub struct TimeExtendedNetwork {
    pub instance: DeadlineInstance,
    pub net: Network,
    pub labels: Vec<TimeLabel>,
    /// Parallel taps per session, and memory edges at the source and sink.
    pub width: u32,
    pub delays: Vec<Option<u64>>,
    lookup: HashMap<TimeLabel, EdgeId>,
}

/// Builds the time-extended network with sessions `(s_t, d_t)` for
/// `t = 0..=horizon`.
pub fn deadline_to_time_extended(inst: &DeadlineInstance) -> Result<TimeExtendedNetwork> {
    let delays = inst.shortest_delays();
    match delays[inst.sink] {
        Some(d) if d <= inst.tau => {}
        _ => return Err(Error::DeadlineTooSmall { tau: inst.tau }),
    }
    let bound = (inst.edges.len() as u64 * (inst.tau + 1)).max(1);
    let wide = build(inst, u32::try_from(bound).unwrap_or(u32::MAX), delays.clone())?;
    let s0 = wide.net.session(0);
    let width = min_cut(&wide.net, s0.source, s0.sink).value.max(1) as u32;
    build(inst, width, delays)
}

fn build(inst: &DeadlineInstance, width: u32, delays: Vec<Option<u64>>) -> Result<TimeExtendedNetwork> {
    let n = inst.nodes.len();
    let kh = inst.horizon;
    let last = kh + inst.tau;
    let slot = |v: NodeId, t: u64| t as usize * n + v;
    let mut names: Vec<String> = (0..=last).flat_map(|t| inst.nodes.iter().map(move |v| format!("{v}[{t}]"))).collect();
    let src_base = names.len();
    names.extend((0..=kh).map(|t| format!("{}_{t}", inst.nodes[inst.source])));
    let sink_base = names.len();
    names.extend((0..=kh).map(|t| format!("{}_{t}", inst.nodes[inst.sink])));

    let mut edges = Vec::new();
    let mut labels = Vec::new();
    let mut push = |edge: Edge, label: TimeLabel| {
        edges.push(edge);
        labels.push(label);
    };
    for t in 0..=last {
        for (i, e) in inst.edges.iter().enumerate() {
            if t + e.delay <= last {
                push(
                    Edge { tail: slot(e.tail, t), head: slot(e.head, t + e.delay), index: i as u32 },
                    TimeLabel { kind: EdgeKind::Base { edge: i }, time: t },
                );
            }
        }
        if t < last {
            for v in 0..n {
                let copies = if v == inst.source || v == inst.sink { width } else { inst.memory };
                for copy in 0..copies {
                    push(
                        Edge { tail: slot(v, t), head: slot(v, t + 1), index: copy },
                        TimeLabel { kind: EdgeKind::Memory { node: v, copy }, time: t },
                    );
                }
            }
        }
        if t <= kh {
            for copy in 0..width {
                push(
                    Edge { tail: src_base + t as usize, head: slot(inst.source, t), index: copy },
                    TimeLabel { kind: EdgeKind::SourceTap { copy }, time: t },
                );
            }
        }
        if t >= inst.tau && t - inst.tau <= kh {
            for copy in 0..width {
                push(
                    Edge { tail: slot(inst.sink, t), head: sink_base + (t - inst.tau) as usize, index: copy },
                    TimeLabel { kind: EdgeKind::SinkTap { copy }, time: t },
                );
            }
        }
    }
    let sessions = (0..=kh as usize).map(|t| Session { source: src_base + t, sink: sink_base + t }).collect();
    let net = Network::build(names, edges, sessions)?;
    let lookup = labels.iter().enumerate().map(|(id, l)| (*l, id)).collect();
    Ok(TimeExtendedNetwork { instance: inst.clone(), net, labels, width, delays, lookup })
}

impl TimeExtendedNetwork {
    pub fn edge_for(&self, label: TimeLabel) -> Option<EdgeId> {
        self.lookup.get(&label).copied()
    }

    /// The copy of `e` moved `k` slots later (or earlier when negative).
    pub fn shift(&self, e: EdgeId, k: i64) -> Option<EdgeId> {
        let l = self.labels[e];
        let time = u64::try_from(l.time as i64 + k).ok()?;
        self.edge_for(TimeLabel { time, ..l })
    }

    pub fn base_edge(&self, name: &str, t: u64) -> Option<EdgeId> {
        let i = self.instance.edges.iter().position(|b| b.name == name)?;
        self.edge_for(TimeLabel { kind: EdgeKind::Base { edge: i }, time: t })
    }

    pub fn label(&self, e: EdgeId) -> String {
        let inst = &self.instance;
        let l = self.labels[e];
        let t = l.time;
        match l.kind {
            EdgeKind::Base { edge } => format!("{}[{t}]", inst.edges[edge].name),
            EdgeKind::Memory { node, copy } => {
                let v = &inst.nodes[node];
                format!("{v}[{t}]->{v}[{}]#{copy}", t + 1)
            }
            EdgeKind::SourceTap { copy } => {
                let s = &inst.nodes[inst.source];
                format!("{s}_{t}->{s}[{t}]#{copy}")
            }
            EdgeKind::SinkTap { copy } => {
                let d = &inst.nodes[inst.sink];
                format!("{d}[{t}]->{d}_{}#{copy}", t - inst.tau)
            }
        }
    }

    /// Base node at the tail of `e` and its slot.
    fn tail_slot(&self, e: EdgeId) -> (NodeId, u64) {
        let l = self.labels[e];
        match l.kind {
            EdgeKind::Base { edge } => (self.instance.edges[edge].tail, l.time),
            EdgeKind::Memory { node, .. } => (node, l.time),
            EdgeKind::SourceTap { .. } => (self.instance.source, l.time),
            EdgeKind::SinkTap { .. } => (self.instance.sink, l.time),
        }
    }

    /// `t - delta(e)` for the tail slot `t` of `e`, i.e. the 0-based index of
    /// the latest session whose data can be on `e`; `None` when the tail is
    /// unreachable from the source.
    pub fn lag(&self, e: EdgeId) -> Option<i64> {
        let (v, t) = self.tail_slot(e);
        self.delays[v].map(|d| t as i64 - d as i64)
    }

    /// Edges whose 1-based `alpha` differs from the value predicted by the
    /// shortest-delay lag, clamped to the horizon.
    pub fn alpha_mismatches(&self) -> Vec<EdgeId> {
        let alpha = self.net.alpha_all();
        let kh = self.instance.horizon as i64;
        (0..self.net.edge_count())
            .filter(|&e| {
                let predicted = match self.lag(e) {
                    Some(k) if k >= 0 => (k.min(kh) + 1) as usize,
                    _ => 0,
                };
                alpha[e] != predicted
            })
            .collect()
    }

    /// Whether each session's routing domain is the shift of session 0's.
    pub fn shift_invariant(&self) -> Result<bool> {
        let base = self.net.routing_domain(0)?;
        for t in 1..self.net.session_count() {
            let dom = self.net.routing_domain(t)?;
            let shifted: Option<Vec<EdgeId>> = base.edges().iter().map(|&e| self.shift(e, t as i64)).collect();
            let Some(mut shifted) = shifted else { return Ok(false) };
            shifted.sort_unstable();
            if shifted != dom.edges() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn validate_c0(&self, c0: &[EdgeId]) -> Result<()> {
        if let Some(&e) = c0.iter().find(|&&e| e >= self.net.edge_count()) {
            return Err(Error::NotACutset(format!("edge {e} does not exist")));
        }
        let mut sorted = c0.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != c0.len() {
            return Err(Error::NotACutset("an edge is listed twice".into()));
        }
        let s = self.net.session(0);
        let value = min_cut(&self.net, s.source, s.sink).value;
        if !is_cut(&self.net, s.source, s.sink, c0) {
            return Err(Error::NotACutset("session 0 stays connected".into()));
        }
        if c0.len() != value {
            return Err(Error::NotACutset(format!("{} edges, minimum is {value}", c0.len())));
        }
        Ok(())
    }
}

/// Searches the orderings of `c0` in lexicographic order for one meeting
/// both shift conditions on every run of time copies of one edge.
pub fn check_c0_distributive(tnet: &TimeExtendedNetwork, c0: &[EdgeId]) -> Result<Option<Vec<EdgeId>>> {
    tnet.validate_c0(c0)?;
    let mut order = c0.to_vec();
    order.sort_unstable();
    loop {
        if c0_ordering_ok(tnet, &order) {
            return Ok(Some(order));
        }
        if !next_permutation(&mut order) {
            return Ok(None);
        }
    }
}

fn c0_ordering_ok(tnet: &TimeExtendedNetwork, order: &[EdgeId]) -> bool {
    let mut runs: BTreeMap<EdgeKind, Vec<u64>> = BTreeMap::new();
    for &e in order {
        let l = tnet.labels[e];
        runs.entry(l.kind).or_default().push(l.time);
    }
    let in_c0 = |e: EdgeId, k: i64| tnet.shift(e, k).is_some_and(|x| order.contains(&x));
    let within = |q: EdgeId, bound: i64| tnet.lag(q).is_none_or(|lag| lag <= bound);
    for (kind, times) in runs.iter_mut() {
        times.sort_unstable();
        if times.len() < 2 {
            continue;
        }
        let t: Vec<i64> = times.iter().map(|&x| x as i64).collect();
        for j in 0..t.len() {
            let p = tnet.edge_for(TimeLabel { kind: *kind, time: times[j] }).unwrap();
            let pos = order.iter().position(|&x| x == p).unwrap();
            for &q in &order[..pos] {
                if j > 0 && !in_c0(q, t[j - 1] - t[j]) && !within(q, t[j] - t[j - 1] - 1) {
                    return false;
                }
                if j + 1 < t.len() && !in_c0(q, t[j + 1] - t[j]) && !within(q, t[j] - t[0]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Two session-0 paths that meet copies of the same edge at slots whose
/// difference disagrees with their cut edges.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShiftViolation {
    /// (path position, edge) pairs.
    pub first: (usize, EdgeId),
    pub second: (usize, EdgeId),
}

/// Checks that whenever path `i` uses `e[a]` and path `j` uses `e[b]`, their
/// cut edges are copies of one edge at slots differing by `a - b`.
pub fn check_p_extendable(tnet: &TimeExtendedNetwork, c0: &[EdgeId], paths: &[Path]) -> Result<Option<ShiftViolation>> {
    let crossed = session0_crossings(tnet, c0, paths)?;
    for i in 0..paths.len() {
        for j in i..paths.len() {
            if let Some(v) = shift_pair(tnet, (i, &paths[i], crossed[i]), (j, &paths[j], crossed[j])) {
                return Ok(Some(v));
            }
        }
    }
    Ok(None)
}

fn session0_crossings(tnet: &TimeExtendedNetwork, c0: &[EdgeId], paths: &[Path]) -> Result<Vec<EdgeId>> {
    let w = CutSetSequence(vec![c0.to_vec()]);
    let k = PathSetSequence(vec![paths.to_vec()]);
    let crossed = crossing_map(&tnet.net, &w, &k)?.remove(0);
    let mut used = vec![false; tnet.net.edge_count()];
    for p in paths {
        for &e in p.edges() {
            if std::mem::replace(&mut used[e], true) {
                return Err(Error::WitnessInvalid(format!("paths share edge {}", tnet.label(e))));
            }
        }
    }
    Ok(crossed)
}

fn shift_pair(
    tnet: &TimeExtendedNetwork,
    (i, pi, ci): (usize, &Path, EdgeId),
    (j, pj, cj): (usize, &Path, EdgeId),
) -> Option<ShiftViolation> {
    let (li, lj) = (tnet.labels[ci], tnet.labels[cj]);
    for &a in pi.edges() {
        for &b in pj.edges() {
            let (la, lb) = (tnet.labels[a], tnet.labels[b]);
            if la.kind != lb.kind {
                continue;
            }
            let offsets_agree = li.time as i64 - lj.time as i64 == la.time as i64 - lb.time as i64;
            if li.kind != lj.kind || !offsets_agree {
                return Some(ShiftViolation { first: (i, a), second: (j, b) });
            }
        }
    }
    None
}

/// Session-0 paths, one through each edge of `c0` and crossing `c0` only
/// there, that are edge-disjoint and pass [`check_p_extendable`]; the first
/// such system in lexicographic order of the per-edge path lists. `None`
/// also when the path enumeration exceeds `limit` or the backtracking
/// search exceeds its node cap.
pub fn find_extendable_paths(tnet: &TimeExtendedNetwork, c0: &[EdgeId], limit: usize) -> Option<Vec<Path>> {
    let s = tnet.net.session(0);
    let all = enumerate_paths(&tnet.net, s.source, s.sink, limit);
    if all.truncated {
        return None;
    }
    paths_from(tnet, c0, &all.items)
}

fn paths_from(tnet: &TimeExtendedNetwork, c0: &[EdgeId], all: &[Path]) -> Option<Vec<Path>> {
    let candidates: Vec<Vec<Path>> = c0
        .iter()
        .map(|&c| {
            all.iter()
                .filter(|p| p.contains(c) && c0.iter().filter(|&&x| p.contains(x)).count() == 1)
                .filter(|p| shift_pair(tnet, (0, p, c), (0, p, c)).is_none())
                .cloned()
                .collect()
        })
        .collect();
    let mut used = vec![false; tnet.net.edge_count()];
    let mut chosen: Vec<Path> = Vec::with_capacity(c0.len());
    let mut budget = PATH_SEARCH_NODES;
    assign_paths(tnet, c0, &candidates, &mut used, &mut chosen, &mut budget).then_some(chosen)
}

/// Cap on partial path systems visited per cut-set.
const PATH_SEARCH_NODES: u64 = 1_000_000;

fn assign_paths(
    tnet: &TimeExtendedNetwork,
    c0: &[EdgeId],
    candidates: &[Vec<Path>],
    used: &mut [bool],
    chosen: &mut Vec<Path>,
    budget: &mut u64,
) -> bool {
    let i = chosen.len();
    if i == c0.len() {
        return true;
    }
    for p in &candidates[i] {
        if *budget == 0 {
            return false;
        }
        *budget -= 1;
        if p.edges().iter().any(|&e| used[e]) {
            continue;
        }
        let fits = chosen.iter().enumerate().all(|(j, q)| shift_pair(tnet, (j, q, c0[j]), (i, p, c0[i])).is_none());
        if !fits {
            continue;
        }
        p.edges().iter().for_each(|&e| used[e] = true);
        chosen.push(p.clone());
        if assign_paths(tnet, c0, candidates, used, chosen, budget) {
            return true;
        }
        chosen.pop();
        p.edges().iter().for_each(|&e| used[e] = false);
    }
    false
}

#[derive(Debug, Clone, Serialize)]
pub struct DeadlineVerdict {
    pub status: Status,
    pub c0: Vec<EdgeId>,
    /// Ordering of `c0` meeting the shift conditions, if any.
    pub c0_ordering: Option<Vec<EdgeId>>,
    pub p_extendable: bool,
    pub p_violation: Option<ShiftViolation>,
    pub alpha_identity: bool,
    pub shift_invariant: bool,
    /// Independent checks of the shifted sequences on the whole network.
    pub cuts_minimum: bool,
    pub cumulative: bool,
    pub distributive: bool,
    pub extendable: bool,
    /// Checks the session-0 conditions predicted to pass but that failed.
    pub audit_failures: Vec<String>,
    #[serde(skip)]
    pub witness: Witness,
}

/// Shifts `c0` and `paths` to every session, then rechecks the resulting
/// sequences with the generic checkers. The verdict is `Yes` only when the
/// session-0 conditions hold and every recheck agrees; otherwise `Unknown`.
pub fn deadline_verdict(tnet: &TimeExtendedNetwork, c0: &[EdgeId], paths: &[Path]) -> Result<DeadlineVerdict> {
    let c0_ordering = check_c0_distributive(tnet, c0)?;
    let p_violation = check_p_extendable(tnet, c0, paths)?;
    let k = tnet.net.session_count();
    let order = c0_ordering.clone().unwrap_or_else(|| {
        let mut v = c0.to_vec();
        v.sort_unstable();
        v
    });
    let shift_all = |edges: &[EdgeId], t: usize| -> Result<Vec<EdgeId>> {
        edges
            .iter()
            .map(|&e| {
                tnet.shift(e, t as i64)
                    .ok_or_else(|| Error::InvalidDeadlineInstance(format!("{} leaves the horizon", tnet.label(e))))
            })
            .collect()
    };
    let mut cuts = Vec::with_capacity(k);
    let mut perms = Vec::with_capacity(k);
    let mut path_sets = Vec::with_capacity(k);
    for t in 0..k {
        cuts.push(shift_all(c0, t)?);
        perms.push(shift_all(&order, t)?);
        path_sets.push(paths.iter().map(|p| shift_all(p.edges(), t).map(Path)).collect::<Result<Vec<_>>>()?);
    }
    let witness = Witness {
        order: (0..k).collect(),
        cuts: CutSetSequence(cuts),
        perms: PermutationSequence(perms),
        paths: PathSetSequence(path_sets),
    };
    let net = &tnet.net;
    let cuts_minimum = witness.cuts.validate(net).is_ok();
    let cumulative = is_cumulative(net, &witness.cuts).is_none();
    let distributive = is_distributive(net, &witness.cuts, &witness.perms, Reading::Standard)?.is_none();
    let extendable = matches!(is_extendable(net, &witness.cuts, &witness.paths), Ok(None));
    let alpha_identity = tnet.alpha_mismatches().is_empty();
    let shift_invariant = tnet.shift_invariant()?;

    let mut audit_failures = Vec::new();
    let mut expect = |ok: bool, what: &str| {
        if !ok {
            audit_failures.push(what.to_string());
        }
    };
    expect(alpha_identity, "alpha-identity");
    expect(shift_invariant, "shift-invariance");
    expect(cuts_minimum, "shifted-cuts-minimum");
    expect(cumulative, "cumulative");
    let c0_ok = c0_ordering.is_some();
    let p_ok = p_violation.is_none();
    if c0_ok {
        expect(distributive, "distributive");
    }
    if p_ok {
        expect(extendable, "extendable");
    }
    let status = if c0_ok && p_ok && audit_failures.is_empty() { Status::Yes } else { Status::Unknown };
    Ok(DeadlineVerdict {
        status,
        c0: c0.to_vec(),
        c0_ordering,
        p_extendable: p_ok,
        p_violation,
        alpha_identity,
        shift_invariant,
        cuts_minimum,
        cumulative,
        distributive,
        extendable,
        audit_failures,
        witness,
    })
}

/// Builds the time-extended network and looks for a session-0 cut-set and
/// path system meeting the shift conditions: the instance's own cut if it
/// names one, otherwise every minimum cut-set in lexicographic order.
pub fn reduce_deadline(inst: &DeadlineInstance) -> Result<(TimeExtendedNetwork, DeadlineVerdict)> {
    let tnet = deadline_to_time_extended(inst)?;
    let s = tnet.net.session(0);
    let candidates: Vec<Vec<EdgeId>> = match &inst.cut {
        Some(labels) => vec![labels
            .iter()
            .map(|&(e, t)| {
                tnet.edge_for(TimeLabel { kind: EdgeKind::Base { edge: e }, time: t })
                    .ok_or_else(|| Error::NotACutset(format!("{}[{t}] is outside the horizon", inst.edges[e].name)))
            })
            .collect::<Result<_>>()?],
        None => enumerate_min_cutsets(&tnet.net, s.source, s.sink, DEFAULT_ENUMERATION_LIMIT).items,
    };
    let all = enumerate_paths(&tnet.net, s.source, s.sink, DEFAULT_ENUMERATION_LIMIT);
    let mut fallback = None;
    for c0 in &candidates {
        tnet.validate_c0(c0)?;
        if check_c0_distributive(&tnet, c0)?.is_none() {
            continue;
        }
        let found = if all.truncated { None } else { paths_from(&tnet, c0, &all.items) };
        if let Some(paths) = found {
            let verdict = deadline_verdict(&tnet, c0, &paths)?;
            return Ok((tnet, verdict));
        }
        fallback.get_or_insert_with(|| c0.clone());
    }
    let c0 = fallback.unwrap_or_else(|| candidates[0].clone());
    let paths = crate::graph::edge_disjoint_paths(&tnet.net, s.source, s.sink, &c0)?;
    let verdict = deadline_verdict(&tnet, &c0, &paths)?;
    Ok((tnet, verdict))
}
