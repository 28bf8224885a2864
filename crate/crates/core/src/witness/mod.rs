//! Cut-set, permutation and path-set certificates and their checkers.
//!
//! All checkers work on the session order of the network they are given.
//! A [`Witness`] carries its own session order and reindexes the network
//! before checking.

mod search;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{is_cut, min_cut, EdgeId, Network, Path};

pub(crate) use search::next_permutation;
pub use search::{
    decide_information_distributive, find_permutation_sequence, Budget, Rejection, SearchConfig, SearchStats, Status,
    Verdict,
};

/// One minimum cut-set per session, indexed by session position.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CutSetSequence(pub Vec<Vec<EdgeId>>);

/// One ordering of each cut-set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PermutationSequence(pub Vec<Vec<EdgeId>>);

/// One path per cut edge for every session.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathSetSequence(pub Vec<Vec<Path>>);

/// How the bound on edges that enter the prefix of a later session is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Reading {
    /// Bound by the last session index whose cut contains the edge.
    #[default]
    Standard,
    /// Bound by the later session index minus one, like the other condition.
    Strict,
}

impl CutSetSequence {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Checks that `C_i` is a minimum cut-set of session `i` for every `i`.
    pub fn validate(&self, net: &Network) -> Result<()> {
        if self.0.len() != net.session_count() {
            return Err(Error::WitnessInvalid(format!(
                "{} cut-sets for {} sessions",
                self.0.len(),
                net.session_count()
            )));
        }
        for (i, cut) in self.0.iter().enumerate() {
            if let Some(&e) = cut.iter().find(|&&e| e >= net.edge_count()) {
                return Err(Error::UnknownEdge(e));
            }
            let mut sorted = cut.clone();
            sorted.sort_unstable();
            sorted.dedup();
            let s = net.session(i);
            let mc = min_cut(net, s.source, s.sink);
            if sorted.len() != cut.len() || cut.len() != mc.value || !is_cut(net, s.source, s.sink, cut) {
                return Err(Error::WitnessInvalid(format!("cut-set of session {} is not a minimum cut-set", i + 1)));
            }
        }
        Ok(())
    }

    /// Session positions (0-based, ascending) whose cut contains `e`.
    pub fn containing(&self, e: EdgeId) -> Vec<usize> {
        self.0.iter().enumerate().filter(|(_, c)| c.contains(&e)).map(|(i, _)| i).collect()
    }
}

impl PermutationSequence {
    /// The edges before `e` in the ordering of session `i`.
    pub fn prefix(&self, i: usize, e: EdgeId) -> &[EdgeId] {
        let t = &self.0[i];
        let pos = t.iter().position(|&x| x == e).unwrap_or(t.len());
        &t[..pos]
    }

    /// Checks that each ordering is a permutation of its cut-set.
    pub fn matches(&self, w: &CutSetSequence) -> Result<()> {
        if self.0.len() != w.0.len() {
            return Err(Error::PermutationMismatch { rank: self.0.len().min(w.0.len()) + 1 });
        }
        for (i, (t, c)) in self.0.iter().zip(&w.0).enumerate() {
            let mut a = t.clone();
            let mut b = c.clone();
            a.sort_unstable();
            b.sort_unstable();
            if a != b {
                return Err(Error::PermutationMismatch { rank: i + 1 });
            }
        }
        Ok(())
    }
}

/// A path from a later source to an earlier sink that avoids the earlier cut.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CumulativeViolation {
    /// 1-based position of the later session.
    pub later: usize,
    /// 1-based position of the earlier session.
    pub earlier: usize,
    pub path: Path,
}

/// Which prefix difference an offending edge came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Condition {
    /// Edge ordered before `e` by the later session but not the earlier one.
    Added,
    /// Edge ordered before `e` by the earlier session but not the later one.
    Dropped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistributiveViolation {
    pub edge: EdgeId,
    /// 1-based positions of the consecutive sessions whose cuts contain `edge`.
    pub earlier: usize,
    pub later: usize,
    pub offending: EdgeId,
    pub alpha: usize,
    pub bound: usize,
    pub condition: Condition,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExtendableViolation {
    /// (1-based session position, path position) of the two paths.
    pub first: (usize, usize),
    pub second: (usize, usize),
    pub shared_edge: EdgeId,
}

/// Checks that every path from a later source to an earlier sink meets the
/// earlier cut-set, by reachability in the graph with that cut removed.
pub fn is_cumulative(net: &Network, w: &CutSetSequence) -> Option<CumulativeViolation> {
    let k = net.session_count();
    for i in 0..k {
        let blocked = blocked_mask(net, &w.0[i]);
        for j in i + 1..k {
            if let Some(path) = earlier_sink_reachable(net, j, i, &blocked) {
                return Some(CumulativeViolation { later: j + 1, earlier: i + 1, path });
            }
        }
    }
    None
}

/// Path from the source of session `later` to the sink of session
/// `earlier` avoiding `blocked`, if one exists.
pub(crate) fn earlier_sink_reachable(net: &Network, later: usize, earlier: usize, blocked: &[bool]) -> Option<Path> {
    net.find_path(net.session(later).source, net.session(earlier).sink, blocked)
}

pub(crate) fn blocked_mask(net: &Network, edges: &[EdgeId]) -> Vec<bool> {
    let mut mask = vec![false; net.edge_count()];
    for &e in edges {
        mask[e] = true;
    }
    mask
}

/// Checks the alpha-bounded prefix conditions for every edge shared by
/// several cut-sets, with alpha values taken from `alpha` (1-based, 0 for
/// unreached).
pub fn check_distributive_with(
    w: &CutSetSequence,
    t: &PermutationSequence,
    alpha: &[usize],
    reading: Reading,
) -> Result<Option<DistributiveViolation>> {
    t.matches(w)?;
    let mut edges: Vec<EdgeId> = w.0.iter().flatten().copied().collect();
    edges.sort_unstable();
    edges.dedup();
    for e in edges {
        let ranks = w.containing(e);
        let last = *ranks.last().unwrap() + 1;
        for pair in ranks.windows(2) {
            if let Some(v) = check_pair(t, alpha, e, pair[0], pair[1], last, reading) {
                return Ok(Some(v));
            }
        }
    }
    Ok(None)
}

/// Conditions for edge `e` between consecutive sessions `a < b` (0-based)
/// of the sessions containing it; `last` is the 1-based last such session.
pub(crate) fn check_pair(
    t: &PermutationSequence,
    alpha: &[usize],
    e: EdgeId,
    a: usize,
    b: usize,
    last: usize,
    reading: Reading,
) -> Option<DistributiveViolation> {
    let pa = t.prefix(a, e);
    let pb = t.prefix(b, e);
    let added_bound = match reading {
        Reading::Standard => last,
        Reading::Strict => b,
    };
    let violation = |offending: EdgeId, bound: usize, condition| DistributiveViolation {
        edge: e,
        earlier: a + 1,
        later: b + 1,
        offending,
        alpha: alpha[offending],
        bound,
        condition,
    };
    if let Some(&x) = pb.iter().find(|x| !pa.contains(x) && alpha[**x] > added_bound) {
        return Some(violation(x, added_bound, Condition::Added));
    }
    // The later session is `b + 1` in 1-based terms, so the bound is `b`.
    if let Some(&x) = pa.iter().find(|x| !pb.contains(x) && alpha[**x] > b) {
        return Some(violation(x, b, Condition::Dropped));
    }
    None
}

/// [`check_distributive_with`] using the network's own alpha values.
pub fn is_distributive(
    net: &Network,
    w: &CutSetSequence,
    t: &PermutationSequence,
    reading: Reading,
) -> Result<Option<DistributiveViolation>> {
    check_distributive_with(w, t, &net.alpha_all(), reading)
}

/// Checks that path `j` of session `i` is a valid path crossing `C_i` only
/// at its `j`-th distinct cut edge, and that the cut edges are covered once.
/// Returns the cut edge crossed by each path.
pub fn crossing_map(net: &Network, w: &CutSetSequence, kseq: &PathSetSequence) -> Result<Vec<Vec<EdgeId>>> {
    if kseq.0.len() != w.0.len() {
        return Err(Error::WitnessInvalid(format!("{} path-sets for {} cut-sets", kseq.0.len(), w.0.len())));
    }
    let mut crossings = Vec::with_capacity(w.0.len());
    for (i, (paths, cut)) in kseq.0.iter().zip(&w.0).enumerate() {
        let s = net.session(i);
        let bad =
            |path: usize, reason: &str| Error::BijectionViolated { rank: i + 1, path, reason: reason.to_string() };
        let mut crossed = Vec::with_capacity(paths.len());
        for (j, p) in paths.iter().enumerate() {
            if !net.is_path_between(p.edges(), s.source, s.sink) {
                return Err(bad(j, "not a source-to-sink path of its session"));
            }
            let hits: Vec<EdgeId> = p.edges().iter().copied().filter(|e| cut.contains(e)).collect();
            match hits.as_slice() {
                [c] if crossed.contains(c) => return Err(bad(j, "crosses a cut edge already covered")),
                [c] => crossed.push(*c),
                [] => return Err(bad(j, "misses the cut-set")),
                _ => return Err(bad(j, "crosses the cut-set more than once")),
            }
        }
        if crossed.len() != cut.len() {
            return Err(bad(paths.len(), "some cut edge has no path"));
        }
        crossings.push(crossed);
    }
    Ok(crossings)
}

/// Checks that all paths sharing any edge cross the same cut edge.
pub fn is_extendable(net: &Network, w: &CutSetSequence, kseq: &PathSetSequence) -> Result<Option<ExtendableViolation>> {
    let crossings = crossing_map(net, w, kseq)?;
    let mut owner: BTreeMap<EdgeId, (usize, usize)> = BTreeMap::new();
    for (i, paths) in kseq.0.iter().enumerate() {
        for (j, p) in paths.iter().enumerate() {
            for &e in p.edges() {
                match owner.get(&e) {
                    Some(&(oi, oj)) if crossings[oi][oj] != crossings[i][j] => {
                        return Ok(Some(ExtendableViolation {
                            first: (oi + 1, oj),
                            second: (i + 1, j),
                            shared_edge: e,
                        }));
                    }
                    Some(_) => {}
                    None => {
                        owner.insert(e, (i, j));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The cut edge crossed by every path through each used edge.
pub fn representatives(net: &Network, w: &CutSetSequence, kseq: &PathSetSequence) -> Result<BTreeMap<EdgeId, EdgeId>> {
    let crossings = crossing_map(net, w, kseq)?;
    let mut mu = BTreeMap::new();
    for (paths, crossed) in kseq.0.iter().zip(&crossings) {
        for (p, &c) in paths.iter().zip(crossed) {
            for &e in p.edges() {
                if *mu.entry(e).or_insert(c) != c {
                    return Err(Error::NotExtendable { edge: e });
                }
            }
        }
    }
    Ok(mu)
}

/// A complete certificate. `order[r]` is the 0-based input index of the
/// session placed at position `r`; cut-sets, orderings and path-sets are
/// listed by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub order: Vec<usize>,
    pub cuts: CutSetSequence,
    pub perms: PermutationSequence,
    pub paths: PathSetSequence,
}

/// Results of the three checkers on one witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub cumulative: Option<CumulativeViolation>,
    pub distributive: Option<DistributiveViolation>,
    pub extendable: Option<ExtendableViolation>,
}

impl WitnessReport {
    pub fn passes(&self) -> bool {
        self.cumulative.is_none() && self.distributive.is_none() && self.extendable.is_none()
    }
}

impl Witness {
    /// The network with sessions in witness order.
    pub fn ordered_network(&self, net: &Network) -> Result<Network> {
        let k = net.session_count();
        let mut seen = vec![false; k];
        for &i in &self.order {
            if i >= k || std::mem::replace(&mut seen[i], true) {
                return Err(Error::WitnessInvalid("order is not a permutation of the sessions".into()));
            }
        }
        if self.order.len() != k {
            return Err(Error::WitnessInvalid("order is not a permutation of the sessions".into()));
        }
        Ok(net.with_session_order(&self.order))
    }

    /// Runs all three checkers. Structural problems are errors; failed
    /// conditions are reported as violations.
    pub fn check(&self, net: &Network, reading: Reading) -> Result<WitnessReport> {
        let ordered = self.ordered_network(net)?;
        self.cuts.validate(&ordered)?;
        Ok(WitnessReport {
            cumulative: is_cumulative(&ordered, &self.cuts),
            distributive: is_distributive(&ordered, &self.cuts, &self.perms, reading)?,
            extendable: is_extendable(&ordered, &self.cuts, &self.paths)?,
        })
    }

    /// Like [`Witness::check`] but any violation becomes [`Error::WitnessInvalid`].
    pub fn verify(&self, net: &Network, reading: Reading) -> Result<Network> {
        let report = self.check(net, reading)?;
        if let Some(v) = report.cumulative {
            return Err(Error::WitnessInvalid(format!(
                "not cumulative: source {} reaches sink {} around its cut",
                v.later, v.earlier
            )));
        }
        if let Some(v) = report.distributive {
            return Err(Error::WitnessInvalid(format!(
                "not distributive at edge {} (offending edge {})",
                v.edge, v.offending
            )));
        }
        if let Some(v) = report.extendable {
            return Err(Error::WitnessInvalid(format!(
                "not extendable: paths share edge {} but cross different cut edges",
                v.shared_edge
            )));
        }
        self.ordered_network(net)
    }

    /// Representative map for this witness.
    pub fn representatives(&self, net: &Network) -> Result<BTreeMap<EdgeId, EdgeId>> {
        let ordered = self.ordered_network(net)?;
        representatives(&ordered, &self.cuts, &self.paths)
    }

    pub fn to_json(&self) -> WitnessJson {
        WitnessJson {
            order: Some(self.order.iter().map(|i| i + 1).collect()),
            cuts: self.cuts.0.clone(),
            perms: self.perms.0.clone(),
            paths: self.paths.0.iter().map(|ps| ps.iter().map(|p| p.0.clone()).collect()).collect(),
        }
    }
}

/// JSON form of a witness. Sessions in `order` are 1-based; a missing
/// `order` means the input order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessJson {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<usize>>,
    pub cuts: Vec<Vec<EdgeId>>,
    pub perms: Vec<Vec<EdgeId>>,
    pub paths: Vec<Vec<Vec<EdgeId>>>,
}

impl WitnessJson {
    pub fn into_witness(self) -> Result<Witness> {
        let k = self.cuts.len();
        let order = match self.order {
            None => (0..k).collect(),
            Some(o) => o
                .into_iter()
                .map(|i| i.checked_sub(1).ok_or_else(|| Error::WitnessInvalid("session numbers start at 1".into())))
                .collect::<Result<Vec<_>>>()?,
        };
        Ok(Witness {
            order,
            cuts: CutSetSequence(self.cuts),
            perms: PermutationSequence(self.perms),
            paths: PathSetSequence(self.paths.into_iter().map(|ps| ps.into_iter().map(Path).collect()).collect()),
        })
    }
}
