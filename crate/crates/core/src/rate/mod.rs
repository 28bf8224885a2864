//! Routing rate region: exact path-flow linear programs.

pub mod simplex;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{enumerate_paths, EdgeId, Network, Path, DEFAULT_ENUMERATION_LIMIT};
pub use simplex::Q;

/// Parses `"p/q"` or `"p"` into an exact rational.
pub fn parse_ratio(s: &str) -> Result<Q> {
    let bad = || Error::Input(format!("`{s}` is not a rational of the form p/q"));
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(Q::new(num, den))
}

/// Formats a rational as `"p/q"` in lowest terms.
pub fn format_ratio(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses a comma-separated list such as `1,3/2,0`.
pub fn parse_ratio_list(s: &str) -> Result<Vec<Q>> {
    s.split(',').map(parse_ratio).collect()
}

/// Per-session target rates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RateVector(pub Vec<Q>);

impl RateVector {
    pub fn new(rates: Vec<Q>) -> Result<Self> {
        if rates.iter().any(Signed::is_negative) {
            return Err(Error::Input("rates must be nonnegative".into()));
        }
        Ok(RateVector(rates))
    }

    pub fn from_integers(rates: &[i64]) -> Self {
        RateVector(rates.iter().map(|&r| Q::from_integer(r.into())).collect())
    }
}

/// Flow placed on one path of one session (0-based).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    pub session: usize,
    pub path: Path,
    pub value: Q,
}

/// A routing scheme; paths not listed carry nothing.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RoutingScheme {
    pub flows: Vec<Flow>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlowJson {
    /// 1-based session number.
    pub session: usize,
    pub path: Vec<EdgeId>,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SchemeJson {
    pub flows: Vec<FlowJson>,
}

impl RoutingScheme {
    pub fn to_json(&self) -> SchemeJson {
        SchemeJson {
            flows: self
                .flows
                .iter()
                .map(|f| FlowJson { session: f.session + 1, path: f.path.0.clone(), value: format_ratio(&f.value) })
                .collect(),
        }
    }

    pub fn from_json(json: &SchemeJson) -> Result<Self> {
        let flows = json
            .flows
            .iter()
            .map(|f| {
                let session =
                    f.session.checked_sub(1).ok_or_else(|| Error::Input("flows.session starts at 1".into()))?;
                Ok(Flow { session, path: Path(f.path.clone()), value: parse_ratio(&f.value)? })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(RoutingScheme { flows })
    }

    /// Total flow delivered to each session.
    pub fn delivered(&self, sessions: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); sessions];
        for f in &self.flows {
            if f.session < sessions {
                out[f.session] += &f.value;
            }
        }
        out
    }

    /// Total load on each edge.
    pub fn loads(&self, edges: usize) -> Vec<Q> {
        let mut out = vec![Q::zero(); edges];
        for f in &self.flows {
            for &e in f.path.edges() {
                if e < edges {
                    out[e] += &f.value;
                }
            }
        }
        out
    }

    fn scaled(&self, factor: &Q) -> Self {
        RoutingScheme { flows: self.flows.iter().map(|f| Flow { value: &f.value * factor, ..f.clone() }).collect() }
    }
}

/// First constraint a scheme breaks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum SchemeViolation {
    NegativeFlow {
        session: usize,
        path: Vec<EdgeId>,
        value: String,
    },
    /// Session (1-based) receives less than its rate.
    Demand {
        session: usize,
        delivered: String,
        required: String,
    },
    /// Edge carries more than one unit.
    Capacity {
        edge: EdgeId,
        load: String,
    },
}

/// Optimum of the scaling program.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledRate {
    pub lambda: Q,
    pub scheme: RoutingScheme,
    /// Dual price of each edge capacity (zero for edges on no path).
    pub edge_prices: Vec<Q>,
    /// Dual price of each session demand.
    pub session_prices: Vec<Q>,
}

/// Paths of every session, failing on truncation.
pub fn session_paths(net: &Network, limit: usize) -> Result<Vec<Vec<Path>>> {
    net.sessions()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let e = enumerate_paths(net, s.source, s.sink, limit);
            if e.truncated {
                Err(Error::PathEnumerationTruncated { session: i + 1, limit })
            } else {
                Ok(e.items)
            }
        })
        .collect()
}

/// Largest `λ` such that `λ · direction` is achievable by routing.
pub fn max_scaled_rate(net: &Network, direction: &RateVector) -> Result<ScaledRate> {
    max_scaled_rate_with_limit(net, direction, DEFAULT_ENUMERATION_LIMIT)
}

pub fn max_scaled_rate_with_limit(net: &Network, direction: &RateVector, limit: usize) -> Result<ScaledRate> {
    let k = net.session_count();
    if direction.0.len() != k {
        return Err(Error::RateLength { expected: k, got: direction.0.len() });
    }
    if direction.0.iter().any(Signed::is_negative) || direction.0.iter().all(Zero::is_zero) {
        return Err(Error::BadDirection);
    }
    let paths = session_paths(net, limit)?;

    // Columns: λ, then one flow per path of each session with positive demand.
    let mut columns: Vec<(usize, &Path)> = Vec::new();
    for (i, ps) in paths.iter().enumerate() {
        if direction.0[i].is_positive() {
            columns.extend(ps.iter().map(|p| (i, p)));
        }
    }
    let demand_rows: Vec<usize> = (0..k).filter(|&i| direction.0[i].is_positive()).collect();
    let mut used = vec![false; net.edge_count()];
    for (_, p) in &columns {
        for &e in p.edges() {
            used[e] = true;
        }
    }
    let edge_rows: Vec<EdgeId> = (0..net.edge_count()).filter(|&e| used[e]).collect();

    let n = 1 + columns.len();
    let mut a = Vec::with_capacity(demand_rows.len() + edge_rows.len());
    let mut b = Vec::with_capacity(a.capacity());
    for &i in &demand_rows {
        let mut row = vec![Q::zero(); n];
        row[0] = direction.0[i].clone();
        for (c, (s, _)) in columns.iter().enumerate() {
            if *s == i {
                row[c + 1] = -Q::one();
            }
        }
        a.push(row);
        b.push(Q::zero());
    }
    for &e in &edge_rows {
        let mut row = vec![Q::zero(); n];
        for (c, (_, p)) in columns.iter().enumerate() {
            if p.contains(e) {
                row[c + 1] = Q::one();
            }
        }
        a.push(row);
        b.push(Q::one());
    }
    let mut cost = vec![Q::zero(); n];
    cost[0] = Q::one();
    let sol = simplex::maximize(&a, &b, &cost)
        .expect("every demanded session is capacity-bounded, so the program is bounded");

    let flows = columns
        .iter()
        .zip(&sol.x[1..])
        .filter(|(_, v)| v.is_positive())
        .map(|((s, p), v)| Flow { session: *s, path: (*p).clone(), value: v.clone() })
        .collect();
    let mut session_prices = vec![Q::zero(); k];
    for (r, &i) in demand_rows.iter().enumerate() {
        session_prices[i] = sol.duals[r].clone();
    }
    let mut edge_prices = vec![Q::zero(); net.edge_count()];
    for (r, &e) in edge_rows.iter().enumerate() {
        edge_prices[e] = sol.duals[demand_rows.len() + r].clone();
    }
    Ok(ScaledRate { lambda: sol.value, scheme: RoutingScheme { flows }, edge_prices, session_prices })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Feasibility {
    pub feasible: bool,
    /// Scheme meeting the rates exactly, when feasible.
    pub scheme: Option<RoutingScheme>,
    /// Optimal scaling of the rate vector (absent for the zero vector).
    pub lambda: Option<Q>,
}

/// Decides whether `rates` is achievable by routing.
pub fn check_rate_feasible(net: &Network, rates: &RateVector) -> Result<Feasibility> {
    let k = net.session_count();
    if rates.0.len() != k {
        return Err(Error::RateLength { expected: k, got: rates.0.len() });
    }
    if rates.0.iter().any(Signed::is_negative) {
        return Err(Error::Input("rates must be nonnegative".into()));
    }
    if rates.0.iter().all(Zero::is_zero) {
        return Ok(Feasibility { feasible: true, scheme: Some(RoutingScheme::default()), lambda: None });
    }
    let opt = max_scaled_rate(net, rates)?;
    let feasible = opt.lambda >= Q::one();
    let scheme = feasible.then(|| opt.scheme.scaled(&opt.lambda.recip()));
    Ok(Feasibility { feasible, scheme, lambda: Some(opt.lambda) })
}

/// Checks a scheme against the demand and capacity constraints, demand
/// constraints first, sessions and edges in index order.
pub fn verify_routing_scheme(
    net: &Network,
    scheme: &RoutingScheme,
    rates: &RateVector,
) -> Result<Option<SchemeViolation>> {
    let k = net.session_count();
    if rates.0.len() != k {
        return Err(Error::RateLength { expected: k, got: rates.0.len() });
    }
    for f in &scheme.flows {
        let valid = f.session < k && {
            let s = net.session(f.session);
            net.is_path_between(f.path.edges(), s.source, s.sink)
        };
        if !valid {
            return Err(Error::UnknownPath { session: f.session + 1, path: f.path.0.clone() });
        }
    }
    if let Some(f) = scheme.flows.iter().find(|f| f.value.is_negative()) {
        return Ok(Some(SchemeViolation::NegativeFlow {
            session: f.session + 1,
            path: f.path.0.clone(),
            value: format_ratio(&f.value),
        }));
    }
    for (i, (got, want)) in scheme.delivered(k).iter().zip(&rates.0).enumerate() {
        if got < want {
            return Ok(Some(SchemeViolation::Demand {
                session: i + 1,
                delivered: format_ratio(got),
                required: format_ratio(want),
            }));
        }
    }
    for (e, load) in scheme.loads(net.edge_count()).iter().enumerate() {
        if *load > Q::one() {
            return Ok(Some(SchemeViolation::Capacity { edge: e, load: format_ratio(load) }));
        }
    }
    Ok(None)
}

/// Flow per (session, path), merging duplicate entries.
pub fn merged_flows(scheme: &RoutingScheme) -> BTreeMap<(usize, Path), Q> {
    let mut out: BTreeMap<(usize, Path), Q> = BTreeMap::new();
    for f in &scheme.flows {
        *out.entry((f.session, f.path.clone())).or_insert_with(Q::zero) += &f.value;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::net;

    fn q(n: i64, d: i64) -> Q {
        Q::new(n.into(), d.into())
    }

    #[test]
    fn ratio_roundtrip() {
        assert_eq!(parse_ratio("3/2").unwrap(), q(3, 2));
        assert_eq!(parse_ratio("4").unwrap(), q(4, 1));
        assert_eq!(format_ratio(&q(6, 4)), "3/2");
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
    }

    #[test]
    fn single_edge_capacity() {
        let n = net(&["s", "d"], &[("s", "d")], &[("s", "d")]);
        assert!(check_rate_feasible(&n, &RateVector::from_integers(&[1])).unwrap().feasible);
        let r = RateVector(vec![q(3, 2)]);
        assert!(!check_rate_feasible(&n, &r).unwrap().feasible);
        assert_eq!(max_scaled_rate(&n, &RateVector::from_integers(&[1])).unwrap().lambda, q(1, 1));
    }

    #[test]
    fn zero_rates_are_feasible() {
        let n = net(&["s", "d"], &[("s", "d")], &[("s", "d")]);
        let f = check_rate_feasible(&n, &RateVector::from_integers(&[0])).unwrap();
        assert!(f.feasible);
        let ok = verify_routing_scheme(&n, &f.scheme.unwrap(), &RateVector::from_integers(&[0]));
        assert_eq!(ok.unwrap(), None);
    }

    #[test]
    fn overloaded_edge_is_named() {
        let n = net(&["s", "x", "d"], &[("s", "x"), ("x", "d")], &[("s", "d")]);
        let scheme = RoutingScheme { flows: vec![Flow { session: 0, path: Path(vec![0, 1]), value: q(2, 1) }] };
        let v = verify_routing_scheme(&n, &scheme, &RateVector::from_integers(&[1])).unwrap();
        assert_eq!(v, Some(SchemeViolation::Capacity { edge: 0, load: "2/1".into() }));
    }

    #[test]
    fn invalid_path_is_an_error() {
        let n = net(&["s", "x", "d"], &[("s", "x"), ("x", "d")], &[("s", "d")]);
        let scheme = RoutingScheme { flows: vec![Flow { session: 0, path: Path(vec![1]), value: q(1, 1) }] };
        assert!(matches!(
            verify_routing_scheme(&n, &scheme, &RateVector::from_integers(&[1])),
            Err(Error::UnknownPath { session: 1, .. })
        ));
    }

    #[test]
    fn disjoint_sessions_reach_one_each() {
        let n = net(&["s1", "s2", "d1", "d2"], &[("s1", "d1"), ("s2", "d2")], &[("s1", "d1"), ("s2", "d2")]);
        let f = check_rate_feasible(&n, &RateVector::from_integers(&[1, 1])).unwrap();
        assert!(f.feasible);
        assert_eq!(verify_routing_scheme(&n, &f.scheme.unwrap(), &RateVector::from_integers(&[1, 1])).unwrap(), None);
    }

    #[test]
    fn bad_direction_rejected() {
        let n = net(&["s", "d"], &[("s", "d")], &[("s", "d")]);
        assert_eq!(max_scaled_rate(&n, &RateVector::from_integers(&[0])).unwrap_err(), Error::BadDirection);
        assert_eq!(
            max_scaled_rate(&n, &RateVector::from_integers(&[1, 1])).unwrap_err(),
            Error::RateLength { expected: 1, got: 2 }
        );
    }

    #[test]
    fn unreachable_session_forces_zero() {
        let n = net(&["s", "d", "x"], &[("s", "x")], &[("s", "d")]);
        let opt = max_scaled_rate(&n, &RateVector::from_integers(&[1])).unwrap();
        assert!(opt.lambda.is_zero());
    }
}
