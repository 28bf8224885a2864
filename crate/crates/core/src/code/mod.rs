//! Scalar linear network codes over prime fields.
//!
//! Every edge carries one field symbol. Entropies are ranks of stacked
//! global encoding vectors, measured in field symbols.

mod audit;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::graph::{EdgeId, Network};
use crate::rate::{Flow, RoutingScheme, Q};
use crate::witness::{crossing_map, Reading, Witness};

pub use audit::{audit, AuditConfig, AuditEntry, AuditReport, Relation};

/// One input of a local encoder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Input {
    /// Symbol `symbol` of the message of 0-based `session`.
    Source { session: usize, symbol: usize },
    /// The symbol carried by an incoming edge.
    Edge(EdgeId),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coefficient {
    pub input: Input,
    pub value: u32,
}

/// Linear combination computed by one edge from the inputs at its tail.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalEncoder {
    pub edge: EdgeId,
    pub coeffs: Vec<Coefficient>,
}

/// Variables of a code: whole source messages and edge symbols.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// All symbols of the message of a 0-based session.
    Source(usize),
    Edge(EdgeId),
}

/// A propagated code: one global vector per edge over the stacked source
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearCode {
    field: PrimeField,
    rates: Vec<usize>,
    offsets: Vec<usize>,
    locals: Vec<LocalEncoder>,
    global: Vec<Vec<u32>>,
}

impl LinearCode {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn rates(&self) -> &[usize] {
        &self.rates
    }

    /// Total number of source symbols.
    pub fn dimension(&self) -> usize {
        self.rates.iter().sum()
    }

    pub fn global(&self, e: EdgeId) -> &[u32] {
        &self.global[e]
    }

    pub fn locals(&self) -> &[LocalEncoder] {
        &self.locals
    }

    /// Coordinate range of session `i`'s symbols.
    pub fn coordinates(&self, i: usize) -> std::ops::Range<usize> {
        self.offsets[i]..self.offsets[i] + self.rates[i]
    }

    /// Selector row of one source symbol.
    pub fn selector(&self, session: usize, symbol: usize) -> Vec<u32> {
        let mut row = vec![0; self.dimension()];
        row[self.offsets[session] + symbol] = 1;
        row
    }

    /// Rows spanning the variables in `vars`.
    pub fn rows(&self, vars: &[Var]) -> Vec<Vec<u32>> {
        let mut rows = Vec::new();
        for v in vars {
            match *v {
                Var::Source(i) => rows.extend((0..self.rates[i]).map(|s| self.selector(i, s))),
                Var::Edge(e) => rows.push(self.global[e].clone()),
            }
        }
        rows
    }

    /// Joint entropy of a row set, in symbols.
    pub fn rank(&self, rows: &[Vec<u32>]) -> usize {
        self.field.rank(rows)
    }

    pub fn entropy(&self, vars: &[Var]) -> usize {
        self.rank(&self.rows(vars))
    }

    /// `H(A | C)` for row sets.
    pub fn cond_entropy_rows(&self, a: &[Vec<u32>], c: &[Vec<u32>]) -> usize {
        self.rank(&concat(&[a, c])) - self.rank(c)
    }

    /// `I(A; B | C) = rk(A,C) + rk(B,C) - rk(A,B,C) - rk(C)` for row sets.
    pub fn cond_mutual_info_rows(&self, a: &[Vec<u32>], b: &[Vec<u32>], c: &[Vec<u32>]) -> usize {
        let ac = self.rank(&concat(&[a, c]));
        let bc = self.rank(&concat(&[b, c]));
        let abc = self.rank(&concat(&[a, b, c]));
        let cr = self.rank(c);
        ac + bc - abc - cr
    }

    pub fn cond_mutual_info(&self, a: &[Var], b: &[Var], c: &[Var]) -> usize {
        self.cond_mutual_info_rows(&self.rows(a), &self.rows(b), &self.rows(c))
    }

    pub fn cond_entropy(&self, a: &[Var], c: &[Var]) -> usize {
        self.cond_entropy_rows(&self.rows(a), &self.rows(c))
    }

    pub fn to_json(&self) -> CodeJson {
        CodeJson {
            field: self.field.order(),
            rates: self.rates.clone(),
            locals: self
                .locals
                .iter()
                .map(|l| LocalJson {
                    edge: l.edge,
                    coeffs: l
                        .coeffs
                        .iter()
                        .map(|c| match c.input {
                            Input::Source { session, symbol } => CoeffJson {
                                from: FromJson::Session(format!("session {}", session + 1)),
                                value: c.value as i64,
                                symbol: (self.rates[session] > 1).then_some(symbol),
                            },
                            Input::Edge(e) => {
                                CoeffJson { from: FromJson::Edge(e), value: c.value as i64, symbol: None }
                            }
                        })
                        .collect(),
                })
                .collect(),
        }
    }
}

fn concat(parts: &[&[Vec<u32>]]) -> Vec<Vec<u32>> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// Derives global vectors from local encoders in topological order.
pub fn propagate(net: &Network, field: PrimeField, rates: &[usize], locals: Vec<LocalEncoder>) -> Result<LinearCode> {
    let k = net.session_count();
    if rates.len() != k {
        return Err(Error::RateLength { expected: k, got: rates.len() });
    }
    let mut by_edge: Vec<Option<usize>> = vec![None; net.edge_count()];
    for (n, l) in locals.iter().enumerate() {
        if l.edge >= net.edge_count() {
            return Err(Error::UnknownEdge(l.edge));
        }
        if by_edge[l.edge].replace(n).is_some() {
            return Err(Error::InvalidEncoderInput { edge: l.edge, reason: "edge has two local encoders".into() });
        }
    }
    let offsets: Vec<usize> = rates
        .iter()
        .scan(0, |acc, &r| {
            let o = *acc;
            *acc += r;
            Some(o)
        })
        .collect();
    let dim: usize = rates.iter().sum();
    let mut global = vec![vec![0u32; dim]; net.edge_count()];
    let mut done = vec![false; net.edge_count()];
    for e in net.edges_in_topological_order() {
        let l = &locals[by_edge[e].ok_or(Error::MissingEncoder(e))?];
        let tail = net.edge(e).tail;
        let mut g = vec![0u32; dim];
        for c in &l.coeffs {
            let bad = |reason: String| Error::InvalidEncoderInput { edge: e, reason };
            match c.input {
                Input::Source { session, symbol } => {
                    if session >= k || net.session(session).source != tail {
                        return Err(bad(format!("session {} does not originate at the tail", session + 1)));
                    }
                    if symbol >= rates[session] {
                        return Err(bad(format!("session {} has no symbol {symbol}", session + 1)));
                    }
                    let idx = offsets[session] + symbol;
                    g[idx] = field.add(g[idx], field.reduce(c.value as i64));
                }
                Input::Edge(src) => {
                    if src >= net.edge_count() || net.edge(src).head != tail {
                        return Err(bad(format!("edge {src} does not enter the tail")));
                    }
                    debug_assert!(done[src]);
                    let row = global[src].clone();
                    field.axpy(&mut g, field.reduce(c.value as i64), &row);
                }
            }
        }
        global[e] = g;
        done[e] = true;
    }
    Ok(LinearCode { field, rates: rates.to_vec(), offsets, locals, global })
}

/// Inputs available to each edge: source symbols at a source, incoming
/// edges elsewhere.
fn available_inputs(net: &Network, rates: &[usize], e: EdgeId) -> Vec<Input> {
    let tail = net.edge(e).tail;
    let mut inputs: Vec<Input> = net
        .sessions()
        .iter()
        .enumerate()
        .filter(|(_, s)| s.source == tail)
        .flat_map(|(i, _)| (0..rates[i]).map(move |symbol| Input::Source { session: i, symbol }))
        .collect();
    inputs.extend(net.in_edges(tail).iter().map(|&x| Input::Edge(x)));
    inputs
}

/// Code with every local coefficient drawn uniformly from the field.
pub fn random_code<R: Rng>(net: &Network, field: PrimeField, rates: &[usize], rng: &mut R) -> Result<LinearCode> {
    let locals = (0..net.edge_count())
        .map(|e| LocalEncoder {
            edge: e,
            coeffs: available_inputs(net, rates, e)
                .into_iter()
                .map(|input| Coefficient { input, value: rng.gen_range(0..field.order()) })
                .collect(),
        })
        .collect();
    propagate(net, field, rates, locals)
}

/// Code with all local coefficients zero.
pub fn zero_code(net: &Network, field: PrimeField, rates: &[usize]) -> Result<LinearCode> {
    let locals = (0..net.edge_count()).map(|e| LocalEncoder { edge: e, coeffs: Vec::new() }).collect();
    propagate(net, field, rates, locals)
}

/// Draws up to `attempts` random codes and returns the first one every
/// session can decode.
pub fn random_decodable_code<R: Rng>(
    net: &Network,
    field: PrimeField,
    rates: &[usize],
    attempts: usize,
    rng: &mut R,
) -> Result<Option<LinearCode>> {
    for _ in 0..attempts {
        let code = random_code(net, field, rates, rng)?;
        if check_decodable(net, &code).iter().all(|&d| d) {
            return Ok(Some(code));
        }
    }
    Ok(None)
}

/// Whether each sink can recover its whole message from its incoming edges.
pub fn check_decodable(net: &Network, code: &LinearCode) -> Vec<bool> {
    net.sessions()
        .iter()
        .enumerate()
        .map(|(i, s)| {
            let incoming: Vec<Var> = net.in_edges(s.sink).iter().map(|&e| Var::Edge(e)).collect();
            let rows = code.rows(&incoming);
            let base = code.rank(&rows);
            let mut with_sel = rows;
            with_sel.extend(code.rows(&[Var::Source(i)]));
            code.rank(&with_sel) == base
        })
        .collect()
}

/// Routing scheme assigning to the path of each cut edge the information
/// that the edge carries about its session, given the earlier sessions and
/// the earlier edges of the ordering.
pub fn extract_routing(net: &Network, code: &LinearCode, wit: &Witness) -> Result<RoutingScheme> {
    let ordered = wit.verify(net, Reading::Standard)?;
    let crossing = crossing_map(&ordered, &wit.cuts, &wit.paths)?;
    let mut flows = Vec::new();
    for (r, &session) in wit.order.iter().enumerate() {
        let earlier: Vec<Var> = wit.order[..r].iter().map(|&i| Var::Source(i)).collect();
        for (p, &e) in wit.paths.0[r].iter().zip(&crossing[r]) {
            let value = share(code, session, &earlier, wit.perms.prefix(r, e), e);
            if value > 0 {
                flows.push(Flow { session, path: p.clone(), value: Q::from_integer(value.into()) });
            }
        }
    }
    Ok(RoutingScheme { flows })
}

/// `I(Y_session; U_e | Y_earlier, U_prefix)`.
pub(crate) fn share(code: &LinearCode, session: usize, earlier: &[Var], prefix: &[EdgeId], e: EdgeId) -> usize {
    let mut cond = earlier.to_vec();
    cond.extend(prefix.iter().map(|&x| Var::Edge(x)));
    code.cond_mutual_info(&[Var::Source(session)], &[Var::Edge(e)], &cond)
}

/// Source of a coefficient in JSON: `"session i"` (1-based) or an edge id.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FromJson {
    Edge(EdgeId),
    Session(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffJson {
    pub from: FromJson,
    pub value: i64,
    /// Symbol index within a multi-symbol message; defaults to 0.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symbol: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LocalJson {
    pub edge: EdgeId,
    pub coeffs: Vec<CoeffJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CodeJson {
    pub field: u32,
    pub rates: Vec<usize>,
    pub locals: Vec<LocalJson>,
}

impl CodeJson {
    pub fn build(&self, net: &Network) -> Result<LinearCode> {
        let field = PrimeField::new(self.field)?;
        let locals = self
            .locals
            .iter()
            .map(|l| {
                let coeffs = l
                    .coeffs
                    .iter()
                    .map(|c| {
                        let input = match &c.from {
                            FromJson::Edge(e) => Input::Edge(*e),
                            FromJson::Session(s) => {
                                let session = s
                                    .strip_prefix("session")
                                    .and_then(|n| n.trim().parse::<usize>().ok())
                                    .and_then(|n| n.checked_sub(1))
                                    .ok_or_else(|| {
                                        Error::Input(format!(
                                            "locals.coeffs.from: expected \"session <n>\" or an edge id, got \"{s}\""
                                        ))
                                    })?;
                                Input::Source { session, symbol: c.symbol.unwrap_or(0) }
                            }
                        };
                        Ok(Coefficient { input, value: field.reduce(c.value) })
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(LocalEncoder { edge: l.edge, coeffs })
            })
            .collect::<Result<Vec<_>>>()?;
        propagate(net, field, &self.rates, locals)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::net;

    fn gf(q: u32) -> PrimeField {
        PrimeField::new(q).unwrap()
    }

    fn relay() -> Network {
        net(&["s", "x", "d"], &[("s", "x"), ("x", "d")], &[("s", "d")])
    }

    fn pass_through() -> Vec<LocalEncoder> {
        vec![
            LocalEncoder {
                edge: 0,
                coeffs: vec![Coefficient { input: Input::Source { session: 0, symbol: 0 }, value: 1 }],
            },
            LocalEncoder { edge: 1, coeffs: vec![Coefficient { input: Input::Edge(0), value: 1 }] },
        ]
    }

    #[test]
    fn relay_chain_copies_symbol() {
        let n = relay();
        let code = propagate(&n, gf(3), &[1], pass_through()).unwrap();
        assert_eq!(code.global(0), code.global(1));
        assert_eq!(check_decodable(&n, &code), vec![true]);
    }

    #[test]
    fn zero_code_is_not_decodable() {
        let n = relay();
        let code = zero_code(&n, gf(2), &[1]).unwrap();
        assert!(code.global(1).iter().all(|&v| v == 0));
        assert_eq!(check_decodable(&n, &code), vec![false]);
    }

    #[test]
    fn missing_and_misplaced_inputs() {
        let n = relay();
        let mut locals = pass_through();
        locals.pop();
        assert_eq!(propagate(&n, gf(2), &[1], locals).unwrap_err(), Error::MissingEncoder(1));
        let mut locals = pass_through();
        locals[1].coeffs[0].input = Input::Source { session: 0, symbol: 0 };
        assert!(matches!(propagate(&n, gf(2), &[1], locals), Err(Error::InvalidEncoderInput { edge: 1, .. })));
    }

    #[test]
    fn mutual_information_by_ranks() {
        // Two sources into one edge carrying Y1 + Y2.
        let n = net(&["s1", "s2", "d1", "d2"], &[("s1", "d1"), ("s2", "d2")], &[("s1", "d1"), ("s2", "d2")]);
        let code = zero_code(&n, gf(2), &[1, 1]).unwrap();
        let sum = vec![vec![1, 1]];
        let y1 = code.rows(&[Var::Source(0)]);
        let y2 = code.rows(&[Var::Source(1)]);
        assert_eq!(code.cond_mutual_info_rows(&y1, &y2, &[]), 0);
        assert_eq!(code.cond_mutual_info_rows(&y1, &sum, &y2), 1);
        assert_eq!(code.cond_mutual_info_rows(&y1, &sum, &[]), 0);
    }

    #[test]
    fn json_roundtrip() {
        let n = relay();
        let code = random_code(&n, gf(5), &[2], &mut rand::rngs::mock::StepRng::new(3, 7)).unwrap();
        let json = serde_json::to_string(&code.to_json()).unwrap();
        let back: CodeJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.build(&n).unwrap(), code);
    }

    #[test]
    fn session_label_parse_error_names_field() {
        let n = relay();
        let json = r#"{"field":2,"rates":[1],"locals":[{"edge":0,"coeffs":[{"from":"src 1","value":1}]},{"edge":1,"coeffs":[]}]}"#;
        let c: CodeJson = serde_json::from_str(json).unwrap();
        let err = c.build(&n).unwrap_err().to_string();
        assert!(err.contains("locals.coeffs.from"), "{err}");
    }
}
