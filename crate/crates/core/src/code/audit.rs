//! Exact checks of the information inequalities behind the routing
//! construction, evaluated on a concrete code and witness.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{check_decodable, extract_routing, share, LinearCode, Var};
use crate::error::Result;
use crate::graph::{EdgeId, Network};
use crate::rate::{format_ratio, RoutingScheme, Q};
use crate::witness::{next_permutation, Reading, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Relation {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = ">=")]
    Ge,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditEntry {
    pub id: &'static str,
    pub subject: String,
    pub lhs: String,
    pub rhs: String,
    pub relation: Relation,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub entries: Vec<AuditEntry>,
    pub failures: usize,
}

impl AuditReport {
    pub fn passes(&self) -> bool {
        self.failures == 0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AuditConfig {
    /// Random queries per identity family.
    pub samples: usize,
    pub seed: u64,
    /// Cut-sets up to this size are checked under every ordering.
    pub max_permutation_size: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { samples: 100, seed: 0, max_permutation_size: 6 }
    }
}

struct Log(Vec<AuditEntry>);

impl Log {
    fn push<T: Ord + ToString>(&mut self, id: &'static str, subject: String, lhs: T, relation: Relation, rhs: T) {
        let pass = match relation {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        };
        self.0.push(AuditEntry { id, subject, lhs: lhs.to_string(), rhs: rhs.to_string(), relation, pass });
    }

    fn push_q(&mut self, id: &'static str, subject: String, lhs: &Q, relation: Relation, rhs: &Q) {
        let pass = match relation {
            Relation::Le => lhs <= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ge => lhs >= rhs,
        };
        self.0.push(AuditEntry { id, subject, lhs: format_ratio(lhs), rhs: format_ratio(rhs), relation, pass });
    }
}

/// Runs every check and returns the extracted scheme with the report.
pub fn audit(
    net: &Network,
    code: &LinearCode,
    wit: &Witness,
    cfg: &AuditConfig,
) -> Result<(RoutingScheme, AuditReport)> {
    let ordered = wit.verify(net, Reading::Standard)?;
    let scheme = extract_routing(net, code, wit)?;
    let mut log = Log(Vec::new());

    for (r, &session) in wit.order.iter().enumerate() {
        let subject = format!("session {}", session + 1);
        let y = [Var::Source(session)];
        let earlier: Vec<Var> = wit.order[..r].iter().map(|&i| Var::Source(i)).collect();
        let cut = &wit.cuts.0[r];
        let cut_vars: Vec<Var> = cut.iter().map(|&e| Var::Edge(e)).collect();
        let sink_vars: Vec<Var> = ordered.in_edges(ordered.session(r).sink).iter().map(|&e| Var::Edge(e)).collect();

        let via_sink = code.cond_mutual_info(&y, &sink_vars, &earlier);
        let via_cut = code.cond_mutual_info(&y, &cut_vars, &earlier);
        log.push("sink-information-within-cut", subject.clone(), via_sink, Relation::Le, via_cut);

        let mut cond = earlier.clone();
        cond.extend(&cut_vars);
        log.push("sink-determined-by-cut", subject.clone(), code.cond_entropy(&sink_vars, &cond), Relation::Eq, 0);

        let chain: usize =
            wit.perms.0[r].iter().map(|&e| share(code, session, &earlier, wit.perms.prefix(r, e), e)).sum();
        log.push("chain-rule", subject.clone(), via_cut, Relation::Eq, chain);

        if cut.len() <= cfg.max_permutation_size {
            let mut perm = cut.clone();
            perm.sort_unstable();
            // Reports the first ordering whose sum differs, if any.
            let mut worst = via_cut;
            loop {
                let total: usize = (0..perm.len()).map(|p| share(code, session, &earlier, &perm[..p], perm[p])).sum();
                if total != via_cut && worst == via_cut {
                    worst = total;
                }
                if !next_permutation(&mut perm) {
                    break;
                }
            }
            log.push("chain-rule-any-order", subject.clone(), via_cut, Relation::Eq, worst);
        }

        let delivered: Q = scheme.flows.iter().filter(|f| f.session == session).map(|f| f.value.clone()).sum();
        log.push_q("demand-met", subject.clone(), &delivered, Relation::Ge, &Q::from_integer(via_sink.into()));
    }

    let decodable = check_decodable(net, code);
    for (i, ok) in decodable.iter().enumerate() {
        if *ok {
            let r = wit.order.iter().position(|&x| x == i).unwrap();
            let earlier: Vec<Var> = wit.order[..r].iter().map(|&x| Var::Source(x)).collect();
            let sink_vars: Vec<Var> = net.in_edges(net.session(i).sink).iter().map(|&e| Var::Edge(e)).collect();
            log.push(
                "decoded-rate",
                format!("session {}", i + 1),
                code.cond_mutual_info(&[Var::Source(i)], &sink_vars, &earlier),
                Relation::Eq,
                code.rates()[i],
            );
        }
    }

    let mut cut_edges: Vec<EdgeId> = wit.cuts.0.iter().flatten().copied().collect();
    cut_edges.sort_unstable();
    cut_edges.dedup();
    for &e in &cut_edges {
        let total: usize = wit
            .cuts
            .0
            .iter()
            .enumerate()
            .filter(|(_, c)| c.contains(&e))
            .map(|(r, _)| {
                let earlier: Vec<Var> = wit.order[..r].iter().map(|&i| Var::Source(i)).collect();
                share(code, wit.order[r], &earlier, wit.perms.prefix(r, e), e)
            })
            .sum();
        log.push("edge-share-within-entropy", format!("edge {e}"), total, Relation::Le, code.entropy(&[Var::Edge(e)]));
    }

    let mu: BTreeMap<EdgeId, EdgeId> = wit.representatives(net)?;
    let loads = scheme.loads(net.edge_count());
    for (&e, &m) in &mu {
        let h = Q::from_integer(code.entropy(&[Var::Edge(m)]).into());
        log.push_q("load-within-representative", format!("edge {e}"), &loads[e], Relation::Le, &h);
        log.push_q("representative-within-capacity", format!("edge {e}"), &h, Relation::Le, &Q::from_integer(1.into()));
    }
    for (e, load) in loads.iter().enumerate() {
        if !mu.contains_key(&e) {
            log.push_q(
                "load-within-representative",
                format!("edge {e}"),
                load,
                Relation::Le,
                &Q::from_integer(0.into()),
            );
        }
    }

    random_identities(code, cfg, &mut log);

    let failures = log.0.iter().filter(|e| !e.pass).count();
    Ok((scheme, AuditReport { entries: log.0, failures }))
}

/// Random subset of the code's variables, as rows.
fn random_rows(code: &LinearCode, pool: &[Var], rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    let picked: Vec<Var> = pool.iter().copied().filter(|_| rng.gen_ratio(1, 3)).collect();
    code.rows(&picked)
}

/// One to three random linear combinations of `rows`.
fn random_function(code: &LinearCode, rows: &[Vec<u32>], rng: &mut ChaCha8Rng) -> Vec<Vec<u32>> {
    let f = code.field();
    let outputs = rng.gen_range(1..=3);
    (0..outputs)
        .map(|_| {
            let mut acc = vec![0u32; code.dimension()];
            for r in rows {
                f.axpy(&mut acc, rng.gen_range(0..f.order()), r);
            }
            acc
        })
        .collect()
}

fn cat(parts: &[&[Vec<u32>]]) -> Vec<Vec<u32>> {
    parts.iter().flat_map(|p| p.iter().cloned()).collect()
}

/// Identities about functions of random variables, checked on random
/// subsets of the code's variables and random linear functions of them.
fn random_identities(code: &LinearCode, cfg: &AuditConfig, log: &mut Log) {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut pool: Vec<Var> = (0..code.rates().len()).map(Var::Source).collect();
    pool.extend((0..code.global.len()).map(Var::Edge));
    pool.shuffle(&mut rng);
    for n in 0..cfg.samples {
        let subject = format!("sample {n}");
        let x = random_rows(code, &pool, &mut rng);
        let y = random_rows(code, &pool, &mut rng);
        let z = random_rows(code, &pool, &mut rng);
        let w = random_rows(code, &pool, &mut rng);

        // H(X|Y) = H(X|Y,f(Y))
        let fy = random_function(code, &y, &mut rng);
        log.push(
            "conditioning-on-own-function",
            subject.clone(),
            code.cond_entropy_rows(&x, &y),
            Relation::Eq,
            code.cond_entropy_rows(&x, &cat(&[&y, &fy])),
        );
        // I(X;Y|Z) = I(X;Y|Z,f(Z))
        let fz = random_function(code, &z, &mut rng);
        log.push(
            "information-given-own-function",
            subject.clone(),
            code.cond_mutual_info_rows(&x, &y, &z),
            Relation::Eq,
            code.cond_mutual_info_rows(&x, &y, &cat(&[&z, &fz])),
        );
        // H(X|f(Y)) >= H(X|Y)
        log.push(
            "conditioning-on-function-loses",
            subject.clone(),
            code.cond_entropy_rows(&x, &fy),
            Relation::Ge,
            code.cond_entropy_rows(&x, &y),
        );
        // I(X;Y|Z,W) >= I(X;f(Y,Z)|Z,W)
        let fyz = random_function(code, &cat(&[&y, &z]), &mut rng);
        let zw = cat(&[&z, &w]);
        log.push(
            "processing-loses-information",
            subject.clone(),
            code.cond_mutual_info_rows(&x, &y, &zw),
            Relation::Ge,
            code.cond_mutual_info_rows(&x, &fyz, &zw),
        );
        // Z = f(X,W): I(X;Y|W) >= I(X;Y|W,Z) and I(X;Y|W) >= I(Z;Y|W)
        let fxw = random_function(code, &cat(&[&x, &w]), &mut rng);
        let base = code.cond_mutual_info_rows(&x, &y, &w);
        log.push(
            "markov-conditioning-loses",
            subject.clone(),
            base,
            Relation::Ge,
            code.cond_mutual_info_rows(&x, &y, &cat(&[&w, &fxw])),
        );
        log.push(
            "markov-processing-loses",
            subject.clone(),
            base,
            Relation::Ge,
            code.cond_mutual_info_rows(&fxw, &y, &w),
        );
        // Symmetry and chain rule of the rank formula itself.
        log.push(
            "information-symmetric",
            subject.clone(),
            code.cond_mutual_info_rows(&x, &y, &z),
            Relation::Eq,
            code.cond_mutual_info_rows(&y, &x, &z),
        );
        log.push(
            "information-chain-rule",
            subject,
            code.cond_mutual_info_rows(&x, &cat(&[&y, &w]), &z),
            Relation::Eq,
            code.cond_mutual_info_rows(&x, &y, &z) + code.cond_mutual_info_rows(&x, &w, &cat(&[&z, &y])),
        );
    }
}
