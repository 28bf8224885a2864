//! Command-line front end. Every command reads JSON, writes one JSON
//! document and maps its outcome to an exit code.

use std::fs;
use std::io::Write;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::code::{audit, check_decodable, random_code, random_decodable_code, AuditConfig, CodeJson};
use crate::error::{Error, Result};
use crate::gf::PrimeField;
use crate::graph::{validate_network, Network, RawNetwork};
use crate::rate::{
    check_rate_feasible, format_ratio, max_scaled_rate, parse_ratio_list, verify_routing_scheme, RateVector,
    RoutingScheme, SchemeJson,
};
use crate::reduction::{
    decide_index_rawness, index_to_network, reduce_deadline, side_information_graph, DeadlineInstance, DeadlineJson,
    IndexCodingInstance, IndexJson, Reindex,
};
use crate::witness::{decide_information_distributive, Budget, Reading, SearchConfig, Status, WitnessJson};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 10;
pub const EXIT_UNKNOWN: i32 = 20;
pub const EXIT_ERROR: i32 = 1;

#[derive(Debug, Parser)]
#[command(name = "infodist", version, about = "Routing-optimality certificates for multi-unicast networks")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GlobalArgs {
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of search candidates.
    #[arg(long, global = true, default_value_t = 10_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub budget: u64,
    /// Wall-clock limit for the search, in seconds.
    #[arg(long, global = true)]
    pub max_seconds: Option<f64>,
    /// Bound added prefix edges by the later session index minus one.
    #[arg(long, global = true)]
    pub strict_def5: bool,
    /// Try every session order, not only the input order.
    #[arg(long, global = true, default_value_t = true, action = clap::ArgAction::Set)]
    pub reindex_sessions: bool,
}

#[derive(Debug, Clone, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case", tag = "command")]
pub enum Command {
    /// Decide whether a network is information-distributive.
    Check { network: PathBuf },
    /// Test a rate vector or maximize along a direction.
    Rate {
        network: PathBuf,
        /// Comma-separated rates such as `1,1/2`.
        #[arg(long, conflicts_with = "direction", required_unless_present = "direction")]
        rates: Option<String>,
        /// Comma-separated direction to scale.
        #[arg(long)]
        direction: Option<String>,
    },
    /// Build the network of an index-coding instance.
    ReduceIndex { instance: PathBuf },
    /// Build the time-extended network of a deadline instance.
    ReduceDeadline { instance: PathBuf },
    /// Extract the routing scheme of a linear code and audit it.
    Audit {
        network: PathBuf,
        #[arg(long)]
        code: PathBuf,
        /// Witness JSON, bare or as output by `check`.
        #[arg(long)]
        witness: PathBuf,
        /// Verify this scheme instead of the extracted one.
        #[arg(long)]
        scheme: Option<PathBuf>,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Draw a random scalar-linear code.
    GenCode {
        network: PathBuf,
        #[arg(long)]
        field: u32,
        /// Comma-separated symbols per session.
        #[arg(long)]
        rates: String,
        /// Redraw until every sink decodes.
        #[arg(long)]
        decodable: bool,
        #[arg(long, default_value_t = 1000)]
        attempts: usize,
    },
}

/// Result of one command: the JSON body and the exit code.
pub struct Outcome {
    pub code: i32,
    pub result: Value,
}

fn read_json<T: serde::de::DeserializeOwned>(path: &FsPath) -> Result<T> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

fn load_network(path: &FsPath) -> Result<Network> {
    validate_network(&read_json::<RawNetwork>(path)?)
}

fn search_config(g: &GlobalArgs) -> SearchConfig {
    SearchConfig {
        budget: Budget { max_candidates: g.budget, max_seconds: g.max_seconds },
        reading: if g.strict_def5 { Reading::Strict } else { Reading::Standard },
        reindex_sessions: g.reindex_sessions,
        ..SearchConfig::default()
    }
}

fn status_code(s: Status) -> i32 {
    match s {
        Status::Yes => EXIT_YES,
        Status::No => EXIT_NO,
        Status::Unknown => EXIT_UNKNOWN,
    }
}

fn parse_symbol_rates(s: &str) -> Result<Vec<usize>> {
    s.split(',').map(|x| x.trim().parse().map_err(|_| Error::Input(format!("rates: `{x}` is not a count")))).collect()
}

/// Runs a parsed command without touching standard streams.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let g = &cli.global;
    match &cli.command {
        Command::Check { network } => {
            let net = load_network(network)?;
            let v = decide_information_distributive(&net, &search_config(g));
            Ok(Outcome {
                code: status_code(v.status),
                result: json!({
                    "status": v.status,
                    "witness": v.witness.as_ref().map(|w| w.to_json()),
                    "rejections": v.rejections,
                    "stats": v.stats,
                }),
            })
        }
        Command::Rate { network, rates, direction } => {
            let net = load_network(network)?;
            let outcome = if let Some(r) = rates {
                let rates = RateVector::new(parse_ratio_list(r)?)?;
                let f = check_rate_feasible(&net, &rates)?;
                Outcome {
                    code: if f.feasible { EXIT_YES } else { EXIT_NO },
                    result: json!({
                        "rates": rates.0.iter().map(format_ratio).collect::<Vec<_>>(),
                        "feasible": f.feasible,
                        "lambda": f.lambda.as_ref().map(format_ratio),
                        "scheme": f.scheme.as_ref().map(RoutingScheme::to_json),
                    }),
                }
            } else {
                let dir = RateVector::new(parse_ratio_list(direction.as_deref().unwrap_or_default())?)?;
                let opt = max_scaled_rate(&net, &dir)?;
                Outcome {
                    code: EXIT_YES,
                    result: json!({
                        "direction": dir.0.iter().map(format_ratio).collect::<Vec<_>>(),
                        "lambda": format_ratio(&opt.lambda),
                        "scheme": opt.scheme.to_json(),
                        "edge_prices": opt.edge_prices.iter().map(format_ratio).collect::<Vec<_>>(),
                        "session_prices": opt.session_prices.iter().map(format_ratio).collect::<Vec<_>>(),
                    }),
                }
            };
            Ok(outcome)
        }
        Command::ReduceIndex { instance } => {
            let inst = IndexCodingInstance::from_json(&read_json::<IndexJson>(instance)?)?;
            let (net, witness) = index_to_network(&inst);
            let rawness = decide_index_rawness(&inst);
            let one_based = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
            let (order, cycle) = match &rawness.reindex {
                Reindex::Order(o) => (Some(one_based(o)), None),
                Reindex::Cycle(c) => (None, Some(one_based(c))),
            };
            let arcs: Vec<[usize; 2]> = side_information_graph(&inst).iter().map(|&(j, i)| [j + 1, i + 1]).collect();
            Ok(Outcome {
                code: if rawness.raw { EXIT_YES } else { EXIT_NO },
                result: json!({
                    "raw": rawness.raw,
                    "l_min": rawness.l_min,
                    "upper_bound": inst.message_length() * inst.terminals(),
                    "side_information_graph": arcs,
                    "order": order,
                    "cycle": cycle,
                    "network": net.to_raw(),
                    "witness": witness.to_json(),
                }),
            })
        }
        Command::ReduceDeadline { instance } => {
            let inst = DeadlineInstance::from_json(&read_json::<DeadlineJson>(instance)?)?;
            let (tnet, v) = reduce_deadline(&inst)?;
            let labels = |edges: &[usize]| edges.iter().map(|&e| tnet.label(e)).collect::<Vec<_>>();
            let session0 = &v.witness.paths.0[0];
            Ok(Outcome {
                code: status_code(v.status),
                result: json!({
                    "status": v.status,
                    "width": tnet.width,
                    "c0": labels(&v.c0),
                    "c0_ordering": v.c0_ordering.as_deref().map(labels),
                    "paths": session0.iter().map(|p| labels(p.edges())).collect::<Vec<_>>(),
                    "checks": v,
                    "network": tnet.net.to_raw(),
                    "edge_labels": (0..tnet.net.edge_count()).map(|e| tnet.label(e)).collect::<Vec<_>>(),
                    "witness": v.witness.to_json(),
                }),
            })
        }
        Command::Audit { network, code, witness, scheme, samples } => {
            let net = load_network(network)?;
            let code = read_json::<CodeJson>(code)?.build(&net)?;
            let raw: Value = read_json(witness)?;
            let body = ["witness", "result"]
                .iter()
                .find_map(|k| raw.get(k))
                .map(|v| v.get("witness").unwrap_or(v).clone())
                .unwrap_or(raw);
            let wit = serde_json::from_value::<WitnessJson>(body)
                .map_err(|e| Error::Input(format!("{}: {e}", witness.display())))?
                .into_witness()?;
            let cfg = AuditConfig { samples: *samples, seed: g.seed, ..AuditConfig::default() };
            let (extracted, report) = audit(&net, &code, &wit, &cfg)?;
            // Routing must match what the code delivers: r_i where sink i decodes.
            let decodable = check_decodable(&net, &code);
            let delivered: Vec<i64> =
                code.rates().iter().zip(&decodable).map(|(&r, &d)| if d { r as i64 } else { 0 }).collect();
            let rates = RateVector::from_integers(&delivered);
            let checked = match scheme {
                Some(p) => RoutingScheme::from_json(&read_json::<SchemeJson>(p)?)?,
                None => extracted.clone(),
            };
            let violation = verify_routing_scheme(&net, &checked, &rates)?;
            let pass = report.passes() && violation.is_none();
            Ok(Outcome {
                code: if pass { EXIT_YES } else { EXIT_NO },
                result: json!({
                    "pass": pass,
                    "decodable": decodable,
                    "verified_rates": delivered,
                    "scheme": extracted.to_json(),
                    "scheme_checked": if scheme.is_some() { "supplied" } else { "extracted" },
                    "scheme_violation": violation,
                    "audit": report,
                }),
            })
        }
        Command::GenCode { network, field, rates, decodable, attempts } => {
            let net = load_network(network)?;
            let field = PrimeField::new(*field)?;
            let rates = parse_symbol_rates(rates)?;
            if rates.len() != net.session_count() {
                return Err(Error::RateLength { expected: net.session_count(), got: rates.len() });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(g.seed);
            let code = if *decodable {
                random_decodable_code(&net, field, &rates, *attempts, &mut rng)?
            } else {
                Some(random_code(&net, field, &rates, &mut rng)?)
            };
            Ok(Outcome {
                code: if code.is_some() { EXIT_YES } else { EXIT_UNKNOWN },
                result: json!({
                    "decodable": code.as_ref().map(|c| check_decodable(&net, c)),
                    "code": code.as_ref().map(|c| c.to_json()),
                }),
            })
        }
    }
}

/// Full output document: tool identity, configuration echo and result.
pub fn document(cli: &Cli, outcome: &Outcome) -> Value {
    json!({
        "tool": "infodist",
        "version": env!("CARGO_PKG_VERSION"),
        "config": { "global": cli.global, "command": cli.command },
        "seed": cli.global.seed,
        "exit_code": outcome.code,
        "result": outcome.result,
    })
}

/// Parses arguments, runs the command, writes the document and returns the
/// exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_YES };
        }
    };
    let outcome = match execute(&cli) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let mut text = serde_json::to_string_pretty(&document(&cli, &outcome)).expect("serializable");
    text.push('\n');
    let written = match &cli.global.output {
        Some(p) => fs::write(p, text).map_err(|e| format!("{}: {e}", p.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return EXIT_ERROR;
    }
    outcome.code
}
