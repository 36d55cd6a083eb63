use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use homlab::audit::{self, Verdict, DEFAULT_BUDGET};
use homlab::cfi::{cfi_build, GadgetMap};
use homlab::corpus::Corpus;
use homlab::format::{emit_graph6, parse_graph_arg, read_graph, GraphJson};
use homlab::hom::{hom_count, hom_count_bruteforce, hom_count_td, sub_count_bruteforce};
use homlab::oddo::{hom_gap_report, oddness_profile, ODDO_BUDGET};
use homlab::spasm::{spasm, sub_basis};
use homlab::suite::{corpus_run, SuiteConfig};
use homlab::treewidth::treewidth_exact;
use homlab::wl::wl_compare;
use homlab::{Error, Graph, VertexMap};

const EXIT_FAIL: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_INCONCLUSIVE: u8 = 3;

/// Subgraph-count invariance under Weisfeiler-Leman, with CFI witnesses.
///
/// Graph arguments accept a file (graph6 or JSON), a graph6 string, or a
/// name such as K4, C6, P3, E2, S3, 2K3 or Petersen.
#[derive(Parser)]
#[command(name = "homlab", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    out: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Encoding of emitted graphs.
    #[arg(long, global = true, value_enum, default_value_t = Format::Graph6)]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Indented, human-oriented output instead of one JSON line.
    #[arg(long, global = true)]
    human: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Graph6,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Brute,
    Td,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether sub(pattern, ·) is k-WL invariant.
    Audit {
        pattern_arg: Option<String>,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Search for a CFI pair separating sub(pattern, ·) under k-WL.
    Witness {
        pattern_arg: Option<String>,
        #[arg(long)]
        pattern: Option<String>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Check that G, H are k-WL equivalent but differ in sub(pattern, ·).
    Verify {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Compare two graphs under k-WL.
    Wl {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        g: String,
        #[arg(long)]
        h: String,
    },
    /// Count homomorphisms.
    Hom {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        target: String,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
    },
    /// Count subgraphs isomorphic to the pattern.
    Sub {
        #[arg(long)]
        pattern: String,
        #[arg(long)]
        target: String,
    },
    /// Build a CFI graph.
    Cfi {
        #[arg(long)]
        base: String,
        /// Comma-separated twisted base vertices.
        #[arg(long, value_delimiter = ',')]
        twist: Vec<usize>,
    },
    /// List the homomorphic images of a pattern.
    Spasm {
        #[arg(long)]
        pattern: String,
    },
    /// Coefficients of sub(pattern, ·) in the homomorphism basis.
    Basis {
        #[arg(long)]
        pattern: String,
    },
    /// Exact treewidth with a decomposition.
    Tw {
        graph_arg: Option<String>,
        #[arg(long)]
        g: Option<String>,
    },
    /// Oddness profile of a map, or the CFI hom-gap report when no map is given.
    Oddo {
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        /// Comma-separated images of the vertices of f.
        #[arg(long, value_delimiter = ',')]
        map: Option<Vec<usize>>,
        #[arg(long, default_value_t = ODDO_BUDGET)]
        budget: u64,
    },
    /// Run the corpus checks.
    Corpus {
        /// Only checks of these modules (repeatable).
        #[arg(long)]
        module: Vec<String>,
        #[arg(long, default_value_t = ODDO_BUDGET)]
        budget: u64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::BudgetExhausted(_) => EXIT_INCONCLUSIVE,
            Error::Consistency(_) | Error::BasisMismatch(_) | Error::InvalidDecomposition(_) => {
                EXIT_FAIL
            }
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

fn load(arg: &str) -> Result<Graph, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(Error::from)?;
        return Ok(read_graph(&text)?);
    }
    Ok(parse_graph_arg(arg)?)
}

fn pick(positional: Option<String>, flag: Option<String>, what: &str) -> Result<Graph, Failure> {
    match (positional, flag) {
        (Some(a), None) | (None, Some(a)) => load(&a),
        (Some(_), Some(_)) => Err(usage(format!(
            "give the {what} once, positionally or by flag"
        ))),
        (None, None) => Err(usage(format!("missing {what}"))),
    }
}

fn graph_value(g: &Graph, format: Format) -> Result<Value, Failure> {
    Ok(match format {
        Format::Graph6 => Value::String(emit_graph6(g)?),
        Format::Json => serde_json::to_value(GraphJson::from(g)).map_err(Error::from)?,
    })
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("report types serialize")
}

fn run(cli: Cli) -> Result<(Value, u8), Failure> {
    let format = cli.out.format;
    match cli.command {
        Command::Audit {
            pattern_arg,
            pattern,
            k,
            budget,
        } => {
            let f = pick(pattern_arg, pattern, "pattern")?;
            let r = audit::audit(&f, k, budget)?;
            let code = if r.verdict == Verdict::Inconclusive {
                EXIT_INCONCLUSIVE
            } else {
                0
            };
            Ok((to_value(&r), code))
        }
        Command::Witness {
            pattern_arg,
            pattern,
            k,
            budget,
        } => {
            let f = pick(pattern_arg, pattern, "pattern")?;
            let s = audit::witness_search(&f, k, budget)?;
            let code = if s.witness.is_some() {
                0
            } else {
                EXIT_INCONCLUSIVE
            };
            Ok((
                json!({
                    "witness": s.witness,
                    "candidates": s.candidates,
                    "truncated": s.truncated,
                }),
                code,
            ))
        }
        Command::Verify { pattern, k, g, h } => {
            let (f, g, h) = (load(&pattern)?, load(&g)?, load(&h)?);
            let ok = audit::verify_witness(&f, k, &g, &h)?;
            Ok((
                json!({ "k": k, "witness": ok }),
                if ok { 0 } else { EXIT_FAIL },
            ))
        }
        Command::Wl { k, g, h } => {
            let v = wl_compare(&load(&g)?, &load(&h)?, k)?;
            Ok((to_value(&v), 0))
        }
        Command::Hom {
            pattern,
            target,
            mode,
        } => {
            let (f, g) = (load(&pattern)?, load(&target)?);
            let count = match mode {
                None => hom_count(&f, &g)?,
                Some(Mode::Brute) => hom_count_bruteforce(&f, &g)?,
                Some(Mode::Td) => {
                    let (_, td) = treewidth_exact(&f)?;
                    hom_count_td(&f, &td, &g)?
                }
            };
            Ok((json!({ "count": count.to_string() }), 0))
        }
        Command::Sub { pattern, target } => {
            let count = sub_count_bruteforce(&load(&pattern)?, &load(&target)?)?;
            Ok((json!({ "count": count.to_string() }), 0))
        }
        Command::Cfi { base, twist } => {
            let c = cfi_build(&load(&base)?, &twist)?;
            Ok((
                json!({
                    "graph": graph_value(&c.graph, format)?,
                    "n": c.graph.n(),
                    "m": c.graph.m(),
                    "gadgets": to_value(&GadgetMap::from(&c)),
                }),
                0,
            ))
        }
        Command::Spasm { pattern } => {
            let s = spasm(&load(&pattern)?)?;
            let mut members = Vec::new();
            for g in s.graphs() {
                members.push(json!({
                    "graph": graph_value(g, format)?,
                    "treewidth": treewidth_exact(g)?.0,
                }));
            }
            Ok((json!({ "members": members }), 0))
        }
        Command::Basis { pattern } => {
            let b = sub_basis(&load(&pattern)?)?;
            let rows: Vec<Value> = b
                .rows()?
                .into_iter()
                .map(|r| json!([r.graph6, r.coefficient]))
                .collect();
            Ok((Value::Array(rows), 0))
        }
        Command::Tw { graph_arg, g } => {
            let g = pick(graph_arg, g, "graph")?;
            let (w, td) = treewidth_exact(&g)?;
            Ok((json!({ "width": w, "decomposition": td }), 0))
        }
        Command::Oddo { f, g, map, budget } => {
            let (f, g) = (load(&f)?, load(&g)?);
            match map {
                Some(images) => {
                    let phi = VertexMap::new(images, g.n())?;
                    let p = oddness_profile(&f, &g, &phi)?;
                    Ok((
                        json!({ "profile": p, "oddomorphism": p.is_oddomorphism() }),
                        0,
                    ))
                }
                None => {
                    let r = hom_gap_report(&f, &g, budget)?;
                    let code = if r.is_violation() {
                        EXIT_FAIL
                    } else if r.biconditional.is_none() {
                        EXIT_INCONCLUSIVE
                    } else {
                        0
                    };
                    Ok((to_value(&r), code))
                }
            }
        }
        Command::Corpus { module, budget } => {
            let mut config = SuiteConfig::new(Corpus::load()?);
            config.budget = budget;
            if !module.is_empty() {
                config.modules = Some(module);
            }
            let report = corpus_run(&config);
            let code = if report.failed > 0 {
                EXIT_FAIL
            } else if report.inconclusive > 0 {
                EXIT_INCONCLUSIVE
            } else {
                0
            };
            Ok((to_value(&report), code))
        }
    }
}

fn emit(value: &Value, args: &OutputArgs) -> std::io::Result<()> {
    let mut text = if args.human {
        serde_json::to_string_pretty(value).expect("JSON values serialize")
    } else {
        value.to_string()
    };
    text.push('\n');
    match &args.out {
        Some(path) => fs::write(path, text),
        None => std::io::stdout().write_all(text.as_bytes()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = OutputArgs {
        format: cli.out.format,
        out: cli.out.out.clone(),
        human: cli.out.human,
    };
    match run(cli) {
        Ok((value, code)) => {
            if let Err(e) = emit(&value, &out) {
                eprintln!("homlab: {e}");
                return ExitCode::from(EXIT_FAIL);
            }
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("homlab: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
