//! Command-line interface for the valued-quiver mutation toolkit.
//!
//! Exit codes: 0 success, 1 negative domain result (failed certificate
//! check or reference-output mismatch), 2 usage or input error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mutalab::catalog::{self, CatalogName};
use mutalab::explore::{class_report, enumerate_class, Limits, Verdict};
use mutalab::json;
use mutalab::loops::{search_global_loops_in, verify_certificate};
use mutalab::quiver::ValuedQuiver;
use mutalab::word::MutationWord;
use mutalab::Result;

#[derive(Parser)]
#[command(name = "mutalab", version, about = "Exact mutation of valued quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Shared enumeration budget flags. `--max-nodes` falls back to the
/// `MUTALAB_MAX_NODES` environment variable, then to 100000.
#[derive(Args, Clone, Copy)]
struct LimitArgs {
    /// Maximum number of class members to enumerate
    #[arg(long)]
    max_nodes: Option<usize>,
    /// Edge-weight bound beyond which a rank >= 3 class is infinite
    #[arg(long, default_value_t = 4)]
    max_weight: i64,
}

impl LimitArgs {
    fn limits(self) -> Limits {
        let env_nodes = std::env::var("MUTALAB_MAX_NODES")
            .ok()
            .and_then(|v| v.parse().ok());
        Limits {
            max_nodes: self.max_nodes.or(env_nodes).unwrap_or(100_000),
            max_weight: self.max_weight,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate a quiver at one vertex
    Mutate {
        /// Quiver file (JSON) or catalog name
        quiver: String,
        /// Vertex to mutate at (1-based)
        #[arg(short = 'k', long)]
        vertex: usize,
    },
    /// Apply a mutation word, first letter first
    Apply {
        /// Quiver file (JSON) or catalog name
        quiver: String,
        /// Comma-separated 1-based vertices, e.g. 1,2,1
        #[arg(short = 'w', long)]
        word: String,
    },
    /// Enumerate the mutation class as an exchange graph
    Enumerate {
        /// Quiver file (JSON) or catalog name
        quiver: String,
        #[command(flatten)]
        limits: LimitArgs,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Summarize a mutation class (size, weight, shape statistics)
    Report {
        /// Quiver file (JSON) or catalog name
        quiver: String,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Global mutation loops
    #[command(subcommand)]
    Loops(LoopsCommand),
    /// Decide whether the class admits nontrivial global loops
    Decide {
        /// Quiver file (JSON) or catalog name
        quiver: String,
        #[command(flatten)]
        limits: LimitArgs,
        /// Also search for certificates and report agreement
        #[arg(long)]
        cross_validate: bool,
        /// Word-length bound for --cross-validate
        #[arg(long, default_value_t = 4)]
        max_len: usize,
    },
    /// The built-in quiver catalog
    #[command(subcommand)]
    Catalog(CatalogCommand),
    /// Regenerate reference outputs and compare against stored goldens
    Repro {
        /// One of: table-1.2, table-1.4, example-2.8, example-3.2
        table: String,
        /// Overwrite the stored golden instead of comparing
        #[arg(long)]
        bless: bool,
        /// Directory holding golden files
        #[arg(long)]
        goldens_dir: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LoopsCommand {
    /// Search all reduced words up to a length bound for global loops
    Search {
        /// Quiver file (JSON) or catalog name
        quiver: String,
        /// Longest word length to try
        #[arg(long, default_value_t = 4)]
        max_len: usize,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Verify a stored certificate against a quiver's class
    Check {
        /// Quiver file (JSON) or catalog name
        quiver: String,
        /// Certificate file (JSON)
        certificate: PathBuf,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List all catalog entries
    List,
    /// Print one catalog quiver
    Show {
        /// Catalog name, e.g. q_a_x(2)
        name: String,
        /// Output format
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Find catalog entries the given quiver is a relabeling of
    Match {
        /// Quiver file (JSON) or catalog name
        quiver: String,
    },
}

/// Loads a quiver from a JSON file path, or builds it from a catalog
/// name when no such file exists.
fn load_quiver(spec: &str) -> Result<ValuedQuiver> {
    let path = Path::new(spec);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| mutalab::Error::MalformedDocument(format!("{}: {e}", path.display())))?;
        return json::quiver_from_json(&text);
    }
    catalog::build(&CatalogName::parse(spec)?)
}

fn parse_word(text: &str, rank: usize) -> Result<MutationWord> {
    let letters: Vec<usize> = text
        .split(',')
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| mutalab::Error::MalformedDocument(format!("bad letter {part:?}")))
        })
        .collect::<Result<_>>()?;
    MutationWord::new(letters, rank)
}

fn verdict_json(v: &Verdict) -> serde_json::Value {
    match v {
        Verdict::Finite => serde_json::json!({"type": "finite"}),
        Verdict::InfiniteWeightWitness { path, weight } => {
            serde_json::json!({"type": "infinite_weight_witness", "path": path, "weight": weight})
        }
        Verdict::Inconclusive { reason } => {
            serde_json::json!({"type": "inconclusive", "reason": reason})
        }
    }
}

fn kind_str(kind: catalog::LoopKind) -> &'static str {
    match kind {
        catalog::LoopKind::HasNontrivialGlobalLoops => "has_nontrivial_global_loops",
        catalog::LoopKind::NoGlobalLoops => "no_global_loops",
        catalog::LoopKind::EveryWordIsGlobalLoop => "every_word_is_global_loop",
        catalog::LoopKind::Inconclusive => "inconclusive",
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Mutate { quiver, vertex } => {
            let q = load_quiver(&quiver)?;
            print!("{}", json::quiver_to_json(&q.mutate(vertex)?));
        }
        Command::Apply { quiver, word } => {
            let q = load_quiver(&quiver)?;
            let word = parse_word(&word, q.rank())?;
            print!("{}", json::quiver_to_json(&mutalab::loops::apply(&q, &word)?));
        }
        Command::Enumerate {
            quiver,
            limits,
            format,
        } => {
            let graph = enumerate_class(&load_quiver(&quiver)?, limits.limits())?;
            match format {
                Format::Json => print!("{}", json::graph_to_json(&graph)),
                Format::Dot => print!("{}", json::graph_to_dot(&graph)),
            }
        }
        Command::Report { quiver, limits } => {
            let graph = enumerate_class(&load_quiver(&quiver)?, limits.limits())?;
            let value = match graph.verdict() {
                Verdict::Finite => {
                    let r = class_report(&graph)?;
                    serde_json::json!({
                        "class_weight": r.class_weight,
                        "distinct_up_to_permutation": r.distinct_up_to_permutation,
                        "distinct_up_to_symmetry": r.distinct_up_to_symmetry,
                        "fully_cyclic": {
                            "leaf_free": r.fully_cyclic_class.0,
                            "on_cycle": r.fully_cyclic_class.1,
                        },
                        "size": r.size,
                        "verdict": verdict_json(graph.verdict()),
                    })
                }
                other => serde_json::json!({"verdict": verdict_json(other)}),
            };
            println!("{}", serde_json::to_string_pretty(&value).expect("built value"));
        }
        Command::Loops(LoopsCommand::Search {
            quiver,
            max_len,
            limits,
        }) => {
            let graph = enumerate_class(&load_quiver(&quiver)?, limits.limits())?;
            if !matches!(graph.verdict(), Verdict::Finite) {
                return Err(mutalab::Error::ClassNotFinite(format!(
                    "{:?}",
                    graph.verdict()
                )));
            }
            let certs = search_global_loops_in(&graph, max_len)?;
            let docs: Vec<serde_json::Value> = certs
                .iter()
                .map(|c| {
                    serde_json::from_str(&json::certificate_to_json(c)).expect("own output")
                })
                .collect();
            let value = serde_json::json!({"certificates": docs, "count": docs.len()});
            println!("{}", serde_json::to_string_pretty(&value).expect("built value"));
        }
        Command::Loops(LoopsCommand::Check {
            quiver,
            certificate,
            limits,
        }) => {
            let graph = enumerate_class(&load_quiver(&quiver)?, limits.limits())?;
            let text = std::fs::read_to_string(&certificate).map_err(|e| {
                mutalab::Error::MalformedDocument(format!("{}: {e}", certificate.display()))
            })?;
            let cert = match json::certificate_from_json(&text) {
                Ok(cert) => cert,
                Err(e) => {
                    eprintln!("invalid certificate: {e}");
                    return Ok(ExitCode::from(1));
                }
            };
            match verify_certificate(&graph, &cert) {
                Ok(()) => println!("certificate verified: word {} on {} nodes", cert.word, cert.witnesses.len()),
                Err(e) => {
                    eprintln!("invalid certificate: {e}");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Decide {
            quiver,
            limits,
            cross_validate,
            max_len,
        } => {
            let q = load_quiver(&quiver)?;
            if cross_validate {
                let report = catalog::cross_validate(&q, max_len, limits.limits())?;
                let value = serde_json::json!({
                    "agree": report.agree,
                    "certificates_found": report.certificates.len(),
                    "kind": kind_str(report.verdict.kind),
                    "note": report.note,
                    "rule": report.verdict.rule,
                });
                println!("{}", serde_json::to_string_pretty(&value).expect("built value"));
            } else {
                let v = catalog::decide_global_loops(&q, limits.limits())?;
                let value = serde_json::json!({
                    "kind": kind_str(v.kind),
                    "rule": v.rule,
                });
                println!("{}", serde_json::to_string_pretty(&value).expect("built value"));
            }
        }
        Command::Catalog(CatalogCommand::List) => {
            for (name, summary) in catalog::entries() {
                let q = catalog::build(&name)?;
                println!("{name:<14} rank {:>2}  {summary}", q.rank());
            }
        }
        Command::Catalog(CatalogCommand::Show { name, format }) => {
            let q = catalog::build(&CatalogName::parse(&name)?)?;
            match format {
                Format::Json => print!("{}", json::quiver_to_json(&q)),
                Format::Dot => print!("{}", json::quiver_to_dot(&q)),
            }
        }
        Command::Catalog(CatalogCommand::Match { quiver }) => {
            let q = load_quiver(&quiver)?;
            let hits = catalog::match_catalog(&q)?;
            if hits.is_empty() {
                println!("no catalog entry matches");
            }
            for (name, w) in hits {
                println!("{name}  sigma={:?}", w.sigma.images());
            }
        }
        Command::Repro {
            table,
            bless,
            goldens_dir,
        } => {
            let produced = repro(&table)?;
            let dir = goldens_dir
                .unwrap_or_else(|| Path::new(env!("CARGO_MANIFEST_DIR")).join("goldens"));
            let path = dir.join(format!("{table}.txt"));
            if bless {
                std::fs::create_dir_all(&dir).map_err(|e| {
                    mutalab::Error::MalformedDocument(format!("{}: {e}", dir.display()))
                })?;
                std::fs::write(&path, &produced).map_err(|e| {
                    mutalab::Error::MalformedDocument(format!("{}: {e}", path.display()))
                })?;
                println!("blessed {}", path.display());
            } else {
                let stored = std::fs::read_to_string(&path).map_err(|e| {
                    mutalab::Error::MalformedDocument(format!("{}: {e}", path.display()))
                })?;
                if stored == produced {
                    println!("{table}: output matches {}", path.display());
                } else {
                    eprintln!("{table}: output differs from {}", path.display());
                    for diff in diff_lines(&stored, &produced) {
                        eprintln!("{diff}");
                    }
                    return Ok(ExitCode::from(1));
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn diff_lines(stored: &str, produced: &str) -> Vec<String> {
    let a: Vec<&str> = stored.lines().collect();
    let b: Vec<&str> = produced.lines().collect();
    let mut out = Vec::new();
    for i in 0..a.len().max(b.len()) {
        let x = a.get(i).copied().unwrap_or("<missing>");
        let y = b.get(i).copied().unwrap_or("<missing>");
        if x != y {
            out.push(format!("line {}: stored   {x}", i + 1));
            out.push(format!("line {}: produced {y}", i + 1));
        }
    }
    out
}

/// One deterministic text block per class: name, symmetrizer, class
/// statistics, the shape-based verdict, and all certificates up to a
/// fixed word length.
fn class_block(name: &CatalogName, max_len: usize) -> Result<String> {
    let q = catalog::build(name)?;
    let limits = Limits::default();
    let graph = enumerate_class(&q, limits)?;
    let report = class_report(&graph)?;
    let verdict = catalog::decide_global_loops(&q, limits)?;
    let certs = search_global_loops_in(&graph, max_len)?;
    let words: Vec<String> = certs.iter().map(|c| c.word.to_string()).collect();
    Ok(format!(
        "{name}: d={:?} class_size={} up_to_permutation={} weight={} verdict={} loops<={}: {}\n",
        q.symmetrizer(),
        report.size,
        report.distinct_up_to_permutation,
        report.class_weight,
        kind_str(verdict.kind),
        max_len,
        if words.is_empty() {
            "none".to_string()
        } else {
            words.join(" ")
        },
    ))
}

fn repro(table: &str) -> Result<String> {
    let mut out = String::new();
    match table {
        "table-1.2" => {
            out.push_str("# the four rank-3 mutation classes of weight 4\n");
            for r in 1..=4 {
                out.push_str(&class_block(&CatalogName::W4Rank3(r), 5)?);
            }
        }
        "table-1.4" => {
            out.push_str("# fully cyclic classes at rank >= 4 and their shortest loops\n");
            for name in [
                CatalogName::Bowtie5,
                CatalogName::Kite4A,
                CatalogName::Kite4B,
            ] {
                out.push_str(&class_block(&name, 4)?);
            }
        }
        "example-2.8" => {
            out.push_str("# the 7-vertex quiver, its restriction, and one mutation\n");
            let q = catalog::build(&CatalogName::Sample7)?;
            out.push_str(&json::quiver_to_json(&q));
            let sub = q.subquiver(&[1, 2, 3])?;
            out.push_str("# full subquiver on {1,2,3}\n");
            out.push_str(&json::quiver_to_json(&sub));
            out.push_str("# its mutation at 2\n");
            out.push_str(&json::quiver_to_json(&sub.mutate(2)?));
            out.push_str("# mutation at 2 with {4..7} frozen\n");
            let restricted = q.restrict(&[1, 2, 3])?;
            out.push_str(&json::quiver_to_json(&restricted.mutate(2)?));
        }
        "example-3.2" => {
            out.push_str("# worked loop examples\n");
            out.push_str(&class_block(&CatalogName::AN(2), 4)?);
            out.push_str(&class_block(&CatalogName::Markov4, 2)?);
            out.push_str(&class_block(&CatalogName::Kite4A, 2)?);
            out.push_str(&class_block(&CatalogName::Bowtie5, 2)?);
        }
        other => {
            return Err(mutalab::Error::MalformedDocument(format!(
                "unknown reference output {other:?} (expected table-1.2, table-1.4, example-2.8, or example-3.2)"
            )));
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
