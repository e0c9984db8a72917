//! Command-line front end. Every subcommand writes one JSON report.
//!
//! Exit codes: 0 success, 2 usage or I/O error, 3 unparsable input,
//! 4 resource exhaustion. A verdict is never an error.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::constructions::{
    builtin, gen_complete_multipartite, gen_gcp, identify, kpartite_meta, reduce_lemma21,
};
use crate::cp::{gcp_case_table, solve_cp, validate_case_table, CpOptions};
use crate::format::{load_hypergraph, save_hypergraph};
use crate::hypergraph::Hypergraph;
use crate::mb::{solve_mb, MbOptions};
use crate::pairing::find_pairing;
use crate::position::{GameKind, Side};
use crate::solve::{Certificate, SolveError, SolveReport};
use crate::strategy::{mutants, verify_maker_strategy, verify_target, VerifyOptions};
use crate::suite::random_board;

pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;

#[derive(Parser, Debug)]
#[command(
    name = "hypergame",
    version,
    about = "Maker-Breaker and Chooser-Picker games on hypergraphs"
)]
struct Cli {
    /// Worker threads for search and verification.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Give up after this many search nodes (exit code 4).
    #[arg(long, global = true)]
    node_limit: Option<u64>,
    /// Seed for random generators.
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Write a built-in construction in .hg format.
    Gen {
        /// g3, gcp, gamma, gamma-prime, g4, kpartite or random.
        name: String,
        /// Number of parts (kpartite).
        #[arg(long)]
        k: Option<usize>,
        /// Part size (kpartite).
        #[arg(long)]
        n: Option<usize>,
        /// Output file; the board goes to stdout when absent.
        #[arg(short = 'o', long = "out")]
        out: Option<PathBuf>,
    },
    /// Shape summary of a .hg file.
    Info { file: PathBuf },
    /// Decide the winner under perfect play.
    Solve {
        #[command(subcommand)]
        game: SolveCmd,
    },
    /// Exhaustively check a built-in Maker strategy.
    Verify {
        /// gamma, gamma-prime, g4, g3-split or mutants.
        name: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check Chooser's case table against every first offer.
    ValidateCases {
        #[arg(value_enum)]
        board: CaseBoard,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a Breaker pairing strategy.
    Pairing {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Apply a board reduction and write the result.
    Reduce {
        file: PathBuf,
        #[arg(long, value_enum)]
        rule: Rule,
        #[arg(short = 'o', long = "out")]
        out: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum SolveCmd {
    /// Maker-Breaker.
    Mb {
        file: PathBuf,
        #[arg(long, value_enum)]
        first: First,
        /// Disable certificates and reductions; plain search.
        #[arg(long)]
        no_prune: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Chooser-Picker.
    Cp {
        file: PathBuf,
        /// Do not use the forced offer rule.
        #[arg(long)]
        no_lemma23: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum First {
    Maker,
    Breaker,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum CaseBoard {
    Gcp,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Rule {
    Lemma21,
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Parse(String),
    Resource(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Parse(_) => EXIT_PARSE,
            CliError::Resource(_) => EXIT_RESOURCE,
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Parse(m) | CliError::Resource(m) => m,
        }
    }
}

impl From<SolveError> for CliError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::ResourceExhausted { .. } | SolveError::BoardTooLarge(_) => {
                CliError::Resource(e.to_string())
            }
            SolveError::InvalidPosition(_) => CliError::Usage(e.to_string()),
        }
    }
}

/// What a subcommand produced: a result body, where it goes, and the exit
/// code to use after writing it.
struct Outcome {
    command: &'static str,
    result: Value,
    out: Option<PathBuf>,
    code: i32,
}

impl Outcome {
    fn ok(command: &'static str, result: Value, out: Option<PathBuf>) -> Self {
        Outcome {
            command,
            result,
            out,
            code: EXIT_OK,
        }
    }
}

/// Runs the tool on `args` (including the program name).
pub fn run<O: Write, E: Write>(args: &[String], stdout: &mut O, stderr: &mut E) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(stdout, "{text}");
                    EXIT_OK
                }
                _ => {
                    let _ = write!(stderr, "{text}");
                    EXIT_USAGE
                }
            };
        }
    };
    let start = Instant::now();
    match dispatch(&cli, stdout) {
        Ok(None) => EXIT_OK,
        Ok(Some(o)) => {
            let report = json!({
                "schema_version": SCHEMA_VERSION,
                "command": o.command,
                "result": o.result,
                "elapsed_ms": start.elapsed().as_millis() as u64,
            });
            let text = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
            let written = match &o.out {
                Some(p) => std::fs::write(p, text).map_err(|e| io_error(p, e)),
                None => stdout
                    .write_all(text.as_bytes())
                    .map_err(|e| CliError::Usage(e.to_string())),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "error: {}", e.message());
                return e.code();
            }
            if o.code == EXIT_RESOURCE {
                let _ = writeln!(stderr, "error: node limit reached");
            }
            o.code
        }
        Err(e) => {
            let _ = writeln!(stderr, "error: {}", e.message());
            e.code()
        }
    }
}

fn io_error(p: &Path, e: std::io::Error) -> CliError {
    CliError::Usage(format!("{}: {e}", p.display()))
}

fn read_board(p: &Path) -> Result<Hypergraph, CliError> {
    let bytes = std::fs::read(p).map_err(|e| io_error(p, e))?;
    load_hypergraph(&bytes).map_err(|e| CliError::Parse(format!("{}: {e}", p.display())))
}

fn dispatch<O: Write>(cli: &Cli, stdout: &mut O) -> Result<Option<Outcome>, CliError> {
    if cli.threads == 0 {
        return Err(CliError::Usage("--threads must be at least 1".into()));
    }
    match &cli.cmd {
        Cmd::Gen { name, k, n, out } => {
            let (h, meta) = match name.as_str() {
                "kpartite" => {
                    let (Some(k), Some(n)) = (k, n) else {
                        return Err(CliError::Usage("kpartite needs --k and --n".into()));
                    };
                    let h = gen_complete_multipartite(*k, *n)
                        .map_err(|e| CliError::Usage(e.to_string()))?;
                    (h, Some(kpartite_meta(*k, *n)))
                }
                "random" => {
                    let seed = cli.seed.ok_or_else(|| {
                        CliError::Usage("random boards need an explicit --seed".into())
                    })?;
                    (random_board(&mut ChaCha8Rng::seed_from_u64(seed)), None)
                }
                other => {
                    let (h, meta) = builtin(other).map_err(|e| CliError::Usage(e.to_string()))?;
                    (h, Some(meta))
                }
            };
            let bytes = save_hypergraph(&h);
            let Some(path) = out else {
                stdout
                    .write_all(&bytes)
                    .map_err(|e| CliError::Usage(e.to_string()))?;
                return Ok(None);
            };
            std::fs::write(path, &bytes).map_err(|e| io_error(path, e))?;
            let mut result = shape(&h);
            result["name"] = json!(name);
            result["path"] = json!(path.display().to_string());
            result["erratum_note"] = json!(meta.and_then(|m| m.erratum_note));
            Ok(Some(Outcome::ok("gen", result, None)))
        }
        Cmd::Info { file } => {
            let h = read_board(file)?;
            let meta = identify(&h);
            let mut result = shape(&h);
            result["file"] = json!(file.display().to_string());
            result["construction"] = json!(meta.as_ref().map(|m| m.name.clone()));
            result["erratum_note"] = json!(meta.and_then(|m| m.erratum_note));
            Ok(Some(Outcome::ok("info", result, None)))
        }
        Cmd::Solve {
            game:
                SolveCmd::Mb {
                    file,
                    first,
                    no_prune,
                    out,
                },
        } => {
            let h = read_board(file)?;
            let mut opts = if *no_prune {
                MbOptions::unpruned()
            } else {
                MbOptions::default()
            };
            opts.node_limit = cli.node_limit;
            opts.worker_count = cli.threads;
            let side = match first {
                First::Maker => Side::A,
                First::Breaker => Side::B,
            };
            let r = solve_mb(&h, side, &opts)?;
            Ok(Some(Outcome::ok(
                "solve mb",
                report_json(&r, &h),
                out.clone(),
            )))
        }
        Cmd::Solve {
            game:
                SolveCmd::Cp {
                    file,
                    no_lemma23,
                    out,
                },
        } => {
            let h = read_board(file)?;
            let opts = CpOptions {
                use_lemma23: !no_lemma23,
                node_limit: cli.node_limit,
                worker_count: cli.threads,
            };
            let r = solve_cp(&h, &opts)?;
            Ok(Some(Outcome::ok(
                "solve cp",
                report_json(&r, &h),
                out.clone(),
            )))
        }
        Cmd::Verify { name, out } => {
            let opts = VerifyOptions {
                worker_count: cli.threads,
                node_limit: cli.node_limit,
            };
            if name == "mutants" {
                let list: Vec<Value> = mutants()
                    .iter()
                    .map(|m| {
                        let r = verify_maker_strategy(&m.board, &m.strategy, m.first_mover, &opts);
                        json!({
                            "name": m.name,
                            "rejected": !r.verified && !r.node_limit_hit,
                            "counterexample": r.counterexample.map(|c| c.render()),
                        })
                    })
                    .collect();
                let all = list.iter().all(|m| m["rejected"] == json!(true));
                let result = json!({ "target": "mutants", "all_rejected": all, "mutants": list });
                return Ok(Some(Outcome::ok("verify", result, out.clone())));
            }
            let (h, s, first) = verify_target(name).map_err(|e| CliError::Usage(e.to_string()))?;
            let r = verify_maker_strategy(&h, &s, first, &opts);
            let code = if r.node_limit_hit {
                EXIT_RESOURCE
            } else {
                EXIT_OK
            };
            let result = json!({
                "target": name,
                "first": GameKind::MakerBreaker.role(first),
                "vertices": h.vertex_count(),
                "edges": h.edge_count(),
                "verified": r.verified,
                "lines_checked": r.lines_checked,
                "nodes": r.nodes,
                "max_depth": r.max_depth,
                "node_limit_hit": r.node_limit_hit,
                "elapsed_ms": r.elapsed_ms,
                "counterexample": r.counterexample.as_ref().map(|c| c.render()),
            });
            Ok(Some(Outcome {
                command: "verify",
                result,
                out: out.clone(),
                code,
            }))
        }
        Cmd::ValidateCases {
            board: CaseBoard::Gcp,
            out,
        } => {
            let h = gen_gcp();
            let opts = CpOptions {
                use_lemma23: true,
                node_limit: cli.node_limit,
                worker_count: cli.threads,
            };
            let r = validate_case_table(&h, &gcp_case_table(true), &opts)?;
            let offer = |o: (usize, usize)| json!([h.label(o.0), h.label(o.1)]);
            let checks: Vec<Value> = r
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "offer": offer(c.offer),
                        "class": c.class,
                        "chosen": c.chosen.map(|v| h.label(v)),
                        "winner": c.winner,
                    })
                })
                .collect();
            let result = json!({
                "board": "gcp",
                "offers": r.offers,
                "covered": r.covered,
                "all_winning": r.all_winning,
                "passed": r.passed(),
                "class_names": r.class_names,
                "class_counts": r.class_counts,
                "first_failure": r.first_failure.as_ref().map(|c| offer(c.offer)),
                "checks": checks,
            });
            Ok(Some(Outcome::ok("validate-cases", result, out.clone())))
        }
        Cmd::Pairing { file, out } => {
            let h = read_board(file)?;
            let result = match find_pairing(&h) {
                Some(p) => json!({
                    "found": true,
                    "pairs": p.pairs.iter().map(|&(a, b)| json!([h.label(a), h.label(b)])).collect::<Vec<_>>(),
                    "edge_cover": p.edge_cover.iter().map(|(&e, &i)| json!({ "edge": e + 1, "pair": i })).collect::<Vec<_>>(),
                }),
                None => json!({ "found": false, "pairs": [], "edge_cover": [] }),
            };
            Ok(Some(Outcome::ok("pairing", result, out.clone())))
        }
        Cmd::Reduce {
            file,
            rule: Rule::Lemma21,
            out,
        } => {
            let h = read_board(file)?;
            let red = reduce_lemma21(&h);
            let mut g = red.hypergraph.clone();
            for (new, &old) in red.kept.iter().enumerate() {
                g.set_name(new, h.label(old));
            }
            std::fs::write(out, save_hypergraph(&g)).map_err(|e| io_error(out, e))?;
            let result = json!({
                "rule": "lemma21",
                "path": out.display().to_string(),
                "removed_pairs": red.removed_pairs.iter().map(|&(a, b)| json!([h.label(a), h.label(b)])).collect::<Vec<_>>(),
                "vertices": g.vertex_count(),
                "edges": g.edge_count(),
            });
            Ok(Some(Outcome::ok("reduce", result, None)))
        }
    }
}

fn shape(h: &Hypergraph) -> Value {
    let mut sizes: Vec<usize> = h.edges().iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes.dedup();
    json!({
        "vertices": h.vertex_count(),
        "edges": h.edge_count(),
        "uniformity": h.uniformity(),
        "edge_sizes": sizes,
        "max_degree": h.max_degree(),
    })
}

fn report_json(r: &SolveReport, h: &Hypergraph) -> Value {
    let role = |s: Side| r.game.role(s);
    json!({
        "game": r.game,
        "first": r.first_mover.map(role),
        "winner": r.winner_role(),
        "nodes": r.nodes_expanded,
        "elapsed_ms": r.elapsed_ms,
        "certificate": r.certificate.as_ref().map(|c| certificate_json(c, h)),
    })
}

fn certificate_json(c: &Certificate, h: &Hypergraph) -> Value {
    let pair = |&(a, b): &(usize, usize)| json!([h.label(a), h.label(b)]);
    match c {
        Certificate::ErdosSelfridge { potential } => {
            json!({ "kind": "erdos_selfridge", "potential": potential })
        }
        Certificate::Pairing { pairing } => json!({
            "kind": "pairing",
            "pairs": pairing.pairs.iter().map(pair).collect::<Vec<_>>(),
        }),
        Certificate::CompletedEdge { edge } => {
            json!({ "kind": "completed_edge", "edge": edge + 1 })
        }
        Certificate::AllBlocked => json!({ "kind": "all_blocked" }),
        Certificate::Reduction {
            removed_pairs,
            sub_report,
        } => json!({
            "kind": "reduction",
            "removed_pairs": removed_pairs.iter().map(pair).collect::<Vec<_>>(),
            // The reduced board is renumbered; its report uses plain indices.
            "sub_report": report_json(sub_report, &Hypergraph::empty(0)),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut argv = vec!["hypergame".to_string()];
        argv.extend(args.iter().map(|s| s.to_string()));
        let (mut out, mut err) = (Vec::new(), Vec::new());
        let code = run(&argv, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn bad_usage_exits_2() {
        assert_eq!(call(&["frobnicate"]).0, EXIT_USAGE);
        assert_eq!(call(&["solve", "mb", "x.hg"]).0, EXIT_USAGE);
        assert_eq!(call(&["gen", "random"]).0, EXIT_USAGE);
        assert_eq!(call(&["verify", "nothing"]).0, EXIT_USAGE);
    }

    #[test]
    fn parse_error_exits_3() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("bad.hg");
        std::fs::write(&p, "p hg 2 1\ne 1 7\n").unwrap();
        let (code, _, err) = call(&["info", p.to_str().unwrap()]);
        assert_eq!(code, EXIT_PARSE);
        assert!(err.contains("out of range"));
    }

    #[test]
    fn node_limit_exits_4() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("g.hg");
        let p = p.to_str().unwrap();
        assert_eq!(call(&["gen", "gamma", "-o", p]).0, 0);
        let (code, out, _) = call(&[
            "solve",
            "mb",
            p,
            "--first",
            "breaker",
            "--no-prune",
            "--node-limit",
            "10",
        ]);
        assert_eq!(code, EXIT_RESOURCE);
        assert!(out.is_empty());
    }

    #[test]
    fn mb_report_fields() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("g3.hg");
        let p = p.to_str().unwrap();
        call(&["gen", "g3", "-o", p]);
        let (code, out, _) = call(&["solve", "mb", p, "--first", "maker"]);
        assert_eq!(code, 0);
        let v: Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["command"], "solve mb");
        assert_eq!(v["result"]["winner"], "maker");
        assert_eq!(v["result"]["first"], "maker");
        assert_eq!(v["result"]["game"], "maker_breaker");
    }

    #[test]
    fn help_is_not_an_error() {
        let (code, out, _) = call(&["--help"]);
        assert_eq!(code, 0);
        assert!(out.contains("solve"));
    }
}
