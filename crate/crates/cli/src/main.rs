//! `tightham` command-line front end.
//!
//! Exit codes: 0 success or verdict produced, 1 verified failure (no cycle,
//! failed check), 2 usage or input error, 3 budget exhausted.

mod sweep;

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Context;
use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::json;
use tightham::constructions::{generate, min_deg_ratio, threshold_witness_search, Family};
use tightham::counting::Search;
use tightham::cover::{cover_klll, CoverMode, CoverParams};
use tightham::hypergraph::Hypergraph3;
use tightham::io::{load, write_binary, write_text};
use tightham::pipeline::{run, PipelineConfig, Preset};
use tightham::rational::{parse_fraction, to_f64, Rational};
use tightham::solver::{find_tight_ham_cycle, find_tight_path, max_matching, Budget, OrderBounds};
use tightham::verify::{invariant_suite, verify_cycle, verify_hamiltonian};
use tightham::vertex_set::VertexSet;

const OK: u8 = 0;
const FAILED: u8 = 1;
const USAGE: u8 = 2;
const BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "tightham", version, about = "Tight Hamiltonian cycles in 3-uniform hypergraphs")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write a hypergraph from one of the families.
    Gen {
        #[arg(long)]
        family: Family,
        #[arg(long)]
        n: usize,
        /// Edge probability for `random`.
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Binary `H3G1` output instead of text.
        #[arg(long)]
        binary: bool,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Exact search for a tight Hamiltonian cycle, path or matching.
    Solve {
        file: PathBuf,
        /// Endpairs `a,b` and `c,d`: find a path a b .. d c.
        #[arg(long, num_args = 2, value_names = ["E", "F"])]
        path: Option<Vec<String>>,
        #[arg(long)]
        max_order: Option<usize>,
        #[arg(long)]
        matching: bool,
        /// Node budget for the search.
        #[arg(long, default_value_t = 50_000_000)]
        budget: u64,
        /// Pretty-print the JSON.
        #[arg(long)]
        json: bool,
    },
    /// Cover most vertices with disjoint copies of K_{L,L,L}.
    Cover {
        file: PathBuf,
        #[arg(long, default_value = "greedy")]
        mode: CoverMode,
        #[arg(long = "L", default_value_t = 2)]
        l: usize,
        #[arg(long, default_value = ".1", value_parser = fraction)]
        rho: Rational,
        #[arg(long, default_value = "1/9", value_parser = fraction)]
        lambda: Rational,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run the absorbing-path construction end to end.
    Pipeline {
        file: PathBuf,
        #[arg(long, default_value = "desk")]
        preset: Preset,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
        /// Keep the absorber records in the report.
        #[arg(long)]
        trace: bool,
    },
    /// Run the invariant checks on a file, and optionally check a cycle.
    Verify {
        file: PathBuf,
        /// Comma-separated vertex sequence to check as a tight cycle.
        #[arg(long)]
        cycle: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Search for non-Hamiltonian hypergraphs of large minimum degree.
    Threshold {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 20_000)]
        budget: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Time the desk pipeline on seeded random instances.
    Bench {
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long, default_value_t = 0.95)]
        p: f64,
        #[arg(long, default_value_t = 5)]
        runs: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Run a TOML experiment grid and write CSV.
    Sweep {
        spec: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

fn fraction(s: &str) -> Result<Rational, String> {
    parse_fraction(s).map_err(|e| e.to_string())
}

fn parse_pair(s: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = s.split_once(',').with_context(|| format!("expected `a,b`, got {s:?}"))?;
    Ok((a.trim().parse()?, b.trim().parse()?))
}

fn emit<T: Serialize>(v: &T, pretty: bool) -> anyhow::Result<()> {
    let out = if pretty {
        serde_json::to_string_pretty(v)?
    } else {
        serde_json::to_string(v)?
    };
    let mut stdout = std::io::stdout().lock();
    match writeln!(stdout, "{out}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        r => Ok(r?),
    }
}

fn open(path: &Path) -> anyhow::Result<Hypergraph3> {
    load(path).with_context(|| format!("reading {}", path.display()))
}

fn search_json<T>(key: &str, s: &Search<T>, body: impl Fn(&T) -> serde_json::Value) -> (serde_json::Value, u8) {
    match s {
        Search::Found(t) => {
            let mut v = body(t);
            v[key] = json!("found");
            (v, OK)
        }
        Search::Absent => (json!({ key: "absent" }), FAILED),
        Search::Unknown => (json!({ key: "unknown" }), BUDGET),
    }
}

fn solve(file: &Path, path: Option<Vec<String>>, max_order: Option<usize>, matching: bool, budget: u64, pretty: bool) -> anyhow::Result<u8> {
    let h = open(file)?;
    let budget = Budget::nodes(budget);
    if matching {
        let m = max_matching(&h, budget);
        let code = if m.certified { OK } else { BUDGET };
        emit(&json!({ "matching": m.len(), "edges": m.edges, "certified": m.certified }), pretty)?;
        return Ok(code);
    }
    if let Some(p) = path {
        let (e, f) = (parse_pair(&p[0])?, parse_pair(&p[1])?);
        let bounds = OrderBounds::at_most(max_order.unwrap_or(h.n()));
        let s = find_tight_path(&h, e, f, bounds, &VertexSet::full(h.n()), budget)?;
        let (v, code) = search_json("path", &s, |p| json!({ "vertices": p.vertices() }));
        emit(&v, pretty)?;
        return Ok(code);
    }
    let s = find_tight_ham_cycle(&h, budget)?;
    let (v, code) = search_json("ham", &s, |c| json!({ "cycle": c.vertices() }));
    emit(&v, pretty)?;
    Ok(code)
}

fn verify(file: &Path, cycle: Option<String>, pretty: bool) -> anyhow::Result<u8> {
    let h = open(file)?;
    let checks = invariant_suite(&h);
    let mut ok = checks.iter().all(|c| c.passed);
    let mut out = json!({ "n": h.n(), "edges": h.edge_count(), "checks": checks });
    if h.n() >= 3 {
        out["min_degree_ratio"] = json!(to_f64(&min_deg_ratio(&h)?));
    }
    if let Some(c) = cycle {
        let seq = c.split(',').map(|t| t.trim().parse::<usize>()).collect::<Result<Vec<_>, _>>()?;
        let cyc = verify_cycle(&h, &seq);
        let ham = verify_hamiltonian(&h, &seq).is_ok();
        ok &= cyc.is_ok();
        out["cycle"] = json!({
            "tight": cyc.is_ok(),
            "hamiltonian": ham,
            "violation": cyc.err().map(|v| v.to_string()),
        });
    }
    emit(&out, pretty)?;
    Ok(if ok { OK } else { FAILED })
}

fn bench(n: usize, p: f64, runs: u64, seed: u64) -> anyhow::Result<u8> {
    let mut rows = Vec::new();
    for r in 0..runs {
        let h = generate(Family::Random, n, p, seed + r)?;
        let t = Instant::now();
        let rep = run(&h, &PipelineConfig::desk(seed + r))?;
        let total = t.elapsed().as_secs_f64() * 1e3;
        let last = rep.attempts.last();
        rows.push(json!({
            "seed": seed + r,
            "success": rep.success,
            "attempts": rep.attempts.len(),
            "total_ms": total,
            "stages_ms": last.map(|a| a.timings_ms.clone()),
        }));
    }
    emit(&json!({ "n": n, "p": p, "runs": rows }), true)?;
    Ok(OK)
}

fn dispatch(cli: Cli) -> anyhow::Result<u8> {
    match cli.cmd {
        Cmd::Gen {
            family,
            n,
            p,
            seed,
            binary,
            output,
        } => {
            let h = generate(family, n, p, seed)?;
            let mut w = BufWriter::new(File::create(&output).with_context(|| format!("creating {}", output.display()))?);
            if binary {
                write_binary(&h, &mut w)?;
            } else {
                write_text(&h, &mut w)?;
            }
            w.flush()?;
            Ok(OK)
        }
        Cmd::Solve {
            file,
            path,
            max_order,
            matching,
            budget,
            json,
        } => solve(&file, path, max_order, matching, budget, json),
        Cmd::Cover {
            file,
            mode,
            l,
            rho,
            lambda,
            seed,
            json,
        } => {
            let h = open(&file)?;
            let params = CoverParams {
                mode,
                lambda,
                ..CoverParams::greedy(l, rho)
            };
            let res = cover_klll(&h, &params, seed)?;
            emit(&res, json)?;
            Ok(if res.target_met { OK } else { FAILED })
        }
        Cmd::Pipeline {
            file,
            preset,
            seed,
            json,
            trace,
        } => {
            let h = open(&file)?;
            let cfg = match preset {
                Preset::Desk => PipelineConfig::desk(seed),
                Preset::Paper => PipelineConfig::paper(seed),
            };
            let mut rep = run(&h, &cfg)?;
            if !trace {
                for a in rep.attempts.iter_mut() {
                    a.absorbers.clear();
                }
            }
            emit(&rep, json)?;
            Ok(if rep.success { OK } else { FAILED })
        }
        Cmd::Verify { file, cycle, json } => verify(&file, cycle, json),
        Cmd::Threshold { n, budget, seed, json } => {
            let w = threshold_witness_search(n, budget, seed)?;
            emit(
                &json!({
                    "n": w.n,
                    "best_delta1": w.best_delta1,
                    "threshold": w.threshold(),
                    "certified": w.certified,
                    "moves": w.moves,
                    "witness": w.witness,
                }),
                json,
            )?;
            Ok(OK)
        }
        Cmd::Bench { n, p, runs, seed } => bench(n, p, runs, seed),
        Cmd::Sweep { spec, output } => {
            let text = std::fs::read_to_string(&spec).with_context(|| format!("reading {}", spec.display()))?;
            let spec = sweep::SweepSpec::parse(&text)?;
            match output {
                Some(path) => sweep::run(&spec, File::create(&path)?)?,
                None => sweep::run(&spec, std::io::stdout().lock())?,
            }
            Ok(OK)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { USAGE } else { OK });
        }
    };
    match dispatch(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(USAGE)
        }
    }
}

