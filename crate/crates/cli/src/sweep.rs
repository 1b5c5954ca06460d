//! Experiment grids.
//!
//! A spec is TOML:
//!
//! ```toml
//! families = ["i", "random"]
//! n = [80]                  # or n_range = [9, 30], inclusive
//! p = [0.8, 0.9, 0.95]      # random family only
//! seeds = [1, 2, 3]         # random family only
//! measure = ["ratio", "solver", "pipeline", "connect"]
//! connect_trials = 100
//! solver_budget = 5000000
//! ```
//!
//! Cells are the product family x n x p x seed in that nesting order;
//! deterministic families ignore `p` and `seeds` and give one cell per `n`.
//! The CSV columns are [`HEADER`]; unmeasured fields are left empty.

use std::io::Write;

use anyhow::{bail, Context};
use rayon::prelude::*;
use serde::Deserialize;
use tightham::connector::connect_trials;
use tightham::constructions::{generate, min_deg_ratio, Family};
use tightham::counting::Search;
use tightham::pipeline::{run as run_pipeline, PipelineConfig};
use tightham::rational::to_f64;
use tightham::rng::{split_seed, streams};
use tightham::solver::{find_tight_ham_cycle, Budget, HAM_MAX_N};

pub const SCHEMA_VERSION: u32 = 1;

pub const HEADER: [&str; 12] = [
    "schema", "family", "n", "p", "seed", "edges", "min_deg_ratio", "solver", "pipeline", "connect_trials", "connect_successes", "connect_rate",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Ratio,
    Solver,
    Pipeline,
    Connect,
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepSpec {
    #[serde(default)]
    pub families: Vec<String>,
    #[serde(default)]
    pub n: Vec<usize>,
    pub n_range: Option<[usize; 2]>,
    #[serde(default)]
    pub p: Vec<f64>,
    #[serde(default)]
    pub seeds: Vec<u64>,
    #[serde(default)]
    pub measure: Vec<Measure>,
    pub connect_trials: Option<usize>,
    pub solver_budget: Option<u64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Cell {
    pub family: Family,
    pub n: usize,
    pub p: Option<f64>,
    pub seed: Option<u64>,
}

impl SweepSpec {
    pub fn parse(text: &str) -> anyhow::Result<Self> {
        let spec: SweepSpec = toml::from_str(text).context("parsing sweep spec")?;
        for f in &spec.families {
            f.parse::<Family>()?;
        }
        if let Some([a, b]) = spec.n_range {
            if a > b {
                bail!("n_range [{a}, {b}] is empty");
            }
        }
        Ok(spec)
    }

    pub fn cells(&self) -> Vec<Cell> {
        let mut ns = self.n.clone();
        if let Some([a, b]) = self.n_range {
            ns.extend(a..=b);
        }
        let ps = if self.p.is_empty() { vec![0.5] } else { self.p.clone() };
        let seeds = if self.seeds.is_empty() { vec![0] } else { self.seeds.clone() };
        let mut out = Vec::new();
        for f in &self.families {
            let family: Family = f.parse().expect("checked in parse");
            for &n in &ns {
                if family == Family::Random {
                    for &p in &ps {
                        for &seed in &seeds {
                            out.push(Cell {
                                family,
                                n,
                                p: Some(p),
                                seed: Some(seed),
                            });
                        }
                    }
                } else {
                    out.push(Cell {
                        family,
                        n,
                        p: None,
                        seed: None,
                    });
                }
            }
        }
        out
    }
}

fn opt<T: ToString>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

/// One CSV row. Errors on a cell (say `n` too small for a family) are
/// reported in the `solver` column as `error`, so one bad cell does not
/// sink the grid.
pub fn measure(spec: &SweepSpec, cell: &Cell) -> Vec<String> {
    let seed = cell.seed.unwrap_or(0);
    let mut row = vec![
        SCHEMA_VERSION.to_string(),
        cell.family.to_string(),
        cell.n.to_string(),
        opt(cell.p),
        opt(cell.seed),
    ];
    let h = match generate(cell.family, cell.n, cell.p.unwrap_or(0.5), seed) {
        Ok(h) => h,
        Err(_) => {
            row.extend(["".into(), "".into(), "error".into()]);
            row.resize(HEADER.len(), String::new());
            return row;
        }
    };
    let has = |m| spec.measure.contains(&m);
    row.push(h.edge_count().to_string());
    row.push(if has(Measure::Ratio) && h.n() >= 3 {
        min_deg_ratio(&h).map(|r| format!("{:.6}", to_f64(&r))).unwrap_or_default()
    } else {
        String::new()
    });
    row.push(if has(Measure::Solver) {
        if h.n() > HAM_MAX_N || h.n() < 3 {
            "skipped".into()
        } else {
            match find_tight_ham_cycle(&h, Budget::nodes(spec.solver_budget.unwrap_or(5_000_000))) {
                Ok(Search::Found(_)) => "found".into(),
                Ok(Search::Absent) => "absent".into(),
                Ok(Search::Unknown) => "unknown".into(),
                Err(_) => "error".into(),
            }
        }
    } else {
        String::new()
    });
    row.push(if has(Measure::Pipeline) {
        match run_pipeline(&h, &PipelineConfig::desk(seed)) {
            Ok(r) if r.success => "success".into(),
            Ok(_) => "failure".into(),
            Err(_) => "error".into(),
        }
    } else {
        String::new()
    });
    if has(Measure::Connect) {
        match connect_trials(&h, spec.connect_trials.unwrap_or(100), split_seed(seed, streams::CONNECT)) {
            Ok(t) => {
                row.push(t.trials.to_string());
                row.push(t.verified.to_string());
                row.push(if t.trials == 0 {
                    String::new()
                } else {
                    format!("{:.4}", t.verified as f64 / t.trials as f64)
                });
            }
            Err(_) => row.extend([String::new(), String::new(), String::new()]),
        }
    } else {
        row.extend([String::new(), String::new(), String::new()]);
    }
    row
}

fn pool() -> anyhow::Result<rayon::ThreadPool> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Ok(v) = std::env::var("TIGHTHAM_THREADS") {
        let k: usize = v.parse().with_context(|| format!("TIGHTHAM_THREADS={v:?}"))?;
        b = b.num_threads(k.max(1));
    }
    Ok(b.build()?)
}

/// Writes the header, then rows in cell order. Cells run in batches the
/// size of the pool and each batch is flushed before the next starts, so
/// an interrupted sweep leaves every finished batch on disk.
pub fn run<W: Write>(spec: &SweepSpec, out: W) -> anyhow::Result<()> {
    let cells = spec.cells();
    let pool = pool()?;
    let batch = pool.current_num_threads().max(1);
    let mut w = csv::Writer::from_writer(out);
    w.write_record(HEADER)?;
    w.flush()?;
    for chunk in cells.chunks(batch) {
        let rows: Vec<Vec<String>> = pool.install(|| chunk.par_iter().map(|c| measure(spec, c)).collect());
        for r in rows {
            w.write_record(&r)?;
        }
        w.flush()?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_spec_gives_header_only() {
        let spec = SweepSpec::parse("").unwrap();
        let mut buf = Vec::new();
        run(&spec, &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), HEADER.join(",") + "\n");
    }

    #[test]
    fn cells_nest_in_order() {
        let spec = SweepSpec::parse("families = [\"i\", \"random\"]\nn = [9, 10]\np = [0.5, 0.9]\nseeds = [3]").unwrap();
        let c = spec.cells();
        assert_eq!(c.len(), 2 + 4);
        assert_eq!(c[0].family, Family::I);
        assert_eq!((c[2].n, c[2].p, c[3].p), (9, Some(0.5), Some(0.9)));
        assert_eq!(c[5].n, 10);
    }

    #[test]
    fn rejects_unknown_keys_and_families() {
        assert!(SweepSpec::parse("famlies = [\"i\"]").is_err());
        assert!(SweepSpec::parse("families = [\"iv\"]").is_err());
        assert!(SweepSpec::parse("n_range = [5, 3]").is_err());
    }
}
