//! The five steps: absorbing path, reservoir, cover, connecting everything
//! through the reservoir into one cycle, and absorbing what is left.
//!
//! At desk sizes the proof's constants cannot be met, so the sizes are
//! planned instead. With `k` absorbers of order 5 the absorbing path has
//! order `a = 15k - 10`; `q` cover paths of order 6 and `q + 1` connections
//! with 14 reservoir vertices each leave `r = n - a - 20q - 14` vertices off
//! the cycle, and the plan needs `0 <= r <= k` so the absorbers can take
//! them all.

use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use thiserror::Error;

use crate::absorbing::{absorb, build_absorbing_path, select_family, AbsorberRecord, AbsorberSetup, AbsorbingPath, FamilyParams};
use crate::connector::{AlphaSchedule, Chooser, ConnectContext, ConnectError, ConnectOptions};
use crate::counting::{KCopy, KSearchBudget};
use crate::cover::{cover_klll, CoverMode, CoverParams};
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph3;
use crate::pair_graph::PairGraph;
use crate::rational::{choose2, frac, to_f64, Rational};
use crate::reservoir::{claim41_constraints, degraded_properties, sample_reservoir, Degraded};
use crate::rng::{split_seed, streams};
use crate::solver::{Budget, TightCycle, TightPath};
use crate::verify::verify_hamiltonian;
use crate::vertex_set::VertexSet;

/// Version of the [`RunReport`] JSON layout.
pub const REPORT_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Preset {
    Desk,
    Paper,
}

impl std::str::FromStr for Preset {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "desk" => Ok(Preset::Desk),
            "paper" => Ok(Preset::Paper),
            _ => Err(Error::Precondition(format!("unknown preset {s:?}"))),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PipelineConfig {
    pub preset: Preset,
    pub gamma: Rational,
    pub rho: Rational,
    pub lambda: Rational,
    pub l: u64,
    pub schedule: AlphaSchedule,
    pub cover_mode: CoverMode,
    pub family_probes: u64,
    pub reservoir_retries: u32,
    /// Bridge quadruples `(w, w', z, z')` tried per connection.
    pub bridge_attempts: usize,
    pub solver_fallback: bool,
    pub fallback_nodes: u64,
    /// Global retries; each one re-seeds every stage.
    pub attempts: u32,
    pub seed: u64,
}

impl PipelineConfig {
    /// `gamma = .3`, `L = 2`, `rho = .1`, `lambda = 1/9`.
    pub fn desk(seed: u64) -> Self {
        PipelineConfig {
            preset: Preset::Desk,
            gamma: frac(3, 10),
            rho: frac(1, 10),
            lambda: frac(1, 9),
            l: 2,
            schedule: AlphaSchedule::standard(),
            cover_mode: CoverMode::Greedy,
            family_probes: 400,
            reservoir_retries: 50,
            bridge_attempts: 24,
            solver_fallback: true,
            fallback_nodes: 2_000_000,
            attempts: 3,
            seed,
        }
    }

    /// `gamma = 10^-6 / 3`, `rho = gamma^3`, `L = ceil(gamma^-3 / 3)`,
    /// `lambda = 1/9`. Only meaningful for `n >= 10^12`; kept for the
    /// constant arithmetic.
    pub fn paper(seed: u64) -> Self {
        let gamma = frac(1, 3_000_000);
        let c = ProofConstants::new();
        PipelineConfig {
            preset: Preset::Paper,
            gamma,
            rho: gamma * gamma * gamma,
            lambda: frac(1, 9),
            l: u64::try_from(c.l).unwrap_or(u64::MAX),
            ..Self::desk(seed)
        }
    }
}

/// The constants of the final proof, exact.
#[derive(Clone, Debug)]
pub struct ProofConstants {
    pub gamma: BigRational,
    pub rho: BigRational,
    pub l: BigInt,
    pub p: BigRational,
    /// Denominators dividing `n_conn`, `n_res` and `n_cover` in the bound on `n`.
    pub conn_denominator: BigRational,
    pub res_denominator: BigRational,
    pub cover_denominator: BigRational,
    pub n_floor: BigInt,
    pub two_over_gamma_cubed: BigRational,
}

impl ProofConstants {
    pub fn new() -> Self {
        Self::for_gamma(BigRational::new(BigInt::from(1), BigInt::from(3_000_000)))
    }

    pub fn for_gamma(gamma: BigRational) -> Self {
        let one = BigRational::from_integer(BigInt::from(1));
        let g2 = &gamma * &gamma;
        let g3 = &g2 * &gamma;
        let inv3 = &one / &g3;
        let third = BigRational::new(BigInt::from(1), BigInt::from(3));
        ProofConstants {
            l: (&inv3 * &third).ceil().to_integer(),
            p: &g2 * &third,
            conn_denominator: &g2 / BigInt::from(4) - &g3 * BigInt::from(14),
            res_denominator: &one - &gamma,
            cover_denominator: &one - &gamma - &g2 / BigInt::from(2),
            n_floor: BigInt::from(10u64.pow(12)),
            two_over_gamma_cubed: BigRational::from_integer(BigInt::from(2)) / &g3,
            rho: g3,
            gamma,
        }
    }
}

impl Default for ProofConstants {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Plan {
    pub absorbers: usize,
    pub cover_paths: usize,
    /// Predicted `n - |V(C)|`, assuming order-5 absorbers.
    pub residual: usize,
}

/// Order of a chain of `k` absorbers of order 5 joined by length-12 connections.
fn chain_order(k: usize) -> usize {
    15 * k - 10
}

/// The feasible `(k, q)` with the most spare absorber capacity `k - r`;
/// ties go to fewer absorbers.
pub fn desk_plan(n: usize) -> Option<Plan> {
    let mut best: Option<Plan> = None;
    for k in 1..=n / 15 {
        let a = chain_order(k);
        if a + 14 > n {
            break;
        }
        let rest = n - a - 14;
        for q in 0..=rest / 20 {
            let r = rest - 20 * q;
            if r <= k && best.is_none_or(|b| k - r > b.absorbers - b.residual) {
                best = Some(Plan {
                    absorbers: k,
                    cover_paths: q,
                    residual: r,
                });
            }
        }
    }
    best
}

/// The `q` for an actual absorbing path of order `a`, if one fits.
fn cover_count(n: usize, a: usize, k: usize) -> Option<usize> {
    let rest = n.checked_sub(a + 14)?;
    (0..=rest / 20).rev().find(|q| rest - 20 * q <= k)
}

/// A path through a copy of `K_{L,L,L}` with both endpairs `1/3`-large:
/// order `3L` if possible, else `3L - 1`.
pub fn klll_path(k: &KCopy, g_third: &PairGraph) -> Option<Vec<usize>> {
    let l = k.h();
    const ORDERS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let build = |ord: [usize; 3], heads: [usize; 2], tails: &[usize], len: usize| -> Vec<usize> {
        // heads: first vertices of classes ord[0], ord[1]; tails: last vertices in path order
        let mut pools: Vec<Vec<usize>> = ord.iter().map(|&c| k.parts[c].clone()).collect();
        let mut seq = vec![usize::MAX; len];
        for (pos, &v) in [0usize, 1].iter().zip(&heads) {
            seq[*pos] = v;
        }
        for (i, &v) in tails.iter().enumerate() {
            seq[len - tails.len() + i] = v;
        }
        for &v in seq.iter().filter(|v| **v != usize::MAX) {
            for p in pools.iter_mut() {
                p.retain(|&x| x != v);
            }
        }
        for (pos, slot) in seq.iter_mut().enumerate() {
            if *slot == usize::MAX {
                *slot = pools[pos % 3].remove(0);
            }
        }
        seq
    };
    for ord in ORDERS {
        let (x, y, z) = (&k.parts[ord[0]], &k.parts[ord[1]], &k.parts[ord[2]]);
        for &a in x {
            for &b in y {
                if !g_third.has_edge(a, b) {
                    continue;
                }
                // full order: ends with (class 1, class 2)
                for &c in y {
                    for &d in z {
                        if (c != b || l == 1) && g_third.has_edge(c, d) {
                            if l == 1 && c != b {
                                continue;
                            }
                            let tails: Vec<usize> = if l == 1 { vec![d] } else { vec![c, d] };
                            return Some(build(ord, [a, b], &tails, 3 * l));
                        }
                    }
                }
            }
        }
    }
    if l < 2 {
        return None;
    }
    for ord in ORDERS {
        let (x, y) = (&k.parts[ord[0]], &k.parts[ord[1]]);
        for &a in x {
            for &b in y {
                if !g_third.has_edge(a, b) {
                    continue;
                }
                for &c in x {
                    for &d in y {
                        if c != a && d != b && g_third.has_edge(c, d) {
                            return Some(build(ord, [a, b], &[c, d], 3 * l - 1));
                        }
                    }
                }
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BridgeSide {
    Left,
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum ConnectAllError {
    #[error("reservoir of {have} vertices cannot host {paths} connections of 14")]
    Capacity { paths: usize, have: usize },
    #[error("{0}")]
    Precondition(String),
    #[error("connection {index}: no bridge on the {side:?} side")]
    Bridge { index: usize, side: BridgeSide },
    #[error("connection {index}: inner connection failed: {cause}")]
    Inner { index: usize, cause: ConnectError },
}

/// A length-16 path `x0 x1 w w' .. z' z y0 y1` whose 14 middle vertices lie in `R`.
#[derive(Clone, Debug, Serialize)]
pub struct Connection {
    pub path: Vec<usize>,
}

impl Connection {
    pub fn interior(&self) -> &[usize] {
        &self.path[2..16]
    }
}

/// Joins the paths into one cycle: connection `i` runs from the end of
/// `paths[i]` to the start of `paths[i + 1]` (cyclically) through `R_i`,
/// the part of `R` no earlier connection used.
pub fn connect_all_through_reservoir(
    h: &Hypergraph3,
    paths: &[TightPath],
    reservoir: &VertexSet,
    cfg: &PipelineConfig,
    seed: u64,
) -> std::result::Result<(TightCycle, Vec<Connection>), ConnectAllError> {
    let n = h.n();
    let m = paths.len();
    if m == 0 {
        return Err(ConnectAllError::Precondition("no paths to connect".into()));
    }
    if reservoir.len() < 14 * m {
        return Err(ConnectAllError::Capacity {
            paths: m,
            have: reservoir.len(),
        });
    }
    let g_third = h.large_pair_graph(&frac(1, 3)).expect("1/3 in range");
    let mut seen = VertexSet::empty(n);
    for p in paths {
        for &v in p.vertices() {
            if reservoir.contains(v) || !seen.insert(v) {
                return Err(ConnectAllError::Precondition(format!("vertex {v} repeated or inside R")));
            }
        }
        let (s, e) = (p.start_pair(), p.end_pair());
        if !g_third.has_edge(s.0, s.1) || !g_third.has_edge(e.0, e.1) {
            return Err(ConnectAllError::Precondition("endpair not 1/3-large".into()));
        }
    }
    let nb = h.co_neighborhoods();
    let mut left = reservoir.clone();
    let mut conns = Vec::with_capacity(m);
    for i in 0..m {
        let pv = paths[i].vertices();
        let (x0, x1) = (pv[pv.len() - 2], pv[pv.len() - 1]);
        let nv = paths[(i + 1) % m].vertices();
        let (y0, y1) = (nv[0], nv[1]);
        let (sub, labels) = h.compact(&left);
        let mut local = vec![usize::MAX; n];
        for (j, &v) in labels.iter().enumerate() {
            local[v] = j;
        }
        let ctx = ConnectContext::new(&sub, cfg.schedule.clone()).map_err(|e| ConnectAllError::Precondition(e.to_string()))?;
        let g1 = ctx.large(1);
        // w: x0 x1 w in H, x1 w in G_{1/3}; w': x1 w w' in H, w w' in G_{1/3}
        let ws = nb.get(x0, x1).intersection(g_third.neighbors(x1)).intersection(&left);
        let mut lefts = Vec::new();
        for w in ws.iter() {
            let mut w2 = nb.get(x1, w).intersection(g_third.neighbors(w)).intersection(&left);
            w2.remove(w);
            for w1 in w2.iter() {
                if g1.has_edge(local[w], local[w1]) {
                    lefts.push((w, w1));
                }
            }
        }
        if lefts.is_empty() {
            return Err(ConnectAllError::Bridge { index: i, side: BridgeSide::Left });
        }
        // z: z y0 y1 in H, z y0 in G_{1/3}; z': z' z y0 in H, z' z in G_{1/3}
        let zs = nb.get(y0, y1).intersection(g_third.neighbors(y0)).intersection(&left);
        let mut rights = Vec::new();
        for z in zs.iter() {
            let mut z2 = nb.get(z, y0).intersection(g_third.neighbors(z)).intersection(&left);
            z2.remove(z);
            for z1 in z2.iter() {
                if g1.has_edge(local[z], local[z1]) {
                    rights.push((z, z1));
                }
            }
        }
        if rights.is_empty() {
            return Err(ConnectAllError::Bridge { index: i, side: BridgeSide::Right });
        }
        let mut opts = ConnectOptions {
            chooser: Chooser::seeded(split_seed(seed, i as u64)),
            solver_fallback: cfg.solver_fallback,
            fallback_budget: Budget::nodes(cfg.fallback_nodes),
        };
        let mut tried = 0;
        let mut last_err = None;
        let mut found = None;
        'outer: for &(w, w1) in &lefts {
            for &(z, z1) in &rights {
                if z == w || z == w1 || z1 == w || z1 == w1 {
                    continue;
                }
                if tried == cfg.bridge_attempts {
                    break 'outer;
                }
                tried += 1;
                let e = (local[w], local[w1]);
                let f = (local[z], local[z1]);
                match ctx.connect(e, f, &VertexSet::empty(sub.n()), &mut opts) {
                    Ok(p) => {
                        found = Some(p);
                        break 'outer;
                    }
                    Err(err) => last_err = Some(err),
                }
            }
        }
        let Some(inner) = found else {
            return Err(ConnectAllError::Inner {
                index: i,
                cause: last_err.unwrap_or(ConnectError::Precondition("no disjoint bridges".into())),
            });
        };
        let mut seq = vec![x0, x1];
        seq.extend(inner.vertices().iter().map(|&j| labels[j]));
        seq.extend([y0, y1]);
        debug_assert_eq!(seq.len(), 18);
        for &v in &seq[2..16] {
            left.remove(v);
        }
        debug_assert_eq!(left.len(), reservoir.len() - 14 * (i + 1));
        conns.push(Connection { path: seq });
    }
    let mut cyc = Vec::new();
    for (p, c) in paths.iter().zip(&conns) {
        cyc.extend_from_slice(p.vertices());
        cyc.extend_from_slice(c.interior());
    }
    let cycle = TightCycle::new(h, cyc).map_err(|v| ConnectAllError::Precondition(format!("spliced cycle invalid: {v}")))?;
    Ok((cycle, conns))
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("{uncovered} vertices off the cycle but only {capacity} absorbers (deficit {deficit})")]
pub struct AuditFailure {
    pub uncovered: usize,
    pub capacity: usize,
    pub deficit: usize,
}

/// `|U| <= capacity`, exactly.
pub fn leftover_audit(uncovered: usize, capacity: usize) -> std::result::Result<(), AuditFailure> {
    if uncovered <= capacity {
        Ok(())
    } else {
        Err(AuditFailure {
            uncovered,
            capacity,
            deficit: uncovered - capacity,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Stage {
    Plan,
    Absorbing,
    Reservoir,
    Cover,
    Connect,
    Absorb,
}

#[derive(Clone, Debug, Serialize)]
pub struct StageFailure {
    pub stage: Stage,
    pub cause: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AttemptReport {
    pub attempt: u32,
    pub seed: u64,
    pub plan: Option<Plan>,
    pub absorbers: Vec<AbsorberRecord>,
    pub absorbing_path: Vec<usize>,
    pub reservoir: Vec<usize>,
    pub reservoir_samples: u32,
    pub degraded: Option<Degraded>,
    pub cover_copies: usize,
    pub cover_paths: Vec<Vec<usize>>,
    /// Vertices of `H''` left off the cover paths.
    pub leftover_t: Vec<usize>,
    pub connections: Vec<Vec<usize>>,
    /// `V - V(C)` before the final absorption.
    pub uncovered: Vec<usize>,
    pub failure: Option<StageFailure>,
    pub timings_ms: Vec<(Stage, u64)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub version: u32,
    pub n: usize,
    pub preset: Preset,
    pub seed: u64,
    pub min_degree: usize,
    /// `delta(H) >= .8 C(n - 1, 2)`; the run proceeds either way.
    pub degree_condition: bool,
    pub min_degree_ratio: f64,
    pub attempts: Vec<AttemptReport>,
    pub success: bool,
    pub cycle: Option<Vec<usize>>,
}

impl RunReport {
    /// The report with timings zeroed, for reproducibility checks.
    pub fn without_timings(&self) -> RunReport {
        let mut r = self.clone();
        for a in r.attempts.iter_mut() {
            for t in a.timings_ms.iter_mut() {
                t.1 = 0;
            }
        }
        r
    }
}

struct Clock {
    t: Instant,
}

impl Clock {
    fn lap(&mut self, a: &mut AttemptReport, stage: Stage) {
        let ms = self.t.elapsed().as_millis() as u64;
        a.timings_ms.push((stage, ms));
        self.t = Instant::now();
    }
}

/// Runs the five steps, retrying with fresh seeds up to `cfg.attempts` times.
pub fn run(h: &Hypergraph3, cfg: &PipelineConfig) -> Result<RunReport> {
    let n = h.n();
    if n < 3 {
        return Err(Error::TooFewVertices { needed: 3, n });
    }
    let (d1, _) = h.min_degrees()?;
    let bar = choose2(n as u64 - 1);
    let mut report = RunReport {
        version: REPORT_VERSION,
        n,
        preset: cfg.preset,
        seed: cfg.seed,
        min_degree: d1,
        degree_condition: crate::rational::at_least(d1 as u64, &frac(4, 5), bar),
        min_degree_ratio: if bar == 0 { 0.0 } else { d1 as f64 / bar as f64 },
        attempts: Vec::new(),
        success: false,
        cycle: None,
    };
    if cfg.preset == Preset::Paper {
        report.attempts.push(AttemptReport {
            failure: Some(StageFailure {
                stage: Stage::Plan,
                cause: "this preset needs n >= 10^12".into(),
            }),
            ..Default::default()
        });
        return Ok(report);
    }
    for attempt in 0..cfg.attempts.max(1) {
        let seed = split_seed(cfg.seed, streams::PIPELINE_ATTEMPT + 16 * attempt as u64);
        let mut a = AttemptReport {
            attempt,
            seed,
            ..Default::default()
        };
        match attempt_once(h, cfg, seed, &mut a) {
            Ok(cycle) => {
                report.cycle = Some(cycle.vertices().to_vec());
                report.success = true;
                report.attempts.push(a);
                break;
            }
            Err(f) => {
                a.failure = Some(f);
                report.attempts.push(a);
            }
        }
    }
    Ok(report)
}

fn fail(stage: Stage, cause: impl ToString) -> StageFailure {
    StageFailure {
        stage,
        cause: cause.to_string(),
    }
}

fn attempt_once(h: &Hypergraph3, cfg: &PipelineConfig, seed: u64, rep: &mut AttemptReport) -> std::result::Result<TightCycle, StageFailure> {
    let n = h.n();
    let mut clock = Clock { t: Instant::now() };
    let plan = desk_plan(n).ok_or_else(|| fail(Stage::Plan, format!("no (k, q) plan fits n = {n}")))?;
    rep.plan = Some(plan);

    // 1: absorbing path
    let setup = AbsorberSetup::new(h);
    let params = FamilyParams {
        gamma: cfg.gamma,
        target: Some(plan.absorbers),
        probes: cfg.family_probes,
    };
    let fam = select_family(&setup, &params, &VertexSet::empty(n), split_seed(seed, streams::FAMILY)).map_err(|e| fail(Stage::Absorbing, e))?;
    rep.absorbers = fam.records.clone();
    if fam.records.len() < plan.absorbers {
        return Err(fail(
            Stage::Absorbing,
            format!("found {} of {} absorbers", fam.records.len(), plan.absorbers),
        ));
    }
    let ctx = ConnectContext::new(h, cfg.schedule.clone()).map_err(|e| fail(Stage::Absorbing, e))?;
    let mut opts = ConnectOptions {
        chooser: Chooser::seeded(split_seed(seed, streams::CONNECT)),
        solver_fallback: cfg.solver_fallback,
        fallback_budget: Budget::nodes(cfg.fallback_nodes),
    };
    let absorbing: AbsorbingPath =
        build_absorbing_path(&ctx, &fam.records, &VertexSet::empty(n), &mut opts).map_err(|e| fail(Stage::Absorbing, e))?;
    rep.absorbing_path = absorbing.path.vertices().to_vec();
    let a_set = absorbing.path.vertex_set(n);
    let q = cover_count(n, absorbing.path.order(), absorbing.capacity())
        .ok_or_else(|| fail(Stage::Absorbing, format!("no cover count fits |A| = {}", absorbing.path.order())))?;
    clock.lap(rep, Stage::Absorbing);

    // 2: reservoir in H - V(A)
    let gamma_menu = claim41_constraints(h, &a_set, &cfg.gamma).map_err(|e| fail(Stage::Reservoir, e))?;
    let lo = 14 * (q + 1);
    let hi = n - absorbing.path.order() - 6 * q;
    let ground = gamma_menu.ground.clone();
    let p = frac((lo + hi) as i128, 2 * ground.len() as i128);
    let mut constraints = gamma_menu.constraints;
    constraints.window = Some((Rational::from_integer(lo as i128), Rational::from_integer(hi as i128)));
    let res = sample_reservoir(&ground, &p, &constraints, split_seed(seed, streams::RESERVOIR), cfg.reservoir_retries)
        .map_err(|e| fail(Stage::Reservoir, e))?
        .map_err(|e| fail(Stage::Reservoir, e))?;
    let r_set = res.set;
    rep.reservoir = r_set.to_vec();
    rep.reservoir_samples = res.attempts;
    rep.degraded = Some(degraded_properties(h, &setup.g_third, &r_set));
    clock.lap(rep, Stage::Reservoir);

    // 3: cover H'' = H' - (V(A) ∪ R)
    let rest = a_set.union(&r_set).complement();
    let (h2, labels) = setup.h_prime.compact(&rest);
    let cover = cover_klll(
        &h2,
        &CoverParams {
            rho: cfg.rho,
            lambda: cfg.lambda,
            l: cfg.l as usize,
            mode: cfg.cover_mode,
            eps: None,
            t0: 3,
            probes: 64,
            search: KSearchBudget::default(),
        },
        split_seed(seed, streams::COVER),
    )
    .map_err(|e| fail(Stage::Cover, e))?;
    rep.cover_copies = cover.family.len();
    let mut paths = Vec::new();
    let mut on_paths = VertexSet::empty(n);
    for k in &cover.family {
        if paths.len() == q {
            break;
        }
        let k = KCopy {
            parts: k.parts.clone().map(|p| p.into_iter().map(|v| labels[v]).collect()),
        };
        let Some(seq) = klll_path(&k, &setup.g_third) else { continue };
        for &v in &seq {
            on_paths.insert(v);
        }
        paths.push(TightPath::new(h, seq).map_err(|v| fail(Stage::Cover, format!("cover path invalid: {v}")))?);
    }
    if paths.len() < q {
        return Err(fail(Stage::Cover, format!("found {} of {q} cover paths", paths.len())));
    }
    rep.cover_paths = paths.iter().map(|p| p.vertices().to_vec()).collect();
    rep.leftover_t = rest.difference(&on_paths).to_vec();
    clock.lap(rep, Stage::Cover);

    // 4: one cycle through R
    paths.push(absorbing.path.clone());
    let (cycle, conns) = connect_all_through_reservoir(h, &paths, &r_set, cfg, split_seed(seed, streams::CONNECT + 1)).map_err(|e| fail(Stage::Connect, e))?;
    rep.connections = conns.iter().map(|c| c.path.clone()).collect();
    let on_cycle = VertexSet::from_iter(n, cycle.vertices().iter().copied());
    let uncovered = on_cycle.complement();
    rep.uncovered = uncovered.to_vec();
    clock.lap(rep, Stage::Connect);

    // 5: absorb V - V(C) into A and splice
    leftover_audit(uncovered.len(), absorbing.capacity()).map_err(|e| fail(Stage::Absorb, e))?;
    let au = absorb(h, &absorbing, &uncovered).map_err(|e| fail(Stage::Absorb, e))?;
    let a_len = absorbing.path.order();
    // A is the last segment of the cycle sequence
    let mut seq = cycle.vertices()[..cycle.len() - a_len - 14].to_vec();
    let tail = &cycle.vertices()[cycle.len() - a_len - 14..];
    debug_assert_eq!(&tail[..a_len], absorbing.path.vertices());
    seq.extend_from_slice(au.vertices());
    seq.extend_from_slice(&tail[a_len..]);
    verify_hamiltonian(h, &seq).map_err(|v| fail(Stage::Absorb, format!("final cycle invalid: {v}")))?;
    clock.lap(rep, Stage::Absorb);
    TightCycle::new(h, seq).map_err(|v| fail(Stage::Absorb, v))
}

/// `delta(H) / C(n - 1, 2)` threshold used in reports.
pub fn degree_threshold() -> f64 {
    to_f64(&frac(4, 5))
}
