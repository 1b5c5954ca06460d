//! Random reservoir sets that keep the degree properties of the host.
//!
//! A candidate `R` is a Bernoulli(p) subset of a ground set `V` with
//! `N = |V|`. It is accepted only if an exact recount shows
//!
//! * (a) `||R| - pN| <= p N^{2/3}`,
//! * (b) `|U_i ∩ R| >= (alpha_i - 2 N^{-1/3}) |R|` for every set constraint,
//! * (c) `|L_j[R]| >= (beta_j - 3 N^{-1/3}) C(|R|, 2)` for every graph constraint,
//!
//! and otherwise resampled. The cube roots are cleared by cubing both sides,
//! so no comparison touches floating point.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::error::{out_of_range, Result};
use crate::hypergraph::Hypergraph3;
use crate::pair_graph::PairGraph;
use crate::rational::{at_least, choose2, frac, in_open_unit, Rational};
use crate::rng::{split_seed, stream_rng, streams};
use crate::vertex_set::VertexSet;

#[derive(Clone, Debug)]
pub struct SetConstraint {
    pub label: String,
    pub set: VertexSet,
    pub alpha: Rational,
}

#[derive(Clone, Debug)]
pub struct GraphConstraint {
    pub label: String,
    pub graph: PairGraph,
    pub beta: Rational,
}

#[derive(Clone, Debug, Default)]
pub struct Constraints {
    pub sets: Vec<SetConstraint>,
    pub graphs: Vec<GraphConstraint>,
    /// Extra hard bounds `min <= |R| <= max`, checked on top of (a).
    pub window: Option<(Rational, Rational)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ReservoirViolation {
    Size { got: usize },
    Window { got: usize },
    Set { label: String, hits: usize, size: usize },
    Graph { label: String, edges: usize, size: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
#[error("no reservoir after {attempts} samples; last attempt violated {} constraint(s)", violations.len())]
pub struct ReservoirFailure {
    pub attempts: u32,
    pub violations: Vec<ReservoirViolation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Reservoir {
    pub set: VertexSet,
    /// 1-based number of the sample that passed.
    pub attempts: u32,
}

fn big(r: &Rational) -> BigRational {
    BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom()))
}

fn bigi(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// (a): `|size - pN|^3 <= p^3 N^2`.
pub fn size_ok(size: usize, p: &Rational, ground: usize) -> bool {
    let (p, n) = (big(p), bigi(ground as u64));
    let d = (bigi(size as u64) - &p * &n).abs();
    &d * &d * &d <= &p * &p * &p * &n * &n
}

/// (b): with `d = hits - alpha size`, either `d >= 0` or `(-d)^3 N <= 8 size^3`.
pub fn set_ok(hits: usize, alpha: &Rational, size: usize, ground: usize) -> bool {
    let d = bigi(hits as u64) - big(alpha) * bigi(size as u64);
    if !d.is_negative() {
        return true;
    }
    let m = -d;
    let s = bigi(size as u64);
    &m * &m * &m * bigi(ground as u64) <= bigi(8) * &s * &s * &s
}

/// (c): with `d = edges - beta C(size, 2)`, either `d >= 0` or
/// `(-d)^3 N <= 27 C(size, 2)^3`.
pub fn graph_ok(edges: usize, beta: &Rational, size: usize, ground: usize) -> bool {
    let pairs = bigi(choose2(size as u64));
    let d = bigi(edges as u64) - big(beta) * &pairs;
    if !d.is_negative() {
        return true;
    }
    let m = -d;
    &m * &m * &m * bigi(ground as u64) <= bigi(27) * &pairs * &pairs * &pairs
}

/// Every violated constraint of `r`, by exact recount.
pub fn violations(r: &VertexSet, ground: &VertexSet, p: &Rational, c: &Constraints) -> Vec<ReservoirViolation> {
    let (size, n) = (r.len(), ground.len());
    let mut out = Vec::new();
    if !size_ok(size, p, n) {
        out.push(ReservoirViolation::Size { got: size });
    }
    if let Some((lo, hi)) = &c.window {
        let s = Rational::from_integer(size as i128);
        if &s < lo || &s > hi {
            out.push(ReservoirViolation::Window { got: size });
        }
    }
    for sc in &c.sets {
        let hits = sc.set.intersection_len(r);
        if !set_ok(hits, &sc.alpha, size, n) {
            out.push(ReservoirViolation::Set {
                label: sc.label.clone(),
                hits,
                size,
            });
        }
    }
    for gc in &c.graphs {
        let edges = gc.graph.induced_edge_count(r);
        if !graph_ok(edges, &gc.beta, size, n) {
            out.push(ReservoirViolation::Graph {
                label: gc.label.clone(),
                edges,
                size,
            });
        }
    }
    out
}

/// Draws Bernoulli(p) subsets of `ground` until one passes every check, at
/// most `retries` times. Attempt `i` uses its own seed, so the result depends
/// only on `(seed, retries, constraints)`.
pub fn sample_reservoir(
    ground: &VertexSet,
    p: &Rational,
    constraints: &Constraints,
    seed: u64,
    retries: u32,
) -> Result<std::result::Result<Reservoir, ReservoirFailure>> {
    if !in_open_unit(p) {
        return Err(out_of_range("p", p, "(0, 1)"));
    }
    let (num, den) = (*p.numer() as u64, *p.denom() as u64);
    let mut last = Vec::new();
    for attempt in 0..retries {
        let mut rng = stream_rng(split_seed(seed, attempt as u64), streams::RESERVOIR);
        let mut r = VertexSet::empty(ground.universe());
        for v in ground.iter() {
            if rng.gen_range(0..den) < num {
                r.insert(v);
            }
        }
        last = violations(&r, ground, p, constraints);
        if last.is_empty() {
            return Ok(Ok(Reservoir {
                set: r,
                attempts: attempt + 1,
            }));
        }
    }
    Ok(Err(ReservoirFailure {
        attempts: retries,
        violations: last,
    }))
}

/// The constraint menu for a reservoir inside `H - V(A)`.
#[derive(Clone, Debug)]
pub struct Claim41 {
    pub ground: VertexSet,
    pub p: Rational,
    pub constraints: Constraints,
}

impl Claim41 {
    /// Number of (b1), (b2) and (c) constraints.
    pub fn counts(&self) -> (usize, usize, usize) {
        let b1 = self.constraints.sets.iter().filter(|s| s.label.starts_with("b1")).count();
        (b1, self.constraints.sets.len() - b1, self.constraints.graphs.len())
    }
}

/// Sets `N_H(e) - V(A)` for `e` in `G_{1/3}` with `alpha = 1/3 - gamma`,
/// sets `N_{G_{1/3}}(v) - V(A)` with `alpha = .7 - gamma`, link graphs
/// `H(v) - V(A)` with `beta = .8 - 3 gamma`, the window
/// `gamma^2 n / 4 <= |R| <= gamma^2 n / 2` and `p = gamma^2 / 3`.
pub fn claim41_constraints(h: &Hypergraph3, a: &VertexSet, gamma: &Rational) -> Result<Claim41> {
    if !in_open_unit(gamma) {
        return Err(out_of_range("gamma", gamma, "(0, 1)"));
    }
    let n = h.n();
    let g = h.large_pair_graph(&frac(1, 3))?;
    let nb = h.co_neighborhoods();
    let mut sets = Vec::new();
    let alpha_e = frac(1, 3) - gamma;
    for (u, v) in g.edges() {
        sets.push(SetConstraint {
            label: format!("b1:{u},{v}"),
            set: nb.get(u, v).difference(a),
            alpha: alpha_e,
        });
    }
    let alpha_v = frac(7, 10) - gamma;
    for v in 0..n {
        sets.push(SetConstraint {
            label: format!("b2:{v}"),
            set: g.neighbors(v).difference(a),
            alpha: alpha_v,
        });
    }
    let beta = frac(8, 10) - gamma * 3;
    let mut graphs = Vec::new();
    for v in 0..n {
        graphs.push(GraphConstraint {
            label: format!("c:{v}"),
            graph: h.link_graph(v)?.remove_vertices(a),
            beta,
        });
    }
    let g2n = gamma * gamma * frac(n as i128, 1);
    Ok(Claim41 {
        ground: a.complement(),
        p: gamma * gamma / 3,
        constraints: Constraints {
            sets,
            graphs,
            window: Some((g2n / 4, g2n / 2)),
        },
    })
}

/// The weakened properties every large enough `R' ⊆ R` should keep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Degraded {
    /// Every `1/3`-large pair of `H` has at least `.33 |R'|` neighbours in `R'`.
    pub b1: bool,
    /// Every vertex has at least `.69 |R'|` `G_{1/3}`-neighbours in `R'`.
    pub b2: bool,
    /// `delta(H[R']) >= .799 C(|R'| - 1, 2)`.
    pub c: bool,
}

impl Degraded {
    pub fn all(&self) -> bool {
        self.b1 && self.b2 && self.c
    }
}

pub fn degraded_properties(h: &Hypergraph3, g_third: &PairGraph, r: &VertexSet) -> Degraded {
    let size = r.len() as u64;
    let n = h.n();
    let b1 = g_third
        .edges()
        .all(|(u, v)| at_least(h.co_neighborhood(u, v).intersection_len(r) as u64, &frac(33, 100), size));
    let b2 = (0..n).all(|v| at_least(g_third.neighbors(v).intersection_len(r) as u64, &frac(69, 100), size));
    let (hr, _) = h.compact(r);
    let bar = choose2(size.saturating_sub(1));
    let c = hr.vertex_degrees().iter().all(|&d| at_least(d as u64, &frac(799, 1000), bar));
    Degraded { b1, b2, c }
}

/// `C(|R|, 2)` as an exact rational, for callers reporting margins.
pub fn pairs_of(r: &VertexSet) -> Rational {
    Rational::from_integer(choose2(r.len() as u64) as i128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::random_h3;
    use proptest::prelude::*;

    #[test]
    fn size_only() {
        let v = VertexSet::full(1000);
        let p = frac(1, 2);
        let r = sample_reservoir(&v, &p, &Constraints::default(), 4, 10).unwrap().unwrap();
        // p N^{2/3} = 50
        assert!((450..=550).contains(&r.set.len()));
        assert!(size_ok(550, &p, 1000));
        assert!(!size_ok(551, &p, 1000));
        assert!(size_ok(450, &p, 1000));
        assert!(!size_ok(449, &p, 1000));
    }

    #[test]
    fn full_set_is_never_violated() {
        let v = VertexSet::full(200);
        let c = Constraints {
            sets: vec![SetConstraint {
                label: "all".into(),
                set: v.clone(),
                alpha: frac(1, 1),
            }],
            ..Default::default()
        };
        let r = sample_reservoir(&v, &frac(1, 4), &c, 1, 5).unwrap().unwrap();
        assert_eq!(r.attempts, 1);
    }

    #[test]
    fn impossible_constraint_reports_failure() {
        let v = VertexSet::full(100);
        let c = Constraints {
            sets: vec![SetConstraint {
                label: "none".into(),
                set: VertexSet::empty(100),
                alpha: frac(9, 10),
            }],
            ..Default::default()
        };
        let f = sample_reservoir(&v, &frac(1, 2), &c, 1, 3).unwrap().unwrap_err();
        assert_eq!(f.attempts, 3);
        assert!(f.violations.iter().any(|x| matches!(x, ReservoirViolation::Set { .. })));
        assert!(sample_reservoir(&v, &frac(0, 1), &c, 1, 3).is_err());
    }

    #[test]
    fn menu_counts() {
        let h = random_h3(20, 0.8, 2).unwrap();
        let a = VertexSet::from_iter(20, [0, 1, 2]);
        let m = claim41_constraints(&h, &a, &frac(1, 10)).unwrap();
        let g = h.large_pair_graph(&frac(1, 3)).unwrap();
        assert_eq!(m.counts(), (g.edge_count(), 20, 20));
        assert_eq!(m.p, frac(1, 300));
        for s in &m.constraints.sets {
            assert!(s.set.is_disjoint(&a));
        }
    }

    #[test]
    fn complete_host_meets_every_alpha() {
        let h = Hypergraph3::complete(30).unwrap();
        let m = claim41_constraints(&h, &VertexSet::empty(30), &frac(1, 10)).unwrap();
        let r = VertexSet::from_iter(30, 0..15);
        let v = violations(&r, &m.ground, &m.p, &Constraints { window: None, ..m.constraints.clone() });
        assert!(v.iter().all(|x| matches!(x, ReservoirViolation::Size { .. })));
    }

    #[test]
    fn desk_menu_on_dense_host() {
        let h = random_h3(120, 0.95, 11).unwrap();
        let m = claim41_constraints(&h, &VertexSet::empty(120), &frac(3, 10)).unwrap();
        let r = sample_reservoir(&m.ground, &m.p, &m.constraints, 5, 50).unwrap().unwrap();
        assert!(violations(&r.set, &m.ground, &m.p, &m.constraints).is_empty());
        let again = sample_reservoir(&m.ground, &m.p, &m.constraints, 5, 50).unwrap().unwrap();
        assert_eq!(again.set, r.set);
    }

    #[test]
    fn degraded_on_complete() {
        let h = Hypergraph3::complete(20).unwrap();
        let g = h.large_pair_graph(&frac(1, 3)).unwrap();
        let r = VertexSet::from_iter(20, 0..10);
        assert!(degraded_properties(&h, &g, &r).all());
        let e = Hypergraph3::empty(20).unwrap();
        let d = degraded_properties(&e, &PairGraph::empty(20), &r);
        assert!(d.b1 && !d.b2 && !d.c);
    }

    /// Same inequalities, decided in f64 away from the boundary.
    fn float_set_ok(hits: usize, alpha: f64, size: usize, n: usize) -> Option<bool> {
        let lhs = hits as f64;
        let rhs = (alpha - 2.0 * (n as f64).powf(-1.0 / 3.0)) * size as f64;
        ((lhs - rhs).abs() > 1e-6).then_some(lhs >= rhs)
    }

    proptest! {
        #[test]
        fn cubed_set_check_matches_float(hits in 0usize..200, size in 0usize..200, n in 1usize..2000, a in 1i128..100) {
            let alpha = frac(a, 100);
            if let Some(expect) = float_set_ok(hits, a as f64 / 100.0, size, n) {
                prop_assert_eq!(set_ok(hits, &alpha, size, n), expect);
            }
        }

        #[test]
        fn cubed_size_check_matches_float(size in 0usize..600, n in 1usize..1000, p in 1i128..100) {
            let pr = frac(p, 100);
            let pf = p as f64 / 100.0;
            let lhs = (size as f64 - pf * n as f64).abs();
            let rhs = pf * (n as f64).powf(2.0 / 3.0);
            if (lhs - rhs).abs() > 1e-6 {
                prop_assert_eq!(size_ok(size, &pr, n), lhs <= rhs);
            }
        }

        #[test]
        fn cubed_graph_check_matches_float(edges in 0usize..500, size in 0usize..40, n in 1usize..2000, b in 1i128..100) {
            let pairs = (size * size.saturating_sub(1) / 2) as f64;
            let rhs = (b as f64 / 100.0 - 3.0 * (n as f64).powf(-1.0 / 3.0)) * pairs;
            if (edges as f64 - rhs).abs() > 1e-6 {
                prop_assert_eq!(graph_ok(edges, &frac(b, 100), size, n), edges as f64 >= rhs);
            }
        }
    }

    #[test]
    fn empty_reservoir_passes_set_checks() {
        assert!(set_ok(0, &frac(1, 2), 0, 1));
        assert!(graph_ok(0, &frac(1, 2), 1, 1));
    }
}
