//! Connecting two large pairs by a tight path of length 12.
//!
//! From each endpair the path climbs through pairs of increasing co-degree
//! (the alpha schedule) for four steps, then the two halves are joined through
//! two fresh vertices:
//!
//! ```text
//! u0 u1 u2 u3 u4 u5 x y v5 v4 v3 v2 v1 v0
//! ```

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::counting::Search;
use crate::error::{out_of_range, Error, Result};
use crate::hypergraph::{binom2, CoNeighborhoods, Hypergraph3};
use crate::pair_graph::PairGraph;
use crate::rational::{frac, int, Rational};
use crate::rng::rng_from;
use crate::solver::{find_tight_path, Budget, OrderBounds, TightPath};
use crate::vertex_set::VertexSet;

/// `g_c(alpha) = (c - alpha) / (1 - alpha)`, for `0 <= alpha < c < 1`.
///
/// If every vertex has degree at least `c C(n-1, 2)`, every vertex has at
/// least `g_c(alpha) (n - 1)` neighbours in `G_alpha`.
pub fn g(c: &Rational, alpha: &Rational) -> Result<Rational> {
    let zero = int(0);
    let one = int(1);
    if !(alpha >= &zero && alpha < c && c < &one) {
        return Err(out_of_range("(alpha, c)", format!("({alpha}, {c})"), "0 <= alpha < c < 1"));
    }
    Ok((c - alpha) / (one - alpha))
}

/// Co-degree thresholds `alpha_1 < .. < alpha_5` for the climb, and the degree constant `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AlphaSchedule {
    pub alphas: [Rational; 5],
    pub c: Rational,
}

impl AlphaSchedule {
    /// `(.33, .39, .48, .58, .65)` with `c = .799`.
    pub fn standard() -> Self {
        AlphaSchedule {
            alphas: [frac(33, 100), frac(39, 100), frac(48, 100), frac(58, 100), frac(65, 100)],
            c: frac(799, 1000),
        }
    }

    /// Checks monotonicity and `alpha_i + g_c(alpha_{i+1}) > 1` for `i = 1..4`.
    pub fn check(&self) -> Result<()> {
        for w in self.alphas.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::Precondition(format!("schedule not increasing at {} >= {}", w[0], w[1])));
            }
        }
        for i in 0..4 {
            let s = self.alphas[i] + g(&self.c, &self.alphas[i + 1])?;
            if s <= int(1) {
                return Err(Error::Precondition(format!(
                    "alpha_{} + g(alpha_{}) = {s} is not above 1",
                    i + 1,
                    i + 2
                )));
            }
        }
        Ok(())
    }

    /// `alpha_i + g_c(alpha_{i+1}) - 1` for `i = 1..4`.
    pub fn slacks(&self) -> Result<[Rational; 4]> {
        let mut out = [int(0); 4];
        for (i, s) in out.iter_mut().enumerate() {
            *s = self.alphas[i] + g(&self.c, &self.alphas[i + 1])? - int(1);
        }
        Ok(out)
    }
}

/// Guaranteed size of `N_H(u, v) ∩ N_{G_{alpha'}}(v)` at one climbing step when
/// `uv` is `alpha`-large and the degree condition holds:
/// `alpha (n - 2) + g_c(alpha') (n - 1) - (n - 1)`.
///
/// The asymptotic argument needs this to be at least 20 so the new vertex can avoid the ones
/// already placed. At desk scale the candidates are simply enumerated, so this
/// is only used to document where the asymptotic argument starts to bite.
pub fn step_margin(n: u64, alpha: &Rational, next: &Rational, c: &Rational) -> Result<Rational> {
    let n = n as i128;
    Ok(alpha * int(n - 2) + g(c, next)? * int(n - 1) - int(n - 1))
}

/// Smallest `n` from which every step of `schedule` has margin at least `slack`.
pub fn min_n_for_margin(schedule: &AlphaSchedule, slack: u64) -> Result<u64> {
    // each margin is linear in n with positive slope, so the last failure bounds them all
    let mut n = 3u64;
    for i in 0..4 {
        let (a, b) = (&schedule.alphas[i], &schedule.alphas[i + 1]);
        let m3 = step_margin(3, a, b, &schedule.c)?;
        let slope = step_margin(4, a, b, &schedule.c)? - m3;
        if slope <= int(0) {
            return Err(Error::Precondition("schedule is infeasible".into()));
        }
        let need = ((int(slack as i128) - m3) / slope).ceil();
        let k = 3 + need.to_integer().max(0) as u64;
        n = n.max(k);
    }
    Ok(n)
}

/// Outcome of checking `delta(G_alpha) >= g_c(alpha) (n - 1)` on a concrete hypergraph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ClaimVerdict {
    Holds,
    /// `delta(H) < c C(n-1, 2)`, so the claim says nothing.
    Inapplicable,
    Violated { vertex: usize, degree: usize },
}

pub fn check_claim_f(h: &Hypergraph3, alpha: &Rational, c: &Rational) -> Result<ClaimVerdict> {
    let n = h.n();
    let (d1, _) = h.min_degrees()?;
    let bound = g(c, alpha)?;
    if alpha <= &int(0) {
        return Err(out_of_range("alpha", alpha, "(0, c)"));
    }
    if int(d1 as i128) < c * int(binom2(n - 1) as i128) {
        return Ok(ClaimVerdict::Inapplicable);
    }
    let gg = h.large_pair_graph(alpha)?;
    let need = bound * int(n as i128 - 1);
    for v in 0..n {
        if int(gg.degree(v) as i128) < need {
            return Ok(ClaimVerdict::Violated {
                vertex: v,
                degree: gg.degree(v),
            });
        }
    }
    Ok(ClaimVerdict::Holds)
}

/// `(|Pi(B, R)|, C(|B|, 2))`, where `Pi(B, R)` is the set of unordered pairs
/// `{b, r}`, `b != r`, with `b` in `B` and `r` in `R`.
pub fn pi_lower_bound(b: &VertexSet, r: &VertexSet) -> Result<(u64, u64)> {
    if b.len() > r.len() {
        return Err(Error::Precondition(format!("|B| = {} exceeds |R| = {}", b.len(), r.len())));
    }
    let (nb, nr) = (b.len() as u64, r.len() as u64);
    let c = b.intersection_len(r) as u64;
    Ok((nb * nr - (c + 1) * c / 2, nb * nb.saturating_sub(1) / 2))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Start,
    End,
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum ConnectError {
    #[error("{0}")]
    Precondition(String),
    #[error("pair ({0}, {1}) is not in G_alpha_1")]
    NotLarge(usize, usize),
    /// No admissible vertex at climbing step `step` (1-based, producing `u_{step+1}`).
    #[error("no candidate at escalation step {step} on the {side:?} side")]
    Escalation { side: Side, step: usize },
    #[error("no pair (x, y) joins the two half-paths")]
    Join,
    #[error("exact fallback gave up: {0}")]
    Fallback(String),
}

impl From<Error> for ConnectError {
    fn from(e: Error) -> Self {
        ConnectError::Precondition(e.to_string())
    }
}

/// How the climb picks among admissible vertices.
#[derive(Clone, Debug)]
pub enum Chooser {
    Lowest,
    Random(ChaCha8Rng),
}

impl Chooser {
    pub fn seeded(seed: u64) -> Self {
        Chooser::Random(rng_from(seed))
    }

    fn pick(&mut self, cands: &VertexSet) -> Option<usize> {
        match self {
            Chooser::Lowest => cands.first(),
            Chooser::Random(rng) => cands.to_vec().choose(rng).copied(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ConnectOptions {
    pub chooser: Chooser,
    /// On failure, search for any order-14 path with the exact solver.
    pub solver_fallback: bool,
    pub fallback_budget: Budget,
}

impl Default for ConnectOptions {
    fn default() -> Self {
        ConnectOptions {
            chooser: Chooser::Lowest,
            solver_fallback: false,
            fallback_budget: Budget::nodes(2_000_000),
        }
    }
}

/// A hypergraph with its `G_alpha` graphs and co-neighbourhood table
/// precomputed, so many connections can share the work.
pub struct ConnectContext<'a> {
    h: &'a Hypergraph3,
    schedule: AlphaSchedule,
    large: Vec<PairGraph>,
    nb: CoNeighborhoods,
}

impl<'a> ConnectContext<'a> {
    pub fn new(h: &'a Hypergraph3, schedule: AlphaSchedule) -> Result<Self> {
        schedule.check()?;
        let large = schedule
            .alphas
            .iter()
            .map(|a| h.large_pair_graph(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(ConnectContext {
            h,
            schedule,
            large,
            nb: h.co_neighborhoods(),
        })
    }

    pub fn hypergraph(&self) -> &Hypergraph3 {
        self.h
    }

    pub fn schedule(&self) -> &AlphaSchedule {
        &self.schedule
    }

    /// `G_{alpha_i}` for `i` in `1..=5`.
    pub fn large(&self, i: usize) -> &PairGraph {
        &self.large[i - 1]
    }

    pub fn co_neighbors(&self) -> &CoNeighborhoods {
        &self.nb
    }

    /// Climbs from `e = (u0, u1)` to an order-6 path `u0 .. u5` with
    /// `u_s u_{s+1}` in `G_{alpha_{s+1}}`. New vertices avoid `avoid`.
    pub fn escalate(&self, e: (usize, usize), avoid: &VertexSet, chooser: &mut Chooser) -> std::result::Result<TightPath, ConnectError> {
        self.escalate_side(e, avoid, chooser, Side::Start)
    }

    fn escalate_side(
        &self,
        e: (usize, usize),
        avoid: &VertexSet,
        chooser: &mut Chooser,
        side: Side,
    ) -> std::result::Result<TightPath, ConnectError> {
        let n = self.h.n();
        if e.0 >= n || e.1 >= n || e.0 == e.1 {
            return Err(ConnectError::Precondition(format!("({}, {}) is not a pair of vertices", e.0, e.1)));
        }
        if !self.large(1).has_edge(e.0, e.1) {
            return Err(ConnectError::NotLarge(e.0, e.1));
        }
        let mut seq = vec![e.0, e.1];
        let mut used = avoid.clone();
        used.insert(e.0);
        used.insert(e.1);
        for step in 1..=4 {
            let (a, b) = (seq[step - 1], seq[step]);
            let mut cands = self.nb.get(a, b).intersection(self.large(step + 1).neighbors(b));
            cands.subtract(&used);
            let Some(c) = chooser.pick(&cands) else {
                return Err(ConnectError::Escalation { side, step });
            };
            seq.push(c);
            used.insert(c);
        }
        Ok(TightPath::new(self.h, seq).expect("climb only follows edges"))
    }

    /// A length-12 tight path with endpairs `e` and `f` whose other ten
    /// vertices avoid `forbidden`.
    pub fn connect(
        &self,
        e: (usize, usize),
        f: (usize, usize),
        forbidden: &VertexSet,
        opts: &mut ConnectOptions,
    ) -> std::result::Result<TightPath, ConnectError> {
        let n = self.h.n();
        if [e.0, e.1].iter().any(|v| *v == f.0 || *v == f.1) {
            return Err(ConnectError::Precondition("endpairs must be disjoint".into()));
        }
        if forbidden.universe() != n {
            return Err(ConnectError::Precondition("forbidden set on a different ground set".into()));
        }
        let quick = self.connect_greedy(e, f, forbidden, &mut opts.chooser);
        match quick {
            Err(err @ (ConnectError::Escalation { .. } | ConnectError::Join)) if opts.solver_fallback => {
                self.fallback(e, f, forbidden, opts.fallback_budget).map_err(|fb| match fb {
                    ConnectError::Fallback(_) => err,
                    other => other,
                })
            }
            other => other,
        }
    }

    fn connect_greedy(
        &self,
        e: (usize, usize),
        f: (usize, usize),
        forbidden: &VertexSet,
        chooser: &mut Chooser,
    ) -> std::result::Result<TightPath, ConnectError> {
        let mut avoid = forbidden.clone();
        avoid.insert(f.0);
        avoid.insert(f.1);
        let pu = self.escalate_side(e, &avoid, chooser, Side::Start)?;
        let mut avoid_v = forbidden.union(&pu.vertex_set(self.h.n()));
        avoid_v.remove(f.0);
        avoid_v.remove(f.1);
        let pv = self.escalate_side(f, &avoid_v, chooser, Side::End)?;
        let (u4, u5) = (pu.vertices()[4], pu.vertices()[5]);
        let (v4, v5) = (pv.vertices()[4], pv.vertices()[5]);
        let mut used = avoid_v.union(&pv.vertex_set(self.h.n()));
        used.union_with(forbidden);
        let b = self.nb.get(u4, u5).difference(&used);
        let r = self.nb.get(v4, v5).difference(&used);
        // try x with the most partners first
        let mut xs: Vec<(usize, VertexSet)> = b
            .iter()
            .map(|x| {
                let mut ys = r.intersection(self.nb.get(u5, x));
                ys.intersect_with(self.nb.get(x, v5));
                ys.remove(x);
                (x, ys)
            })
            .filter(|(_, ys)| !ys.is_empty())
            .collect();
        xs.sort_by_key(|(x, ys)| (std::cmp::Reverse(ys.len()), *x));
        let Some((x, ys)) = xs.first() else {
            return Err(ConnectError::Join);
        };
        let y = ys.first().expect("filtered non-empty");
        let mut seq = pu.into_vertices();
        seq.push(*x);
        seq.push(y);
        seq.extend(pv.vertices().iter().rev());
        let path = TightPath::new(self.h, seq).expect("join only follows edges");
        debug_assert_eq!(path.order(), 14);
        Ok(path)
    }

    fn fallback(
        &self,
        e: (usize, usize),
        f: (usize, usize),
        forbidden: &VertexSet,
        budget: Budget,
    ) -> std::result::Result<TightPath, ConnectError> {
        let allowed = forbidden.complement();
        match find_tight_path(self.h, e, f, OrderBounds::exactly(14), &allowed, budget)? {
            Search::Found(p) => Ok(p),
            Search::Absent => Err(ConnectError::Fallback("no order-14 path exists".into())),
            Search::Unknown => Err(ConnectError::Fallback("budget exhausted".into())),
        }
    }
}

/// Outcome of [`connect_trials`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrialSummary {
    pub trials: usize,
    pub successes: usize,
    /// Successes whose path was re-checked and has length 12.
    pub verified: usize,
}

/// Connects `trials` random pairs of disjoint `G_{alpha_1}` edges, greedy
/// climb only, and re-verifies every returned path.
pub fn connect_trials(h: &Hypergraph3, trials: usize, seed: u64) -> Result<TrialSummary> {
    let ctx = ConnectContext::new(h, AlphaSchedule::standard())?;
    let edges: Vec<(usize, usize)> = ctx.large(1).edges().collect();
    let mut rng = rng_from(seed);
    let mut out = TrialSummary {
        trials,
        successes: 0,
        verified: 0,
    };
    if edges.len() < 2 {
        out.trials = 0;
        return Ok(out);
    }
    let none = VertexSet::empty(h.n());
    let mut opts = ConnectOptions {
        chooser: Chooser::seeded(rng.gen()),
        ..Default::default()
    };
    for _ in 0..trials {
        let (e, f) = loop {
            let e = *edges.choose(&mut rng).expect("non-empty");
            let f = *edges.choose(&mut rng).expect("non-empty");
            if e.0 != f.0 && e.0 != f.1 && e.1 != f.0 && e.1 != f.1 {
                break (if rng.gen() { e } else { (e.1, e.0) }, if rng.gen() { f } else { (f.1, f.0) });
            }
        };
        if let Ok(p) = ctx.connect(e, f, &none, &mut opts) {
            out.successes += 1;
            let v = p.vertices();
            if v.len() == 14
                && crate::verify::verify_path(h, v).is_ok()
                && (v[0], v[1]) == e
                && (v[13], v[12]) == f
            {
                out.verified += 1;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::random_h3;
    use crate::verify::verify_path;
    use proptest::prelude::*;

    #[test]
    fn g_values() {
        let c = frac(799, 1000);
        assert_eq!(g(&c, &frac(39, 100)).unwrap(), frac(409, 610));
        assert_eq!(g(&c, &frac(48, 100)).unwrap(), frac(319, 520));
        assert_eq!(g(&c, &frac(58, 100)).unwrap(), frac(219, 420));
        assert_eq!(g(&c, &frac(65, 100)).unwrap(), frac(149, 350));
        assert_eq!(g(&c, &int(0)).unwrap(), c);
        assert!(g(&c, &frac(8, 10)).is_err());
        assert!(g(&int(1), &frac(1, 2)).is_err());
    }

    #[test]
    fn schedule_is_feasible() {
        let s = AlphaSchedule::standard();
        s.check().unwrap();
        for slack in s.slacks().unwrap() {
            assert!(slack > int(0));
        }
        let mut bad = s.clone();
        bad.alphas[1] = frac(34, 100);
        assert!(bad.check().is_err());
    }

    #[test]
    fn margins_grow_past_twenty() {
        let s = AlphaSchedule::standard();
        let n0 = min_n_for_margin(&s, 20).unwrap();
        for i in 0..4 {
            let m = step_margin(n0, &s.alphas[i], &s.alphas[i + 1], &s.c).unwrap();
            assert!(m >= int(20), "step {i} at n = {n0}: {m}");
        }
        let below = (0..4).any(|i| step_margin(n0 - 1, &s.alphas[i], &s.alphas[i + 1], &s.c).unwrap() < int(20));
        assert!(below);
        // .33(n-2) + .67(n-1) + 20 > n + 18
        let n = 1000i128;
        assert!(frac(33, 100) * int(n - 2) + frac(67, 100) * int(n - 1) + int(20) > int(n + 18));
    }

    #[test]
    fn claim_f_verdicts() {
        let k = Hypergraph3::complete(12).unwrap();
        assert_eq!(check_claim_f(&k, &frac(1, 3), &frac(799, 1000)).unwrap(), ClaimVerdict::Holds);
        let sparse = random_h3(20, 0.3, 1).unwrap();
        assert_eq!(
            check_claim_f(&sparse, &frac(1, 3), &frac(799, 1000)).unwrap(),
            ClaimVerdict::Inapplicable
        );
        let h = random_h3(60, 0.93, 5).unwrap();
        let (d1, _) = h.min_degrees().unwrap();
        assert!(int(d1 as i128) >= frac(8, 10) * int(binom2(59) as i128));
        assert_eq!(check_claim_f(&h, &frac(1, 3), &frac(8, 10)).unwrap(), ClaimVerdict::Holds);
    }

    #[test]
    fn pi_examples() {
        let b = VertexSet::from_iter(10, 0..5);
        let r = VertexSet::from_iter(10, 5..10);
        assert_eq!(pi_lower_bound(&b, &r).unwrap(), (25, 10));
        let b = VertexSet::from_iter(10, 0..4);
        assert_eq!(pi_lower_bound(&b, &b).unwrap(), (6, 6));
        assert!(pi_lower_bound(&r, &b).is_err());
    }

    fn pi_by_enumeration(b: &VertexSet, r: &VertexSet) -> u64 {
        let n = b.universe();
        let mut c = 0;
        for x in 0..n {
            for y in (x + 1)..n {
                if b.contains(x) && r.contains(y) || b.contains(y) && r.contains(x) {
                    c += 1;
                }
            }
        }
        c
    }

    proptest! {
        #[test]
        fn pi_count_matches_enumeration(bs in proptest::collection::btree_set(0usize..30, 0..15),
                                        rs in proptest::collection::btree_set(0usize..30, 15..30)) {
            let b = VertexSet::from_iter(30, bs);
            let r = VertexSet::from_iter(30, rs);
            let (count, bound) = pi_lower_bound(&b, &r).unwrap();
            prop_assert_eq!(count, pi_by_enumeration(&b, &r));
            prop_assert!(count >= bound);
        }
    }

    #[test]
    fn escalation_on_complete_uses_lowest_vertices() {
        let k = Hypergraph3::complete(12).unwrap();
        let ctx = ConnectContext::new(&k, AlphaSchedule::standard()).unwrap();
        let avoid = VertexSet::from_iter(12, [2, 4]);
        let p = ctx.escalate((7, 9), &avoid, &mut Chooser::Lowest).unwrap();
        assert_eq!(p.vertices(), &[7, 9, 0, 1, 3, 5]);
    }

    #[test]
    fn escalation_fails_at_step_one() {
        let mut h = Hypergraph3::complete(12).unwrap();
        // (0, 1) keeps co-degree only inside the forbidden set {2..=6}
        for w in 7..12 {
            h.remove_edge(0, 1, w).unwrap();
        }
        let ctx = ConnectContext::new(&h, AlphaSchedule::standard()).unwrap();
        let avoid = VertexSet::from_iter(12, 2..7);
        assert_eq!(
            ctx.escalate((0, 1), &avoid, &mut Chooser::Lowest),
            Err(ConnectError::Escalation { side: Side::Start, step: 1 })
        );
    }

    #[test]
    fn connect_on_complete() {
        let k = Hypergraph3::complete(24).unwrap();
        let ctx = ConnectContext::new(&k, AlphaSchedule::standard()).unwrap();
        let forbidden = VertexSet::from_iter(24, [0, 5, 6]);
        let p = ctx.connect((1, 2), (3, 4), &forbidden, &mut ConnectOptions::default()).unwrap();
        assert_eq!(p.order(), 14);
        assert_eq!(p.length(), 12);
        assert_eq!(p.start_pair(), (1, 2));
        assert_eq!(p.end_pair(), (3, 4));
        assert!(p.vertices().iter().all(|v| !forbidden.contains(*v)));
        assert!(verify_path(&k, p.vertices()).is_ok());
        assert!(matches!(
            ctx.connect((1, 2), (2, 4), &forbidden, &mut ConnectOptions::default()),
            Err(ConnectError::Precondition(_))
        ));
    }

    #[test]
    fn fallback_cannot_beat_a_vertex_shortage() {
        // too few vertices for a climb that avoids everything: n = 14 exactly
        let k = Hypergraph3::complete(14).unwrap();
        let ctx = ConnectContext::new(&k, AlphaSchedule::standard()).unwrap();
        let none = VertexSet::empty(14);
        let p = ctx.connect((0, 1), (2, 3), &none, &mut ConnectOptions::default()).unwrap();
        assert_eq!(p.order(), 14);
        let forbidden = VertexSet::from_iter(14, [13]);
        let mut opts = ConnectOptions {
            solver_fallback: true,
            ..Default::default()
        };
        // 13 usable vertices cannot host an order-14 path
        assert!(matches!(
            ctx.connect((0, 1), (2, 3), &forbidden, &mut opts),
            Err(ConnectError::Join | ConnectError::Escalation { .. })
        ));
    }

    #[test]
    fn random_chooser_is_deterministic() {
        let h = random_h3(40, 0.95, 2).unwrap();
        let ctx = ConnectContext::new(&h, AlphaSchedule::standard()).unwrap();
        let none = VertexSet::empty(40);
        let (e, f) = ((0, 1), (2, 3));
        let a = ctx.connect(e, f, &none, &mut ConnectOptions { chooser: Chooser::seeded(4), ..Default::default() });
        let b = ctx.connect(e, f, &none, &mut ConnectOptions { chooser: Chooser::seeded(4), ..Default::default() });
        assert_eq!(a, b);
        assert!(verify_path(&h, a.unwrap().vertices()).is_ok());
    }

    #[test]
    fn trials_on_dense_random() {
        let h = crate::constructions::random_h3(40, 0.95, 4).unwrap();
        let t = connect_trials(&h, 20, 9).unwrap();
        assert_eq!(t.trials, 20);
        assert_eq!(t.successes, t.verified);
        assert!(t.successes >= 18, "{t:?}");
        assert_eq!(connect_trials(&h, 20, 9).unwrap(), t);
        assert_eq!(connect_trials(&Hypergraph3::empty(6).unwrap(), 5, 0).unwrap().trials, 0);
    }
}
