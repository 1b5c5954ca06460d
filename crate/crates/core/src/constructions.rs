//! Instance generators: the three extremal constructions without a tight
//! Hamiltonian cycle, random and complete hypergraphs, and a search for
//! dense non-Hamiltonian witnesses at small `n`.
//!
//! In every construction `X` is the prefix `{0, .., |X| - 1}`.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::counting::Search;
use crate::error::{out_of_range, Error, Result};
use crate::hypergraph::{binom2, binom3, triple_rank, triple_unrank, Hypergraph3};
use crate::rational::{frac, Rational};
use crate::rng::{stream_rng, streams};
use crate::solver::{find_tight_ham_cycle, Budget};

/// `|X|` in construction (i): `ceil((n + 1) / 3)`.
pub fn x_size_i(n: usize) -> usize {
    (n + 1).div_ceil(3)
}

/// `|X|` in construction (ii): `ceil(2n / 3)`.
pub fn x_size_ii(n: usize) -> usize {
    (2 * n).div_ceil(3)
}

/// `|X|` in construction (iii): `floor(n / 3) - 1`.
pub fn x_size_iii(n: usize) -> usize {
    (n / 3).saturating_sub(1)
}

fn in_x(x: usize, a: usize, b: usize, c: usize) -> usize {
    (a < x) as usize + (b < x) as usize + (c < x) as usize
}

/// Edges are the triples with `|e ∩ X| != 2`, `|X| = ceil((n+1)/3)`.
pub fn construction_i(n: usize) -> Result<Hypergraph3> {
    if n < 4 {
        return Err(Error::TooFewVertices { needed: 4, n });
    }
    let x = x_size_i(n);
    Hypergraph3::from_predicate(n, |a, b, c| in_x(x, a, b, c) != 2)
}

/// Edges are the triples with `|e ∩ X| != 2`, `|X| = ceil(2n/3)`.
pub fn construction_ii(n: usize) -> Result<Hypergraph3> {
    if n < 4 {
        return Err(Error::TooFewVertices { needed: 4, n });
    }
    let x = x_size_ii(n);
    Hypergraph3::from_predicate(n, |a, b, c| in_x(x, a, b, c) != 2)
}

/// Edges are the triples meeting `X`, `|X| = floor(n/3) - 1`. Every matching
/// has at most `|X|` edges, one short of what a tight Hamiltonian cycle needs.
pub fn construction_iii(n: usize) -> Result<Hypergraph3> {
    if n < 6 {
        return Err(Error::TooFewVertices { needed: 6, n });
    }
    let x = x_size_iii(n);
    Hypergraph3::from_predicate(n, |a, b, c| in_x(x, a, b, c) > 0)
}

/// Each triple independently with probability `p`, from the generator stream of `seed`.
pub fn random_h3(n: usize, p: f64, seed: u64) -> Result<Hypergraph3> {
    if !(0.0..=1.0).contains(&p) {
        return Err(out_of_range("p", p, "[0, 1]"));
    }
    let mut rng = stream_rng(seed, streams::GENERATOR);
    Hypergraph3::from_predicate(n, |_, _, _| rng.gen_bool(p))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    I,
    Ii,
    Iii,
    Random,
    Complete,
}

impl std::str::FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "i" => Ok(Family::I),
            "ii" => Ok(Family::Ii),
            "iii" => Ok(Family::Iii),
            "random" => Ok(Family::Random),
            "complete" => Ok(Family::Complete),
            _ => Err(out_of_range("family", s, "{i, ii, iii, random, complete}")),
        }
    }
}

impl std::fmt::Display for Family {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Family::I => "i",
            Family::Ii => "ii",
            Family::Iii => "iii",
            Family::Random => "random",
            Family::Complete => "complete",
        })
    }
}

pub fn generate(family: Family, n: usize, p: f64, seed: u64) -> Result<Hypergraph3> {
    match family {
        Family::I => construction_i(n),
        Family::Ii => construction_ii(n),
        Family::Iii => construction_iii(n),
        Family::Random => random_h3(n, p, seed),
        Family::Complete => Hypergraph3::complete(n),
    }
}

/// `delta_1(H) / C(n-1, 2)`.
pub fn min_deg_ratio(h: &Hypergraph3) -> Result<Rational> {
    let (d1, _) = h.min_degrees()?;
    Ok(frac(d1 as i128, binom2(h.n() - 1) as i128))
}

/// Largest `n` for [`threshold_witness_search`].
pub const WITNESS_MAX_N: usize = 14;
/// Up to this `n` the witness search enumerates every hypergraph.
pub const WITNESS_EXHAUSTIVE_N: usize = 6;

#[derive(Clone, Debug, Serialize)]
pub struct WitnessResult {
    pub n: usize,
    /// Largest minimum vertex degree seen on a certified non-Hamiltonian hypergraph.
    pub best_delta1: usize,
    pub witness: Option<Hypergraph3>,
    /// True when the search was exhaustive, so `h(n) = best_delta1 + 1` exactly.
    pub certified: bool,
    pub moves: u64,
}

impl WitnessResult {
    /// `h(n)` when certified.
    pub fn threshold(&self) -> Option<usize> {
        self.certified.then_some(self.best_delta1 + 1)
    }
}

fn certified_absent(h: &Hypergraph3, budget: Budget) -> bool {
    matches!(find_tight_ham_cycle(h, budget), Ok(Search::Absent))
}

/// Searches for non-Hamiltonian hypergraphs with large minimum vertex degree.
///
/// For `n <= 6` every hypergraph is examined. Above that, a hill climb over
/// edge flips starts from the constructions and only moves to hypergraphs the
/// solver certifies non-Hamiltonian; the result is then a lower bound on
/// `h(n) - 1` and is flagged uncertified.
pub fn threshold_witness_search(n: usize, budget: u64, seed: u64) -> Result<WitnessResult> {
    if n < 3 {
        return Err(Error::TooFewVertices { needed: 3, n });
    }
    if n > WITNESS_MAX_N {
        return Err(out_of_range("n", n, "3..=14 for the witness search"));
    }
    if n <= WITNESS_EXHAUSTIVE_N {
        return exhaustive_witness(n);
    }
    hill_climb(n, budget, seed)
}

fn exhaustive_witness(n: usize) -> Result<WitnessResult> {
    let m = binom3(n);
    let mut vmask = vec![0u32; n];
    for r in 0..m {
        let (a, b, c) = triple_unrank(r);
        for v in [a, b, c] {
            vmask[v] |= 1 << r;
        }
    }
    let mut best: Option<(usize, u32)> = None;
    for mask in 0u32..(1u32 << m) {
        let d1 = vmask.iter().map(|&v| (mask & v).count_ones() as usize).min().unwrap_or(0);
        if best.is_some_and(|(b, _)| d1 <= b) {
            continue;
        }
        let h = Hypergraph3::from_predicate(n, |a, b, c| mask >> triple_rank(a, b, c) & 1 == 1)?;
        if certified_absent(&h, Budget::UNLIMITED) {
            best = Some((d1, mask));
        }
    }
    let (d1, mask) = best.expect("the empty hypergraph has no cycle");
    let witness = Hypergraph3::from_predicate(n, |a, b, c| mask >> triple_rank(a, b, c) & 1 == 1)?;
    Ok(WitnessResult {
        n,
        best_delta1: d1,
        witness: Some(witness),
        certified: true,
        moves: 1 << m,
    })
}

fn hill_climb(n: usize, budget: u64, seed: u64) -> Result<WitnessResult> {
    let mut rng = stream_rng(seed, streams::WITNESS);
    let solver_budget = Budget::nodes(2_000_000);
    let mut starts: Vec<Hypergraph3> = Vec::new();
    for g in [construction_i(n), construction_ii(n), construction_iii(n)].into_iter().flatten() {
        if certified_absent(&g, solver_budget) {
            starts.push(g);
        }
    }
    if starts.is_empty() {
        starts.push(Hypergraph3::empty(n)?);
    }
    let delta = |h: &Hypergraph3| h.vertex_degrees().into_iter().min().unwrap_or(0);
    let mut best = starts
        .iter()
        .max_by_key(|h| delta(h))
        .cloned()
        .expect("at least one start");
    let mut best_d = delta(&best);
    let restarts = starts.len() as u64;
    let per_restart = (budget / restarts).max(1);
    let mut moves = 0;
    for start in &starts {
        let mut cur = start.clone();
        let mut cur_d = delta(&cur);
        for _ in 0..per_restart {
            moves += 1;
            let degs = cur.vertex_degrees();
            let low: Vec<usize> = (0..n).filter(|&v| degs[v] == cur_d).collect();
            let v = *low.choose(&mut rng).expect("n >= 3");
            // add a missing edge at a minimum-degree vertex, sometimes trading one away
            let missing: Vec<(usize, usize)> = (0..n)
                .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
                .filter(|&(a, b)| a != v && b != v && !cur.has_edge(v, a, b))
                .collect();
            let Some(&(a, b)) = missing.choose(&mut rng) else { break };
            let mut next = cur.clone();
            next.add_edge(v, a, b)?;
            if rng.gen_bool(0.3) {
                let present: Vec<_> = next.edges().filter(|&(x, y, z)| ![x, y, z].contains(&v)).collect();
                if let Some(&(x, y, z)) = present.choose(&mut rng) {
                    next.remove_edge(x, y, z)?;
                }
            }
            let d = delta(&next);
            if d < cur_d || !certified_absent(&next, solver_budget) {
                continue;
            }
            cur = next;
            cur_d = d;
            if cur_d > best_d {
                best_d = cur_d;
                best = cur.clone();
            }
        }
    }
    Ok(WitnessResult {
        n,
        best_delta1: best_d,
        witness: Some(best),
        certified: false,
        moves,
    })
}
