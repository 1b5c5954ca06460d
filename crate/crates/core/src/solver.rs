//! Exact search: tight Hamiltonian cycles, tight paths between endpairs, and
//! maximum matchings.
//!
//! Searches are bounded by a node budget. Running out is reported as
//! [`Search::Unknown`], never as absence.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::counting::Search;
use crate::error::{out_of_range, Error, Result};
use crate::hypergraph::Hypergraph3;
use crate::verify::{verify_cycle, verify_path, Violation};
use crate::vertex_set::VertexSet;

/// A tight path, stored as its vertex sequence `v1 .. vt`.
///
/// The endpairs are the ordered pairs `(v1, v2)` and `(vt, v(t-1))`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TightPath {
    vertices: Vec<usize>,
}

impl TightPath {
    /// Checks the sequence against `h` before accepting it.
    pub fn new(h: &Hypergraph3, vertices: Vec<usize>) -> std::result::Result<Self, Violation> {
        verify_path(h, &vertices)?;
        Ok(TightPath { vertices })
    }

    /// For sequences already known to be valid (e.g. produced by splicing two
    /// verified paths). Debug builds still assert length.
    pub fn from_verified(vertices: Vec<usize>) -> Self {
        debug_assert!(vertices.len() >= 3);
        TightPath { vertices }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<usize> {
        self.vertices
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.vertices.len()
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len() - 2
    }

    pub fn start_pair(&self) -> (usize, usize) {
        (self.vertices[0], self.vertices[1])
    }

    pub fn end_pair(&self) -> (usize, usize) {
        let t = self.vertices.len();
        (self.vertices[t - 1], self.vertices[t - 2])
    }

    pub fn reversed(&self) -> TightPath {
        let mut v = self.vertices.clone();
        v.reverse();
        TightPath { vertices: v }
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.vertices.iter().copied())
    }

    /// Vertices other than the two endpairs.
    pub fn interior(&self) -> &[usize] {
        let t = self.vertices.len();
        if t <= 4 {
            &[]
        } else {
            &self.vertices[2..t - 2]
        }
    }
}

/// A tight cycle, stored as one rotation of its cyclic sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightCycle {
    vertices: Vec<usize>,
}

impl TightCycle {
    pub fn new(h: &Hypergraph3, vertices: Vec<usize>) -> std::result::Result<Self, Violation> {
        verify_cycle(h, &vertices)?;
        Ok(TightCycle { vertices })
    }

    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Largest `n` for the Hamiltonian cycle search (vertex sets fit a `u64`).
pub const HAM_MAX_N: usize = 64;
/// Up to this `n` the failure memo is a dense bitmap, above it a hash set.
const DENSE_MEMO_MAX_N: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: u64,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget { max_nodes: u64::MAX };

    pub fn nodes(max_nodes: u64) -> Self {
        Budget { max_nodes }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget { max_nodes: 200_000_000 }
    }
}

enum Memo {
    Dense { bits: Vec<u64>, n: usize, v1: usize },
    Sparse(HashSet<(u64, u8, u8)>),
}

impl Memo {
    fn new(n: usize) -> Self {
        if n <= DENSE_MEMO_MAX_N {
            let states = (1usize << n.saturating_sub(2)) * n * n;
            Memo::Dense {
                bits: vec![0; states.div_ceil(64)],
                n,
                v1: 0,
            }
        } else {
            Memo::Sparse(HashSet::new())
        }
    }

    fn reset(&mut self, new_v1: usize) {
        match self {
            Memo::Dense { bits, v1, .. } => {
                bits.iter_mut().for_each(|w| *w = 0);
                *v1 = new_v1;
            }
            Memo::Sparse(s) => s.clear(),
        }
    }

    /// Drops the always-present bits 0 and `v1` from the mask.
    fn dense_index(n: usize, v1: usize, mask: u64, a: usize, b: usize) -> usize {
        let m = mask >> 1;
        let low = m & ((1u64 << (v1 - 1)) - 1);
        let high = (m >> v1) << (v1 - 1);
        (((low | high) as usize) * n + a) * n + b
    }

    fn contains(&self, mask: u64, a: usize, b: usize) -> bool {
        match self {
            Memo::Dense { bits, n, v1 } => {
                let i = Self::dense_index(*n, *v1, mask, a, b);
                (bits[i >> 6] >> (i & 63)) & 1 == 1
            }
            Memo::Sparse(s) => s.contains(&(mask, a as u8, b as u8)),
        }
    }

    fn insert(&mut self, mask: u64, a: usize, b: usize) {
        match self {
            Memo::Dense { bits, n, v1 } => {
                let i = Self::dense_index(*n, *v1, mask, a, b);
                bits[i >> 6] |= 1u64 << (i & 63);
            }
            Memo::Sparse(s) => {
                s.insert((mask, a as u8, b as u8));
            }
        }
    }
}

struct HamSearch {
    n: usize,
    full: u64,
    nb: Vec<u64>,
    nodes: u64,
    max_nodes: u64,
    v1: usize,
    /// Admissible last vertices: `{0, v1, z}` an edge and `z > v1`.
    closers: u64,
    seq: Vec<usize>,
    memo: Memo,
}

enum Step {
    Found,
    Failed,
    OutOfBudget,
}

impl HamSearch {
    #[inline]
    fn nb(&self, a: usize, b: usize) -> u64 {
        self.nb[a * self.n + b]
    }

    fn dfs(&mut self, mask: u64, a: usize, b: usize) -> Step {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Step::OutOfBudget;
        }
        if mask == self.full {
            let ok = self.closers >> b & 1 == 1 && self.nb(a, b) & 1 == 1;
            return if ok { Step::Found } else { Step::Failed };
        }
        let free = self.full & !mask;
        // the last vertex of the sequence is still to be placed
        if free & self.closers == 0 {
            return Step::Failed;
        }
        if self.memo.contains(mask, a, b) {
            return Step::Failed;
        }
        let mut cand = self.nb(a, b) & free;
        if free.count_ones() == 1 {
            cand &= self.closers;
        }
        while cand != 0 {
            let c = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            self.seq.push(c);
            match self.dfs(mask | 1u64 << c, b, c) {
                Step::Found => return Step::Found,
                Step::OutOfBudget => return Step::OutOfBudget,
                Step::Failed => {}
            }
            self.seq.pop();
        }
        self.memo.insert(mask, a, b);
        Step::Failed
    }
}

/// Searches for a tight Hamiltonian cycle.
///
/// The sequence starts at vertex 0, and the second vertex is smaller than
/// the last one, so each cycle is reached exactly once. For `n = 3` the cycle
/// is the single edge `{0, 1, 2}`.
pub fn find_tight_ham_cycle(h: &Hypergraph3, budget: Budget) -> Result<Search<TightCycle>> {
    let n = h.n();
    if n < 3 {
        return Err(Error::TooFewVertices { needed: 3, n });
    }
    if n > HAM_MAX_N {
        return Err(out_of_range("n", n, "3..=64 for the exact cycle search"));
    }
    if n == 3 {
        return Ok(if h.has_edge(0, 1, 2) {
            Search::Found(TightCycle { vertices: vec![0, 1, 2] })
        } else {
            Search::Absent
        });
    }
    let mut nb = vec![0u64; n * n];
    for (a, b, c) in h.edges() {
        nb[a * n + b] |= 1 << c;
        nb[b * n + a] |= 1 << c;
        nb[a * n + c] |= 1 << b;
        nb[c * n + a] |= 1 << b;
        nb[b * n + c] |= 1 << a;
        nb[c * n + b] |= 1 << a;
    }
    // every vertex lies in n edges of a tight cycle on n >= 4 vertices
    let mut deg = vec![0usize; n];
    for (a, b, c) in h.edges() {
        deg[a] += 1;
        deg[b] += 1;
        deg[c] += 1;
    }
    if deg.iter().any(|&d| d < 3) {
        return Ok(Search::Absent);
    }
    let full = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut s = HamSearch {
        n,
        full,
        nb,
        nodes: 0,
        max_nodes: budget.max_nodes,
        v1: 0,
        closers: 0,
        seq: Vec::with_capacity(n),
        memo: Memo::new(n),
    };
    for v1 in 1..n {
        let above = if v1 + 1 >= 64 { 0 } else { full & !((1u64 << (v1 + 1)) - 1) };
        let closers = s.nb(0, v1) & above;
        if closers == 0 {
            continue;
        }
        s.v1 = v1;
        s.closers = closers;
        s.memo.reset(v1);
        s.seq.clear();
        s.seq.extend([0, v1]);
        match s.dfs(1 | 1u64 << v1, 0, v1) {
            Step::Found => {
                let c = TightCycle::new(h, s.seq.clone()).expect("search produced an invalid cycle");
                return Ok(Search::Found(c));
            }
            Step::OutOfBudget => return Ok(Search::Unknown),
            Step::Failed => {}
        }
    }
    Ok(Search::Absent)
}

/// Order limits for [`find_tight_path`], inclusive.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OrderBounds {
    pub min: usize,
    pub max: usize,
}

impl OrderBounds {
    pub fn exactly(k: usize) -> Self {
        OrderBounds { min: k, max: k }
    }

    pub fn at_most(k: usize) -> Self {
        OrderBounds { min: 4, max: k }
    }
}

struct PathSearch<'a> {
    h: &'a Hypergraph3,
    f: (usize, usize),
    bounds: OrderBounds,
    interior: VertexSet,
    nodes: u64,
    max_nodes: u64,
    seq: Vec<usize>,
    visited: VertexSet,
    memo: HashSet<(Vec<u64>, usize, usize)>,
}

impl PathSearch<'_> {
    fn dfs(&mut self) -> Step {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Step::OutOfBudget;
        }
        let t = self.seq.len();
        let (a, b) = (self.seq[t - 2], self.seq[t - 1]);
        let (f0, f1) = self.f;
        if t + 2 >= self.bounds.min && t + 2 <= self.bounds.max && self.h.has_edge(a, b, f1) && self.h.has_edge(b, f1, f0) {
            self.seq.extend([f1, f0]);
            return Step::Found;
        }
        if t + 3 > self.bounds.max {
            return Step::Failed;
        }
        let key = (self.visited.words().to_vec(), a, b);
        if self.memo.contains(&key) {
            return Step::Failed;
        }
        let mut cand = self.h.co_neighborhood(a, b);
        cand.intersect_with(&self.interior);
        cand.subtract(&self.visited);
        for c in cand.iter() {
            self.seq.push(c);
            self.visited.insert(c);
            match self.dfs() {
                Step::Failed => {}
                other => return other,
            }
            self.visited.remove(c);
            self.seq.pop();
        }
        self.memo.insert(key);
        Step::Failed
    }
}

/// A tight path whose endpairs are `e = (v1, v2)` and `f = (vt, v(t-1))`,
/// so the sequence reads `e.0 e.1 .. f.1 f.0`. Interior vertices are drawn
/// from `allowed`.
pub fn find_tight_path(
    h: &Hypergraph3,
    e: (usize, usize),
    f: (usize, usize),
    bounds: OrderBounds,
    allowed: &VertexSet,
    budget: Budget,
) -> Result<Search<TightPath>> {
    let n = h.n();
    for v in [e.0, e.1, f.0, f.1] {
        h.check_vertex(v)?;
    }
    if e.0 == e.1 || f.0 == f.1 {
        return Err(Error::DegeneratePair(if e.0 == e.1 { e.0 } else { f.0 }));
    }
    if [e.0, e.1].iter().any(|v| *v == f.0 || *v == f.1) {
        return Err(Error::Precondition("endpairs must be disjoint".into()));
    }
    if allowed.universe() != n {
        return Err(Error::GroundSetMismatch(allowed.universe(), n));
    }
    if bounds.max < 4 || bounds.min > bounds.max {
        return Ok(Search::Absent);
    }
    let mut interior = allowed.clone();
    for v in [e.0, e.1, f.0, f.1] {
        interior.remove(v);
    }
    let mut s = PathSearch {
        h,
        f,
        bounds,
        interior,
        nodes: 0,
        max_nodes: budget.max_nodes,
        seq: vec![e.0, e.1],
        visited: VertexSet::from_iter(n, [e.0, e.1]),
        memo: HashSet::new(),
    };
    Ok(match s.dfs() {
        Step::Found => Search::Found(TightPath::new(h, s.seq).expect("search produced an invalid path")),
        Step::Failed => Search::Absent,
        Step::OutOfBudget => Search::Unknown,
    })
}

/// Result of [`max_matching`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Matching {
    pub edges: Vec<(usize, usize, usize)>,
    /// True when the matching is proven maximum.
    pub certified: bool,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

/// Largest `n` for the exact matching search.
pub const MATCHING_MAX_N: usize = 128;

fn mask3(a: usize, b: usize, c: usize) -> u128 {
    1u128 << a | 1u128 << b | 1u128 << c
}

/// Greedy vertex cover size of `edges`; a matching can use each cover vertex once.
fn greedy_cover(edges: &[u128]) -> u32 {
    let mut live: Vec<u128> = edges.to_vec();
    let mut size = 0;
    while !live.is_empty() {
        let mut deg = [0u32; 128];
        for e in &live {
            let mut m = *e;
            while m != 0 {
                deg[m.trailing_zeros() as usize] += 1;
                m &= m - 1;
            }
        }
        let (v, _) = deg.iter().enumerate().max_by_key(|(i, d)| (**d, std::cmp::Reverse(*i))).unwrap();
        live.retain(|e| e >> v & 1 == 0);
        size += 1;
    }
    size
}

fn greedy_matching(edges: &[u128]) -> Vec<u128> {
    let mut used = 0u128;
    let mut out = Vec::new();
    for &e in edges {
        if e & used == 0 {
            used |= e;
            out.push(e);
        }
    }
    out
}

struct MatchSearch {
    best: Vec<u128>,
    cur: Vec<u128>,
    nodes: u64,
    max_nodes: u64,
    exhausted: bool,
}

impl MatchSearch {
    fn rec(&mut self, live: Vec<u128>) {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            self.exhausted = true;
            return;
        }
        if self.cur.len() > self.best.len() {
            self.best = self.cur.clone();
        }
        if live.is_empty() {
            return;
        }
        let covered: u128 = live.iter().fold(0, |a, e| a | e);
        let room = covered.count_ones() / 3;
        if self.cur.len() as u32 + room <= self.best.len() as u32 {
            return;
        }
        if self.cur.len() as u32 + greedy_cover(&live) <= self.best.len() as u32 {
            return;
        }
        // branch on the vertex in the fewest live edges
        let mut deg = [u32::MAX; 128];
        for e in &live {
            let mut m = *e;
            while m != 0 {
                let v = m.trailing_zeros() as usize;
                deg[v] = if deg[v] == u32::MAX { 1 } else { deg[v] + 1 };
                m &= m - 1;
            }
        }
        let v = (0..128).min_by_key(|&i| deg[i]).unwrap();
        let bit = 1u128 << v;
        for &e in live.iter().filter(|e| *e & bit != 0) {
            let rest: Vec<u128> = live.iter().copied().filter(|f| f & e == 0).collect();
            self.cur.push(e);
            self.rec(rest);
            self.cur.pop();
            if self.exhausted {
                return;
            }
        }
        // or leave v unmatched
        let rest: Vec<u128> = live.into_iter().filter(|f| f & bit == 0).collect();
        self.rec(rest);
    }
}

/// A maximum matching by branch and bound. The greedy matching gives the first
/// lower bound, and `min(|covered| / 3, greedy vertex cover)` is the upper bound.
/// Beyond [`MATCHING_MAX_N`] or when the budget runs out, the best matching
/// found is returned uncertified.
pub fn max_matching(h: &Hypergraph3, budget: Budget) -> Matching {
    let n = h.n();
    let edges: Vec<(usize, usize, usize)> = h.edges().collect();
    if n > MATCHING_MAX_N {
        let mut used = VertexSet::empty(n);
        let mut out = Vec::new();
        for (a, b, c) in edges {
            if !used.contains(a) && !used.contains(b) && !used.contains(c) {
                used.insert(a);
                used.insert(b);
                used.insert(c);
                out.push((a, b, c));
            }
        }
        let certified = out.len() == n / 3;
        return Matching { edges: out, certified };
    }
    let masks: Vec<u128> = edges.iter().map(|&(a, b, c)| mask3(a, b, c)).collect();
    let mut s = MatchSearch {
        best: greedy_matching(&masks),
        cur: Vec::new(),
        nodes: 0,
        max_nodes: budget.max_nodes,
        exhausted: false,
    };
    if s.best.len() < n / 3 {
        s.rec(masks);
    }
    let mut out: Vec<(usize, usize, usize)> = s
        .best
        .iter()
        .map(|m| {
            let mut m = *m;
            let mut v = [0usize; 3];
            for slot in v.iter_mut() {
                *slot = m.trailing_zeros() as usize;
                m &= m - 1;
            }
            (v[0], v[1], v[2])
        })
        .collect();
    out.sort_unstable();
    Matching {
        edges: out,
        certified: !s.exhausted,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::rng_from;
    use rand::Rng;

    fn random_h(n: usize, p: f64, seed: u64) -> Hypergraph3 {
        let mut rng = rng_from(seed);
        Hypergraph3::from_predicate(n, |_, _, _| rng.gen_bool(p)).unwrap()
    }

    fn ham(h: &Hypergraph3) -> Search<TightCycle> {
        find_tight_ham_cycle(h, Budget::UNLIMITED).unwrap()
    }

    #[test]
    fn complete_graphs_are_hamiltonian() {
        for n in 3..12 {
            let k = Hypergraph3::complete(n).unwrap();
            let c = ham(&k).found().unwrap();
            assert_eq!(c.len(), n);
        }
        assert_eq!(ham(&Hypergraph3::empty(3).unwrap()), Search::Absent);
        assert_eq!(ham(&Hypergraph3::empty(7).unwrap()), Search::Absent);
    }

    #[test]
    fn a_bare_tight_cycle_is_found() {
        let order = [3, 7, 0, 5, 1, 6, 2, 4];
        let edges = (0..8).map(|i| (order[i], order[(i + 1) % 8], order[(i + 2) % 8]));
        let h = Hypergraph3::from_edges(8, edges).unwrap();
        let c = ham(&h).found().unwrap();
        for i in 0..8 {
            let (a, b, x) = (c.vertices()[i], c.vertices()[(i + 1) % 8], c.vertices()[(i + 2) % 8]);
            assert!(h.has_edge(a, b, x));
        }
        let mut h2 = h.clone();
        h2.remove_edge(order[0], order[1], order[2]).unwrap();
        assert_eq!(ham(&h2), Search::Absent);
    }

    #[test]
    fn sparse_memo_agrees_with_dense() {
        // n = 21 uses the hash-set memo
        let h = random_h(21, 0.2, 8);
        let c = ham(&h).found().unwrap();
        assert!(crate::verify::verify_hamiltonian(&h, c.vertices()).is_ok());
    }

    #[test]
    fn budget_exhaustion_is_unknown() {
        let h = Hypergraph3::empty(10).unwrap();
        // isolated vertices are rejected before any search
        assert_eq!(find_tight_ham_cycle(&h, Budget::nodes(1)).unwrap(), Search::Absent);
        let mut h = Hypergraph3::complete(12).unwrap();
        // vertex 11 only in edges with 0: search has to dig
        for (a, b, c) in Hypergraph3::complete(12).unwrap().edges() {
            if c == 11 && a != 0 {
                h.remove_edge(a, b, c).unwrap();
            }
        }
        assert_eq!(find_tight_ham_cycle(&h, Budget::nodes(5)).unwrap(), Search::Unknown);
    }

    #[test]
    fn paths_between_endpairs() {
        let k = Hypergraph3::complete(16).unwrap();
        let all = VertexSet::full(16);
        let p = find_tight_path(&k, (0, 1), (2, 3), OrderBounds::exactly(14), &all, Budget::UNLIMITED)
            .unwrap()
            .found()
            .unwrap();
        assert_eq!(p.order(), 14);
        assert_eq!(p.start_pair(), (0, 1));
        assert_eq!(p.end_pair(), (2, 3));
        assert_eq!(p.length(), 12);

        // f's vertices isolated
        let mut h = Hypergraph3::complete(10).unwrap();
        for (a, b, c) in Hypergraph3::complete(10).unwrap().edges() {
            if [a, b, c].contains(&8) || [a, b, c].contains(&9) {
                h.remove_edge(a, b, c).unwrap();
            }
        }
        let r = find_tight_path(&h, (0, 1), (8, 9), OrderBounds::at_most(10), &VertexSet::full(10), Budget::UNLIMITED);
        assert_eq!(r.unwrap(), Search::Absent);
        assert!(find_tight_path(&k, (0, 1), (1, 3), OrderBounds::at_most(8), &all, Budget::UNLIMITED).is_err());
    }

    /// All tight paths from `e` of order at most `max`, by plain enumeration.
    fn oracle_path_exists(h: &Hypergraph3, e: (usize, usize), f: (usize, usize), max: usize) -> bool {
        fn go(h: &Hypergraph3, seq: &mut Vec<usize>, f: (usize, usize), max: usize) -> bool {
            let t = seq.len();
            if t >= 2 && seq[t - 1] == f.0 && seq[t - 2] == f.1 {
                return true;
            }
            if t == max {
                return false;
            }
            for c in 0..h.n() {
                if seq.contains(&c) {
                    continue;
                }
                // f's vertices may only appear as the final two, in order
                let last = t + 1 == max;
                if c == f.0 && seq[t - 1] != f.1 || c == f.1 && last {
                    continue;
                }
                if seq[t - 1] == f.1 && c != f.0 {
                    continue;
                }
                if h.has_edge(seq[t - 2], seq[t - 1], c) {
                    seq.push(c);
                    if go(h, seq, f, max) {
                        return true;
                    }
                    seq.pop();
                }
            }
            false
        }
        go(h, &mut vec![e.0, e.1], f, max)
    }

    #[test]
    fn short_paths_agree_with_enumeration() {
        let mut agree = 0;
        for seed in 0..30 {
            let h = random_h(20, if seed % 2 == 0 { 0.9 } else { 0.05 }, seed);
            let all = VertexSet::full(20);
            for max in 4..=7 {
                let got = find_tight_path(&h, (0, 1), (2, 3), OrderBounds::at_most(max), &all, Budget::UNLIMITED).unwrap();
                let want = oracle_path_exists(&h, (0, 1), (2, 3), max);
                assert_eq!(got.is_found(), want, "seed {seed} max {max}");
                assert_ne!(got, Search::Unknown);
                agree += 1;
            }
        }
        assert_eq!(agree, 120);
    }

    #[test]
    fn matching_examples() {
        let m = max_matching(&Hypergraph3::complete(6).unwrap(), Budget::UNLIMITED);
        assert_eq!(m.len(), 2);
        assert!(m.certified);
        assert_eq!(max_matching(&Hypergraph3::empty(7).unwrap(), Budget::UNLIMITED).len(), 0);
        // every edge meets {0, 1}
        let h = Hypergraph3::from_predicate(9, |a, _, _| a < 2).unwrap();
        let m = max_matching(&h, Budget::UNLIMITED);
        assert_eq!(m.len(), 2);
        assert!(m.certified);
    }

    fn brute_matching(h: &Hypergraph3) -> usize {
        fn go(edges: &[(usize, usize, usize)], i: usize, used: u32) -> usize {
            if i == edges.len() {
                return 0;
            }
            let (a, b, c) = edges[i];
            let skip = go(edges, i + 1, used);
            let m = 1 << a | 1 << b | 1 << c;
            if used & m == 0 {
                skip.max(1 + go(edges, i + 1, used | m))
            } else {
                skip
            }
        }
        go(&h.edges().collect::<Vec<_>>(), 0, 0)
    }

    #[test]
    fn matching_agrees_with_brute_force() {
        for seed in 0..40 {
            let h = random_h(9, 0.08 + 0.01 * seed as f64, seed);
            let m = max_matching(&h, Budget::UNLIMITED);
            assert_eq!(m.len(), brute_matching(&h), "seed {seed}");
            let mut used = VertexSet::empty(9);
            for &(a, b, c) in &m.edges {
                assert!(h.has_edge(a, b, c));
                assert!(used.insert(a) && used.insert(b) && used.insert(c));
            }
        }
    }
}
