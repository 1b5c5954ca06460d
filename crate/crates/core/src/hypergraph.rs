//! Dense 3-uniform hypergraphs.
//!
//! Edges are stored as one bit per triple `a < b < c`, indexed by the colex
//! rank `C(c,3) + C(b,2) + a`. The rank order is part of the binary file
//! format and must not change.

use std::fmt;

use crate::error::{out_of_range, Error, Result};
use crate::pair_graph::PairGraph;
use crate::rational::{at_least, frac, in_open_unit, Rational};
use crate::vertex_set::VertexSet;

/// Largest supported vertex count. Bitmaps grow as `n^3 / 6` bits.
pub const MAX_VERTICES: usize = 4096;

#[inline]
pub const fn binom2(k: usize) -> usize {
    k * k.saturating_sub(1) / 2
}

#[inline]
pub const fn binom3(k: usize) -> usize {
    if k < 3 {
        0
    } else {
        k * (k - 1) * (k - 2) / 6
    }
}

/// Colex rank of the triple `{a, b, c}`; the arguments may come in any order.
#[inline]
pub fn triple_rank(a: usize, b: usize, c: usize) -> usize {
    let (a, b, c) = sort3(a, b, c);
    debug_assert!(a < b && b < c, "triple with repeated vertex");
    binom3(c) + binom2(b) + a
}

/// Inverse of [`triple_rank`]: the sorted triple with the given rank.
pub fn triple_unrank(rank: usize) -> (usize, usize, usize) {
    let mut c = 2;
    while binom3(c + 1) <= rank {
        c += 1;
    }
    let r = rank - binom3(c);
    let mut b = 1;
    while binom2(b + 1) <= r {
        b += 1;
    }
    let a = r - binom2(b);
    (a, b, c)
}

#[inline]
pub fn sort3(a: usize, b: usize, c: usize) -> (usize, usize, usize) {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    let (b, c) = if b < c { (b, c) } else { (c, b) };
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    (a, b, c)
}

/// A 3-uniform hypergraph on the labelled vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Hypergraph3 {
    n: usize,
    bits: Vec<u64>,
}

impl Hypergraph3 {
    pub fn empty(n: usize) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        Ok(Hypergraph3 {
            n,
            bits: vec![0; binom3(n).div_ceil(64)],
        })
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut h = Self::empty(n)?;
        let total = binom3(n);
        for w in h.bits.iter_mut() {
            *w = u64::MAX;
        }
        if total % 64 != 0 {
            if let Some(last) = h.bits.last_mut() {
                *last &= (1u64 << (total % 64)) - 1;
            }
        }
        Ok(h)
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize, usize)>>(n: usize, edges: I) -> Result<Self> {
        let mut h = Self::empty(n)?;
        for (a, b, c) in edges {
            h.add_edge(a, b, c)?;
        }
        Ok(h)
    }

    /// Builds the hypergraph whose edges are the triples accepted by `keep`.
    pub fn from_predicate(n: usize, mut keep: impl FnMut(usize, usize, usize) -> bool) -> Result<Self> {
        let mut h = Self::empty(n)?;
        for r in 0..binom3(n) {
            let (a, b, c) = triple_unrank(r);
            if keep(a, b, c) {
                h.bits[r >> 6] |= 1u64 << (r & 63);
            }
        }
        Ok(h)
    }

    /// Raw colex bitmap, one bit per triple rank.
    pub(crate) fn from_raw(n: usize, bits: Vec<u64>) -> Self {
        debug_assert_eq!(bits.len(), binom3(n).div_ceil(64));
        Hypergraph3 { n, bits }
    }

    pub(crate) fn raw_bits(&self) -> &[u64] {
        &self.bits
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn check_triple(&self, a: usize, b: usize, c: usize) -> Result<()> {
        for v in [a, b, c] {
            self.check_vertex(v)?;
        }
        if a == b || a == c {
            return Err(Error::DegeneratePair(a));
        }
        if b == c {
            return Err(Error::DegeneratePair(b));
        }
        Ok(())
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n })
        } else {
            Ok(())
        }
    }

    pub fn add_edge(&mut self, a: usize, b: usize, c: usize) -> Result<()> {
        self.check_triple(a, b, c)?;
        let r = triple_rank(a, b, c);
        self.bits[r >> 6] |= 1u64 << (r & 63);
        Ok(())
    }

    pub fn remove_edge(&mut self, a: usize, b: usize, c: usize) -> Result<()> {
        self.check_triple(a, b, c)?;
        let r = triple_rank(a, b, c);
        self.bits[r >> 6] &= !(1u64 << (r & 63));
        Ok(())
    }

    pub fn toggle_rank(&mut self, r: usize) {
        self.bits[r >> 6] ^= 1u64 << (r & 63);
    }

    #[inline]
    pub fn has_rank(&self, r: usize) -> bool {
        (self.bits[r >> 6] >> (r & 63)) & 1 == 1
    }

    /// Membership of `{a, b, c}`. Repeated or out-of-range vertices are never edges.
    #[inline]
    pub fn has_edge(&self, a: usize, b: usize, c: usize) -> bool {
        if a == b || b == c || a == c || a >= self.n || b >= self.n || c >= self.n {
            return false;
        }
        self.has_rank(triple_rank(a, b, c))
    }

    pub fn edge_count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Edges as sorted triples in colex order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        self.bits.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(triple_unrank(i * 64 + t))
            })
        })
    }

    pub fn deg_vertex(&self, v: usize) -> Result<usize> {
        self.check_vertex(v)?;
        let mut d = 0;
        for u in 0..self.n {
            if u == v {
                continue;
            }
            for w in (u + 1)..self.n {
                if w != v && self.has_rank(triple_rank(v, u, w)) {
                    d += 1;
                }
            }
        }
        Ok(d)
    }

    pub fn deg_pair(&self, u: usize, v: usize) -> Result<usize> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::DegeneratePair(u));
        }
        Ok((0..self.n).filter(|&w| w != u && w != v && self.has_rank(triple_rank(u, v, w))).count())
    }

    /// All vertex degrees in one pass over the edges.
    pub fn vertex_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for (a, b, c) in self.edges() {
            deg[a] += 1;
            deg[b] += 1;
            deg[c] += 1;
        }
        deg
    }

    /// Co-degree matrix, symmetric, zero diagonal.
    pub fn pair_degrees(&self) -> Vec<Vec<u32>> {
        let mut d = vec![vec![0u32; self.n]; self.n];
        for (a, b, c) in self.edges() {
            for (x, y) in [(a, b), (a, c), (b, c)] {
                d[x][y] += 1;
                d[y][x] += 1;
            }
        }
        d
    }

    /// `(delta_1, delta_2)`: minimum vertex degree and minimum co-degree.
    pub fn min_degrees(&self) -> Result<(usize, usize)> {
        if self.n < 3 {
            return Err(Error::TooFewVertices { needed: 3, n: self.n });
        }
        let d1 = self.vertex_degrees().into_iter().min().unwrap_or(0);
        let pd = self.pair_degrees();
        let mut d2 = usize::MAX;
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                d2 = d2.min(pd[u][v] as usize);
            }
        }
        Ok((d1, d2))
    }

    /// The link graph `H(v)`: `uw` is an edge iff `{v, u, w}` is.
    pub fn link_graph(&self, v: usize) -> Result<PairGraph> {
        self.check_vertex(v)?;
        let mut g = PairGraph::empty(self.n);
        for u in 0..self.n {
            if u == v {
                continue;
            }
            for w in (u + 1)..self.n {
                if w != v && self.has_rank(triple_rank(v, u, w)) {
                    g.add_edge(u, w);
                }
            }
        }
        Ok(g)
    }

    /// `N_H(u, v)`: the third vertices of edges through the pair.
    pub fn co_neighborhood(&self, u: usize, v: usize) -> VertexSet {
        let mut s = VertexSet::empty(self.n);
        if u == v {
            return s;
        }
        for w in 0..self.n {
            if w != u && w != v && self.has_rank(triple_rank(u, v, w)) {
                s.insert(w);
            }
        }
        s
    }

    /// `G_alpha`: pairs with co-degree at least `alpha (n - 2)`, compared exactly.
    pub fn large_pair_graph(&self, alpha: &Rational) -> Result<PairGraph> {
        if !in_open_unit(alpha) {
            return Err(out_of_range("alpha", alpha, "(0, 1)"));
        }
        let pd = self.pair_degrees();
        let total = self.n.saturating_sub(2) as u64;
        let mut g = PairGraph::empty(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if at_least(pd[u][v] as u64, alpha, total) {
                    g.add_edge(u, v);
                }
            }
        }
        Ok(g)
    }

    /// `H'`: the edges containing at least one pair of `G_{1/3}`.
    pub fn h_prime(&self) -> Hypergraph3 {
        let g = self
            .large_pair_graph(&frac(1, 3))
            .expect("1/3 lies in (0, 1)");
        self.filter_by_pairs(&g)
    }

    /// Keeps the edges with at least one pair in `g`.
    ///
    /// Applying this twice with the same `g` is the same as applying it once;
    /// `H'` is defined from the co-degrees of the original hypergraph.
    pub fn filter_by_pairs(&self, g: &PairGraph) -> Hypergraph3 {
        let mut out = Hypergraph3::from_raw(self.n, vec![0; self.bits.len()]);
        for (a, b, c) in self.edges() {
            if g.has_edge(a, b) || g.has_edge(a, c) || g.has_edge(b, c) {
                let r = triple_rank(a, b, c);
                out.bits[r >> 6] |= 1u64 << (r & 63);
            }
        }
        out
    }

    /// `H - S`: same labels, every edge meeting `s` dropped.
    pub fn remove_vertices(&self, s: &VertexSet) -> Hypergraph3 {
        let mut out = self.clone();
        for (a, b, c) in self.edges() {
            if s.contains(a) || s.contains(b) || s.contains(c) {
                out.toggle_rank(triple_rank(a, b, c));
            }
        }
        out
    }

    /// `H[S]` with the original labels (vertices outside `s` isolated).
    pub fn induced(&self, s: &VertexSet) -> Hypergraph3 {
        self.remove_vertices(&s.complement())
    }

    /// Relabels the vertices of `keep` to `0..|keep|` in increasing order.
    /// Returns the compacted hypergraph and the old label of each new vertex.
    pub fn compact(&self, keep: &VertexSet) -> (Hypergraph3, Vec<usize>) {
        let labels = keep.to_vec();
        let mut new_of = vec![usize::MAX; self.n];
        for (i, &v) in labels.iter().enumerate() {
            new_of[v] = i;
        }
        let mut out = Hypergraph3::from_raw(labels.len(), vec![0; binom3(labels.len()).div_ceil(64)]);
        for (a, b, c) in self.edges() {
            if keep.contains(a) && keep.contains(b) && keep.contains(c) {
                let r = triple_rank(new_of[a], new_of[b], new_of[c]);
                out.bits[r >> 6] |= 1u64 << (r & 63);
            }
        }
        (out, labels)
    }

    /// Edge-wise intersection of two hypergraphs on the same vertex set.
    pub fn intersection(&self, other: &Hypergraph3) -> Result<Hypergraph3> {
        if self.n != other.n {
            return Err(Error::GroundSetMismatch(self.n, other.n));
        }
        Ok(Hypergraph3::from_raw(
            self.n,
            self.bits.iter().zip(&other.bits).map(|(a, b)| a & b).collect(),
        ))
    }

    pub fn is_subhypergraph_of(&self, other: &Hypergraph3) -> bool {
        self.n == other.n && self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    /// `e_H(A1, A2, A3)`: edges with one vertex in each part.
    pub fn crossing_edges(&self, a1: &VertexSet, a2: &VertexSet, a3: &VertexSet) -> u64 {
        let mut e = 0u64;
        for x in a1 {
            for y in a2 {
                if x == y {
                    continue;
                }
                for z in a3 {
                    if z != x && z != y && self.has_rank(triple_rank(x, y, z)) {
                        e += 1;
                    }
                }
            }
        }
        e
    }

    /// `d_H(A1, A2, A3) = e_H(A1, A2, A3) / (|A1| |A2| |A3|)` for disjoint, non-empty parts.
    pub fn partite_density(&self, a1: &VertexSet, a2: &VertexSet, a3: &VertexSet) -> Result<Rational> {
        check_parts(self.n, &[a1, a2, a3])?;
        let e = self.crossing_edges(a1, a2, a3);
        let vol = (a1.len() * a2.len() * a3.len()) as i128;
        Ok(frac(e as i128, vol))
    }

    /// Table of `N_H(u, v)` for all pairs; see [`CoNeighborhoods`].
    pub fn co_neighborhoods(&self) -> CoNeighborhoods {
        CoNeighborhoods::new(self)
    }
}

pub(crate) fn check_parts(n: usize, parts: &[&VertexSet]) -> Result<()> {
    for p in parts {
        if p.universe() != n {
            return Err(Error::GroundSetMismatch(p.universe(), n));
        }
        if p.is_empty() {
            return Err(Error::BadParts);
        }
    }
    for i in 0..parts.len() {
        for j in (i + 1)..parts.len() {
            if !parts[i].is_disjoint(parts[j]) {
                return Err(Error::BadParts);
            }
        }
    }
    Ok(())
}

impl fmt::Debug for Hypergraph3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hypergraph3(n = {}, m = {})", self.n, self.edge_count())
    }
}

/// Precomputed `N_H(u, v)` bitmaps for every pair, for the search-heavy
/// modules. Memory is `n^2 / 2` bitmaps of `n` bits.
#[derive(Clone, Debug)]
pub struct CoNeighborhoods {
    n: usize,
    sets: Vec<VertexSet>,
}

impl CoNeighborhoods {
    pub fn new(h: &Hypergraph3) -> Self {
        let n = h.n();
        let mut sets = vec![VertexSet::empty(n); binom2(n)];
        for (a, b, c) in h.edges() {
            sets[pair_index(a, b)].insert(c);
            sets[pair_index(a, c)].insert(b);
            sets[pair_index(b, c)].insert(a);
        }
        CoNeighborhoods { n, sets }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `N_H(u, v)`; panics on `u == v`.
    #[inline]
    pub fn get(&self, u: usize, v: usize) -> &VertexSet {
        assert_ne!(u, v, "co-neighbourhood of a degenerate pair");
        &self.sets[pair_index(u, v)]
    }
}

#[inline]
fn pair_index(u: usize, v: usize) -> usize {
    let (a, b) = if u < v { (u, v) } else { (v, u) };
    binom2(b) + a
}

/// Serialized as `{ n, edges }` with edges in colex order.
impl serde::Serialize for Hypergraph3 {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Hypergraph3", 2)?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("edges", &self.edges().collect::<Vec<_>>())?;
        st.end()
    }
}
