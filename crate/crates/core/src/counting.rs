//! Triangle and complete 3-partite counting.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypergraph::{CoNeighborhoods, Hypergraph3};
use crate::pair_graph::PairGraph;
use crate::rational::{frac, Rational};
use crate::rng::rng_from;
use crate::vertex_set::VertexSet;

/// Exact number of triangles.
pub fn count_triangles(g: &PairGraph) -> u64 {
    // every triangle is seen once from each of its three edges
    let s: u64 = g
        .edges()
        .map(|(u, v)| g.neighbors(u).intersection_len(g.neighbors(v)) as u64)
        .sum();
    s / 3
}

/// `max(0, m (4m - n^2) / (3n))`, the guaranteed triangle count of a graph with
/// `n` vertices and `m` edges.
pub fn ns_lower_bound(n: u64, m: u64) -> Rational {
    if n == 0 {
        return frac(0, 1);
    }
    let (n, m) = (n as i128, m as i128);
    let v = frac(m * (4 * m - n * n), 3 * n);
    if v < frac(0, 1) {
        frac(0, 1)
    } else {
        v
    }
}

/// `T^x`: the vertex sets of the triangles of the link graph `H(x)`.
/// Passing `H'` gives the `T^x` used by the absorbers.
pub fn triangles_of_link_in(h: &Hypergraph3, x: usize) -> Result<Hypergraph3> {
    let link = h.link_graph(x)?;
    let mut t = Hypergraph3::empty(h.n())?;
    for (u, v) in link.edges() {
        let common = link.neighbors(u).intersection(link.neighbors(v));
        for w in common.iter().filter(|&w| w > v) {
            t.add_edge(u, v, w)?;
        }
    }
    Ok(t)
}

/// A copy of `K_{h,h,h}`: three disjoint sorted `h`-sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KCopy {
    pub parts: [Vec<usize>; 3],
}

impl KCopy {
    pub fn h(&self) -> usize {
        self.parts[0].len()
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.parts.iter().flatten().copied().collect();
        v.sort_unstable();
        v
    }

    pub fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.parts.iter().flatten().copied())
    }
}

/// Crossing-triple audit: parts are disjoint, equally sized, and all `h^3`
/// crossing triples are edges of `h`.
pub fn is_k_copy(h: &Hypergraph3, k: &KCopy) -> bool {
    let size = k.parts[0].len();
    if size == 0 || k.parts.iter().any(|p| p.len() != size) {
        return false;
    }
    let all = k.vertices();
    if all.windows(2).any(|w| w[0] == w[1]) || all.iter().any(|&v| v >= h.n()) {
        return false;
    }
    k.parts[0].iter().all(|&a| {
        k.parts[1]
            .iter()
            .all(|&b| k.parts[2].iter().all(|&c| h.has_edge(a, b, c)))
    })
}

/// Outcome of a bounded search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Search<T> {
    Found(T),
    /// Proven absence: the search was exhaustive.
    Absent,
    /// The budget ran out before the search space was exhausted.
    Unknown,
}

impl<T> Search<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Search::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn is_found(&self) -> bool {
        matches!(self, Search::Found(_))
    }
}

/// Limits for [`find_k_hhh`].
#[derive(Clone, Copy, Debug)]
pub struct KSearchBudget {
    /// Exhaustive search is used when `C(|P1|, h)` is at most this.
    pub exhaustive_first_parts: u64,
    /// Random probes when the search is not exhaustive.
    pub probes: u64,
    pub seed: u64,
}

impl Default for KSearchBudget {
    fn default() -> Self {
        KSearchBudget {
            exhaustive_first_parts: 20_000,
            probes: 2_000,
            seed: 0,
        }
    }
}

/// Finds a copy of `K_{h,h,h}` with the `i`-th part inside `parts[i]` (all
/// of `V` if `parts` is `None`).
pub fn find_k_hhh(
    h: &Hypergraph3,
    size: usize,
    parts: Option<&[VertexSet; 3]>,
    budget: KSearchBudget,
) -> Result<Search<KCopy>> {
    if size == 0 {
        return Err(Error::Precondition("K_{h,h,h} needs h >= 1".into()));
    }
    let n = h.n();
    let pools: [VertexSet; 3] = match parts {
        Some(p) => {
            for s in p {
                if s.universe() != n {
                    return Err(Error::GroundSetMismatch(s.universe(), n));
                }
            }
            p.clone()
        }
        None => [VertexSet::full(n), VertexSet::full(n), VertexSet::full(n)],
    };
    if pools.iter().any(|p| p.len() < size) {
        return Ok(Search::Absent);
    }
    let first = pools[0].len() as u64;
    if n_choose(first, size as u64) <= budget.exhaustive_first_parts {
        Ok(exhaustive_k(h, size, &pools))
    } else {
        Ok(random_k(h, size, &pools, budget))
    }
}

fn n_choose(n: u64, k: u64) -> u64 {
    let mut r: u128 = 1;
    for i in 0..k.min(n) {
        r = r * (n - i) as u128 / (i + 1) as u128;
        if r > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    if k > n {
        0
    } else {
        r as u64
    }
}

/// `C ∩ N(a, b)` for all `a` in `a_set`.
fn common_with(nb: &CoNeighborhoods, a_set: &[usize], b: usize, within: &VertexSet) -> VertexSet {
    let mut s = within.clone();
    for &a in a_set {
        if a == b {
            return VertexSet::empty(nb.n());
        }
        s.intersect_with(nb.get(a, b));
    }
    s
}

fn exhaustive_k(h: &Hypergraph3, size: usize, pools: &[VertexSet; 3]) -> Search<KCopy> {
    let p0 = pools[0].to_vec();
    let nb = h.co_neighborhoods();
    let mut a = Vec::with_capacity(size);
    let mut found = None;
    subsets(&p0, size, &mut a, &mut |a_set| {
        let used = VertexSet::from_iter(h.n(), a_set.iter().copied());
        let third = pools[2].difference(&used);
        // per-b candidate sets for the third part
        let cands: Vec<(usize, VertexSet)> = pools[1]
            .difference(&used)
            .iter()
            .map(|b| (b, common_with(&nb, a_set, b, &third)))
            .filter(|(_, s)| s.len() >= size)
            .collect();
        let mut chosen: Vec<usize> = Vec::with_capacity(size);
        if let Some(c) = extend_b(&cands, 0, size, &mut chosen, &third) {
            found = Some(KCopy {
                parts: [a_set.to_vec(), chosen.clone(), c],
            });
            return true;
        }
        false
    });
    match found {
        Some(k) => Search::Found(k),
        None => Search::Absent,
    }
}

fn extend_b(
    cands: &[(usize, VertexSet)],
    from: usize,
    size: usize,
    chosen: &mut Vec<usize>,
    common: &VertexSet,
) -> Option<Vec<usize>> {
    if chosen.len() == size {
        let mut c = common.clone();
        for &b in chosen.iter() {
            c.remove(b);
        }
        return (c.len() >= size).then(|| c.iter().take(size).collect());
    }
    for i in from..cands.len() {
        if cands.len() - i < size - chosen.len() {
            break;
        }
        let next = common.intersection(&cands[i].1);
        // the chosen b's still to come may also sit in `next`; at most size of them
        if next.len() < size {
            continue;
        }
        chosen.push(cands[i].0);
        if let Some(c) = extend_b(cands, i + 1, size, chosen, &next) {
            return Some(c);
        }
        chosen.pop();
    }
    None
}

/// Calls `f` on each `k`-subset of `items` in lexicographic order until it returns true.
fn subsets(items: &[usize], k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
    fn go(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            if go(items, k, i + 1, cur, f) {
                return true;
            }
            cur.pop();
        }
        false
    }
    go(items, k, 0, cur, f)
}

/// One probe grows the first two parts alternately, each new vertex drawn at
/// random from those keeping at least `h` common third vertices.
fn random_k(h: &Hypergraph3, size: usize, pools: &[VertexSet; 3], budget: KSearchBudget) -> Search<KCopy> {
    let mut rng = rng_from(budget.seed);
    let p0 = pools[0].to_vec();
    let p1 = pools[1].to_vec();
    'probe: for _ in 0..budget.probes {
        let a0 = *p0.choose(&mut rng).expect("pool checked non-empty");
        let b0 = *p1.choose(&mut rng).expect("pool checked non-empty");
        if a0 == b0 {
            continue;
        }
        let mut a_set = vec![a0];
        let mut b_set = vec![b0];
        let mut used = VertexSet::from_iter(h.n(), [a0, b0]);
        let mut common = h.co_neighborhood(a0, b0).intersection(&pools[2]).difference(&used);
        while a_set.len() < size || b_set.len() < size {
            let grow_a = a_set.len() <= b_set.len() && a_set.len() < size || b_set.len() == size;
            let (pool, others) = if grow_a { (&p0, &b_set) } else { (&p1, &a_set) };
            let mut options: Vec<(usize, VertexSet)> = Vec::new();
            for &v in pool {
                if used.contains(v) {
                    continue;
                }
                let mut c = common.clone();
                c.remove(v);
                for &o in others.iter() {
                    c.intersect_with(&h.co_neighborhood(v, o));
                }
                if c.len() >= size {
                    options.push((v, c));
                }
            }
            if options.is_empty() {
                continue 'probe;
            }
            let (v, c) = options.swap_remove(rng.gen_range(0..options.len()));
            if grow_a {
                a_set.push(v);
            } else {
                b_set.push(v);
            }
            used.insert(v);
            common = c;
        }
        a_set.sort_unstable();
        b_set.sort_unstable();
        let k = KCopy {
            parts: [a_set, b_set, common.iter().take(size).collect()],
        };
        debug_assert!(is_k_copy(h, &k));
        return Search::Found(k);
    }
    Search::Unknown
}

/// Largest `n` accepted by [`count_k222`].
pub const K222_EXHAUSTIVE_CAP: usize = 20;

/// Exact number of `K_{2,2,2}` copies (parts unordered).
pub fn count_k222(h: &Hypergraph3) -> Result<u64> {
    let n = h.n();
    if n > K222_EXHAUSTIVE_CAP {
        return Err(Error::OutOfRange {
            name: "n",
            value: n.to_string(),
            range: "at most 20 for exhaustive K_{2,2,2} counting",
        });
    }
    let t = h.co_neighborhoods();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b))).collect();
    // each copy is seen once per choice of which part plays the third role
    let mut thrice = 0u64;
    for (i, &(a1, a2)) in pairs.iter().enumerate() {
        for &(b1, b2) in &pairs[i + 1..] {
            if b1 == a1 || b1 == a2 || b2 == a1 || b2 == a2 {
                continue;
            }
            let mut c = t.get(a1, b1).intersection(t.get(a1, b2));
            c.intersect_with(t.get(a2, b1));
            c.intersect_with(t.get(a2, b2));
            let k = c.len() as u64;
            thrice += k * k.saturating_sub(1) / 2;
        }
    }
    Ok(thrice / 3)
}

/// Sampled estimate of the fraction of 6-sets `{a1,a2,b1,b2,c1,c2}`, with that
/// labelled split, spanning a `K_{2,2,2}`. For hypergraphs beyond the exhaustive cap.
pub fn estimate_k222_density(h: &Hypergraph3, samples: u64, seed: u64) -> Result<f64> {
    let n = h.n();
    if n < 6 {
        return Err(Error::TooFewVertices { needed: 6, n });
    }
    let mut rng = rng_from(seed);
    let verts: Vec<usize> = (0..n).collect();
    let mut hits = 0u64;
    for _ in 0..samples {
        let s: Vec<usize> = verts.choose_multiple(&mut rng, 6).copied().collect();
        let k = KCopy {
            parts: [vec![s[0], s[1]], vec![s[2], s[3]], vec![s[4], s[5]]],
        };
        if is_k_copy(h, &k) {
            hits += 1;
        }
    }
    Ok(hits as f64 / samples.max(1) as f64)
}

/// Number of unordered labelled splits of 6 vertices into three pairs.
pub const K222_SPLITS_PER_SIX_SET: u64 = 15;

/// Total possible `K_{2,2,2}` copies on `n` vertices, for turning densities into counts.
pub fn k222_slots(n: usize) -> u64 {
    let six = n_choose(n as u64, 6);
    six.saturating_mul(K222_SPLITS_PER_SIX_SET)
}
