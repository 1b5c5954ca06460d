//! Absorbers and the absorbing path.
//!
//! An absorber for `x` is a short tight path `v1 .. vi` (order 4 or 5) whose
//! consecutive pairs all lie in the link graph `H(x)` and whose endpairs are
//! `1/3`-large. Putting `x` between `v2` and `v3` gives a longer tight path
//! with the same endpairs. Absorbers are cut out of copies of `K_{2,2,2}` in
//! `H'` and chained together with the connector.

use serde::Serialize;
use thiserror::Error;

use crate::connector::{ConnectContext, ConnectError, ConnectOptions};
use crate::counting::{find_k_hhh, is_k_copy, triangles_of_link_in, KCopy, KSearchBudget, Search};
use crate::error::{out_of_range, Result};
use crate::hypergraph::Hypergraph3;
use crate::pair_graph::PairGraph;
use crate::rational::{frac, Rational};
use crate::rng::split_seed;
use crate::solver::TightPath;
use crate::verify::verify_path;
use crate::vertex_set::VertexSet;

/// `H'` and `G_{1/3}` of a host hypergraph, computed once.
pub struct AbsorberSetup<'a> {
    pub h: &'a Hypergraph3,
    pub h_prime: Hypergraph3,
    pub g_third: PairGraph,
}

impl<'a> AbsorberSetup<'a> {
    pub fn new(h: &'a Hypergraph3) -> Self {
        let g_third = h.large_pair_graph(&frac(1, 3)).expect("1/3 is in range");
        let h_prime = h.filter_by_pairs(&g_third);
        AbsorberSetup { h, h_prime, g_third }
    }
}

/// `T^x ∩ H'`: triangles of `H'(x)` that are themselves edges of `H'`.
pub fn friendly_host(setup: &AbsorberSetup, x: usize) -> Result<Hypergraph3> {
    triangles_of_link_in(&setup.h_prime, x)?.intersection(&setup.h_prime)
}

/// Up to `budget` random probes for copies of `K_{2,2,2}` in `T^x ∩ H'`.
/// Distinct copies only; each passes the crossing-triple audit.
pub fn x_friendly_copies(setup: &AbsorberSetup, x: usize, budget: u64, seed: u64) -> Result<Vec<KCopy>> {
    let host = friendly_host(setup, x)?;
    let mut out: Vec<KCopy> = Vec::new();
    for probe in 0..budget {
        let b = KSearchBudget {
            exhaustive_first_parts: 0,
            probes: 1,
            seed: split_seed(seed, probe),
        };
        if let Search::Found(k) = find_k_hhh(&host, 2, None, b)? {
            debug_assert!(is_k_copy(&host, &k));
            if !out.iter().any(|o| same_copy(o, &k)) {
                out.push(k);
            }
        }
    }
    Ok(out)
}

fn same_copy(a: &KCopy, b: &KCopy) -> bool {
    let mut pa = a.parts.clone();
    let mut pb = b.parts.clone();
    pa.sort();
    pb.sort();
    pa == pb
}

/// Which of the two cases produced an absorber.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum AbsorberCase {
    /// The same class pair is large in both disjoint edges: order 5.
    SamePair,
    /// The large pairs share one class: order 4.
    SharedClass,
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum ExtractError {
    #[error("edge {0:?} of the K_{{2,2,2}} has no 1/3-large pair")]
    NoLargePair([usize; 3]),
}

/// Class pairs in canonical order: `(U, V)`, `(U, W)`, `(V, W)`.
const CLASS_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Cuts an absorber out of a `K_{2,2,2}` with parts `{u1,u2}, {v1,v2}, {w1,w2}`.
///
/// Looks at the disjoint edges `{u1,v1,w1}` and `{u2,v2,w2}`. If one class pair
/// `{S, P}` is large in both, the path is `s1 p1 q1 s2 p2` (`Q` the third
/// class). Otherwise the least large pairs `{S, P}` and `{S, Q}` of the two
/// edges share a class `S`, and the path is `s1 p1 q2 s2`. Ties go to the
/// least class pair.
pub fn extract_absorber(k: &KCopy, g_third: &PairGraph) -> std::result::Result<(Vec<usize>, AbsorberCase), ExtractError> {
    let side = |i: usize| [k.parts[0][i], k.parts[1][i], k.parts[2][i]];
    let large_in = |i: usize| -> Vec<(usize, usize)> {
        let e = side(i);
        CLASS_PAIRS
            .iter()
            .copied()
            .filter(|&(s, p)| g_third.has_edge(e[s], e[p]))
            .collect()
    };
    let (l1, l2) = (large_in(0), large_in(1));
    if l1.is_empty() {
        return Err(ExtractError::NoLargePair(side(0)));
    }
    if l2.is_empty() {
        return Err(ExtractError::NoLargePair(side(1)));
    }
    let (e1, e2) = (side(0), side(1));
    if let Some(&(s, p)) = l1.iter().find(|cp| l2.contains(cp)) {
        let q = 3 - s - p;
        return Ok((vec![e1[s], e1[p], e1[q], e2[s], e2[p]], AbsorberCase::SamePair));
    }
    let (a, b) = (l1[0], l2[0]);
    let s = if a.0 == b.0 || a.0 == b.1 { a.0 } else { a.1 };
    let p = a.0 + a.1 - s;
    let q = b.0 + b.1 - s;
    Ok((vec![e1[s], e1[p], e2[q], e2[s]], AbsorberCase::SharedClass))
}

/// Vertices `x` outside `path` with every consecutive pair of `path` in `H(x)`.
pub fn absorbable_by(h: &Hypergraph3, path: &[usize]) -> VertexSet {
    let n = h.n();
    let mut s = VertexSet::full(n);
    for &v in path {
        s.remove(v);
    }
    for w in path.windows(2) {
        s.intersect_with(&h.co_neighborhood(w[0], w[1]));
    }
    s
}

/// `S_K`: vertices for which every crossing triple of `k` is a triangle of `H'(x)`.
pub fn friendly_set(h_prime: &Hypergraph3, k: &KCopy) -> VertexSet {
    let n = h_prime.n();
    let mut s = VertexSet::full(n);
    for v in k.vertices() {
        s.remove(v);
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            for &a in &k.parts[i] {
                for &b in &k.parts[j] {
                    s.intersect_with(&h_prime.co_neighborhood(a, b));
                }
            }
        }
    }
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbsorberRecord {
    pub path: Vec<usize>,
    pub case: AbsorberCase,
    /// Vertices this absorber can take (the link-path condition).
    pub absorbable: VertexSet,
    /// `S_K` of the source copy; always a subset of `absorbable`.
    pub friendly: VertexSet,
    pub source: KCopy,
}

impl AbsorberRecord {
    pub fn from_copy(setup: &AbsorberSetup, k: KCopy) -> std::result::Result<Self, ExtractError> {
        let (path, case) = extract_absorber(&k, &setup.g_third)?;
        Ok(AbsorberRecord {
            absorbable: absorbable_by(setup.h, &path),
            friendly: friendly_set(&setup.h_prime, &k),
            path,
            case,
            source: k,
        })
    }

    pub fn order(&self) -> usize {
        self.path.len()
    }

    /// The path with `x` put between its second and third vertex.
    pub fn with_inserted(&self, x: usize) -> Vec<usize> {
        let mut p = self.path.clone();
        p.insert(2, x);
        p
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Family {
    pub records: Vec<AbsorberRecord>,
    /// `coverage[x]`: number of records that can absorb `x`.
    pub coverage: Vec<usize>,
    pub probes_used: u64,
}

impl Family {
    pub fn vertices(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.records.iter().flat_map(|r| r.path.iter().copied()))
    }

    /// Vertices no record can absorb, outside the family itself.
    pub fn uncovered(&self, n: usize) -> Vec<usize> {
        let used = self.vertices(n);
        (0..n).filter(|&x| !used.contains(x) && self.coverage[x] == 0).collect()
    }
}

#[derive(Clone, Debug)]
pub struct FamilyParams {
    /// The default target is `ceil(gamma n / 15)`.
    pub gamma: Rational,
    /// Overrides the gamma-derived family size.
    pub target: Option<usize>,
    pub probes: u64,
}

impl FamilyParams {
    pub fn target_for(&self, n: usize) -> usize {
        self.target
            .unwrap_or_else(|| (self.gamma * frac(n as i128, 15)).ceil().to_integer().max(1) as usize)
    }
}

/// Samples disjoint copies of `K_{2,2,2}` in `H'` (outside `avoid`) and cuts
/// an absorber from each.
///
/// Instead of a Bernoulli choice over all copies, copies are drawn one at a
/// time by random probes restricted to still-unused vertices, which is the
/// same as discarding every copy that meets an earlier one.
pub fn select_family(setup: &AbsorberSetup, params: &FamilyParams, avoid: &VertexSet, seed: u64) -> Result<Family> {
    let n = setup.h.n();
    if params.gamma <= frac(0, 1) {
        return Err(out_of_range("gamma", params.gamma, "(0, 1)"));
    }
    let target = params.target_for(n);
    let mut free = avoid.complement();
    let mut records = Vec::new();
    let mut probe = 0;
    while records.len() < target && probe < params.probes {
        let pools = [free.clone(), free.clone(), free.clone()];
        let b = KSearchBudget {
            exhaustive_first_parts: 0,
            probes: 1,
            seed: split_seed(seed, probe),
        };
        probe += 1;
        let Search::Found(k) = find_k_hhh(&setup.h_prime, 2, Some(&pools), b)? else { continue };
        let Ok(rec) = AbsorberRecord::from_copy(setup, k) else { continue };
        for v in rec.source.vertices() {
            free.remove(v);
        }
        records.push(rec);
    }
    let mut coverage = vec![0; n];
    for r in &records {
        for x in r.absorbable.iter() {
            coverage[x] += 1;
        }
    }
    Ok(Family {
        records,
        coverage,
        probes_used: probe,
    })
}

/// An absorber inside the absorbing path; `offset` is the index of its first vertex.
#[derive(Clone, Debug, Serialize)]
pub struct PlacedAbsorber {
    pub record: AbsorberRecord,
    pub offset: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct AbsorbingPath {
    pub path: TightPath,
    pub absorbers: Vec<PlacedAbsorber>,
}

impl AbsorbingPath {
    pub fn capacity(&self) -> usize {
        self.absorbers.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error, Serialize)]
pub enum AbsorbError {
    #[error("empty family")]
    EmptyFamily,
    #[error("connecting absorber {index} to the path failed: {cause}")]
    Connect { index: usize, cause: ConnectError },
    #[error("{0}")]
    Precondition(String),
    #[error("no absorber left for vertices {0:?}")]
    Unmatched(Vec<usize>),
}

/// Chains the absorbers with length-12 connections, in family order. The
/// connection before absorber `i` avoids every other absorber, the path so
/// far, and `forbidden`.
pub fn build_absorbing_path(
    ctx: &ConnectContext,
    records: &[AbsorberRecord],
    forbidden: &VertexSet,
    opts: &mut ConnectOptions,
) -> std::result::Result<AbsorbingPath, AbsorbError> {
    let h = ctx.hypergraph();
    let n = h.n();
    let Some(first) = records.first() else {
        return Err(AbsorbError::EmptyFamily);
    };
    let mut seq = first.path.clone();
    let mut placed = vec![PlacedAbsorber {
        record: first.clone(),
        offset: 0,
    }];
    let all = VertexSet::from_iter(n, records.iter().flat_map(|r| r.path.iter().copied()));
    for (i, rec) in records.iter().enumerate().skip(1) {
        let t = seq.len();
        let e = (seq[t - 2], seq[t - 1]);
        let f = (rec.path[1], rec.path[0]);
        let mut blocked = all.union(forbidden);
        blocked.union_with(&VertexSet::from_iter(n, seq.iter().copied()));
        let q = ctx
            .connect(e, f, &blocked, opts)
            .map_err(|cause| AbsorbError::Connect { index: i, cause })?;
        seq.extend_from_slice(&q.vertices()[2..12]);
        placed.push(PlacedAbsorber {
            record: rec.clone(),
            offset: seq.len(),
        });
        seq.extend_from_slice(&rec.path);
    }
    let path = TightPath::new(h, seq).expect("concatenation of verified pieces");
    Ok(AbsorbingPath { path, absorbers: placed })
}

/// Kuhn's augmenting paths: `adj[x]` lists the absorbers `x` may use.
fn bipartite_matching(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    fn augment(x: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &r in &adj[x] {
            if seen[r] {
                continue;
            }
            seen[r] = true;
            if owner[r].is_none_or(|y| augment(y, adj, seen, owner)) {
                owner[r] = Some(x);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    for x in 0..adj.len() {
        let mut seen = vec![false; right];
        augment(x, adj, &mut seen, &mut owner);
    }
    let mut of_left = vec![None; adj.len()];
    for (r, o) in owner.iter().enumerate() {
        if let Some(x) = o {
            of_left[*x] = Some(r);
        }
    }
    of_left
}

/// `A_U`: puts every vertex of `u` into a distinct absorber of `a`.
pub fn absorb(h: &Hypergraph3, a: &AbsorbingPath, u: &VertexSet) -> std::result::Result<TightPath, AbsorbError> {
    let n = h.n();
    let on_path = a.path.vertex_set(n);
    if !u.is_disjoint(&on_path) {
        return Err(AbsorbError::Precondition("U meets the absorbing path".into()));
    }
    let xs = u.to_vec();
    if xs.is_empty() {
        return Ok(a.path.clone());
    }
    let adj: Vec<Vec<usize>> = xs
        .iter()
        .map(|&x| {
            (0..a.absorbers.len())
                .filter(|&j| a.absorbers[j].record.absorbable.contains(x))
                .collect()
        })
        .collect();
    let m = bipartite_matching(&adj, a.absorbers.len());
    let unmatched: Vec<usize> = xs.iter().zip(&m).filter(|(_, r)| r.is_none()).map(|(x, _)| *x).collect();
    if !unmatched.is_empty() {
        return Err(AbsorbError::Unmatched(unmatched));
    }
    let mut inserts: Vec<(usize, usize)> = xs
        .iter()
        .zip(&m)
        .map(|(&x, r)| (a.absorbers[r.expect("all matched")].offset + 2, x))
        .collect();
    // right to left so earlier offsets stay valid
    inserts.sort_unstable_by(|p, q| q.0.cmp(&p.0));
    let mut seq = a.path.vertices().to_vec();
    for (pos, x) in inserts {
        seq.insert(pos, x);
    }
    verify_path(h, &seq).map_err(|v| AbsorbError::Precondition(format!("absorbed path invalid: {v}")))?;
    let out = TightPath::from_verified(seq);
    debug_assert_eq!(out.start_pair(), a.path.start_pair());
    debug_assert_eq!(out.end_pair(), a.path.end_pair());
    Ok(out)
}
