//! Independent checker for tight paths and cycles.
//!
//! Nothing here calls into the searchers: membership is re-derived from the
//! raw edge bitmap with a local copy of the rank formula.

use std::fmt;

use serde::Serialize;

use crate::counting::triangles_of_link_in;
use crate::hypergraph::Hypergraph3;
use crate::rational::frac;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Violation {
    TooShort(usize),
    VertexOutOfRange(usize),
    RepeatedVertex(usize),
    /// The first consecutive triple (in sequence order) that is not an edge.
    MissingEdge([usize; 3]),
    NotSpanning { covered: usize, n: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooShort(k) => write!(f, "sequence of {k} vertices is too short"),
            Violation::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            Violation::RepeatedVertex(v) => write!(f, "vertex {v} appears twice"),
            Violation::MissingEdge([a, b, c]) => write!(f, "{{{a}, {b}, {c}}} is not an edge"),
            Violation::NotSpanning { covered, n } => write!(f, "covers {covered} of {n} vertices"),
        }
    }
}

fn edge_bit(h: &Hypergraph3, a: usize, b: usize, c: usize) -> bool {
    let mut t = [a, b, c];
    t.sort_unstable();
    let [x, y, z] = t;
    if x == y || y == z {
        return false;
    }
    let r = z * (z - 1) * (z - 2) / 6 + y * (y - 1) / 2 + x;
    let bits = h.raw_bits();
    (bits[r / 64] >> (r % 64)) & 1 == 1
}

fn check_vertices(h: &Hypergraph3, seq: &[usize]) -> Result<(), Violation> {
    let mut seen = vec![false; h.n()];
    for &v in seq {
        if v >= h.n() {
            return Err(Violation::VertexOutOfRange(v));
        }
        if seen[v] {
            return Err(Violation::RepeatedVertex(v));
        }
        seen[v] = true;
    }
    Ok(())
}

/// A tight path: at least 3 distinct vertices, every consecutive triple an edge.
pub fn verify_path(h: &Hypergraph3, seq: &[usize]) -> Result<(), Violation> {
    if seq.len() < 3 {
        return Err(Violation::TooShort(seq.len()));
    }
    check_vertices(h, seq)?;
    for w in seq.windows(3) {
        if !edge_bit(h, w[0], w[1], w[2]) {
            return Err(Violation::MissingEdge([w[0], w[1], w[2]]));
        }
    }
    Ok(())
}

/// A tight cycle on its support. Three vertices form a cycle iff they form an edge.
pub fn verify_cycle(h: &Hypergraph3, seq: &[usize]) -> Result<(), Violation> {
    let k = seq.len();
    if k < 3 {
        return Err(Violation::TooShort(k));
    }
    check_vertices(h, seq)?;
    let triples = if k == 3 { 1 } else { k };
    for i in 0..triples {
        let (a, b, c) = (seq[i], seq[(i + 1) % k], seq[(i + 2) % k]);
        if !edge_bit(h, a, b, c) {
            return Err(Violation::MissingEdge([a, b, c]));
        }
    }
    Ok(())
}

/// A tight cycle through every vertex of `h`.
pub fn verify_hamiltonian(h: &Hypergraph3, seq: &[usize]) -> Result<(), Violation> {
    verify_cycle(h, seq)?;
    if seq.len() != h.n() {
        return Err(Violation::NotSpanning {
            covered: seq.len(),
            n: h.n(),
        });
    }
    Ok(())
}

/// One named check of [`invariant_suite`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, failure: Option<String>) -> Check {
    Check {
        name,
        passed: failure.is_none(),
        detail: failure.unwrap_or_default(),
    }
}

/// Degree identities, antitonicity of `G_alpha` in `alpha`, the `H'`
/// filter and the link-triangle sets, all recomputed from scratch.
pub fn invariant_suite(h: &Hypergraph3) -> Vec<Check> {
    let n = h.n();
    let e = h.edge_count();
    let deg = h.vertex_degrees();
    let pd = h.pair_degrees();
    let mut out = Vec::new();

    let sum_v: usize = deg.iter().sum();
    out.push(check(
        "vertex degree sum is 3|E|",
        (sum_v != 3 * e).then(|| format!("{sum_v} != {}", 3 * e)),
    ));
    let mut sum_p = 0usize;
    let mut bad_row = None;
    for v in 0..n {
        let row: usize = (0..n).filter(|&u| u != v).map(|u| pd[u][v] as usize).sum();
        sum_p += row;
        if row != 2 * deg[v] && bad_row.is_none() {
            bad_row = Some(format!("vertex {v}: pair degrees sum to {row}, degree {}", deg[v]));
        }
    }
    out.push(check("pair degree sum is 3|E|", (sum_p / 2 != 3 * e).then(|| format!("{} != {}", sum_p / 2, 3 * e))));
    out.push(check("pair degrees at v sum to 2 deg(v)", bad_row));

    let mut anti = None;
    if n >= 3 {
        let graphs: Vec<_> = (1..10).map(|k| h.large_pair_graph(&frac(k, 10)).expect("alpha in range")).collect();
        for k in 1..graphs.len() {
            if !graphs[k].is_subgraph_of(&graphs[k - 1]) {
                anti = Some(format!("G_{}/10 not inside G_{}/10", k + 1, k));
                break;
            }
        }
    }
    out.push(check("G_alpha shrinks as alpha grows", anti));

    let mut hp_fail = None;
    if n >= 3 {
        let hp = h.h_prime();
        let g = h.large_pair_graph(&frac(1, 3)).expect("1/3 in range");
        for (a, b, c) in h.edges() {
            let keep = g.has_edge(a, b) || g.has_edge(a, c) || g.has_edge(b, c);
            if keep != hp.has_edge(a, b, c) {
                hp_fail = Some(format!("edge {{{a}, {b}, {c}}} misfiled"));
                break;
            }
        }
        if hp_fail.is_none() && !hp.is_subhypergraph_of(h) {
            hp_fail = Some("H' has an edge outside H".into());
        }
    }
    out.push(check("H' keeps exactly the edges with a 1/3-large pair", hp_fail));

    let mut tx_fail = None;
    'x: for x in 0..n.min(8) {
        let t = triangles_of_link_in(h, x).expect("vertex in range");
        for (a, b, c) in t.edges() {
            if x == a || x == b || x == c || !h.has_edge(x, a, b) || !h.has_edge(x, a, c) || !h.has_edge(x, b, c) {
                tx_fail = Some(format!("T^{x} holds {{{a}, {b}, {c}}}"));
                break 'x;
            }
        }
    }
    out.push(check("T^x triples close triangles in the link of x", tx_fail));
    out
}
