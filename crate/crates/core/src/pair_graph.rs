use crate::vertex_set::VertexSet;

/// A simple graph on the vertex set of a hypergraph: the large-pair graphs
/// `G_alpha`, link graphs, and the graph constraints of the reservoir.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairGraph {
    n: usize,
    adj: Vec<VertexSet>,
}

impl PairGraph {
    pub fn empty(n: usize) -> Self {
        PairGraph {
            n,
            adj: vec![VertexSet::empty(n); n],
        }
    }

    pub fn complete(n: usize) -> Self {
        let mut g = Self::empty(n);
        for u in 0..n {
            g.adj[u] = VertexSet::full(n);
            g.adj[u].remove(u);
        }
        g
    }

    pub fn from_edges<I: IntoIterator<Item = (usize, usize)>>(n: usize, edges: I) -> Self {
        let mut g = Self::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Self-loops are ignored.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        if u == v {
            return;
        }
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        if u < self.n && v < self.n {
            self.adj[u].remove(v);
            self.adj[v].remove(u);
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].contains(v)
    }

    pub fn neighbors(&self, v: usize) -> &VertexSet {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    /// Number of edges with both ends in `s`.
    pub fn induced_edge_count(&self, s: &VertexSet) -> usize {
        s.iter().map(|u| self.adj[u].intersection_len(s)).sum::<usize>() / 2
    }

    /// Same vertex labels, every edge touching `s` removed.
    pub fn remove_vertices(&self, s: &VertexSet) -> PairGraph {
        let keep = s.complement();
        let mut g = Self::empty(self.n);
        for u in keep.iter() {
            g.adj[u] = self.adj[u].intersection(&keep);
        }
        g
    }

    /// Edge set containment, as used by the antitonicity check on `G_alpha`.
    pub fn is_subgraph_of(&self, other: &PairGraph) -> bool {
        self.n == other.n && self.adj.iter().zip(&other.adj).all(|(a, b)| a.is_subset(b))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| !self.adj[u].contains(u) && self.adj[u].iter().all(|v| self.adj[v].contains(u)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induced_count_and_removal() {
        let g = PairGraph::complete(6);
        assert_eq!(g.edge_count(), 15);
        let s = VertexSet::from_iter(6, [0, 1, 2, 3]);
        assert_eq!(g.induced_edge_count(&s), 6);
        let h = g.remove_vertices(&VertexSet::from_iter(6, [5]));
        assert_eq!(h.edge_count(), 10);
        assert_eq!(h.degree(5), 0);
        assert!(h.is_subgraph_of(&g));
        assert!(h.is_symmetric());
    }
}
