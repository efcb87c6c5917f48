//! Simple undirected graphs: no loops, no parallel edges.

use crate::error::{Error, Result};
use crate::Vertex;
use std::collections::{BTreeMap, BTreeSet};

/// Simple graph with sorted adjacency. Vertex ids are opaque integers; all
/// iteration orders are the numeric order, so every run is reproducible.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SimpleGraph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl SimpleGraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Self::new();
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.adj.entry(v).or_default();
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> Result<()> {
        if u == v {
            return Err(Error::structure(format!("loop at vertex {u}")));
        }
        self.adj.entry(u).or_default().insert(v);
        self.adj.entry(v).or_default().insert(u);
        Ok(())
    }

    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) {
        if let Some(s) = self.adj.get_mut(&u) {
            s.remove(&v);
        }
        if let Some(s) = self.adj.get_mut(&v) {
            s.remove(&u);
        }
    }

    /// Remove a vertex together with all incident edges.
    pub fn remove_vertex(&mut self, v: Vertex) {
        if let Some(nbrs) = self.adj.remove(&v) {
            for u in nbrs {
                if let Some(s) = self.adj.get_mut(&u) {
                    s.remove(&v);
                }
            }
        }
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|s| s.contains(&v))
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.values().map(|s| s.len()).sum::<usize>() / 2
    }

    /// Edges as ordered pairs (u < v), ascending.
    pub fn edges(&self) -> Vec<(Vertex, Vertex)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (&u, nbrs) in &self.adj {
            for &v in nbrs.iter().filter(|&&v| v > u) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn neighbours(&self, v: Vertex) -> Result<&BTreeSet<Vertex>> {
        self.adj
            .get(&v)
            .ok_or_else(|| Error::structure(format!("unknown vertex {v}")))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj.get(&v).map_or(0, |s| s.len())
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(|s| s.len()).max().unwrap_or(0)
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.adj.keys().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &u in &self.adj[&v] {
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen.len() == self.adj.len()
    }

    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for &v in keep.iter().filter(|v| self.has_vertex(**v)) {
            g.add_vertex(v);
        }
        for (u, v) in self.edges() {
            if keep.contains(&u) && keep.contains(&v) {
                g.add_edge(u, v).expect("induced edge");
            }
        }
        g
    }

    /// Number of edges between `p` and `q`; an edge with both ends in
    /// `p ∩ q` is counted twice.
    pub fn e_between(&self, p: &BTreeSet<Vertex>, q: &BTreeSet<Vertex>) -> usize {
        let mut count = 0;
        for (u, v) in self.edges() {
            if p.contains(&u) && q.contains(&v) {
                count += 1;
            }
            if p.contains(&v) && q.contains(&u) {
                count += 1;
            }
        }
        count
    }

    /// The square of the graph, built independently by 2-step BFS. Serves as
    /// the oracle for the conflict graph of the full-neighbourhood system.
    pub fn square(&self) -> SimpleGraph {
        let mut sq = SimpleGraph::new();
        for v in self.vertices() {
            sq.add_vertex(v);
        }
        for v in self.vertices() {
            let mut reach: BTreeSet<Vertex> = BTreeSet::new();
            for &u in &self.adj[&v] {
                reach.insert(u);
                reach.extend(self.adj[&u].iter().copied());
            }
            reach.remove(&v);
            for u in reach {
                sq.add_edge(v, u).expect("square edge");
            }
        }
        sq
    }

    /// Complete graph on `n` vertices 0..n.
    pub fn complete(n: u32) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for v in 0..n {
            g.add_vertex(v);
        }
        for u in 0..n {
            for v in (u + 1)..n {
                g.add_edge(u, v).expect("complete edge");
            }
        }
        g
    }

    /// Cycle on `n ≥ 3` vertices 0..n.
    pub fn cycle(n: u32) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for v in 0..n {
            g.add_edge(v, (v + 1) % n).expect("cycle edge");
        }
        g
    }

    /// Path on `n ≥ 2` vertices 0..n.
    pub fn path(n: u32) -> SimpleGraph {
        let mut g = SimpleGraph::new();
        for v in 0..n.saturating_sub(1) {
            g.add_edge(v, v + 1).expect("path edge");
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        let g = SimpleGraph::from_edges([(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(1, 0));
        assert!(g.is_connected());
        assert!(SimpleGraph::from_edges([(3, 3)]).is_err());
    }

    #[test]
    fn square_of_c5_is_k5() {
        let c5 = SimpleGraph::cycle(5);
        assert_eq!(c5.square(), SimpleGraph::complete(5));
    }

    #[test]
    fn e_between_double_counts_internal_edges() {
        let g = SimpleGraph::from_edges([(0, 1), (1, 2)]).unwrap();
        let p: BTreeSet<_> = [0, 1].into();
        let q: BTreeSet<_> = [0, 1, 2].into();
        // edge 01 has both ends in p ∩ q (twice), edge 12 crosses once
        assert_eq!(g.e_between(&p, &q), 3);
    }
}
