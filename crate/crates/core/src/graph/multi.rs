//! Multigraphs: parallel edges allowed, loops not.

use crate::error::{Error, Result};
use crate::{EdgeId, Vertex};
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Multigraph {
    vertices: BTreeSet<Vertex>,
    edges: BTreeMap<EdgeId, (Vertex, Vertex)>,
}

impl Multigraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_edges(edges: impl IntoIterator<Item = (Vertex, Vertex)>) -> Result<Self> {
        let mut g = Self::new();
        for (i, (u, v)) in edges.into_iter().enumerate() {
            g.add_edge(u, v, i as EdgeId)?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, v: Vertex) {
        self.vertices.insert(v);
    }

    pub fn add_edge(&mut self, u: Vertex, v: Vertex, id: EdgeId) -> Result<()> {
        if u == v {
            return Err(Error::structure(format!("loop at vertex {u}")));
        }
        if self.edges.contains_key(&id) {
            return Err(Error::structure(format!("duplicate edge id {id}")));
        }
        self.vertices.insert(u);
        self.vertices.insert(v);
        self.edges.insert(id, (u, v));
        Ok(())
    }

    pub fn next_edge_id(&self) -> EdgeId {
        self.edges.keys().next_back().map_or(0, |&id| id + 1)
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.vertices.iter().copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.edges.keys().copied()
    }

    pub fn endpoints(&self, id: EdgeId) -> Result<(Vertex, Vertex)> {
        self.edges
            .get(&id)
            .copied()
            .ok_or_else(|| Error::structure(format!("unknown edge id {id}")))
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, Vertex, Vertex)> + '_ {
        self.edges.iter().map(|(&id, &(u, v))| (id, u, v))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.edges.values().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn max_degree(&self) -> usize {
        self.vertices().map(|v| self.degree(v)).max().unwrap_or(0)
    }

    pub fn incident_edges(&self, v: Vertex) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|(_, &(a, b))| a == v || b == v)
            .map(|(&id, _)| id)
            .collect()
    }

    /// Edge ids with both endpoints in `w`.
    pub fn edges_within(&self, w: &BTreeSet<Vertex>) -> Vec<EdgeId> {
        self.edges
            .iter()
            .filter(|(_, &(a, b))| w.contains(&a) && w.contains(&b))
            .map(|(&id, _)| id)
            .collect()
    }

    /// Number of edges with exactly one endpoint in `w`.
    pub fn e_cross(&self, w: &BTreeSet<Vertex>) -> usize {
        self.edges
            .values()
            .filter(|&&(a, b)| w.contains(&a) != w.contains(&b))
            .count()
    }

    pub fn is_connected(&self) -> bool {
        let Some(&start) = self.vertices.iter().next() else {
            return true;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &(a, b) in self.edges.values() {
                let u = if a == v {
                    b
                } else if b == v {
                    a
                } else {
                    continue;
                };
                if seen.insert(u) {
                    stack.push(u);
                }
            }
        }
        seen.len() == self.vertices.len()
    }

    /// Restriction to a subset of edge ids (keeping all vertices).
    pub fn edge_subgraph(&self, keep: &BTreeSet<EdgeId>) -> Multigraph {
        let mut g = Multigraph::new();
        g.vertices = self.vertices.clone();
        for (&id, &(u, v)) in &self.edges {
            if keep.contains(&id) {
                g.edges.insert(id, (u, v));
            }
        }
        g
    }

    /// Triangle with every edge repeated `mu` times (the Shannon family).
    pub fn shannon_triangle(mu: u32) -> Multigraph {
        let mut g = Multigraph::new();
        let mut id = 0;
        for (u, v) in [(0, 1), (1, 2), (2, 0)] {
            for _ in 0..mu {
                g.add_edge(u, v, id).expect("shannon edge");
                id += 1;
            }
        }
        g
    }
}
