//! Σ-systems, conflict graphs, Σ-degrees, cyclic-colouring reduction and
//! the extremal family generators.

use crate::clique::{self, CliqueOutcome};
use crate::error::{Error, Result};
use crate::graph::{embed_by_angle, EmbeddedGraph, SimpleGraph};
use crate::Vertex;
use std::collections::{BTreeMap, BTreeSet};

/// A Σ-system: every vertex carries a subset of its neighbourhood. Stored
/// sparsely; omitted vertices have Σ(v) = ∅.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SigmaSystem {
    sets: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

impl SigmaSystem {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Σ(v) = N(v) for every vertex: the system whose colourings are exactly
    /// the colourings of the square.
    pub fn full_neighbourhood(g: &SimpleGraph) -> Self {
        let mut s = Self::empty();
        for v in g.vertices() {
            let nbrs = g.neighbours(v).expect("vertex").clone();
            if !nbrs.is_empty() {
                s.sets.insert(v, nbrs);
            }
        }
        s
    }

    pub fn set(&mut self, v: Vertex, sigma: BTreeSet<Vertex>) {
        if sigma.is_empty() {
            self.sets.remove(&v);
        } else {
            self.sets.insert(v, sigma);
        }
    }

    pub fn get(&self, v: Vertex) -> BTreeSet<Vertex> {
        self.sets.get(&v).cloned().unwrap_or_default()
    }

    pub fn size(&self, v: Vertex) -> usize {
        self.sets.get(&v).map_or(0, |s| s.len())
    }

    pub fn entries(&self) -> impl Iterator<Item = (Vertex, &BTreeSet<Vertex>)> {
        self.sets.iter().map(|(&v, s)| (v, s))
    }

    /// β = max |Σ(v)| over all vertices; 0 when every set is empty.
    pub fn beta(&self) -> usize {
        self.sets.values().map(|s| s.len()).max().unwrap_or(0)
    }

    /// Check Σ(v) ⊆ N(v) for every vertex with a non-empty set.
    pub fn validate(&self, g: &SimpleGraph) -> Result<()> {
        for (&v, sigma) in &self.sets {
            let nbrs = g
                .neighbours(v)
                .map_err(|_| Error::validation(format!("sigma set on unknown vertex {v}")))?;
            if !sigma.is_subset(nbrs) {
                return Err(Error::validation(format!(
                    "sigma({v}) is not a subset of the neighbourhood of {v}"
                )));
            }
        }
        Ok(())
    }
}

/// Why two vertices conflict: a host edge, or joint membership in the Σ-set
/// of a witness vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConflictOrigin {
    Adjacency,
    Witness(Vertex),
}

/// The simple graph whose edges are exactly the Σ-colouring constraints,
/// with a justification for every edge.
#[derive(Debug, Clone)]
pub struct ConflictGraph {
    pub base: SimpleGraph,
    pub origin: BTreeMap<(Vertex, Vertex), ConflictOrigin>,
}

impl ConflictGraph {
    pub fn origin_of(&self, u: Vertex, v: Vertex) -> Option<ConflictOrigin> {
        let key = (u.min(v), u.max(v));
        self.origin.get(&key).copied()
    }
}

/// Build the conflict graph of (g, s): uv is an edge iff uv ∈ E(g) or both
/// lie in some Σ(t). Adjacency tags take precedence; witness tags pick the
/// smallest witness.
pub fn conflict_graph(g: &SimpleGraph, s: &SigmaSystem) -> Result<ConflictGraph> {
    s.validate(g)?;
    let mut base = SimpleGraph::new();
    let mut origin = BTreeMap::new();
    for v in g.vertices() {
        base.add_vertex(v);
    }
    for (u, v) in g.edges() {
        base.add_edge(u, v)?;
        origin.insert((u, v), ConflictOrigin::Adjacency);
    }
    for (t, sigma) in s.entries() {
        let members: Vec<Vertex> = sigma.iter().copied().collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                let key = (u.min(v), u.max(v));
                if let std::collections::btree_map::Entry::Vacant(e) = origin.entry(key) {
                    base.add_edge(u, v)?;
                    e.insert(ConflictOrigin::Witness(t));
                }
            }
        }
    }
    Ok(ConflictGraph { base, origin })
}

/// d^Σ(v): the degree of v in the conflict graph.
pub fn sigma_degree(g: &SimpleGraph, s: &SigmaSystem, v: Vertex) -> Result<usize> {
    if !g.has_vertex(v) {
        return Err(Error::structure(format!("unknown vertex {v}")));
    }
    Ok(conflict_graph(g, s)?.base.degree(v))
}

/// Exact Σ-clique number with witness: a maximum clique of the conflict
/// graph via branch and bound.
pub fn sigma_clique_number(
    g: &SimpleGraph,
    s: &SigmaSystem,
    node_budget: u64,
) -> Result<CliqueOutcome> {
    let cg = conflict_graph(g, s)?;
    Ok(clique::max_clique(&cg.base, node_budget))
}

/// The cyclic-colouring instance: add one vertex per face adjacent to the
/// face's boundary vertices, with Σ_F(x_f) = that boundary.
#[derive(Debug, Clone)]
pub struct CyclicInstance {
    pub graph: SimpleGraph,
    pub sigma: SigmaSystem,
    pub face_vertices: BTreeSet<Vertex>,
}

pub fn cyclic_instance(g: &EmbeddedGraph) -> Result<CyclicInstance> {
    if !g.is_cellular() {
        return Err(Error::precondition(
            "cyclic instance needs a cellular embedding",
        ));
    }
    let trace = g.trace_faces()?;
    let mut graph = g.graph().clone();
    let mut sigma = SigmaSystem::empty();
    let mut face_vertices = BTreeSet::new();
    let first_free = g.graph().vertices().max().map_or(0, |v| v + 1);
    for (xf, walk) in (first_free..).zip(trace.walks.iter()) {
        face_vertices.insert(xf);
        let boundary = walk.boundary_vertices();
        for &v in &boundary {
            graph.add_edge(xf, v)?;
        }
        sigma.set(xf, boundary);
    }
    Ok(CyclicInstance {
        graph,
        sigma,
        face_vertices,
    })
}

impl CyclicInstance {
    /// ω*(G^S): the maximum set of original vertices that pairwise share a
    /// face, computed as a maximum clique of the conflict graph restricted
    /// to the original vertices.
    pub fn cyclic_clique_number(&self, node_budget: u64) -> Result<CliqueOutcome> {
        let cg = conflict_graph(&self.graph, &self.sigma)?;
        let originals: BTreeSet<Vertex> = self
            .graph
            .vertices()
            .filter(|v| !self.face_vertices.contains(v))
            .collect();
        Ok(clique::max_clique(&cg.base.induced(&originals), node_budget))
    }
}

/// The three generated families.
#[derive(Debug, Clone)]
pub enum Generated {
    /// Planar family with an embedding; `square_sigma` is the Σ = N system.
    Embedded(EmbeddedGraph),
    /// Abstract graph with its Σ-system (the subdivided complete graphs,
    /// which are non-planar from n = 5 on).
    Abstract(SimpleGraph, SigmaSystem),
}

/// Wegner's family (k ≥ 2): vertices x, y, z; a set A of k−1 vertices
/// adjacent to x and y; sets B and C of k vertices adjacent to {x,z} and
/// {y,z}; plus the edge xy. Maximum degree 2k and ω(G²) = 3k+1.
pub fn wegner(k: u32) -> Result<EmbeddedGraph> {
    if k < 2 {
        return Err(Error::precondition("wegner needs k >= 2"));
    }
    let (x, y, z) = (0u32, 1u32, 2u32);
    let a0 = 3;
    let b0 = a0 + (k - 1);
    let c0 = b0 + k;
    let mut g = SimpleGraph::new();
    let mut coords: BTreeMap<Vertex, (f64, f64)> = BTreeMap::new();
    coords.insert(x, (0.0, 1.0));
    coords.insert(y, (0.0, -1.0));
    coords.insert(z, (2.0, 0.0));
    g.add_edge(x, y)?;
    for i in 0..(k - 1) {
        let a = a0 + i;
        coords.insert(a, (-0.4 - 0.35 * i as f64, 0.0));
        g.add_edge(a, x)?;
        g.add_edge(a, y)?;
    }
    for i in 0..k {
        let t = 0.25 + 0.55 * i as f64 / (k - 1).max(1) as f64;
        let b = b0 + i;
        coords.insert(b, (1.0 + 0.45 * t, 0.5 + 0.9 * t));
        g.add_edge(b, x)?;
        g.add_edge(b, z)?;
        let c = c0 + i;
        coords.insert(c, (1.0 + 0.45 * t, -0.5 - 0.9 * t));
        g.add_edge(c, y)?;
        g.add_edge(c, z)?;
    }
    embed_by_angle(g, &coords, 2)
}

/// Borodin's family (k ≥ 2): a triangular prism with each of the three side
/// paths subdivided to k vertices. Three faces of order 2k, two triangles.
pub fn borodin(k: u32) -> Result<EmbeddedGraph> {
    if k < 2 {
        return Err(Error::precondition("borodin needs k >= 2"));
    }
    let vid = |path: u32, i: u32| 3 * i + path;
    let mut g = SimpleGraph::new();
    let mut coords: BTreeMap<Vertex, (f64, f64)> = BTreeMap::new();
    for i in 0..k {
        let r = 2.0 - i as f64 / (k - 1) as f64;
        for (p, base) in [(0u32, 90.0f64), (1, 210.0), (2, 330.0)] {
            let th = base.to_radians();
            coords.insert(vid(p, i), (r * th.cos(), r * th.sin()));
        }
    }
    for p in 0..3 {
        for i in 0..(k - 1) {
            g.add_edge(vid(p, i), vid(p, i + 1))?;
        }
    }
    for (p, q) in [(0, 1), (1, 2), (2, 0)] {
        g.add_edge(vid(p, 0), vid(q, 0))?;
        g.add_edge(vid(p, k - 1), vid(q, k - 1))?;
    }
    embed_by_angle(g, &coords, 2)
}

/// K_n with every edge subdivided once (n ≥ 4); branch vertices get Σ = ∅,
/// each subdivision vertex gets its two neighbours. 2-degenerate with
/// Δ(G;Σ) = 2 yet χ(G;Σ) = n.
pub fn subdivided_complete(n: u32) -> Result<(SimpleGraph, SigmaSystem)> {
    if n < 4 {
        return Err(Error::precondition("subdivided_complete needs n >= 4"));
    }
    let mut g = SimpleGraph::new();
    let mut sigma = SigmaSystem::empty();
    let mut next = n;
    for u in 0..n {
        for v in (u + 1)..n {
            let w = next;
            next += 1;
            g.add_edge(u, w)?;
            g.add_edge(v, w)?;
            sigma.set(w, BTreeSet::from([u, v]));
        }
    }
    Ok((g, sigma))
}

/// Δ(G;Σ) = max |Σ(v)|.
pub fn delta_sigma(s: &SigmaSystem) -> usize {
    s.beta()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_system_gives_host_graph() {
        let c5 = SimpleGraph::cycle(5);
        let cg = conflict_graph(&c5, &SigmaSystem::empty()).unwrap();
        assert_eq!(cg.base, c5);
    }

    #[test]
    fn full_system_gives_square() {
        let c5 = SimpleGraph::cycle(5);
        let s = SigmaSystem::full_neighbourhood(&c5);
        let cg = conflict_graph(&c5, &s).unwrap();
        assert_eq!(cg.base, SimpleGraph::complete(5));
        assert_eq!(cg.base, c5.square());
    }

    #[test]
    fn star_with_centre_sigma_is_k4() {
        let mut g = SimpleGraph::new();
        for leaf in [1, 2, 3] {
            g.add_edge(0, leaf).unwrap();
        }
        let mut s = SigmaSystem::empty();
        s.set(0, BTreeSet::from([1, 2, 3]));
        let cg = conflict_graph(&g, &s).unwrap();
        assert_eq!(cg.base, SimpleGraph::complete(4));
        assert_eq!(
            cg.origin_of(1, 2),
            Some(ConflictOrigin::Witness(0))
        );
        assert_eq!(cg.origin_of(0, 1), Some(ConflictOrigin::Adjacency));
    }

    #[test]
    fn sigma_degree_examples() {
        let c5 = SimpleGraph::cycle(5);
        let s = SigmaSystem::full_neighbourhood(&c5);
        assert_eq!(sigma_degree(&c5, &s, 0).unwrap(), 4);

        let mut star = SimpleGraph::new();
        for leaf in [1, 2, 3] {
            star.add_edge(0, leaf).unwrap();
        }
        let mut s = SigmaSystem::empty();
        s.set(0, BTreeSet::from([1, 2, 3]));
        assert_eq!(sigma_degree(&star, &s, 0).unwrap(), 3);
        assert!(sigma_degree(&star, &s, 9).is_err());
    }

    #[test]
    fn sigma_degree_upper_bound_holds() {
        let g = wegner(4).unwrap();
        let s = SigmaSystem::full_neighbourhood(g.graph());
        for v in g.graph().vertices() {
            let dsv = sigma_degree(g.graph(), &s, v).unwrap();
            let bound: usize = g.graph().degree(v)
                + s.entries()
                    .filter(|(_, set)| set.contains(&v))
                    .map(|(_, set)| set.len() - 1)
                    .sum::<usize>();
            assert!(dsv <= bound);
        }
    }

    #[test]
    fn wegner_shape() {
        for k in 2..=10u32 {
            let e = wegner(k).unwrap();
            assert_eq!(e.graph().vertex_count() as u32, 3 * k + 2);
            assert_eq!(e.graph().max_degree() as u32, 2 * k);
            assert!(e.is_cellular());
            // the square restricted to everything but z is complete
            let sq = e.graph().square();
            let all_but_z: BTreeSet<Vertex> =
                e.graph().vertices().filter(|&v| v != 2).collect();
            let restricted = sq.induced(&all_but_z);
            let n = all_but_z.len();
            assert_eq!(restricted.edge_count(), n * (n - 1) / 2);
        }
        assert!(wegner(1).is_err());
    }

    #[test]
    fn wegner_z_square_degree_counts_distance_two() {
        // z is adjacent to B ∪ C (2k vertices) and reaches x via B, y via C:
        // the conflict-graph count gives 2k + 2, not just the 2k direct edges
        let e = wegner(4).unwrap();
        let s = SigmaSystem::full_neighbourhood(e.graph());
        let by_oracle = e.graph().square().degree(2);
        assert_eq!(sigma_degree(e.graph(), &s, 2).unwrap(), by_oracle);
        assert_eq!(by_oracle, 2 * 4 + 2);
    }

    #[test]
    fn borodin_shape() {
        for k in 2..=5u32 {
            let e = borodin(k).unwrap();
            assert_eq!(e.graph().vertex_count() as u32, 3 * k);
            let trace = e.trace_faces().unwrap();
            assert_eq!(trace.max_order() as u32, 2 * k);
            let big = trace
                .walks
                .iter()
                .filter(|w| w.order() as u32 == 2 * k)
                .count();
            assert_eq!(big, 3);
        }
    }

    #[test]
    fn cyclic_instance_of_triangle() {
        let g = SimpleGraph::cycle(3);
        let rot = BTreeMap::from([(0, vec![1, 2]), (1, vec![2, 0]), (2, vec![0, 1])]);
        let e = EmbeddedGraph::new(g, rot, 2).unwrap();
        let ci = cyclic_instance(&e).unwrap();
        assert_eq!(ci.graph.vertex_count(), 5);
        assert_eq!(ci.face_vertices.len(), 2);
        for &xf in &ci.face_vertices {
            assert_eq!(ci.sigma.size(xf), 3);
        }
    }

    #[test]
    fn cyclic_instance_of_single_edge() {
        let g = SimpleGraph::from_edges([(0, 1)]).unwrap();
        let rot = BTreeMap::from([(0, vec![1]), (1, vec![0])]);
        let e = EmbeddedGraph::new(g, rot, 2).unwrap();
        let ci = cyclic_instance(&e).unwrap();
        assert_eq!(ci.face_vertices.len(), 1);
        assert_eq!(delta_sigma(&ci.sigma), 2);
        assert_eq!(ci.graph.vertex_count(), 3);
    }

    #[test]
    fn borodin_cyclic_delta() {
        let e = borodin(3).unwrap();
        let ci = cyclic_instance(&e).unwrap();
        assert_eq!(delta_sigma(&ci.sigma), 6);
    }

    #[test]
    fn borodin_vertices_pairwise_share_a_face() {
        // checked straight from the face trace, independent of the
        // conflict-graph route
        for k in 2..=8u32 {
            let e = borodin(k).unwrap();
            let boundaries: Vec<BTreeSet<Vertex>> = e
                .trace_faces()
                .unwrap()
                .walks
                .iter()
                .map(|w| w.boundary_vertices())
                .collect();
            let verts: Vec<Vertex> = e.graph().vertices().collect();
            for (i, &u) in verts.iter().enumerate() {
                for &v in &verts[i + 1..] {
                    assert!(
                        boundaries.iter().any(|b| b.contains(&u) && b.contains(&v)),
                        "borodin({k}): {u} and {v} share no face"
                    );
                }
            }
        }
    }

    #[test]
    fn subdivided_complete_shape() {
        let (g, s) = subdivided_complete(4).unwrap();
        assert_eq!(g.vertex_count(), 10);
        assert_eq!(delta_sigma(&s), 2);
        let d = crate::graph::degeneracy_ordering(&g);
        assert_eq!(d.q, 2);
        assert!(subdivided_complete(3).is_err());
    }
}
