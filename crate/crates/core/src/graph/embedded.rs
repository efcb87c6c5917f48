//! Combinatorial embeddings: rotation systems, face tracing, Euler
//! accounting and edge-maximal completion.
//!
//! An embedding is encoded by a per-vertex circular order of neighbours plus
//! a declared Euler characteristic for the target surface. Faces are traced
//! with the next-edge rule on each local rotation; the surface is never
//! computed from scratch, only validated against the declaration.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::Vertex;
use std::collections::{BTreeMap, BTreeSet};

/// Directed edge.
pub type Dart = (Vertex, Vertex);

/// One boundary walk: the cyclic sequence of darts of a face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FaceWalk {
    pub darts: Vec<Dart>,
}

impl FaceWalk {
    /// Face degree: number of edges on the walk, multiplicity included.
    pub fn degree(&self) -> usize {
        self.darts.len()
    }

    /// Face order: number of distinct vertices on the boundary.
    pub fn order(&self) -> usize {
        self.boundary_vertices().len()
    }

    pub fn boundary_vertices(&self) -> BTreeSet<Vertex> {
        self.darts.iter().map(|&(_, v)| v).collect()
    }
}

#[derive(Debug, Clone)]
pub struct FaceTrace {
    pub walks: Vec<FaceWalk>,
}

impl FaceTrace {
    pub fn face_count(&self) -> usize {
        self.walks.len()
    }

    pub fn max_order(&self) -> usize {
        self.walks.iter().map(|w| w.order()).max().unwrap_or(0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddedGraph {
    graph: SimpleGraph,
    rotation: BTreeMap<Vertex, Vec<Vertex>>,
    surface_chi: i64,
    cellular: bool,
}

impl EmbeddedGraph {
    /// Build and validate an embedding. `cellular` is derived from the face
    /// trace, never trusted: it is set exactly when |V|-|E|+|F| = χ(S).
    pub fn new(
        graph: SimpleGraph,
        rotation: BTreeMap<Vertex, Vec<Vertex>>,
        surface_chi: i64,
    ) -> Result<Self> {
        if surface_chi > 2 {
            return Err(Error::structure(format!(
                "surface Euler characteristic {surface_chi} exceeds 2"
            )));
        }
        let mut g = Self {
            graph,
            rotation,
            surface_chi,
            cellular: false,
        };
        g.validate_rotation()?;
        let residual = g.euler_residual()?;
        if residual < surface_chi {
            return Err(Error::structure(format!(
                "face trace yields |V|-|E|+|F| = {residual} < declared chi {surface_chi}; \
                 rotation does not embed in the declared surface"
            )));
        }
        g.cellular = residual == surface_chi;
        Ok(g)
    }

    fn validate_rotation(&self) -> Result<()> {
        for v in self.graph.vertices() {
            let rot = self.rotation.get(&v).ok_or_else(|| {
                Error::structure(format!("vertex {v} has no rotation entry"))
            })?;
            let nbrs = self.graph.neighbours(v)?;
            let listed: BTreeSet<Vertex> = rot.iter().copied().collect();
            if listed.len() != rot.len() {
                return Err(Error::structure(format!(
                    "rotation at {v} repeats a neighbour"
                )));
            }
            if &listed != nbrs {
                return Err(Error::structure(format!(
                    "rotation at {v} is not a permutation of its neighbourhood"
                )));
            }
        }
        if self.rotation.len() != self.graph.vertex_count() {
            return Err(Error::structure(
                "rotation mentions a vertex not in the graph",
            ));
        }
        Ok(())
    }

    pub fn graph(&self) -> &SimpleGraph {
        &self.graph
    }

    pub fn rotation(&self, v: Vertex) -> Result<&Vec<Vertex>> {
        self.rotation
            .get(&v)
            .ok_or_else(|| Error::structure(format!("unknown vertex {v}")))
    }

    pub fn rotations(&self) -> &BTreeMap<Vertex, Vec<Vertex>> {
        &self.rotation
    }

    pub fn surface_chi(&self) -> i64 {
        self.surface_chi
    }

    pub fn is_cellular(&self) -> bool {
        self.cellular
    }

    fn succ(&self, v: Vertex, u: Vertex) -> Result<Vertex> {
        let rot = self.rotation(v)?;
        let i = rot.iter().position(|&w| w == u).ok_or_else(|| {
            Error::structure(format!("{u} is not listed in the rotation at {v}"))
        })?;
        Ok(rot[(i + 1) % rot.len()])
    }

    /// Trace every face of the embedding. Each dart lies on exactly one walk;
    /// the next dart after (u -> v) is (v -> succ(u)) in the rotation at v.
    pub fn trace_faces(&self) -> Result<FaceTrace> {
        let mut darts: BTreeSet<Dart> = BTreeSet::new();
        for (u, v) in self.graph.edges() {
            darts.insert((u, v));
            darts.insert((v, u));
        }
        let mut seen: BTreeSet<Dart> = BTreeSet::new();
        let mut walks = Vec::new();
        for &start in &darts {
            if seen.contains(&start) {
                continue;
            }
            let mut walk = Vec::new();
            let mut cur = start;
            loop {
                if !seen.insert(cur) {
                    return Err(Error::invariant(
                        "face walk re-entered a visited dart before closing",
                    ));
                }
                walk.push(cur);
                let (u, v) = cur;
                cur = (v, self.succ(v, u)?);
                if cur == start {
                    break;
                }
            }
            walks.push(FaceWalk { darts: walk });
        }
        let total: usize = walks.iter().map(|w| w.degree()).sum();
        if total != 2 * self.graph.edge_count() {
            return Err(Error::invariant(format!(
                "face degrees sum to {total}, expected 2|E| = {}",
                2 * self.graph.edge_count()
            )));
        }
        Ok(FaceTrace { walks })
    }

    /// |V| - |E| + |F| from the face trace.
    pub fn euler_residual(&self) -> Result<i64> {
        let f = self.trace_faces()?.face_count() as i64;
        Ok(self.graph.vertex_count() as i64 - self.graph.edge_count() as i64 + f)
    }

    /// Insert a chord between the corners at positions `i` and `j` of a face
    /// walk, splicing both rotations next to the generating corners. The face
    /// splits in two; the surface is unchanged.
    fn add_chord(&mut self, walk: &FaceWalk, i: usize, j: usize) -> Result<()> {
        let (p, u) = walk.darts[i];
        let (q, w) = walk.darts[j];
        if u == w {
            return Err(Error::invariant("chord endpoints coincide"));
        }
        if self.graph.has_edge(u, w) {
            return Err(Error::invariant(format!("chord {u}-{w} already present")));
        }
        // in rot(u): insert w immediately after p; in rot(w): insert u after q
        let ru = self.rotation.get_mut(&u).expect("rotation u");
        let ip = ru.iter().position(|&x| x == p).expect("p in rot(u)");
        ru.insert(ip + 1, w);
        let rw = self.rotation.get_mut(&w).expect("rotation w");
        let iq = rw.iter().position(|&x| x == q).expect("q in rot(w)");
        rw.insert(iq + 1, u);
        self.graph.add_edge(u, w)?;
        Ok(())
    }

    /// Complete the embedding to an edge-maximal one in the same surface by
    /// inserting chords across faces until every face walk offers no
    /// non-adjacent pair of corner vertices. Afterwards every pair of
    /// consecutive rotation neighbours is adjacent and, on more than three
    /// vertices, every vertex has degree at least three.
    pub fn complete_to_edge_maximal(&self) -> Result<EmbeddedGraph> {
        if !self.graph.is_connected() {
            return Err(Error::precondition(
                "edge-maximal completion needs a connected graph",
            ));
        }
        let mut g = self.clone();
        loop {
            let trace = g.trace_faces()?;
            let mut inserted = false;
            'faces: for walk in &trace.walks {
                let d = walk.degree();
                if d < 3 {
                    continue;
                }
                for i in 0..d {
                    for j in (i + 1)..d {
                        let u = walk.darts[i].1;
                        let w = walk.darts[j].1;
                        if u != w && !g.graph.has_edge(u, w) {
                            g.add_chord(walk, i, j)?;
                            inserted = true;
                            break 'faces;
                        }
                    }
                }
            }
            if !inserted {
                break;
            }
        }
        debug_assert!(g.consecutive_pairs_adjacent());
        let n = g.graph.vertex_count();
        if n > 3 {
            if let Some(v) = g.graph.vertices().find(|&v| g.graph.degree(v) < 3) {
                return Err(Error::invariant(format!(
                    "completion left vertex {v} with degree {} on {n} vertices",
                    g.graph.degree(v)
                )));
            }
        }
        let residual = g.euler_residual()?;
        g.cellular = residual == g.surface_chi;
        Ok(g)
    }

    /// Whether every pair of consecutive rotation neighbours is an edge.
    pub fn consecutive_pairs_adjacent(&self) -> bool {
        for (&v, rot) in &self.rotation {
            let d = rot.len();
            if d < 2 {
                continue;
            }
            for i in 0..d {
                let u1 = rot[i];
                let u2 = rot[(i + 1) % d];
                if u1 != u2 && !self.graph.has_edge(u1, u2) {
                    let _ = v;
                    return false;
                }
            }
        }
        true
    }

    /// Insert a new vertex inside a triangular face, joined to its three
    /// corners. The face splits into three triangles; the surface is
    /// unchanged.
    pub fn stack_vertex(&self, walk: &FaceWalk, new_id: Vertex) -> Result<EmbeddedGraph> {
        if walk.degree() != 3 || walk.order() != 3 {
            return Err(Error::precondition(
                "stack_vertex needs a triangular face with three distinct corners",
            ));
        }
        if self.graph.has_vertex(new_id) {
            return Err(Error::precondition(format!("vertex {new_id} exists")));
        }
        let (a, b) = walk.darts[0]; // (a -> b), (b -> c), (c -> a)
        let c = walk.darts[1].1;
        let mut graph = self.graph.clone();
        let mut rotation = self.rotation.clone();
        // at each corner, the new vertex slots right after the walk
        // predecessor; its own rotation is the reversed walk order
        for (v, pred) in [(b, a), (c, b), (a, c)] {
            let r = rotation.get_mut(&v).expect("rotation");
            let i = r.iter().position(|&t| t == pred).expect("pred in rot");
            r.insert(i + 1, new_id);
            graph.add_edge(v, new_id)?;
        }
        rotation.insert(new_id, vec![a, c, b]);
        EmbeddedGraph::new(graph, rotation, self.surface_chi)
    }

    /// Delete an edge, keeping the embedding (faces merge, surface unchanged).
    pub fn delete_edge(&mut self, u: Vertex, v: Vertex) {
        self.graph.remove_edge(u, v);
        if let Some(r) = self.rotation.get_mut(&u) {
            r.retain(|&x| x != v);
        }
        if let Some(r) = self.rotation.get_mut(&v) {
            r.retain(|&x| x != u);
        }
    }

    /// Contract the edge `uv` into `u`, splicing v's rotation into u's and
    /// discarding parallel edges produced by the contraction. The result
    /// embeds in the same surface; if the first splice orientation fails the
    /// residual check the reversed local rotation of `v` is used instead.
    pub fn contract_edge(&self, u: Vertex, v: Vertex) -> Result<EmbeddedGraph> {
        if !self.graph.has_edge(u, v) {
            return Err(Error::precondition(format!("{u}{v} is not an edge")));
        }
        for reverse in [false, true] {
            match self.contract_with_orientation(u, v, reverse) {
                Ok(g) => return Ok(g),
                Err(_) if !reverse => continue,
                Err(e) => return Err(e),
            }
        }
        unreachable!()
    }

    fn contract_with_orientation(&self, u: Vertex, v: Vertex, reverse: bool) -> Result<EmbeddedGraph> {
        let mut graph = self.graph.clone();
        let mut rotation = self.rotation.clone();

        // v's neighbours in rotation order starting after u, excluding u
        let rv = &self.rotation[&v];
        let pos_u = rv.iter().position(|&x| x == u).expect("u in rot(v)");
        let mut splice: Vec<Vertex> = (1..rv.len())
            .map(|k| rv[(pos_u + k) % rv.len()])
            .collect();
        if reverse {
            splice.reverse();
        }

        // he existing neighbours of u absorb duplicates
        let keep: Vec<Vertex> = splice
            .iter()
            .copied()
            .filter(|&w| !graph.has_edge(u, w) && w != u)
            .collect();

        let ru = rotation.get_mut(&u).expect("rot u");
        let pos_v = ru.iter().position(|&x| x == v).expect("v in rot(u)");
        ru.splice(pos_v..=pos_v, keep.iter().copied());

        for &w in &splice {
            let rw = rotation.get_mut(&w).expect("rot w");
            if keep.contains(&w) {
                let i = rw.iter().position(|&x| x == v).expect("v in rot(w)");
                rw[i] = u;
            } else {
                rw.retain(|&x| x != v);
            }
        }
        rotation.remove(&v);

        graph.remove_vertex(v);
        for &w in &keep {
            graph.add_edge(u, w)?;
        }

        EmbeddedGraph::new(graph, rotation, self.surface_chi)
    }
}

/// Embed a graph from straight-line coordinates: the rotation at each vertex
/// is its neighbours sorted by angle. Valid whenever the drawing is
/// crossing-free; `EmbeddedGraph::new` verifies the declared surface.
pub fn embed_by_angle(
    graph: SimpleGraph,
    coords: &BTreeMap<Vertex, (f64, f64)>,
    surface_chi: i64,
) -> Result<EmbeddedGraph> {
    let mut rotation = BTreeMap::new();
    for v in graph.vertices() {
        let (vx, vy) = coords
            .get(&v)
            .copied()
            .ok_or_else(|| Error::structure(format!("no coordinates for vertex {v}")))?;
        let mut nbrs: Vec<Vertex> = graph.neighbours(v)?.iter().copied().collect();
        nbrs.sort_by(|&a, &b| {
            let ka = (coords[&a].1 - vy).atan2(coords[&a].0 - vx);
            let kb = (coords[&b].1 - vy).atan2(coords[&b].0 - vx);
            ka.partial_cmp(&kb).expect("finite angles").then(a.cmp(&b))
        });
        rotation.insert(v, nbrs);
    }
    EmbeddedGraph::new(graph, rotation, surface_chi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_sphere() -> EmbeddedGraph {
        let g = SimpleGraph::cycle(3);
        let rot = BTreeMap::from([(0, vec![1, 2]), (1, vec![2, 0]), (2, vec![0, 1])]);
        EmbeddedGraph::new(g, rot, 2).unwrap()
    }

    pub(crate) fn k4_sphere() -> EmbeddedGraph {
        let g = SimpleGraph::complete(4);
        let coords = BTreeMap::from([
            (0, (0.0, 0.0)),
            (1, (1.0, 0.0)),
            (2, (0.5, 0.9)),
            (3, (0.5, 0.3)),
        ]);
        embed_by_angle(g, &coords, 2).unwrap()
    }

    #[test]
    fn triangle_has_two_triangular_faces() {
        let t = triangle_sphere().trace_faces().unwrap();
        assert_eq!(t.face_count(), 2);
        assert!(t.walks.iter().all(|w| w.degree() == 3));
    }

    #[test]
    fn single_edge_has_one_face_of_degree_two() {
        let g = SimpleGraph::from_edges([(0, 1)]).unwrap();
        let rot = BTreeMap::from([(0, vec![1]), (1, vec![0])]);
        let e = EmbeddedGraph::new(g, rot, 2).unwrap();
        let t = e.trace_faces().unwrap();
        assert_eq!(t.face_count(), 1);
        assert_eq!(t.walks[0].degree(), 2);
        assert!(e.is_cellular());
    }

    #[test]
    fn k4_planar_rotation_four_triangles() {
        let e = k4_sphere();
        let t = e.trace_faces().unwrap();
        assert_eq!(t.face_count(), 4);
        assert!(t.walks.iter().all(|w| w.degree() == 3));
        assert_eq!(e.euler_residual().unwrap(), 2);
    }

    #[test]
    fn cube_residual_is_two() {
        // Q3 with rotations from the standard planar drawing (outer 0123,
        // inner 4567, spokes i -> i+4).
        let mut g = SimpleGraph::new();
        for i in 0..4u32 {
            g.add_edge(i, (i + 1) % 4).unwrap();
            g.add_edge(i + 4, (i + 1) % 4 + 4).unwrap();
            g.add_edge(i, i + 4).unwrap();
        }
        let coords = BTreeMap::from([
            (0, (0.0, 0.0)),
            (1, (3.0, 0.0)),
            (2, (3.0, 3.0)),
            (3, (0.0, 3.0)),
            (4, (1.0, 1.0)),
            (5, (2.0, 1.0)),
            (6, (2.0, 2.0)),
            (7, (1.0, 2.0)),
        ]);
        let e = embed_by_angle(g, &coords, 2).unwrap();
        assert_eq!(e.euler_residual().unwrap(), 2);
        assert!(e.is_cellular());
    }

    #[test]
    fn k5_torus_rotation_residual_zero() {
        // rotation (i+1, i+2, i+4, i+3) realizes K5 on the torus
        let g = SimpleGraph::complete(5);
        let rot: BTreeMap<Vertex, Vec<Vertex>> = (0..5)
            .map(|i| (i, vec![(i + 1) % 5, (i + 2) % 5, (i + 4) % 5, (i + 3) % 5]))
            .collect();
        let e = EmbeddedGraph::new(g, rot, 0).unwrap();
        assert_eq!(e.euler_residual().unwrap(), 0);
        assert!(e.is_cellular());
        assert_eq!(e.trace_faces().unwrap().face_count(), 5);
    }

    #[test]
    fn malformed_rotation_rejected() {
        let g = SimpleGraph::cycle(3);
        let rot = BTreeMap::from([(0, vec![1]), (1, vec![2, 0]), (2, vec![0, 1])]);
        assert!(EmbeddedGraph::new(g, rot, 2).is_err());
    }

    #[test]
    fn completion_of_k4_is_identity() {
        let e = k4_sphere();
        let c = e.complete_to_edge_maximal().unwrap();
        assert_eq!(c.graph(), e.graph());
        assert_eq!(c.rotations(), e.rotations());
    }

    #[test]
    fn completion_of_c4_triangulates() {
        let g = SimpleGraph::cycle(4);
        let coords = BTreeMap::from([
            (0, (0.0, 0.0)),
            (1, (1.0, 0.0)),
            (2, (1.0, 1.0)),
            (3, (0.0, 1.0)),
        ]);
        let e = embed_by_angle(g, &coords, 2).unwrap();
        let c = e.complete_to_edge_maximal().unwrap();
        // spec sketch suggests a single chord, but the consecutive-pair
        // postcondition forces both diagonals: the outer 4-face must be
        // triangulated as well, giving K4
        assert_eq!(c.graph(), &SimpleGraph::complete(4));
        assert!(c.consecutive_pairs_adjacent());
        assert_eq!(c.euler_residual().unwrap(), 2);
    }

    #[test]
    fn completion_of_p4_gives_k4() {
        let g = SimpleGraph::path(4);
        let coords = BTreeMap::from([
            (0, (0.0, 0.0)),
            (1, (1.0, 0.1)),
            (2, (2.0, -0.1)),
            (3, (3.0, 0.0)),
        ]);
        let e = embed_by_angle(g, &coords, 2).unwrap();
        let c = e.complete_to_edge_maximal().unwrap();
        assert_eq!(c.graph(), &SimpleGraph::complete(4));
        assert!((0..4).all(|v| c.graph().degree(v) >= 3));
    }

    #[test]
    fn completion_is_idempotent() {
        let g = SimpleGraph::cycle(6);
        let coords: BTreeMap<Vertex, (f64, f64)> = (0..6u32)
            .map(|i| {
                let a = std::f64::consts::TAU * i as f64 / 6.0;
                (i, (a.cos(), a.sin()))
            })
            .collect();
        let e = embed_by_angle(g, &coords, 2).unwrap();
        let once = e.complete_to_edge_maximal().unwrap();
        let twice = once.complete_to_edge_maximal().unwrap();
        assert_eq!(once, twice);
    }

    #[test]
    fn disconnected_completion_rejected() {
        let mut g = SimpleGraph::cycle(3);
        g.add_edge(10, 11).unwrap();
        let rot = BTreeMap::from([
            (0, vec![1, 2]),
            (1, vec![2, 0]),
            (2, vec![0, 1]),
            (10, vec![11]),
            (11, vec![10]),
        ]);
        let e = EmbeddedGraph::new(g, rot, 2).unwrap();
        assert!(e.complete_to_edge_maximal().is_err());
    }

    #[test]
    fn contraction_keeps_surface() {
        let e = k4_sphere();
        let c = e.contract_edge(0, 3).unwrap();
        assert_eq!(c.graph().vertex_count(), 3);
        assert_eq!(c.graph(), &SimpleGraph::cycle(3));
        assert!(c.euler_residual().unwrap() >= 2);
    }
}
