//! Degeneracy orderings by min-degree peeling.

use crate::graph::SimpleGraph;
use crate::Vertex;
use std::collections::BTreeMap;

/// An ordering v1..vn in which every vertex has at most `q` neighbours among
/// its predecessors; `q` is the value achieved by the min-degree peel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegeneracyOrdering {
    pub order: Vec<Vertex>,
    pub q: usize,
}

/// Repeatedly peel a minimum-degree vertex (smallest id on ties); the
/// ordering is the reverse of the removal sequence and `q` is the largest
/// degree seen at removal time.
pub fn degeneracy_ordering(g: &SimpleGraph) -> DegeneracyOrdering {
    let mut degs: BTreeMap<Vertex, usize> =
        g.vertices().map(|v| (v, g.degree(v))).collect();
    let mut removed: Vec<Vertex> = Vec::with_capacity(degs.len());
    let mut gone: BTreeMap<Vertex, bool> = g.vertices().map(|v| (v, false)).collect();
    let mut q = 0;
    while removed.len() < gone.len() {
        let (&v, &d) = degs
            .iter()
            .min_by_key(|&(&v, &d)| (d, v))
            .expect("nonempty degree map");
        q = q.max(d);
        removed.push(v);
        degs.remove(&v);
        gone.insert(v, true);
        for &u in g.neighbours(v).expect("known vertex") {
            if !gone[&u] {
                *degs.get_mut(&u).expect("live neighbour") -= 1;
            }
        }
    }
    removed.reverse();
    DegeneracyOrdering { order: removed, q }
}

impl DegeneracyOrdering {
    /// One-pass verification: back-degree of every vertex is at most q, and
    /// q is attained.
    pub fn verify(&self, g: &SimpleGraph) -> bool {
        let mut placed: std::collections::BTreeSet<Vertex> = Default::default();
        let mut max_back = 0;
        for &v in &self.order {
            let Ok(nbrs) = g.neighbours(v) else {
                return false;
            };
            let back = nbrs.iter().filter(|u| placed.contains(u)).count();
            max_back = max_back.max(back);
            placed.insert(v);
        }
        placed.len() == g.vertex_count() && max_back == self.q
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tree_is_one_degenerate() {
        let g = SimpleGraph::from_edges([(0, 1), (1, 2), (1, 3), (3, 4)]).unwrap();
        let d = degeneracy_ordering(&g);
        assert_eq!(d.q, 1);
        assert!(d.verify(&g));
    }

    #[test]
    fn cycle_is_two_degenerate() {
        for n in 3..8 {
            let g = SimpleGraph::cycle(n);
            let d = degeneracy_ordering(&g);
            assert_eq!(d.q, 2);
            assert!(d.verify(&g));
        }
    }

    #[test]
    fn icosahedron_is_five_degenerate() {
        // 5-regular: the peel must remove a degree-5 vertex first, so q = 5
        let g = icosahedron();
        assert!(g.vertices().all(|v| g.degree(v) == 5));
        let d = degeneracy_ordering(&g);
        assert_eq!(d.q, 5);
        assert!(d.verify(&g));
    }

    pub(crate) fn icosahedron() -> SimpleGraph {
        // antiprism of two pentagons 0..5 and 5..10 plus apexes 10, 11
        let mut g = SimpleGraph::new();
        for i in 0..5u32 {
            g.add_edge(i, (i + 1) % 5).unwrap();
            g.add_edge(i + 5, (i + 1) % 5 + 5).unwrap();
            g.add_edge(i, i + 5).unwrap();
            g.add_edge(i, (i + 1) % 5 + 5).unwrap();
            g.add_edge(10, i).unwrap();
            g.add_edge(11, i + 5).unwrap();
        }
        g
    }
}
