//! Deterministic desk-scale instance families: the small-multigraph
//! catalogue, random stacked triangulations and planar seeds, the wheel
//! and double-wheel gadgets, the hand-built reduction gadget, and random
//! degenerate instances with pairwise-disjoint Σ-systems.

use crate::discharge::StructureWitness;
use crate::error::Result;
use crate::graph::{EmbeddedGraph, Multigraph, SimpleGraph};
use crate::rng::substream;
use crate::sigma::SigmaSystem;
use crate::{Colour, Vertex};
use rand::seq::SliceRandom;
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

/// A fixed catalogue of connected multigraphs with at most 5 vertices and
/// at most 8 edges: structural bases plus multiplicity variants. At least
/// 50 entries, deterministic order.
pub fn small_multigraph_catalogue() -> Vec<Multigraph> {
    let bases: Vec<Vec<(Vertex, Vertex)>> = vec![
        vec![(0, 1)],
        vec![(0, 1), (1, 2)],
        vec![(0, 1), (1, 2), (2, 3)],
        vec![(0, 1), (1, 2), (2, 3), (3, 4)],
        vec![(0, 1), (0, 2), (0, 3)],
        vec![(0, 1), (0, 2), (0, 3), (0, 4)],
        vec![(0, 1), (0, 2), (0, 3), (3, 4)],
        vec![(0, 1), (1, 2), (2, 0)],
        vec![(0, 1), (1, 2), (2, 3), (3, 0)],
        vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)],
        vec![(0, 1), (1, 2), (2, 0), (2, 3)],
        vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4)],
        vec![(0, 1), (1, 2), (2, 0), (0, 3), (1, 3)],
        vec![(0, 1), (1, 2), (2, 0), (0, 3), (1, 3), (2, 3)],
        vec![(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)],
        vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)],
        vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2), (0, 3)],
        vec![(0, 1), (1, 2), (2, 0), (2, 3), (3, 4), (4, 2)],
    ];
    let mut out: Vec<Multigraph> = Vec::new();
    for base in &bases {
        // multiplicity patterns: simple, double the first edge, double the
        // first two, triple the first, within the 8-edge budget
        let patterns: [&[usize]; 4] = [&[], &[0], &[0, 1], &[0, 0]];
        for extra in patterns {
            if extra.iter().any(|&i| i >= base.len()) {
                continue;
            }
            if base.len() + extra.len() > 8 {
                continue;
            }
            let mut g = Multigraph::new();
            let mut id = 0;
            for &(u, v) in base {
                g.add_edge(u, v, id).expect("catalogue edge");
                id += 1;
            }
            for &i in extra {
                let (u, v) = base[i];
                g.add_edge(u, v, id).expect("catalogue parallel");
                id += 1;
            }
            debug_assert!(g.is_connected());
            out.push(g);
        }
    }
    out.push(Multigraph::shannon_triangle(2));
    debug_assert!(out.len() >= 50);
    out
}

/// Wheel: hub 0 adjacent to a rim cycle 1..=rim.
pub fn wheel(rim: u32) -> EmbeddedGraph {
    let mut g = SimpleGraph::new();
    let mut rot: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for i in 0..rim {
        let v = i + 1;
        let next = (i + 1) % rim + 1;
        let prev = (i + rim - 1) % rim + 1;
        g.add_edge(0, v).unwrap();
        g.add_edge(v, next).unwrap();
        rot.insert(v, vec![next, 0, prev]);
    }
    rot.insert(0, (1..=rim).collect());
    EmbeddedGraph::new(g, rot, 2).expect("wheel embeds in the sphere")
}

/// Double wheel: an equator cycle of 2m degree-4 vertices all adjacent to
/// the poles `north = 2m` (inside) and `south = 2m+1` (outside). A planar
/// triangulation; with ζ separating poles from equator its only structure
/// is S3 with X = poles, Y = equator.
pub fn double_wheel(m: u32) -> EmbeddedGraph {
    let n = 2 * m;
    let north = n;
    let south = n + 1;
    let mut g = SimpleGraph::new();
    let mut rot: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for i in 0..n {
        g.add_edge(i, (i + 1) % n).unwrap();
        g.add_edge(i, north).unwrap();
        g.add_edge(i, south).unwrap();
        rot.insert(i, vec![(i + 1) % n, north, (i + n - 1) % n, south]);
    }
    rot.insert(north, (0..n).collect());
    rot.insert(south, (0..n).rev().collect());
    EmbeddedGraph::new(g, rot, 2).expect("double wheel embeds in the sphere")
}

/// Hexagonal wheel with the three alternating rim chords 1-3, 3-5, 5-1
/// drawn outside: a triangulation (so edge-maximal completion is the
/// identity) in which ζ = 5 makes only the hub big, and every even rim
/// vertex is then an S2 witness.
pub fn s2_triangulation() -> EmbeddedGraph {
    let mut g = SimpleGraph::new();
    let mut rot: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for i in 1..=6u32 {
        g.add_edge(0, i).unwrap();
        g.add_edge(i, i % 6 + 1).unwrap();
    }
    for (a, b) in [(1, 3), (3, 5), (5, 1)] {
        g.add_edge(a, b).unwrap();
    }
    rot.insert(0, vec![1, 2, 3, 4, 5, 6]);
    rot.insert(1, vec![2, 0, 6, 5, 3]);
    rot.insert(3, vec![4, 0, 2, 1, 5]);
    rot.insert(5, vec![6, 0, 4, 3, 1]);
    rot.insert(2, vec![3, 0, 1]);
    rot.insert(4, vec![5, 0, 3]);
    rot.insert(6, vec![1, 0, 5]);
    EmbeddedGraph::new(g, rot, 2).expect("chorded wheel embeds in the sphere")
}

/// The Σ-system that makes the double wheel reducible: each pole watches
/// the whole equator.
pub fn double_wheel_sigma(e: &EmbeddedGraph) -> SigmaSystem {
    let n = e.graph().vertex_count() as u32 - 2;
    let equator: BTreeSet<Vertex> = (0..n).collect();
    let mut s = SigmaSystem::empty();
    s.set(n, equator.clone());
    s.set(n + 1, equator);
    s
}

/// Hand-built S3 gadget whose two Y-vertices each have exactly one
/// neighbour outside X ∪ Y, exercising the contraction branch of the
/// reduction. Returns (graph, sigma, witness) with X = {0, 1}, Y = {2, 3},
/// outside absorbers u = 4 and w = 5; valid for ζ = 3.
pub fn one_outside_gadget() -> (EmbeddedGraph, SigmaSystem, StructureWitness) {
    let (x1, x2, y0, y1, u, w) = (0u32, 1u32, 2u32, 3u32, 4u32, 5u32);
    let (p1, p2, p3, r1, r2) = (6u32, 7u32, 8u32, 9u32, 10u32);
    let mut g = SimpleGraph::new();
    for (a, b) in [
        (y0, x1),
        (y0, x2),
        (y0, y1),
        (y0, u),
        (y1, x1),
        (y1, x2),
        (y1, w),
        (u, p1),
        (u, p2),
        (u, p3),
        (w, p1),
        (w, p2),
        (w, p3),
        (x1, r1),
        (x1, r2),
        (x2, r1),
        (x2, r2),
    ] {
        g.add_edge(a, b).unwrap();
    }
    let coords: BTreeMap<Vertex, (f64, f64)> = BTreeMap::from([
        (x1, (0.0, 3.0)),
        (x2, (0.0, -6.0)),
        (y0, (-2.0, 0.0)),
        (y1, (2.0, 0.0)),
        (u, (-1.2, -1.2)),
        (w, (1.2, -1.2)),
        (p1, (0.0, -0.7)),
        (p2, (0.0, -1.8)),
        (p3, (0.0, -2.8)),
        (r1, (-4.0, -1.0)),
        (r2, (4.0, -1.0)),
    ]);
    let e = crate::graph::embed_by_angle(g, &coords, 2).expect("gadget embeds in the sphere");
    let mut s = SigmaSystem::empty();
    s.set(x1, BTreeSet::from([y0, y1]));
    s.set(x2, BTreeSet::from([y0, y1]));
    let witness = StructureWitness::S3 {
        zeta: 3,
        x: BTreeSet::from([x1, x2]),
        y: BTreeSet::from([y0, y1]),
        xy: BTreeMap::from([(y0, (x1, x2)), (y1, (x1, x2))]),
    };
    (e, s, witness)
}

/// The dodecahedron: 20 vertices of degree three, 12 pentagonal faces.
/// Rings out to in: pentagon 0-4, ring 5-9, ring 10-14, pentagon 15-19.
pub fn dodecahedron() -> EmbeddedGraph {
    let mut g = SimpleGraph::new();
    let mut coords: BTreeMap<Vertex, (f64, f64)> = BTreeMap::new();
    for i in 0..5u32 {
        let a = i;
        let b = i + 5;
        let c = i + 10;
        let d = i + 15;
        g.add_edge(a, (i + 1) % 5).unwrap();
        g.add_edge(a, b).unwrap();
        g.add_edge(b, c).unwrap(); // c_i follows b_i on the middle 10-cycle
        g.add_edge(c, (i + 1) % 5 + 5).unwrap();
        g.add_edge(c, d).unwrap();
        g.add_edge(d, (i + 1) % 5 + 15).unwrap();
        let th = std::f64::consts::TAU * i as f64 / 5.0;
        let th_half = th + std::f64::consts::TAU / 10.0;
        coords.insert(a, (4.0 * th.cos(), 4.0 * th.sin()));
        coords.insert(b, (3.0 * th.cos(), 3.0 * th.sin()));
        coords.insert(c, (2.2 * th_half.cos(), 2.2 * th_half.sin()));
        coords.insert(d, (1.2 * th_half.cos(), 1.2 * th_half.sin()));
    }
    crate::graph::embed_by_angle(g, &coords, 2).expect("dodecahedron embeds in the sphere")
}

/// Random stacked triangulation: start from K4 and repeatedly insert a new
/// vertex into a random face. Always a maximal planar triangulation with
/// minimum degree 3.
pub fn random_planar_triangulation(n: u32, seed: u64) -> Result<EmbeddedGraph> {
    assert!(n >= 4);
    let mut g = SimpleGraph::complete(4);
    let mut rot: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::from([
        (0, vec![1, 3, 2]),
        (1, vec![2, 3, 0]),
        (2, vec![0, 3, 1]),
        (3, vec![0, 1, 2]),
    ]);
    // rotations of the standard K4 drawing; rebuilt below if wrong
    let mut e = match EmbeddedGraph::new(g.clone(), rot.clone(), 2) {
        Ok(e) if e.is_cellular() => e,
        _ => {
            let coords = BTreeMap::from([
                (0, (0.0, 0.0)),
                (1, (1.0, 0.0)),
                (2, (0.5, 0.9)),
                (3, (0.5, 0.3)),
            ]);
            g = SimpleGraph::complete(4);
            rot.clear();
            crate::graph::embed_by_angle(g, &coords, 2)?
        }
    };
    let mut rng = substream(seed, &[0x57AC7ED]);
    for next in 4..n {
        let trace = e.trace_faces()?;
        let idx = rng.gen_range(0..trace.walks.len());
        e = e.stack_vertex(&trace.walks[idx], next)?;
    }
    Ok(e)
}

/// A connected planar seed: a stacked triangulation with a fraction of its
/// edges removed (connectivity preserved).
pub fn random_planar_seed(n: u32, drop_fraction: f64, seed: u64) -> Result<EmbeddedGraph> {
    let mut e = random_planar_triangulation(n, seed)?;
    let mut rng = substream(seed, &[0x5EED]);
    let mut edges = e.graph().edges();
    edges.shuffle(&mut rng);
    let target = (edges.len() as f64 * drop_fraction) as usize;
    let mut dropped = 0;
    for (u, v) in edges {
        if dropped >= target {
            break;
        }
        let mut trial = e.clone();
        trial.delete_edge(u, v);
        if trial.graph().is_connected() {
            e = trial;
            dropped += 1;
        }
    }
    Ok(e)
}

/// Random graph of degeneracy at most q: each vertex joins at most q
/// earlier vertices.
pub fn random_degenerate_graph(n: u32, q: usize, seed: u64) -> SimpleGraph {
    let mut rng = substream(seed, &[0xDE_6E_4E]);
    let mut g = SimpleGraph::new();
    g.add_vertex(0);
    for v in 1..n {
        g.add_vertex(v);
        let cap = q.min(v as usize);
        let back = rng.gen_range(if cap > 0 { 1 } else { 0 }..=cap);
        let mut earlier: Vec<Vertex> = (0..v).collect();
        earlier.shuffle(&mut rng);
        for &u in earlier.iter().take(back) {
            g.add_edge(u, v).unwrap();
        }
    }
    g
}

/// A Σ-system with pairwise-disjoint sets: every vertex belongs to at most
/// one Σ(t).
pub fn random_disjoint_sigma(g: &SimpleGraph, seed: u64) -> SigmaSystem {
    let mut rng = substream(seed, &[0xD1_53_01]);
    let mut used: BTreeSet<Vertex> = BTreeSet::new();
    let mut s = SigmaSystem::empty();
    let mut verts: Vec<Vertex> = g.vertices().collect();
    verts.shuffle(&mut rng);
    for t in verts {
        if !rng.gen_bool(0.7) {
            continue;
        }
        let free: Vec<Vertex> = g
            .neighbours(t)
            .expect("vertex")
            .iter()
            .copied()
            .filter(|u| !used.contains(u))
            .collect();
        if free.is_empty() {
            continue;
        }
        let size = rng.gen_range(1..=free.len());
        let mut pool = free;
        pool.shuffle(&mut rng);
        let chosen: BTreeSet<Vertex> = pool.into_iter().take(size).collect();
        used.extend(chosen.iter().copied());
        s.set(t, chosen);
    }
    s
}

/// Random per-vertex lists of the given size from a palette slightly wider
/// than the size.
pub fn random_lists(
    g: &SimpleGraph,
    size: usize,
    palette: u32,
    seed: u64,
) -> BTreeMap<Vertex, BTreeSet<Colour>> {
    let mut rng = substream(seed, &[0x11_57_5A]);
    let palette = palette.max(size as u32);
    g.vertices()
        .map(|v| {
            let mut pool: Vec<Colour> = (0..palette).collect();
            pool.shuffle(&mut rng);
            (v, pool.into_iter().take(size).collect())
        })
        .collect()
}

/// A random Σ-system (no disjointness promise): each vertex keeps a random
/// subset of its neighbourhood with the given probability.
pub fn random_sigma(g: &SimpleGraph, keep_prob: f64, seed: u64) -> SigmaSystem {
    let mut rng = substream(seed, &[0x5D_6A]);
    let mut s = SigmaSystem::empty();
    for v in g.vertices() {
        if !rng.gen_bool(keep_prob) {
            continue;
        }
        let nbrs: Vec<Vertex> = g.neighbours(v).expect("vertex").iter().copied().collect();
        if nbrs.is_empty() {
            continue;
        }
        let size = rng.gen_range(1..=nbrs.len());
        let mut pool = nbrs;
        pool.shuffle(&mut rng);
        s.set(v, pool.into_iter().take(size).collect());
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::discharge::validate_witness;

    #[test]
    fn catalogue_is_large_and_in_budget() {
        let cat = small_multigraph_catalogue();
        assert!(cat.len() >= 50, "only {} instances", cat.len());
        for g in &cat {
            assert!(g.vertex_count() <= 5);
            assert!(g.edge_count() <= 8);
            assert!(g.is_connected());
        }
    }

    #[test]
    fn triangulations_are_maximal_planar() {
        for seed in 0..5u64 {
            let e = random_planar_triangulation(30, seed).unwrap();
            let n = e.graph().vertex_count();
            assert_eq!(e.graph().edge_count(), 3 * n - 6);
            assert_eq!(e.euler_residual().unwrap(), 2);
            assert!(e.is_cellular());
            assert!(e.consecutive_pairs_adjacent());
            assert!(e.graph().vertices().all(|v| e.graph().degree(v) >= 3));
        }
    }

    #[test]
    fn seeds_stay_connected_and_planar() {
        let e = random_planar_seed(25, 0.3, 7).unwrap();
        assert!(e.graph().is_connected());
        assert_eq!(e.euler_residual().unwrap(), 2);
    }

    #[test]
    fn degenerate_graphs_have_bounded_degeneracy() {
        for seed in 0..5u64 {
            let g = random_degenerate_graph(40, 5, seed);
            let d = crate::graph::degeneracy_ordering(&g);
            assert!(d.q <= 5);
        }
    }

    #[test]
    fn disjoint_sigma_really_is_disjoint() {
        for seed in 0..5u64 {
            let g = random_degenerate_graph(30, 4, seed);
            let s = random_disjoint_sigma(&g, seed);
            s.validate(&g).unwrap();
            let mut seen: BTreeSet<Vertex> = BTreeSet::new();
            for (_, set) in s.entries() {
                for &u in set {
                    assert!(seen.insert(u), "vertex {u} in two sigma sets");
                }
            }
        }
    }

    #[test]
    fn one_outside_gadget_validates() {
        let (e, s, w) = one_outside_gadget();
        assert_eq!(e.euler_residual().unwrap(), 2);
        s.validate(e.graph()).unwrap();
        let report = validate_witness(&e, &w).unwrap();
        assert!(report.valid, "{:?}", report.violations);
    }
}
