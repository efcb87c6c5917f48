//! Reduce a detected S3 structure to a multigraph list edge-colouring
//! instance: delete or contract away the Y-vertices to get the smaller
//! graph G0 with its inherited Σ-system, then encode the remaining
//! colouring freedom of Y as edges of a multigraph H on X with residual
//! colour lists.

use crate::colouring::{validate_partial, ListAssignment};
use crate::discharge::StructureWitness;
use crate::error::{Error, Result};
use crate::graph::{EmbeddedGraph, Multigraph};
use crate::polytope::ODD_SET_EXHAUSTIVE_LIMIT;
use crate::sigma::{conflict_graph, SigmaSystem};
use crate::{Colour, EdgeId, Vertex};
use std::collections::{BTreeMap, BTreeSet};

/// The kind of one applied reduction move.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MoveKind {
    /// y had no neighbour outside X ∪ Y: deleted, chord x1x2 added (unless
    /// already present).
    Chord {
        x1: Vertex,
        x2: Vertex,
        added_edge: bool,
    },
    /// y had exactly one outside neighbour: contracted into it.
    ContractOne { into: Vertex },
    /// y had exactly two outside neighbours u < u': contracted into u,
    /// with u added to Σ(u').
    ContractTwo { into: Vertex, other: Vertex },
}

/// One applied reduction move. The snapshot holds the pre-move rotations of
/// the removed vertex and its then-current neighbours, which is enough to
/// undo the move exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub y: Vertex,
    pub kind: MoveKind,
    pub snapshot: Vec<(Vertex, Vec<Vertex>)>,
}

#[derive(Debug, Clone)]
pub struct ReducedInstance {
    pub g0: EmbeddedGraph,
    pub sigma0: SigmaSystem,
    pub trace: Vec<Move>,
}

/// Undo the trace in reverse, rebuilding the original embedded graph from
/// G0. Rotations fully determine the graph, so restoring the snapshotted
/// rotations (and the removed vertex) at each step reverses the move.
pub fn replay_trace(g0: &EmbeddedGraph, trace: &[Move]) -> Result<EmbeddedGraph> {
    let mut rotation = g0.rotations().clone();
    for mv in trace.iter().rev() {
        for (v, rot) in &mv.snapshot {
            rotation.insert(*v, rot.clone());
        }
    }
    let mut graph = crate::graph::SimpleGraph::new();
    for (&v, rot) in &rotation {
        graph.add_vertex(v);
        for &u in rot {
            if !rotation.get(&u).is_some_and(|r| r.contains(&v)) {
                return Err(Error::invariant(format!(
                    "replay produced an asymmetric rotation at {v}-{u}"
                )));
            }
            if !graph.has_edge(v, u) {
                graph.add_edge(v, u)?;
            }
        }
    }
    EmbeddedGraph::new(graph, rotation, g0.surface_chi())
}

type S3Parts<'a> = (
    &'a BTreeSet<Vertex>,
    &'a BTreeSet<Vertex>,
    &'a BTreeMap<Vertex, (Vertex, Vertex)>,
);

fn s3_parts(w: &StructureWitness) -> Result<S3Parts<'_>> {
    match w {
        StructureWitness::S3 { x, y, xy, .. } => Ok((x, y, xy)),
        other => Err(Error::precondition(format!(
            "reduction needs an S3 witness, got {}",
            other.kind()
        ))),
    }
}

/// The reducibility precondition: every y ∈ Y lies in Σ(x1) ∩ Σ(x2) of its
/// two X-neighbours.
pub fn check_reducible(s: &SigmaSystem, w: &StructureWitness) -> Result<()> {
    let (_, y, xy) = s3_parts(w)?;
    if y.is_empty() {
        return Err(Error::precondition("witness invalid: Y is empty"));
    }
    for &v in y {
        let (x1, x2) = xy[&v];
        if !s.get(x1).contains(&v) || !s.get(x2).contains(&v) {
            return Err(Error::precondition(format!(
                "not a reducible witness: {v} is missing from sigma({x1}) or sigma({x2})"
            )));
        }
    }
    Ok(())
}

/// Build G0 and Σ0 by removing Y: chord moves first, then single
/// contractions, then double contractions, each in ascending vertex id.
pub fn build_reduced_instance(
    g: &EmbeddedGraph,
    s: &SigmaSystem,
    w: &StructureWitness,
    beta: usize,
) -> Result<ReducedInstance> {
    let (x, y, xy) = s3_parts(w)?;
    check_reducible(s, w)?;
    s.validate(g.graph())?;

    let in_core = |v: Vertex| x.contains(&v) || y.contains(&v);
    // classify from the original graph
    let mut chords: Vec<Vertex> = Vec::new();
    let mut one_outside: Vec<(Vertex, Vertex)> = Vec::new();
    let mut two_outside: Vec<(Vertex, Vertex, Vertex)> = Vec::new();
    for &v in y {
        let outside: Vec<Vertex> = g
            .graph()
            .neighbours(v)?
            .iter()
            .copied()
            .filter(|&u| !in_core(u))
            .collect();
        match outside.as_slice() {
            [] => chords.push(v),
            [u] => one_outside.push((v, *u)),
            [u, u2] => two_outside.push((v, *u, *u2)),
            more => {
                return Err(Error::precondition(format!(
                    "Y-vertex {v} has {} outside neighbours; a valid S3 witness allows at most 2",
                    more.len()
                )))
            }
        }
    }

    let mut cur = g.clone();
    let mut sig = s.clone();
    let mut relabel: Vec<Move> = Vec::new();
    let mut sigma_from_neighbourhood: BTreeSet<Vertex> = BTreeSet::new();

    let snapshot_around = |cur: &EmbeddedGraph, yv: Vertex| -> Result<Vec<(Vertex, Vec<Vertex>)>> {
        let mut snap = vec![(yv, cur.rotation(yv)?.clone())];
        for &w in cur.graph().neighbours(yv)? {
            snap.push((w, cur.rotation(w)?.clone()));
        }
        Ok(snap)
    };

    for &yv in &chords {
        let (x1, x2) = xy[&yv];
        let snapshot = snapshot_around(&cur, yv)?;
        let added = !cur.graph().has_edge(x1, x2);
        cur = delete_y_with_chord(&cur, yv, x1, x2)?;
        let mut s1 = sig.get(x1);
        s1.remove(&yv);
        if added || cur.graph().has_edge(x1, x2) {
            s1.insert(x2);
        }
        sig.set(x1, s1);
        let mut s2 = sig.get(x2);
        s2.remove(&yv);
        s2.insert(x1);
        sig.set(x2, s2);
        relabel.push(Move {
            y: yv,
            kind: MoveKind::Chord {
                x1,
                x2,
                added_edge: added,
            },
            snapshot,
        });
    }
    for &(yv, u) in &one_outside {
        let (x1, x2) = xy[&yv];
        let snapshot = snapshot_around(&cur, yv)?;
        cur = cur.contract_edge(u, yv)?;
        for xv in [x1, x2] {
            let mut sx = sig.get(xv);
            sx.remove(&yv);
            sig.set(xv, sx);
        }
        sigma_from_neighbourhood.insert(u);
        relabel.push(Move {
            y: yv,
            kind: MoveKind::ContractOne { into: u },
            snapshot,
        });
    }
    for &(yv, a, b) in &two_outside {
        let (u, other) = (a.min(b), a.max(b));
        let (x1, x2) = xy[&yv];
        let snapshot = snapshot_around(&cur, yv)?;
        cur = cur.contract_edge(u, yv)?;
        for xv in [x1, x2] {
            let mut sx = sig.get(xv);
            sx.remove(&yv);
            sig.set(xv, sx);
        }
        let mut so = sig.get(other);
        so.remove(&yv);
        so.insert(u);
        sig.set(other, so);
        sigma_from_neighbourhood.insert(u);
        relabel.push(Move {
            y: yv,
            kind: MoveKind::ContractTwo { into: u, other },
            snapshot,
        });
    }

    // vertices absorbed by contractions get the full neighbourhood, the
    // rest lose every reference to the departed Y-vertices
    let mut sigma0 = SigmaSystem::empty();
    for v in cur.graph().vertices() {
        let set: BTreeSet<Vertex> = if sigma_from_neighbourhood.contains(&v) {
            cur.graph().neighbours(v)?.clone()
        } else {
            sig.get(v)
                .into_iter()
                .filter(|u| !y.contains(u))
                .collect()
        };
        if set.len() > beta {
            return Err(Error::invariant(format!(
                "sigma0({v}) has {} > beta = {beta} members",
                set.len()
            )));
        }
        sigma0.set(v, set);
    }
    sigma0.validate(cur.graph())?;

    let expected: BTreeSet<Vertex> = g.graph().vertices().filter(|v| !y.contains(v)).collect();
    let got: BTreeSet<Vertex> = cur.graph().vertices().collect();
    if expected != got {
        return Err(Error::invariant("G0 vertex set is not V minus Y"));
    }
    Ok(ReducedInstance {
        g0: cur,
        sigma0,
        trace: relabel,
    })
}

/// Delete y and draw the chord x1x2 through its old position. When x1x2 is
/// already present the entries for y are simply removed.
fn delete_y_with_chord(
    g: &EmbeddedGraph,
    y: Vertex,
    x1: Vertex,
    x2: Vertex,
) -> Result<EmbeddedGraph> {
    let mut graph = g.graph().clone();
    let mut rotation = g.rotations().clone();
    let add_chord = !graph.has_edge(x1, x2);
    for &w in g.graph().neighbours(y)? {
        let r = rotation.get_mut(&w).expect("rotation");
        if add_chord && w == x1 {
            let i = r.iter().position(|&t| t == y).expect("y in rot(x1)");
            r[i] = x2;
        } else if add_chord && w == x2 {
            let i = r.iter().position(|&t| t == y).expect("y in rot(x2)");
            r[i] = x1;
        } else {
            r.retain(|&t| t != y);
        }
    }
    rotation.remove(&y);
    graph.remove_vertex(y);
    if add_chord {
        graph.add_edge(x1, x2)?;
    }
    EmbeddedGraph::new(graph, rotation, g.surface_chi())
}

/// The multigraph list edge-colouring instance distilled from an S3
/// structure and a partial colouring of V ∖ Y.
#[derive(Debug, Clone)]
pub struct MatchingInstance {
    pub h: Multigraph,
    pub lists: BTreeMap<EdgeId, BTreeSet<Colour>>,
    /// σ(x) = |Σ(x)| in the original system.
    pub sigma: BTreeMap<Vertex, usize>,
    /// e_y → y.
    pub origin: BTreeMap<EdgeId, Vertex>,
}

impl MatchingInstance {
    /// Σ_{w∈W}(σ(w)−d_H(w)) ≤ e_H(W, X∖W) + ζ|W| for every non-empty W,
    /// exhaustive up to 16 vertices (sampled never needed at desk scale).
    pub fn verify_density(&self, zeta: i64) -> Result<Vec<String>> {
        let verts: Vec<Vertex> = self.h.vertices().collect();
        let n = verts.len();
        if n > ODD_SET_EXHAUSTIVE_LIMIT {
            return Err(Error::Budget(format!(
                "density check enumerates subsets; {n} vertices exceed the limit"
            )));
        }
        let mut violations = Vec::new();
        for mask in 1u64..(1u64 << n) {
            let w: BTreeSet<Vertex> = verts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect();
            let lhs: i64 = w
                .iter()
                .map(|&v| self.sigma.get(&v).copied().unwrap_or(0) as i64 - self.h.degree(v) as i64)
                .sum();
            let rhs = self.h.e_cross(&w) as i64 + zeta * w.len() as i64;
            if lhs > rhs {
                violations.push(format!("density: W = {w:?} exceeds by {}", lhs - rhs));
            }
        }
        Ok(violations)
    }
}

/// Build H on X: one edge e_y joining X^y per y ∈ Y, with
/// L(e_y) = L(y) minus the colours of {x1,x2} ∪ ((Z ∪ N(Z)) ∖ Y) ∪
/// ((Σ(x1) ∪ Σ(x2)) ∖ Y), where Z is the set of non-X neighbours of y.
pub fn build_matching_instance(
    g: &EmbeddedGraph,
    s: &SigmaSystem,
    w: &StructureWitness,
    partial: &BTreeMap<Vertex, Colour>,
    lists: &ListAssignment,
    zeta: i64,
) -> Result<MatchingInstance> {
    let (x, y, xy) = s3_parts(w)?;
    check_reducible(s, w)?;
    validate_partial(g.graph(), s, partial, Some(lists), y)?;

    let mut h = Multigraph::new();
    for &xv in x {
        h.add_vertex(xv);
    }
    let mut hlists: BTreeMap<EdgeId, BTreeSet<Colour>> = BTreeMap::new();
    let mut origin: BTreeMap<EdgeId, Vertex> = BTreeMap::new();
    for (next_id, &yv) in (0..).zip(y.iter()) {
        let (x1, x2) = xy[&yv];
        let mut forbidden_vertices: BTreeSet<Vertex> = BTreeSet::from([x1, x2]);
        let z: BTreeSet<Vertex> = g
            .graph()
            .neighbours(yv)?
            .iter()
            .copied()
            .filter(|u| !x.contains(u))
            .collect();
        for &zv in &z {
            if !y.contains(&zv) {
                forbidden_vertices.insert(zv);
            }
            for &u in g.graph().neighbours(zv)? {
                if !y.contains(&u) {
                    forbidden_vertices.insert(u);
                }
            }
        }
        for xv in [x1, x2] {
            for &u in &s.get(xv) {
                if !y.contains(&u) {
                    forbidden_vertices.insert(u);
                }
            }
        }
        let forbidden_colours: BTreeSet<Colour> = forbidden_vertices
            .iter()
            .filter_map(|v| partial.get(v).copied())
            .collect();
        let base = lists.get(yv)?;
        let residual: BTreeSet<Colour> =
            base.difference(&forbidden_colours).copied().collect();
        let id: EdgeId = next_id;
        h.add_edge(x1, x2, id)?;
        hlists.insert(id, residual);
        origin.insert(id, yv);
    }

    let sigma: BTreeMap<Vertex, usize> = x.iter().map(|&xv| (xv, s.size(xv))).collect();
    let instance = MatchingInstance {
        h,
        lists: hlists,
        sigma,
        origin,
    };

    // d_H(x) ≤ σ(x), guaranteed by the reducibility precondition
    for &xv in x {
        if instance.h.degree(xv) > instance.sigma[&xv] {
            return Err(Error::invariant(format!(
                "d_H({xv}) = {} exceeds sigma({xv}) = {}",
                instance.h.degree(xv),
                instance.sigma[&xv]
            )));
        }
    }
    // per-edge size bound: |L(e_y)| ≥ |L(y)| − 10 − slack(x1) − slack(x2)
    for (&id, &yv) in &instance.origin {
        let (x1, x2) = instance.h.endpoints(id)?;
        let slack = |xv: Vertex| instance.sigma[&xv] as i64 - instance.h.degree(xv) as i64;
        let floor = lists.get(yv)?.len() as i64 - 10 - slack(x1) - slack(x2);
        if (instance.lists[&id].len() as i64) < floor {
            return Err(Error::invariant(format!(
                "residual list of edge {id} has {} colours, below the bound {floor}",
                instance.lists[&id].len()
            )));
        }
    }
    let density = instance.verify_density(zeta)?;
    if !density.is_empty() {
        return Err(Error::invariant(density.join("; ")));
    }
    Ok(instance)
}

/// Extend a partial colouring by giving each y the colour of its edge e_y,
/// then validate the result as a full list Σ-colouring. A conflict here
/// indicates a bug, so it is reported as an invariant error naming the
/// conflicting pair and its origin.
pub fn extend_colouring(
    g: &EmbeddedGraph,
    s: &SigmaSystem,
    lists: &ListAssignment,
    partial: &BTreeMap<Vertex, Colour>,
    h_colouring: &BTreeMap<EdgeId, Colour>,
    instance: &MatchingInstance,
) -> Result<BTreeMap<Vertex, Colour>> {
    // h_colouring must be proper on H with colours from the edge lists
    for (&id, &c) in h_colouring {
        let list = instance
            .lists
            .get(&id)
            .ok_or_else(|| Error::precondition(format!("unknown edge {id} in H-colouring")))?;
        if !list.contains(&c) {
            return Err(Error::precondition(format!(
                "edge {id} coloured {c}, which is outside its list"
            )));
        }
    }
    let ids: Vec<EdgeId> = instance.h.edge_ids().collect();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            let (u1, v1) = instance.h.endpoints(a)?;
            let (u2, v2) = instance.h.endpoints(b)?;
            let adjacent = u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2;
            if adjacent && h_colouring.get(&a) == h_colouring.get(&b) {
                return Err(Error::precondition(format!(
                    "H-colouring is not proper: edges {a} and {b} share a vertex and a colour"
                )));
            }
        }
    }
    let mut total = partial.clone();
    for (&id, &yv) in &instance.origin {
        let c = h_colouring
            .get(&id)
            .ok_or_else(|| Error::precondition(format!("edge {id} (for {yv}) is uncoloured")))?;
        total.insert(yv, *c);
    }
    // full validation against the conflict graph and the lists
    let cg = conflict_graph(g.graph(), s)?;
    for v in g.graph().vertices() {
        let c = total
            .get(&v)
            .ok_or_else(|| Error::invariant(format!("extension left {v} uncoloured")))?;
        if !lists.get(v)?.contains(c) {
            return Err(Error::invariant(format!(
                "vertex {v} received colour {c} outside its list"
            )));
        }
    }
    for (u, v) in cg.base.edges() {
        if total[&u] == total[&v] {
            let origin = cg.origin_of(u, v);
            return Err(Error::invariant(format!(
                "conflict: {u} and {v} share colour {} (origin {origin:?})",
                total[&u]
            )));
        }
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;
    use crate::discharge::{detect_structure, validate_witness};

    #[test]
    fn double_wheel_all_chords() {
        // every equator vertex has all four neighbours in X ∪ Y
        let e = catalogue::double_wheel(4);
        let s = catalogue::double_wheel_sigma(&e);
        let out = detect_structure(&e, 5).unwrap();
        let w = out.witness().expect("S3").clone();
        let red = build_reduced_instance(&e, &s, &w, 16).unwrap();
        assert_eq!(red.g0.graph().vertex_count(), 2);
        assert!(red.g0.graph().has_edge(8, 9));
        assert!(red
            .trace
            .iter()
            .all(|m| matches!(m.kind, MoveKind::Chord { .. })));
        // the first chord introduces the edge, later ones find it present
        assert_eq!(
            red.trace
                .iter()
                .filter(|m| matches!(m.kind, MoveKind::Chord { added_edge: true, .. }))
                .count(),
            1
        );
        // the trace undoes exactly
        let replayed = replay_trace(&red.g0, &red.trace).unwrap();
        assert_eq!(&replayed, &e);
        assert_eq!(red.sigma0.get(8), BTreeSet::from([9]));
        assert_eq!(red.sigma0.get(9), BTreeSet::from([8]));
    }

    #[test]
    fn one_outside_gadget_contracts() {
        let (e, s, w) = catalogue::one_outside_gadget();
        assert!(validate_witness(&e, &w).unwrap().valid);
        let n = e.graph().vertex_count();
        let red = build_reduced_instance(&e, &s, &w, 8).unwrap();
        assert_eq!(red.g0.graph().vertex_count(), n - 2);
        let kinds: Vec<(Vertex, &MoveKind)> =
            red.trace.iter().map(|m| (m.y, &m.kind)).collect();
        assert_eq!(
            kinds,
            vec![
                (2, &MoveKind::ContractOne { into: 4 }),
                (3, &MoveKind::ContractOne { into: 5 }),
            ]
        );
        let replayed = replay_trace(&red.g0, &red.trace).unwrap();
        assert_eq!(&replayed, &e);
        // absorbing vertices carry their full neighbourhood as sigma
        assert_eq!(red.sigma0.get(4), red.g0.graph().neighbours(4).unwrap().clone());
        assert_eq!(red.sigma0.get(5), red.g0.graph().neighbours(5).unwrap().clone());
        // claim: adjacency and conflicts between kept vertices persist
        let cg_before = conflict_graph(e.graph(), &s).unwrap();
        let cg_after = conflict_graph(red.g0.graph(), &red.sigma0).unwrap();
        for (u, v) in cg_before.base.edges() {
            if red.g0.graph().has_vertex(u) && red.g0.graph().has_vertex(v) {
                assert!(
                    cg_after.base.has_edge(u, v),
                    "conflict {u}-{v} lost in reduction"
                );
            }
        }
    }

    #[test]
    fn conflicts_persist_across_the_gadget_family() {
        // adjacency between kept vertices persists in G0, and sigma
        // conflicts persist as adjacency or a sigma0 conflict
        for m in 3..=6u32 {
            let e = catalogue::double_wheel(m);
            let s = catalogue::double_wheel_sigma(&e);
            let w = detect_structure(&e, 5).unwrap().witness().unwrap().clone();
            let red = build_reduced_instance(&e, &s, &w, 4 * m as usize).unwrap();
            let before = conflict_graph(e.graph(), &s).unwrap();
            let after = conflict_graph(red.g0.graph(), &red.sigma0).unwrap();
            for (u, v) in before.base.edges() {
                if red.g0.graph().has_vertex(u) && red.g0.graph().has_vertex(v) {
                    assert!(after.base.has_edge(u, v), "m={m}: conflict {u}-{v} lost");
                }
            }
            let replayed = replay_trace(&red.g0, &red.trace).unwrap();
            assert_eq!(&replayed, &e, "m={m}: replay mismatch");
        }
    }

    #[test]
    fn empty_y_is_rejected() {
        let e = catalogue::double_wheel(3);
        let s = catalogue::double_wheel_sigma(&e);
        let w = StructureWitness::S3 {
            zeta: 5,
            x: BTreeSet::from([6, 7]),
            y: BTreeSet::new(),
            xy: BTreeMap::new(),
        };
        assert!(build_reduced_instance(&e, &s, &w, 16).is_err());
    }

    #[test]
    fn missing_sigma_membership_is_not_reducible() {
        let e = catalogue::double_wheel(3);
        let mut s = catalogue::double_wheel_sigma(&e);
        let mut north = s.get(6);
        north.remove(&0);
        s.set(6, north); // drop one y from sigma(north)
        let w = detect_structure(&e, 5).unwrap().witness().unwrap().clone();
        let err = build_reduced_instance(&e, &s, &w, 16).unwrap_err();
        assert!(err.to_string().contains("not a reducible witness"));
    }

    #[test]
    fn matching_instance_on_double_wheel() {
        let e = catalogue::double_wheel(3);
        let s = catalogue::double_wheel_sigma(&e);
        let w = detect_structure(&e, 5).unwrap().witness().unwrap().clone();
        // colour the two poles, leave the equator to H
        let partial = BTreeMap::from([(6u32, 0u32), (7u32, 1u32)]);
        let lists = ListAssignment::uniform(e.graph(), 10);
        let mi = build_matching_instance(&e, &s, &w, &partial, &lists, 5).unwrap();
        assert_eq!(mi.h.edge_count(), 6); // six parallel pole-pole edges
        assert_eq!(mi.h.vertex_count(), 2);
        for id in mi.h.edge_ids() {
            // forbidden: the two pole colours only
            assert_eq!(mi.lists[&id].len(), 8);
            assert!(!mi.lists[&id].contains(&0));
            assert!(!mi.lists[&id].contains(&1));
        }
        assert!(mi.verify_density(5).unwrap().is_empty());

        // a proper list edge-colouring of six parallels: six distinct colours
        let h_col: BTreeMap<EdgeId, Colour> =
            mi.h.edge_ids().map(|id| (id, 2 + id)).collect();
        let total = extend_colouring(&e, &s, &lists, &partial, &h_col, &mi).unwrap();
        assert_eq!(total.len(), 8);
    }

    #[test]
    fn parallel_edges_for_shared_x_pairs() {
        let e = catalogue::double_wheel(3);
        let s = catalogue::double_wheel_sigma(&e);
        let w = detect_structure(&e, 4).unwrap().witness().unwrap().clone();
        let partial = BTreeMap::from([(6u32, 0u32), (7u32, 1u32)]);
        let lists = ListAssignment::uniform(e.graph(), 11);
        let mi = build_matching_instance(&e, &s, &w, &partial, &lists, 4).unwrap();
        // all six equator vertices share the same X-pair: six parallels
        assert_eq!(mi.h.edge_count(), 6);
        let mut endpoint_sets: Vec<(Vertex, Vertex)> = mi
            .h
            .edges()
            .map(|(_, u, v)| (u.min(v), u.max(v)))
            .collect();
        endpoint_sets.dedup();
        assert_eq!(endpoint_sets, vec![(6, 7)]);

        // identically coloured parallels must be rejected
        let bad: BTreeMap<EdgeId, Colour> = mi.h.edge_ids().map(|id| (id, 3)).collect();
        assert!(extend_colouring(&e, &s, &lists, &partial, &bad, &mi).is_err());
    }

    #[test]
    fn singleton_y_extension() {
        // one Y-vertex leaves a single edge in H; its colour lands on y
        let (e, s, w) = catalogue::one_outside_gadget();
        let StructureWitness::S3 { zeta, xy, .. } = &w else { unreachable!() };
        let y_single = BTreeSet::from([2u32]);
        let w1 = StructureWitness::S3 {
            zeta: *zeta,
            x: BTreeSet::from([0, 1]),
            y: y_single.clone(),
            xy: BTreeMap::from([(2, xy[&2])]),
        };
        let lists = ListAssignment::uniform(e.graph(), 12);
        // colour everything except y = 2 by the exact solver
        let mut host = e.graph().clone();
        host.remove_vertex(2);
        let keep: BTreeSet<Vertex> = host.vertices().collect();
        let mut s_rest = SigmaSystem::empty();
        for (v, set) in s.entries() {
            s_rest.set(v, set.iter().copied().filter(|u| keep.contains(u)).collect());
        }
        let partial = match crate::colouring::list_feasible(
            &host,
            &s_rest,
            &lists.restrict(&keep),
            1 << 22,
        )
        .unwrap()
        {
            crate::colouring::FeasibilityOutcome::Feasible(c) => c.assignment,
            other => panic!("host must be colourable: {other:?}"),
        };
        let mi = build_matching_instance(&e, &s, &w1, &partial, &lists, 3).unwrap();
        assert_eq!(mi.h.edge_count(), 1);
        let alpha = *mi.lists[&0].iter().next().unwrap();
        let h_col = BTreeMap::from([(0, alpha)]);
        let total = extend_colouring(&e, &s, &lists, &partial, &h_col, &mi).unwrap();
        assert_eq!(total[&2], alpha);
    }

    #[test]
    fn invalid_partial_is_rejected() {
        let e = catalogue::double_wheel(3);
        let s = catalogue::double_wheel_sigma(&e);
        let w = detect_structure(&e, 5).unwrap().witness().unwrap().clone();
        let partial = BTreeMap::from([(6u32, 0u32), (7u32, 0u32)]); // poles clash? they are not adjacent
        let lists = ListAssignment::uniform(e.graph(), 10);
        // poles are non-adjacent and share no sigma set, so this is valid
        assert!(build_matching_instance(&e, &s, &w, &partial, &lists, 5).is_ok());
        // an out-of-list colour is not
        let partial = BTreeMap::from([(6u32, 99u32), (7u32, 1u32)]);
        assert!(build_matching_instance(&e, &s, &w, &partial, &lists, 5).is_err());
    }
}
