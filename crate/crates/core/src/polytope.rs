//! The matching polytope: matching enumeration, the vertex and odd-set
//! membership test, a brute-force convex-hull oracle, the fractional
//! chromatic index and the (H1')-(H3') certificate checker.
//!
//! Membership verdicts are certificates: run them with the `Rational`
//! scalar for exact arithmetic. The hull oracle solves the convex
//! combination feasibility problem with a phase-1 simplex under Bland's
//! rule and returns a Farkas separating hyperplane on infeasibility.

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::scalar::Scalar;
use crate::{rng::substream, EdgeId, Vertex};
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

pub const DEFAULT_MATCHING_BUDGET: usize = 24;
/// Exhaustive odd-set enumeration is used up to this vertex count.
pub const ODD_SET_EXHAUSTIVE_LIMIT: usize = 16;

/// Per-edge nonnegative vector indexed by E(H).
#[derive(Debug, Clone, PartialEq)]
pub struct MarginalVector<S: Scalar> {
    pub values: BTreeMap<EdgeId, S>,
}

impl<S: Scalar> MarginalVector<S> {
    pub fn new(values: BTreeMap<EdgeId, S>) -> Self {
        Self { values }
    }

    pub fn uniform(h: &Multigraph, value: S) -> Self {
        Self {
            values: h.edge_ids().map(|e| (e, value.clone())).collect(),
        }
    }

    pub fn get(&self, e: EdgeId) -> S {
        self.values.get(&e).cloned().unwrap_or_else(S::zero)
    }

    /// Indexed exactly by E(h), all entries present.
    pub fn validate_index(&self, h: &Multigraph) -> Result<()> {
        let ids: BTreeSet<EdgeId> = h.edge_ids().collect();
        let have: BTreeSet<EdgeId> = self.values.keys().copied().collect();
        if ids != have {
            return Err(Error::validation(
                "vector is not indexed exactly by the edge set",
            ));
        }
        Ok(())
    }
}

/// A matching as a sorted list of edge ids.
pub type Matching = Vec<EdgeId>;

/// All matchings of `h`, the empty matching included. Complete and
/// duplicate-free; errors out beyond the edge budget.
pub fn enumerate_matchings(h: &Multigraph, budget_edges: usize) -> Result<Vec<Matching>> {
    if h.edge_count() > budget_edges {
        return Err(Error::Budget(format!(
            "{} edges exceed the matching enumeration budget {budget_edges}",
            h.edge_count()
        )));
    }
    let edges: Vec<(EdgeId, Vertex, Vertex)> = h.edges().collect();
    let mut out: Vec<Matching> = Vec::new();
    let mut current: Matching = Vec::new();
    let mut used: BTreeSet<Vertex> = BTreeSet::new();
    fn rec(
        edges: &[(EdgeId, Vertex, Vertex)],
        i: usize,
        current: &mut Matching,
        used: &mut BTreeSet<Vertex>,
        out: &mut Vec<Matching>,
    ) {
        if i == edges.len() {
            out.push(current.clone());
            return;
        }
        let (id, u, v) = edges[i];
        rec(edges, i + 1, current, used, out);
        if !used.contains(&u) && !used.contains(&v) {
            current.push(id);
            used.insert(u);
            used.insert(v);
            rec(edges, i + 1, current, used, out);
            current.pop();
            used.remove(&u);
            used.remove(&v);
        }
    }
    rec(&edges, 0, &mut current, &mut used, &mut out);
    out.sort();
    out.dedup();
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

/// The constraint reported by a negative verdict.
#[derive(Debug, Clone)]
pub enum ViolatedConstraint<S: Scalar> {
    NegativeEntry {
        e: EdgeId,
        value: S,
    },
    VertexCap {
        v: Vertex,
        load: S,
        cap: S,
    },
    OddSet {
        set: Vec<Vertex>,
        load: S,
        cap: S,
    },
    /// Farkas certificate from the hull oracle: `dot(normal, x) > offset`
    /// yet `dot(normal, 1_M) ≤ offset` for every matching M.
    Hyperplane {
        normal: BTreeMap<EdgeId, S>,
        offset: S,
        dot: S,
    },
}

impl<S: Scalar> ViolatedConstraint<S> {
    /// Positive slack of the violated constraint.
    pub fn slack(&self) -> S {
        match self {
            ViolatedConstraint::NegativeEntry { value, .. } => -value.clone(),
            ViolatedConstraint::VertexCap { load, cap, .. }
            | ViolatedConstraint::OddSet { load, cap, .. } => load.clone() - cap.clone(),
            ViolatedConstraint::Hyperplane { offset, dot, .. } => dot.clone() - offset.clone(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct PolytopeVerdict<S: Scalar> {
    pub inside: bool,
    pub scale: S,
    pub mode: CheckMode,
    pub violated: Option<ViolatedConstraint<S>>,
}

/// Decide x ∈ λ·MP(H) by the vertex and odd-set inequalities: for every
/// vertex, Σ_{e∋v} x_e ≤ λ; for every odd |W| ≥ 3,
/// Σ_{e∈E(W)} x_e ≤ λ(|W|−1)/2. Odd sets are enumerated exhaustively up to
/// 16 vertices, sampled (and labelled so) beyond.
pub fn edmonds_membership<S: Scalar>(
    h: &Multigraph,
    x: &MarginalVector<S>,
    scale: S,
) -> Result<PolytopeVerdict<S>> {
    if scale <= S::zero() || scale > S::one() {
        return Err(Error::precondition("scale must lie in (0, 1]"));
    }
    x.validate_index(h)?;
    for (&e, val) in &x.values {
        if *val < S::zero() {
            return Err(Error::validation(format!("negative entry at edge {e}")));
        }
    }
    for v in h.vertices() {
        let mut load = S::zero();
        for e in h.incident_edges(v) {
            load += x.get(e);
        }
        if load > scale {
            return Ok(PolytopeVerdict {
                inside: false,
                scale: scale.clone(),
                mode: CheckMode::Exhaustive,
                violated: Some(ViolatedConstraint::VertexCap {
                    v,
                    load,
                    cap: scale,
                }),
            });
        }
    }
    let verts: Vec<Vertex> = h.vertices().collect();
    let n = verts.len();
    let odd_load = |w: &BTreeSet<Vertex>| {
        let mut load = S::zero();
        for e in h.edges_within(w) {
            load += x.get(e);
        }
        load
    };
    let cap_for =
        |w: &BTreeSet<Vertex>| scale.clone() * S::from_int((w.len() as i64 - 1) / 2);
    if n <= ODD_SET_EXHAUSTIVE_LIMIT {
        for mask in 1u32..(1u32 << n) {
            let k = mask.count_ones() as usize;
            if k < 3 || k.is_multiple_of(2) {
                continue;
            }
            let w: BTreeSet<Vertex> = verts
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect();
            let load = odd_load(&w);
            let cap = cap_for(&w);
            if load > cap {
                return Ok(PolytopeVerdict {
                    inside: false,
                    scale,
                    mode: CheckMode::Exhaustive,
                    violated: Some(ViolatedConstraint::OddSet {
                        set: w.into_iter().collect(),
                        load,
                        cap,
                    }),
                });
            }
        }
        Ok(PolytopeVerdict {
            inside: true,
            scale,
            mode: CheckMode::Exhaustive,
            violated: None,
        })
    } else {
        let mut rng = substream(0xED_0DD5, &[n as u64]);
        for _ in 0..20_000 {
            let mut w: BTreeSet<Vertex> =
                verts.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            if w.len().is_multiple_of(2) && !w.is_empty() {
                let &drop = w.iter().next().expect("nonempty");
                w.remove(&drop);
            }
            if w.len() < 3 {
                continue;
            }
            let load = odd_load(&w);
            let cap = cap_for(&w);
            if load > cap {
                return Ok(PolytopeVerdict {
                    inside: false,
                    scale,
                    mode: CheckMode::Sampled,
                    violated: Some(ViolatedConstraint::OddSet {
                        set: w.into_iter().collect(),
                        load,
                        cap,
                    }),
                });
            }
        }
        Ok(PolytopeVerdict {
            inside: true,
            scale,
            mode: CheckMode::Sampled,
            violated: None,
        })
    }
}

// ----------------------------------------------------------------- simplex

/// Phase-1 simplex for `A θ = b, θ ≥ 0` with Bland's rule. Returns Ok(())
/// when feasible, or a Farkas dual `y` (yᵀA ≤ 0 on every column, yᵀb > 0)
/// when infeasible. Exact for exact scalars.
#[allow(clippy::needless_range_loop)] // tableau pivoting reads best with indices
fn phase1_feasible<S: Scalar>(a: &[Vec<S>], b: &[S]) -> std::result::Result<(), Vec<S>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    let width = n + m + 1; // structural + artificial + rhs
    let mut flipped = vec![false; m];
    let mut t: Vec<Vec<S>> = Vec::with_capacity(m);
    for i in 0..m {
        let flip = b[i] < S::zero();
        flipped[i] = flip;
        let mut row: Vec<S> = Vec::with_capacity(width);
        for j in 0..n {
            row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for k in 0..m {
            row.push(if k == i { S::one() } else { S::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    // objective row in reduced-cost form for "minimize sum of artificials":
    // artificials start basic, so subtract every constraint row once
    let mut obj: Vec<S> = vec![S::zero(); width];
    for row in t.iter() {
        for (j, cell) in row.iter().enumerate() {
            let val = obj[j].clone() - cell.clone();
            obj[j] = val;
        }
    }
    for k in 0..m {
        obj[n + k] = S::zero();
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    while let Some(enter) = (0..n + m).find(|&j| obj[j] < S::zero()) {
        let mut leave: Option<usize> = None;
        let mut best: Option<S> = None;
        for i in 0..m {
            if t[i][enter] > S::zero() {
                let ratio = t[i][width - 1].clone() / t[i][enter].clone();
                let better = match (&best, leave) {
                    (None, _) => true,
                    (Some(r), Some(li)) => ratio < *r || (ratio == *r && basis[i] < basis[li]),
                    _ => unreachable!(),
                };
                if better {
                    best = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(li) = leave else {
            break; // cannot happen: the objective is bounded below by 0
        };
        let piv = t[li][enter].clone();
        for j in 0..width {
            let val = t[li][j].clone() / piv.clone();
            t[li][j] = val;
        }
        let f = obj[enter].clone();
        if f != S::zero() {
            for j in 0..width {
                let val = obj[j].clone() - f.clone() * t[li][j].clone();
                obj[j] = val;
            }
        }
        for i in 0..m {
            if i != li {
                let f = t[i][enter].clone();
                if f != S::zero() {
                    for j in 0..width {
                        let val = t[i][j].clone() - f.clone() * t[li][j].clone();
                        t[i][j] = val;
                    }
                }
            }
        }
        basis[li] = enter;
    }
    let opt = -obj[width - 1].clone();
    if opt <= S::zero() {
        return Ok(());
    }
    // infeasible: read the dual off the artificial reduced costs.
    // obj[n+k] = c_k - y_k with c_k = 1, so y_k = 1 - obj[n+k]; undo flips
    let mut y: Vec<S> = Vec::with_capacity(m);
    for k in 0..m {
        let yk = S::one() - obj[n + k].clone();
        y.push(if flipped[k] { -yk } else { yk });
    }
    Err(y)
}

/// Brute-force membership oracle: x ∈ MP(H) iff x is a convex combination
/// of matching indicator vectors; solved exactly by phase-1 simplex over
/// the enumerated matchings.
pub fn hull_membership_oracle<S: Scalar>(
    h: &Multigraph,
    x: &MarginalVector<S>,
    budget_edges: usize,
) -> Result<PolytopeVerdict<S>> {
    x.validate_index(h)?;
    for (&e, val) in &x.values {
        if *val < S::zero() {
            return Ok(PolytopeVerdict {
                inside: false,
                scale: S::one(),
                mode: CheckMode::Exhaustive,
                violated: Some(ViolatedConstraint::NegativeEntry {
                    e,
                    value: val.clone(),
                }),
            });
        }
    }
    let matchings = enumerate_matchings(h, budget_edges)?;
    let edges: Vec<EdgeId> = h.edge_ids().collect();
    let m = edges.len() + 1; // one row per edge + the convexity row
    let n = matchings.len();
    let mut a: Vec<Vec<S>> = vec![vec![S::zero(); n]; m];
    for (j, mat) in matchings.iter().enumerate() {
        for (i, &e) in edges.iter().enumerate() {
            if mat.binary_search(&e).is_ok() {
                a[i][j] = S::one();
            }
        }
        a[m - 1][j] = S::one();
    }
    let mut b: Vec<S> = edges.iter().map(|&e| x.get(e)).collect();
    b.push(S::one());
    match phase1_feasible(&a, &b) {
        Ok(()) => Ok(PolytopeVerdict {
            inside: true,
            scale: S::one(),
            mode: CheckMode::Exhaustive,
            violated: None,
        }),
        Err(y) => {
            // y·(1_M, 1) ≤ 0 for every matching and y·(x, 1) > 0: report as
            // the hyperplane normal·z ≤ offset separating x from the hull
            let normal: BTreeMap<EdgeId, S> = edges
                .iter()
                .enumerate()
                .map(|(i, &e)| (e, y[i].clone()))
                .collect();
            let offset = -y[m - 1].clone();
            let mut dot = S::zero();
            for (&e, w) in &normal {
                dot += w.clone() * x.get(e);
            }
            if S::exact() {
                // re-verify the certificate before handing it out
                for mat in &matchings {
                    let mut s = S::zero();
                    for &e in mat {
                        s += normal[&e].clone();
                    }
                    if s > offset {
                        return Err(Error::invariant(
                            "Farkas certificate fails on a matching indicator",
                        ));
                    }
                }
                if dot <= offset {
                    return Err(Error::invariant("Farkas certificate does not separate x"));
                }
            }
            Ok(PolytopeVerdict {
                inside: false,
                scale: S::one(),
                mode: CheckMode::Exhaustive,
                violated: Some(ViolatedConstraint::Hyperplane {
                    normal,
                    offset,
                    dot,
                }),
            })
        }
    }
}

// -------------------------------------------------------------------- chi'_f

/// Fractional chromatic index, closed form: the least γ with the uniform
/// vector γ⁻¹ in MP(H) equals max(Δ(H), max over odd |W| ≥ 3 of
/// 2|E(W)|/(|W|−1)). Exact rational output; 0 for an empty edge set.
pub fn fractional_chromatic_index(h: &Multigraph) -> Result<crate::Rational> {
    use crate::{rat, Rational};
    if h.edge_count() == 0 {
        return Ok(rat(0, 1));
    }
    let mut best: Rational = rat(h.max_degree() as i64, 1);
    let verts: Vec<Vertex> = h.vertices().collect();
    let n = verts.len();
    if n > ODD_SET_EXHAUSTIVE_LIMIT {
        return Err(Error::Budget(format!(
            "closed-form chi'_f enumerates odd sets; {n} vertices exceed the limit"
        )));
    }
    for mask in 1u32..(1u32 << n) {
        let k = mask.count_ones() as usize;
        if k < 3 || k.is_multiple_of(2) {
            continue;
        }
        let w: BTreeSet<Vertex> = verts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v)
            .collect();
        let ew = h.edges_within(&w).len() as i64;
        let cand = rat(2 * ew, (k as i64) - 1);
        if cand > best {
            best = cand;
        }
    }
    Ok(best)
}

/// χ'_f by bisection over uniform-vector membership; cross-checks the
/// closed form to the stated tolerance.
pub fn chi_f_by_bisection(h: &Multigraph, tol: f64) -> Result<f64> {
    if h.edge_count() == 0 {
        return Ok(0.0);
    }
    let inside = |gamma: f64| -> Result<bool> {
        let x = MarginalVector::uniform(h, 1.0 / gamma);
        Ok(edmonds_membership(h, &x, 1.0)?.inside)
    };
    let mut lo = (h.max_degree() as f64 / 2.0).max(0.5);
    let mut hi = 2.0 * h.edge_count() as f64 + 2.0;
    if inside(lo)? {
        return Ok(lo);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if inside(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}

// --------------------------------------------------------- lemma certificate

/// Structured report of the (H1')-(H3') certificate check.
#[derive(Debug, Clone)]
pub struct CertificateReport<S: Scalar> {
    pub h1_violations: Vec<String>,
    pub h2_violations: Vec<String>,
    pub h3_violations: Vec<String>,
    pub k_sufficient: bool,
    /// Checked only when the hypotheses hold and K is sufficient.
    pub b_at_least_half_beta: Option<bool>,
    pub membership: Option<PolytopeVerdict<S>>,
    /// True when the hypotheses hold, K ≥ max{0, 9ζ/2}, and yet one of the
    /// guaranteed conclusions fails. Should never happen.
    pub falsified: bool,
}

impl<S: Scalar> CertificateReport<S> {
    pub fn hypotheses_hold(&self) -> bool {
        self.h1_violations.is_empty()
            && self.h2_violations.is_empty()
            && self.h3_violations.is_empty()
    }
}

/// Check the certificate conditions: (H1') d(v) ≤ σ(v) ≤ β per vertex;
/// (H2') b_e ≥ (3/2 β + K) − (σ(u)−d(u)) − (σ(v)−d(v)) per edge; (H3')
/// Σ_{w∈W}(σ(w)−d(w)) ≤ e(W, V∖W) + ζ|W| for every non-empty W, exhaustive
/// at desk scale. When everything holds and K ≥ max{0, 9ζ/2}, the
/// conclusions b_e ≥ β/2 and (1/b_e) ∈ MP(H) are verified; a failure there
/// is flagged as a falsification event.
pub fn lem_mp_certificate<S: Scalar>(
    h: &Multigraph,
    sigma: &BTreeMap<Vertex, i64>,
    beta: i64,
    zeta: S,
    k: S,
    b: &BTreeMap<EdgeId, S>,
) -> Result<CertificateReport<S>> {
    let mut report = CertificateReport {
        h1_violations: Vec::new(),
        h2_violations: Vec::new(),
        h3_violations: Vec::new(),
        k_sufficient: false,
        b_at_least_half_beta: None,
        membership: None,
        falsified: false,
    };
    let slack = |v: Vertex| -> i64 { sigma.get(&v).copied().unwrap_or(0) - h.degree(v) as i64 };
    for v in h.vertices() {
        let s = sigma.get(&v).copied().unwrap_or(0);
        let d = h.degree(v) as i64;
        if !(d <= s && s <= beta) {
            report
                .h1_violations
                .push(format!("H1': vertex {v}: d={d}, sigma={s}, beta={beta}"));
        }
    }
    for (id, u, v) in h.edges() {
        let Some(be) = b.get(&id) else {
            report.h2_violations.push(format!("H2': edge {id} has no b"));
            continue;
        };
        if *be <= S::zero() {
            report
                .h2_violations
                .push(format!("H2': edge {id} has non-positive b"));
            continue;
        }
        let needed = S::from_ratio(3, 2) * S::from_int(beta) + k.clone()
            - S::from_int(slack(u))
            - S::from_int(slack(v));
        if *be < needed {
            let gap = needed - be.clone();
            report
                .h2_violations
                .push(format!("H2': edge {id}: b falls short by {gap}"));
        }
    }
    let verts: Vec<Vertex> = h.vertices().collect();
    let n = verts.len();
    if n > ODD_SET_EXHAUSTIVE_LIMIT {
        return Err(Error::Budget(format!(
            "H3' enumeration needs at most {ODD_SET_EXHAUSTIVE_LIMIT} vertices, got {n}"
        )));
    }
    for mask in 1u32..(1u32 << n) {
        let w: BTreeSet<Vertex> = verts
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, &v)| v)
            .collect();
        let lhs = S::from_int(w.iter().map(|&v| slack(v)).sum::<i64>());
        let rhs = S::from_int(h.e_cross(&w) as i64) + zeta.clone() * S::from_int(w.len() as i64);
        if lhs > rhs {
            report
                .h3_violations
                .push(format!("H3': W = {w:?} exceeds by {}", lhs - rhs));
        }
    }
    let k_floor = {
        let nine_half_zeta = S::from_ratio(9, 2) * zeta.clone();
        if nine_half_zeta < S::zero() {
            S::zero()
        } else {
            nine_half_zeta
        }
    };
    report.k_sufficient = k >= k_floor;
    if report.hypotheses_hold() && report.k_sufficient {
        let half_beta = S::from_ratio(beta, 2);
        let all_big = h
            .edge_ids()
            .all(|e| b.get(&e).is_some_and(|v| *v >= half_beta));
        report.b_at_least_half_beta = Some(all_big);
        let x = MarginalVector::new(
            h.edge_ids()
                .map(|e| (e, S::one() / b[&e].clone()))
                .collect(),
        );
        let verdict = edmonds_membership(h, &x, S::one())?;
        let inside = verdict.inside;
        report.membership = Some(verdict);
        report.falsified = !all_big || !inside;
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{rat, Rational};

    fn triangle() -> Multigraph {
        Multigraph::from_edges([(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn matching_counts() {
        let single = Multigraph::from_edges([(0, 1)]).unwrap();
        assert_eq!(enumerate_matchings(&single, 24).unwrap().len(), 2);
        assert_eq!(enumerate_matchings(&triangle(), 24).unwrap().len(), 4);
        let k4 =
            Multigraph::from_edges([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(enumerate_matchings(&k4, 24).unwrap().len(), 10);
    }

    #[test]
    fn matching_budget_enforced() {
        let g = Multigraph::shannon_triangle(3);
        assert!(enumerate_matchings(&g, 5).is_err());
    }

    #[test]
    fn matchings_match_line_graph_independent_sets() {
        // independent-set count of the line graph, brute force over edges
        let g = Multigraph::shannon_triangle(2);
        let ids: Vec<EdgeId> = g.edge_ids().collect();
        let mut count = 0usize;
        for mask in 0u32..(1 << ids.len()) {
            let chosen: Vec<EdgeId> = ids
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &e)| e)
                .collect();
            let mut ok = true;
            'outer: for (i, &a) in chosen.iter().enumerate() {
                for &b in &chosen[i + 1..] {
                    let (u1, v1) = g.endpoints(a).unwrap();
                    let (u2, v2) = g.endpoints(b).unwrap();
                    if u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2 {
                        ok = false;
                        break 'outer;
                    }
                }
            }
            if ok {
                count += 1;
            }
        }
        assert_eq!(enumerate_matchings(&g, 24).unwrap().len(), count);
    }

    #[test]
    fn triangle_third_is_inside_half_is_not() {
        let h = triangle();
        let third = MarginalVector::uniform(&h, rat(1, 3));
        assert!(edmonds_membership(&h, &third, rat(1, 1)).unwrap().inside);

        let half = MarginalVector::uniform(&h, rat(1, 2));
        let v = edmonds_membership(&h, &half, rat(1, 1)).unwrap();
        assert!(!v.inside);
        match v.violated {
            Some(ViolatedConstraint::OddSet { set, load, cap }) => {
                assert_eq!(set, vec![0, 1, 2]);
                assert_eq!(load - cap, rat(1, 2));
            }
            other => panic!("expected odd-set violation, got {other:?}"),
        }
    }

    #[test]
    fn zero_vector_inside_any_scale() {
        let h = triangle();
        let zero = MarginalVector::uniform(&h, rat(0, 1));
        for (n, d) in [(1i64, 100i64), (1, 2), (1, 1)] {
            assert!(edmonds_membership(&h, &zero, rat(n, d)).unwrap().inside);
        }
    }

    #[test]
    fn negative_entry_is_a_validation_error() {
        let h = triangle();
        let mut x = MarginalVector::uniform(&h, rat(1, 4));
        x.values.insert(0, rat(-1, 4));
        assert!(edmonds_membership(&h, &x, rat(1, 1)).is_err());
    }

    #[test]
    fn hull_oracle_matches_edmonds_on_examples() {
        let h = triangle();
        let third = MarginalVector::uniform(&h, rat(1, 3));
        assert!(hull_membership_oracle(&h, &third, 24).unwrap().inside);
        let half = MarginalVector::uniform(&h, rat(1, 2));
        let v = hull_membership_oracle(&h, &half, 24).unwrap();
        assert!(!v.inside);
        assert!(matches!(
            v.violated,
            Some(ViolatedConstraint::Hyperplane { .. })
        ));

        // path of two edges with x = (0.6, 0.6): the shared vertex overloads
        let p = Multigraph::from_edges([(0, 1), (1, 2)]).unwrap();
        let x = MarginalVector::uniform(&p, rat(3, 5));
        assert!(!hull_membership_oracle(&p, &x, 24).unwrap().inside);
        assert!(!edmonds_membership(&p, &x, rat(1, 1)).unwrap().inside);
    }

    #[test]
    fn chi_f_values() {
        assert_eq!(fractional_chromatic_index(&triangle()).unwrap(), rat(3, 1));
        let single = Multigraph::from_edges([(0, 1)]).unwrap();
        assert_eq!(fractional_chromatic_index(&single).unwrap(), rat(1, 1));
        let empty = Multigraph::new();
        assert_eq!(fractional_chromatic_index(&empty).unwrap(), rat(0, 1));
        for mu in 1..=4u32 {
            let g = Multigraph::shannon_triangle(mu);
            assert_eq!(fractional_chromatic_index(&g).unwrap(), rat(3 * mu as i64, 1));
        }
    }

    #[test]
    fn chi_f_bisection_agrees() {
        for mu in 1..=3u32 {
            let g = Multigraph::shannon_triangle(mu);
            let closed = fractional_chromatic_index(&g).unwrap();
            let searched = chi_f_by_bisection(&g, 1e-9).unwrap();
            assert!((Scalar::to_f64(&closed) - searched).abs() <= 1e-9);
        }
    }

    #[test]
    fn single_edge_certificate() {
        // sigma(u)=sigma(v)=1=d, beta=4, zeta=0, K=0, b=6=(3/2)*4
        let h = Multigraph::from_edges([(0, 1)]).unwrap();
        let sigma = BTreeMap::from([(0, 1i64), (1, 1i64)]);
        let b: BTreeMap<EdgeId, Rational> = BTreeMap::from([(0, rat(6, 1))]);
        let rep = lem_mp_certificate(&h, &sigma, 4, rat(0, 1), rat(0, 1), &b).unwrap();
        assert!(rep.hypotheses_hold());
        assert!(rep.k_sufficient);
        assert_eq!(rep.b_at_least_half_beta, Some(true));
        assert!(rep.membership.unwrap().inside);
        assert!(!rep.falsified);
    }

    #[test]
    fn h2_violation_reported_with_slack() {
        let h = Multigraph::from_edges([(0, 1)]).unwrap();
        let sigma = BTreeMap::from([(0, 1i64), (1, 1i64)]);
        let b: BTreeMap<EdgeId, Rational> = BTreeMap::from([(0, rat(5, 1))]);
        let rep = lem_mp_certificate(&h, &sigma, 4, rat(0, 1), rat(0, 1), &b).unwrap();
        assert_eq!(rep.h2_violations.len(), 1);
        assert!(rep.h2_violations[0].contains("short by 1"));
        assert!(!rep.falsified);
    }

    #[test]
    fn monotonicity_spot_check() {
        let h = Multigraph::shannon_triangle(2);
        let x = MarginalVector::uniform(&h, rat(1, 8));
        assert!(edmonds_membership(&h, &x, rat(1, 1)).unwrap().inside);
        let mut smaller = x.clone();
        smaller.values.insert(0, rat(1, 16));
        assert!(edmonds_membership(&h, &smaller, rat(1, 1)).unwrap().inside);
    }
}
