//! Hardcore distributions over matchings: the probability of a matching is
//! proportional to the product of its edge activities. Marginals from
//! activities are computed by exact enumeration; activities from marginals
//! by a damped fixed point on the stationarity identity
//! x_e = λ_e · Pr(M touches neither endpoint of e).

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::polytope::{edmonds_membership, enumerate_matchings, MarginalVector, Matching};
use crate::rng::substream;
use crate::scalar::Scalar;
use crate::{EdgeId, Vertex};
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

/// Per-edge positive activities.
#[derive(Debug, Clone, PartialEq)]
pub struct ActivityVector<S: Scalar> {
    pub values: BTreeMap<EdgeId, S>,
}

impl<S: Scalar> ActivityVector<S> {
    pub fn new(values: BTreeMap<EdgeId, S>) -> Result<Self> {
        if values.values().any(|v| *v <= S::zero()) {
            return Err(Error::validation("activities must be positive"));
        }
        Ok(Self { values })
    }

    pub fn uniform(h: &Multigraph, value: S) -> Result<Self> {
        Self::new(h.edge_ids().map(|e| (e, value.clone())).collect())
    }

    pub fn get(&self, e: EdgeId) -> S {
        self.values
            .get(&e)
            .cloned()
            .expect("activity indexed by edge set")
    }
}

/// A multigraph together with activities and the cached matching list and
/// partition sum Z = Σ_M Π_{e∈M} λ_e. Immutable once built.
#[derive(Debug, Clone)]
pub struct HardcoreModel<S: Scalar> {
    h: Multigraph,
    activities: ActivityVector<S>,
    matchings: Vec<Matching>,
    z: S,
}

impl<S: Scalar> HardcoreModel<S> {
    pub fn new(h: Multigraph, activities: ActivityVector<S>, budget_edges: usize) -> Result<Self> {
        let ids: BTreeSet<EdgeId> = h.edge_ids().collect();
        let have: BTreeSet<EdgeId> = activities.values.keys().copied().collect();
        if ids != have {
            return Err(Error::validation(
                "activities are not indexed exactly by the edge set",
            ));
        }
        let matchings = enumerate_matchings(&h, budget_edges)?;
        let mut z = S::zero();
        for m in &matchings {
            z += weight(&activities, m);
        }
        debug_assert!(z >= S::one()); // the empty matching contributes 1
        Ok(Self {
            h,
            activities,
            matchings,
            z,
        })
    }

    pub fn graph(&self) -> &Multigraph {
        &self.h
    }

    pub fn activities(&self) -> &ActivityVector<S> {
        &self.activities
    }

    pub fn partition_sum(&self) -> S {
        self.z.clone()
    }

    pub fn matchings(&self) -> &[Matching] {
        &self.matchings
    }

    /// P_M = Π_{e∈M} λ_e / Z.
    pub fn probability(&self, m: &Matching) -> S {
        weight(&self.activities, m) / self.z.clone()
    }

    /// x_e = Σ_{M ∋ e} P_M for every edge.
    pub fn marginals(&self) -> MarginalVector<S> {
        let mut acc: BTreeMap<EdgeId, S> = self.h.edge_ids().map(|e| (e, S::zero())).collect();
        for m in &self.matchings {
            let w = weight(&self.activities, m);
            for &e in m {
                let val = acc[&e].clone() + w.clone();
                acc.insert(e, val);
            }
        }
        for v in acc.values_mut() {
            let val = v.clone() / self.z.clone();
            *v = val;
        }
        MarginalVector::new(acc)
    }

    /// Pr(M touches neither u nor v), exact by enumeration.
    pub fn avoidance_probability(&self, u: Vertex, v: Vertex) -> Result<S> {
        if u == v {
            return Err(Error::precondition("avoidance needs two distinct vertices"));
        }
        let mut total = S::zero();
        for m in &self.matchings {
            let touches = m.iter().any(|&e| {
                let (a, b) = self.h.endpoints(e).expect("edge");
                a == u || b == u || a == v || b == v
            });
            if !touches {
                total += weight(&self.activities, m);
            }
        }
        Ok(total / self.z.clone())
    }

    /// The minimum avoidance probability over all vertex pairs: the
    /// instance-level stand-in for the (non-constructive) uniform positivity
    /// constant. Strictly positive on every model, since the empty matching
    /// avoids everything.
    pub fn min_avoidance(&self) -> Result<S> {
        let verts: Vec<Vertex> = self.h.vertices().collect();
        let mut best: Option<S> = None;
        for (i, &u) in verts.iter().enumerate() {
            for &v in &verts[i + 1..] {
                let p = self.avoidance_probability(u, v)?;
                best = Some(match best {
                    None => p,
                    Some(b) if p < b => p,
                    Some(b) => b,
                });
            }
        }
        best.ok_or_else(|| Error::precondition("need at least two vertices"))
    }

    /// Draw one matching; the distribution is {P_M}, realized by cumulative
    /// inversion over the enumerated matchings. The stream is derived from
    /// (seed, call_tag) so concurrent samplers are reproducible.
    pub fn sample_matching(&self, seed: u64, call_tag: u64) -> Matching {
        let mut rng = substream(seed, &[0x5A_4D_91, call_tag]);
        self.sample_with_rng(&mut rng)
    }

    /// Draw one matching from an explicit stream.
    pub fn sample_with_rng(&self, rng: &mut impl Rng) -> Matching {
        let t: f64 = rng.gen_range(0.0..1.0);
        let target = t * Scalar::to_f64(&self.z);
        let mut acc = 0.0f64;
        for m in &self.matchings {
            acc += Scalar::to_f64(&weight(&self.activities, m));
            if target < acc {
                return m.clone();
            }
        }
        self.matchings.last().cloned().unwrap_or_default()
    }
}

fn weight<S: Scalar>(activities: &ActivityVector<S>, m: &Matching) -> S {
    let mut w = S::one();
    for &e in m {
        w = w * activities.get(e);
    }
    w
}

/// Marginals of the hardcore distribution with the given activities.
pub fn marginals_from_activities<S: Scalar>(model: &HardcoreModel<S>) -> MarginalVector<S> {
    model.marginals()
}

pub const FIT_TOLERANCE: f64 = 1e-8;
pub const FIT_MAX_ITERATIONS: usize = 100_000;

/// Fit the unique activities whose hardcore distribution has marginals `x`.
/// Requires x ∈ (1−δ)·MP(H) with 0 < δ < 1 (checked via the membership
/// test). Damped fixed point on λ_e ← x_e / Pr(M misses both endpoints);
/// stops once the stationarity residual and the marginal error fall below
/// 1e-8.
pub fn activities_from_marginals(
    h: &Multigraph,
    x: &MarginalVector<f64>,
    delta: f64,
    budget_edges: usize,
) -> Result<ActivityVector<f64>> {
    if !(0.0 < delta && delta < 1.0) {
        return Err(Error::precondition("delta must lie in (0, 1)"));
    }
    x.validate_index(h)?;
    let scale = 1.0 - delta;
    let verdict = edmonds_membership(h, x, scale)?;
    if !verdict.inside {
        return Err(Error::precondition(format!(
            "marginal vector is not in (1-delta)MP(H) for delta = {delta}"
        )));
    }
    let mut lambda: BTreeMap<EdgeId, f64> =
        h.edge_ids().map(|e| (e, x.get(e).max(1e-12))).collect();
    let mut last_residual = f64::INFINITY;
    let mut damping_on = false;
    for _ in 0..FIT_MAX_ITERATIONS {
        let model = HardcoreModel::new(
            h.clone(),
            ActivityVector::new(lambda.clone())?,
            budget_edges,
        )?;
        let mut residual = 0.0f64;
        let mut next = lambda.clone();
        for (id, u, v) in h.edges() {
            let avoid = model.avoidance_probability(u, v)?;
            let xe = x.get(id);
            residual = residual.max((xe - lambda[&id] * avoid).abs());
            let proposed = if avoid > 0.0 { xe / avoid } else { lambda[&id] };
            let damp = if damping_on { 0.5 } else { 1.0 };
            next.insert(id, lambda[&id] * (1.0 - damp) + proposed * damp);
        }
        let marg = model.marginals();
        let marg_err = h
            .edge_ids()
            .map(|e| (marg.get(e) - x.get(e)).abs())
            .fold(0.0, f64::max);
        if marg_err <= FIT_TOLERANCE && residual <= FIT_TOLERANCE {
            return ActivityVector::new(lambda);
        }
        if residual > last_residual * 1.000001 {
            damping_on = true; // oscillation: halve the step from here on
        }
        last_residual = residual;
        lambda = next;
    }
    Err(Error::NoConvergence {
        iterations: FIT_MAX_ITERATIONS,
        residual: last_residual,
    })
}
