//! The iterated naive colouring procedure: per colour, sample a hardcore
//! matching on the colour graph; resolve multiply-proposed edges by a
//! uniform tie-break; shrink the colour graphs; iterate, then finish
//! greedily once degrees are small and lists are long enough.
//!
//! Activities are fitted once per colour on the initial colour graph and
//! never change; only the edge sets they apply to shrink. All randomness
//! comes from substreams keyed by (seed, attempt, step, colour), so runs
//! are deterministic and independent of evaluation order.

use crate::error::{Error, Result};
use crate::graph::Multigraph;
use crate::hardcore::{activities_from_marginals, ActivityVector, HardcoreModel};
use crate::polytope::{edmonds_membership, MarginalVector, DEFAULT_MATCHING_BUDGET};
use crate::rng::substream;
use crate::{rat, Colour, EdgeId, Rational, Vertex};
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

#[derive(Debug, Clone)]
pub struct KahnParams {
    /// Activity bound K; derived from the fitted activities when absent.
    pub k: Option<f64>,
    /// Iteration count; defaults to ceil(ln(4K) + 1).
    pub s: Option<usize>,
    /// Greedy-finish threshold; defaults to ceil(Δ / (2eK)), at least 1.
    pub t: Option<usize>,
    pub retries: usize,
    pub seed: u64,
    pub delta: f64,
}

impl Default for KahnParams {
    fn default() -> Self {
        Self {
            k: None,
            s: None,
            t: None,
            retries: 8,
            seed: 1,
            delta: 0.2,
        }
    }
}

/// Per-step, per-colour telemetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TelemetryRow {
    pub step: usize,
    pub colour: Colour,
    pub matched: usize,
    pub remaining_edges: usize,
}

/// The evolving state: colour graphs as edge subsets, remaining lists,
/// committed colours and the frozen activities.
#[derive(Debug, Clone)]
pub struct ColourState {
    pub step: usize,
    pub colour_graphs: BTreeMap<Colour, BTreeSet<EdgeId>>,
    pub lists: BTreeMap<EdgeId, BTreeSet<Colour>>,
    pub committed: BTreeMap<EdgeId, Colour>,
    pub activities: BTreeMap<Colour, BTreeMap<EdgeId, f64>>,
}

impl ColourState {
    /// α ∈ L^i(e) iff e ∈ E(H^i_α): kept as a cross-check.
    pub fn lists_consistent(&self) -> bool {
        for (&e, l) in &self.lists {
            for &a in l {
                if !self.colour_graphs.get(&a).is_some_and(|g| g.contains(&e)) {
                    return false;
                }
            }
        }
        for (&a, edges) in &self.colour_graphs {
            for &e in edges {
                if !self.lists.get(&e).is_some_and(|l| l.contains(&a)) {
                    return false;
                }
            }
        }
        true
    }

    /// Committed edges of each colour form a matching in h.
    pub fn committed_matchings_ok(&self, h: &Multigraph) -> bool {
        let mut by_colour: BTreeMap<Colour, Vec<EdgeId>> = BTreeMap::new();
        for (&e, &c) in &self.committed {
            by_colour.entry(c).or_default().push(e);
        }
        for edges in by_colour.values() {
            let mut seen: BTreeSet<Vertex> = BTreeSet::new();
            for &e in edges {
                let (u, v) = h.endpoints(e).expect("edge");
                if !seen.insert(u) || !seen.insert(v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn uncoloured_edges(&self) -> BTreeSet<EdgeId> {
        self.lists.keys().copied().collect()
    }
}

/// Set up the state: check the uniform marginal vector x_e = 1/|L(e)| lies
/// in (1−δ)·MP(H) (exact rational arithmetic), then fit per-colour
/// activities for those marginals on each colour graph.
pub fn init_state(
    h: &Multigraph,
    lists: &BTreeMap<EdgeId, BTreeSet<Colour>>,
    delta: f64,
) -> Result<ColourState> {
    let ids: BTreeSet<EdgeId> = h.edge_ids().collect();
    if ids != lists.keys().copied().collect::<BTreeSet<_>>() {
        return Err(Error::precondition("lists must cover exactly the edge set"));
    }
    if lists.values().any(|l| l.is_empty()) {
        return Err(Error::precondition("every edge needs a non-empty list"));
    }
    if !(0.0 < delta && delta < 1.0) {
        return Err(Error::precondition("delta must lie in (0, 1)"));
    }
    // exact membership check of the uniform marginals at scale 1 - delta
    let delta_rat = Rational::from_float(delta)
        .ok_or_else(|| Error::precondition("delta must be finite"))?;
    let x_exact = MarginalVector::new(
        lists
            .iter()
            .map(|(&e, l)| (e, rat(1, l.len() as i64)))
            .collect(),
    );
    let scale = rat(1, 1) - delta_rat;
    let verdict = edmonds_membership(h, &x_exact, scale)?;
    if !verdict.inside {
        return Err(Error::precondition(format!(
            "theorem hypotheses unmet: 1/|L(e)| is outside (1-delta)MP(H), violated {:?}",
            verdict.violated.map(|c| c.slack().to_string())
        )));
    }

    let colours: BTreeSet<Colour> = lists.values().flatten().copied().collect();
    let mut colour_graphs: BTreeMap<Colour, BTreeSet<EdgeId>> = BTreeMap::new();
    let mut activities: BTreeMap<Colour, BTreeMap<EdgeId, f64>> = BTreeMap::new();
    // colours with identical colour graphs share one fit
    let mut fitted: BTreeMap<Vec<EdgeId>, BTreeMap<EdgeId, f64>> = BTreeMap::new();
    for &a in &colours {
        let edges: BTreeSet<EdgeId> = lists
            .iter()
            .filter(|(_, l)| l.contains(&a))
            .map(|(&e, _)| e)
            .collect();
        let key: Vec<EdgeId> = edges.iter().copied().collect();
        let lam = match fitted.get(&key) {
            Some(l) => l.clone(),
            None => {
                let ha = h.edge_subgraph(&edges);
                let xa = MarginalVector::new(
                    edges
                        .iter()
                        .map(|&e| (e, 1.0 / lists[&e].len() as f64))
                        .collect(),
                );
                let lam = activities_from_marginals(&ha, &xa, delta, DEFAULT_MATCHING_BUDGET)?;
                fitted.insert(key, lam.values.clone());
                lam.values
            }
        };
        activities.insert(a, lam);
        colour_graphs.insert(a, edges);
    }
    // sum of the per-colour marginals is exactly 1 on every edge
    for (&e, l) in lists {
        debug_assert_eq!(l.len() as f64 * (1.0 / l.len() as f64), 1.0);
        let _ = e;
    }
    Ok(ColourState {
        step: 0,
        colour_graphs,
        lists: lists.clone(),
        committed: BTreeMap::new(),
        activities,
    })
}

/// One naive-colouring step: (a) sample a hardcore matching per colour on
/// the current colour graph; (b) multiply-proposed edges pick one of their
/// proposing colours uniformly at random; (c) drop every newly coloured
/// edge from all colour graphs, and for each colour also drop the vertices
/// matched by its newly committed edges.
pub fn naive_step(
    state: &ColourState,
    h: &Multigraph,
    seed: u64,
    attempt: u64,
) -> Result<(ColourState, Vec<TelemetryRow>)> {
    let step = state.step;
    let mut proposals: BTreeMap<EdgeId, Vec<Colour>> = BTreeMap::new();
    let mut sampled: BTreeMap<Colour, Vec<EdgeId>> = BTreeMap::new();
    for (&a, edges) in &state.colour_graphs {
        if edges.is_empty() {
            sampled.insert(a, Vec::new());
            continue;
        }
        let ha = h.edge_subgraph(edges);
        let lam = ActivityVector::new(
            edges
                .iter()
                .map(|&e| (e, state.activities[&a][&e]))
                .collect(),
        )?;
        let model = HardcoreModel::new(ha, lam, DEFAULT_MATCHING_BUDGET)?;
        let mut rng = substream(seed, &[attempt, step as u64, a as u64]);
        let m = model.sample_with_rng(&mut rng);
        for &e in &m {
            proposals.entry(e).or_default().push(a);
        }
        sampled.insert(a, m);
    }
    let mut newly: BTreeMap<EdgeId, Colour> = BTreeMap::new();
    for (&e, colours) in &proposals {
        let pick = if colours.len() == 1 {
            colours[0]
        } else {
            let mut rng = substream(seed, &[attempt, step as u64, 0x7E_BA_EA_C8, e as u64]);
            colours[rng.gen_range(0..colours.len())]
        };
        newly.insert(e, pick);
    }
    let mut next = state.clone();
    next.step += 1;
    for (&e, &c) in &newly {
        next.committed.insert(e, c);
        next.lists.remove(&e);
    }
    let mut telemetry = Vec::new();
    for (&a, edges) in &state.colour_graphs {
        let winners: Vec<EdgeId> = newly
            .iter()
            .filter(|&(_, &c)| c == a)
            .map(|(&e, _)| e)
            .collect();
        let mut removed_vertices: BTreeSet<Vertex> = BTreeSet::new();
        for &e in &winners {
            let (u, v) = h.endpoints(e)?;
            removed_vertices.insert(u);
            removed_vertices.insert(v);
        }
        let mut survivors: BTreeSet<EdgeId> = BTreeSet::new();
        for &e in edges {
            if newly.contains_key(&e) {
                continue; // coloured with some colour: removed as an edge
            }
            let (u, v) = h.endpoints(e)?;
            if removed_vertices.contains(&u) || removed_vertices.contains(&v) {
                // vertex removed from the colour graph: drop the colour
                if let Some(l) = next.lists.get_mut(&e) {
                    l.remove(&a);
                }
                continue;
            }
            survivors.insert(e);
        }
        telemetry.push(TelemetryRow {
            step,
            colour: a,
            matched: sampled[&a].len(),
            remaining_edges: survivors.len(),
        });
        next.colour_graphs.insert(a, survivors);
    }
    if !next.lists_consistent() {
        return Err(Error::invariant("list/colour-graph consistency broken"));
    }
    if !next.committed_matchings_ok(h) {
        return Err(Error::invariant("a committed colour class is not a matching"));
    }
    // monotone shrinkage
    for (a, edges) in &next.colour_graphs {
        if !edges.is_subset(&state.colour_graphs[a]) {
            return Err(Error::invariant("colour graph grew during a step"));
        }
    }
    Ok((next, telemetry))
}

/// Greedy finish: requires Δ(h') ≤ T and every remaining list of size at
/// least 2T; then every edge sees at most 2(T−1) coloured rivals and a
/// free list colour always exists. Edges are processed in ascending id.
pub fn greedy_finish(
    h: &Multigraph,
    remaining: &BTreeSet<EdgeId>,
    lists: &BTreeMap<EdgeId, BTreeSet<Colour>>,
    t: usize,
) -> Result<BTreeMap<EdgeId, Colour>> {
    let sub = h.edge_subgraph(remaining);
    if sub.max_degree() > t {
        return Err(Error::precondition(format!(
            "greedy finish needs max degree <= {t}, found {}",
            sub.max_degree()
        )));
    }
    if let Some((&e, l)) = lists
        .iter()
        .filter(|(e, _)| remaining.contains(e))
        .find(|(_, l)| l.len() < 2 * t)
    {
        return Err(Error::precondition(format!(
            "greedy finish needs lists of size >= {}, edge {e} has {}",
            2 * t,
            l.len()
        )));
    }
    let mut out: BTreeMap<EdgeId, Colour> = BTreeMap::new();
    for &e in remaining {
        let (u, v) = h.endpoints(e)?;
        let mut forbidden: BTreeSet<Colour> = BTreeSet::new();
        for &f in remaining {
            if f == e {
                continue;
            }
            let (a, b) = h.endpoints(f)?;
            if a == u || a == v || b == u || b == v {
                if let Some(&c) = out.get(&f) {
                    forbidden.insert(c);
                }
            }
        }
        let c = lists[&e]
            .iter()
            .find(|c| !forbidden.contains(c))
            .copied()
            .ok_or_else(|| Error::invariant("greedy finish ran out of colours"))?;
        out.insert(e, c);
    }
    Ok(out)
}

#[derive(Debug, Clone)]
pub struct RunReport {
    pub attempts: usize,
    pub uncoloured: usize,
    pub max_uncoloured_degree: usize,
    pub min_remaining_list: usize,
}

impl std::fmt::Display for RunReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "attempts={} uncoloured={} max_degree={} min_list={}",
            self.attempts, self.uncoloured, self.max_uncoloured_degree, self.min_remaining_list
        )
    }
}

#[derive(Debug, Clone)]
pub enum RunOutcome {
    Success {
        colouring: BTreeMap<EdgeId, Colour>,
        telemetry: Vec<TelemetryRow>,
        attempts: usize,
    },
    Failure {
        report: RunReport,
    },
}

/// Independent validator: every edge coloured from its own list and
/// adjacent edges (shared endpoint, parallels included) differ.
pub fn validate_edge_colouring(
    h: &Multigraph,
    lists: &BTreeMap<EdgeId, BTreeSet<Colour>>,
    col: &BTreeMap<EdgeId, Colour>,
) -> Result<()> {
    for id in h.edge_ids() {
        let c = col
            .get(&id)
            .ok_or_else(|| Error::validation(format!("edge {id} is uncoloured")))?;
        if !lists
            .get(&id)
            .is_some_and(|l| l.contains(c))
        {
            return Err(Error::validation(format!(
                "edge {id} coloured outside its list"
            )));
        }
    }
    let ids: Vec<EdgeId> = h.edge_ids().collect();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            let (u1, v1) = h.endpoints(a)?;
            let (u2, v2) = h.endpoints(b)?;
            if (u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2) && col[&a] == col[&b] {
                return Err(Error::validation(format!(
                    "adjacent edges {a} and {b} share colour {}",
                    col[&a]
                )));
            }
        }
    }
    Ok(())
}

/// Run the engine: s naive steps, then the greedy finish when the remaining
/// degrees are at most T and every remaining list has at least 2T colours;
/// otherwise retry with a fresh stream, up to the retry budget. Failure is
/// a reportable outcome. A `Precondition` error means the engine hypotheses
/// were never met (callers fall back to other solvers).
pub fn run(
    h: &Multigraph,
    lists: &BTreeMap<EdgeId, BTreeSet<Colour>>,
    params: &KahnParams,
) -> Result<RunOutcome> {
    if h.edge_count() == 0 {
        return Ok(RunOutcome::Success {
            colouring: BTreeMap::new(),
            telemetry: Vec::new(),
            attempts: 0,
        });
    }
    let init = init_state(h, lists, params.delta)?;
    let delta_h = h.max_degree() as f64;
    let max_lambda = init
        .activities
        .values()
        .flat_map(|m| m.values())
        .fold(0.0f64, |acc, &l| acc.max(l));
    let k = params.k.unwrap_or_else(|| (delta_h * max_lambda).max(1.0));
    let s_steps = params
        .s
        .unwrap_or_else(|| ((4.0 * k).ln() + 1.0).ceil().max(1.0) as usize);
    let t = params
        .t
        .unwrap_or_else(|| (delta_h / (2.0 * std::f64::consts::E * k)).ceil().max(1.0) as usize);

    let mut last_state = None;
    for attempt in 0..params.retries.max(1) {
        let mut state = init.clone();
        let mut telemetry: Vec<TelemetryRow> = Vec::new();
        for _ in 0..s_steps {
            if try_finish(h, &state, lists, t)?.is_some() {
                break;
            }
            let (next, rows) = naive_step(&state, h, params.seed, attempt as u64)?;
            telemetry.extend(rows);
            state = next;
        }
        if let Some(colouring) = try_finish(h, &state, lists, t)? {
            validate_edge_colouring(h, lists, &colouring)?;
            return Ok(RunOutcome::Success {
                colouring,
                telemetry,
                attempts: attempt + 1,
            });
        }
        last_state = Some(state);
    }
    let state = last_state.expect("at least one attempt");
    let remaining = state.uncoloured_edges();
    let sub = h.edge_subgraph(&remaining);
    Ok(RunOutcome::Failure {
        report: RunReport {
            attempts: params.retries.max(1),
            uncoloured: remaining.len(),
            max_uncoloured_degree: sub.max_degree(),
            min_remaining_list: state
                .lists
                .values()
                .map(|l| l.len())
                .min()
                .unwrap_or(0),
        },
    })
}

/// Try to complete the current state greedily: either the configured T
/// works, or the state is self-witnessing (every remaining list has at
/// least twice the remaining maximum degree).
fn try_finish(
    h: &Multigraph,
    state: &ColourState,
    original_lists: &BTreeMap<EdgeId, BTreeSet<Colour>>,
    t: usize,
) -> Result<Option<BTreeMap<EdgeId, Colour>>> {
    let remaining = state.uncoloured_edges();
    if remaining.is_empty() {
        return Ok(Some(state.committed.clone()));
    }
    let sub = h.edge_subgraph(&remaining);
    let dmax = sub.max_degree();
    let min_list = state
        .lists
        .values()
        .map(|l| l.len())
        .min()
        .unwrap_or(0);
    let t_eff = if dmax <= t && min_list >= 2 * t {
        t
    } else if min_list >= 2 * dmax.max(1) {
        dmax.max(1)
    } else {
        return Ok(None);
    };
    let greedy = greedy_finish(h, &remaining, &state.lists, t_eff)?;
    let mut colouring = state.committed.clone();
    colouring.extend(greedy);
    validate_edge_colouring(h, original_lists, &colouring)?;
    Ok(Some(colouring))
}
