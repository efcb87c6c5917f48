//! Greedy and exact Σ-colouring solvers, the list-feasibility backtracker,
//! exact list edge-colouring of multigraphs via the line graph, and the
//! end-to-end pipeline that ties structure detection, reduction and the
//! randomized edge-colouring engine together.

use crate::clique;
use crate::discharge::{detect_structure, validate_witness, DetectOutcome, StructureWitness};
use crate::error::{Error, Result};
use crate::graph::{degeneracy_ordering, DegeneracyOrdering, EmbeddedGraph, Multigraph, SimpleGraph};
use crate::kahn::{self, KahnParams, RunOutcome};
use crate::reduction::{self, MatchingInstance};
use crate::sigma::{conflict_graph, SigmaSystem};
use crate::{zeta_star, Colour, EdgeId, Vertex};
use std::collections::{BTreeMap, BTreeSet};

/// A colour list per vertex. Lists are immutable during a solve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ListAssignment {
    pub lists: BTreeMap<Vertex, BTreeSet<Colour>>,
}

impl ListAssignment {
    pub fn new(lists: BTreeMap<Vertex, BTreeSet<Colour>>) -> Self {
        Self { lists }
    }

    /// Every vertex gets the palette {0, .., k-1}.
    pub fn uniform(g: &SimpleGraph, k: u32) -> Self {
        let palette: BTreeSet<Colour> = (0..k).collect();
        Self {
            lists: g.vertices().map(|v| (v, palette.clone())).collect(),
        }
    }

    pub fn get(&self, v: Vertex) -> Result<&BTreeSet<Colour>> {
        self.lists
            .get(&v)
            .ok_or_else(|| Error::precondition(format!("vertex {v} has no colour list")))
    }

    pub fn covers(&self, g: &SimpleGraph) -> Result<()> {
        for v in g.vertices() {
            self.get(v)?;
        }
        Ok(())
    }

    pub fn restrict(&self, keep: &BTreeSet<Vertex>) -> ListAssignment {
        ListAssignment {
            lists: self
                .lists
                .iter()
                .filter(|(v, _)| keep.contains(v))
                .map(|(&v, l)| (v, l.clone()))
                .collect(),
        }
    }

    pub fn min_size(&self) -> usize {
        self.lists.values().map(|l| l.len()).min().unwrap_or(0)
    }
}

/// A (candidate) Σ-colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Colouring {
    pub assignment: BTreeMap<Vertex, Colour>,
}

/// The definitional validator: accepted iff no conflict-graph edge is
/// monochromatic and every colour comes from its vertex's list.
pub fn validate_colouring(
    g: &SimpleGraph,
    s: &SigmaSystem,
    col: &Colouring,
    lists: Option<&ListAssignment>,
) -> Result<()> {
    let all: BTreeSet<Vertex> = BTreeSet::new();
    validate_partial(g, s, &col.assignment, lists, &all)
}

/// Validate a colouring of V ∖ excluded: totality there, conflicts, lists.
pub fn validate_partial(
    g: &SimpleGraph,
    s: &SigmaSystem,
    assignment: &BTreeMap<Vertex, Colour>,
    lists: Option<&ListAssignment>,
    excluded: &BTreeSet<Vertex>,
) -> Result<()> {
    let cg = conflict_graph(g, s)?;
    for v in g.vertices().filter(|v| !excluded.contains(v)) {
        let c = assignment
            .get(&v)
            .ok_or_else(|| Error::validation(format!("vertex {v} is uncoloured")))?;
        if let Some(l) = lists {
            if !l.get(v)?.contains(c) {
                return Err(Error::validation(format!(
                    "vertex {v} uses colour {c} outside its list"
                )));
            }
        }
    }
    for (u, v) in cg.base.edges() {
        if excluded.contains(&u) || excluded.contains(&v) {
            continue;
        }
        if assignment.get(&u) == assignment.get(&v) {
            return Err(Error::validation(format!(
                "vertices {u} and {v} conflict (origin {:?}) yet share colour {:?}",
                cg.origin_of(u, v),
                assignment.get(&u)
            )));
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub enum GreedyOutcome {
    Coloured(Colouring),
    Failed { at_vertex: Vertex },
}

/// Colour vertices in the given order, always picking the smallest feasible
/// list colour. With pairwise-disjoint Σ-sets and lists of size at least
/// Δ(G;Σ) + q + 1 this always succeeds; otherwise the failing vertex is
/// reported as a result, not an error.
pub fn greedy_sigma_colouring(
    g: &SimpleGraph,
    s: &SigmaSystem,
    lists: &ListAssignment,
    order: &DegeneracyOrdering,
) -> Result<GreedyOutcome> {
    lists.covers(g)?;
    let cg = conflict_graph(g, s)?;
    let mut assignment: BTreeMap<Vertex, Colour> = BTreeMap::new();
    for &v in &order.order {
        let mut forbidden: BTreeSet<Colour> = BTreeSet::new();
        for &u in cg.base.neighbours(v)? {
            if let Some(&c) = assignment.get(&u) {
                forbidden.insert(c);
            }
        }
        match lists.get(v)?.iter().find(|c| !forbidden.contains(c)) {
            Some(&c) => {
                assignment.insert(v, c);
            }
            None => return Ok(GreedyOutcome::Failed { at_vertex: v }),
        }
    }
    Ok(GreedyOutcome::Coloured(Colouring { assignment }))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ChromaticOutcome {
    Exact(usize),
    Bounds { lower: usize, upper: usize },
}

pub const DEFAULT_SOLVER_NODE_BUDGET: u64 = 20_000_000;

/// Exact χ(G;Σ) as the chromatic number of the conflict graph: clique lower
/// bound, greedy upper bound, then k-colourability backtracking between
/// them. Budget exhaustion degrades to bounds.
pub fn exact_sigma_chromatic(
    g: &SimpleGraph,
    s: &SigmaSystem,
    node_budget: u64,
) -> Result<ChromaticOutcome> {
    let cg = conflict_graph(g, s)?.base;
    if cg.vertex_count() == 0 {
        return Ok(ChromaticOutcome::Exact(0));
    }
    let lower = clique::max_clique(&cg, node_budget);
    let order = degeneracy_ordering(&cg);
    let palette_upper = order.q + 1;
    let empty = SigmaSystem::empty();
    let upper = match greedy_sigma_colouring(
        &cg,
        &empty,
        &ListAssignment::uniform(&cg, palette_upper as u32),
        &order,
    ) {
        Ok(GreedyOutcome::Coloured(c)) => {
            c.assignment.values().collect::<BTreeSet<_>>().len()
        }
        _ => cg.vertex_count(),
    };
    let lb = lower.size().max(1);
    if !lower.is_exact() {
        return Ok(ChromaticOutcome::Bounds {
            lower: lb,
            upper,
        });
    }
    let mut budget = node_budget;
    for k in lb..upper {
        match k_colourable(&cg, k, &mut budget) {
            Some(true) => return Ok(ChromaticOutcome::Exact(k)),
            Some(false) => continue,
            None => {
                return Ok(ChromaticOutcome::Bounds {
                    lower: k,
                    upper,
                })
            }
        }
    }
    Ok(ChromaticOutcome::Exact(upper))
}

/// Is the graph k-colourable? None on budget exhaustion.
fn k_colourable(g: &SimpleGraph, k: usize, budget: &mut u64) -> Option<bool> {
    let mut order: Vec<Vertex> = g.vertices().collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut assignment: BTreeMap<Vertex, Colour> = BTreeMap::new();
    fn rec(
        g: &SimpleGraph,
        order: &[Vertex],
        i: usize,
        k: usize,
        assignment: &mut BTreeMap<Vertex, Colour>,
        max_used: u32,
        budget: &mut u64,
    ) -> Option<bool> {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        if i == order.len() {
            return Some(true);
        }
        let v = order[i];
        let forbidden: BTreeSet<Colour> = g
            .neighbours(v)
            .expect("vertex")
            .iter()
            .filter_map(|u| assignment.get(u).copied())
            .collect();
        // colour symmetry: allow at most one brand-new colour
        let cap = (max_used + 1).min(k as u32 - 1);
        for c in 0..=cap {
            if forbidden.contains(&c) {
                continue;
            }
            assignment.insert(v, c);
            match rec(g, order, i + 1, k, assignment, max_used.max(c), budget) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            assignment.remove(&v);
        }
        Some(false)
    }
    if k == 0 {
        return Some(g.vertex_count() == 0);
    }
    rec(g, &order, 0, k, &mut assignment, 0, budget)
}

#[derive(Debug, Clone)]
pub enum FeasibilityOutcome {
    Feasible(Colouring),
    Infeasible,
    BudgetExceeded,
}

/// Complete backtracking for list Σ-colouring feasibility on the conflict
/// graph. `Infeasible` is a proof (the search space was exhausted).
pub fn list_feasible(
    g: &SimpleGraph,
    s: &SigmaSystem,
    lists: &ListAssignment,
    node_budget: u64,
) -> Result<FeasibilityOutcome> {
    lists.covers(g)?;
    let cg = conflict_graph(g, s)?.base;
    let mut order: Vec<Vertex> = cg.vertices().collect();
    order.sort_by_key(|&v| {
        (
            lists.lists.get(&v).map_or(0, |l| l.len()),
            std::cmp::Reverse(cg.degree(v)),
            v,
        )
    });
    let mut assignment: BTreeMap<Vertex, Colour> = BTreeMap::new();
    let mut budget = node_budget;
    fn rec(
        cg: &SimpleGraph,
        order: &[Vertex],
        i: usize,
        lists: &ListAssignment,
        assignment: &mut BTreeMap<Vertex, Colour>,
        budget: &mut u64,
    ) -> Option<bool> {
        if *budget == 0 {
            return None;
        }
        *budget -= 1;
        if i == order.len() {
            return Some(true);
        }
        let v = order[i];
        let forbidden: BTreeSet<Colour> = cg
            .neighbours(v)
            .expect("vertex")
            .iter()
            .filter_map(|u| assignment.get(u).copied())
            .collect();
        for &c in lists.lists.get(&v).into_iter().flatten() {
            if forbidden.contains(&c) {
                continue;
            }
            assignment.insert(v, c);
            match rec(cg, order, i + 1, lists, assignment, budget) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            assignment.remove(&v);
        }
        Some(false)
    }
    match rec(&cg, &order, 0, lists, &mut assignment, &mut budget) {
        Some(true) => Ok(FeasibilityOutcome::Feasible(Colouring { assignment })),
        Some(false) => Ok(FeasibilityOutcome::Infeasible),
        None => Ok(FeasibilityOutcome::BudgetExceeded),
    }
}

/// The line graph of a multigraph: one vertex per edge id, adjacency is
/// sharing an endpoint (parallel edges are adjacent).
pub fn line_graph(h: &Multigraph) -> SimpleGraph {
    let mut lg = SimpleGraph::new();
    for id in h.edge_ids() {
        lg.add_vertex(id);
    }
    let ids: Vec<EdgeId> = h.edge_ids().collect();
    for (i, &a) in ids.iter().enumerate() {
        for &b in &ids[i + 1..] {
            let (u1, v1) = h.endpoints(a).expect("edge");
            let (u2, v2) = h.endpoints(b).expect("edge");
            if u1 == u2 || u1 == v2 || v1 == u2 || v1 == v2 {
                lg.add_edge(a, b).expect("line graph edge");
            }
        }
    }
    lg
}

/// Exact list edge-colouring of a multigraph by backtracking over the line
/// graph; edges are assigned in decreasing-degree order internally.
pub fn exact_list_edge_colouring(
    h: &Multigraph,
    lists: &BTreeMap<EdgeId, BTreeSet<Colour>>,
    node_budget: u64,
) -> Result<FeasibilityOutcome> {
    let lg = line_graph(h);
    let la = ListAssignment::new(lists.clone());
    list_feasible(&lg, &SigmaSystem::empty(), &la, node_budget)
}

// ------------------------------------------------------------------ pipeline

#[derive(Debug, Clone)]
pub struct PipelineParams {
    /// Structure threshold; defaults to ζ*_S = 132(3−χ(S)) of the instance.
    pub zeta: Option<i64>,
    pub delta: f64,
    pub seed: u64,
    pub clique_budget: u64,
    pub solver_budget: u64,
    pub kahn_retries: usize,
    pub depth_limit: usize,
}

impl Default for PipelineParams {
    fn default() -> Self {
        Self {
            zeta: None,
            delta: 0.2,
            seed: 1,
            clique_budget: clique::DEFAULT_CLIQUE_BUDGET,
            solver_budget: DEFAULT_SOLVER_NODE_BUDGET,
            kahn_retries: 8,
            depth_limit: 256,
        }
    }
}

#[derive(Debug, Clone)]
pub enum PipelineOutcome {
    Coloured {
        colouring: Colouring,
        trace: Vec<String>,
    },
    Failed {
        stage: String,
        detail: String,
        trace: Vec<String>,
    },
}

impl PipelineOutcome {
    pub fn colouring(&self) -> Option<&Colouring> {
        match self {
            PipelineOutcome::Coloured { colouring, .. } => Some(colouring),
            PipelineOutcome::Failed { .. } => None,
        }
    }
}

/// Solve a list Σ-colouring instance by the structural recursion: complete
/// to edge-maximal, detect S1/S2/S3, then colour greedily, contract, or
/// reduce to multigraph list edge-colouring and extend. Every success is
/// validated against the original instance; probabilistic stages fall back
/// to the exact solver, which keeps the pipeline sound (and complete at
/// desk scale).
pub fn pipeline_sigma_colour(
    g: &EmbeddedGraph,
    s: &SigmaSystem,
    lists: &ListAssignment,
    params: &PipelineParams,
) -> Result<PipelineOutcome> {
    lists.covers(g.graph())?;
    s.validate(g.graph())?;
    let mut trace = Vec::new();
    let out = solve(g, s, lists, params, 0, &mut trace)?;
    Ok(match out {
        Some(colouring) => {
            validate_colouring(g.graph(), s, &colouring, Some(lists))?;
            PipelineOutcome::Coloured { colouring, trace }
        }
        None => {
            let (stage, detail) = trace
                .last()
                .map(|t| ("fallback".to_string(), t.clone()))
                .unwrap_or_else(|| ("init".into(), "nothing attempted".into()));
            PipelineOutcome::Failed {
                stage,
                detail,
                trace,
            }
        }
    })
}

fn solve(
    g: &EmbeddedGraph,
    s: &SigmaSystem,
    lists: &ListAssignment,
    params: &PipelineParams,
    depth: usize,
    trace: &mut Vec<String>,
) -> Result<Option<Colouring>> {
    if depth > params.depth_limit {
        trace.push(format!("depth {depth}: recursion limit reached"));
        return exact_fallback(g.graph(), s, lists, params, trace);
    }
    let n = g.graph().vertex_count();
    if n <= 2 {
        return match list_feasible(g.graph(), s, lists, params.solver_budget)? {
            FeasibilityOutcome::Feasible(c) => Ok(Some(c)),
            _ => {
                trace.push(format!("depth {depth}: trivial instance infeasible"));
                Ok(None)
            }
        };
    }
    let gm = if g.graph().is_connected() {
        g.complete_to_edge_maximal()?
    } else {
        trace.push(format!("depth {depth}: disconnected, exact solve"));
        return exact_fallback(g.graph(), s, lists, params, trace);
    };
    let zeta = params.zeta.unwrap_or_else(|| zeta_star(gm.surface_chi()));
    match detect_structure(&gm, zeta)? {
        DetectOutcome::Witness(w @ StructureWitness::S1 { .. }) => {
            trace.push(format!("depth {depth}: S1, greedy on the conflict graph"));
            debug_assert!(validate_witness(&gm, &w)?.valid);
            let cg = conflict_graph(gm.graph(), s)?.base;
            let order = degeneracy_ordering(&cg);
            match greedy_sigma_colouring(gm.graph(), s, lists, &order)? {
                GreedyOutcome::Coloured(c) => Ok(Some(c)),
                GreedyOutcome::Failed { at_vertex } => {
                    trace.push(format!(
                        "depth {depth}: greedy stuck at {at_vertex}, exact solve"
                    ));
                    exact_fallback(g.graph(), s, lists, params, trace)
                }
            }
        }
        DetectOutcome::Witness(StructureWitness::S2 { v, .. }) => {
            trace.push(format!("depth {depth}: S2 at {v}, contracting"));
            contract_and_recurse(&gm, s, lists, params, depth, v, zeta, trace)
        }
        DetectOutcome::Witness(w @ StructureWitness::S3 { .. }) => {
            let report = validate_witness(&gm, &w)?;
            if !report.valid {
                trace.push(format!(
                    "depth {depth}: S3 witness failed validation, exact solve"
                ));
                return exact_fallback(g.graph(), s, lists, params, trace);
            }
            if let StructureWitness::S3 { ref y, ref xy, .. } = w {
                // the reducibility precondition may fail on arbitrary
                // sigma-systems; contract such a y with a small neighbour,
                // exactly like the S2 step
                for &yv in y {
                    let (x1, x2) = xy[&yv];
                    if !s.get(x1).contains(&yv) || !s.get(x2).contains(&yv) {
                        trace.push(format!(
                            "depth {depth}: S3 but {yv} not reducible, contracting it"
                        ));
                        return contract_and_recurse(
                            &gm, s, lists, params, depth, yv, zeta, trace,
                        );
                    }
                }
            }
            trace.push(format!("depth {depth}: S3, reducing to edge-colouring"));
            s3_reduce_and_recurse(&gm, s, lists, params, depth, &w, zeta, trace)
        }
        DetectOutcome::NoneFound { reason } => {
            trace.push(format!("depth {depth}: no structure ({reason}), exact solve"));
            exact_fallback(g.graph(), s, lists, params, trace)
        }
    }
}

/// The S2 step: contract v with a small neighbour u into u, solve the
/// smaller instance, then give v the smallest free colour.
#[allow(clippy::too_many_arguments)]
fn contract_and_recurse(
    gm: &EmbeddedGraph,
    s: &SigmaSystem,
    lists: &ListAssignment,
    params: &PipelineParams,
    depth: usize,
    v: Vertex,
    zeta: i64,
    trace: &mut Vec<String>,
) -> Result<Option<Colouring>> {
    let u = gm
        .graph()
        .neighbours(v)?
        .iter()
        .copied()
        .find(|&u| gm.graph().degree(u) as i64 <= zeta);
    let Some(u) = u else {
        trace.push(format!(
            "depth {depth}: no small neighbour to contract with, exact solve"
        ));
        return exact_fallback(gm.graph(), s, lists, params, trace);
    };
    // d^Sigma(v) against the list size, logged rather than assumed
    let dsv = conflict_graph(gm.graph(), s)?.base.degree(v);
    log::debug!("S2 contraction at {v}: d_sigma = {dsv}, list = {}", lists.get(v)?.len());

    let g2 = gm.contract_edge(u, v)?;
    let mut s2 = SigmaSystem::empty();
    for t in gm.graph().vertices().filter(|&t| t != v && t != u) {
        let mut set = s.get(t);
        set.remove(&v);
        s2.set(t, set);
    }
    let mut wu = s.get(u);
    wu.extend(s.get(v));
    wu.remove(&u);
    wu.remove(&v);
    s2.set(u, wu);
    let keep: BTreeSet<Vertex> = g2.graph().vertices().collect();
    let lists2 = lists.restrict(&keep);
    let Some(partial) = solve(&g2, &s2, &lists2, params, depth + 1, trace)? else {
        return Ok(None);
    };
    let mut assignment = partial.assignment;
    // v takes the smallest list colour free of all its conflicts
    let cg = conflict_graph(gm.graph(), s)?;
    let forbidden: BTreeSet<Colour> = cg
        .base
        .neighbours(v)?
        .iter()
        .filter_map(|t| assignment.get(t).copied())
        .collect();
    match lists.get(v)?.iter().find(|c| !forbidden.contains(c)) {
        Some(&c) => {
            assignment.insert(v, c);
            Ok(Some(Colouring { assignment }))
        }
        None => {
            trace.push(format!("depth {depth}: no free colour for {v}, exact solve"));
            exact_fallback(gm.graph(), s, lists, params, trace)
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn s3_reduce_and_recurse(
    gm: &EmbeddedGraph,
    s: &SigmaSystem,
    lists: &ListAssignment,
    params: &PipelineParams,
    depth: usize,
    w: &StructureWitness,
    zeta: i64,
    trace: &mut Vec<String>,
) -> Result<Option<Colouring>> {
    let beta = s.beta().max(
        match w {
            StructureWitness::S3 { x, .. } => x
                .iter()
                .map(|&xv| gm.graph().degree(xv))
                .max()
                .unwrap_or(0),
            _ => 0,
        },
    );
    let reduced = match reduction::build_reduced_instance(gm, s, w, beta.max(1) * 4) {
        Ok(r) => r,
        Err(e) => {
            trace.push(format!("depth {depth}: reduction failed ({e}), exact solve"));
            return exact_fallback(gm.graph(), s, lists, params, trace);
        }
    };
    let keep: BTreeSet<Vertex> = reduced.g0.graph().vertices().collect();
    let lists0 = lists.restrict(&keep);
    let Some(partial) = solve(&reduced.g0, &reduced.sigma0, &lists0, params, depth + 1, trace)?
    else {
        return Ok(None);
    };
    let y: BTreeSet<Vertex> = match w {
        StructureWitness::S3 { y, .. } => y.clone(),
        _ => unreachable!(),
    };
    // the G0 colouring restricts to a partial colouring of the original
    if let Err(e) = validate_partial(gm.graph(), s, &partial.assignment, Some(lists), &y) {
        return Err(Error::invariant(format!(
            "recursive colouring does not lift (claim violation): {e}"
        )));
    }
    let mi = match reduction::build_matching_instance(gm, s, w, &partial.assignment, lists, zeta) {
        Ok(mi) => mi,
        Err(e) => {
            trace.push(format!(
                "depth {depth}: matching instance failed ({e}), exact solve"
            ));
            return exact_fallback(gm.graph(), s, lists, params, trace);
        }
    };
    let h_col = colour_matching_instance(&mi, params, depth, trace)?;
    let Some(h_col) = h_col else {
        trace.push(format!(
            "depth {depth}: edge-colouring of H failed, exact solve"
        ));
        return exact_fallback(gm.graph(), s, lists, params, trace);
    };
    let total = reduction::extend_colouring(gm, s, lists, &partial.assignment, &h_col, &mi)?;
    Ok(Some(Colouring { assignment: total }))
}

/// Colour the edges of H: first the randomized engine, then the exact
/// backtracking fallback.
fn colour_matching_instance(
    mi: &MatchingInstance,
    params: &PipelineParams,
    depth: usize,
    trace: &mut Vec<String>,
) -> Result<Option<BTreeMap<EdgeId, Colour>>> {
    let kahn_params = KahnParams {
        seed: params.seed.wrapping_add(depth as u64),
        retries: params.kahn_retries,
        delta: params.delta,
        ..KahnParams::default()
    };
    match kahn::run(&mi.h, &mi.lists, &kahn_params) {
        Ok(RunOutcome::Success { colouring, .. }) => {
            trace.push(format!("depth {depth}: randomized engine coloured H"));
            return Ok(Some(colouring));
        }
        Ok(RunOutcome::Failure { report }) => {
            trace.push(format!(
                "depth {depth}: randomized engine gave up ({report}), exact edge-colouring"
            ));
        }
        Err(e) => {
            trace.push(format!(
                "depth {depth}: engine hypotheses unmet ({e}), exact edge-colouring"
            ));
        }
    }
    match exact_list_edge_colouring(&mi.h, &mi.lists, params.solver_budget)? {
        FeasibilityOutcome::Feasible(c) => Ok(Some(c.assignment)),
        FeasibilityOutcome::Infeasible | FeasibilityOutcome::BudgetExceeded => Ok(None),
    }
}

fn exact_fallback(
    g: &SimpleGraph,
    s: &SigmaSystem,
    lists: &ListAssignment,
    params: &PipelineParams,
    trace: &mut Vec<String>,
) -> Result<Option<Colouring>> {
    match list_feasible(g, s, lists, params.solver_budget)? {
        FeasibilityOutcome::Feasible(c) => Ok(Some(c)),
        FeasibilityOutcome::Infeasible => {
            trace.push("exact solver: instance is list-infeasible".into());
            Ok(None)
        }
        FeasibilityOutcome::BudgetExceeded => {
            trace.push("exact solver: budget exceeded".into());
            Ok(None)
        }
    }
}
