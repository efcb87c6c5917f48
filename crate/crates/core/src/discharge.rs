//! Discharging on embedded graphs: initial charges, redistribution rules,
//! neighbour-type classification and detection/validation of the three
//! structures S1 / S2 / S3.
//!
//! Charges are ρ(v) = 6 d(v) − 36; a vertex is *big* when its degree is at
//! least ζ+1. All rule guards are evaluated against the frozen input graph
//! and the transfer amounts are integers, so the ledger stays integral and
//! conservation is exact.

use crate::error::Result;
use crate::graph::EmbeddedGraph;
use crate::rng::substream;
use crate::Vertex;
use rand::Rng;
use std::collections::{BTreeMap, BTreeSet};

/// Rule identifiers for the six transfer rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
}

impl std::fmt::Display for Rule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Rule::R1 => "R1",
            Rule::R2 => "R2",
            Rule::R3 => "R3",
            Rule::R4 => "R4",
            Rule::R5 => "R5",
            Rule::R6 => "R6",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone)]
pub struct Transfer {
    pub from: Vertex,
    pub to: Vertex,
    pub amount: i64,
    pub rule: Rule,
}

/// Full account of one discharging run.
#[derive(Debug, Clone)]
pub struct ChargeLedger {
    pub zeta: i64,
    pub initial: BTreeMap<Vertex, i64>,
    pub final_: BTreeMap<Vertex, i64>,
    pub transfers: Vec<Transfer>,
}

impl ChargeLedger {
    pub fn initial_total(&self) -> i64 {
        self.initial.values().sum()
    }
    pub fn final_total(&self) -> i64 {
        self.final_.values().sum()
    }
}

fn is_big(g: &EmbeddedGraph, v: Vertex, zeta: i64) -> bool {
    g.graph().degree(v) as i64 > zeta
}

/// Apply the initial charge ρ(v) = 6 d(v) − 36 and the six rules, all from
/// the initial snapshot. Always produces a ledger.
pub fn compute_charges(g: &EmbeddedGraph, zeta: i64) -> ChargeLedger {
    let gr = g.graph();
    let initial: BTreeMap<Vertex, i64> =
        gr.vertices().map(|v| (v, 6 * gr.degree(v) as i64 - 36)).collect();
    let mut final_ = initial.clone();
    let mut transfers = Vec::new();
    let mut send = |from: Vertex,
                    to: Vertex,
                    amount: i64,
                    rule: Rule,
                    final_: &mut BTreeMap<Vertex, i64>| {
        *final_.get_mut(&from).expect("from") -= amount;
        *final_.get_mut(&to).expect("to") += amount;
        transfers.push(Transfer {
            from,
            to,
            amount,
            rule,
        });
    };
    for v in gr.vertices() {
        let d = gr.degree(v);
        let bigs: Vec<Vertex> = gr
            .neighbours(v)
            .expect("vertex")
            .iter()
            .copied()
            .filter(|&u| is_big(g, u, zeta))
            .collect();
        match (d, bigs.len()) {
            (3, 3) => {
                for &u in &bigs {
                    send(u, v, 6, Rule::R1, &mut final_);
                }
            }
            (3, 2) => {
                for &u in &bigs {
                    send(u, v, 9, Rule::R2, &mut final_);
                }
            }
            (4, 4) => {
                for &u in &bigs {
                    send(u, v, 3, Rule::R3, &mut final_);
                }
            }
            (4, 3) => {
                for &u in &bigs {
                    send(u, v, 4, Rule::R4, &mut final_);
                }
            }
            (4, 2) => {
                for &u in &bigs {
                    send(u, v, 6, Rule::R5, &mut final_);
                }
            }
            (5, _) => {
                for &u in &bigs {
                    send(u, v, 3, Rule::R6, &mut final_);
                }
            }
            _ => {}
        }
    }
    ChargeLedger {
        zeta,
        initial,
        final_,
        transfers,
    }
}

/// Per big vertex: the five neighbour classes of the charge analysis, plus
/// a catch-all bucket for inputs outside the no-S2 regime.
#[derive(Debug, Clone, Default)]
pub struct NeighbourClasses {
    pub m1: BTreeSet<Vertex>,
    pub m4a: BTreeSet<Vertex>,
    pub m4b: BTreeSet<Vertex>,
    pub m5: BTreeSet<Vertex>,
    pub m6: BTreeSet<Vertex>,
    pub unclassified: BTreeSet<Vertex>,
}

/// Classify the neighbours of every big vertex by the rotation-window test:
/// u is in M1 when one of {u--, u-, u+, u++} (in the rotation at v) is big;
/// otherwise by its own degree, with M4b demanding d(u) = d(u-) = d(u+) = 4.
pub fn classify_neighbours(
    g: &EmbeddedGraph,
    zeta: i64,
) -> Result<BTreeMap<Vertex, NeighbourClasses>> {
    let gr = g.graph();
    let mut out = BTreeMap::new();
    for v in gr.vertices().filter(|&v| is_big(g, v, zeta)) {
        let rot = g.rotation(v)?;
        let n = rot.len();
        let mut classes = NeighbourClasses::default();
        for (i, &u) in rot.iter().enumerate() {
            let at = |k: i64| rot[((i as i64 + k).rem_euclid(n as i64)) as usize];
            let window = [at(-2), at(-1), at(1), at(2)];
            if window.iter().any(|&w| is_big(g, w, zeta)) {
                classes.m1.insert(u);
                continue;
            }
            let du = gr.degree(u);
            let dm = gr.degree(at(-1));
            let dp = gr.degree(at(1));
            if du == 4 && dm == 4 && dp == 4 {
                classes.m4b.insert(u);
            } else if du == 4 && (dm >= 5 || dp >= 5) {
                classes.m4a.insert(u);
            } else if du == 5 {
                classes.m5.insert(u);
            } else if du >= 6 {
                classes.m6.insert(u);
            } else {
                classes.unclassified.insert(u);
            }
        }
        out.insert(v, classes);
    }
    Ok(out)
}

/// A tagged structure certificate.
#[derive(Debug, Clone)]
pub enum StructureWitness {
    /// Every vertex has degree at most ζ.
    S1 { zeta: i64 },
    /// A vertex of degree at most five with at most one big neighbour.
    S2 {
        zeta: i64,
        v: Vertex,
        big_neighbour: Option<Vertex>,
    },
    /// The two-set structure with its X^y map.
    S3 {
        zeta: i64,
        x: BTreeSet<Vertex>,
        y: BTreeSet<Vertex>,
        xy: BTreeMap<Vertex, (Vertex, Vertex)>,
    },
}

impl StructureWitness {
    pub fn kind(&self) -> &'static str {
        match self {
            StructureWitness::S1 { .. } => "S1",
            StructureWitness::S2 { .. } => "S2",
            StructureWitness::S3 { .. } => "S3",
        }
    }
}

/// Detection result. Below the structural ζ threshold the refinement may die
/// out; that is a declared outcome, not a failure.
#[derive(Debug, Clone)]
pub enum DetectOutcome {
    Witness(StructureWitness),
    NoneFound { reason: String },
}

impl DetectOutcome {
    pub fn witness(&self) -> Option<&StructureWitness> {
        match self {
            DetectOutcome::Witness(w) => Some(w),
            DetectOutcome::NoneFound { .. } => None,
        }
    }
}

/// Y^W: vertices of Y with both X-neighbours inside W.
fn y_for(
    w: &BTreeSet<Vertex>,
    y: &BTreeSet<Vertex>,
    xy: &BTreeMap<Vertex, (Vertex, Vertex)>,
) -> BTreeSet<Vertex> {
    y.iter()
        .copied()
        .filter(|v| {
            let (a, b) = xy[v];
            w.contains(&a) && w.contains(&b)
        })
        .collect()
}

/// Violation margin of condition (iii) for a candidate Z:
/// e(Z, V∖Y) − e(Z, Y∖Y^Z) − ζ|Z|; positive means violated.
fn violation_margin(
    g: &EmbeddedGraph,
    z: &BTreeSet<Vertex>,
    y: &BTreeSet<Vertex>,
    xy: &BTreeMap<Vertex, (Vertex, Vertex)>,
    zeta: i64,
) -> i64 {
    let gr = g.graph();
    let all: BTreeSet<Vertex> = gr.vertices().collect();
    let not_y: BTreeSet<Vertex> = all.difference(y).copied().collect();
    let yz = y_for(z, y, xy);
    let y_minus: BTreeSet<Vertex> = y.difference(&yz).copied().collect();
    gr.e_between(z, &not_y) as i64 - gr.e_between(z, &y_minus) as i64 - zeta * z.len() as i64
}

/// Find a subset Z ⊆ X violating condition (iii), exhaustively when
/// |X| ≤ 20, else by a greedy margin-maximizing heuristic (incomplete).
fn find_violating_subset(
    g: &EmbeddedGraph,
    x: &BTreeSet<Vertex>,
    y: &BTreeSet<Vertex>,
    xy: &BTreeMap<Vertex, (Vertex, Vertex)>,
    zeta: i64,
) -> Option<BTreeSet<Vertex>> {
    let xs: Vec<Vertex> = x.iter().copied().collect();
    if xs.len() <= 20 {
        for mask in 1u32..(1u32 << xs.len()) {
            let z: BTreeSet<Vertex> = xs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .map(|(_, &v)| v)
                .collect();
            if violation_margin(g, &z, y, xy, zeta) > 0 {
                return Some(z);
            }
        }
        None
    } else {
        // greedy: repeatedly add the vertex that maximizes the margin
        let mut z: BTreeSet<Vertex> = BTreeSet::new();
        let mut remaining: BTreeSet<Vertex> = x.clone();
        while !remaining.is_empty() {
            let pick = remaining
                .iter()
                .copied()
                .max_by_key(|&v| {
                    let mut trial = z.clone();
                    trial.insert(v);
                    (violation_margin(g, &trial, y, xy, zeta), std::cmp::Reverse(v))
                })
                .expect("nonempty");
            z.insert(pick);
            remaining.remove(&pick);
            if violation_margin(g, &z, y, xy, zeta) > 0 {
                return Some(z);
            }
        }
        None
    }
}

/// Search for one of the three structures: an S1 scan, then an S2 scan
/// (smallest vertex id wins), then S3 from X0 = big vertices and
/// Y0 = union of the M4b classes, refined by X_i = X_{i−1}∖Z_i,
/// Y_i = Y_{i−1}^{X_i} until condition (iii) holds.
pub fn detect_structure(g: &EmbeddedGraph, zeta: i64) -> Result<DetectOutcome> {
    let gr = g.graph();
    if gr.vertices().all(|v| gr.degree(v) as i64 <= zeta) {
        return Ok(DetectOutcome::Witness(StructureWitness::S1 { zeta }));
    }
    for v in gr.vertices() {
        if gr.degree(v) <= 5 {
            let bigs: Vec<Vertex> = gr
                .neighbours(v)?
                .iter()
                .copied()
                .filter(|&u| is_big(g, u, zeta))
                .collect();
            if bigs.len() <= 1 {
                return Ok(DetectOutcome::Witness(StructureWitness::S2 {
                    zeta,
                    v,
                    big_neighbour: bigs.first().copied(),
                }));
            }
        }
    }
    let classes = classify_neighbours(g, zeta)?;
    let x0: BTreeSet<Vertex> = classes.keys().copied().collect();
    let mut y0: BTreeSet<Vertex> = BTreeSet::new();
    for c in classes.values() {
        y0.extend(c.m4b.iter().copied());
    }
    if y0.is_empty() {
        return Ok(DetectOutcome::NoneFound {
            reason: "no M4b neighbours: Y0 is empty".into(),
        });
    }
    // X^y: the big neighbours of each candidate y (must be exactly two)
    let mut xy: BTreeMap<Vertex, (Vertex, Vertex)> = BTreeMap::new();
    for &y in &y0 {
        let bigs: Vec<Vertex> = gr
            .neighbours(y)?
            .iter()
            .copied()
            .filter(|&u| x0.contains(&u))
            .collect();
        if bigs.len() != 2 {
            return Ok(DetectOutcome::NoneFound {
                reason: format!("candidate {y} has {} big neighbours, not 2", bigs.len()),
            });
        }
        xy.insert(y, (bigs[0], bigs[1]));
    }
    let mut x = x0;
    let mut y = y0;
    loop {
        if x.is_empty() || y.is_empty() {
            return Ok(DetectOutcome::NoneFound {
                reason: "refinement emptied X or Y (zeta below the structural threshold)".into(),
            });
        }
        match find_violating_subset(g, &x, &y, &xy, zeta) {
            None => {
                // keep only the X-vertices that still have a Y-neighbour
                let mut xk: BTreeSet<Vertex> = BTreeSet::new();
                for &yy in &y {
                    let (a, b) = xy[&yy];
                    xk.insert(a);
                    xk.insert(b);
                }
                // trimming could in principle perturb condition (iii);
                // re-check to stay honest
                if xk.len() != x.len() && find_violating_subset(g, &xk, &y, &xy, zeta).is_some() {
                    return Ok(DetectOutcome::NoneFound {
                        reason: "trimming X to Y-adjacent vertices broke condition (iii)".into(),
                    });
                }
                let xy_final: BTreeMap<Vertex, (Vertex, Vertex)> =
                    y.iter().map(|&v| (v, xy[&v])).collect();
                return Ok(DetectOutcome::Witness(StructureWitness::S3 {
                    zeta,
                    x: xk,
                    y,
                    xy: xy_final,
                }));
            }
            Some(z) => {
                x = x.difference(&z).copied().collect();
                y = y_for(&x, &y, &xy);
            }
        }
    }
}

/// How condition (iii) was checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub valid: bool,
    pub mode: CheckMode,
    pub violations: Vec<String>,
}

/// Check a witness against its defining clauses. For S3, clause (iii) is
/// exhaustive when |X| ≤ 20, randomized subset sampling (labelled) above.
pub fn validate_witness(g: &EmbeddedGraph, w: &StructureWitness) -> Result<ValidationReport> {
    let gr = g.graph();
    let mut violations = Vec::new();
    let mut mode = CheckMode::Exhaustive;
    match w {
        StructureWitness::S1 { zeta } => {
            for v in gr.vertices() {
                if gr.degree(v) as i64 > *zeta {
                    violations.push(format!("S1: vertex {v} has degree {}", gr.degree(v)));
                }
            }
        }
        StructureWitness::S2 {
            zeta,
            v,
            big_neighbour,
        } => {
            if gr.degree(*v) > 5 {
                violations.push(format!("S2: vertex {v} has degree {} > 5", gr.degree(*v)));
            }
            let bigs: Vec<Vertex> = gr
                .neighbours(*v)?
                .iter()
                .copied()
                .filter(|&u| is_big(g, u, *zeta))
                .collect();
            if bigs.len() > 1 {
                violations.push(format!("S2: vertex {v} has {} big neighbours", bigs.len()));
            }
            if bigs.first().copied() != *big_neighbour {
                violations.push("S2: recorded big neighbour does not match".to_string());
            }
        }
        StructureWitness::S3 { zeta, x, y, xy } => {
            if x.is_empty() || y.is_empty() || !x.is_disjoint(y) {
                violations.push("S3: X and Y must be non-empty and disjoint".to_string());
            }
            // (i)
            for &v in x {
                if (gr.degree(v) as i64) < zeta + 1 {
                    violations.push(format!("S3(i): X-vertex {v} has degree {}", gr.degree(v)));
                }
            }
            for &v in y {
                if gr.degree(v) != 4 {
                    violations.push(format!("S3(i): Y-vertex {v} has degree {}", gr.degree(v)));
                    continue;
                }
                let in_x: BTreeSet<Vertex> = gr
                    .neighbours(v)?
                    .iter()
                    .copied()
                    .filter(|u| x.contains(u))
                    .collect();
                if in_x.len() != 2 {
                    violations.push(format!(
                        "S3(i): Y-vertex {v} has {} X-neighbours",
                        in_x.len()
                    ));
                }
                match xy.get(&v) {
                    Some(&(a, b)) => {
                        if BTreeSet::from([a, b]) != in_x {
                            violations.push(format!("S3(i): X^y map wrong at {v}"));
                        }
                    }
                    None => violations.push(format!("S3(i): X^y map missing {v}")),
                }
                for &u in gr.neighbours(v)?.iter().filter(|u| !x.contains(u)) {
                    if gr.degree(u) != 4 {
                        violations.push(format!(
                            "S3(i): non-X neighbour {u} of {v} has degree {}",
                            gr.degree(u)
                        ));
                    }
                }
            }
            // (ii)
            let ys: Vec<Vertex> = y.iter().copied().collect();
            for (i, &a) in ys.iter().enumerate() {
                for &b in &ys[i + 1..] {
                    let adjacent = gr.has_edge(a, b);
                    let common_outside = gr
                        .neighbours(a)?
                        .intersection(gr.neighbours(b)?)
                        .any(|u| !x.contains(u));
                    if adjacent || common_outside {
                        let xa: Option<BTreeSet<Vertex>> =
                            xy.get(&a).map(|&(p, q)| BTreeSet::from([p, q]));
                        let xb: Option<BTreeSet<Vertex>> =
                            xy.get(&b).map(|&(p, q)| BTreeSet::from([p, q]));
                        if xa != xb {
                            violations.push(format!("S3(ii): X^{a} != X^{b}"));
                        }
                    }
                }
            }
            // (iii)
            let xs: Vec<Vertex> = x.iter().copied().collect();
            if xs.len() <= 20 {
                for mask in 1u32..(1u32 << xs.len()) {
                    let z: BTreeSet<Vertex> = xs
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| mask & (1 << i) != 0)
                        .map(|(_, &v)| v)
                        .collect();
                    let m = violation_margin(g, &z, y, xy, *zeta);
                    if m > 0 {
                        violations.push(format!(
                            "S3(iii): W = {z:?} violates the density inequality by {m}"
                        ));
                    }
                }
            } else {
                mode = CheckMode::Sampled;
                let mut rng = substream(0x5333_6969, &[xs.len() as u64]);
                for _ in 0..20_000 {
                    let z: BTreeSet<Vertex> = xs
                        .iter()
                        .copied()
                        .filter(|_| rng.gen_bool(0.5))
                        .collect();
                    if z.is_empty() {
                        continue;
                    }
                    let m = violation_margin(g, &z, y, xy, *zeta);
                    if m > 0 {
                        violations.push(format!(
                            "S3(iii): sampled W = {z:?} violates the density inequality by {m}"
                        ));
                        break;
                    }
                }
            }
        }
    }
    Ok(ValidationReport {
        valid: violations.is_empty(),
        mode,
        violations,
    })
}
