//! Line-oriented text formats. Plain text in, text out; `#` starts a
//! comment; parse → serialize → parse is the identity.
//!
//! Record kinds:
//!   `surface_chi <int> cellular <0|1>`   embedded-graph header
//!   `rot <v>: <u1> <u2> ...`             circular neighbour order at v
//!   `edge <u> <v> [id]`                  (multi)graph edge
//!   `vertex <v>`                         isolated vertex
//!   `sigma <v>: <u1> ...`                Σ-system entry (set form)
//!   `sigma <v>: <int>`                   matching-instance σ(v) (scalar form)
//!   `list <v>: <c1> <c2> ...`            colour list (vertex or edge id)
//!   `lam <edge-id> <real>` / `x <edge-id> <rational>`  activity / marginal
//!   `col <id> <colour>`                  colouring line

use crate::error::{Error, Result};
use crate::graph::{EmbeddedGraph, Multigraph, SimpleGraph};
use crate::scalar::{parse_scalar, Scalar};
use crate::sigma::SigmaSystem;
use crate::{Colour, EdgeId, Vertex};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line: line + 1,
        msg: msg.into(),
    }
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            None
        } else {
            Some((i, line))
        }
    })
}

fn parse_u32(tok: &str, line: usize, what: &str) -> Result<u32> {
    tok.parse()
        .map_err(|_| err(line, format!("bad {what} `{tok}`")))
}

// ---------------------------------------------------------------- embedded

pub fn parse_embedded(text: &str) -> Result<EmbeddedGraph> {
    let mut chi: Option<(i64, bool)> = None;
    let mut rotation: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for (i, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("surface_chi") => {
                let c: i64 = toks
                    .next()
                    .and_then(|t| t.parse().ok())
                    .ok_or_else(|| err(i, "surface_chi needs an integer"))?;
                match (toks.next(), toks.next()) {
                    (Some("cellular"), Some(flag)) => {
                        let cellular = match flag {
                            "0" => false,
                            "1" => true,
                            _ => return Err(err(i, "cellular flag must be 0 or 1")),
                        };
                        chi = Some((c, cellular));
                    }
                    _ => return Err(err(i, "expected `surface_chi <int> cellular <0|1>`")),
                }
            }
            Some("rot") => {
                let (v, rest) = split_keyed(line, "rot", i)?;
                let nbrs = rest
                    .split_whitespace()
                    .map(|t| parse_u32(t, i, "vertex id"))
                    .collect::<Result<Vec<_>>>()?;
                if rotation.insert(v, nbrs).is_some() {
                    return Err(err(i, format!("duplicate rot line for vertex {v}")));
                }
            }
            Some(other) => return Err(err(i, format!("unexpected record `{other}`"))),
            None => {}
        }
    }
    let (chi, declared_cellular) =
        chi.ok_or_else(|| err(0, "missing surface_chi header"))?;
    let mut graph = SimpleGraph::new();
    for (&v, nbrs) in &rotation {
        graph.add_vertex(v);
        for &u in nbrs {
            if !rotation.get(&u).is_some_and(|r| r.contains(&v)) {
                return Err(Error::structure(format!(
                    "rotation lists {u} at {v} but not {v} at {u}"
                )));
            }
            graph.add_edge(v, u)?;
        }
    }
    let g = EmbeddedGraph::new(graph, rotation, chi)?;
    if g.is_cellular() != declared_cellular {
        return Err(Error::validation(format!(
            "declared cellular={} but face trace says cellular={}",
            declared_cellular as u8,
            g.is_cellular() as u8
        )));
    }
    Ok(g)
}

pub fn write_embedded(g: &EmbeddedGraph) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "surface_chi {} cellular {}",
        g.surface_chi(),
        g.is_cellular() as u8
    );
    for (v, rot) in g.rotations() {
        let _ = write!(out, "rot {v}:");
        for u in rot {
            let _ = write!(out, " {u}");
        }
        let _ = writeln!(out);
    }
    out
}

/// Split `key <v>: rest` into (v, rest).
fn split_keyed<'a>(line: &'a str, key: &str, i: usize) -> Result<(u32, &'a str)> {
    let body = line[key.len()..].trim_start();
    let (head, rest) = body
        .split_once(':')
        .ok_or_else(|| err(i, format!("`{key}` line needs a `:`")))?;
    Ok((parse_u32(head.trim(), i, "id")?, rest))
}

// ------------------------------------------------------------ simple/multi

pub fn parse_simple_graph(text: &str) -> Result<SimpleGraph> {
    let mut g = SimpleGraph::new();
    for (i, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("edge") => {
                let u = parse_u32(toks.next().ok_or_else(|| err(i, "edge needs u"))?, i, "u")?;
                let v = parse_u32(toks.next().ok_or_else(|| err(i, "edge needs v"))?, i, "v")?;
                g.add_edge(u, v)?;
            }
            Some("vertex") => {
                let v = parse_u32(toks.next().ok_or_else(|| err(i, "vertex needs id"))?, i, "v")?;
                g.add_vertex(v);
            }
            _ => {} // other records may share the file
        }
    }
    Ok(g)
}

pub fn write_simple_graph(g: &SimpleGraph) -> String {
    let mut out = String::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 0) {
        let _ = writeln!(out, "vertex {v}");
    }
    for (u, v) in g.edges() {
        let _ = writeln!(out, "edge {u} {v}");
    }
    out
}

pub fn parse_multigraph(text: &str) -> Result<Multigraph> {
    let mut g = Multigraph::new();
    for (i, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        match toks.next() {
            Some("edge") => {
                let u = parse_u32(toks.next().ok_or_else(|| err(i, "edge needs u"))?, i, "u")?;
                let v = parse_u32(toks.next().ok_or_else(|| err(i, "edge needs v"))?, i, "v")?;
                let id = match toks.next() {
                    Some(t) => parse_u32(t, i, "edge id")?,
                    None => g.next_edge_id(),
                };
                g.add_edge(u, v, id)?;
            }
            Some("vertex") => {
                let v = parse_u32(toks.next().ok_or_else(|| err(i, "vertex needs id"))?, i, "v")?;
                g.add_vertex(v);
            }
            _ => {}
        }
    }
    Ok(g)
}

pub fn write_multigraph(g: &Multigraph) -> String {
    let mut out = String::new();
    let touched: BTreeSet<Vertex> = g.edges().flat_map(|(_, u, v)| [u, v]).collect();
    for v in g.vertices().filter(|v| !touched.contains(v)) {
        let _ = writeln!(out, "vertex {v}");
    }
    for (id, u, v) in g.edges() {
        let _ = writeln!(out, "edge {u} {v} {id}");
    }
    out
}

// ------------------------------------------------------------------ sigma

pub fn parse_sigma(text: &str) -> Result<SigmaSystem> {
    let mut s = SigmaSystem::empty();
    for (i, line) in content_lines(text) {
        if !line.starts_with("sigma") {
            continue;
        }
        let (v, rest) = split_keyed(line, "sigma", i)?;
        let members = rest
            .split_whitespace()
            .map(|t| parse_u32(t, i, "vertex id"))
            .collect::<Result<BTreeSet<_>>>()?;
        s.set(v, members);
    }
    Ok(s)
}

pub fn write_sigma(s: &SigmaSystem) -> String {
    let mut out = String::new();
    for (v, set) in s.entries() {
        let _ = write!(out, "sigma {v}:");
        for u in set {
            let _ = write!(out, " {u}");
        }
        let _ = writeln!(out);
    }
    out
}

// ------------------------------------------------------------------ lists

pub fn parse_lists(text: &str) -> Result<BTreeMap<u32, BTreeSet<Colour>>> {
    let mut lists = BTreeMap::new();
    for (i, line) in content_lines(text) {
        if !line.starts_with("list") {
            continue;
        }
        let (v, rest) = split_keyed(line, "list", i)?;
        let cols = rest
            .split_whitespace()
            .map(|t| parse_u32(t, i, "colour"))
            .collect::<Result<BTreeSet<_>>>()?;
        lists.insert(v, cols);
    }
    Ok(lists)
}

pub fn write_lists(lists: &BTreeMap<u32, BTreeSet<Colour>>) -> String {
    let mut out = String::new();
    for (v, cols) in lists {
        let _ = write!(out, "list {v}:");
        for c in cols {
            let _ = write!(out, " {c}");
        }
        let _ = writeln!(out);
    }
    out
}

// -------------------------------------------------------- scalar vectors

/// Parse `"<tag> <id> <value>"` lines into an id-indexed map.
pub fn parse_vector<S: Scalar>(text: &str, tag: &str) -> Result<BTreeMap<EdgeId, S>> {
    let mut out = BTreeMap::new();
    for (i, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        if toks.next() != Some(tag) {
            continue;
        }
        let id = parse_u32(toks.next().ok_or_else(|| err(i, "missing id"))?, i, "id")?;
        let val = toks
            .next()
            .and_then(parse_scalar::<S>)
            .ok_or_else(|| err(i, "bad scalar value"))?;
        out.insert(id, val);
    }
    Ok(out)
}

pub fn write_vector<S: Scalar>(vec: &BTreeMap<EdgeId, S>, tag: &str) -> String {
    let mut out = String::new();
    for (id, v) in vec {
        let _ = writeln!(out, "{tag} {id} {v}");
    }
    out
}

// -------------------------------------------------------------- sigma ints

/// The scalar `sigma <v>: <int>` form used by matching instances.
pub fn parse_sigma_ints(text: &str) -> Result<BTreeMap<Vertex, usize>> {
    let mut out = BTreeMap::new();
    for (i, line) in content_lines(text) {
        if !line.starts_with("sigma") {
            continue;
        }
        let (v, rest) = split_keyed(line, "sigma", i)?;
        let n: usize = rest
            .trim()
            .parse()
            .map_err(|_| err(i, "sigma scalar form needs one integer"))?;
        out.insert(v, n);
    }
    Ok(out)
}

// ------------------------------------------------------ matching instances

/// Serialize a matching instance: multigraph lines, one `list` line per
/// edge, `sigma <x>: <int>` lines. The provenance map rides along as
/// comments.
pub fn write_matching_instance(mi: &crate::reduction::MatchingInstance) -> String {
    let mut out = String::new();
    out.push_str(&write_multigraph(&mi.h));
    for (id, cols) in &mi.lists {
        let _ = write!(out, "list {id}:");
        for c in cols {
            let _ = write!(out, " {c}");
        }
        let _ = writeln!(out);
    }
    for (v, n) in &mi.sigma {
        let _ = writeln!(out, "sigma {v}: {n}");
    }
    for (id, y) in &mi.origin {
        let _ = writeln!(out, "# origin {id} -> {y}");
    }
    out
}

/// The (multigraph, edge lists, sigma integers) triple of a matching
/// instance file.
pub type MatchingInstanceParts = (
    Multigraph,
    BTreeMap<EdgeId, BTreeSet<Colour>>,
    BTreeMap<Vertex, usize>,
);

pub fn parse_matching_instance(text: &str) -> Result<MatchingInstanceParts> {
    Ok((
        parse_multigraph(text)?,
        parse_lists(text)?,
        parse_sigma_ints(text)?,
    ))
}

// -------------------------------------------------------------- colourings

pub fn parse_colouring(text: &str) -> Result<BTreeMap<u32, Colour>> {
    let mut out = BTreeMap::new();
    for (i, line) in content_lines(text) {
        let mut toks = line.split_whitespace();
        if toks.next() != Some("col") {
            continue;
        }
        let id = parse_u32(toks.next().ok_or_else(|| err(i, "col needs id"))?, i, "id")?;
        let c = parse_u32(toks.next().ok_or_else(|| err(i, "col needs colour"))?, i, "colour")?;
        out.insert(id, c);
    }
    Ok(out)
}

pub fn write_colouring(col: &BTreeMap<u32, Colour>) -> String {
    let mut out = String::new();
    for (id, c) in col {
        let _ = writeln!(out, "col {id} {c}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sigma;

    #[test]
    fn embedded_round_trip_is_identity() {
        for e in [sigma::wegner(3).unwrap(), sigma::borodin(4).unwrap()] {
            let text = write_embedded(&e);
            let back = parse_embedded(&text).unwrap();
            assert_eq!(&back, &e);
            assert_eq!(write_embedded(&back), text);
        }
    }

    #[test]
    fn generator_instance_files_reparse_to_equal_objects() {
        let (g, s) = sigma::subdivided_complete(5).unwrap();
        let text = format!("{}{}", write_simple_graph(&g), write_sigma(&s));
        assert_eq!(parse_simple_graph(&text).unwrap(), g);
        assert_eq!(parse_sigma(&text).unwrap(), s);
    }

    #[test]
    fn dishonest_cellular_flag_rejected() {
        let e = sigma::borodin(2).unwrap();
        let text = write_embedded(&e).replace("cellular 1", "cellular 0");
        assert!(parse_embedded(&text).is_err());
    }

    #[test]
    fn multigraph_round_trip() {
        let g = Multigraph::shannon_triangle(2);
        let text = write_multigraph(&g);
        assert_eq!(parse_multigraph(&text).unwrap(), g);
    }

    #[test]
    fn sigma_round_trip_and_comments() {
        let (_, s) = sigma::subdivided_complete(4).unwrap();
        let mut text = String::from("# a comment\n\n");
        text.push_str(&write_sigma(&s));
        assert_eq!(parse_sigma(&text).unwrap(), s);
    }

    #[test]
    fn vector_round_trip_rational() {
        let v: BTreeMap<EdgeId, crate::Rational> =
            [(0, crate::rat(1, 3)), (2, crate::rat(5, 1))].into();
        let text = write_vector(&v, "x");
        assert_eq!(parse_vector::<crate::Rational>(&text, "x").unwrap(), v);
    }

    #[test]
    fn matching_instance_round_trip() {
        let e = crate::catalogue::double_wheel(3);
        let s = crate::catalogue::double_wheel_sigma(&e);
        let w = crate::discharge::detect_structure(&e, 5)
            .unwrap()
            .witness()
            .unwrap()
            .clone();
        let partial = BTreeMap::from([(6u32, 0u32), (7u32, 1u32)]);
        let lists =
            crate::colouring::ListAssignment::uniform(e.graph(), 10);
        let mi =
            crate::reduction::build_matching_instance(&e, &s, &w, &partial, &lists, 5).unwrap();
        let text = write_matching_instance(&mi);
        let (h, l, sig) = parse_matching_instance(&text).unwrap();
        assert_eq!(h, mi.h);
        assert_eq!(l, mi.lists);
        assert_eq!(sig, mi.sigma);
    }

    #[test]
    fn parse_error_carries_line() {
        let bad = "edge 0 zzz";
        match parse_simple_graph(bad) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 1),
            other => panic!("expected parse error, got {other:?}"),
        }
    }
}
