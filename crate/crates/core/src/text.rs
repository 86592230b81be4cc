//! Plain-text diagram format.
//!
//! ```text
//! # theta
//! deg 1 circles 0
//! t0: e0 e1 e2
//! t1: e0 e1 e2
//! e0: t0.0 t1.0
//! e1: t0.1 t1.1
//! e2: t0.2 t1.2
//! ```
//!
//! Circle lines read `c<j>: l<leg> l<leg> ...` in the circle's cyclic order.
//! A file may hold several diagrams; each starts at a `deg` line.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use crate::diagram::{Diagram, DiagramBuilder, Endpoint};
use crate::error::{Error, Result};

/// A diagram as written in a file, before validation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RawDiagram {
    pub degree: Option<usize>,
    pub circles: usize,
    /// `(vertex, edge ids in cyclic order)`
    pub vertices: Vec<(usize, Vec<String>)>,
    /// `(circle, legs in cyclic order)`
    pub circle_legs: Vec<(usize, Vec<usize>)>,
    /// `(edge id, endpoint, endpoint)`
    pub edges: Vec<(String, Endpoint, Endpoint)>,
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_index(s: &str, prefix: char) -> Option<usize> {
    s.strip_prefix(prefix).unwrap_or(s).parse().ok()
}

fn edge_name(s: &str) -> String {
    s.strip_prefix('e').unwrap_or(s).to_string()
}

fn parse_endpoint(s: &str) -> Option<Endpoint> {
    if let Some(rest) = s.strip_prefix('t') {
        let (v, slot) = rest.split_once('.')?;
        Some(Endpoint::Slot(v.parse().ok()?, slot.parse().ok()?))
    } else {
        parse_index(s, 'l').map(Endpoint::Leg)
    }
}

/// Split text into raw diagram blocks.
pub fn parse_raw(text: &str) -> Result<Vec<RawDiagram>> {
    let mut out: Vec<RawDiagram> = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let ln = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        if words[0] == "deg" {
            match words.as_slice() {
                ["deg", k, "circles", m] => {
                    let k = k.parse().map_err(|_| parse_err(ln, format!("bad degree {k:?}")))?;
                    let m = m.parse().map_err(|_| parse_err(ln, format!("bad circle count {m:?}")))?;
                    out.push(RawDiagram { degree: Some(k), circles: m, ..Default::default() });
                }
                _ => return Err(parse_err(ln, "expected `deg <k> circles <m>`")),
            }
            continue;
        }
        let raw = out.last_mut().ok_or_else(|| parse_err(ln, "diagram must start with a `deg` line"))?;
        let (head, rest) = line.split_once(':').ok_or_else(|| parse_err(ln, "expected `<name>: ...`"))?;
        let head = head.trim();
        let items: Vec<&str> = rest.split_whitespace().collect();
        let kind = head.chars().next().unwrap_or(' ');
        let idx = &head[kind.len_utf8()..];
        match kind {
            't' => {
                let v = idx.parse().map_err(|_| parse_err(ln, format!("bad vertex name {head:?}")))?;
                raw.vertices.push((v, items.iter().map(|s| edge_name(s)).collect()));
            }
            'c' => {
                let c: usize = idx.parse().map_err(|_| parse_err(ln, format!("bad circle name {head:?}")))?;
                if c >= raw.circles {
                    return Err(parse_err(ln, format!("circle c{c} but only {} declared", raw.circles)));
                }
                let legs = items
                    .iter()
                    .map(|s| parse_index(s, 'l').ok_or_else(|| parse_err(ln, format!("bad leg {s:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                raw.circle_legs.push((c, legs));
            }
            'e' => {
                if items.len() != 2 {
                    return Err(parse_err(ln, "an edge has exactly two endpoints"));
                }
                let a = parse_endpoint(items[0]).ok_or_else(|| parse_err(ln, format!("bad endpoint {:?}", items[0])))?;
                let b = parse_endpoint(items[1]).ok_or_else(|| parse_err(ln, format!("bad endpoint {:?}", items[1])))?;
                raw.edges.push((idx.to_string(), a, b));
            }
            _ => return Err(parse_err(ln, format!("unknown line kind {head:?}"))),
        }
    }
    Ok(out)
}

/// Validate a raw description and build the diagram.
pub fn make_diagram(raw: &RawDiagram) -> Result<Diagram> {
    let mut nv = 0;
    let mut nl = 0;
    for (v, _) in &raw.vertices {
        nv = nv.max(v + 1);
    }
    for (_, a, b) in &raw.edges {
        for e in [a, b] {
            match *e {
                Endpoint::Slot(v, _) => nv = nv.max(v + 1),
                Endpoint::Leg(l) => nl = nl.max(l + 1),
            }
        }
    }
    for (_, legs) in &raw.circle_legs {
        for &l in legs {
            nl = nl.max(l + 1);
        }
    }

    let mut edge_ids = BTreeSet::new();
    let mut slot_edge: BTreeMap<(usize, usize), &str> = BTreeMap::new();
    for (id, a, b) in &raw.edges {
        if !edge_ids.insert(id.as_str()) {
            return Err(Error::DanglingSlot { what: format!("edge e{id} defined twice") });
        }
        for e in [a, b] {
            if let Endpoint::Slot(v, s) = *e {
                slot_edge.insert((v, s), id);
            }
        }
    }
    let mut seen_vertices = BTreeSet::new();
    for (v, slots) in &raw.vertices {
        if !seen_vertices.insert(*v) {
            return Err(Error::DanglingSlot { what: format!("vertex t{v} listed twice") });
        }
        if slots.len() != 3 {
            return Err(Error::NonTrivalentVertex { vertex: *v, filled: slots.len() });
        }
        for (s, e) in slots.iter().enumerate() {
            if !edge_ids.contains(e.as_str()) {
                return Err(Error::DanglingSlot { what: format!("t{v} lists undefined edge e{e}") });
            }
            if slot_edge.get(&(*v, s)).copied() != Some(e.as_str()) {
                return Err(Error::DanglingSlot { what: format!("t{v}.{s} lists e{e} but no such edge end") });
            }
        }
    }

    let mut b = DiagramBuilder::new();
    b.add_vertices(nv);
    for _ in 0..raw.circles {
        b.add_circle();
    }
    for _ in 0..nl {
        b.add_free_leg();
    }
    let mut placed = vec![false; nl];
    let mut circle_lines = raw.circle_legs.clone();
    circle_lines.sort_by_key(|(c, _)| *c);
    for w in circle_lines.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::DanglingSlot { what: format!("circle c{} listed twice", w[0].0) });
        }
    }
    for (c, legs) in &circle_lines {
        for &l in legs {
            if std::mem::replace(&mut placed[l], true) {
                return Err(Error::DanglingSlot { what: format!("leg l{l} placed twice") });
            }
            b.place_leg(l, *c);
        }
    }
    for (_, a, e) in &raw.edges {
        b.connect(*a, *e);
    }
    let d = b.build()?;
    if let Some(k) = raw.degree {
        if (nv + nl) % 2 != 0 || k != d.degree() {
            return Err(Error::DegreeDeclaration { declared: k, computed: d.degree() });
        }
    }
    Ok(d)
}

/// Parse every diagram in `text`.
pub fn parse_diagrams(text: &str) -> Result<Vec<Diagram>> {
    parse_raw(text)?.iter().map(make_diagram).collect()
}

/// Parse text holding exactly one diagram.
pub fn parse_diagram(text: &str) -> Result<Diagram> {
    let mut all = parse_diagrams(text)?;
    match all.len() {
        1 => Ok(all.pop().unwrap()),
        n => Err(parse_err(0, format!("expected one diagram, found {n}"))),
    }
}

pub fn format_diagram(d: &Diagram) -> String {
    let mut s = String::new();
    let edges = d.edges();
    let mut edge_of = vec![0; d.num_darts()];
    for (i, &(a, b)) in edges.iter().enumerate() {
        edge_of[a] = i;
        edge_of[b] = i;
    }
    writeln!(s, "deg {} circles {}", d.degree(), d.num_circles()).unwrap();
    for v in 0..d.num_vertices() {
        let e: Vec<String> = (0..3).map(|k| format!("e{}", edge_of[3 * v + k])).collect();
        writeln!(s, "t{v}: {}", e.join(" ")).unwrap();
    }
    for (c, legs) in d.circles().iter().enumerate() {
        let l: Vec<String> = legs.iter().map(|l| format!("l{l}")).collect();
        if l.is_empty() {
            writeln!(s, "c{c}:").unwrap();
        } else {
            writeln!(s, "c{c}: {}", l.join(" ")).unwrap();
        }
    }
    for (i, &(a, b)) in edges.iter().enumerate() {
        writeln!(s, "e{i}: {} {}", d.endpoint(a), d.endpoint(b)).unwrap();
    }
    s
}

pub fn format_diagrams<'a>(ds: impl IntoIterator<Item = &'a Diagram>) -> String {
    ds.into_iter().map(format_diagram).collect::<Vec<_>>().join("\n")
}
