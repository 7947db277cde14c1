//! Drawings of bipartite graphs on a glued rectangle, with a line-oriented text format.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::geometry::{format_rational, parse_rational, Point, Segment};
use crate::surface::{Surface, SurfaceKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Part {
    A,
    B,
}

/// A vertex `a<k>` or `b<k>` of the bipartite graph. Ordered A before B, then by index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId {
    pub part: Part,
    pub index: u32,
}

impl VertexId {
    pub fn a(index: u32) -> Self {
        VertexId {
            part: Part::A,
            index,
        }
    }

    pub fn b(index: u32) -> Self {
        VertexId {
            part: Part::B,
            index,
        }
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = match self.part {
            Part::A => 'a',
            Part::B => 'b',
        };
        write!(f, "{}{}", p, self.index)
    }
}

impl FromStr for VertexId {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, ()> {
        let part = match s.as_bytes().first() {
            Some(b'a') => Part::A,
            Some(b'b') => Part::B,
            _ => return Err(()),
        };
        let digits = &s[1..];
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(());
        }
        match digits.parse::<u32>() {
            Ok(index) if index > 0 => Ok(VertexId { part, index }),
            _ => Err(()),
        }
    }
}

/// An edge from an A-vertex to a B-vertex, drawn as polyline arcs joined across glued sides.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeCurve {
    pub a: VertexId,
    pub b: VertexId,
    pub arcs: Vec<Vec<Point>>,
}

/// One straight piece of an edge curve, indexed in curve order.
#[derive(Clone, Debug)]
pub struct CurveSegment {
    pub index: usize,
    pub arc: usize,
    pub first_in_arc: bool,
    pub last_in_arc: bool,
    pub p: Point,
    pub q: Point,
}

impl CurveSegment {
    /// The geometric segment, or `None` for a zero-length piece.
    pub fn segment(&self) -> Option<Segment> {
        Segment::new(self.p.clone(), self.q.clone())
    }
}

impl EdgeCurve {
    pub fn start(&self) -> &Point {
        &self.arcs[0][0]
    }

    pub fn end(&self) -> &Point {
        self.arcs.last().and_then(|a| a.last()).expect("nonempty arcs")
    }

    /// Number of side crossings along the curve.
    pub fn transits(&self) -> usize {
        self.arcs.len() - 1
    }

    pub fn segments(&self) -> Vec<CurveSegment> {
        let mut out = Vec::new();
        for (t, arc) in self.arcs.iter().enumerate() {
            let n = arc.len().saturating_sub(1);
            for k in 0..n {
                out.push(CurveSegment {
                    index: out.len(),
                    arc: t,
                    first_in_arc: k == 0,
                    last_in_arc: k + 1 == n,
                    p: arc[k].clone(),
                    q: arc[k + 1].clone(),
                });
            }
        }
        out
    }

    pub fn label(&self) -> String {
        format!("{}-{}", self.a, self.b)
    }
}

/// A drawing: a surface, canonical vertex positions, and edge curves sorted by endpoints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Drawing {
    pub surface: Surface,
    pub vertices: BTreeMap<VertexId, Point>,
    pub edges: Vec<EdgeCurve>,
}

impl Drawing {
    pub fn a_vertices(&self) -> Vec<VertexId> {
        self.vertices
            .keys()
            .copied()
            .filter(|v| v.part == Part::A)
            .collect()
    }

    pub fn b_vertices(&self) -> Vec<VertexId> {
        self.vertices
            .keys()
            .copied()
            .filter(|v| v.part == Part::B)
            .collect()
    }

    /// True when every A-vertex is joined to every B-vertex by exactly one edge.
    pub fn is_complete_bipartite(&self) -> bool {
        let mut seen = BTreeMap::new();
        for e in &self.edges {
            *seen.entry((e.a, e.b)).or_insert(0usize) += 1;
        }
        let a = self.a_vertices();
        let b = self.b_vertices();
        seen.len() == a.len() * b.len()
            && seen.values().all(|&c| c == 1)
            && a.iter()
                .all(|x| b.iter().all(|y| seen.contains_key(&(*x, *y))))
    }

    pub fn edge_index(&self, a: VertexId, b: VertexId) -> Option<usize> {
        self.edges.iter().position(|e| e.a == a && e.b == b)
    }

    /// Sorts edges by `(A-index, B-index)`; the sort is stable for repeated pairs.
    pub fn sort_edges(&mut self) {
        self.edges.sort_by_key(|e| (e.a, e.b));
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown surface kind `{0}`")]
    UnknownSurface(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("malformed rational `{0}`")]
    MalformedRational(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("vertex name `{0}` does not match its part")]
    PartMismatch(String),
    #[error("point {0} lies outside the rectangle")]
    OutsideRectangle(String),
    #[error("edge endpoint {point} is not a representative of {vertex}")]
    EndpointMismatch { vertex: String, point: String },
    #[error("missing `{0}` declaration")]
    Missing(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn rational(tok: &str, line: usize) -> Result<crate::geometry::Q, ParseError> {
    parse_rational(tok).ok_or_else(|| err(line, ParseErrorKind::MalformedRational(tok.into())))
}

fn point(tok: &str, line: usize) -> Result<Point, ParseError> {
    let (x, y) = tok
        .split_once(',')
        .ok_or_else(|| err(line, ParseErrorKind::Syntax(format!("expected x,y but found `{tok}`"))))?;
    Ok(Point::new(rational(x, line)?, rational(y, line)?))
}

/// Parses the drawing text format. Edges are returned sorted by endpoints.
pub fn parse_drawing(text: &str) -> Result<Drawing, ParseError> {
    let mut kind = None;
    let mut rect = None;
    let mut vertices: BTreeMap<VertexId, Point> = BTreeMap::new();
    let mut raw_edges = Vec::new();

    for (ix, raw) in text.lines().enumerate() {
        let line = ix + 1;
        let body = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = body.split_whitespace().collect();
        let Some(&head) = toks.first() else { continue };
        match head {
            "surface" => {
                if toks.len() != 2 {
                    return Err(err(line, ParseErrorKind::Syntax("usage: surface klein|torus".into())));
                }
                if kind.is_some() {
                    return Err(err(line, ParseErrorKind::Syntax("repeated surface declaration".into())));
                }
                kind = Some(match toks[1] {
                    "torus" => SurfaceKind::Torus,
                    "klein" => SurfaceKind::Klein,
                    other => return Err(err(line, ParseErrorKind::UnknownSurface(other.into()))),
                });
            }
            "rect" => {
                if toks.len() != 3 {
                    return Err(err(line, ParseErrorKind::Syntax("usage: rect W H".into())));
                }
                if rect.is_some() {
                    return Err(err(line, ParseErrorKind::Syntax("repeated rect declaration".into())));
                }
                let k = kind.ok_or_else(|| err(line, ParseErrorKind::Missing("surface")))?;
                let s = Surface::new(k, rational(toks[1], line)?, rational(toks[2], line)?)
                    .map_err(|e| err(line, ParseErrorKind::Syntax(e.to_string())))?;
                rect = Some(s);
            }
            "vertex" => {
                let s = rect.as_ref().ok_or_else(|| err(line, ParseErrorKind::Missing("rect")))?;
                if toks.len() != 5 {
                    return Err(err(line, ParseErrorKind::Syntax("usage: vertex NAME A|B X Y".into())));
                }
                let id: VertexId = toks[1]
                    .parse()
                    .map_err(|_| err(line, ParseErrorKind::Syntax(format!("bad vertex name `{}`", toks[1]))))?;
                let part = match toks[2] {
                    "A" => Part::A,
                    "B" => Part::B,
                    other => return Err(err(line, ParseErrorKind::Syntax(format!("bad part `{other}`")))),
                };
                if part != id.part {
                    return Err(err(line, ParseErrorKind::PartMismatch(toks[1].into())));
                }
                let p = Point::new(rational(toks[3], line)?, rational(toks[4], line)?);
                let c = s
                    .identify(&p)
                    .map_err(|_| err(line, ParseErrorKind::OutsideRectangle(p.to_string())))?;
                if vertices.insert(id, c).is_some() {
                    return Err(err(line, ParseErrorKind::DuplicateVertex(toks[1].into())));
                }
            }
            "edge" => {
                let s = rect.as_ref().ok_or_else(|| err(line, ParseErrorKind::Missing("rect")))?;
                if toks.len() < 6 || toks[3] != ":" {
                    return Err(err(line, ParseErrorKind::Syntax("usage: edge U V : x,y x,y [| x,y ...]".into())));
                }
                let parse_id = |t: &str| {
                    t.parse::<VertexId>()
                        .map_err(|_| err(line, ParseErrorKind::Syntax(format!("bad vertex name `{t}`"))))
                };
                let u = parse_id(toks[1])?;
                let v = parse_id(toks[2])?;
                for id in [u, v] {
                    if !vertices.contains_key(&id) {
                        return Err(err(line, ParseErrorKind::UnknownVertex(id.to_string())));
                    }
                }
                if u.part == v.part {
                    return Err(err(line, ParseErrorKind::Syntax("edge must join an A-vertex to a B-vertex".into())));
                }
                let mut arcs: Vec<Vec<Point>> = vec![Vec::new()];
                for &tok in &toks[4..] {
                    if tok == "|" {
                        arcs.push(Vec::new());
                        continue;
                    }
                    let p = point(tok, line)?;
                    if !s.contains(&p) {
                        return Err(err(line, ParseErrorKind::OutsideRectangle(p.to_string())));
                    }
                    arcs.last_mut().unwrap().push(p);
                }
                if arcs.iter().any(|a| a.len() < 2) {
                    return Err(err(line, ParseErrorKind::Syntax("every arc needs at least two points".into())));
                }
                let (a, b) = if u.part == Part::A {
                    (u, v)
                } else {
                    arcs.reverse();
                    for arc in &mut arcs {
                        arc.reverse();
                    }
                    (v, u)
                };
                let curve = EdgeCurve { a, b, arcs };
                for (id, p) in [(a, curve.start()), (b, curve.end())] {
                    if s.identify(p).ok().as_ref() != vertices.get(&id) {
                        return Err(err(
                            line,
                            ParseErrorKind::EndpointMismatch {
                                vertex: id.to_string(),
                                point: p.to_string(),
                            },
                        ));
                    }
                }
                raw_edges.push(curve);
            }
            other => {
                return Err(err(line, ParseErrorKind::Syntax(format!("unknown declaration `{other}`"))));
            }
        }
    }

    let surface = rect.ok_or_else(|| {
        err(
            text.lines().count(),
            ParseErrorKind::Missing(if kind.is_none() { "surface" } else { "rect" }),
        )
    })?;
    let mut d = Drawing {
        surface,
        vertices,
        edges: raw_edges,
    };
    d.sort_edges();
    Ok(d)
}

fn fmt_point(p: &Point) -> String {
    format!("{},{}", format_rational(&p.x), format_rational(&p.y))
}

/// Canonical text form: lowest-terms rationals, vertices in id order, edges by endpoints.
pub fn serialize_drawing(d: &Drawing) -> String {
    let mut out = String::new();
    out.push_str(&format!("surface {}\n", d.surface.kind));
    out.push_str(&format!(
        "rect {} {}\n",
        format_rational(&d.surface.width),
        format_rational(&d.surface.height)
    ));
    for (id, p) in &d.vertices {
        let part = match id.part {
            Part::A => "A",
            Part::B => "B",
        };
        out.push_str(&format!(
            "vertex {} {} {} {}\n",
            id,
            part,
            format_rational(&p.x),
            format_rational(&p.y)
        ));
    }
    let mut edges: Vec<&EdgeCurve> = d.edges.iter().collect();
    edges.sort_by_key(|e| (e.a, e.b));
    for e in edges {
        let arcs: Vec<String> = e
            .arcs
            .iter()
            .map(|arc| arc.iter().map(fmt_point).collect::<Vec<_>>().join(" "))
            .collect();
        out.push_str(&format!("edge {} {} : {}\n", e.a, e.b, arcs.join(" | ")));
    }
    out
}
