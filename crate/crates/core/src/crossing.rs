//! Crossing counts, the star-crossing matrix and the forbidden five-vertex pattern.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use rayon::prelude::*;
use thiserror::Error;

use crate::drawing::{Drawing, VertexId};
use crate::geometry::{seg_intersect, Intersection, Point};
use crate::surface::SurfaceKind;
use crate::validate::{validate, Issue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrossingError {
    #[error("invalid drawing: {0} error(s), first {1}")]
    InvalidDrawing(usize, String),
    #[error("edge index out of range or equal edges")]
    BadEdges,
}

fn ensure_valid(d: &Drawing) -> Result<(), CrossingError> {
    let r = validate(d);
    match r.errors.first() {
        None => Ok(()),
        Some(i) => Err(CrossingError::InvalidDrawing(r.errors.len(), i.code.to_string())),
    }
}

/// Crossing points of two edges of a drawing assumed valid, canonical and sorted.
pub fn crossing_points(d: &Drawing, e: usize, f: usize) -> Vec<Point> {
    let s = &d.surface;
    let (ce, cf) = (&d.edges[e], &d.edges[f]);
    let mut shared = BTreeSet::new();
    for v in [ce.a, ce.b] {
        if v == cf.a || v == cf.b {
            shared.insert(d.vertices[&v].clone());
        }
    }
    let mut pts = BTreeSet::new();
    let fs: Vec<_> = cf.segments().iter().filter_map(|x| x.segment()).collect();
    for se in ce.segments().iter().filter_map(|x| x.segment()) {
        for sf in &fs {
            if let Intersection::Point(m) = seg_intersect(&se, sf) {
                let c = s.identify(&m).expect("points lie in the rectangle");
                if !shared.contains(&c) {
                    pts.insert(c);
                }
            }
        }
    }
    pts.into_iter().collect()
}

/// Number and canonical positions of the crossings between edges `e` and `f`.
pub fn edge_crossings(d: &Drawing, e: usize, f: usize) -> Result<(usize, Vec<Point>), CrossingError> {
    if e == f || e >= d.edges.len() || f >= d.edges.len() {
        return Err(CrossingError::BadEdges);
    }
    ensure_valid(d)?;
    let pts = crossing_points(d, e, f);
    Ok((pts.len(), pts))
}

/// Crossing counts for every unordered edge pair `(e, f)`, `e < f`, of a valid drawing.
pub fn crossing_inventory(d: &Drawing) -> BTreeMap<(usize, usize), usize> {
    let pairs: Vec<(usize, usize)> = (0..d.edges.len())
        .flat_map(|e| (e + 1..d.edges.len()).map(move |f| (e, f)))
        .collect();
    let counts: Vec<usize> = pairs
        .par_iter()
        .map(|&(e, f)| crossing_points(d, e, f).len())
        .collect();
    pairs.into_iter().zip(counts).collect()
}

/// Symmetric matrix over the A-part of a drawing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingMatrix {
    pub labels: Vec<VertexId>,
    pub entries: Vec<Vec<u64>>,
}

impl CrossingMatrix {
    pub fn from_entries(entries: Vec<Vec<u64>>) -> Self {
        let labels = (1..=entries.len() as u32).map(VertexId::a).collect();
        CrossingMatrix { labels, entries }
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.size();
        (0..n).all(|i| (0..n).all(|j| self.entries[i][j] == self.entries[j][i]))
    }

    /// Rows labelled by vertex, right-aligned columns.
    pub fn render(&self) -> String {
        let width = self
            .entries
            .iter()
            .flatten()
            .map(|v| v.to_string().len())
            .chain(self.labels.iter().map(|l| l.to_string().len()))
            .max()
            .unwrap_or(1);
        let mut out = String::new();
        let _ = write!(out, "{:>w$}", "", w = width);
        for l in &self.labels {
            let _ = write!(out, " {:>w$}", l.to_string(), w = width);
        }
        out.push('\n');
        for (l, row) in self.labels.iter().zip(&self.entries) {
            let _ = write!(out, "{:>w$}", l.to_string(), w = width);
            for v in row {
                let _ = write!(out, " {:>w$}", v, w = width);
            }
            out.push('\n');
        }
        out
    }
}

/// The star-crossing matrix of a valid drawing, from a precomputed inventory.
///
/// Off the diagonal, entry `(i, j)` sums the crossings between edges at `a_i` and edges at
/// `a_j`. On the diagonal, entry `(i, i)` sums the crossings between distinct edges at `a_i`.
pub fn matrix_from_inventory(d: &Drawing, inv: &BTreeMap<(usize, usize), usize>) -> CrossingMatrix {
    let labels = d.a_vertices();
    let pos: BTreeMap<VertexId, usize> = labels.iter().enumerate().map(|(i, v)| (*v, i)).collect();
    let n = labels.len();
    let mut entries = vec![vec![0u64; n]; n];
    for (&(e, f), &c) in inv {
        let i = pos[&d.edges[e].a];
        let j = pos[&d.edges[f].a];
        if i == j {
            entries[i][i] += c as u64;
        } else {
            entries[i][j] += c as u64;
            entries[j][i] += c as u64;
        }
    }
    CrossingMatrix { labels, entries }
}

pub fn star_crossing_matrix(d: &Drawing) -> Result<CrossingMatrix, CrossingError> {
    ensure_valid(d)?;
    Ok(matrix_from_inventory(d, &crossing_inventory(d)))
}

/// An unordered occurrence of the forbidden pattern, as matrix indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PatternMatch {
    pub pair: [usize; 2],
    pub triple: [usize; 3],
}

impl PatternMatch {
    pub fn describe(&self, labels: &[VertexId]) -> String {
        let name = |ix: &[usize]| {
            ix.iter()
                .map(|&i| labels[i].to_string())
                .collect::<Vec<_>>()
                .join(",")
        };
        format!("pair {{{}}} triple {{{}}}", name(&self.pair), name(&self.triple))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSearch {
    pub matches: Vec<PatternMatch>,
    pub notice: Option<String>,
}

/// Tests the pattern for the ordered roles `(i1, i2, i3, i4, i5)`.
pub fn pattern_holds(m: &CrossingMatrix, ix: [usize; 5]) -> bool {
    let e = &m.entries;
    for &i in &ix {
        if e[i][i] != 0 {
            return false;
        }
    }
    for &p in &ix[..2] {
        for &x in &ix {
            if e[p][x] != 0 || e[x][p] != 0 {
                return false;
            }
        }
    }
    for &x in &ix[2..] {
        for &y in &ix[2..] {
            if x != y && e[x][y] != 1 {
                return false;
            }
        }
    }
    true
}

/// All unordered `(pair, triple)` occurrences, sorted.
///
/// On the five indices, the rows of the pair are zero, the triple's off-diagonal entries
/// are one and the diagonal is zero.
pub fn find_forbidden_pattern(m: &CrossingMatrix) -> PatternSearch {
    let n = m.size();
    if n < 5 {
        return PatternSearch {
            matches: Vec::new(),
            notice: Some(format!("matrix is {n}x{n}; the pattern needs at least 5 rows")),
        };
    }
    let mut matches = Vec::new();
    for i1 in 0..n {
        for i2 in i1 + 1..n {
            for i3 in 0..n {
                for i4 in i3 + 1..n {
                    for i5 in i4 + 1..n {
                        let t = [i3, i4, i5];
                        if t.contains(&i1) || t.contains(&i2) {
                            continue;
                        }
                        if pattern_holds(m, [i1, i2, i3, i4, i5]) {
                            matches.push(PatternMatch {
                                pair: [i1, i2],
                                triple: t,
                            });
                        }
                    }
                }
            }
        }
    }
    PatternSearch {
        matches,
        notice: None,
    }
}

#[derive(Clone, Debug)]
pub struct CertificateReport {
    pub verdict: bool,
    pub reasons: Vec<String>,
    pub matrix: Option<CrossingMatrix>,
    pub matches: Vec<PatternMatch>,
    pub inventory: Vec<(String, String, usize)>,
    pub warnings: Vec<Issue>,
    pub errors: Vec<Issue>,
}

impl CertificateReport {
    pub fn render(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verdict: {}", if self.verdict { "true" } else { "false" });
        for r in &self.reasons {
            let _ = writeln!(out, "reason: {r}");
        }
        if let Some(m) = &self.matrix {
            out.push_str("matrix (diagonal: crossings within one star):\n");
            out.push_str(&m.render());
            if self.matches.is_empty() {
                out.push_str("witnesses: none\n");
            } else {
                out.push_str("witnesses:\n");
                for p in &self.matches {
                    let _ = writeln!(out, "  {}", p.describe(&m.labels));
                }
            }
        }
        let crossing: Vec<_> = self.inventory.iter().filter(|x| x.2 > 0).collect();
        let _ = writeln!(out, "crossings: {}", crossing.iter().map(|x| x.2).sum::<usize>());
        for (e, f, c) in crossing {
            let _ = writeln!(out, "  {e} x {f}: {c}");
        }
        for (tag, list) in [("error", &self.errors), ("warning", &self.warnings)] {
            for i in list {
                let _ = writeln!(out, "{tag}: {} {}", i.code, i.detail);
            }
        }
        if self.warnings.is_empty() {
            out.push_str("warnings: none\n");
        }
        out
    }
}

/// Checks whether a drawing witnesses the forbidden pattern on the Klein bottle.
///
/// The verdict is true iff the surface is the Klein bottle, the graph is `K_{m,4}`, the
/// drawing is valid and the matrix contains the pattern.
pub fn certify_counterexample(d: &Drawing) -> CertificateReport {
    let mut reasons = Vec::new();
    if d.surface.kind != SurfaceKind::Klein {
        reasons.push("wrong-surface".to_string());
    }
    if !d.is_complete_bipartite() {
        reasons.push("not-complete-bipartite".to_string());
    }
    let nb = d.b_vertices().len();
    if nb != 4 {
        reasons.push(format!("b-part-size {nb} (need 4)"));
    }
    let report = validate(d);
    let mut matrix = None;
    let mut matches = Vec::new();
    let mut inventory = Vec::new();
    if report.is_valid() {
        let inv = crossing_inventory(d);
        let m = matrix_from_inventory(d, &inv);
        let search = find_forbidden_pattern(&m);
        if let Some(n) = search.notice {
            reasons.push(n);
        }
        if search.matches.is_empty() {
            reasons.push("pattern-absent".to_string());
        }
        matches = search.matches;
        inventory = inv
            .iter()
            .map(|(&(e, f), &c)| (d.edges[e].label(), d.edges[f].label(), c))
            .collect();
        matrix = Some(m);
    } else {
        reasons.push("invalid-drawing".to_string());
    }
    CertificateReport {
        verdict: reasons.is_empty(),
        reasons,
        matrix,
        matches,
        inventory,
        warnings: report.warnings,
        errors: report.errors,
    }
}
