//! Geometric validity of drawings: transit consistency, simplicity and general position.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;

use crate::drawing::{CurveSegment, Drawing};
use crate::geometry::{point_on_segment, seg_intersect, Intersection, OnSegment, Point, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IssueCode {
    DuplicateVertexPoint,
    DuplicateEdge,
    EndpointMismatch,
    DegenerateSegment,
    BadTransit,
    CornerTransit,
    BendOnBoundary,
    BoundarySegment,
    SelfIntersection,
    EdgeThroughVertex,
    DegenerateOverlap,
    CrossingAtBend,
    BoundaryContact,
    TripleCrossing,
    AdjacentCrossing,
}

impl IssueCode {
    pub fn name(self) -> &'static str {
        match self {
            IssueCode::DuplicateVertexPoint => "duplicate-vertex-point",
            IssueCode::DuplicateEdge => "duplicate-edge",
            IssueCode::EndpointMismatch => "endpoint-mismatch",
            IssueCode::DegenerateSegment => "degenerate-segment",
            IssueCode::BadTransit => "bad-transit",
            IssueCode::CornerTransit => "corner-transit",
            IssueCode::BendOnBoundary => "bend-on-boundary",
            IssueCode::BoundarySegment => "boundary-segment",
            IssueCode::SelfIntersection => "self-intersection",
            IssueCode::EdgeThroughVertex => "edge-through-vertex",
            IssueCode::DegenerateOverlap => "degenerate-overlap",
            IssueCode::CrossingAtBend => "crossing-at-bend",
            IssueCode::BoundaryContact => "boundary-contact",
            IssueCode::TripleCrossing => "triple-crossing",
            IssueCode::AdjacentCrossing => "adjacent-crossing",
        }
    }
}

impl fmt::Display for IssueCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// One violation, located at an edge and segment where that makes sense.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Issue {
    pub edge: Option<usize>,
    pub segment: Option<usize>,
    pub code: IssueCode,
    pub other: Option<(usize, usize)>,
    pub detail: String,
}

impl Issue {
    fn new(code: IssueCode, edge: Option<usize>, segment: Option<usize>, detail: String) -> Self {
        Issue {
            edge,
            segment,
            code,
            other: None,
            detail,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
    /// Transversal crossings between distinct edges, as `(point, e, f)` with `e < f`.
    pub crossings: Vec<(Point, usize, usize)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.errors.is_empty()
    }

    pub fn has(&self, code: IssueCode) -> bool {
        self.errors.iter().chain(&self.warnings).any(|i| i.code == code)
    }

    /// Plain-text rendering used by the CLI.
    pub fn render(&self, d: &Drawing) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{}: {} error(s), {} warning(s), {} crossing(s)\n",
            if self.is_valid() { "valid" } else { "invalid" },
            self.errors.len(),
            self.warnings.len(),
            self.crossings.len()
        ));
        for (tag, list) in [("error", &self.errors), ("warning", &self.warnings)] {
            for i in list {
                out.push_str(&format!("{tag} {}", i.code));
                if let Some(e) = i.edge {
                    out.push_str(&format!(" edge {}", d.edges[e].label()));
                    if let Some(s) = i.segment {
                        out.push_str(&format!(" segment {s}"));
                    }
                }
                if let Some((f, s)) = i.other {
                    out.push_str(&format!(" with {} segment {s}", d.edges[f].label()));
                }
                if !i.detail.is_empty() {
                    out.push_str(&format!(": {}", i.detail));
                }
                out.push('\n');
            }
        }
        out
    }
}

struct Prepared {
    segs: Vec<Vec<CurveSegment>>,
    /// Every rectangle representative of every vertex point, with its vertex.
    vertex_reps: Vec<(Point, crate::drawing::VertexId)>,
}

fn prepare(d: &Drawing) -> Prepared {
    let segs = d.edges.iter().map(|e| e.segments()).collect();
    let mut vertex_reps = Vec::new();
    for (id, p) in &d.vertices {
        for r in d.surface.representatives(p).expect("vertex inside rectangle") {
            vertex_reps.push((r, *id));
        }
    }
    Prepared { segs, vertex_reps }
}

fn check_vertices(d: &Drawing, out: &mut Vec<Issue>) {
    let mut seen: BTreeMap<&Point, crate::drawing::VertexId> = BTreeMap::new();
    for (id, p) in &d.vertices {
        if let Some(prev) = seen.insert(p, *id) {
            out.push(Issue::new(
                IssueCode::DuplicateVertexPoint,
                None,
                None,
                format!("{prev} and {id} share point {p}"),
            ));
        }
    }
    let mut pairs = BTreeMap::new();
    for (i, e) in d.edges.iter().enumerate() {
        if let Some(first) = pairs.insert((e.a, e.b), i) {
            out.push(Issue::new(
                IssueCode::DuplicateEdge,
                Some(i),
                None,
                format!("repeats edge {first}"),
            ));
        }
    }
}

/// Checks that involve a single edge curve.
fn check_curve(d: &Drawing, e: usize, pre: &Prepared) -> Vec<Issue> {
    let s = &d.surface;
    let curve = &d.edges[e];
    let segs = &pre.segs[e];
    let mut out = Vec::new();
    let at = |code, seg: Option<usize>, detail: String| Issue::new(code, Some(e), seg, detail);

    for (id, p) in [(curve.a, curve.start()), (curve.b, curve.end())] {
        if s.identify(p).ok().as_ref() != d.vertices.get(&id) {
            out.push(at(IssueCode::EndpointMismatch, None, format!("{p} is not a representative of {id}")));
        }
    }

    for sg in segs {
        if sg.p == sg.q {
            out.push(at(IssueCode::DegenerateSegment, Some(sg.index), format!("repeated point {}", sg.p)));
            continue;
        }
        let common: Vec<_> = s
            .sides_of(&sg.p)
            .into_iter()
            .filter(|side| s.on_side(&sg.q, *side))
            .collect();
        if !common.is_empty() {
            out.push(at(IssueCode::BoundarySegment, Some(sg.index), format!("{} to {} lies on the frame", sg.p, sg.q)));
        }
    }

    // Bends and joins.
    let n_arcs = curve.arcs.len();
    let mut seg_base = 0;
    let mut joins = Vec::new();
    for (t, arc) in curve.arcs.iter().enumerate() {
        for (k, p) in arc.iter().enumerate() {
            let is_curve_end = (t == 0 && k == 0) || (t + 1 == n_arcs && k + 1 == arc.len());
            let is_arc_end = k == 0 || k + 1 == arc.len();
            let seg_ix = seg_base + k.min(arc.len() - 2);
            if !is_arc_end && s.on_boundary(p) {
                out.push(at(IssueCode::BendOnBoundary, Some(seg_ix), format!("bend {p}")));
            }
            if is_arc_end && !is_curve_end && !s.on_boundary(p) {
                out.push(at(IssueCode::BadTransit, Some(seg_ix), format!("arc end {p} is not on the frame")));
            }
        }
        if t + 1 < n_arcs {
            let end = arc.last().unwrap();
            let next = &curve.arcs[t + 1][0];
            let seg_ix = seg_base + arc.len() - 2;
            let sides = s.sides_of(end);
            if sides.len() == 2 {
                out.push(at(IssueCode::CornerTransit, Some(seg_ix), format!("transit through corner {end}")));
            } else if let Some(&side) = sides.first() {
                let expect = s.transit(end, side).expect("point on side");
                if *next != expect {
                    out.push(at(
                        IssueCode::BadTransit,
                        Some(seg_ix + 1),
                        format!("arc ends at {end} but next arc starts at {next}, expected {expect}"),
                    ));
                } else {
                    joins.push(s.identify(end).expect("inside"));
                }
            }
        }
        seg_base += arc.len() - 1;
    }

    // Simplicity on the surface.
    let mut seen_joins = BTreeSet::new();
    for j in &joins {
        if !seen_joins.insert(j.clone()) {
            out.push(at(IssueCode::SelfIntersection, None, format!("curve passes {j} twice")));
        }
    }
    for i in 0..segs.len() {
        let Some(si) = segs[i].segment() else { continue };
        for j in i + 1..segs.len() {
            let Some(sj) = segs[j].segment() else { continue };
            match seg_intersect(&si, &sj) {
                Intersection::None => {}
                Intersection::Degenerate => {
                    out.push(at(IssueCode::SelfIntersection, Some(i), format!("segments {i} and {j} overlap")));
                }
                Intersection::Point(m) => {
                    let adjacent = j == i + 1 && segs[i].arc == segs[j].arc && m == segs[i].q;
                    if !adjacent {
                        out.push(at(IssueCode::SelfIntersection, Some(i), format!("segments {i} and {j} meet at {m}")));
                    }
                }
            }
        }
    }

    // Vertex points on the curve other than its own ends.
    for (r, v) in &pre.vertex_reps {
        for sg in segs {
            let Some(g) = sg.segment() else { continue };
            if point_on_segment(r, &g) == OnSegment::Interior {
                out.push(at(IssueCode::EdgeThroughVertex, Some(sg.index), format!("passes through {v} at {r}")));
            }
        }
        for sg in segs {
            let own_start = sg.index == 0 && *v == curve.a;
            if sg.p == *r && !own_start {
                out.push(at(IssueCode::EdgeThroughVertex, Some(sg.index), format!("touches {v} at {r}")));
            }
            let own_end = sg.index + 1 == segs.len() && *v == curve.b;
            if sg.q == *r && sg.last_in_arc && !own_end {
                out.push(at(IssueCode::EdgeThroughVertex, Some(sg.index), format!("touches {v} at {r}")));
            }
        }
    }
    out
}

fn boxes_meet(a: &CurveSegment, b: &CurveSegment) -> bool {
    let span = |u: &Q, v: &Q| if u <= v { (u.clone(), v.clone()) } else { (v.clone(), u.clone()) };
    let (ax, bx) = (span(&a.p.x, &a.q.x), span(&b.p.x, &b.q.x));
    let (ay, by) = (span(&a.p.y, &a.q.y), span(&b.p.y, &b.q.y));
    ax.0 <= bx.1 && bx.0 <= ax.1 && ay.0 <= by.1 && by.0 <= ay.1
}

struct PairOutcome {
    issues: Vec<Issue>,
    crossings: Vec<Point>,
}

fn check_pair(d: &Drawing, e: usize, f: usize, pre: &Prepared) -> PairOutcome {
    let s = &d.surface;
    let mut issues = Vec::new();
    let mut crossings = BTreeSet::new();
    let vertex_points: BTreeSet<&Point> = pre.vertex_reps.iter().map(|(p, _)| p).collect();
    for se in &pre.segs[e] {
        let Some(ge) = se.segment() else { continue };
        for sf in &pre.segs[f] {
            let Some(gf) = sf.segment() else { continue };
            if !boxes_meet(se, sf) {
                continue;
            }
            match seg_intersect(&ge, &gf) {
                Intersection::None => {}
                Intersection::Degenerate => issues.push(Issue {
                    edge: Some(e),
                    segment: Some(se.index),
                    code: IssueCode::DegenerateOverlap,
                    other: Some((f, sf.index)),
                    detail: String::new(),
                }),
                Intersection::Point(m) => {
                    if vertex_points.contains(&m) {
                        continue;
                    }
                    let code = if s.on_boundary(&m) {
                        Some(IssueCode::BoundaryContact)
                    } else if point_on_segment(&m, &ge) != OnSegment::Interior
                        || point_on_segment(&m, &gf) != OnSegment::Interior
                    {
                        Some(IssueCode::CrossingAtBend)
                    } else {
                        crossings.insert(m.clone());
                        None
                    };
                    if let Some(code) = code {
                        issues.push(Issue {
                            edge: Some(e),
                            segment: Some(se.index),
                            code,
                            other: Some((f, sf.index)),
                            detail: format!("at {m}"),
                        });
                    }
                }
            }
        }
    }
    issues.dedup();
    PairOutcome {
        issues,
        crossings: crossings.into_iter().collect(),
    }
}

/// Full validity check. Errors and warnings are sorted by edge, then segment.
pub fn validate(d: &Drawing) -> ValidationReport {
    let pre = prepare(d);
    let mut errors = Vec::new();
    check_vertices(d, &mut errors);

    let per_curve: Vec<Vec<Issue>> = (0..d.edges.len())
        .into_par_iter()
        .map(|e| check_curve(d, e, &pre))
        .collect();
    errors.extend(per_curve.into_iter().flatten());

    let pairs: Vec<(usize, usize)> = (0..d.edges.len())
        .flat_map(|e| (e + 1..d.edges.len()).map(move |f| (e, f)))
        .collect();
    let outcomes: Vec<PairOutcome> = pairs
        .par_iter()
        .map(|&(e, f)| check_pair(d, e, f, &pre))
        .collect();

    let mut crossings = Vec::new();
    let mut warnings = Vec::new();
    let mut by_point: BTreeMap<Point, Vec<(usize, usize)>> = BTreeMap::new();
    for (&(e, f), out) in pairs.iter().zip(outcomes) {
        errors.extend(out.issues);
        let (ea, fa) = (&d.edges[e], &d.edges[f]);
        if !out.crossings.is_empty() && (ea.a == fa.a || ea.b == fa.b) {
            warnings.push(Issue {
                edge: Some(e),
                segment: None,
                code: IssueCode::AdjacentCrossing,
                other: None,
                detail: format!(
                    "{} and {} share an endpoint and cross {} time(s)",
                    ea.label(),
                    fa.label(),
                    out.crossings.len()
                ),
            });
        }
        for m in out.crossings {
            by_point.entry(m.clone()).or_default().push((e, f));
            crossings.push((m, e, f));
        }
    }
    for (m, list) in &by_point {
        if list.len() > 1 {
            let (e, f) = list[0];
            errors.push(Issue {
                edge: Some(e),
                segment: None,
                code: IssueCode::TripleCrossing,
                other: None,
                detail: format!("{} pairs of edges meet at {m}, first {} and {}", list.len(), d.edges[e].label(), d.edges[f].label()),
            });
        }
    }
    errors.sort();
    warnings.sort();
    crossings.sort_by(|a, b| (a.1, a.2, &a.0).cmp(&(b.1, b.2, &b.0)));
    ValidationReport {
        errors,
        warnings,
        crossings,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::parse_drawing;

    fn report(text: &str) -> ValidationReport {
        validate(&parse_drawing(text).unwrap())
    }

    const HEAD: &str = "surface torus\nrect 4 4\nvertex a1 A 1 1\nvertex a2 A 3 1\nvertex b1 B 1 3\nvertex b2 B 3 3\n";

    #[test]
    fn x_is_valid_with_one_crossing() {
        let r = report(&format!("{HEAD}edge a1 b2 : 1,1 3,3\nedge a2 b1 : 3,1 1,3\n"));
        assert!(r.is_valid(), "{:?}", r.errors);
        assert_eq!(r.crossings.len(), 1);
        assert_eq!(r.crossings[0].0, Point::from_ints(2, 2));
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn overlap_is_degenerate() {
        let r = report(&format!(
            "{HEAD}edge a1 b1 : 1,1 2,2 2,3 1,3\nedge a2 b2 : 3,1 2,2 2,3 3,3\n"
        ));
        assert!(r.has(IssueCode::DegenerateOverlap));
    }

    #[test]
    fn bad_transit_is_reported() {
        let r = report(&format!("{HEAD}edge a1 b1 : 1,1 0,1 | 4,2 1,3\n"));
        assert!(r.has(IssueCode::BadTransit));
        let r = report(&format!("{HEAD}edge a1 b1 : 1,1 0,2 | 4,2 1,3\n"));
        assert!(r.is_valid(), "{:?}", r.errors);
    }

    #[test]
    fn corner_and_boundary_rules() {
        let r = report(&format!("{HEAD}edge a1 b1 : 1,1 0,0 | 4,4 1,3\n"));
        assert!(r.has(IssueCode::CornerTransit));
        let r = report(&format!("{HEAD}edge a1 b1 : 1,1 1,0 2,0 | 2,4 1,3\n"));
        assert!(r.has(IssueCode::BoundarySegment));
        let r = report(&format!("{HEAD}edge a1 b1 : 1,1 2,0 1,3\n"));
        assert!(r.has(IssueCode::BendOnBoundary));
    }

    #[test]
    fn through_vertex_is_error() {
        let r = report(&format!("{HEAD}edge a1 b1 : 1,1 1,3\nedge a2 b1 : 3,1 1,1 1,3\n"));
        assert!(r.has(IssueCode::EdgeThroughVertex));
    }

    #[test]
    fn self_intersection_is_error() {
        let r = report(&format!("{HEAD}edge a1 b1 : 1,1 2,2 2,1 1,2 1,3\n"));
        assert!(r.has(IssueCode::SelfIntersection));
    }

    #[test]
    fn adjacent_crossing_warns() {
        let r = report(&format!("{HEAD}edge a1 b1 : 1,1 2,2 1,3\nedge a1 b2 : 1,1 3/2,3 3,3\n"));
        assert!(r.is_valid(), "{:?}", r.errors);
        assert!(r.has(IssueCode::AdjacentCrossing));
    }

    #[test]
    fn triple_point_is_error() {
        let text = "surface torus\nrect 8 8\nvertex a1 A 1 1\nvertex a2 A 3 1\nvertex a3 A 2 1\nvertex b1 B 1 3\nvertex b2 B 3 3\nvertex b3 B 2 3\nedge a1 b2 : 1,1 3,3\nedge a2 b1 : 3,1 1,3\nedge a3 b3 : 2,1 2,3\n";
        assert!(report(text).has(IssueCode::TripleCrossing));
    }

    #[test]
    fn crossing_at_bend_is_error() {
        let r = report(&format!("{HEAD}edge a1 b2 : 1,1 2,2 3,3\nedge a2 b1 : 3,1 1,3\n"));
        assert!(r.has(IssueCode::CrossingAtBend));
    }
}
