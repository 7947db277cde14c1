//! Planarization of a drawing: vertices and crossings become nodes, curve pieces become segments.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::drawing::{Drawing, VertexId};
use crate::geometry::{angle_cmp, point_on_segment, OnSegment, Point, Segment, Vector};
use crate::validate::validate;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArrangementError {
    #[error("invalid drawing: {0} error(s), first {1}")]
    InvalidDrawing(usize, String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NodeKind {
    Vertex(VertexId),
    /// Crossing number `k`, shown as `x<k+1>`.
    Crossing(usize),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Node {
    pub kind: NodeKind,
    /// Canonical surface point.
    pub point: Point,
}

impl Node {
    pub fn label(&self) -> String {
        match &self.kind {
            NodeKind::Vertex(v) => v.to_string(),
            NodeKind::Crossing(k) => format!("x{}", k + 1),
        }
    }
}

/// A straight piece of a curve inside the rectangle, oriented from the A end to the B end.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubSegment {
    pub edge: usize,
    pub segment: usize,
    pub p: Point,
    pub q: Point,
}

/// A piece of an edge between consecutive nodes, possibly spanning several transits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArrSegment {
    pub edge: usize,
    pub from: usize,
    pub to: usize,
    /// Range into `Arrangement::subsegments`.
    pub subs: std::ops::Range<usize>,
}

/// One end of a segment at a node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SegmentEnd {
    pub segment: usize,
    pub at_start: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrangement {
    pub nodes: Vec<Node>,
    pub segments: Vec<ArrSegment>,
    pub subsegments: Vec<SubSegment>,
    /// Counter-clockwise order of segment ends at each node, in the canonical chart.
    pub rotations: Vec<Vec<SegmentEnd>>,
}

impl Arrangement {
    pub fn node_of_vertex(&self, v: VertexId) -> Option<usize> {
        self.nodes.iter().position(|n| n.kind == NodeKind::Vertex(v))
    }

    pub fn crossing_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n.kind, NodeKind::Crossing(_)))
            .count()
    }

    pub fn degree(&self, node: usize) -> usize {
        self.rotations[node].len()
    }
}

/// Builds the arrangement of a valid drawing.
pub fn planarize(d: &Drawing) -> Result<Arrangement, ArrangementError> {
    let report = validate(d);
    if let Some(first) = report.errors.first() {
        return Err(ArrangementError::InvalidDrawing(report.errors.len(), first.code.to_string()));
    }
    let mut nodes: Vec<Node> = d
        .vertices
        .iter()
        .map(|(v, p)| Node {
            kind: NodeKind::Vertex(*v),
            point: p.clone(),
        })
        .collect();
    let vertex_node: BTreeMap<VertexId, usize> = d.vertices.keys().enumerate().map(|(i, v)| (*v, i)).collect();
    let mut crossing_points: Vec<Point> = report.crossings.iter().map(|c| c.0.clone()).collect();
    crossing_points.sort();
    crossing_points.dedup();
    let mut crossing_node = BTreeMap::new();
    for (k, p) in crossing_points.iter().enumerate() {
        crossing_node.insert(p.clone(), nodes.len());
        nodes.push(Node {
            kind: NodeKind::Crossing(k),
            point: p.clone(),
        });
    }

    let mut subsegments = Vec::new();
    let mut segments = Vec::new();
    for (e, curve) in d.edges.iter().enumerate() {
        let mut current_from = vertex_node[&curve.a];
        let mut start_sub = subsegments.len();
        for cs in curve.segments() {
            let Some(seg) = Segment::new(cs.p.clone(), cs.q.clone()) else { continue };
            let mut on: Vec<(crate::geometry::Q, Point)> = crossing_points
                .iter()
                .filter(|m| point_on_segment(m, &seg) == OnSegment::Interior)
                .map(|m| (seg.param_of(m), m.clone()))
                .collect();
            on.sort();
            let mut from = cs.p.clone();
            for (_, m) in on {
                subsegments.push(SubSegment {
                    edge: e,
                    segment: segments.len(),
                    p: from,
                    q: m.clone(),
                });
                let to = crossing_node[&m];
                segments.push(ArrSegment {
                    edge: e,
                    from: current_from,
                    to,
                    subs: start_sub..subsegments.len(),
                });
                current_from = to;
                start_sub = subsegments.len();
                from = m;
            }
            subsegments.push(SubSegment {
                edge: e,
                segment: segments.len(),
                p: from,
                q: cs.q.clone(),
            });
        }
        segments.push(ArrSegment {
            edge: e,
            from: current_from,
            to: vertex_node[&curve.b],
            subs: start_sub..subsegments.len(),
        });
    }

    let mut ends: Vec<Vec<(Vector, SegmentEnd)>> = vec![Vec::new(); nodes.len()];
    for (sid, s) in segments.iter().enumerate() {
        let first = &subsegments[s.subs.start];
        let last = &subsegments[s.subs.end - 1];
        let d_start = d.surface.to_canonical_chart(&first.p, &first.q.sub(&first.p));
        let d_end = d.surface.to_canonical_chart(&last.q, &last.p.sub(&last.q));
        ends[s.from].push((
            d_start,
            SegmentEnd {
                segment: sid,
                at_start: true,
            },
        ));
        ends[s.to].push((
            d_end,
            SegmentEnd {
                segment: sid,
                at_start: false,
            },
        ));
    }
    let rotations = ends
        .into_iter()
        .map(|mut v| {
            v.sort_by(|a, b| angle_cmp(&a.0, &b.0).then(a.1.cmp(&b.1)));
            v.into_iter().map(|x| x.1).collect()
        })
        .collect();
    Ok(Arrangement {
        nodes,
        segments,
        subsegments,
        rotations,
    })
}
