//! Faces of a drawing on its surface.
//!
//! The rectangle frame is overlaid on the drawing as auxiliary curves, the resulting planar
//! subdivision of the rectangle is extracted, and its cells are merged across glued frame
//! pieces. Boundary walks are traced through the cells, jumping across the gluing whenever
//! a walk reaches the frame.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use num_traits::{Signed, Zero};

use crate::arrangement::{planarize, Arrangement, ArrangementError, NodeKind};
use crate::drawing::{Drawing, Part, VertexId};
use crate::geometry::{angle_cmp, signed_area2, winding_number, Point, Q};
use crate::surface::Side;

/// A traversal of one arrangement segment: `(segment id, along its A-to-B direction)`.
pub type Dart = (usize, bool);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Walk {
    pub darts: Vec<Dart>,
    /// Arrangement node at the start of each dart; a single node for an isolated vertex.
    pub nodes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub walks: Vec<Walk>,
    pub vertices: Vec<VertexId>,
    pub edges: Vec<usize>,
    pub euler: i64,
    pub disk: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceSet {
    pub arrangement: Arrangement,
    pub faces: Vec<Face>,
}

impl FaceSet {
    pub fn walk_length_total(&self) -> usize {
        self.faces
            .iter()
            .flat_map(|f| &f.walks)
            .map(|w| w.darts.len())
            .sum()
    }

    pub fn render(&self, d: &Drawing) -> String {
        let arr = &self.arrangement;
        let mut out = String::new();
        let r = euler_from(arr, self);
        let _ = writeln!(
            out,
            "V {} E {} F {} chi {} cellular {}",
            r.vertices, r.edges, r.faces, r.chi, r.cellular
        );
        for (i, f) in self.faces.iter().enumerate() {
            let _ = writeln!(
                out,
                "face {i} {} walks {} chi {}",
                if f.disk { "disk" } else { "non-disk" },
                f.walks.len(),
                f.euler
            );
            for w in &f.walks {
                let names: Vec<String> = w.nodes.iter().map(|&n| arr.nodes[n].label()).collect();
                let _ = writeln!(out, "  walk {}", names.join(" "));
            }
            let bs: Vec<String> = f
                .vertices
                .iter()
                .filter(|v| v.part == Part::B)
                .map(|v| v.to_string())
                .collect();
            let _ = writeln!(out, "  b-vertices {}", if bs.is_empty() { "-".into() } else { bs.join(" ") });
            let es: Vec<String> = f.edges.iter().map(|&e| d.edges[e].label()).collect();
            let _ = writeln!(out, "  edges {}", if es.is_empty() { "-".into() } else { es.join(" ") });
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum HalfKind {
    /// Sub-segment index, and whether the half runs along the curve.
    Drawing(usize, bool),
    /// Frame piece on a side; `inner` halves run counter-clockwise around the rectangle.
    Frame { inner: bool },
}

#[derive(Clone, Debug)]
struct Half {
    from: usize,
    to: usize,
    twin: usize,
    kind: HalfKind,
}

struct Pslg {
    points: Vec<Point>,
    halves: Vec<Half>,
    out: Vec<Vec<usize>>,
    /// Position of each half in its origin's `out` list.
    slot: Vec<usize>,
}

impl Pslg {
    fn next(&self, h: usize) -> usize {
        let t = self.halves[h].twin;
        let v = self.halves[h].to;
        let list = &self.out[v];
        let i = self.slot[t];
        list[(i + list.len() - 1) % list.len()]
    }

    fn prev(&self, h: usize) -> usize {
        let v = self.halves[h].from;
        let list = &self.out[v];
        let i = self.slot[h];
        self.halves[list[(i + 1) % list.len()]].twin
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let n = self.0[c];
            self.0[c] = r;
            c = n;
        }
        r
    }

    /// Unites two classes, keeping the smaller index as root.
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.0[hi] = lo;
        }
    }
}

fn side_key(side: Side, p: &Point) -> Q {
    match side {
        Side::Bottom => p.x.clone(),
        Side::Right => p.y.clone(),
        Side::Top => -&p.x,
        Side::Left => -&p.y,
    }
}

fn build_pslg(d: &Drawing, arr: &Arrangement) -> (Pslg, BTreeMap<Point, usize>) {
    let s = &d.surface;
    let mut index: BTreeMap<Point, usize> = BTreeMap::new();
    let mut points = Vec::new();
    let node = |p: &Point, index: &mut BTreeMap<Point, usize>, points: &mut Vec<Point>| -> usize {
        *index.entry(p.clone()).or_insert_with(|| {
            points.push(p.clone());
            points.len() - 1
        })
    };

    let mut frame_points: BTreeSet<Point> = s.corners().into_iter().collect();
    for sub in &arr.subsegments {
        for p in [&sub.p, &sub.q] {
            if s.on_boundary(p) {
                frame_points.extend(s.representatives(p).expect("inside"));
            }
        }
    }
    for p in d.vertices.values() {
        if s.on_boundary(p) {
            frame_points.extend(s.representatives(p).expect("inside"));
        }
    }

    let mut halves = Vec::new();
    for (k, sub) in arr.subsegments.iter().enumerate() {
        let a = node(&sub.p, &mut index, &mut points);
        let b = node(&sub.q, &mut index, &mut points);
        let h = halves.len();
        halves.push(Half { from: a, to: b, twin: h + 1, kind: HalfKind::Drawing(k, true) });
        halves.push(Half { from: b, to: a, twin: h, kind: HalfKind::Drawing(k, false) });
    }
    for p in d.vertices.values() {
        node(p, &mut index, &mut points);
    }
    for side in Side::ALL {
        let mut on: Vec<&Point> = frame_points.iter().filter(|p| s.on_side(p, side)).collect();
        on.sort_by_key(|p| side_key(side, p));
        for w in on.windows(2) {
            let a = node(w[0], &mut index, &mut points);
            let b = node(w[1], &mut index, &mut points);
            let h = halves.len();
            halves.push(Half { from: a, to: b, twin: h + 1, kind: HalfKind::Frame { inner: true } });
            halves.push(Half { from: b, to: a, twin: h, kind: HalfKind::Frame { inner: false } });
        }
    }

    let mut out = vec![Vec::new(); points.len()];
    for (h, half) in halves.iter().enumerate() {
        out[half.from].push(h);
    }
    let mut slot = vec![0; halves.len()];
    for (v, list) in out.iter_mut().enumerate() {
        list.sort_by(|&x, &y| {
            let dx = points[halves[x].to].sub(&points[v]);
            let dy = points[halves[y].to].sub(&points[v]);
            angle_cmp(&dx, &dy)
        });
        for (i, &h) in list.iter().enumerate() {
            slot[h] = i;
        }
    }
    (Pslg { points, halves, out, slot }, index)
}

/// Computes the faces of a valid drawing.
pub fn face_set(d: &Drawing) -> Result<FaceSet, ArrangementError> {
    let arr = planarize(d)?;
    let s = &d.surface;
    let (g, index) = build_pslg(d, &arr);
    let nh = g.halves.len();

    // Cycles of the `next` permutation.
    let mut cycle_of = vec![usize::MAX; nh];
    let mut cycles: Vec<Vec<usize>> = Vec::new();
    for h in 0..nh {
        if cycle_of[h] != usize::MAX {
            continue;
        }
        let id = cycles.len();
        let mut c = Vec::new();
        let mut x = h;
        loop {
            cycle_of[x] = id;
            c.push(x);
            x = g.next(x);
            if x == h {
                break;
            }
        }
        cycles.push(c);
    }
    let area: Vec<Q> = cycles
        .iter()
        .map(|c| {
            let poly: Vec<Point> = c.iter().map(|&h| g.points[g.halves[h].from].clone()).collect();
            signed_area2(&poly)
        })
        .collect();

    // Connected components of the subdivision.
    let mut comp = UnionFind::new(g.points.len());
    for h in &g.halves {
        comp.union(h.from, h.to);
    }
    let frame_root = comp.find(index[&Point::new(Q::zero(), Q::zero())]);

    // Bounded cycles are cells; the outer cycle of every other component is a hole.
    let cells: Vec<usize> = (0..cycles.len()).filter(|&c| area[c].is_positive()).collect();
    let cell_index: BTreeMap<usize, usize> = cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut holes = vec![0i64; cells.len()];
    let mut cell_of_cycle: BTreeMap<usize, usize> = cell_index.clone();
    let mut isolated_in_cell: Vec<(usize, usize)> = Vec::new();

    let container = |p: &Point, root: usize, comp: &mut UnionFind| -> usize {
        let mut best: Option<(Q, usize)> = None;
        for (ci, &c) in cells.iter().enumerate() {
            let first = g.halves[cycles[c][0]].from;
            if comp.find(first) == root {
                continue;
            }
            let poly: Vec<Point> = cycles[c].iter().map(|&h| g.points[g.halves[h].from].clone()).collect();
            if winding_number(&poly, p) != 0 && best.as_ref().is_none_or(|b| area[c] < b.0) {
                best = Some((area[c].clone(), ci));
            }
        }
        best.expect("every point of the rectangle lies in a cell").1
    };

    let mut seen_roots = BTreeSet::new();
    for c in 0..cycles.len() {
        if area[c].is_positive() {
            continue;
        }
        let first = g.halves[cycles[c][0]].from;
        let root = comp.find(first);
        if root == frame_root {
            continue;
        }
        if !seen_roots.insert(root) {
            continue;
        }
        let ci = container(&g.points[first], root, &mut comp);
        holes[ci] += 1;
        // Every non-positive cycle of this component is its outer boundary.
        for c2 in 0..cycles.len() {
            if !area[c2].is_positive() && comp.find(g.halves[cycles[c2][0]].from) == root {
                cell_of_cycle.insert(c2, ci);
            }
        }
    }
    for (v, p) in &d.vertices {
        let n = index[p];
        if g.out[n].is_empty() {
            let root = comp.find(n);
            let ci = container(p, root, &mut comp);
            holes[ci] += 1;
            let an = arr.node_of_vertex(*v).expect("vertex node");
            isolated_in_cell.push((ci, an));
        }
    }

    // Glue cells across frame pieces.
    let inner: BTreeMap<(Point, Point), usize> = (0..nh)
        .filter(|&h| g.halves[h].kind == HalfKind::Frame { inner: true })
        .map(|h| ((g.points[g.halves[h].from].clone(), g.points[g.halves[h].to].clone()), h))
        .collect();
    let mut partner: BTreeMap<usize, (usize, bool)> = BTreeMap::new();
    for ((p, q), &h) in &inner {
        let side = s
            .sides_of(p)
            .into_iter()
            .find(|sd| s.on_side(q, *sd))
            .expect("frame piece lies on a side");
        let tp = s.transit(p, side).expect("on side");
        let tq = s.transit(q, side).expect("on side");
        let found = if let Some(&g2) = inner.get(&(tq.clone(), tp.clone())) {
            (g2, true)
        } else {
            (inner[&(tp, tq)], false)
        };
        partner.insert(h, found);
    }
    let cell_of_half = |h: usize| -> Option<usize> { cell_of_cycle.get(&cycle_of[h]).copied() };
    let mut faces_uf = UnionFind::new(cells.len());
    for (&h, &(h2, _)) in &partner {
        faces_uf.union(cell_of_half(h).expect("inner frame half bounds a cell"), cell_of_half(h2).expect("inner"));
    }

    // Boundary walks.
    let mut visited = vec![false; nh];
    let mut walks: Vec<(usize, Walk)> = Vec::new();
    for start in 0..nh {
        if visited[start] || !matches!(g.halves[start].kind, HalfKind::Drawing(..)) {
            continue;
        }
        let mut seq: Vec<(usize, bool)> = Vec::new();
        let (mut h, mut fwd) = (start, true);
        loop {
            visited[h] = true;
            seq.push((h, fwd));
            let mut nx = if fwd { g.next(h) } else { g.prev(h) };
            let mut guard = 0;
            while let HalfKind::Frame { .. } = g.halves[nx].kind {
                let (p2, keep) = partner[&nx];
                if !keep {
                    fwd = !fwd;
                }
                nx = if fwd { g.next(p2) } else { g.prev(p2) };
                guard += 1;
                assert!(guard <= nh, "frame jumps do not terminate");
            }
            h = nx;
            if h == start && fwd {
                break;
            }
            assert!(seq.len() <= 2 * nh, "walk does not close");
        }
        let darts_raw: Vec<Dart> = seq
            .iter()
            .map(|&(h, f)| match g.halves[h].kind {
                HalfKind::Drawing(k, along) => (arr.subsegments[k].segment, along == f),
                HalfKind::Frame { .. } => unreachable!(),
            })
            .collect();
        let n = darts_raw.len();
        let begin = (0..n)
            .find(|&i| darts_raw[i] != darts_raw[(i + n - 1) % n])
            .unwrap_or(0);
        let mut darts: Vec<Dart> = Vec::new();
        for i in 0..n {
            let dt = darts_raw[(begin + i) % n];
            if darts.last() != Some(&dt) {
                darts.push(dt);
            }
        }
        if darts.len() > 1 && darts.first() == darts.last() {
            darts.pop();
        }
        let nodes = darts
            .iter()
            .map(|&(sg, along)| {
                let seg = &arr.segments[sg];
                if along {
                    seg.from
                } else {
                    seg.to
                }
            })
            .collect();
        let cell = cell_of_half(start).expect("drawing half bounds a cell");
        walks.push((faces_uf.find(cell), Walk { darts, nodes }));
    }
    for &(ci, an) in &isolated_in_cell {
        walks.push((faces_uf.find(ci), Walk { darts: Vec::new(), nodes: vec![an] }));
    }

    // Isolated vertices on the frame become degenerate walks of the face around them.
    let drawing_points: BTreeSet<usize> = g
        .halves
        .iter()
        .filter(|h| matches!(h.kind, HalfKind::Drawing(..)))
        .flat_map(|h| [h.from, h.to])
        .collect();
    let mut frame_orbits: BTreeMap<Point, (bool, usize)> = BTreeMap::new();
    for ((p, _), &h) in &inner {
        let c = s.identify(p).expect("inside");
        let n = index[p];
        let e = frame_orbits.entry(c).or_insert((true, h));
        if drawing_points.contains(&n) {
            e.0 = false;
        }
    }
    let vertex_at: BTreeMap<&Point, VertexId> = d.vertices.iter().map(|(v, p)| (p, *v)).collect();
    let mut euler_extra: BTreeMap<usize, i64> = BTreeMap::new();
    for (c, &(free, h)) in &frame_orbits {
        let cell = cell_of_half(h).expect("inner");
        let face = faces_uf.find(cell);
        match vertex_at.get(c) {
            Some(v) if free => {
                let an = arr.node_of_vertex(*v).expect("vertex node");
                walks.push((face, Walk { darts: Vec::new(), nodes: vec![an] }));
            }
            None if free => *euler_extra.entry(face).or_default() += 1,
            _ => {}
        }
    }

    // Assemble faces.
    let mut roots: Vec<usize> = (0..cells.len()).map(|c| faces_uf.find(c)).collect();
    roots.sort();
    roots.dedup();
    let mut faces = Vec::new();
    for &r in &roots {
        let members: Vec<usize> = (0..cells.len()).filter(|&c| faces_uf.find(c) == r).collect();
        let mut euler: i64 = members.iter().map(|&c| 1 - holes[c]).sum();
        euler -= partner
            .iter()
            .filter(|(&h, &(h2, _))| h < h2 && faces_uf.find(cell_of_half(h).unwrap()) == r)
            .count() as i64;
        euler += euler_extra.get(&r).copied().unwrap_or(0);
        let fw: Vec<Walk> = walks.iter().filter(|w| w.0 == r).map(|w| w.1.clone()).collect();
        let mut vertices = BTreeSet::new();
        let mut edges = BTreeSet::new();
        for w in &fw {
            for &n in &w.nodes {
                if let NodeKind::Vertex(v) = arr.nodes[n].kind {
                    vertices.insert(v);
                }
            }
            for &(sg, _) in &w.darts {
                edges.insert(arr.segments[sg].edge);
            }
        }
        faces.push(Face {
            disk: euler == 1 && fw.len() == 1,
            walks: fw,
            vertices: vertices.into_iter().collect(),
            edges: edges.into_iter().collect(),
            euler,
        });
    }
    faces.sort_by_key(|f| {
        f.walks
            .iter()
            .flat_map(|w| w.darts.iter().map(|x| x.0))
            .min()
            .unwrap_or(usize::MAX)
    });
    Ok(FaceSet { arrangement: arr, faces })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EulerReport {
    pub vertices: usize,
    pub edges: usize,
    pub faces: usize,
    pub chi: i64,
    pub cellular: bool,
}

fn euler_from(arr: &Arrangement, fs: &FaceSet) -> EulerReport {
    let (v, e, f) = (arr.nodes.len(), arr.segments.len(), fs.faces.len());
    EulerReport {
        vertices: v,
        edges: e,
        faces: f,
        chi: v as i64 - e as i64 + f as i64,
        cellular: fs.faces.iter().all(|x| x.disk),
    }
}

pub fn euler_report(d: &Drawing) -> Result<EulerReport, ArrangementError> {
    let fs = face_set(d)?;
    Ok(euler_from(&fs.arrangement, &fs))
}

/// Faces whose closure meets every B-vertex of the drawing.
pub fn all_b_faces(d: &Drawing) -> Result<Vec<usize>, ArrangementError> {
    let fs = face_set(d)?;
    Ok(all_b_faces_of(d, &fs))
}

pub fn all_b_faces_of(d: &Drawing, fs: &FaceSet) -> Vec<usize> {
    let bs = d.b_vertices();
    fs.faces
        .iter()
        .enumerate()
        .filter(|(_, f)| bs.iter().all(|b| f.vertices.contains(b)))
        .map(|(i, _)| i)
        .collect()
}
