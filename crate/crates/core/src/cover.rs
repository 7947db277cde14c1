//! Lifting edge curves to the universal cover of the surface, and folding cover paths back.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::drawing::Drawing;
use crate::geometry::{seg_intersect, Intersection, Point, Segment, Q};
use crate::surface::{Side, Surface, SurfaceKind};

/// A deck transformation `(x, y) -> (x + tx, s y + ty)` with `s = +-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DeckMap {
    pub flip: bool,
    pub tx: Q,
    pub ty: Q,
}

impl DeckMap {
    pub fn identity() -> Self {
        DeckMap {
            flip: false,
            tx: Q::zero(),
            ty: Q::zero(),
        }
    }

    /// The transformation carrying the fundamental rectangle onto tile `(i, j)`.
    pub fn tile(s: &Surface, i: i64, j: i64) -> Self {
        let flip = s.kind == SurfaceKind::Klein && i.is_odd();
        let mut ty = &s.height * Q::from_integer(j.into());
        if flip {
            ty += &s.height;
        }
        DeckMap {
            flip,
            tx: &s.width * Q::from_integer(i.into()),
            ty,
        }
    }

    /// The tile reached by crossing `side` of the fundamental rectangle.
    pub fn across(s: &Surface, side: Side) -> Self {
        match side {
            Side::Right => DeckMap::tile(s, 1, 0),
            Side::Left => DeckMap::tile(s, -1, 0),
            Side::Top => DeckMap::tile(s, 0, 1),
            Side::Bottom => DeckMap::tile(s, 0, -1),
        }
    }

    pub fn apply(&self, p: &Point) -> Point {
        let y = if self.flip { -&p.y } else { p.y.clone() };
        Point::new(&p.x + &self.tx, y + &self.ty)
    }

    /// `self` after `other`.
    pub fn compose(&self, other: &DeckMap) -> DeckMap {
        let ty = if self.flip { -&other.ty } else { other.ty.clone() };
        DeckMap {
            flip: self.flip != other.flip,
            tx: &self.tx + &other.tx,
            ty: ty + &self.ty,
        }
    }

    pub fn inverse(&self) -> DeckMap {
        let ty = if self.flip { self.ty.clone() } else { -&self.ty };
        DeckMap {
            flip: self.flip,
            tx: -&self.tx,
            ty,
        }
    }

    /// Index `(i, j)` of the tile this map carries the fundamental rectangle onto.
    pub fn tile_index(&self, s: &Surface) -> (i64, i64) {
        let two = Q::from_integer(2.into());
        let c = self.apply(&Point::new(&s.width / &two, &s.height / &two));
        tile_of(s, &c)
    }
}

fn floor_div(a: &Q, b: &Q) -> i64 {
    (a / b).floor().to_integer().to_i64().expect("tile index fits in i64")
}

/// Tile `(i, j)` containing a cover point that is not on a tile boundary.
pub fn tile_of(s: &Surface, p: &Point) -> (i64, i64) {
    (floor_div(&p.x, &s.width), floor_div(&p.y, &s.height))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoverError {
    #[error("window {window} too small: edge {edge} reaches tile ({i}, {j})")]
    WindowTooSmall {
        edge: usize,
        window: i64,
        i: i64,
        j: i64,
    },
    #[error("window must be at least 1")]
    BadWindow,
    #[error("arc join of edge {0} is not a side transit")]
    BadJoin(usize),
    #[error("lifted curves overlap along a segment")]
    Overlap,
    #[error("cover path touches a tile corner or runs along a tile side")]
    Degenerate,
}

/// A segment of a lifted edge curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedSegment {
    pub edge: usize,
    pub tile: (i64, i64),
    pub segment: Segment,
}

/// Tile transformations of each arc of edge `e`, starting from the identity.
pub fn arc_maps(d: &Drawing, e: usize) -> Result<Vec<DeckMap>, CoverError> {
    let s = &d.surface;
    let curve = &d.edges[e];
    let mut maps = vec![DeckMap::identity()];
    for t in 0..curve.arcs.len() - 1 {
        let end = curve.arcs[t].last().unwrap();
        let sides = s.sides_of(end);
        if sides.len() != 1 {
            return Err(CoverError::BadJoin(e));
        }
        let next = maps[t].compose(&DeckMap::across(s, sides[0]));
        maps.push(next);
    }
    Ok(maps)
}

/// Lifts every edge into the plane, each starting in the central tile.
///
/// Segments are labelled by edge and by the tile containing them.
pub fn unroll_to_cover(d: &Drawing, window: i64) -> Result<Vec<LiftedSegment>, CoverError> {
    if window < 1 {
        return Err(CoverError::BadWindow);
    }
    let mut out = Vec::new();
    for (e, curve) in d.edges.iter().enumerate() {
        let maps = arc_maps(d, e)?;
        for (arc, m) in curve.arcs.iter().zip(&maps) {
            let (i, j) = m.tile_index(&d.surface);
            if i.abs() > window || j.abs() > window {
                return Err(CoverError::WindowTooSmall { edge: e, window, i, j });
            }
            for w in arc.windows(2) {
                if let Some(seg) = Segment::new(m.apply(&w[0]), m.apply(&w[1])) {
                    out.push(LiftedSegment {
                        edge: e,
                        tile: (i, j),
                        segment: seg,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The lift of edge `e` as one polyline in the plane.
pub fn lift_polyline(d: &Drawing, e: usize) -> Result<Vec<Point>, CoverError> {
    let maps = arc_maps(d, e)?;
    let mut pts: Vec<Point> = Vec::new();
    for (arc, m) in d.edges[e].arcs.iter().zip(&maps) {
        for p in arc {
            let q = m.apply(p);
            if pts.last() != Some(&q) {
                pts.push(q);
            }
        }
    }
    Ok(pts)
}

fn bbox(pts: &[Point]) -> (Q, Q, Q, Q) {
    let mut x0 = pts[0].x.clone();
    let mut x1 = x0.clone();
    let mut y0 = pts[0].y.clone();
    let mut y1 = y0.clone();
    for p in &pts[1..] {
        if p.x < x0 {
            x0 = p.x.clone();
        }
        if p.x > x1 {
            x1 = p.x.clone();
        }
        if p.y < y0 {
            y0 = p.y.clone();
        }
        if p.y > y1 {
            y1 = p.y.clone();
        }
    }
    (x0, x1, y0, y1)
}

/// Pairwise crossing counts from the universal cover.
///
/// Each edge is lifted once, translated by every deck transformation of the
/// `(2k+1) x (2k+1)` window with `k = max transits + 1`, and lifts meeting the fundamental
/// rectangle are intersected pairwise. Intersection points in the half-open rectangle
/// `[0,W) x [0,H)` are counted, except common endpoints (shared vertices).
pub fn cover_crossing_counts(d: &Drawing) -> Result<BTreeMap<(usize, usize), usize>, CoverError> {
    let s = &d.surface;
    let k = d.edges.iter().map(|e| e.transits()).max().unwrap_or(0) as i64 + 1;
    let mut lifts: Vec<Vec<Vec<Point>>> = Vec::new();
    for e in 0..d.edges.len() {
        let base = lift_polyline(d, e)?;
        let mut mine = Vec::new();
        for i in -k..=k {
            for j in -k..=k {
                let m = DeckMap::tile(s, i, j);
                let pts: Vec<Point> = base.iter().map(|p| m.apply(p)).collect();
                let (x0, x1, y0, y1) = bbox(&pts);
                if x1.is_negative() || x0 > s.width || y1.is_negative() || y0 > s.height {
                    continue;
                }
                mine.push(pts);
            }
        }
        lifts.push(mine);
    }
    let inside = |p: &Point| {
        !p.x.is_negative() && p.x < s.width && !p.y.is_negative() && p.y < s.height
    };
    let mut counts = BTreeMap::new();
    for e in 0..d.edges.len() {
        for f in e + 1..d.edges.len() {
            let mut total = 0;
            for le in &lifts[e] {
                for lf in &lifts[f] {
                    let ends: BTreeSet<&Point> =
                        [&le[0], le.last().unwrap()].into_iter().collect();
                    let mut hits = BTreeSet::new();
                    for a in le.windows(2) {
                        let sa = Segment::new(a[0].clone(), a[1].clone()).ok_or(CoverError::Degenerate)?;
                        for b in lf.windows(2) {
                            let sb = Segment::new(b[0].clone(), b[1].clone()).ok_or(CoverError::Degenerate)?;
                            match seg_intersect(&sa, &sb) {
                                Intersection::None => {}
                                Intersection::Degenerate => return Err(CoverError::Overlap),
                                Intersection::Point(m) => {
                                    let shared = ends.contains(&m)
                                        && (m == lf[0] || m == *lf.last().unwrap());
                                    if inside(&m) && !shared {
                                        hits.insert(m);
                                    }
                                }
                            }
                        }
                    }
                    total += hits.len();
                }
            }
            counts.insert((e, f), total);
        }
    }
    Ok(counts)
}

/// Folds a polyline in the cover, starting in the fundamental rectangle, into arcs.
///
/// The path is cut where it crosses tile sides; each piece is mapped back into the
/// rectangle. Fails when the path passes through a tile corner, runs along a tile side,
/// or touches a side without crossing it.
pub fn fold(s: &Surface, path: &[Point]) -> Result<Vec<Vec<Point>>, CoverError> {
    let mut pieces: Vec<((i64, i64), Vec<Point>)> = Vec::new();
    for w in path.windows(2) {
        let (p, q) = (&w[0], &w[1]);
        let seg = Segment::new(p.clone(), q.clone()).ok_or(CoverError::Degenerate)?;
        let d = seg.direction();
        let mut cuts: Vec<Q> = Vec::new();
        for (a, b, step, da) in [(&p.x, &q.x, &s.width, &d.x), (&p.y, &q.y, &s.height, &d.y)] {
            if da.is_zero() {
                if (a / step).is_integer() {
                    return Err(CoverError::Degenerate);
                }
                continue;
            }
            let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
            let mut n = (lo / step).ceil();
            while &(&n * step) <= hi {
                let t = (&n * step - a) / da;
                if t > Q::zero() && t < Q::one() {
                    cuts.push(t);
                }
                n += Q::one();
            }
        }
        cuts.sort();
        let before = cuts.len();
        cuts.dedup();
        if cuts.len() != before {
            return Err(CoverError::Degenerate);
        }
        let mut ts = vec![Q::zero()];
        ts.extend(cuts);
        ts.push(Q::one());
        for w2 in ts.windows(2) {
            let a = p.lerp(q, &w2[0]);
            let b = p.lerp(q, &w2[1]);
            let mid = a.midpoint(&b);
            let tile = tile_of(s, &mid);
            match pieces.last_mut() {
                Some((t, pts)) if *t == tile => pts.push(b),
                _ => pieces.push((tile, vec![a, b])),
            }
        }
    }
    let mut arcs = Vec::new();
    for ((i, j), pts) in &pieces {
        let back = DeckMap::tile(s, *i, *j).inverse();
        arcs.push(pts.iter().map(|p| back.apply(p)).collect::<Vec<_>>());
    }
    Ok(arcs)
}
