//! Seeded random drawings for cross-checking the crossing counters.
//!
//! Each edge is drawn as a polyline in the universal cover from a vertex to a lift of the
//! other endpoint, folded into arcs, and kept only if the drawing stays valid.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cover::{fold, DeckMap};
use crate::drawing::{Drawing, EdgeCurve, VertexId};
use crate::geometry::{Point, Q};
use crate::surface::{Surface, SurfaceKind};
use crate::validate::validate;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenParams {
    pub max_edges: usize,
    pub max_transits: usize,
    pub max_bends: usize,
    /// Coordinates are multiples of `1 / denominator`.
    pub denominator: i64,
    pub attempts_per_edge: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams { max_edges: 12, max_transits: 3, max_bends: 2, denominator: 64, attempts_per_edge: 20 }
    }
}

fn coord(rng: &mut ChaCha8Rng, lo: i64, hi: i64, den: i64) -> Q {
    Q::new(BigInt::from(rng.gen_range(lo * den + 1..hi * den)), BigInt::from(den))
}

/// A random valid drawing on the given surface.
pub fn random_drawing(seed: u64, kind: SurfaceKind, params: &GenParams) -> Drawing {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (w, h) = (rng.gen_range(2..=6i64), rng.gen_range(2..=6i64));
    let surface = Surface::new(kind, Q::from_integer(w.into()), Q::from_integer(h.into())).expect("positive size");
    let den = params.denominator;
    let m = rng.gen_range(1..=4u32);
    let n = rng.gen_range(1..=4u32);
    let mut vertices = BTreeMap::new();
    for v in (1..=m).map(VertexId::a).chain((1..=n).map(VertexId::b)) {
        loop {
            let p = Point::new(coord(&mut rng, 0, w, den), coord(&mut rng, 0, h, den));
            if !vertices.values().any(|x| *x == p) {
                vertices.insert(v, p);
                break;
            }
        }
    }
    let mut d = Drawing { surface, vertices, edges: Vec::new() };
    let target = rng.gen_range(1..=params.max_edges);
    let pairs: Vec<(VertexId, VertexId)> =
        (1..=m).flat_map(|i| (1..=n).map(move |j| (VertexId::a(i), VertexId::b(j)))).collect();
    for _ in 0..target {
        let (a, b) = pairs[rng.gen_range(0..pairs.len())];
        for _ in 0..params.attempts_per_edge {
            let Some(arcs) = random_curve(&mut rng, &d, a, b, params) else { continue };
            let curve = EdgeCurve { a, b, arcs };
            let alone = Drawing { surface: d.surface.clone(), vertices: d.vertices.clone(), edges: vec![curve.clone()] };
            if !validate(&alone).is_valid() {
                continue;
            }
            d.edges.push(curve);
            if validate(&d).is_valid() {
                break;
            }
            d.edges.pop();
        }
    }
    d.sort_edges();
    d
}

fn random_curve(rng: &mut ChaCha8Rng, d: &Drawing, a: VertexId, b: VertexId, params: &GenParams) -> Option<Vec<Vec<Point>>> {
    let s = &d.surface;
    let (w, h) = (s.width.to_integer(), s.height.to_integer());
    let (wi, hi) = (i64::try_from(&w).ok()?, i64::try_from(&h).ok()?);
    let (i, j) = (rng.gen_range(-1..=1i64), rng.gen_range(-1..=1i64));
    let target = DeckMap::tile(s, i, j).apply(&d.vertices[&b]);
    let mut path = vec![d.vertices[&a].clone()];
    for _ in 0..rng.gen_range(0..=params.max_bends) {
        path.push(Point::new(
            coord(rng, -wi, 2 * wi, params.denominator),
            coord(rng, -hi, 2 * hi, params.denominator),
        ));
    }
    path.push(target);
    let arcs = fold(s, &path).ok()?;
    (arcs.len() <= params.max_transits + 1).then_some(arcs)
}

/// `count` random drawings alternating between the torus and the Klein bottle.
pub fn random_drawings(seed: u64, count: usize, params: &GenParams) -> Vec<Drawing> {
    (0..count)
        .map(|k| {
            let kind = if k % 2 == 0 { SurfaceKind::Torus } else { SurfaceKind::Klein };
            random_drawing(seed.wrapping_mul(1_000_003).wrapping_add(k as u64), kind, params)
        })
        .collect()
}
