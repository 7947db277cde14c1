//! Exact rational points, segments and planar predicates.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used for every coordinate.
pub type Q = BigRational;

/// Builds a rational from an integer.
pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Builds the rational `n/d`.
pub fn qf(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `p`, `p/q` or a finite decimal such as `2.5`.
pub fn parse_rational(s: &str) -> Option<Q> {
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.parse().ok()?;
        let d: BigInt = d.parse().ok()?;
        if d.is_zero() {
            return None;
        }
        return Some(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return None;
        }
        let neg = int.starts_with('-');
        let int_part: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            t => t.parse().ok()?,
        };
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_part: BigInt = frac.parse().ok()?;
        let mag = Q::new(int_part * &scale + frac_part, scale);
        return Some(if neg { -mag } else { mag });
    }
    s.parse::<BigInt>().ok().map(Q::from_integer)
}

/// Formats a rational in lowest terms as `p` or `p/q`.
pub fn format_rational(v: &Q) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// A point of the rational plane. Ordered lexicographically by `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Q,
    pub y: Q,
}

impl Point {
    pub fn new(x: Q, y: Q) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point { x: q(x), y: q(y) }
    }

    pub fn sub(&self, other: &Point) -> Vector {
        Vector {
            x: &self.x - &other.x,
            y: &self.y - &other.y,
        }
    }

    pub fn add(&self, v: &Vector) -> Point {
        Point {
            x: &self.x + &v.x,
            y: &self.y + &v.y,
        }
    }

    /// The point `self + t (other - self)`.
    pub fn lerp(&self, other: &Point, t: &Q) -> Point {
        Point {
            x: &self.x + t * (&other.x - &self.x),
            y: &self.y + t * (&other.y - &self.y),
        }
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        self.lerp(other, &qf(1, 2))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", format_rational(&self.x), format_rational(&self.y))
    }
}

/// A rational direction or displacement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector {
    pub x: Q,
    pub y: Q,
}

impl Vector {
    pub fn new(x: Q, y: Q) -> Self {
        Vector { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Vector { x: q(x), y: q(y) }
    }

    pub fn cross(&self, other: &Vector) -> Q {
        &self.x * &other.y - &self.y * &other.x
    }

    pub fn dot(&self, other: &Vector) -> Q {
        &self.x * &other.x + &self.y * &other.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    pub fn neg(&self) -> Vector {
        Vector {
            x: -&self.x,
            y: -&self.y,
        }
    }

    /// 0 for directions in the half-open upper half plane `[0, pi)`, 1 otherwise.
    fn half(&self) -> u8 {
        if self.y.is_positive() || (self.y.is_zero() && self.x.is_positive()) {
            0
        } else {
            1
        }
    }
}

/// Counter-clockwise angular order of nonzero directions starting at the positive x axis.
///
/// Compares by half plane, then by cross product; parallel directions compare equal.
pub fn angle_cmp(a: &Vector, b: &Vector) -> Ordering {
    a.half().cmp(&b.half()).then_with(|| {
        let c = a.cross(b);
        if c.is_positive() {
            Ordering::Less
        } else if c.is_negative() {
            Ordering::Greater
        } else {
            Ordering::Equal
        }
    })
}

/// Sign of `(q - p) x (r - p)`: +1 counter-clockwise, 0 collinear, -1 clockwise.
pub fn orient(p: &Point, q: &Point, r: &Point) -> i32 {
    let c = q.sub(p).cross(&r.sub(p));
    if c.is_positive() {
        1
    } else if c.is_negative() {
        -1
    } else {
        0
    }
}

/// A straight segment with distinct endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub p: Point,
    pub q: Point,
}

impl Segment {
    /// Returns `None` when the endpoints coincide.
    pub fn new(p: Point, q: Point) -> Option<Self> {
        if p == q {
            None
        } else {
            Some(Segment { p, q })
        }
    }

    pub fn direction(&self) -> Vector {
        self.q.sub(&self.p)
    }

    /// Parameter `t` with `p + t (q - p) = m`, for a point known to lie on the supporting line.
    pub fn param_of(&self, m: &Point) -> Q {
        let d = self.direction();
        if !d.x.is_zero() {
            (&m.x - &self.p.x) / &d.x
        } else {
            (&m.y - &self.p.y) / &d.y
        }
    }
}

/// Result of intersecting two segments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Intersection {
    None,
    Point(Point),
    Degenerate,
}

/// Exact intersection of two closed segments.
pub fn seg_intersect(s1: &Segment, s2: &Segment) -> Intersection {
    let u = s1.direction();
    let v = s2.direction();
    let w = s2.p.sub(&s1.p);
    let det = u.cross(&v);
    if det.is_zero() {
        if !u.cross(&w).is_zero() {
            return Intersection::None;
        }
        // Collinear: project onto s1's parameter line.
        let uu = u.dot(&u);
        let t0 = w.dot(&u) / &uu;
        let t1 = s2.q.sub(&s1.p).dot(&u) / &uu;
        let (lo, hi) = if t0 <= t1 { (t0, t1) } else { (t1, t0) };
        let start = if lo > Q::zero() { lo } else { Q::zero() };
        let end = if hi < Q::one() { hi } else { Q::one() };
        return match start.cmp(&end) {
            Ordering::Greater => Intersection::None,
            Ordering::Equal => Intersection::Point(s1.p.lerp(&s1.q, &start)),
            Ordering::Less => Intersection::Degenerate,
        };
    }
    let s = w.cross(&v) / &det;
    let t = w.cross(&u) / &det;
    let unit = Q::zero()..=Q::one();
    if unit.contains(&s) && unit.contains(&t) {
        Intersection::Point(s1.p.lerp(&s1.q, &s))
    } else {
        Intersection::None
    }
}

/// Position of a point relative to a segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OnSegment {
    Interior,
    Endpoint,
    Off,
}

pub fn point_on_segment(m: &Point, s: &Segment) -> OnSegment {
    if *m == s.p || *m == s.q {
        return OnSegment::Endpoint;
    }
    if orient(&s.p, &s.q, m) != 0 {
        return OnSegment::Off;
    }
    let t = s.param_of(m);
    if t > Q::zero() && t < Q::one() {
        OnSegment::Interior
    } else {
        OnSegment::Off
    }
}

/// Twice the signed area of a closed polygon (positive when counter-clockwise).
pub fn signed_area2(poly: &[Point]) -> Q {
    let mut acc = Q::zero();
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        acc += &a.x * &b.y - &b.x * &a.y;
    }
    acc
}

/// Winding number of a closed polygon around a point not on its boundary.
pub fn winding_number(poly: &[Point], m: &Point) -> i64 {
    let mut wn = 0;
    for i in 0..poly.len() {
        let a = &poly[i];
        let b = &poly[(i + 1) % poly.len()];
        if a.y <= m.y {
            if b.y > m.y && orient(a, b, m) > 0 {
                wn += 1;
            }
        } else if b.y <= m.y && orient(a, b, m) < 0 {
            wn -= 1;
        }
    }
    wn
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pt(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn seg(a: (i64, i64), b: (i64, i64)) -> Segment {
        Segment::new(pt(a.0, a.1), pt(b.0, b.1)).unwrap()
    }

    #[test]
    fn orient_examples() {
        assert_eq!(orient(&pt(0, 0), &pt(1, 0), &pt(0, 1)), 1);
        assert_eq!(orient(&pt(0, 0), &pt(1, 0), &pt(2, 0)), 0);
        assert_eq!(orient(&pt(0, 0), &pt(0, 1), &pt(1, 0)), -1);
    }

    #[test]
    fn intersect_examples() {
        assert_eq!(
            seg_intersect(&seg((0, 0), (2, 2)), &seg((0, 2), (2, 0))),
            Intersection::Point(pt(1, 1))
        );
        assert_eq!(
            seg_intersect(&seg((0, 0), (1, 0)), &seg((0, 1), (1, 1))),
            Intersection::None
        );
        assert_eq!(
            seg_intersect(&seg((0, 0), (2, 0)), &seg((1, 0), (3, 0))),
            Intersection::Degenerate
        );
    }

    #[test]
    fn collinear_touching_is_point() {
        assert_eq!(
            seg_intersect(&seg((0, 0), (1, 0)), &seg((1, 0), (3, 0))),
            Intersection::Point(pt(1, 0))
        );
        assert_eq!(
            seg_intersect(&seg((0, 0), (1, 0)), &seg((2, 0), (3, 0))),
            Intersection::None
        );
    }

    #[test]
    fn shared_endpoint_is_point() {
        assert_eq!(
            seg_intersect(&seg((0, 0), (1, 2)), &seg((0, 0), (3, 1))),
            Intersection::Point(pt(0, 0))
        );
    }

    #[test]
    fn on_segment_examples() {
        let s = seg((0, 0), (2, 2));
        assert_eq!(point_on_segment(&pt(1, 1), &s), OnSegment::Interior);
        assert_eq!(point_on_segment(&pt(0, 0), &s), OnSegment::Endpoint);
        assert_eq!(point_on_segment(&pt(2, 1), &s), OnSegment::Off);
        assert_eq!(point_on_segment(&pt(3, 3), &s), OnSegment::Off);
    }

    #[test]
    fn angle_order_is_counter_clockwise() {
        let mut dirs = vec![
            Vector::from_ints(0, -1),
            Vector::from_ints(-1, 0),
            Vector::from_ints(1, 1),
            Vector::from_ints(1, 0),
            Vector::from_ints(-1, -1),
            Vector::from_ints(0, 1),
        ];
        dirs.sort_by(angle_cmp);
        let expect = vec![
            Vector::from_ints(1, 0),
            Vector::from_ints(1, 1),
            Vector::from_ints(0, 1),
            Vector::from_ints(-1, 0),
            Vector::from_ints(-1, -1),
            Vector::from_ints(0, -1),
        ];
        assert_eq!(dirs, expect);
    }

    #[test]
    fn rationals_parse_and_format() {
        assert_eq!(parse_rational("2/4"), Some(qf(1, 2)));
        assert_eq!(parse_rational("-3"), Some(q(-3)));
        assert_eq!(parse_rational("2.5"), Some(qf(5, 2)));
        assert_eq!(parse_rational("-0.25"), Some(qf(-1, 4)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
        assert_eq!(format_rational(&qf(2, 4)), "1/2");
        assert_eq!(format_rational(&qf(-6, 3)), "-2");
    }

    #[test]
    fn winding_and_area() {
        let sq = vec![pt(0, 0), pt(2, 0), pt(2, 2), pt(0, 2)];
        assert_eq!(signed_area2(&sq), q(8));
        assert_eq!(winding_number(&sq, &pt(1, 1)), 1);
        assert_eq!(winding_number(&sq, &pt(3, 1)), 0);
    }
}
