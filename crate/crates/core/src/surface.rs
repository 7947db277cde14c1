//! The torus and the Klein bottle as a rectangle with glued sides.

use std::fmt;

use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::geometry::{Point, Vector, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SurfaceKind {
    Torus,
    Klein,
}

impl SurfaceKind {
    pub fn name(self) -> &'static str {
        match self {
            SurfaceKind::Torus => "torus",
            SurfaceKind::Klein => "klein",
        }
    }
}

impl fmt::Display for SurfaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
    Top,
    Bottom,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::Bottom, Side::Right, Side::Top, Side::Left];

    pub fn opposite(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
            Side::Top => Side::Bottom,
            Side::Bottom => Side::Top,
        }
    }

    /// True for the left and right sides.
    pub fn is_vertical(self) -> bool {
        matches!(self, Side::Left | Side::Right)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurfaceError {
    #[error("rectangle dimensions must be positive")]
    NonPositiveDimension,
    #[error("point {0} lies outside the closed rectangle")]
    OutsideRectangle(Point),
    #[error("point {0} is not on the {1:?} side")]
    NotOnSide(Point, Side),
    #[error("zero direction vector")]
    ZeroVector,
}

/// A torus or Klein bottle presented as the rectangle `[0,W] x [0,H]`.
///
/// The horizontal sides are glued straight, `(x,0) ~ (x,H)`. The vertical sides are glued
/// straight on the torus, `(0,y) ~ (W,y)`, and reversed on the Klein bottle, `(0,y) ~ (W,H-y)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Surface {
    pub kind: SurfaceKind,
    pub width: Q,
    pub height: Q,
}

impl Surface {
    pub fn new(kind: SurfaceKind, width: Q, height: Q) -> Result<Self, SurfaceError> {
        if !width.is_positive() || !height.is_positive() {
            return Err(SurfaceError::NonPositiveDimension);
        }
        Ok(Surface {
            kind,
            width,
            height,
        })
    }

    /// Euler characteristic of the closed surface.
    pub fn euler_characteristic(&self) -> i64 {
        0
    }

    /// Determinant of the derivative of the gluing across `side`.
    pub fn gluing_determinant(&self, side: Side) -> i32 {
        match (self.kind, side.is_vertical()) {
            (SurfaceKind::Klein, true) => -1,
            _ => 1,
        }
    }

    pub fn contains(&self, p: &Point) -> bool {
        !p.x.is_negative() && p.x <= self.width && !p.y.is_negative() && p.y <= self.height
    }

    fn check(&self, p: &Point) -> Result<(), SurfaceError> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(SurfaceError::OutsideRectangle(p.clone()))
        }
    }

    pub fn on_side(&self, p: &Point, side: Side) -> bool {
        self.contains(p)
            && match side {
                Side::Left => p.x.is_zero(),
                Side::Right => p.x == self.width,
                Side::Bottom => p.y.is_zero(),
                Side::Top => p.y == self.height,
            }
    }

    /// Sides containing `p`, in `Side::ALL` order.
    pub fn sides_of(&self, p: &Point) -> Vec<Side> {
        Side::ALL
            .into_iter()
            .filter(|&s| self.on_side(p, s))
            .collect()
    }

    pub fn on_boundary(&self, p: &Point) -> bool {
        !self.sides_of(p).is_empty()
    }

    pub fn is_corner(&self, p: &Point) -> bool {
        self.sides_of(p).len() == 2
    }

    /// Canonical representative of the identification orbit of `p`.
    pub fn identify(&self, p: &Point) -> Result<Point, SurfaceError> {
        self.check(p)?;
        let mut x = p.x.clone();
        let mut y = p.y.clone();
        if x == self.width {
            x = Q::zero();
            if self.kind == SurfaceKind::Klein {
                y = &self.height - &y;
            }
        }
        if y == self.height {
            y = Q::zero();
        }
        if y.is_zero() && x.is_zero() {
            return Ok(Point::new(Q::zero(), Q::zero()));
        }
        Ok(Point::new(x, y))
    }

    /// The point identified with `p` on the side opposite to `side`.
    pub fn transit(&self, p: &Point, side: Side) -> Result<Point, SurfaceError> {
        if !self.on_side(p, side) {
            return Err(SurfaceError::NotOnSide(p.clone(), side));
        }
        let flip = self.kind == SurfaceKind::Klein;
        Ok(match side {
            Side::Left => Point::new(
                self.width.clone(),
                if flip { &self.height - &p.y } else { p.y.clone() },
            ),
            Side::Right => Point::new(
                Q::zero(),
                if flip { &self.height - &p.y } else { p.y.clone() },
            ),
            Side::Top => Point::new(p.x.clone(), Q::zero()),
            Side::Bottom => Point::new(p.x.clone(), self.height.clone()),
        })
    }

    /// Direction `d` carried across the gluing at `side`.
    pub fn transport_direction(&self, d: &Vector, side: Side) -> Result<Vector, SurfaceError> {
        if d.is_zero() {
            return Err(SurfaceError::ZeroVector);
        }
        Ok(if self.gluing_determinant(side) < 0 {
            Vector::new(d.x.clone(), -&d.y)
        } else {
            d.clone()
        })
    }

    /// Maps a direction at representative `rep` into the chart at the canonical representative.
    ///
    /// On the Klein bottle the points with `x = W` reach their canonical copy through the
    /// reversed gluing; everywhere else the charts agree.
    pub fn to_canonical_chart(&self, rep: &Point, d: &Vector) -> Vector {
        if self.kind == SurfaceKind::Klein && rep.x == self.width {
            Vector::new(d.x.clone(), -&d.y)
        } else {
            d.clone()
        }
    }

    /// Every point of the rectangle identified with `p`, sorted.
    pub fn representatives(&self, p: &Point) -> Result<Vec<Point>, SurfaceError> {
        self.check(p)?;
        let mut out = vec![p.clone()];
        let mut i = 0;
        while i < out.len() {
            let cur = out[i].clone();
            for side in self.sides_of(&cur) {
                let t = self.transit(&cur, side)?;
                if !out.contains(&t) {
                    out.push(t);
                }
            }
            i += 1;
        }
        out.sort();
        Ok(out)
    }

    /// The four corners of the rectangle.
    pub fn corners(&self) -> [Point; 4] {
        let (w, h) = (self.width.clone(), self.height.clone());
        [
            Point::new(Q::zero(), Q::zero()),
            Point::new(w.clone(), Q::zero()),
            Point::new(w, h.clone()),
            Point::new(Q::zero(), h),
        ]
    }
}
