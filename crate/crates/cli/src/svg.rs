//! SVG 1.1 rendering of drawings.
//!
//! Geometry stays exact until emission; each coordinate is printed as the shortest decimal
//! within `1e-6` of its value.

use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use surfdraw::validate::validate;
use surfdraw::{Drawing, Part, Point, SurfaceKind, Q};

const MARGIN: i64 = 24;
const DEFAULT_SIDE: i64 = 480;

#[derive(Clone, Debug, PartialEq)]
pub struct RenderStyle {
    /// Pixels per unit; `None` fits the longest side to 480 pixels.
    pub scale: Option<f64>,
    pub arrows: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle { scale: None, arrows: true }
    }
}

/// Shortest decimal within `1e-6` of `v`.
pub fn decimal(v: &Q) -> String {
    let tol = BigRational::new(BigInt::from(1), BigInt::from(1_000_000));
    for k in 0..=6u32 {
        let p = BigInt::from(10).pow(k);
        let r = (v * BigRational::from_integer(p.clone())).round().to_integer();
        let approx = BigRational::new(r.clone(), p);
        if (&approx - v).abs() <= tol {
            if r.is_zero() {
                return "0".to_string();
            }
            let digits = r.abs().to_string();
            let sign = if r.is_negative() { "-" } else { "" };
            let k = k as usize;
            if k == 0 {
                return format!("{sign}{digits}");
            }
            let padded = format!("{digits:0>width$}", width = k + 1);
            let (int, frac) = padded.split_at(padded.len() - k);
            return format!("{sign}{int}.{frac}");
        }
    }
    unreachable!("rounding to six places is always within tolerance")
}

fn px(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

struct Frame {
    scale: Q,
    height: Q,
}

impl Frame {
    fn x(&self, p: &Point) -> Q {
        px(MARGIN) + &p.x * &self.scale
    }

    fn y(&self, p: &Point) -> Q {
        px(MARGIN) + (&self.height - &p.y) * &self.scale
    }

    fn xy(&self, p: &Point) -> String {
        format!("{},{}", decimal(&self.x(p)), decimal(&self.y(p)))
    }
}

/// A filled triangle centred at `(cx, cy)` pointing along the axis direction `(dx, dy)`.
fn arrowhead(out: &mut String, cx: &Q, cy: &Q, dx: i64, dy: i64) {
    let (len, half) = (px(5), px(4));
    let tip = (cx + &len * px(dx), cy + &len * px(dy));
    let back = (cx - &len * px(dx), cy - &len * px(dy));
    let l = (&back.0 + &half * px(-dy), &back.1 + &half * px(dx));
    let r = (&back.0 - &half * px(-dy), &back.1 - &half * px(dx));
    let _ = writeln!(
        out,
        "    <polygon points=\"{},{} {},{} {},{}\"/>",
        decimal(&tip.0),
        decimal(&tip.1),
        decimal(&l.0),
        decimal(&l.1),
        decimal(&r.0),
        decimal(&r.1)
    );
}

/// Renders a valid drawing as an SVG document.
pub fn render_svg(d: &Drawing, style: &RenderStyle) -> String {
    let s = &d.surface;
    let scale = match style.scale {
        Some(v) => Q::from_float(v).expect("finite scale"),
        None => px(DEFAULT_SIDE) / std::cmp::max(s.width.clone(), s.height.clone()),
    };
    let f = Frame { scale, height: s.height.clone() };
    let total_w = &s.width * &f.scale + px(2 * MARGIN);
    let total_h = &s.height * &f.scale + px(2 * MARGIN);
    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">",
        w = decimal(&total_w),
        h = decimal(&total_h)
    );
    let [c00, c10, c11, c01] = [
        Point::new(px(0), px(0)),
        Point::new(s.width.clone(), px(0)),
        Point::new(s.width.clone(), s.height.clone()),
        Point::new(px(0), s.height.clone()),
    ];
    out.push_str("  <g class=\"frame\" fill=\"none\" stroke=\"#444\" stroke-width=\"1.5\">\n");
    for (a, b, dashed) in [(&c00, &c10, false), (&c01, &c11, false), (&c00, &c01, true), (&c10, &c11, true)] {
        let _ = writeln!(
            out,
            "    <line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"{}/>",
            decimal(&f.x(a)),
            decimal(&f.y(a)),
            decimal(&f.x(b)),
            decimal(&f.y(b)),
            if dashed { " stroke-dasharray=\"4 3\"" } else { "" }
        );
    }
    out.push_str("  </g>\n");
    if style.arrows {
        out.push_str("  <g class=\"arrows\" fill=\"#444\">\n");
        let (mx, my) = ((&f.x(&c00) + &f.x(&c10)) / px(2), (&f.y(&c00) + &f.y(&c01)) / px(2));
        for y in [f.y(&c00), f.y(&c01)] {
            arrowhead(&mut out, &mx, &y, 1, 0);
        }
        let right_dir = if s.kind == SurfaceKind::Klein { 1 } else { -1 };
        for (x, dir) in [(f.x(&c00), -1), (f.x(&c10), right_dir)] {
            for off in [-6, 6] {
                arrowhead(&mut out, &x, &(&my + px(off)), 0, dir);
            }
        }
        out.push_str("  </g>\n");
    }
    if !d.edges.is_empty() {
        out.push_str("  <g class=\"edges\" fill=\"none\" stroke=\"#1f4e99\" stroke-width=\"1.5\">\n");
        for e in &d.edges {
            let _ = writeln!(out, "    <g class=\"edge\" id=\"{}-{}\">", e.a, e.b);
            for arc in &e.arcs {
                let pts: Vec<String> = arc.iter().map(|p| f.xy(p)).collect();
                let _ = writeln!(out, "      <polyline points=\"{}\"/>", pts.join(" "));
            }
            out.push_str("    </g>\n");
        }
        out.push_str("  </g>\n");
    }
    let crossings = validate(d).crossings;
    if !crossings.is_empty() {
        out.push_str("  <g class=\"crossings\" fill=\"none\" stroke=\"#c0392b\" stroke-width=\"1.5\">\n");
        for (p, e, g) in &crossings {
            let _ = writeln!(
                out,
                "    <circle class=\"crossing\" data-edges=\"{} {}\" cx=\"{}\" cy=\"{}\" r=\"5\"/>",
                d.edges[*e].label(),
                d.edges[*g].label(),
                decimal(&f.x(p)),
                decimal(&f.y(p))
            );
        }
        out.push_str("  </g>\n");
    }
    if !d.vertices.is_empty() {
        out.push_str("  <g class=\"vertices\" fill=\"#000\" font-family=\"sans-serif\" font-size=\"12\">\n");
        for (id, p) in &d.vertices {
            let _ = writeln!(out, "    <g class=\"vertex\" id=\"{id}\">");
            for r in s.representatives(p).expect("vertex inside rectangle") {
                let (x, y) = (f.x(&r), f.y(&r));
                match id.part {
                    Part::A => {
                        let _ = writeln!(out, "      <circle cx=\"{}\" cy=\"{}\" r=\"4\"/>", decimal(&x), decimal(&y));
                    }
                    Part::B => {
                        let _ = writeln!(
                            out,
                            "      <rect x=\"{}\" y=\"{}\" width=\"8\" height=\"8\"/>",
                            decimal(&(&x - px(4))),
                            decimal(&(&y - px(4)))
                        );
                    }
                }
            }
            let (x, y) = (f.x(p), f.y(p));
            let _ = writeln!(
                out,
                "      <text x=\"{}\" y=\"{}\">{id}</text>",
                decimal(&(&x + px(6))),
                decimal(&(&y - px(6)))
            );
            out.push_str("    </g>\n");
        }
        out.push_str("  </g>\n");
    }
    out.push_str("</svg>\n");
    out
}
