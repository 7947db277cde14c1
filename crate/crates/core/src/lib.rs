//! Exact verification and enumeration of graph drawings on the torus and the Klein bottle.
//!
//! Drawings are bipartite graphs whose edges are rational polylines in a rectangle with glued
//! sides. The crate validates such drawings, counts crossings, builds the star-crossing matrix
//! and searches it for the forbidden five-vertex pattern, computes the faces of the drawing on
//! the surface, and classifies crossing-free drawings of `K_{2,4}` on the torus up to
//! isomorphism.

pub mod arrangement;
pub mod cover;
pub mod crossing;
pub mod drawing;
pub mod embedding;
pub mod enumeration;
pub mod faces;
pub mod generate;
pub mod geometry;
pub mod surface;
pub mod validate;

pub use drawing::{parse_drawing, serialize_drawing, Drawing, EdgeCurve, Part, VertexId};
pub use geometry::{Point, Q};
pub use surface::{Side, Surface, SurfaceKind};
