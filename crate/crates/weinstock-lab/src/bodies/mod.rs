//! Validated representations of convex bodies.
//!
//! Three kinds of bodies are supported: exact convex polygons ([`Polygon2`]),
//! triangulated convex polytopes ([`Polytope3`]) and 2D bodies encoded by a
//! truncated Fourier support function ([`SupportBody2`]). A fourth type,
//! [`PolarCurve`], represents a (possibly nonconvex) curve `ρ(φ)` in polar
//! coordinates and only feeds the quadrature routines in
//! [`crate::support2d`].
//!
//! All types validate their invariants at construction and are immutable
//! afterwards; rigid motions return new bodies. Convexity tolerances are
//! relative to the body diameter so that validation is scale-free.

mod generate;
mod io;
mod polar;
mod polygon;
mod polytope;
mod shapes;
pub mod support;

pub use generate::{random_polygon2, random_polytope3, random_support_body};
pub use io::{body_from_json, body_to_json};
pub use polar::PolarCurve;
pub use polygon::{polygon_from_vertices, Polygon2};
pub use polytope::{hull3, Polytope3};
pub use shapes::{disk_polygon, ellipse_polygon, ellipse_support, regular_polygon_body};
pub use support::{support_body, SupportBody2};

use nalgebra::{Point2, Point3, Vector2, Vector3};
use thiserror::Error;

/// Relative tolerance for duplicate-vertex and collinearity checks.
pub(crate) const REL_TOL: f64 = 1e-12;

/// Relative tolerance for 3D hull and convexity validation.
pub(crate) const HULL_REL_TOL: f64 = 1e-9;

#[derive(Error, Debug, Clone, PartialEq)]
pub enum BodyError {
    #[error("a coordinate is NaN or infinite")]
    NonFiniteCoordinate,
    #[error("need at least 3 vertices, got {0}")]
    FewerThanThreeVertices(usize),
    #[error("convex hull degenerates to fewer than 3 vertices")]
    FewerThanThreeHullVertices,
    #[error("vertices {0} and {1} coincide within tolerance")]
    DuplicateVertex(usize, usize),
    #[error("three consecutive vertices around index {0} are collinear within tolerance")]
    CollinearVertices(usize),
    #[error("polygon is not convex (reflex turn at vertex {0})")]
    NotConvexPolygon(usize),
    #[error("vertices are not in counterclockwise order (signed area <= 0)")]
    NotCounterclockwise,
    #[error("input points are degenerate (coplanar or collinear within tolerance)")]
    DegenerateInput,
    #[error("surface is not closed: edge ({0}, {1}) is not shared by exactly two triangles")]
    NotClosed(usize, usize),
    #[error("face {0} is not oriented outward")]
    NotOutwardOriented(usize),
    #[error("vertex {vertex} lies outside the plane of face {face} by {excess:e}")]
    NotConvexPolytope {
        vertex: usize,
        face: usize,
        excess: f64,
    },
    #[error("support function violates convexity: h + h'' = {0:e} <= 0 at theta = {1}")]
    NotConvex(f64, f64),
    #[error("support function is not positive: h = {0:e} <= 0 at theta = {1}")]
    NotPositive(f64, f64),
    #[error("translation vector has dimension {got}, body lives in dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("malformed body JSON: {0}")]
    Json(String),
    #[error("internal hull construction failure: {0}")]
    HullConstruction(&'static str),
}

/// A convex body of any supported kind. This is the type accepted by the
/// functional, cropping and file I/O layers.
#[derive(Debug, Clone)]
pub enum Body {
    Polygon2(Polygon2),
    Polytope3(Polytope3),
    Support2(SupportBody2),
}

impl Body {
    /// Ambient dimension (2 or 3).
    pub fn dim(&self) -> usize {
        match self {
            Body::Polygon2(_) | Body::Support2(_) => 2,
            Body::Polytope3(_) => 3,
        }
    }

    /// Short kind tag used in file formats and CSV output.
    pub fn kind(&self) -> &'static str {
        match self {
            Body::Polygon2(_) => "polygon2",
            Body::Polytope3(_) => "polytope3",
            Body::Support2(_) => "support2",
        }
    }

    /// Translate by `t` (length must match the ambient dimension).
    ///
    /// Volume and perimeter are invariant; the boundary momentum generally
    /// changes.
    pub fn translated(&self, t: &[f64]) -> Result<Body, BodyError> {
        if t.len() != self.dim() {
            return Err(BodyError::DimensionMismatch {
                expected: self.dim(),
                got: t.len(),
            });
        }
        Ok(match self {
            Body::Polygon2(p) => Body::Polygon2(p.translated(Vector2::new(t[0], t[1]))),
            Body::Polytope3(p) => Body::Polytope3(p.translated(Vector3::new(t[0], t[1], t[2]))),
            Body::Support2(s) => Body::Support2(s.translated(Vector2::new(t[0], t[1]))),
        })
    }

    /// Uniform scaling by `s > 0` about the origin.
    pub fn scaled(&self, s: f64) -> Body {
        assert!(s > 0.0, "scale factor must be positive");
        match self {
            Body::Polygon2(p) => Body::Polygon2(p.scaled(s)),
            Body::Polytope3(p) => Body::Polytope3(p.scaled(s)),
            Body::Support2(b) => Body::Support2(b.scaled(s)),
        }
    }

    /// Barycenter of the boundary, `(1/P) ∫_{∂Ω} x dσ`, by exact per-facet
    /// quadrature. Returned as an `n`-vector.
    pub fn boundary_barycenter(&self) -> Vec<f64> {
        match self {
            Body::Polygon2(p) => {
                let c = p.boundary_barycenter();
                vec![c.x, c.y]
            }
            Body::Polytope3(p) => {
                let c = p.boundary_barycenter();
                vec![c.x, c.y, c.z]
            }
            Body::Support2(b) => {
                let c = b.boundary_barycenter();
                vec![c.x, c.y]
            }
        }
    }

    /// Translate so the boundary barycenter sits at the origin. This is the
    /// normalization under which the boundary momentum is minimal and the
    /// spectral test-function bounds apply.
    pub fn normalized(&self) -> Body {
        let c: Vec<f64> = self.boundary_barycenter().iter().map(|x| -x).collect();
        self.translated(&c).expect("dimension matches by construction")
    }
}

impl From<Polygon2> for Body {
    fn from(p: Polygon2) -> Self {
        Body::Polygon2(p)
    }
}

impl From<Polytope3> for Body {
    fn from(p: Polytope3) -> Self {
        Body::Polytope3(p)
    }
}

impl From<SupportBody2> for Body {
    fn from(b: SupportBody2) -> Self {
        Body::Support2(b)
    }
}

pub(crate) fn all_finite2(pts: &[Point2<f64>]) -> bool {
    pts.iter().all(|p| p.x.is_finite() && p.y.is_finite())
}

pub(crate) fn all_finite3(pts: &[Point3<f64>]) -> bool {
    pts.iter()
        .all(|p| p.x.is_finite() && p.y.is_finite() && p.z.is_finite())
}

pub(crate) fn bbox_diagonal2(pts: &[Point2<f64>]) -> f64 {
    let mut lo = Point2::new(f64::INFINITY, f64::INFINITY);
    let mut hi = Point2::new(f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        lo.x = lo.x.min(p.x);
        lo.y = lo.y.min(p.y);
        hi.x = hi.x.max(p.x);
        hi.y = hi.y.max(p.y);
    }
    (hi - lo).norm()
}

pub(crate) fn bbox_diagonal3(pts: &[Point3<f64>]) -> f64 {
    let mut lo = Point3::new(f64::INFINITY, f64::INFINITY, f64::INFINITY);
    let mut hi = Point3::new(f64::NEG_INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in pts {
        for i in 0..3 {
            lo[i] = lo[i].min(p[i]);
            hi[i] = hi[i].max(p[i]);
        }
    }
    (hi - lo).norm()
}
