//! Numerical toolkit for a family of isoperimetric and spectral inequalities on
//! convex bodies.
//!
//! The central object is the scale-invariant ratio
//! `lambda = W / (P * V^(2/n))`, where `V` is the volume, `P` the perimeter
//! (surface area in 3D) and `W = ∫_{∂Ω} |x|² dσ` the boundary momentum of a
//! convex body `Ω`. Balls centered at the origin minimize `lambda`, and the
//! crate provides exact functionals on polytopes, spectral functionals on
//! Fourier support functions, the constructive machinery that drives the
//! minimality proof (shape derivatives, inverse mean curvature flow in 2D,
//! hyperplane cropping), and a finite-element Steklov/Wentzell eigenvalue
//! solver used to verify the resulting spectral bounds.
//!
//! Modules:
//! - [`bodies`]: validated convex-body representations and JSON I/O,
//! - [`functionals`]: exact `V`, `P`, `W`, `lambda`, excess, Brock ratio,
//! - [`support2d`]: support-function formulas, the `πJ − LA` identity, the
//!   cardioid counterexample,
//! - [`flows`]: shape derivative and the 2D inverse mean curvature flow,
//! - [`cropping`]: hyperplane cuts and the first-order `Δλ` expansion,
//! - [`steklov`]: P1 finite elements, Dirichlet-to-Neumann reduction,
//!   Steklov/Wentzell spectra and the Weinstock-type verdicts.

// Negated comparisons are the NaN-rejecting form of the validation
// predicates; index loops run over several parallel sample tables at once.
#![allow(clippy::neg_cmp_op_on_partial_ord)]
#![allow(clippy::needless_range_loop)]

pub mod bodies;
pub mod cropping;
pub mod flows;
pub mod functionals;
pub mod quad;
pub mod steklov;
pub mod support2d;

pub use bodies::{Body, BodyError, Polygon2, PolarCurve, Polytope3, SupportBody2};
pub use functionals::FunctionalReport;

/// Volume of the unit ball in `R^n` (`n` = 2 or 3).
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        2 => std::f64::consts::PI,
        3 => 4.0 * std::f64::consts::PI / 3.0,
        _ => panic!("unit_ball_volume: only n = 2, 3 are supported"),
    }
}

/// Sharp lower bound `ω_n^{-2/n}` for `lambda` over convex bodies.
pub fn lambda_lower_bound(n: usize) -> f64 {
    unit_ball_volume(n).powf(-2.0 / n as f64)
}
