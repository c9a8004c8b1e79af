//! Curves given in polar coordinates, `ρ = ρ(φ)` about the origin.
//!
//! Polar curves are the one representation that may be nonconvex; they exist
//! to exercise the quadrature formulas on the cardioid, where the convexity
//! hypothesis of the main inequality fails.

use std::fmt;
use std::sync::Arc;

type RadialFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A piecewise-smooth closed curve `φ ↦ ρ(φ) (cos φ, sin φ)`, `φ ∈ [0, 2π]`.
///
/// The radial derivative is carried explicitly because arc-length integrands
/// need `ρ'` at quadrature accuracy; finite differences would dominate the
/// error budget of the adaptive integrator.
#[derive(Clone)]
pub struct PolarCurve {
    rho: RadialFn,
    drho: RadialFn,
    /// Whether the enclosed region is expected to be convex (used only for
    /// reporting; the quadrature does not rely on it).
    pub convex_expected: bool,
}

impl fmt::Debug for PolarCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PolarCurve")
            .field("convex_expected", &self.convex_expected)
            .finish_non_exhaustive()
    }
}

impl PolarCurve {
    /// Wrap `ρ` and its derivative. Panics if `ρ` is negative on a coarse
    /// sample or fails to close up (`ρ(0) ≠ ρ(2π)`).
    pub fn new(
        rho: impl Fn(f64) -> f64 + Send + Sync + 'static,
        drho: impl Fn(f64) -> f64 + Send + Sync + 'static,
        convex_expected: bool,
    ) -> Self {
        let curve = PolarCurve {
            rho: Arc::new(rho),
            drho: Arc::new(drho),
            convex_expected,
        };
        for j in 0..=256 {
            let phi = std::f64::consts::TAU * j as f64 / 256.0;
            let r = curve.rho(phi);
            assert!(r >= 0.0 && r.is_finite(), "rho must be finite and >= 0");
        }
        assert!(
            (curve.rho(0.0) - curve.rho(std::f64::consts::TAU)).abs() <= 1e-12,
            "curve must close up: rho(0) = rho(2π)"
        );
        curve
    }

    #[inline]
    pub fn rho(&self, phi: f64) -> f64 {
        (self.rho)(phi)
    }

    #[inline]
    pub fn drho(&self, phi: f64) -> f64 {
        (self.drho)(phi)
    }

    /// Circle of radius `r` centered at the origin.
    pub fn circle(r: f64) -> Self {
        assert!(r > 0.0);
        PolarCurve::new(move |_| r, |_| 0.0, true)
    }

    /// The cardioid `ρ = 1 − cos φ`, cusp at `φ = 0`.
    pub fn cardioid() -> Self {
        PolarCurve::new(|phi| 1.0 - phi.cos(), |phi| phi.sin(), false)
    }

    /// Ellipse with semi-axes `(a, b)` centered at the origin.
    pub fn ellipse(a: f64, b: f64) -> Self {
        assert!(a > 0.0 && b > 0.0);
        let rho = move |phi: f64| {
            let (s, c) = phi.sin_cos();
            a * b / (b * b * c * c + a * a * s * s).sqrt()
        };
        let drho = move |phi: f64| {
            let (s, c) = phi.sin_cos();
            let q = b * b * c * c + a * a * s * s;
            a * b * (b * b - a * a) * s * c / q.powf(1.5)
        };
        PolarCurve::new(rho, drho, true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cardioid_closes_and_vanishes_at_cusp() {
        let c = PolarCurve::cardioid();
        assert_eq!(c.rho(0.0), 0.0);
        assert!((c.rho(std::f64::consts::PI) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn ellipse_derivative_matches_finite_difference() {
        let e = PolarCurve::ellipse(1.1, 0.9);
        for j in 1..16 {
            let phi = 0.4 * j as f64;
            let fd = (e.rho(phi + 1e-6) - e.rho(phi - 1e-6)) / 2e-6;
            assert!((e.drho(phi) - fd).abs() < 1e-8);
        }
    }
}
