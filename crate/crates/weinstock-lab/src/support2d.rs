//! Support-function formulas in the plane.
//!
//! For a convex body with support function `h(θ)` the perimeter, area and
//! boundary momentum reduce to one-dimensional integrals
//!
//! ```text
//! L = ∫ h dθ,   A = ½ ∫ (h² + h h'') dθ,   J = ∫ (h³ + ½ h² h'') dθ,
//! ```
//!
//! and splitting `h = L/2π + p` with `∫p = 0` turns the main inequality
//! (`n = 2`) into the pointwise-positive integral identity
//!
//! ```text
//! πJ − LA = π ∫ p² [ L/2π + ½(L/2π + p) + ½(L/2π + p + p'') ] dθ
//!         ≥ (L/2) ∫ p² dθ  ≥ 0,
//! ```
//!
//! with equality exactly when `p ≡ 0` (a centered disk). Convexity is what
//! makes the bracket positive; the cardioid (through [`polar_laj`]) shows the
//! gap `πJ − LA` goes negative without it.

use serde::Serialize;

use crate::bodies::support::GRID;
use crate::bodies::{PolarCurve, Polygon2, SupportBody2};
use crate::quad::{adaptive_simpson_periodic, QuadratureError};

/// Perimeter, area and boundary momentum of a planar body.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct LAJTriple {
    pub l: f64,
    pub a: f64,
    pub j: f64,
}

impl LAJTriple {
    /// The Weinstock combination `πJ − LA`, nonnegative for convex bodies.
    pub fn gap(&self) -> f64 {
        std::f64::consts::PI * self.j - self.l * self.a
    }
}

/// Boundary point of a support body at normal angle `theta` (envelope of the
/// tangent lines `x cos θ + y sin θ = h(θ)`).
pub fn boundary_point(body: &SupportBody2, theta: f64) -> nalgebra::Point2<f64> {
    body.boundary_point(theta)
}

/// `L`, `A`, `J` by trapezoid quadrature on the uniform grid, which is exact
/// here: the integrands are trigonometric polynomials of degree at most
/// `3 modes`, far below the grid Nyquist limit.
pub fn laj_from_support(body: &SupportBody2) -> LAJTriple {
    let dt = std::f64::consts::TAU / GRID as f64;
    let s = body.sample_grid();
    let (mut l, mut a, mut j) = (0.0, 0.0, 0.0);
    for i in 0..GRID {
        let (h, d2) = (s.h[i], s.d2h[i]);
        l += h;
        a += h * h + h * d2;
        j += h * h * h + 0.5 * h * h * d2;
    }
    LAJTriple {
        l: l * dt,
        a: 0.5 * a * dt,
        j: j * dt,
    }
}

/// The decomposition of `πJ − LA` into its pointwise-positive integral form.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct WeinstockGap {
    /// `πJ − LA`.
    pub gap: f64,
    /// The chain's lower bound `(L/2) ∫ p²`.
    pub lower_bound: f64,
    /// `∫ p² dθ`.
    pub p_square_integral: f64,
    /// `gap` minus the decomposed integral; vanishes up to rounding.
    pub identity_residual: f64,
}

/// Evaluate the gap, its positive decomposition and the identity residual
/// for one support body. `p''` comes from exact Fourier differentiation, so
/// the residual carries no truncation error.
pub fn weinstock_gap(body: &SupportBody2) -> WeinstockGap {
    let triple = laj_from_support(body);
    let dt = std::f64::consts::TAU / GRID as f64;
    let s = body.sample_grid();
    let mean = triple.l / std::f64::consts::TAU;
    let (mut p2, mut decomposed) = (0.0, 0.0);
    for i in 0..GRID {
        let p = s.h[i] - mean;
        let ppp = s.d2h[i]; // p'' = h'' since the mean is constant
        let bracket = mean + 0.5 * (mean + p) + 0.5 * (mean + p + ppp);
        p2 += p * p;
        decomposed += p * p * bracket;
    }
    p2 *= dt;
    decomposed *= std::f64::consts::PI * dt;
    let gap = triple.gap();
    WeinstockGap {
        gap,
        lower_bound: 0.5 * triple.l * p2,
        p_square_integral: p2,
        identity_residual: gap - decomposed,
    }
}

/// `L`, `A`, `J` of a polar curve by adaptive quadrature (default target
/// `1e-10`), with the boundary momentum taken about the boundary barycenter:
/// the `∫ x ds = 0` normalization under which the planar inequality is
/// stated. For centered symmetric curves this coincides with the raw moment.
pub fn polar_laj(curve: &PolarCurve, tol: f64) -> Result<LAJTriple, QuadratureError> {
    let ds = |phi: f64| {
        let r = curve.rho(phi);
        let dr = curve.drho(phi);
        (r * r + dr * dr).sqrt()
    };
    // Panels split at π so endpoint cusps (the cardioid's) sit on panel
    // boundaries where Simpson never straddles the kink.
    let breaks = [std::f64::consts::PI];
    let l = adaptive_simpson_periodic(&ds, &breaks, tol)?;
    let a = adaptive_simpson_periodic(&|phi| 0.5 * curve.rho(phi).powi(2), &breaks, tol)?;
    let j_raw = adaptive_simpson_periodic(&|phi| curve.rho(phi).powi(2) * ds(phi), &breaks, tol)?;
    let mx = adaptive_simpson_periodic(&|phi| curve.rho(phi) * phi.cos() * ds(phi), &breaks, tol)?;
    let my = adaptive_simpson_periodic(&|phi| curve.rho(phi) * phi.sin() * ds(phi), &breaks, tol)?;
    // W(Ω − c) = W(Ω) − L|c|² for the barycenter c = (∫x ds)/L.
    let j = j_raw - (mx * mx + my * my) / l;
    Ok(LAJTriple { l, a, j })
}

/// Regular `k`-gon with inradius 1: the vertex polygon together with the
/// closed forms `P = 2π tan α/α`, `V = π tan α/α`,
/// `W = (2π/α)(tan α + tan³α/3)`, `α = π/k`. The two representations agree
/// to rounding, which the tests pin at `1e-12` relative.
pub fn regular_polygon(k: usize) -> (Polygon2, LAJTriple) {
    let alpha = std::f64::consts::PI / k as f64;
    let t = alpha.tan();
    let poly = crate::bodies::regular_polygon_body(k, 1.0);
    let triple = LAJTriple {
        l: 2.0 * std::f64::consts::PI * t / alpha,
        a: std::f64::consts::PI * t / alpha,
        j: 2.0 * std::f64::consts::PI / alpha * (t + t * t * t / 3.0),
    };
    (poly, triple)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{support_body, Body};
    use crate::functionals;
    use std::f64::consts::PI;

    #[test]
    fn disk_triple() {
        let disk = support_body(2.0, vec![]).unwrap();
        let t = laj_from_support(&disk);
        assert!((t.l - 4.0 * PI).abs() < 1e-12);
        assert!((t.a - 4.0 * PI).abs() < 1e-12);
        assert!((t.j - 16.0 * PI).abs() < 1e-11);
        let g = weinstock_gap(&disk);
        assert!(g.gap.abs() < 1e-10);
        assert!(g.p_square_integral < 1e-20);
    }

    #[test]
    fn gap_identity_and_chain_for_perturbed_bodies() {
        for coeffs in [
            vec![(0.0, 0.0), (0.1, 0.0)],
            vec![(0.0, 0.0), (0.0, 0.0), (0.0, 0.05)],
            vec![(0.2, -0.1), (0.05, 0.08), (0.0, 0.02), (0.01, 0.0)],
        ] {
            let b = support_body(1.0, coeffs).unwrap();
            let g = weinstock_gap(&b);
            assert!(g.gap > 0.0);
            assert!(g.gap >= g.lower_bound);
            assert!(g.lower_bound > 0.0);
            assert!(g.identity_residual.abs() <= 1e-10 * g.gap.abs().max(1e-300));
        }
    }

    #[test]
    fn support_triple_matches_polygonization() {
        let b = support_body(1.0, vec![(0.0, 0.0), (0.1, 0.0)]).unwrap();
        let t = laj_from_support(&b);
        let poly = Body::Polygon2(b.to_polygon(4096).unwrap());
        let rel = |x: f64, y: f64| (x - y).abs() / y.abs();
        assert!(rel(functionals::perimeter(&poly), t.l) < 1e-6);
        assert!(rel(functionals::volume(&poly), t.a) < 1e-6);
        assert!(rel(functionals::boundary_momentum(&poly), t.j) < 1e-6);
    }

    #[test]
    fn circle_polar_triple() {
        let t = polar_laj(&PolarCurve::circle(1.0), 1e-10).unwrap();
        assert!((t.l - 2.0 * PI).abs() < 1e-9);
        assert!((t.a - PI).abs() < 1e-9);
        assert!((t.j - 2.0 * PI).abs() < 1e-9);
    }

    #[test]
    fn cardioid_gap_is_negative() {
        let t = polar_laj(&PolarCurve::cardioid(), 1e-10).unwrap();
        assert!((t.l - 8.0).abs() < 1e-9, "cardioid perimeter is 8");
        assert!((t.a - 1.5 * PI).abs() < 1e-9, "cardioid area is 3π/2");
        let expect = -4.0 * PI / 75.0;
        assert!(
            (t.gap() - expect).abs() < 1e-7,
            "gap {} vs {}",
            t.gap(),
            expect
        );
    }

    #[test]
    fn cardioid_against_fine_trapezoid_oracle() {
        // 10^7-point trapezoid on each raw integral; the integrands are
        // continuous with a kink only at the periodic endpoint.
        let c = PolarCurve::cardioid();
        let n = 10_000_000usize;
        let dphi = std::f64::consts::TAU / n as f64;
        let (mut l, mut a, mut j_raw, mut mx) = (0.0, 0.0, 0.0, 0.0);
        for i in 0..n {
            let phi = dphi * i as f64;
            let r = c.rho(phi);
            let ds = (r * r + c.drho(phi).powi(2)).sqrt();
            l += ds;
            a += 0.5 * r * r;
            j_raw += r * r * ds;
            mx += r * phi.cos() * ds;
        }
        l *= dphi;
        a *= dphi;
        j_raw *= dphi;
        mx *= dphi;
        let j = j_raw - mx * mx / l;
        let t = polar_laj(&c, 1e-10).unwrap();
        assert!((t.l - l).abs() < 1e-8);
        assert!((t.a - a).abs() < 1e-8);
        assert!((t.j - j).abs() < 1e-7);
        // closed forms: L = 8, A = 3π/2, J_raw = 256/15, x̄ = −4/5
        assert!((j - 896.0 / 75.0).abs() < 1e-7);
    }

    #[test]
    fn convex_polar_ellipse_has_positive_gap() {
        let t = polar_laj(&PolarCurve::ellipse(1.1, 0.9), 1e-10).unwrap();
        assert!(t.gap() > 0.0);
    }

    #[test]
    fn regular_polygon_closed_forms_match_vertex_polygon() {
        for k in [3usize, 4, 5, 17, 64] {
            let (poly, closed) = regular_polygon(k);
            let body = Body::Polygon2(poly);
            assert!((functionals::perimeter(&body) - closed.l).abs() <= 1e-12 * closed.l);
            assert!((functionals::volume(&body) - closed.a).abs() <= 1e-12 * closed.a);
            assert!(
                (functionals::boundary_momentum(&body) - closed.j).abs() <= 1e-12 * closed.j
            );
        }
        // k = 4: P = 8, V = 4, W = 32/3; k = 3: P = 6√3, V = 3√3
        let (_, sq) = regular_polygon(4);
        assert!((sq.l - 8.0).abs() < 1e-12);
        assert!((sq.a - 4.0).abs() < 1e-12);
        assert!((sq.j - 32.0 / 3.0).abs() < 1e-12);
        let (_, tri) = regular_polygon(3);
        assert!((tri.l - 6.0 * 3.0_f64.sqrt()).abs() < 1e-12);
        assert!((tri.a - 3.0 * 3.0_f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn polygon_lambda_tends_to_disk_value() {
        let (poly, _) = regular_polygon(10_000);
        let lam = functionals::lambda(&Body::Polygon2(poly));
        assert!((lam - 1.0 / PI).abs() < 1e-6);
    }
}
