//! 2D convex bodies encoded by a truncated Fourier support function.

use nalgebra::{Point2, Vector2};

use super::BodyError;

/// Number of uniform sample angles used for validation and for all
/// trapezoid quadratures on support functions. Integrands are trigonometric
/// polynomials of degree well below the Nyquist limit, so the trapezoid rule
/// is exact up to rounding.
pub const GRID: usize = 4096;

/// Default Fourier truncation for bodies fitted from a smooth support
/// function.
pub const DEFAULT_MODES: usize = 64;

/// Convex body given by its support function
/// `h(θ) = a0 + Σ_k (a_k cos kθ + b_k sin kθ)`.
///
/// `h(θ)` is the distance from the origin to the tangent line with outer
/// normal `(cos θ, sin θ)`; validity requires `h > 0` (origin interior) and
/// `h + h'' > 0` (strict convexity) at all sample angles. Derivatives are
/// evaluated by exact Fourier differentiation, never finite differences.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportBody2 {
    a0: f64,
    coeffs: Vec<(f64, f64)>,
}

/// Validated constructor; `coeffs[k-1] = (a_k, b_k)`.
pub fn support_body(a0: f64, coeffs: Vec<(f64, f64)>) -> Result<SupportBody2, BodyError> {
    if !a0.is_finite() || coeffs.iter().any(|(a, b)| !a.is_finite() || !b.is_finite()) {
        return Err(BodyError::NonFiniteCoordinate);
    }
    let body = SupportBody2 { a0, coeffs };
    for j in 0..GRID {
        let theta = body.theta(j);
        let h = body.h_at(theta);
        let curv = h + body.d2h_at(theta);
        if !(h > 0.0) {
            return Err(BodyError::NotPositive(h, theta));
        }
        if !(curv > 0.0) {
            return Err(BodyError::NotConvex(curv, theta));
        }
    }
    Ok(body)
}

impl SupportBody2 {
    pub fn a0(&self) -> f64 {
        self.a0
    }

    pub fn coeffs(&self) -> &[(f64, f64)] {
        &self.coeffs
    }

    /// Number of retained Fourier modes (k = 1..=modes).
    pub fn modes(&self) -> usize {
        self.coeffs.len()
    }

    #[inline]
    pub fn theta(&self, j: usize) -> f64 {
        std::f64::consts::TAU * j as f64 / GRID as f64
    }

    pub fn h_at(&self, theta: f64) -> f64 {
        let mut h = self.a0;
        for (k, (a, b)) in self.coeffs.iter().enumerate() {
            let kt = (k + 1) as f64 * theta;
            h += a * kt.cos() + b * kt.sin();
        }
        h
    }

    pub fn dh_at(&self, theta: f64) -> f64 {
        let mut d = 0.0;
        for (k, (a, b)) in self.coeffs.iter().enumerate() {
            let kf = (k + 1) as f64;
            let kt = kf * theta;
            d += kf * (-a * kt.sin() + b * kt.cos());
        }
        d
    }

    pub fn d2h_at(&self, theta: f64) -> f64 {
        let mut d = 0.0;
        for (k, (a, b)) in self.coeffs.iter().enumerate() {
            let kf = (k + 1) as f64;
            let kt = kf * theta;
            d -= kf * kf * (a * kt.cos() + b * kt.sin());
        }
        d
    }

    /// Boundary point with outer normal angle `theta` (the envelope of the
    /// tangent-line family).
    pub fn boundary_point(&self, theta: f64) -> Point2<f64> {
        let (s, c) = theta.sin_cos();
        let h = self.h_at(theta);
        let dh = self.dh_at(theta);
        Point2::new(h * c - dh * s, h * s + dh * c)
    }

    /// `h`, `h'` and `h''` tabulated on the uniform `GRID`-point angle grid.
    pub fn sample_grid(&self) -> SupportSamples {
        let mut s = SupportSamples {
            theta: Vec::with_capacity(GRID),
            h: Vec::with_capacity(GRID),
            dh: Vec::with_capacity(GRID),
            d2h: Vec::with_capacity(GRID),
        };
        for j in 0..GRID {
            let t = self.theta(j);
            s.theta.push(t);
            s.h.push(self.h_at(t));
            s.dh.push(self.dh_at(t));
            s.d2h.push(self.d2h_at(t));
        }
        s
    }

    /// Translating a body shifts its support function by `t · (cos θ, sin θ)`,
    /// i.e. only the mode-1 coefficients change.
    pub fn translated(&self, t: Vector2<f64>) -> SupportBody2 {
        let mut coeffs = self.coeffs.clone();
        if coeffs.is_empty() {
            coeffs.push((0.0, 0.0));
        }
        coeffs[0].0 += t.x;
        coeffs[0].1 += t.y;
        SupportBody2 {
            a0: self.a0,
            coeffs,
        }
    }

    pub fn scaled(&self, s: f64) -> SupportBody2 {
        assert!(s > 0.0);
        SupportBody2 {
            a0: self.a0 * s,
            coeffs: self.coeffs.iter().map(|&(a, b)| (a * s, b * s)).collect(),
        }
    }

    /// Exact boundary barycenter via trapezoid quadrature of
    /// `x(θ) (h + h'') dθ`.
    pub fn boundary_barycenter(&self) -> Point2<f64> {
        let dt = std::f64::consts::TAU / GRID as f64;
        let mut m = Vector2::zeros();
        let mut per = 0.0;
        for j in 0..GRID {
            let t = self.theta(j);
            let ds = self.h_at(t) + self.d2h_at(t);
            m += self.boundary_point(t).coords * (ds * dt);
            per += ds * dt;
        }
        Point2::from(m / per)
    }

    /// Largest boundary distance from the origin and its location: coarse
    /// grid argmax of `|x(θ)|² = h² + h'²` refined by golden-section search.
    pub fn r_max(&self) -> (f64, Point2<f64>) {
        let radius2 = |t: f64| {
            let h = self.h_at(t);
            let dh = self.dh_at(t);
            h * h + dh * dh
        };
        let mut best_j = 0;
        let mut best = f64::NEG_INFINITY;
        for j in 0..GRID {
            let v = radius2(self.theta(j));
            if v > best {
                best = v;
                best_j = j;
            }
        }
        let dt = std::f64::consts::TAU / GRID as f64;
        let mut lo = self.theta(best_j) - dt;
        let mut hi = self.theta(best_j) + dt;
        let inv_phi = 0.5 * (5.0_f64.sqrt() - 1.0);
        let mut x1 = hi - inv_phi * (hi - lo);
        let mut x2 = lo + inv_phi * (hi - lo);
        let mut f1 = radius2(x1);
        let mut f2 = radius2(x2);
        for _ in 0..80 {
            if f1 < f2 {
                lo = x1;
                x1 = x2;
                f1 = f2;
                x2 = lo + inv_phi * (hi - lo);
                f2 = radius2(x2);
            } else {
                hi = x2;
                x2 = x1;
                f2 = f1;
                x1 = hi - inv_phi * (hi - lo);
                f1 = radius2(x1);
            }
        }
        let t_star = 0.5 * (lo + hi);
        let x = self.boundary_point(t_star);
        (x.coords.norm(), x)
    }

    /// Sample the boundary at `n` uniform normal angles into a convex polygon.
    pub fn to_polygon(&self, n: usize) -> Result<super::Polygon2, BodyError> {
        let verts = (0..n)
            .map(|j| self.boundary_point(std::f64::consts::TAU * j as f64 / n as f64))
            .collect();
        super::Polygon2::new(verts)
    }

    /// Project a smooth periodic support function onto the first `modes`
    /// Fourier modes (discrete projection on the validation grid) and
    /// validate the result.
    pub fn fit(f: impl Fn(f64) -> f64, modes: usize) -> Result<SupportBody2, BodyError> {
        let n = GRID;
        let vals: Vec<f64> = (0..n)
            .map(|j| f(std::f64::consts::TAU * j as f64 / n as f64))
            .collect();
        let a0 = vals.iter().sum::<f64>() / n as f64;
        let mut coeffs = Vec::with_capacity(modes);
        for k in 1..=modes {
            let mut a = 0.0;
            let mut b = 0.0;
            for (j, v) in vals.iter().enumerate() {
                let kt = k as f64 * std::f64::consts::TAU * j as f64 / n as f64;
                a += v * kt.cos();
                b += v * kt.sin();
            }
            coeffs.push((2.0 * a / n as f64, 2.0 * b / n as f64));
        }
        support_body(a0, coeffs)
    }
}

/// Tabulated support data on the uniform angle grid.
pub struct SupportSamples {
    pub theta: Vec<f64>,
    pub h: Vec<f64>,
    pub dh: Vec<f64>,
    pub d2h: Vec<f64>,
}
