//! Deterministic constructors for the standard test shapes.

use nalgebra::Point2;

use super::{BodyError, Polygon2, SupportBody2};

/// Regular `k`-gon with the given inradius, centered at the origin.
///
/// Vertices sit at angles `π/k + 2πj/k`, so edge midpoints lie on the
/// coordinate axes; for `k = 4`, inradius 1 this is the square with corners
/// `(±1, ±1)` and the first vertex at `(1, 1)`.
pub fn regular_polygon_body(k: usize, inradius: f64) -> Polygon2 {
    assert!(k >= 3, "need at least 3 sides");
    assert!(inradius > 0.0);
    let alpha = std::f64::consts::PI / k as f64;
    let circumradius = inradius / alpha.cos();
    let verts = (0..k)
        .map(|j| {
            let t = alpha + 2.0 * alpha * j as f64;
            Point2::new(circumradius * t.cos(), circumradius * t.sin())
        })
        .collect();
    Polygon2::new(verts).expect("regular polygon is strictly convex")
}

/// Polygonal approximation of the axis-aligned ellipse with semi-axes
/// `(a, b)`: vertices at `(a cos t_j, b sin t_j)` for `n` uniform parameters.
pub fn ellipse_polygon(a: f64, b: f64, n: usize) -> Polygon2 {
    assert!(a > 0.0 && b > 0.0 && n >= 3);
    let verts = (0..n)
        .map(|j| {
            let t = std::f64::consts::TAU * j as f64 / n as f64;
            Point2::new(a * t.cos(), b * t.sin())
        })
        .collect();
    Polygon2::new(verts).expect("sampled ellipse is strictly convex")
}

/// Polygonal approximation of the centered disk of radius `r`.
pub fn disk_polygon(r: f64, n: usize) -> Polygon2 {
    ellipse_polygon(r, r, n)
}

/// Fourier support body of the axis-aligned ellipse with semi-axes `(a, b)`:
/// `h(θ) = sqrt(a² cos²θ + b² sin²θ)` projected onto `modes` modes.
///
/// The coefficients of this `h` decay geometrically at rate
/// `(max-min)/(max+min)`, so moderate aspect ratios are representable at the
/// default truncation; the constructor fails with `NotConvex` when the
/// truncation cannot resolve the flat ends.
pub fn ellipse_support(a: f64, b: f64, modes: usize) -> Result<SupportBody2, BodyError> {
    assert!(a > 0.0 && b > 0.0);
    SupportBody2::fit(
        move |t: f64| {
            let (s, c) = t.sin_cos();
            (a * a * c * c + b * b * s * s).sqrt()
        },
        modes,
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_is_regular_4gon() {
        let sq = regular_polygon_body(4, 1.0);
        assert_eq!(sq.len(), 4);
        let v0 = sq.vertices()[0];
        assert!((v0 - Point2::new(1.0, 1.0)).norm() < 1e-14);
        assert!((sq.area() - 4.0).abs() < 1e-13);
    }

    #[test]
    fn ellipse_support_matches_true_support_function() {
        let b = ellipse_support(1.1, 0.9, 64).unwrap();
        for j in 0..32 {
            let t = std::f64::consts::TAU * j as f64 / 32.0;
            let (s, c) = t.sin_cos();
            let exact = (1.1 * 1.1 * c * c + 0.9 * 0.9 * s * s).sqrt();
            assert!((b.h_at(t) - exact).abs() < 1e-10);
        }
    }

    #[test]
    fn flat_ellipse_still_fits() {
        // aspect 6.25, used as the negative-excess flow seed
        let b = ellipse_support(0.4, 2.5, 64).unwrap();
        let (r, _) = b.r_max();
        assert!((r - 2.5).abs() < 1e-6);
    }
}
