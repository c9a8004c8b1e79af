//! Seeded random body generators for reproducible sweeps.
//!
//! The 2D generator is fixed as the convex hull of uniform points in the unit
//! disk; 3D mirrors it with uniform points in the unit ball. Callers pass the
//! RNG so one recorded seed drives a whole suite deterministically.

use nalgebra::{Point2, Point3};
use rand::Rng;

use super::{hull3, polygon_from_vertices, support_body, Polygon2, Polytope3, SupportBody2};

fn uniform_disk_point(rng: &mut impl Rng) -> Point2<f64> {
    loop {
        let x: f64 = rng.gen_range(-1.0..1.0);
        let y: f64 = rng.gen_range(-1.0..1.0);
        if x * x + y * y <= 1.0 {
            return Point2::new(x, y);
        }
    }
}

fn uniform_ball_point(rng: &mut impl Rng) -> Point3<f64> {
    loop {
        let x: f64 = rng.gen_range(-1.0..1.0);
        let y: f64 = rng.gen_range(-1.0..1.0);
        let z: f64 = rng.gen_range(-1.0..1.0);
        if x * x + y * y + z * z <= 1.0 {
            return Point3::new(x, y, z);
        }
    }
}

/// Convex hull of `n_points` uniform points in the unit disk. Degenerate
/// draws (hull below 3 vertices) are redrawn; they have probability zero and
/// only occur for adversarial RNGs.
pub fn random_polygon2(rng: &mut impl Rng, n_points: usize) -> Polygon2 {
    assert!(n_points >= 3);
    for _ in 0..64 {
        let pts: Vec<Point2<f64>> = (0..n_points).map(|_| uniform_disk_point(rng)).collect();
        if let Ok(p) = polygon_from_vertices(&pts) {
            return p;
        }
    }
    panic!("random_polygon2: could not draw a nondegenerate hull");
}

/// Convex hull of `n_points` uniform points in the unit ball.
pub fn random_polytope3(rng: &mut impl Rng, n_points: usize) -> Polytope3 {
    assert!(n_points >= 4);
    for _ in 0..64 {
        let pts: Vec<Point3<f64>> = (0..n_points).map(|_| uniform_ball_point(rng)).collect();
        if let Ok(p) = hull3(&pts) {
            return p;
        }
    }
    panic!("random_polytope3: could not draw a nondegenerate hull");
}

/// Random valid support body: `a0 = 1` and `modes` Fourier pairs drawn
/// uniformly, then rescaled so that `Σ k² (|a_k| + |b_k|) = strength < 1`,
/// which guarantees `h > 0` and `h + h'' > 0` without rejection.
pub fn random_support_body(rng: &mut impl Rng, modes: usize, strength: f64) -> SupportBody2 {
    assert!(modes >= 1);
    assert!((0.0..1.0).contains(&strength));
    let raw: Vec<(f64, f64)> = (0..modes)
        .map(|_| (rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let weight: f64 = raw
        .iter()
        .enumerate()
        .map(|(k, (a, b))| ((k + 1) * (k + 1)) as f64 * (a.abs() + b.abs()))
        .sum();
    let scale = if weight > 0.0 { strength / weight } else { 0.0 };
    let coeffs = raw.iter().map(|&(a, b)| (a * scale, b * scale)).collect();
    support_body(1.0, coeffs).expect("scaled coefficients are convex by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn generators_are_deterministic_for_fixed_seed() {
        let mut r1 = ChaCha8Rng::seed_from_u64(42);
        let mut r2 = ChaCha8Rng::seed_from_u64(42);
        let p1 = random_polygon2(&mut r1, 20);
        let p2 = random_polygon2(&mut r2, 20);
        assert_eq!(p1.vertices(), p2.vertices());

        let b1 = random_support_body(&mut r1, 8, 0.5);
        let b2 = random_support_body(&mut r2, 8, 0.5);
        assert_eq!(b1.coeffs(), b2.coeffs());
    }

    #[test]
    fn random_bodies_are_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let n = rng.gen_range(5..50);
            let _ = random_polygon2(&mut rng, n);
        }
        for _ in 0..5 {
            let n = rng.gen_range(10..60);
            let _ = random_polytope3(&mut rng, n);
        }
        for _ in 0..10 {
            let _ = random_support_body(&mut rng, 16, 0.8);
        }
    }
}
