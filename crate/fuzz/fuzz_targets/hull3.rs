#![no_main]
//! 3D quickhull from arbitrary point clouds: never panic, never hang, and a
//! returned hull is a watertight convex polytope containing its inputs.

use arbitrary::Arbitrary;
use libfuzzer_sys::fuzz_target;
use nalgebra::Point3;

use weinstock_lab::bodies::hull3;

#[derive(Arbitrary, Debug)]
struct Cloud {
    points: Vec<(f64, f64, f64)>,
}

fuzz_target!(|cloud: Cloud| {
    if cloud.points.len() > 256 {
        return;
    }
    let pts: Vec<Point3<f64>> = cloud
        .points
        .iter()
        .map(|&(x, y, z)| Point3::new(x, y, z))
        .collect();
    if let Ok(hull) = hull3(&pts) {
        // Polytope3 construction already validated closure, orientation and
        // convexity; check the hull property against the inputs.
        let tol = 1e-8 * hull.diameter_scale();
        for fi in 0..hull.faces().len() {
            let (a, b, c) = hull.face_points(fi);
            let n = (b - a).cross(&(c - a));
            let norm = n.norm();
            if !norm.is_finite() || !(norm > 0.0) {
                continue;
            }
            let n = n / norm;
            for p in &pts {
                let d = n.dot(&(p - a));
                if d.is_finite() {
                    assert!(d <= tol, "input point {p:?} outside face {fi}");
                }
            }
        }
    }
});
