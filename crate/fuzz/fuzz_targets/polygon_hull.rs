#![no_main]
//! Hull construction from arbitrary point clouds: never panic, and when a
//! hull is returned every finite input point must lie inside it (within the
//! validation tolerance).

use arbitrary::Arbitrary;
use libfuzzer_sys::fuzz_target;
use nalgebra::{Point2, Vector2};

use weinstock_lab::bodies::polygon_from_vertices;

#[derive(Arbitrary, Debug)]
struct Cloud {
    points: Vec<(f64, f64)>,
}

fuzz_target!(|cloud: Cloud| {
    if cloud.points.len() > 512 {
        return;
    }
    let pts: Vec<Point2<f64>> = cloud
        .points
        .iter()
        .map(|&(x, y)| Point2::new(x, y))
        .collect();
    if let Ok(hull) = polygon_from_vertices(&pts) {
        let area = hull.area();
        if !area.is_finite() {
            return;
        }
        assert!(area > 0.0, "validated hulls have positive area");
        // containment: every input point on the inner side of every edge
        let tol = 1e-9 * hull.diameter_scale() * hull.diameter_scale();
        for p in &pts {
            for (a, b) in hull.edges() {
                let cross = (b - a).perp(&Vector2::new(p.x - a.x, p.y - a.y));
                if cross.is_finite() {
                    assert!(cross >= -tol, "input point {p:?} escapes the hull");
                }
            }
        }
    }
});
