//! Strictly convex polygons with counterclockwise vertex order.

use nalgebra::{Point2, Vector2};

use super::{all_finite2, bbox_diagonal2, BodyError, REL_TOL};

/// A strictly convex polygon, vertices counterclockwise.
///
/// Invariants (enforced at construction):
/// - at least 3 vertices, all coordinates finite,
/// - consecutive vertices distinct within `1e-12 * diameter`,
/// - every turn is a strict left turn: cross products of consecutive edges
///   exceed `1e-12 * diameter^2` (this subsumes the counterclockwise check).
#[derive(Debug, Clone, PartialEq)]
pub struct Polygon2 {
    verts: Vec<Point2<f64>>,
}

impl Polygon2 {
    /// Validate and wrap a counterclockwise strictly convex vertex list.
    ///
    /// Degenerate inputs (needle polygons, repeated or collinear vertices)
    /// are rejected rather than repaired; use [`polygon_from_vertices`] to
    /// build a polygon from an arbitrary point cloud.
    pub fn new(verts: Vec<Point2<f64>>) -> Result<Self, BodyError> {
        if verts.len() < 3 {
            return Err(BodyError::FewerThanThreeVertices(verts.len()));
        }
        if !all_finite2(&verts) {
            return Err(BodyError::NonFiniteCoordinate);
        }
        let scale = bbox_diagonal2(&verts);
        if !(scale > 0.0) {
            return Err(BodyError::DuplicateVertex(0, 1));
        }
        let n = verts.len();
        for i in 0..n {
            let j = (i + 1) % n;
            if (verts[j] - verts[i]).norm() <= REL_TOL * scale {
                return Err(BodyError::DuplicateVertex(i, j));
            }
        }
        let tol = REL_TOL * scale * scale;
        for i in 0..n {
            let a = verts[i];
            let b = verts[(i + 1) % n];
            let c = verts[(i + 2) % n];
            let cross = (b - a).perp(&(c - b));
            // The negated comparison keeps NaN crosses (overflow of extreme
            // but finite coordinates) on the rejection path.
            if !(cross > tol) {
                if cross < -tol {
                    // Reflex vertex or a clockwise polygon; the signed area
                    // disambiguates.
                    if shoelace2(&verts) <= 0.0 {
                        return Err(BodyError::NotCounterclockwise);
                    }
                    return Err(BodyError::NotConvexPolygon((i + 1) % n));
                }
                return Err(BodyError::CollinearVertices((i + 1) % n));
            }
        }
        Ok(Polygon2 { verts })
    }

    pub fn vertices(&self) -> &[Point2<f64>] {
        &self.verts
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Iterate over directed edges `(a, b)`.
    pub fn edges(&self) -> impl Iterator<Item = (Point2<f64>, Point2<f64>)> + '_ {
        let n = self.verts.len();
        (0..n).map(move |i| (self.verts[i], self.verts[(i + 1) % n]))
    }

    /// Bounding-box diagonal, the length scale used by relative tolerances.
    pub fn diameter_scale(&self) -> f64 {
        bbox_diagonal2(&self.verts)
    }

    pub fn translated(&self, t: Vector2<f64>) -> Polygon2 {
        Polygon2 {
            verts: self.verts.iter().map(|p| p + t).collect(),
        }
    }

    pub fn scaled(&self, s: f64) -> Polygon2 {
        assert!(s > 0.0);
        Polygon2 {
            verts: self.verts.iter().map(|p| Point2::new(p.x * s, p.y * s)).collect(),
        }
    }

    /// Exact boundary barycenter `(1/P) ∫ x ds` (edge midpoint rule is exact
    /// for the linear integrand).
    pub fn boundary_barycenter(&self) -> Point2<f64> {
        let mut weighted = Vector2::zeros();
        let mut per = 0.0;
        for (a, b) in self.edges() {
            let len = (b - a).norm();
            weighted += (a.coords + b.coords) * (0.5 * len);
            per += len;
        }
        Point2::from(weighted / per)
    }

    /// Signed area (positive by the CCW invariant).
    pub fn area(&self) -> f64 {
        0.5 * shoelace2(&self.verts)
    }
}

/// Doubled signed area, anchored at the first vertex: the raw shoelace
/// cancels catastrophically for polygons far from the origin, while the
/// anchored fan works on small differences and agrees exactly in exact
/// arithmetic.
fn shoelace2(verts: &[Point2<f64>]) -> f64 {
    let n = verts.len();
    let origin = verts[0];
    let mut s = 0.0;
    for i in 1..(n - 1) {
        s += (verts[i] - origin).perp(&(verts[i + 1] - origin));
    }
    s
}

/// Convex hull of a point cloud (Andrew's monotone chain), counterclockwise,
/// with interior and collinear points dropped.
pub fn polygon_from_vertices(points: &[Point2<f64>]) -> Result<Polygon2, BodyError> {
    if points.len() < 3 {
        return Err(BodyError::FewerThanThreeVertices(points.len()));
    }
    if !all_finite2(points) {
        return Err(BodyError::NonFiniteCoordinate);
    }
    let scale = bbox_diagonal2(points);
    if !(scale > 0.0) {
        return Err(BodyError::FewerThanThreeHullVertices);
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| (a.x, a.y).partial_cmp(&(b.x, b.y)).expect("finite coords"));
    pts.dedup_by(|a, b| (*a - *b).norm() <= REL_TOL * scale);
    if pts.len() < 3 {
        return Err(BodyError::FewerThanThreeHullVertices);
    }

    // Strictly convex chains: points with a turn below this threshold are
    // treated as collinear and dropped, so the result passes validation.
    let turn_tol = 8.0 * REL_TOL * scale * scale;
    let build = |iter: &mut dyn Iterator<Item = Point2<f64>>| {
        let mut chain: Vec<Point2<f64>> = Vec::new();
        for p in iter {
            while chain.len() >= 2 {
                let a = chain[chain.len() - 2];
                let b = chain[chain.len() - 1];
                if (b - a).perp(&(p - b)) <= turn_tol {
                    chain.pop();
                } else {
                    break;
                }
            }
            chain.push(p);
        }
        chain
    };
    let mut lower = build(&mut pts.iter().copied());
    let mut upper = build(&mut pts.iter().rev().copied());
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(BodyError::FewerThanThreeHullVertices);
    }
    Polygon2::new(lower)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    fn pt(x: f64, y: f64) -> Point2<f64> {
        Point2::new(x, y)
    }

    #[test]
    fn square_from_corners() {
        let p = polygon_from_vertices(&[pt(1.0, 1.0), pt(-1.0, 1.0), pt(-1.0, -1.0), pt(1.0, -1.0)])
            .unwrap();
        assert_eq!(p.len(), 4);
        assert!((p.area() - 4.0).abs() < 1e-14);
    }

    #[test]
    fn hull_drops_interior_and_collinear() {
        let p = polygon_from_vertices(&[
            pt(0.0, 0.0),
            pt(2.0, 0.0),
            pt(1.0, 0.0),
            pt(2.0, 2.0),
            pt(0.0, 2.0),
        ])
        .unwrap();
        assert_eq!(p.len(), 4);
        for v in p.vertices() {
            assert!((v.x - 1.0).abs() > 0.5, "collinear (1,0) should be dropped");
        }
    }

    #[test]
    fn rejects_degenerate() {
        assert!(matches!(
            polygon_from_vertices(&[pt(0.0, 0.0), pt(1.0, 0.0), pt(2.0, 0.0), pt(3.0, 0.0)]),
            Err(BodyError::FewerThanThreeHullVertices)
        ));
        assert!(matches!(
            polygon_from_vertices(&[pt(0.0, 0.0), pt(1.0, 1.0)]),
            Err(BodyError::FewerThanThreeVertices(2))
        ));
        assert!(matches!(
            polygon_from_vertices(&[pt(0.0, 0.0), pt(f64::NAN, 1.0), pt(1.0, 0.0)]),
            Err(BodyError::NonFiniteCoordinate)
        ));
    }

    #[test]
    fn new_rejects_clockwise_and_reflex() {
        // clockwise square
        let cw = vec![pt(1.0, 1.0), pt(1.0, -1.0), pt(-1.0, -1.0), pt(-1.0, 1.0)];
        assert!(matches!(
            Polygon2::new(cw),
            Err(BodyError::NotCounterclockwise)
        ));
        // reflex vertex at the origin
        let reflex = vec![pt(0.0, 0.0), pt(2.0, 0.0), pt(2.0, 2.0), pt(0.9, 0.9), pt(0.0, 2.0)];
        assert!(matches!(
            Polygon2::new(reflex),
            Err(BodyError::NotConvexPolygon(_))
        ));
    }

    /// Brute-force O(n^3) hull: a directed pair (i, j) is a hull edge iff all
    /// other points lie strictly to its left; hull vertices are the edge
    /// endpoints.
    fn brute_force_hull_vertices(points: &[Point2<f64>]) -> Vec<Point2<f64>> {
        let n = points.len();
        let mut verts = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let d = points[j] - points[i];
                let mut all_left = true;
                for (k, p) in points.iter().enumerate() {
                    if k == i || k == j {
                        continue;
                    }
                    if d.perp(&(p - points[i])) <= 0.0 {
                        all_left = false;
                        break;
                    }
                }
                if all_left {
                    verts.push(points[i]);
                }
            }
        }
        verts
    }

    #[test]
    fn hull_matches_brute_force_oracle() {
        let mut rng = StdRng::seed_from_u64(7);
        for _ in 0..20 {
            let pts: Vec<Point2<f64>> = (0..100)
                .map(|_| loop {
                    let x: f64 = rng.gen_range(-1.0..1.0);
                    let y: f64 = rng.gen_range(-1.0..1.0);
                    if x * x + y * y <= 1.0 {
                        return pt(x, y);
                    }
                })
                .collect();
            let hull = polygon_from_vertices(&pts).unwrap();
            assert!(hull.area() > 0.0);

            let mut expected = brute_force_hull_vertices(&pts);
            let mut got: Vec<Point2<f64>> = hull.vertices().to_vec();
            let key = |p: &Point2<f64>| (p.x, p.y);
            expected.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
            got.sort_by(|a, b| key(a).partial_cmp(&key(b)).unwrap());
            assert_eq!(expected.len(), got.len());
            for (e, g) in expected.iter().zip(&got) {
                assert!((e - g).norm() < 1e-12);
            }
        }
    }

    #[test]
    fn hull_idempotent_on_own_vertices() {
        let mut rng = StdRng::seed_from_u64(3);
        let pts: Vec<Point2<f64>> = (0..40)
            .map(|_| {
                let t: f64 = rng.gen_range(0.0..std::f64::consts::TAU);
                let r: f64 = rng.gen_range(0.5..1.0);
                pt(r * t.cos(), r * t.sin())
            })
            .collect();
        let hull = polygon_from_vertices(&pts).unwrap();
        let again = polygon_from_vertices(hull.vertices()).unwrap();
        assert_eq!(hull.len(), again.len());
        // same cyclic sequence up to rotation of the starting index
        let verts = hull.vertices();
        let shift = again
            .vertices()
            .iter()
            .position(|p| (p - verts[0]).norm() < 1e-15)
            .expect("first vertex present");
        for (i, p) in verts.iter().enumerate() {
            let q = again.vertices()[(shift + i) % verts.len()];
            assert!((p - q).norm() < 1e-15);
        }
    }
}
