//! Triangulation of convex polygons: centroid fan plus uniform 4-way
//! refinement.

use std::collections::HashMap;

use nalgebra::Point2;

use crate::bodies::Polygon2;

/// Conforming triangle mesh of a convex polygon.
///
/// `boundary_nodes` walks the boundary counterclockwise exactly once; new
/// midpoints created by refinement lie on the polygon edges, so the mesh
/// boundary is the polygon boundary at every level.
#[derive(Debug, Clone)]
pub struct Mesh {
    pub nodes: Vec<Point2<f64>>,
    pub triangles: Vec<[usize; 3]>,
    pub boundary_nodes: Vec<usize>,
    pub h_max: f64,
}

/// Fan triangulation from the vertex centroid, then `refinements` rounds of
/// uniform 4-way refinement. The fan triangles of a regular polygon are
/// isoceles with base angles below 90°, and 4-way refinement preserves
/// similarity classes, so shape regularity is uniform across levels.
pub fn mesh_polygon(poly: &Polygon2, refinements: usize) -> Mesh {
    let n = poly.len();
    let mut nodes: Vec<Point2<f64>> = poly.vertices().to_vec();
    let centroid = {
        let mut c = nalgebra::Vector2::zeros();
        for v in poly.vertices() {
            c += v.coords;
        }
        Point2::from(c / n as f64)
    };
    nodes.push(centroid);
    let center = n;
    let mut triangles: Vec<[usize; 3]> = (0..n).map(|i| [i, (i + 1) % n, center]).collect();
    let mut boundary: Vec<usize> = (0..n).collect();

    for _ in 0..refinements {
        let mut midpoint: HashMap<(usize, usize), usize> = HashMap::new();
        let mut mid = |a: usize, b: usize, nodes: &mut Vec<Point2<f64>>| -> usize {
            let key = (a.min(b), a.max(b));
            *midpoint.entry(key).or_insert_with(|| {
                let m = Point2::from(0.5 * (nodes[a].coords + nodes[b].coords));
                nodes.push(m);
                nodes.len() - 1
            })
        };
        let mut next = Vec::with_capacity(triangles.len() * 4);
        for &[a, b, c] in &triangles {
            let ab = mid(a, b, &mut nodes);
            let bc = mid(b, c, &mut nodes);
            let ca = mid(c, a, &mut nodes);
            next.push([a, ab, ca]);
            next.push([ab, b, bc]);
            next.push([ca, bc, c]);
            next.push([ab, bc, ca]);
        }
        triangles = next;
        let mut next_boundary = Vec::with_capacity(boundary.len() * 2);
        for i in 0..boundary.len() {
            let a = boundary[i];
            let b = boundary[(i + 1) % boundary.len()];
            next_boundary.push(a);
            next_boundary.push(midpoint[&(a.min(b), a.max(b))]);
        }
        boundary = next_boundary;
    }

    let mut h_max = 0.0f64;
    for &[a, b, c] in &triangles {
        h_max = h_max
            .max((nodes[b] - nodes[a]).norm())
            .max((nodes[c] - nodes[b]).norm())
            .max((nodes[a] - nodes[c]).norm());
    }
    Mesh {
        nodes,
        triangles,
        boundary_nodes: boundary,
        h_max,
    }
}

impl Mesh {
    pub fn n_nodes(&self) -> usize {
        self.nodes.len()
    }

    /// Signed doubled area of a triangle (positive for the orientation
    /// invariant).
    pub fn double_area(&self, t: usize) -> f64 {
        let [a, b, c] = self.triangles[t];
        (self.nodes[b] - self.nodes[a]).perp(&(self.nodes[c] - self.nodes[a]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bodies::{random_polygon2, regular_polygon_body};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

    fn edge_count(mesh: &Mesh) -> usize {
        let mut edges = HashSet::new();
        for &[a, b, c] in &mesh.triangles {
            for (x, y) in [(a, b), (b, c), (c, a)] {
                edges.insert((x.min(y), x.max(y)));
            }
        }
        edges.len()
    }

    #[test]
    fn square_fan_counts() {
        let sq = regular_polygon_body(4, 1.0);
        let m0 = mesh_polygon(&sq, 0);
        assert_eq!(m0.triangles.len(), 4);
        assert_eq!(m0.n_nodes(), 5);
        let m2 = mesh_polygon(&sq, 2);
        assert_eq!(m2.triangles.len(), 64);
        assert!((m2.h_max - m0.h_max / 4.0).abs() < 1e-14, "h_max halves per level");
        assert_eq!(m2.boundary_nodes.len(), 16);
    }

    #[test]
    fn refined_mesh_is_conforming() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let poly = random_polygon2(&mut rng, 20);
        let mesh = mesh_polygon(&poly, 3);
        // Euler formula for a disk: V - E + F = 1 (triangles only)
        let v = mesh.n_nodes() as isize;
        let e = edge_count(&mesh) as isize;
        let f = mesh.triangles.len() as isize;
        assert_eq!(v - e + f, 1);
        // positively oriented triangles
        for t in 0..mesh.triangles.len() {
            assert!(mesh.double_area(t) > 0.0);
        }
        // boundary cycle covers the polygon boundary once, counterclockwise
        let blen: f64 = (0..mesh.boundary_nodes.len())
            .map(|i| {
                let a = mesh.boundary_nodes[i];
                let b = mesh.boundary_nodes[(i + 1) % mesh.boundary_nodes.len()];
                (mesh.nodes[b] - mesh.nodes[a]).norm()
            })
            .sum();
        let per = crate::functionals::perimeter(&crate::bodies::Body::Polygon2(poly));
        assert!((blen - per).abs() < 1e-12 * per);
    }

    #[test]
    fn boundary_midpoints_lie_on_edges() {
        let sq = regular_polygon_body(4, 1.0);
        let mesh = mesh_polygon(&sq, 3);
        for &i in &mesh.boundary_nodes {
            let p = mesh.nodes[i];
            let on_edge = p.x.abs() >= 1.0 - 1e-14 || p.y.abs() >= 1.0 - 1e-14;
            assert!(on_edge, "boundary node {p:?} must lie on the square's sides");
        }
    }
}
