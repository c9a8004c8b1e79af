//! Triangulated convex polytopes and a conflict-list quickhull.

use std::collections::HashMap;

use nalgebra::{Point3, Vector3};

use super::{all_finite3, bbox_diagonal3, BodyError, HULL_REL_TOL};

/// A closed, convex, outward-oriented triangle mesh.
///
/// Invariants (enforced at construction):
/// - every directed edge appears exactly once and its reverse exists
///   (watertight manifold),
/// - every face normal points away from the vertex centroid,
/// - every vertex lies on the inner side of every face plane within
///   `1e-9 * diameter`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polytope3 {
    verts: Vec<Point3<f64>>,
    faces: Vec<[usize; 3]>,
}

impl Polytope3 {
    pub fn new(verts: Vec<Point3<f64>>, faces: Vec<[usize; 3]>) -> Result<Self, BodyError> {
        if verts.len() < 4 {
            return Err(BodyError::FewerThanThreeVertices(verts.len()));
        }
        if !all_finite3(&verts) {
            return Err(BodyError::NonFiniteCoordinate);
        }
        if faces.len() < 4 {
            return Err(BodyError::DegenerateInput);
        }
        let scale = bbox_diagonal3(&verts);
        if !(scale > 0.0) {
            return Err(BodyError::DegenerateInput);
        }

        // Watertight: each directed edge once, each undirected edge twice.
        let mut directed: HashMap<(usize, usize), usize> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            if f[0] == f[1] || f[1] == f[2] || f[2] == f[0] {
                return Err(BodyError::DegenerateInput);
            }
            for k in 0..3 {
                let a = f[k];
                let b = f[(k + 1) % 3];
                if a >= verts.len() || b >= verts.len() {
                    return Err(BodyError::DegenerateInput);
                }
                if directed.insert((a, b), fi).is_some() {
                    return Err(BodyError::NotClosed(a, b));
                }
            }
        }
        for &(a, b) in directed.keys() {
            if !directed.contains_key(&(b, a)) {
                return Err(BodyError::NotClosed(a, b));
            }
        }

        let centroid = vertex_centroid(&verts);
        let tol = HULL_REL_TOL * scale;
        for (fi, f) in faces.iter().enumerate() {
            let (a, b, c) = (verts[f[0]], verts[f[1]], verts[f[2]]);
            let n = (b - a).cross(&(c - a));
            let norm = n.norm();
            if !(norm > 0.0) || !norm.is_finite() {
                return Err(BodyError::DegenerateInput);
            }
            let n = n / norm;
            let face_centroid = Point3::from((a.coords + b.coords + c.coords) / 3.0);
            if n.dot(&(face_centroid - centroid)) <= 0.0 {
                return Err(BodyError::NotOutwardOriented(fi));
            }
            let offset = n.dot(&a.coords);
            for (vi, v) in verts.iter().enumerate() {
                let excess = n.dot(&v.coords) - offset;
                if excess > tol {
                    return Err(BodyError::NotConvexPolytope {
                        vertex: vi,
                        face: fi,
                        excess,
                    });
                }
            }
        }

        Ok(Polytope3 { verts, faces })
    }

    pub fn vertices(&self) -> &[Point3<f64>] {
        &self.verts
    }

    pub fn faces(&self) -> &[[usize; 3]] {
        &self.faces
    }

    /// Face corner points `(a, b, c)` in outward orientation.
    pub fn face_points(&self, fi: usize) -> (Point3<f64>, Point3<f64>, Point3<f64>) {
        let f = self.faces[fi];
        (self.verts[f[0]], self.verts[f[1]], self.verts[f[2]])
    }

    pub fn diameter_scale(&self) -> f64 {
        bbox_diagonal3(&self.verts)
    }

    pub fn translated(&self, t: Vector3<f64>) -> Polytope3 {
        Polytope3 {
            verts: self.verts.iter().map(|p| p + t).collect(),
            faces: self.faces.clone(),
        }
    }

    pub fn scaled(&self, s: f64) -> Polytope3 {
        assert!(s > 0.0);
        Polytope3 {
            verts: self
                .verts
                .iter()
                .map(|p| Point3::new(p.x * s, p.y * s, p.z * s))
                .collect(),
            faces: self.faces.clone(),
        }
    }

    /// Exact boundary barycenter: triangle centroid rule is exact for the
    /// linear integrand.
    pub fn boundary_barycenter(&self) -> Point3<f64> {
        let mut weighted = Vector3::zeros();
        let mut total = 0.0;
        for fi in 0..self.faces.len() {
            let (a, b, c) = self.face_points(fi);
            let area = 0.5 * (b - a).cross(&(c - a)).norm();
            let centroid = (a.coords + b.coords + c.coords) / 3.0;
            weighted += centroid * area;
            total += area;
        }
        Point3::from(weighted / total)
    }
}

fn vertex_centroid(verts: &[Point3<f64>]) -> Point3<f64> {
    let mut s = Vector3::zeros();
    for v in verts {
        s += v.coords;
    }
    Point3::from(s / verts.len() as f64)
}

struct HullFace {
    v: [usize; 3],
    normal: Vector3<f64>,
    offset: f64,
    outside: Vec<usize>,
    alive: bool,
}

impl HullFace {
    fn dist(&self, p: Point3<f64>) -> f64 {
        self.normal.dot(&p.coords) - self.offset
    }
}

/// Triangulated convex hull of a 3D point cloud (incremental quickhull with
/// conflict lists). Tolerance is `1e-9` times the bounding-box diagonal; all
/// input points end up inside or on the hull within that tolerance.
pub fn hull3(points: &[Point3<f64>]) -> Result<Polytope3, BodyError> {
    if points.len() < 4 {
        return Err(BodyError::FewerThanThreeVertices(points.len()));
    }
    if !all_finite3(points) {
        return Err(BodyError::NonFiniteCoordinate);
    }
    let scale = bbox_diagonal3(points);
    if !(scale > 0.0) {
        return Err(BodyError::DegenerateInput);
    }
    let eps = HULL_REL_TOL * scale;

    let simplex = initial_simplex(points, eps)?;
    let interior = Point3::from(
        simplex
            .iter()
            .fold(Vector3::zeros(), |s, &i| s + points[i].coords)
            / 4.0,
    );

    let mut faces: Vec<HullFace> = Vec::new();
    let mut edge_owner: HashMap<(usize, usize), usize> = HashMap::new();
    let simplex_faces = [
        [simplex[0], simplex[1], simplex[2]],
        [simplex[0], simplex[2], simplex[3]],
        [simplex[0], simplex[3], simplex[1]],
        [simplex[1], simplex[3], simplex[2]],
    ];
    for vs in simplex_faces {
        push_face(&mut faces, &mut edge_owner, points, interior, vs)?;
    }

    // Initial conflict assignment.
    for (pi, p) in points.iter().enumerate() {
        if simplex.contains(&pi) {
            continue;
        }
        for f in faces.iter_mut() {
            if f.dist(*p) > eps {
                f.outside.push(pi);
                break;
            }
        }
    }

    let mut pending: Vec<usize> = (0..faces.len()).collect();
    let mut guard = 0usize;
    while let Some(fi) = pending.pop() {
        if !faces[fi].alive || faces[fi].outside.is_empty() {
            continue;
        }
        guard += 1;
        if guard > 8 * points.len() + 64 {
            return Err(BodyError::HullConstruction("iteration guard exceeded"));
        }

        // Farthest conflict point of this face becomes the next hull vertex.
        let apex = *faces[fi]
            .outside
            .iter()
            .max_by(|&&a, &&b| {
                faces[fi]
                    .dist(points[a])
                    .partial_cmp(&faces[fi].dist(points[b]))
                    .expect("finite distances")
            })
            .expect("nonempty outside set");
        let apex_pt = points[apex];

        // Flood-fill the visible region and collect its horizon edges.
        let mut visible = vec![fi];
        let mut seen = HashMap::new();
        seen.insert(fi, ());
        let mut stack = vec![fi];
        let mut horizon: Vec<(usize, usize)> = Vec::new();
        while let Some(cur) = stack.pop() {
            let vs = faces[cur].v;
            for k in 0..3 {
                let a = vs[k];
                let b = vs[(k + 1) % 3];
                let neighbor = *edge_owner
                    .get(&(b, a))
                    .ok_or(BodyError::HullConstruction("missing edge neighbor"))?;
                if seen.contains_key(&neighbor) {
                    continue;
                }
                if faces[neighbor].dist(apex_pt) > eps {
                    seen.insert(neighbor, ());
                    visible.push(neighbor);
                    stack.push(neighbor);
                } else {
                    horizon.push((a, b));
                }
            }
        }

        // Retire visible faces, collect their conflict points for reassignment.
        let mut orphans: Vec<usize> = Vec::new();
        for &v in &visible {
            faces[v].alive = false;
            orphans.append(&mut faces[v].outside);
            let vs = faces[v].v;
            for k in 0..3 {
                let key = (vs[k], vs[(k + 1) % 3]);
                if edge_owner.get(&key) == Some(&v) {
                    edge_owner.remove(&key);
                }
            }
        }

        let mut new_faces: Vec<usize> = Vec::new();
        for (a, b) in horizon {
            let nf = push_face(&mut faces, &mut edge_owner, points, interior, [a, b, apex])?;
            new_faces.push(nf);
        }

        for pi in orphans {
            if pi == apex {
                continue;
            }
            for &nf in &new_faces {
                if faces[nf].dist(points[pi]) > eps {
                    faces[nf].outside.push(pi);
                    break;
                }
            }
        }
        for &nf in &new_faces {
            if !faces[nf].outside.is_empty() {
                pending.push(nf);
            }
        }
    }

    // Compact surviving faces onto a deterministic vertex numbering.
    let mut used: Vec<usize> = faces
        .iter()
        .filter(|f| f.alive)
        .flat_map(|f| f.v.into_iter())
        .collect();
    used.sort_unstable();
    used.dedup();
    let remap: HashMap<usize, usize> = used.iter().enumerate().map(|(new, &old)| (old, new)).collect();
    let verts: Vec<Point3<f64>> = used.iter().map(|&i| points[i]).collect();
    let tris: Vec<[usize; 3]> = faces
        .iter()
        .filter(|f| f.alive)
        .map(|f| [remap[&f.v[0]], remap[&f.v[1]], remap[&f.v[2]]])
        .collect();
    Polytope3::new(verts, tris)
}

fn push_face(
    faces: &mut Vec<HullFace>,
    edge_owner: &mut HashMap<(usize, usize), usize>,
    points: &[Point3<f64>],
    interior: Point3<f64>,
    mut v: [usize; 3],
) -> Result<usize, BodyError> {
    let (a, b, c) = (points[v[0]], points[v[1]], points[v[2]]);
    let mut normal = (b - a).cross(&(c - a));
    let norm = normal.norm();
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(BodyError::HullConstruction("degenerate face normal"));
    }
    normal /= norm;
    let mut offset = normal.dot(&a.coords);
    if normal.dot(&interior.coords) - offset > 0.0 {
        v.swap(1, 2);
        normal = -normal;
        offset = -offset;
    }
    let fi = faces.len();
    for k in 0..3 {
        let key = (v[k], v[(k + 1) % 3]);
        if edge_owner.insert(key, fi).is_some() {
            return Err(BodyError::HullConstruction("duplicate directed edge"));
        }
    }
    faces.push(HullFace {
        v,
        normal,
        offset,
        outside: Vec::new(),
        alive: true,
    });
    Ok(fi)
}

/// Four affinely independent input indices spanning a nondegenerate
/// tetrahedron, or `DegenerateInput`.
fn initial_simplex(points: &[Point3<f64>], eps: f64) -> Result<[usize; 4], BodyError> {
    // Most separated pair among the axis extremes.
    let mut extremes = [0usize; 6];
    for (pi, p) in points.iter().enumerate() {
        for axis in 0..3 {
            if p[axis] < points[extremes[2 * axis]][axis] {
                extremes[2 * axis] = pi;
            }
            if p[axis] > points[extremes[2 * axis + 1]][axis] {
                extremes[2 * axis + 1] = pi;
            }
        }
    }
    let (mut i0, mut i1, mut best) = (extremes[0], extremes[1], -1.0);
    for &a in &extremes {
        for &b in &extremes {
            let d = (points[a] - points[b]).norm();
            if d > best {
                best = d;
                i0 = a;
                i1 = b;
            }
        }
    }
    if best <= eps {
        return Err(BodyError::DegenerateInput);
    }

    let dir = (points[i1] - points[i0]) / best;
    let line_dist = |p: Point3<f64>| {
        let d = p - points[i0];
        (d - dir * d.dot(&dir)).norm()
    };
    let (mut i2, mut best2) = (usize::MAX, eps);
    for (pi, p) in points.iter().enumerate() {
        let d = line_dist(*p);
        if d > best2 {
            best2 = d;
            i2 = pi;
        }
    }
    if i2 == usize::MAX {
        return Err(BodyError::DegenerateInput);
    }

    let n = (points[i1] - points[i0]).cross(&(points[i2] - points[i0]));
    let n = n / n.norm();
    let plane_dist = |p: Point3<f64>| n.dot(&(p - points[i0]));
    let (mut i3, mut best3) = (usize::MAX, eps);
    for (pi, p) in points.iter().enumerate() {
        let d = plane_dist(*p).abs();
        if d > best3 {
            best3 = d;
            i3 = pi;
        }
    }
    if i3 == usize::MAX {
        return Err(BodyError::DegenerateInput);
    }
    // Positive orientation: i3 on the negative side of (i0, i1, i2).
    if plane_dist(points[i3]) > 0.0 {
        std::mem::swap(&mut i0, &mut i1);
    }
    Ok([i0, i1, i2, i3])
}
