//! P1 assembly and the Dirichlet-to-Neumann (Schur) reduction.
//!
//! Interior unknowns are eliminated through a sparse Cholesky factorization
//! of the interior stiffness block, leaving a dense symmetric boundary
//! operator whose eigenvalues against the boundary mass matrix approximate
//! the Steklov spectrum. Boundary node counts stay in the low thousands at
//! desk scale, so the dense generalized eigensolve downstream is cheap
//! relative to the elimination.

use std::collections::HashMap;

use faer::prelude::Solve;
use faer::sparse::{SparseColMat, Triplet};
use faer::Mat;

use super::mesh::Mesh;
use super::SteklovError;

pub(crate) struct BoundaryOperator {
    /// Discrete Dirichlet-to-Neumann matrix (dense, symmetric, PSD).
    pub schur: Mat<f64>,
    /// Boundary mass matrix in cyclic boundary order (SPD, cyclic tridiagonal).
    pub mass: Mat<f64>,
    /// P1 stiffness of the boundary polyline (periodic 1D Laplacian), the
    /// Wentzell surface-diffusion term.
    pub tangent_stiffness: Mat<f64>,
}

/// Assemble the P1 stiffness matrix, reorder as (boundary, interior), and
/// form `S = A_bb − A_biᵀ A_ii⁻¹ A_ib`.
pub(crate) fn boundary_operator(mesh: &Mesh) -> Result<BoundaryOperator, SteklovError> {
    let n = mesh.n_nodes();
    let nb = mesh.boundary_nodes.len();
    let ni = n - nb;

    // Permutation: boundary nodes first, in cyclic order.
    let mut perm = vec![usize::MAX; n];
    for (new, &old) in mesh.boundary_nodes.iter().enumerate() {
        perm[old] = new;
    }
    let mut next_interior = nb;
    for old in 0..n {
        if perm[old] == usize::MAX {
            perm[old] = next_interior;
            next_interior += 1;
        }
    }

    let mut a_bb = Mat::<f64>::zeros(nb, nb);
    let mut a_ii: HashMap<(usize, usize), f64> = HashMap::new();
    let mut a_ib: HashMap<(usize, usize), f64> = HashMap::new();

    for t in 0..mesh.triangles.len() {
        let [i, j, k] = mesh.triangles[t];
        let (p1, p2, p3) = (mesh.nodes[i], mesh.nodes[j], mesh.nodes[k]);
        let double_area = mesh.double_area(t);
        // Barycentric gradients: grad λ_a = perp of the opposite edge / 2|T|.
        let g = [
            [(p2.y - p3.y), (p3.x - p2.x)],
            [(p3.y - p1.y), (p1.x - p3.x)],
            [(p1.y - p2.y), (p2.x - p1.x)],
        ];
        let idx = [perm[i], perm[j], perm[k]];
        for r in 0..3 {
            for s in 0..3 {
                let v = (g[r][0] * g[s][0] + g[r][1] * g[s][1]) / (2.0 * double_area);
                let (pr, ps) = (idx[r], idx[s]);
                if pr < nb && ps < nb {
                    a_bb[(pr, ps)] += v;
                } else if pr >= nb && ps >= nb {
                    *a_ii.entry((pr - nb, ps - nb)).or_insert(0.0) += v;
                } else if pr >= nb {
                    *a_ib.entry((pr - nb, ps)).or_insert(0.0) += v;
                }
                // boundary-row/interior-column entries are the transposes of
                // the case above and are accounted for there
            }
        }
    }

    let mut schur = a_bb;
    if ni > 0 {
        let triplets: Vec<Triplet<usize, usize, f64>> = a_ii
            .iter()
            .map(|(&(r, c), &v)| Triplet::new(r, c, v))
            .collect();
        let a_ii_sparse = SparseColMat::<usize, f64>::try_new_from_triplets(ni, ni, &triplets)
            .map_err(|e| SteklovError::SolverFailure(format!("interior block: {e:?}")))?;
        let llt = a_ii_sparse
            .sp_cholesky(faer::Side::Lower)
            .map_err(|e| SteklovError::SolverFailure(format!("interior Cholesky: {e:?}")))?;

        let ib: Vec<(&(usize, usize), &f64)> = a_ib.iter().collect();
        let chunk = 512usize;
        let mut col = 0;
        while col < nb {
            let width = chunk.min(nb - col);
            let mut rhs = Mat::<f64>::zeros(ni, width);
            for (&(r, c), &v) in ib.iter() {
                if c >= col && c < col + width {
                    rhs[(r, c - col)] = v;
                }
            }
            let x = llt.solve(&rhs);
            // S -= A_ibᵀ X, using the sparsity of A_ib
            for (&(r, c), &v) in ib.iter() {
                for w in 0..width {
                    schur[(c, col + w)] -= v * x[(r, w)];
                }
            }
            col += width;
        }
    }
    // Symmetrize away the rounding skew.
    for i in 0..nb {
        for j in (i + 1)..nb {
            let s = 0.5 * (schur[(i, j)] + schur[(j, i)]);
            schur[(i, j)] = s;
            schur[(j, i)] = s;
        }
    }

    // Boundary mass and tangential stiffness on the cyclic polyline.
    let mut mass = Mat::<f64>::zeros(nb, nb);
    let mut tangent = Mat::<f64>::zeros(nb, nb);
    for i in 0..nb {
        let j = (i + 1) % nb;
        let len = (mesh.nodes[mesh.boundary_nodes[j]] - mesh.nodes[mesh.boundary_nodes[i]]).norm();
        mass[(i, i)] += len / 3.0;
        mass[(j, j)] += len / 3.0;
        mass[(i, j)] += len / 6.0;
        mass[(j, i)] += len / 6.0;
        tangent[(i, i)] += 1.0 / len;
        tangent[(j, j)] += 1.0 / len;
        tangent[(i, j)] -= 1.0 / len;
        tangent[(j, i)] -= 1.0 / len;
    }

    Ok(BoundaryOperator {
        schur,
        mass,
        tangent_stiffness: tangent,
    })
}

/// Eigenvalues of `S u = σ M u` with `M` SPD, ascending: whiten with
/// `M = Q D Qᵀ` and solve the standard symmetric problem for
/// `D^{-1/2} Qᵀ S Q D^{-1/2}`.
pub(crate) fn generalized_symmetric_eigenvalues(
    s: &Mat<f64>,
    m: &Mat<f64>,
) -> Result<Vec<f64>, SteklovError> {
    let n = s.nrows();
    let m_evd = m
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| SteklovError::SolverFailure(format!("mass eigendecomposition: {e:?}")))?;
    let d = m_evd.S();
    let d_min = (0..n).map(|i| d[i]).fold(f64::INFINITY, f64::min);
    if !(d_min > 0.0) {
        return Err(SteklovError::SolverFailure(format!(
            "boundary mass matrix is not positive definite (min eigenvalue {d_min:e})"
        )));
    }
    let mut whitener = m_evd.U().to_owned();
    for j in 0..n {
        let scale = 1.0 / d[j].sqrt();
        for i in 0..n {
            whitener[(i, j)] *= scale;
        }
    }
    let mut b = whitener.transpose() * s * &whitener;
    for i in 0..n {
        for j in (i + 1)..n {
            let v = 0.5 * (b[(i, j)] + b[(j, i)]);
            b[(i, j)] = v;
            b[(j, i)] = v;
        }
    }
    let evd = b
        .self_adjoint_eigen(faer::Side::Lower)
        .map_err(|e| SteklovError::SolverFailure(format!("boundary eigensolve: {e:?}")))?;
    Ok((0..n).map(|i| evd.S()[i]).collect())
}
