//! Dense complex linear algebra: matrices, general eigendecomposition,
//! SVD-based nullspaces and eigenvalue multiplicities.

mod eig;
mod matrix;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use serde::Serialize;
use thiserror::Error;

pub use eig::{eig, eigenvalues, schur, EigenSystem, TOL_EIG};
pub use matrix::{inner, normalize, vec_norm, CMatrix};

/// Default eigenvalue-cluster tolerance relative to `‖H‖`.
pub const TOL_CLUSTER: f64 = 1e-7;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LinalgError {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("dimension mismatch: expected {expected:?}, found {found:?}")]
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("QR iteration did not converge (relative subdiagonal residual {residual:e})")]
    NoConvergence { residual: f64 },
    #[error("matrix is singular")]
    Singular,
}

fn to_nalgebra(m: &CMatrix, pad_rows: usize) -> DMatrix<C64> {
    let rows = m.rows().max(pad_rows);
    DMatrix::from_fn(rows, m.cols(), |i, j| if i < m.rows() { m[(i, j)] } else { C64::new(0.0, 0.0) })
}

/// Singular values in descending order.
pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.rows() == 0 || m.cols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = to_nalgebra(m, 0).singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// 2-norm condition number; infinite for singular matrices.
pub fn condition_number(m: &CMatrix) -> f64 {
    let s = singular_values(m);
    match (s.first(), s.last()) {
        (Some(&hi), Some(&lo)) if lo > 0.0 => hi / lo,
        _ => f64::INFINITY,
    }
}

/// Orthonormal basis of `{v : Mv ≈ 0}`.
///
/// A direction counts as null when its singular value is at most
/// `tol·σ_max`. `M` may be rectangular.
pub fn nullspace(m: &CMatrix, tol: f64) -> Vec<Vec<C64>> {
    let n = m.cols();
    if n == 0 {
        return Vec::new();
    }
    // Pad to at least square so the SVD returns a complete right basis.
    let a = to_nalgebra(m, n);
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let sigma: Vec<f64> = svd.singular_values.iter().copied().collect();
    let smax = sigma.iter().copied().fold(0.0, f64::max);
    let cut = tol * smax;
    let mut basis = Vec::new();
    for (k, &s) in sigma.iter().enumerate() {
        if s <= cut {
            // Rows of v_t are v_k†.
            basis.push((0..n).map(|j| v_t[(k, j)].conj()).collect());
        }
    }
    basis
}

/// Smallest singular value of a square `M` and its right singular vector.
pub fn smallest_singular_pair(m: &CMatrix) -> (f64, Vec<C64>) {
    let n = m.cols();
    let svd = to_nalgebra(m, n).svd(false, true);
    let v_t = svd.v_t.expect("right singular vectors requested");
    let (k, s) = svd
        .singular_values
        .iter()
        .copied()
        .enumerate()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("non-empty matrix");
    (s, (0..n).map(|j| v_t[(k, j)].conj()).collect())
}

/// Numerical rank at relative tolerance `tol`.
pub fn rank(m: &CMatrix, tol: f64) -> usize {
    let s = singular_values(m);
    let smax = s.first().copied().unwrap_or(0.0);
    s.iter().filter(|&&x| x > tol * smax).count()
}

/// Algebraic and geometric multiplicity of an eigenvalue cluster.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicity {
    pub algebraic: usize,
    pub geometric: usize,
    /// Another eigenvalue sits within `2·tol` of the cluster boundary.
    pub ill_separated: bool,
}

/// Multiplicities of `ε0` using absolute tolerance `tol`.
///
/// The algebraic count uses eigenvalues within `tol` of `ε0`; the geometric
/// count is `dim ker(H − ε0)` at relative singular-value tolerance
/// `tol / ‖H‖₂`.
pub fn multiplicities(h: &CMatrix, eps0: C64, tol: f64) -> Result<Multiplicity, LinalgError> {
    let values = eigenvalues(h)?;
    Ok(multiplicities_from(h, &values, eps0, tol, tol))
}

/// Like [`multiplicities`] with separate cluster radius and nullspace
/// tolerance, reusing precomputed eigenvalues.
pub fn multiplicities_from(h: &CMatrix, values: &[C64], eps0: C64, radius: f64, null_tol: f64) -> Multiplicity {
    let algebraic = values.iter().filter(|v| (*v - eps0).norm() <= radius).count();
    let ill_separated = values.iter().any(|v| {
        let d = (v - eps0).norm();
        d > radius && d <= 3.0 * radius
    });
    let n = h.rows();
    let shifted = h - &CMatrix::identity(n).scale(eps0);
    let s = singular_values(&shifted);
    let geometric = s.iter().filter(|&&x| x <= null_tol).count();
    Multiplicity { algebraic, geometric, ill_separated }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn nullspace_of_zero_is_everything() {
        let basis = nullspace(&CMatrix::zeros(3, 3), 1e-12);
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn nullspace_of_diag() {
        let m = CMatrix::from_diag(&[c(1.0, 0.0), c(0.0, 0.0)]);
        let basis = nullspace(&m, 1e-12);
        assert_eq!(basis.len(), 1);
        assert!(basis[0][0].norm() < 1e-14);
        assert!((basis[0][1].norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn nullspace_of_wide_matrix() {
        let m = CMatrix::from_real_rows(&[[1.0, 1.0, 0.0]]).unwrap();
        let basis = nullspace(&m, 1e-12);
        assert_eq!(basis.len(), 2);
        for v in &basis {
            assert!(vec_norm(&m.mul_vec(v)) < 1e-14);
            assert!((vec_norm(v) - 1.0).abs() < 1e-14);
        }
        assert!(inner(&basis[0], &basis[1]).norm() < 1e-14);
    }

    #[test]
    fn multiplicities_diag_and_jordan() {
        let d = CMatrix::from_diag(&[c(0.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)]);
        let m = multiplicities(&d, c(0.0, 0.0), 1e-7).unwrap();
        assert_eq!((m.algebraic, m.geometric), (2, 2));
        assert!(!m.ill_separated);

        let j = CMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        let m = multiplicities(&j, c(0.0, 0.0), 1e-7).unwrap();
        assert_eq!((m.algebraic, m.geometric), (2, 1));
    }

    #[test]
    fn ill_separated_cluster_flagged() {
        let d = CMatrix::from_diag(&[c(0.0, 0.0), c(1.5e-7, 0.0)]);
        let m = multiplicities(&d, c(0.0, 0.0), 1e-7).unwrap();
        assert_eq!(m.algebraic, 1);
        assert!(m.ill_separated);
    }

    #[test]
    fn smallest_pair_of_jordan_block() {
        let j = CMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        let (s, v) = smallest_singular_pair(&j);
        assert!(s < 1e-15);
        assert!((v[0].norm() - 1.0).abs() < 1e-14 && v[1].norm() < 1e-14);
    }

    #[test]
    fn condition_number_of_scaled_identity() {
        assert!((condition_number(&CMatrix::identity(3).scale_real(5.0)) - 1.0).abs() < 1e-12);
        assert!(condition_number(&CMatrix::zeros(2, 2)).is_infinite());
    }
}
