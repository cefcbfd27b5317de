use num_complex::Complex64 as C64;

use super::{relation_residual, RelationKind, SymOp};
use crate::clifford::{basis16, GammaExpr, GammaLabel};
use crate::linalg::{inner, nullspace, vec_norm, CMatrix};

const NULL_TOL: f64 = 1e-10;
const PIVOT_TOL: f64 = 1e-8;

/// Solution space of one relation.
#[derive(Clone, Debug)]
pub struct Discovery {
    pub kind: RelationKind,
    pub dimension: usize,
    pub operators: Vec<SymOp>,
    /// Coefficients of each operator in the search basis.
    pub coefficients: Vec<Vec<C64>>,
    /// Inverse-free relative residual of each operator.
    pub residuals: Vec<f64>,
    /// Basis labels when searching over the 16 gamma products.
    pub labels: Option<Vec<GammaLabel>>,
    /// Orthonormal basis of the vectorized solution space.
    span: Vec<Vec<C64>>,
}

impl Discovery {
    pub fn max_residual(&self) -> f64 {
        self.residuals.iter().copied().fold(0.0, f64::max)
    }

    /// Whether `m` lies in the solution space, to relative distance `tol`.
    pub fn contains(&self, m: &CMatrix, tol: f64) -> bool {
        let v = m.vectorize();
        let norm = vec_norm(&v);
        if norm == 0.0 {
            return true;
        }
        if self.span.first().is_some_and(|b| b.len() != v.len()) {
            return false;
        }
        let mut r = v.clone();
        for b in &self.span {
            let c = inner(b, &r);
            for (x, y) in r.iter_mut().zip(b) {
                *x -= c * y;
            }
        }
        vec_norm(&r) <= tol * norm
    }

    pub fn gamma_exprs(&self) -> Option<Vec<GammaExpr>> {
        let labels = self.labels.as_ref()?;
        Some(
            self.coefficients
                .iter()
                .map(|coeffs| {
                    let mut e = GammaExpr::new();
                    for (l, &c) in labels.iter().zip(coeffs) {
                        if c.norm() > 1e-12 {
                            e.push(l.clone(), c);
                        }
                    }
                    e
                })
                .collect(),
        )
    }
}

/// Linear map `M ↦ relation(H, M)` acting on column-major `vec(M)`.
fn relation_map(h: &CMatrix, kind: RelationKind) -> CMatrix {
    let n = h.rows();
    let id = CMatrix::identity(n);
    match kind {
        RelationKind::LinearAnticommute => id.kron(h) + h.transpose().kron(&id),
        RelationKind::TransposeMinus => id.kron(h) + h.kron(&id),
        RelationKind::AntilinearAnticommute => id.kron(h) + h.adjoint().kron(&id),
        RelationKind::AntilinearCommute => id.kron(h) - h.adjoint().kron(&id),
        RelationKind::DaggerPlus => h.conj().kron(&id) - id.kron(h),
        RelationKind::DaggerMinus => h.conj().kron(&id) + id.kron(h),
    }
}

/// Reduced row echelon form of the rows, then each row rescaled so its
/// largest-magnitude entry is exactly 1.
fn canonical_rows(mut rows: Vec<Vec<C64>>) -> Vec<Vec<C64>> {
    let m = rows.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..m {
        if pivot_row == rows.len() {
            break;
        }
        let (best, mag) = (pivot_row..rows.len())
            .map(|r| (r, rows[r][col].norm()))
            .max_by(|a, b| a.1.total_cmp(&b.1))
            .unwrap();
        if mag <= PIVOT_TOL {
            continue;
        }
        rows.swap(pivot_row, best);
        let p = rows[pivot_row][col];
        for x in rows[pivot_row].iter_mut() {
            *x /= p;
        }
        let pivot = rows[pivot_row].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != pivot_row {
                let f = row[col];
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= f * y;
                }
            }
        }
        pivot_row += 1;
    }
    rows.truncate(pivot_row);
    for row in &mut rows {
        for x in row.iter_mut() {
            if x.norm() <= 1e-14 {
                *x = C64::new(0.0, 0.0);
            }
        }
        let k = (0..row.len()).max_by(|&a, &b| row[a].norm().total_cmp(&row[b].norm())).unwrap();
        let s = row[k];
        for x in row.iter_mut() {
            *x /= s;
        }
        row[k] = C64::new(1.0, 0.0);
    }
    rows
}

fn orthonormal(vectors: &[Vec<C64>]) -> Vec<Vec<C64>> {
    let mut out: Vec<Vec<C64>> = Vec::new();
    for v in vectors {
        let mut w = v.clone();
        for _ in 0..2 {
            for b in &out {
                let c = inner(b, &w);
                for (x, y) in w.iter_mut().zip(b) {
                    *x -= c * y;
                }
            }
        }
        let n = vec_norm(&w);
        if n > PIVOT_TOL {
            out.push(w.into_iter().map(|x| x / n).collect());
        }
    }
    out
}

/// All operators satisfying `kind` with `H`, optionally restricted to
/// `span(basis)`. Without a basis the search runs over all `n×n` matrices
/// and coefficients are the matrix entries in column-major order.
pub fn discover(h: &CMatrix, kind: RelationKind, basis: Option<&[CMatrix]>) -> Discovery {
    let n = h.rows();
    let map = relation_map(h, kind);
    let vecs: Option<Vec<Vec<C64>>> = basis.map(|b| b.iter().map(CMatrix::vectorize).collect());
    let reduced = match &vecs {
        Some(v) if v.is_empty() => CMatrix::zeros(n * n, 0),
        Some(v) => {
            let b = CMatrix::from_columns(v).expect("basis elements share a shape");
            &map * &b
        }
        None => map,
    };
    let null = if reduced.cols() == 0 { Vec::new() } else { nullspace(&reduced, NULL_TOL) };
    let coefficients = canonical_rows(null);
    let to_matrix = |coeffs: &[C64]| -> CMatrix {
        match &vecs {
            Some(v) => {
                let mut flat = vec![C64::new(0.0, 0.0); n * n];
                for (c, bv) in coeffs.iter().zip(v) {
                    for (x, y) in flat.iter_mut().zip(bv) {
                        *x += c * y;
                    }
                }
                CMatrix::unvectorize(&flat, n, n)
            }
            None => CMatrix::unvectorize(coeffs, n, n),
        }
    };
    let operators: Vec<SymOp> = coefficients
        .iter()
        .enumerate()
        .map(|(k, c)| SymOp::new(kind, to_matrix(c), format!("{}#{k}", kind.tag())))
        .collect();
    let residuals = operators.iter().map(|op| relation_residual(h, &op.matrix, kind)).collect();
    let span = orthonormal(&operators.iter().map(|op| op.matrix.vectorize()).collect::<Vec<_>>());
    Discovery { kind, dimension: operators.len(), operators, coefficients, residuals, labels: None, span }
}

/// [`discover`] over the 16 gamma products, with gamma-expression labels.
pub fn discover_in_basis16(h: &CMatrix, kind: RelationKind) -> Discovery {
    let (labels, mats): (Vec<GammaLabel>, Vec<CMatrix>) = basis16().into_iter().unzip();
    let mut d = discover(h, kind, Some(&mats));
    for (op, coeffs) in d.operators.iter_mut().zip(&d.coefficients) {
        let mut e = GammaExpr::new();
        for (l, &c) in labels.iter().zip(coeffs) {
            if c.norm() > 1e-12 {
                e.push(l.clone(), c);
            }
        }
        op.label = e.to_string();
    }
    d.labels = Some(labels);
    d
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{gamma_mu, gamma_product};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn relation_map_matches_direct_evaluation() {
        let h = CMatrix::from_fn(3, 3, |i, j| c(i as f64 - 0.3 * j as f64, 0.2 * (i * j) as f64 + 0.1));
        let m = CMatrix::from_fn(3, 3, |i, j| c(0.7 * j as f64, i as f64 - 1.0));
        for kind in RelationKind::ALL {
            let via_map = relation_map(&h, kind).mul_vec(&m.vectorize());
            let direct = super::super::relation_matrix(&h, &m, kind).vectorize();
            let d: Vec<C64> = via_map.iter().zip(&direct).map(|(a, b)| a - b).collect();
            assert!(vec_norm(&d) < 1e-13, "{kind}");
        }
    }

    #[test]
    fn dimer_chiral_space() {
        let h = CMatrix::from_real_rows(&[[0.0, 1.0], [1.0, 0.0]]).unwrap();
        let d = discover(&h, RelationKind::LinearAnticommute, None);
        // Traceless matrices anticommuting with σ_x: σ_y and σ_z.
        assert_eq!(d.dimension, 2);
        assert!(d.contains(&CMatrix::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0)]), 1e-12));
        assert!(!d.contains(&CMatrix::identity(2), 1e-6));
        assert!(d.max_residual() < 1e-14);
    }

    #[test]
    fn canonical_normalization() {
        let h = &gamma_mu(5).unwrap().scale(c(0.8, 0.1)) - &gamma_mu(1).unwrap().scale(c(0.3, 0.9));
        let d = discover_in_basis16(&h, RelationKind::LinearAnticommute);
        assert_eq!(d.dimension, 8);
        for coeffs in &d.coefficients {
            let max = coeffs.iter().map(|x| x.norm()).fold(0.0, f64::max);
            assert!((max - 1.0).abs() < 1e-14);
            assert!(coeffs.iter().any(|&x| x == c(1.0, 0.0)));
        }
        assert!(d.contains(&gamma_mu(0).unwrap(), 1e-9));
        assert!(d.contains(&gamma_product(&[1, 5]).unwrap(), 1e-9));
        assert_eq!(d.gamma_exprs().unwrap().len(), 8);
    }

    #[test]
    fn restricted_search_with_empty_basis() {
        let d = discover(&CMatrix::identity(2), RelationKind::LinearAnticommute, Some(&[]));
        assert_eq!(d.dimension, 0);
    }
}
