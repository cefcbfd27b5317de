//! General complex eigendecomposition.
//!
//! Householder reduction to upper Hessenberg form, then single-shift complex
//! QR sweeps with Wilkinson shifts down to a Schur form `A = U T U†`. Right
//! and left eigenvectors come from back/forward substitution on `T`.

use num_complex::Complex64 as C64;

use super::matrix::{normalize, vec_norm, CMatrix};
use super::LinalgError;

/// Residual bound, relative to `‖H‖`, every eigenpair is expected to meet.
pub const TOL_EIG: f64 = 1e-10;

const MAX_SWEEPS_PER_EIGENVALUE: usize = 60;

/// Eigenvalues with matched right and left eigenvectors.
///
/// Left vectors follow the transpose convention `ψ̄ᵀ H = ε ψ̄ᵀ`, i.e. they
/// are right eigenvectors of `Hᵀ` (not of `H†`).
#[derive(Clone, Debug)]
pub struct EigenSystem {
    pub values: Vec<C64>,
    /// Column `μ` is the unit-norm right eigenvector for `values[μ]`.
    pub right: Vec<Vec<C64>>,
    /// Column `μ` is the unit-norm left eigenvector for `values[μ]`.
    pub left: Vec<Vec<C64>>,
    /// `‖Hψ − εψ‖` per pair.
    pub right_residuals: Vec<f64>,
    /// `‖Hᵀψ̄ − εψ̄‖` per pair.
    pub left_residuals: Vec<f64>,
    /// Frobenius norm of the decomposed matrix.
    pub matrix_norm: f64,
}

impl EigenSystem {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Largest residual relative to `‖H‖`.
    pub fn max_relative_residual(&self) -> f64 {
        let scale = self.matrix_norm.max(f64::MIN_POSITIVE);
        self.right_residuals
            .iter()
            .chain(&self.left_residuals)
            .fold(0.0_f64, |m, &r| m.max(r / scale))
    }
}

/// Eigendecomposition of a general square complex matrix.
///
/// Eigenvalues are sorted by real part, then imaginary part, ties broken by
/// their position on the Schur diagonal.
pub fn eig(h: &CMatrix) -> Result<EigenSystem, LinalgError> {
    let (t, u) = schur(h)?;
    let n = h.rows();
    let t_norm = t.norm();
    let smin = (f64::EPSILON * t_norm).max(f64::MIN_POSITIVE * 1e10);

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        let (x, y) = (t[(a, a)], t[(b, b)]);
        x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)).then(a.cmp(&b))
    });

    let ht = h.transpose();
    let mut sys = EigenSystem {
        values: Vec::with_capacity(n),
        right: Vec::with_capacity(n),
        left: Vec::with_capacity(n),
        right_residuals: Vec::with_capacity(n),
        left_residuals: Vec::with_capacity(n),
        matrix_norm: h.norm(),
    };
    let u_conj = u.conj();
    for k in order {
        let lambda = t[(k, k)];
        let mut x = triangular_right_vector(&t, k, smin);
        let mut w = triangular_left_vector(&t, k, smin);
        normalize(&mut x);
        normalize(&mut w);
        let mut right = u.mul_vec(&x);
        let mut left = u_conj.mul_vec(&w);
        normalize(&mut right);
        normalize(&mut left);
        sys.right_residuals.push(residual(h, &right, lambda));
        sys.left_residuals.push(residual(&ht, &left, lambda));
        sys.values.push(lambda);
        sys.right.push(right);
        sys.left.push(left);
    }
    Ok(sys)
}

/// Eigenvalues only, in the same deterministic order as [`eig`].
pub fn eigenvalues(h: &CMatrix) -> Result<Vec<C64>, LinalgError> {
    let (t, _) = schur(h)?;
    let mut vals: Vec<C64> = (0..t.rows()).map(|i| t[(i, i)]).collect();
    vals.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(vals)
}

fn residual(h: &CMatrix, v: &[C64], lambda: C64) -> f64 {
    let hv = h.mul_vec(v);
    let diff: Vec<C64> = hv.iter().zip(v).map(|(a, b)| a - lambda * b).collect();
    vec_norm(&diff)
}

fn guarded(d: C64, smin: f64) -> C64 {
    if d.norm() < smin {
        C64::new(smin, 0.0)
    } else {
        d
    }
}

/// Solves `(T − t_kk) x = 0` with `x_k = 1` and `x_j = 0` for `j > k`.
fn triangular_right_vector(t: &CMatrix, k: usize, smin: f64) -> Vec<C64> {
    let n = t.rows();
    let lambda = t[(k, k)];
    let mut x = vec![C64::new(0.0, 0.0); n];
    x[k] = C64::new(1.0, 0.0);
    for j in (0..k).rev() {
        let s: C64 = ((j + 1)..=k).map(|l| t[(j, l)] * x[l]).sum();
        x[j] = -s / guarded(t[(j, j)] - lambda, smin);
    }
    x
}

/// Solves `wᵀ (T − t_kk) = 0` with `w_k = 1` and `w_j = 0` for `j < k`.
fn triangular_left_vector(t: &CMatrix, k: usize, smin: f64) -> Vec<C64> {
    let n = t.rows();
    let lambda = t[(k, k)];
    let mut w = vec![C64::new(0.0, 0.0); n];
    w[k] = C64::new(1.0, 0.0);
    for j in (k + 1)..n {
        let s: C64 = (k..j).map(|l| w[l] * t[(l, j)]).sum();
        w[j] = -s / guarded(t[(j, j)] - lambda, smin);
    }
    w
}

/// Complex Schur form: returns `(T, U)` with `A = U T U†`, `T` upper
/// triangular and `U` unitary.
pub fn schur(a: &CMatrix) -> Result<(CMatrix, CMatrix), LinalgError> {
    if !a.is_square() {
        return Err(LinalgError::NotSquare { rows: a.rows(), cols: a.cols() });
    }
    if !a.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let n = a.rows();
    let (mut h, mut u) = hessenberg(a);
    if n <= 1 {
        return Ok((h, u));
    }
    let norm = h.norm().max(f64::MIN_POSITIVE);
    let zero = C64::new(0.0, 0.0);

    let mut hi = n - 1;
    let mut iter = 0usize;
    let mut total = 0usize;
    while hi > 0 {
        // Start of the unreduced block ending at `hi`.
        let mut lo = hi;
        while lo > 0 {
            let s = h[(lo - 1, lo - 1)].norm() + h[(lo, lo)].norm();
            let s = if s == 0.0 { norm } else { s };
            if h[(lo, lo - 1)].norm() <= f64::EPSILON * s {
                h[(lo, lo - 1)] = zero;
                break;
            }
            lo -= 1;
        }
        if lo == hi {
            hi -= 1;
            iter = 0;
            continue;
        }

        iter += 1;
        total += 1;
        if iter > MAX_SWEEPS_PER_EIGENVALUE || total > MAX_SWEEPS_PER_EIGENVALUE * n {
            let achieved = (1..n).map(|i| h[(i, i - 1)].norm()).fold(0.0, f64::max) / norm;
            return Err(LinalgError::NoConvergence { residual: achieved });
        }

        let shift = if iter.is_multiple_of(10) {
            // Exceptional shift to break cycles.
            let sub = h[(hi, hi - 1)].norm() + if hi >= 2 { h[(hi - 1, hi - 2)].norm() } else { 0.0 };
            h[(hi, hi)] + C64::new(0.75 * sub, 0.4 * sub)
        } else {
            wilkinson_shift(h[(hi - 1, hi - 1)], h[(hi - 1, hi)], h[(hi, hi - 1)], h[(hi, hi)])
        };

        qr_sweep(&mut h, &mut u, lo, hi, shift);
    }

    for i in 1..n {
        for j in 0..i {
            h[(i, j)] = zero;
        }
    }
    Ok((h, u))
}

/// Eigenvalue of the trailing 2×2 block closest to its last diagonal entry.
fn wilkinson_shift(a: C64, b: C64, c: C64, d: C64) -> C64 {
    let half = (a - d) * 0.5;
    let disc = (half * half + b * c).sqrt();
    let mean = (a + d) * 0.5;
    let (l1, l2) = (mean + disc, mean - disc);
    if (l1 - d).norm() <= (l2 - d).norm() {
        l1
    } else {
        l2
    }
}

/// Unitary rotation `G = [[c, s], [−s̄, c]]` with real `c`, chosen so that
/// `G [x; y] = [r; 0]`.
fn givens(x: C64, y: C64) -> (f64, C64) {
    let (ax, ay) = (x.norm(), y.norm());
    if ay == 0.0 {
        return (1.0, C64::new(0.0, 0.0));
    }
    if ax == 0.0 {
        return (0.0, C64::new(1.0, 0.0));
    }
    let r = ax.hypot(ay);
    (ax / r, (x / ax) * y.conj() / r)
}

/// One implicit single-shift QR sweep over the active block `lo..=hi`.
fn qr_sweep(h: &mut CMatrix, u: &mut CMatrix, lo: usize, hi: usize, shift: C64) {
    let n = h.rows();
    let mut x = h[(lo, lo)] - shift;
    let mut y = h[(lo + 1, lo)];
    for k in lo..hi {
        let (c, s) = givens(x, y);
        // Rows k, k+1 (left multiplication by G).
        let start = if k > lo { k - 1 } else { lo };
        for j in start..n {
            let (p, q) = (h[(k, j)], h[(k + 1, j)]);
            h[(k, j)] = p * c + s * q;
            h[(k + 1, j)] = -s.conj() * p + q * c;
        }
        // Columns k, k+1 (right multiplication by G†).
        let end = (k + 2).min(hi);
        for i in 0..=end {
            let (p, q) = (h[(i, k)], h[(i, k + 1)]);
            h[(i, k)] = p * c + s.conj() * q;
            h[(i, k + 1)] = -s * p + q * c;
        }
        for i in 0..n {
            let (p, q) = (u[(i, k)], u[(i, k + 1)]);
            u[(i, k)] = p * c + s.conj() * q;
            u[(i, k + 1)] = -s * p + q * c;
        }
        if k + 1 < hi {
            x = h[(k + 1, k)];
            y = h[(k + 2, k)];
        }
    }
}

/// Householder reduction `A = Q H Q†` with `H` upper Hessenberg.
fn hessenberg(a: &CMatrix) -> (CMatrix, CMatrix) {
    let n = a.rows();
    let mut h = a.clone();
    let mut q = CMatrix::identity(n);
    if n < 3 {
        return (h, q);
    }
    for k in 0..n - 2 {
        let mut v: Vec<C64> = ((k + 1)..n).map(|i| h[(i, k)]).collect();
        let xnorm = vec_norm(&v);
        if xnorm == 0.0 {
            continue;
        }
        let phase = if v[0].norm() == 0.0 { C64::new(1.0, 0.0) } else { v[0] / v[0].norm() };
        v[0] += phase * xnorm;
        let vnorm = vec_norm(&v);
        if vnorm == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|z| *z /= vnorm);

        // H ← (I − 2vv†) H
        for j in 0..n {
            let dot: C64 = v.iter().enumerate().map(|(r, vr)| vr.conj() * h[(k + 1 + r, j)]).sum();
            for (r, vr) in v.iter().enumerate() {
                h[(k + 1 + r, j)] -= *vr * dot * 2.0;
            }
        }
        // H ← H (I − 2vv†), Q ← Q (I − 2vv†)
        for m in [&mut h, &mut q] {
            for i in 0..n {
                let dot: C64 = v.iter().enumerate().map(|(r, vr)| m[(i, k + 1 + r)] * vr).sum();
                for (r, vr) in v.iter().enumerate() {
                    m[(i, k + 1 + r)] -= dot * vr.conj() * 2.0;
                }
            }
        }
        for i in (k + 2)..n {
            h[(i, k)] = C64::new(0.0, 0.0);
        }
    }
    (h, q)
}
