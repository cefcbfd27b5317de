//! Dirac and Pauli matrices, the 16-element product basis of 4×4 matrices,
//! and checks of the anticommutation identities built on them.
//!
//! Entries of every gamma product lie in `{0, ±1, ±i}`, so the identity
//! checks run in exact Gaussian-integer arithmetic.

mod expr;

use std::ops::{Add, Mul};

use num_complex::Complex64 as C64;
use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{rank, CMatrix};

pub use expr::{expr_to_matrix, parse_complex, GammaExpr, GammaLabel};

/// Gamma indices in canonical order.
pub const INDICES: [u8; 5] = [0, 1, 2, 3, 5];

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CliffordError {
    #[error("malformed gamma label: {0}")]
    MalformedLabel(String),
    #[error("gamma expression parse error: {0}")]
    Parse(String),
}

/// Metric signature `ξ^μ`: `+1` for `μ ∈ {0, 5}`, `−1` for `μ ∈ {1, 2, 3}`.
pub fn xi(mu: u8) -> f64 {
    match mu {
        0 | 5 => 1.0,
        _ => -1.0,
    }
}

/// `(γ^μ)ᵀ = sign · γ^μ`.
pub fn transpose_sign(mu: u8) -> f64 {
    match mu {
        1 | 3 => -1.0,
        _ => 1.0,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
struct GaussInt {
    re: i64,
    im: i64,
}

impl GaussInt {
    const ZERO: GaussInt = GaussInt { re: 0, im: 0 };
    const ONE: GaussInt = GaussInt { re: 1, im: 0 };
    const I: GaussInt = GaussInt { re: 0, im: 1 };

    fn neg(self) -> Self {
        GaussInt { re: -self.re, im: -self.im }
    }
}

impl Add for GaussInt {
    type Output = GaussInt;
    fn add(self, o: GaussInt) -> GaussInt {
        GaussInt { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Mul for GaussInt {
    type Output = GaussInt;
    fn mul(self, o: GaussInt) -> GaussInt {
        GaussInt { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

/// Exact 4×4 Gaussian-integer matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Exact4([[GaussInt; 4]; 4]);

impl Exact4 {
    fn zero() -> Self {
        Exact4([[GaussInt::ZERO; 4]; 4])
    }

    fn identity() -> Self {
        let mut m = Self::zero();
        for i in 0..4 {
            m.0[i][i] = GaussInt::ONE;
        }
        m
    }

    fn scaled(self, s: i64) -> Self {
        let mut m = self;
        for row in m.0.iter_mut() {
            for z in row.iter_mut() {
                *z = GaussInt { re: z.re * s, im: z.im * s };
            }
        }
        m
    }

    fn is_zero(&self) -> bool {
        self.0.iter().flatten().all(|z| *z == GaussInt::ZERO)
    }

    fn to_cmatrix(self) -> CMatrix {
        CMatrix::from_fn(4, 4, |i, j| C64::new(self.0[i][j].re as f64, self.0[i][j].im as f64))
    }
}

impl Add for Exact4 {
    type Output = Exact4;
    fn add(self, o: Exact4) -> Exact4 {
        let mut m = Exact4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = self.0[i][j] + o.0[i][j];
            }
        }
        m
    }
}

impl Mul for Exact4 {
    type Output = Exact4;
    fn mul(self, o: Exact4) -> Exact4 {
        let mut m = Exact4::zero();
        for i in 0..4 {
            for j in 0..4 {
                m.0[i][j] = (0..4).fold(GaussInt::ZERO, |acc, k| acc + self.0[i][k] * o.0[k][j]);
            }
        }
        m
    }
}

fn anti(a: Exact4, b: Exact4) -> Exact4 {
    a * b + b * a
}

/// Pauli matrices as 2×2 Gaussian-integer blocks; index 0 is the identity.
fn pauli_exact(k: u8) -> [[GaussInt; 2]; 2] {
    let (z, o, i) = (GaussInt::ZERO, GaussInt::ONE, GaussInt::I);
    match k {
        0 => [[o, z], [z, o]],
        1 => [[z, o], [o, z]],
        2 => [[z, i.neg()], [i, z]],
        3 => [[o, z], [z, o.neg()]],
        _ => unreachable!("pauli index"),
    }
}

/// Block matrix `[[a·P, b·P'], [c·P'', d·P''']]` from Pauli blocks.
fn blocks(tl: Option<(i64, u8)>, tr: Option<(i64, u8)>, bl: Option<(i64, u8)>, br: Option<(i64, u8)>) -> Exact4 {
    let mut m = Exact4::zero();
    for (blk, (r0, c0)) in [(tl, (0, 0)), (tr, (0, 2)), (bl, (2, 0)), (br, (2, 2))] {
        if let Some((s, k)) = blk {
            let p = pauli_exact(k);
            for i in 0..2 {
                for j in 0..2 {
                    m.0[r0 + i][c0 + j] = GaussInt { re: p[i][j].re * s, im: p[i][j].im * s };
                }
            }
        }
    }
    m
}

fn gamma_exact(mu: u8) -> Exact4 {
    match mu {
        0 => blocks(Some((1, 0)), None, None, Some((-1, 0))),
        j @ 1..=3 => blocks(None, Some((1, j)), Some((-1, j)), None),
        5 => blocks(None, Some((1, 0)), Some((1, 0)), None),
        _ => unreachable!("gamma index validated by GammaLabel"),
    }
}

fn product_exact(indices: &[u8]) -> Exact4 {
    indices.iter().fold(Exact4::identity(), |acc, &mu| acc * gamma_exact(mu))
}

/// Matrix of a canonical gamma product.
pub fn gamma(label: &GammaLabel) -> CMatrix {
    product_exact(label.indices()).to_cmatrix()
}

/// Matrix of a single Dirac matrix `γ^μ`.
pub fn gamma_mu(mu: u8) -> Result<CMatrix, CliffordError> {
    GammaLabel::single(mu).map(|l| gamma(&l))
}

/// Matrix of an arbitrary ordered product `γ^{i1} γ^{i2} …`.
pub fn gamma_product(indices: &[u8]) -> Result<CMatrix, CliffordError> {
    let (label, sign) = GammaLabel::canonical(indices)?;
    Ok(gamma(&label).scale_real(sign))
}

/// Pauli matrix `σ_k`, `k ∈ {0, 1, 2, 3}` with `σ_0 = 𝟙₂`.
pub fn pauli(k: u8) -> CMatrix {
    let p = pauli_exact(k);
    CMatrix::from_fn(2, 2, |i, j| C64::new(p[i][j].re as f64, p[i][j].im as f64))
}

/// Outcome of an identity-family check; `violations` must be empty.
#[derive(Clone, Debug, Default, Serialize)]
pub struct IdentityReport {
    pub checked: usize,
    pub violations: Vec<String>,
    /// Largest relative residual seen (exact checks report 0).
    pub max_residual: f64,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `{γ^μ, γ^ν} = 2 ξ^μ δ^{μν} 𝟙₄` for all 25 ordered index pairs.
pub fn verify_clifford() -> IdentityReport {
    let mut report = IdentityReport::default();
    for &mu in &INDICES {
        for &nu in &INDICES {
            report.checked += 1;
            let ac = anti(gamma_exact(mu), gamma_exact(nu));
            let expected = if mu == nu { Exact4::identity().scaled(2 * xi(mu) as i64) } else { Exact4::zero() };
            if ac != expected {
                report.violations.push(format!("{{g{mu}, g{nu}}}"));
            }
        }
    }
    report
}

/// Product identities exactly on all index combinations, plus the
/// mixed-sum identity on `draws` random coefficient sets per index.
///
/// * `{γ^j γ^k, γ^l} = 0` for `j ≠ k`, `l ∈ {j, k}`
/// * `{γ^j γ^k, γ^k γ^l} = 0` for distinct `j, k, l`
/// * `{γ^j γ̃, γ̃} = 0` with `γ̃ = Σ_{k≠j} a_k γ^k`
pub fn verify_product_identities<R: Rng>(rng: &mut R, draws: usize) -> IdentityReport {
    let mut report = IdentityReport::default();
    for &j in &INDICES {
        for &k in &INDICES {
            if j == k {
                continue;
            }
            let jk = gamma_exact(j) * gamma_exact(k);
            for l in [j, k] {
                report.checked += 1;
                if !anti(jk, gamma_exact(l)).is_zero() {
                    report.violations.push(format!("{{g{j}g{k}, g{l}}}"));
                }
            }
            for &l in &INDICES {
                if l == j || l == k {
                    continue;
                }
                report.checked += 1;
                let kl = gamma_exact(k) * gamma_exact(l);
                if !anti(jk, kl).is_zero() {
                    report.violations.push(format!("{{g{j}g{k}, g{k}g{l}}}"));
                }
            }
        }
    }
    for _ in 0..draws {
        for &j in &INDICES {
            let mut tilde = CMatrix::zeros(4, 4);
            for &k in INDICES.iter().filter(|&&k| k != j) {
                let a = C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
                tilde = &tilde + &gamma_exact(k).to_cmatrix().scale(a);
            }
            let left = &gamma_exact(j).to_cmatrix() * &tilde;
            let ac = left.anticommutator(&tilde);
            let scale = (left.norm() * tilde.norm()).max(f64::MIN_POSITIVE);
            let r = ac.norm() / scale;
            report.checked += 1;
            report.max_residual = report.max_residual.max(r);
            if r > 1e-12 {
                report.violations.push(format!("{{g{j} g~, g~}} residual {r:e}"));
            }
        }
    }
    report
}

/// The 16 basis products: `𝟙`, the five `γ^μ`, and the ten canonical
/// pairs `γ^μ γ^ν` (`μ < ν`). Together they span all 4×4 matrices.
pub fn basis16() -> Vec<(GammaLabel, CMatrix)> {
    let mut labels = vec![GammaLabel::identity()];
    labels.extend(INDICES.iter().map(|&mu| GammaLabel::from_sorted(&[mu]).expect("valid index")));
    for (a, &mu) in INDICES.iter().enumerate() {
        for &nu in &INDICES[a + 1..] {
            labels.push(GammaLabel::from_sorted(&[mu, nu]).expect("valid pair"));
        }
    }
    labels.into_iter().map(|l| (l.clone(), gamma(&l))).collect()
}

/// Matrices of [`basis16`] without labels.
pub fn basis16_matrices() -> Vec<CMatrix> {
    basis16().into_iter().map(|(_, m)| m).collect()
}

/// Rank of the vectorized basis stack (16 when the basis is complete).
pub fn basis16_rank() -> usize {
    let columns: Vec<Vec<C64>> = basis16().iter().map(|(_, m)| m.vectorize()).collect();
    rank(&CMatrix::from_columns(&columns).expect("equal-length columns"), 1e-12)
}

/// Expands a 4×4 matrix in [`basis16`].
///
/// Every basis element `B` is unitary and the set is Frobenius-orthogonal,
/// so coefficients are `tr(B† M) / 4`. Terms below `1e-14·‖M‖` are dropped.
pub fn expand(m: &CMatrix) -> GammaExpr {
    assert!(m.rows() == 4 && m.cols() == 4, "expansion needs a 4x4 matrix");
    let cut = 1e-14 * m.norm().max(f64::MIN_POSITIVE);
    let mut e = GammaExpr::new();
    for (label, b) in basis16() {
        let coeff = (&b.adjoint() * m).trace() / 4.0;
        if coeff.norm() > cut {
            e.push(label, coeff);
        }
    }
    e
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn gamma0_and_gamma5_entries() {
        let g0 = gamma_mu(0).unwrap();
        assert_eq!(g0, CMatrix::from_diag(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0)]));
        let g5 = gamma_mu(5).unwrap();
        let expected = CMatrix::from_real_rows(&[
            [0.0, 0.0, 1.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
        ])
        .unwrap();
        assert_eq!(g5, expected);
    }

    #[test]
    fn documented_diagonal_products() {
        let g12 = gamma_product(&[1, 2]).unwrap();
        assert_eq!(g12, CMatrix::from_diag(&[c(0.0, -1.0), c(0.0, 1.0), c(0.0, -1.0), c(0.0, 1.0)]));
        let g35 = gamma_product(&[3, 5]).unwrap();
        assert_eq!(g35, CMatrix::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0), c(-1.0, 0.0), c(1.0, 0.0)]));
    }

    #[test]
    fn clifford_relations_exact() {
        let r = verify_clifford();
        assert_eq!(r.checked, 25);
        assert!(r.passed(), "{:?}", r.violations);
    }

    #[test]
    fn product_identities_hold() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let r = verify_product_identities(&mut rng, 10);
        assert!(r.passed(), "{:?}", r.violations);
        assert_eq!(r.checked, 40 + 60 + 50);
    }

    #[test]
    fn squares_of_products() {
        let g015 = gamma_product(&[0, 1, 5]).unwrap();
        assert_eq!(&g015 * &g015, CMatrix::identity(4));
        for (a, &j) in INDICES.iter().enumerate() {
            for &k in &INDICES[a + 1..] {
                let p = gamma_product(&[j, k]).unwrap();
                let sign = -xi(j) * xi(k);
                assert_eq!(&p * &p, CMatrix::identity(4).scale_real(sign), "g{j}g{k}");
            }
        }
    }

    #[test]
    fn transpose_signs() {
        for &mu in &INDICES {
            let g = gamma_mu(mu).unwrap();
            assert_eq!(g.transpose(), g.scale_real(transpose_sign(mu)), "g{mu}");
        }
    }

    #[test]
    fn basis_is_complete() {
        assert_eq!(basis16().len(), 16);
        assert_eq!(basis16_rank(), 16);
    }

    #[test]
    fn expansion_of_basis_element_and_random_matrix() {
        let e = expand(&gamma_product(&[0, 5]).unwrap());
        assert_eq!(e.terms().len(), 1);
        assert_eq!(e.terms()[0].0, GammaLabel::from_sorted(&[0, 5]).unwrap());
        assert!((e.terms()[0].1 - c(1.0, 0.0)).norm() < 1e-15);

        let m = CMatrix::from_fn(4, 4, |i, j| c((i as f64 * 1.3 - j as f64).sin(), (i * j) as f64 * 0.1));
        assert!(expand(&m).to_matrix().approx_eq(&m, 1e-12));
    }

    #[test]
    fn expression_to_matrix() {
        let e: GammaExpr = "(1+0i)*g5 - (0+0i)*g1".parse().unwrap();
        assert_eq!(e.to_matrix(), gamma_mu(5).unwrap());
    }

    #[test]
    fn triple_product_is_proportional_to_pair() {
        // γ⁰γ¹γ²γ³γ⁵ ∝ 𝟙, so triples reduce to pairs up to a phase.
        let all = gamma_product(&[0, 1, 2, 3, 5]).unwrap();
        let scalar = all[(0, 0)];
        assert!(all.approx_eq(&CMatrix::identity(4).scale(scalar), 0.0));
        assert!((scalar.norm() - 1.0).abs() < 1e-15);
    }
}
