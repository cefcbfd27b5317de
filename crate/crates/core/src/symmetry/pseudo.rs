//! Pseudo-chirality `η Hᵀ η⁻¹ = −H`: constructions and properties.

use num_complex::Complex64 as C64;
use serde::Serialize;

use super::{check, relation_residual, RelationKind, SymOp, SymmetryError, MAX_CONDITION, TOL_EXACT};
use crate::linalg::{condition_number, eig, inner, normalize, vec_norm, CMatrix};

/// `η = X ζ*` from anti-pseudo-Hermiticity `ζ` and bosonic `Λ = XK`.
pub fn product_pseudo(x: &CMatrix, zeta: &CMatrix) -> SymOp {
    SymOp::new(RelationKind::TransposeMinus, x * &zeta.conj(), "X zeta*")
}

/// `H = S + A` with `S = (H + Hᵀ)/2` symmetric and `A = (H − Hᵀ)/2`
/// antisymmetric.
pub fn sa_split(h: &CMatrix) -> (CMatrix, CMatrix) {
    let ht = h.transpose();
    ((h + &ht).scale_real(0.5), (h - &ht).scale_real(0.5))
}

#[derive(Clone, Debug)]
pub enum SaOutcome {
    /// `{A, S} = 0`: `η = A` is pseudo-chiral and `Π = SA` chiral.
    Found {
        eta: SymOp,
        /// `None` when `S = 0`, where `SA` vanishes.
        pi: Option<SymOp>,
        eta_residual: f64,
        pi_residual: Option<f64>,
        /// `A` is singular; `eta_residual` uses the inverse-free form
        /// `ηHᵀ + Hη`.
        eta_singular: bool,
    },
    /// `{A, S} ≠ 0`; carries `‖{A, S}‖ / (‖A‖‖S‖)`.
    NotAnticommuting { anticommutator_norm: f64 },
    /// `H` is symmetric, so `A = 0` and the rule gives nothing.
    Symmetric,
}

/// The symmetric/antisymmetric rule: if `S` and `A` anticommute then
/// `AHᵀ + HA = {A, S} = 0`.
pub fn pseudo_from_sa(h: &CMatrix) -> SaOutcome {
    let (s, a) = sa_split(h);
    let (a_norm, s_norm) = (a.norm(), s.norm());
    if a_norm == 0.0 {
        return SaOutcome::Symmetric;
    }
    let anti = if s_norm == 0.0 { 0.0 } else { a.anticommutator(&s).norm() / (a_norm * s_norm) };
    if anti > TOL_EXACT {
        return SaOutcome::NotAnticommuting { anticommutator_norm: anti };
    }
    let eta = SymOp::new(RelationKind::TransposeMinus, a.clone(), "A");
    let eta_singular = !(condition_number(&a) <= MAX_CONDITION);
    let eta_residual = relation_residual(h, &eta.matrix, eta.kind);
    let (pi, pi_residual) = if s_norm == 0.0 {
        (None, None)
    } else {
        let pi = SymOp::chiral(&s * &a, "S A");
        let r = relation_residual(h, &pi.matrix, pi.kind);
        (Some(pi), Some(r))
    };
    SaOutcome::Found { eta, pi, eta_residual, pi_residual, eta_singular }
}

/// `H̃ = −iH`, so that `H = iH̃`.
pub fn wick_rotate(h: &CMatrix) -> CMatrix {
    h.scale(C64::new(0.0, -1.0))
}

#[derive(Clone, Debug, Serialize)]
pub struct CommutantCheck {
    /// `‖[ϖ, H]‖ / (‖ϖ‖‖H‖)`.
    pub commutator: f64,
    /// Residual of `ϖη` as a pseudo-chiral operator, when `ϖ` commutes.
    pub residual: Option<f64>,
}

#[derive(Clone, Debug, Serialize)]
pub struct PseudoReport {
    /// Residual of `η` itself.
    pub eta_residual: f64,
    /// Residual of `ηᵀ`.
    pub transpose_residual: f64,
    pub commutants: Vec<CommutantCheck>,
    /// `Hᵀ = −H`, i.e. whether `η = 𝟙` already works.
    pub identity_residual: f64,
    /// For Hermitian `H`: `‖Hη + ηH*‖` normalized, the particle-hole form
    /// of `{H, ηK} = 0`.
    pub particle_hole_residual: Option<f64>,
}

impl PseudoReport {
    /// `η`, `ηᵀ` and every commuting `ϖη` pass at `tol`.
    pub fn all_pass(&self, tol: f64) -> bool {
        self.eta_residual <= tol
            && self.transpose_residual <= tol
            && self.commutants.iter().all(|c| c.residual.is_none_or(|r| r <= tol))
    }
}

/// Derived pseudo-chiral operators: `ηᵀ`, `ϖη` for each supplied `ϖ` that
/// commutes with `H`, and the Hermitian particle-hole equivalence.
pub fn pseudo_properties(h: &CMatrix, eta: &CMatrix, commutants: &[CMatrix]) -> PseudoReport {
    let kind = RelationKind::TransposeMinus;
    let h_norm = h.norm();
    let commutants = commutants
        .iter()
        .map(|w| {
            let scale = (w.norm() * h_norm).max(f64::MIN_POSITIVE);
            let commutator = w.commutator(h).norm() / scale;
            let residual = (commutator <= TOL_EXACT).then(|| relation_residual(h, &(w * eta), kind));
            CommutantCheck { commutator, residual }
        })
        .collect();
    let particle_hole_residual = h.is_hermitian(1e-14 * h_norm.max(1.0)).then(|| {
        relation_residual(h, eta, RelationKind::AntilinearAnticommute)
    });
    PseudoReport {
        eta_residual: relation_residual(h, eta, kind),
        transpose_residual: relation_residual(h, &eta.transpose(), kind),
        commutants,
        identity_residual: relation_residual(h, &CMatrix::identity(h.rows()), kind),
        particle_hole_residual,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MappingReport {
    /// Modes whose partner `−ε` is simple, checked by proportionality.
    pub proportional_checked: usize,
    /// Modes whose partner is degenerate, checked by eigenspace residual.
    pub residual_checked: usize,
    /// Largest deviation seen across both kinds of check.
    pub max_deviation: f64,
    /// Largest `|ε_ν + ε_μ|` for the matched partner.
    pub max_partner_gap: f64,
}

impl MappingReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.max_deviation <= tol && self.max_partner_gap <= tol
    }
}

/// Checks that `η ψ̄_μ ∝ ψ_ν` with `ε_ν = −ε_μ` for every left eigenvector.
///
/// Where `−ε_μ` is simple (no other eigenvalue within `cluster` of it) the
/// mapped vector must be parallel to `ψ_ν`; otherwise it is only required
/// to lie in the right eigenspace: `‖H v + ε_μ v‖ ≤ dev`.
pub fn left_right_mapping(h: &CMatrix, eta: &CMatrix, cluster: f64) -> Result<MappingReport, SymmetryError> {
    let op = SymOp::new(RelationKind::TransposeMinus, eta.clone(), "eta");
    check(h, &op)?;
    let sys = eig(h)?;
    let scale = h.norm().max(f64::MIN_POSITIVE);
    let mut report =
        MappingReport { proportional_checked: 0, residual_checked: 0, max_deviation: 0.0, max_partner_gap: 0.0 };
    for mu in 0..sys.len() {
        let target = -sys.values[mu];
        let (nu, gap) = sys
            .values
            .iter()
            .enumerate()
            .map(|(k, v)| (k, (v - target).norm()))
            .min_by(|a, b| a.1.total_cmp(&b.1))
            .expect("non-empty spectrum");
        report.max_partner_gap = report.max_partner_gap.max(gap / scale);
        let mut v = eta.mul_vec(&sys.left[mu]);
        normalize(&mut v);
        let neighbours = sys.values.iter().filter(|x| (*x - target).norm() <= cluster).count();
        let deviation = if neighbours <= 1 {
            report.proportional_checked += 1;
            let psi = &sys.right[nu];
            let c = inner(psi, &v);
            let diff: Vec<C64> = v.iter().zip(psi).map(|(a, b)| a - c * b).collect();
            vec_norm(&diff)
        } else {
            report.residual_checked += 1;
            let hv = h.mul_vec(&v);
            let r: Vec<C64> = hv.iter().zip(&v).map(|(a, b)| a - target * b).collect();
            vec_norm(&r) / scale
        };
        report.max_deviation = report.max_deviation.max(deviation);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::{gamma_mu, gamma_product};
    use crate::symmetry::TOL_MAPPING;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    fn eq14(g1: C64, g2: C64) -> CMatrix {
        &gamma_mu(5).unwrap().scale(g1) - &gamma_mu(1).unwrap().scale(g2)
    }

    #[test]
    fn sa_split_of_simple_dirac_model() {
        let (g1, g2) = (c(0.7, 0.2), c(-0.3, 1.1));
        let (s, a) = sa_split(&eq14(g1, g2));
        assert!(s.approx_eq(&gamma_mu(5).unwrap().scale(g1), 1e-15));
        assert!(a.approx_eq(&gamma_mu(1).unwrap().scale(-g2), 1e-15));
    }

    #[test]
    fn sa_split_of_symmetric_matrix() {
        let h = gamma_mu(5).unwrap();
        let (s, a) = sa_split(&h);
        assert_eq!(s, h);
        assert_eq!(a.norm(), 0.0);
        assert!(matches!(pseudo_from_sa(&h), SaOutcome::Symmetric));
    }

    #[test]
    fn sa_rule_on_simple_dirac_model() {
        let h = eq14(c(1.1, 0.0), c(0.4, 0.3));
        let SaOutcome::Found { eta, pi, eta_residual, pi_residual, eta_singular } = pseudo_from_sa(&h) else {
            panic!("rule should apply");
        };
        assert!(!eta_singular);
        assert!(eta_residual <= TOL_EXACT && pi_residual.unwrap() <= TOL_EXACT);
        // η ∝ γ¹ and Π ∝ γ¹γ⁵.
        let scale = eta.matrix[(0, 3)] / gamma_mu(1).unwrap()[(0, 3)];
        assert!(eta.matrix.approx_eq(&gamma_mu(1).unwrap().scale(scale), 1e-14));
        let pi = pi.unwrap().matrix;
        let g15 = gamma_product(&[1, 5]).unwrap();
        let k = (0..4).flat_map(|i| (0..4).map(move |j| (i, j))).find(|&(i, j)| g15[(i, j)].norm() > 0.5).unwrap();
        assert!(pi.approx_eq(&g15.scale(pi[k] / g15[k]), 1e-14));
    }

    #[test]
    fn wick_rotation_of_anti_hermitian_is_hermitian() {
        let h = CMatrix::from_rows(&[vec![c(0.0, 1.0), c(2.0, 1.0)], vec![c(-2.0, 1.0), c(0.0, -0.5)]]).unwrap();
        assert!(h.approx_eq(&-h.adjoint(), 0.0));
        assert!(wick_rotate(&h).is_hermitian(1e-15));
    }

    #[test]
    fn identity_pseudo_for_antisymmetric() {
        let h = CMatrix::from_rows(&[vec![c(0.0, 0.0), c(0.3, 2.0)], vec![c(-0.3, -2.0), c(0.0, 0.0)]]).unwrap();
        let r = pseudo_properties(&h, &CMatrix::identity(2), &[]);
        assert_eq!(r.identity_residual, 0.0);
        assert_eq!(r.eta_residual, 0.0);
        let eta = product_pseudo(&CMatrix::identity(2), &CMatrix::identity(2));
        assert_eq!(eta.matrix, CMatrix::identity(2));
    }

    #[test]
    fn commutant_times_eta_passes() {
        let h = eq14(c(0.9, -0.1), c(0.5, 0.6));
        let eta = gamma_mu(1).unwrap();
        let r = pseudo_properties(&h, &eta, &[h.clone(), CMatrix::identity(4), gamma_mu(0).unwrap()]);
        assert!(r.all_pass(TOL_EXACT), "{r:?}");
        assert!(r.commutants[0].residual.is_some());
        assert!(r.commutants[2].residual.is_none(), "γ⁰ anticommutes, so it is skipped");
    }

    #[test]
    fn mapping_on_simple_dirac_model() {
        let h = eq14(c(1.3, 0.2), c(0.4, -0.7));
        let r = left_right_mapping(&h, &gamma_mu(1).unwrap(), 1e-6).unwrap();
        assert!(r.passed(TOL_MAPPING), "{r:?}");
        // ±e are each twofold, so only the eigenspace residual applies.
        assert_eq!(r.residual_checked, 4);
    }
}
