//! Symmetry relations between a Hamiltonian and candidate operators.
//!
//! Antilinear operators `CK` are stored by their linear part `C`; the
//! relation is evaluated in the matrix form obtained by acting on arbitrary
//! states, e.g. `{H, CK} = 0  ⇔  HC + CH* = 0`.

mod discover;
mod hidden;
mod io;
mod pseudo;

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{condition_number, CMatrix, LinalgError};

pub use discover::{discover, discover_in_basis16, Discovery};
pub use hidden::{hidden_nhph, HiddenNhph};
pub use io::{parse_symop, symop_to_string};
pub use pseudo::{
    left_right_mapping, product_pseudo, pseudo_from_sa, pseudo_properties, sa_split, wick_rotate, CommutantCheck,
    MappingReport, PseudoReport, SaOutcome,
};

/// Residual threshold for exact constructions.
pub const TOL_EXACT: f64 = 1e-10;
/// Residual threshold for operators produced by [`discover`].
pub const TOL_DISCOVERED: f64 = 1e-9;
/// Threshold for eigenvector-level mappings near degeneracies.
pub const TOL_MAPPING: f64 = 1e-7;
/// Largest condition number accepted for transpose/dagger-type operators.
pub const MAX_CONDITION: f64 = 1e8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SymmetryError {
    #[error("operator is {op}x{op} but Hamiltonian is {h}x{h}")]
    DimensionMismatch { h: usize, op: usize },
    #[error("operator '{label}' is singular or ill-conditioned (condition number {condition:e})")]
    Singular { label: String, condition: f64 },
    #[error("unknown relation '{0}'")]
    UnknownRelation(String),
    #[error("rotation-time symmetry requires a real on-site detuning, got beta = {0}")]
    ComplexDetuning(C64),
    #[error("operator parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// Which defining relation an operator enters.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RelationKind {
    /// Chiral `Π`: `{H, Π} = 0`.
    LinearAnticommute,
    /// Non-Hermitian particle-hole `Ξ = CK`: `HC + CH* = 0`.
    AntilinearAnticommute,
    /// Bosonic antilinear `Λ = XK`: `HX − XH* = 0`.
    AntilinearCommute,
    /// Pseudo-chiral `η`: `η Hᵀ η⁻¹ = −H`.
    TransposeMinus,
    /// Pseudo-Hermitian `η`: `η H† η⁻¹ = H`.
    DaggerPlus,
    /// Anti-pseudo-Hermitian `ζ`: `ζ H† ζ⁻¹ = −H`.
    DaggerMinus,
}

impl RelationKind {
    pub const ALL: [RelationKind; 6] = [
        RelationKind::LinearAnticommute,
        RelationKind::AntilinearAnticommute,
        RelationKind::AntilinearCommute,
        RelationKind::TransposeMinus,
        RelationKind::DaggerPlus,
        RelationKind::DaggerMinus,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            RelationKind::LinearAnticommute => "linear_anticommute",
            RelationKind::AntilinearAnticommute => "antilinear_anticommute",
            RelationKind::AntilinearCommute => "antilinear_commute",
            RelationKind::TransposeMinus => "transpose_minus",
            RelationKind::DaggerPlus => "dagger_plus",
            RelationKind::DaggerMinus => "dagger_minus",
        }
    }

    /// Whether the operator must be invertible for the relation to be
    /// meaningful.
    pub fn needs_inverse(self) -> bool {
        matches!(self, RelationKind::TransposeMinus | RelationKind::DaggerPlus | RelationKind::DaggerMinus)
    }
}

impl fmt::Display for RelationKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for RelationKind {
    type Err = SymmetryError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let kind = match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "linear_anticommute" | "chiral" => RelationKind::LinearAnticommute,
            "antilinear_anticommute" | "nhph" | "particle_hole" => RelationKind::AntilinearAnticommute,
            "antilinear_commute" | "bosonic" | "pt" => RelationKind::AntilinearCommute,
            "transpose_minus" | "pseudo_chiral" | "pseudochiral" => RelationKind::TransposeMinus,
            "dagger_plus" | "pseudo_hermitian" => RelationKind::DaggerPlus,
            "dagger_minus" | "anti_pseudo_hermitian" => RelationKind::DaggerMinus,
            _ => return Err(SymmetryError::UnknownRelation(s.to_string())),
        };
        Ok(kind)
    }
}

/// A candidate symmetry operator.
#[derive(Clone, Debug, PartialEq)]
pub struct SymOp {
    pub matrix: CMatrix,
    pub kind: RelationKind,
    pub label: String,
}

impl SymOp {
    pub fn new(kind: RelationKind, matrix: CMatrix, label: impl Into<String>) -> Self {
        SymOp { matrix, kind, label: label.into() }
    }

    pub fn chiral(matrix: CMatrix, label: impl Into<String>) -> Self {
        Self::new(RelationKind::LinearAnticommute, matrix, label)
    }
}

/// Unnormalized relation matrix, written without inverses:
///
/// | kind | matrix |
/// |---|---|
/// | linear_anticommute | `HΠ + ΠH` |
/// | antilinear_anticommute | `HC + CH*` |
/// | antilinear_commute | `HX − XH*` |
/// | transpose_minus | `ηHᵀ + Hη` |
/// | dagger_plus | `ηH† − Hη` |
/// | dagger_minus | `ζH† + Hζ` |
pub fn relation_matrix(h: &CMatrix, op: &CMatrix, kind: RelationKind) -> CMatrix {
    match kind {
        RelationKind::LinearAnticommute => h.anticommutator(op),
        RelationKind::AntilinearAnticommute => &(h * op) + &(op * &h.conj()),
        RelationKind::AntilinearCommute => &(h * op) - &(op * &h.conj()),
        RelationKind::TransposeMinus => &(op * &h.transpose()) + &(h * op),
        RelationKind::DaggerPlus => &(op * &h.adjoint()) - &(h * op),
        RelationKind::DaggerMinus => &(op * &h.adjoint()) + &(h * op),
    }
}

/// `‖relation‖ / (‖H‖·‖op‖)` without the invertibility requirement.
pub fn relation_residual(h: &CMatrix, op: &CMatrix, kind: RelationKind) -> f64 {
    let r = relation_matrix(h, op, kind).norm();
    let scale = h.norm() * op.norm();
    if scale == 0.0 {
        if r == 0.0 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        r / scale
    }
}

/// Relative residual of `op`'s defining relation with `h`.
///
/// Transpose- and dagger-type operators must be invertible (condition
/// number at most [`MAX_CONDITION`]).
pub fn check(h: &CMatrix, op: &SymOp) -> Result<f64, SymmetryError> {
    if op.matrix.rows() != h.rows() || op.matrix.cols() != h.cols() {
        return Err(SymmetryError::DimensionMismatch { h: h.rows(), op: op.matrix.rows() });
    }
    if op.kind.needs_inverse() {
        let condition = condition_number(&op.matrix);
        if !(condition <= MAX_CONDITION) {
            return Err(SymmetryError::Singular { label: op.label.clone(), condition });
        }
    }
    Ok(relation_residual(h, &op.matrix, op.kind))
}

/// `check(h, op) ≤ tol`, with errors counting as failure.
pub fn satisfies(h: &CMatrix, op: &SymOp, tol: f64) -> bool {
    check(h, op).is_ok_and(|r| r <= tol)
}

/// Chiral operator from the product rule: `Π = ΛΞ = X C*` for `Λ = XK`,
/// `Ξ = CK`.
pub fn product_chiral(x: &CMatrix, c: &CMatrix) -> SymOp {
    SymOp::chiral(x * &c.conj(), "X C*")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::clifford::gamma_mu;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn relation_tags_parse_back() {
        for kind in RelationKind::ALL {
            assert_eq!(kind.tag().parse::<RelationKind>().unwrap(), kind);
        }
        assert_eq!("pseudo-chiral".parse::<RelationKind>().unwrap(), RelationKind::TransposeMinus);
        assert!("sideways".parse::<RelationKind>().is_err());
    }

    #[test]
    fn gamma0_is_chiral_for_simple_dirac_model() {
        let h = &gamma_mu(5).unwrap().scale(c(1.2, 0.3)) - &gamma_mu(1).unwrap().scale(c(0.4, -0.8));
        let op = SymOp::chiral(gamma_mu(0).unwrap(), "g0");
        assert!(check(&h, &op).unwrap() <= 1e-15);
    }

    #[test]
    fn hermitian_bipartite_real_has_sublattice_nhph() {
        // Real symmetric bipartite dimer, Ξ = (P_A − P_B) K.
        let h = CMatrix::from_real_rows(&[[0.0, 1.3], [1.3, 0.0]]).unwrap();
        let op = SymOp::new(
            RelationKind::AntilinearAnticommute,
            CMatrix::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0)]),
            "C",
        );
        assert_eq!(check(&h, &op).unwrap(), 0.0);
    }

    #[test]
    fn singular_pseudo_operator_rejected() {
        let h = CMatrix::identity(2);
        let op = SymOp::new(RelationKind::TransposeMinus, CMatrix::zeros(2, 2), "zero");
        assert!(matches!(check(&h, &op), Err(SymmetryError::Singular { .. })));
        let chiral_zero = SymOp::chiral(CMatrix::zeros(2, 2), "zero");
        assert_eq!(check(&h, &chiral_zero).unwrap(), 0.0);
    }

    #[test]
    fn dimension_mismatch_rejected() {
        let op = SymOp::chiral(CMatrix::identity(3), "I3");
        assert!(matches!(check(&CMatrix::identity(2), &op), Err(SymmetryError::DimensionMismatch { .. })));
    }

    #[test]
    fn product_rule_identity_limit() {
        let cm = CMatrix::from_diag(&[c(1.0, 0.0), c(-1.0, 0.0)]);
        let pi = product_chiral(&CMatrix::identity(2), &cm);
        assert_eq!(pi.matrix, cm);
        assert_eq!(pi.kind, RelationKind::LinearAnticommute);
    }
}
