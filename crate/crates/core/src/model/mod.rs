//! Tight-binding models with directed couplings and sublattice labels.

mod io;
mod presets;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64 as C64;
use thiserror::Error;

use crate::clifford::GammaLabel;
use crate::linalg::CMatrix;
use crate::symmetry::SymOp;

pub use io::{load_model, model_from_str, model_to_string, save_model};
pub use presets::{
    bipartite_pseudo, dirac4, fig5_parity, fig5_preset, honeycomb_flake, honeycomb_mirror, honeycomb_positions,
    honeycomb_rotation, pyramid, rotation_r2, rt_wheel, ssh_bloch, Dirac4Variant, PyramidVariant, RtWheel, SshVariant,
    FLAKE_CENTER, FLAKE_GAIN, FLAKE_LOSS,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("site index {index} out of range for {n_sites} sites")]
    IndexOutOfRange { index: usize, n_sites: usize },
    #[error("duplicate coupling {from} -> {to}")]
    DuplicateCoupling { from: usize, to: usize },
    #[error("coupling {site} -> {site} is an on-site term")]
    SelfLoop { site: usize },
    #[error("coupling {from} -> {to} joins two sites of sublattice {sublattice}")]
    NotBipartite { from: usize, to: usize, sublattice: Sublattice },
    #[error("expected {expected} entries, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("detuning label {0} is not one of g0, g1*g2, g3*g5")]
    InvalidDetuning(GammaLabel),
    #[error("line {line}, field '{field}': {message}")]
    Parse { line: usize, field: String, message: String },
    #[error("{0}")]
    Io(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sublattice {
    A,
    B,
    None,
}

impl fmt::Display for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sublattice::A => "A",
            Sublattice::B => "B",
            Sublattice::None => "-",
        })
    }
}

impl FromStr for Sublattice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" | "a" => Ok(Sublattice::A),
            "B" | "b" => Ok(Sublattice::B),
            "-" | "none" => Ok(Sublattice::None),
            other => Err(format!("unknown sublattice '{other}'")),
        }
    }
}

/// Directed coupling: contributes `amplitude` to `H[to][from]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Coupling {
    pub from: usize,
    pub to: usize,
    pub amplitude: C64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Model {
    pub name: String,
    onsite: Vec<C64>,
    couplings: Vec<Coupling>,
    sublattice: Vec<Sublattice>,
    non_bipartite: bool,
    hints: Vec<SymOp>,
}

impl Model {
    pub fn new(
        name: impl Into<String>,
        onsite: Vec<C64>,
        couplings: Vec<Coupling>,
        sublattice: Vec<Sublattice>,
        non_bipartite: bool,
    ) -> Result<Self, ModelError> {
        let n = onsite.len();
        if sublattice.len() != n {
            return Err(ModelError::DimensionMismatch { expected: n, found: sublattice.len() });
        }
        let mut seen = BTreeSet::new();
        for c in &couplings {
            for index in [c.from, c.to] {
                if index >= n {
                    return Err(ModelError::IndexOutOfRange { index, n_sites: n });
                }
            }
            if c.from == c.to {
                return Err(ModelError::SelfLoop { site: c.from });
            }
            if !seen.insert((c.from, c.to)) {
                return Err(ModelError::DuplicateCoupling { from: c.from, to: c.to });
            }
            let (a, b) = (sublattice[c.from], sublattice[c.to]);
            if !non_bipartite && a == b && a != Sublattice::None {
                return Err(ModelError::NotBipartite { from: c.from, to: c.to, sublattice: a });
            }
        }
        Ok(Model { name: name.into(), onsite, couplings, sublattice, non_bipartite, hints: Vec::new() })
    }

    /// Reads on-site terms from the diagonal and one directed coupling per
    /// nonzero off-diagonal entry.
    pub fn from_matrix(
        name: impl Into<String>,
        h: &CMatrix,
        sublattice: Vec<Sublattice>,
        non_bipartite: bool,
    ) -> Result<Self, ModelError> {
        let n = h.rows();
        let onsite = (0..n).map(|i| h[(i, i)]).collect();
        let mut couplings = Vec::new();
        for from in 0..n {
            for to in 0..n {
                if to != from && h[(to, from)] != C64::new(0.0, 0.0) {
                    couplings.push(Coupling { from, to, amplitude: h[(to, from)] });
                }
            }
        }
        Model::new(name, onsite, couplings, sublattice, non_bipartite)
    }

    pub fn with_hints(mut self, hints: Vec<SymOp>) -> Self {
        self.hints = hints;
        self
    }

    pub fn n_sites(&self) -> usize {
        self.onsite.len()
    }

    pub fn onsite(&self) -> &[C64] {
        &self.onsite
    }

    pub fn couplings(&self) -> &[Coupling] {
        &self.couplings
    }

    pub fn sublattice(&self) -> &[Sublattice] {
        &self.sublattice
    }

    pub fn is_non_bipartite(&self) -> bool {
        self.non_bipartite
    }

    /// Operators the model is expected to satisfy.
    pub fn hints(&self) -> &[SymOp] {
        &self.hints
    }

    pub fn to_matrix(&self) -> CMatrix {
        let mut h = CMatrix::from_diag(&self.onsite);
        for c in &self.couplings {
            h[(c.to, c.from)] += c.amplitude;
        }
        h
    }

    pub fn sites_of(&self, s: Sublattice) -> Vec<usize> {
        (0..self.n_sites()).filter(|&i| self.sublattice[i] == s).collect()
    }

    /// `P_A − P_B`; unlabelled sites get 0.
    pub fn sublattice_operator(&self) -> CMatrix {
        let diag: Vec<C64> = self
            .sublattice
            .iter()
            .map(|s| match s {
                Sublattice::A => C64::new(1.0, 0.0),
                Sublattice::B => C64::new(-1.0, 0.0),
                Sublattice::None => C64::new(0.0, 0.0),
            })
            .collect();
        CMatrix::from_diag(&diag)
    }
}
