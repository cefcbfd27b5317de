//! Spectral analysis: symmetry of eigenvalue sets, zero modes, exceptional
//! points, parameter sweeps and mode profiles.

mod ep;
mod export;
mod family;
mod sweep;

use num_complex::Complex64 as C64;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{eig, eigenvalues, multiplicities_from, smallest_singular_pair, CMatrix, LinalgError};
use crate::model::Sublattice;

pub use ep::{ep_locate, ep_spread, EpOutcome, EpReport};
pub use export::{ep_json, sweep_csv, sweep_events_json, write_atomic};
pub use family::{figure_family, Family, FIGURES};
pub use sweep::{sweep, EventKind, SweepEvent, SweepResult, SweepStep};

/// Pairing tolerance for spectrum classification.
pub const TOL_PAIRING: f64 = 1e-8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SpectraError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{value} is not an eigenvalue (nearest at distance {distance:e})")]
    NotAnEigenvalue { value: C64, distance: f64 },
    #[error("expected {expected} sublattice labels, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SpectrumFlags {
    /// `{ε} = {−ε}`
    pub origin: bool,
    /// `{ε} = {ε*}`
    pub real_axis: bool,
    /// `{ε} = {−ε*}`
    pub imag_axis: bool,
}

impl SpectrumFlags {
    pub fn tags(&self) -> Vec<&'static str> {
        let mut t = Vec::new();
        if self.origin {
            t.push("origin");
        }
        if self.real_axis {
            t.push("real_axis");
        }
        if self.imag_axis {
            t.push("imag_axis");
        }
        t
    }
}

/// Greedy multiset matching of `values` against `f(values)`: pairs are
/// taken in order of increasing distance. Returns the largest accepted
/// distance, or infinity if some value is left unmatched within `tol`.
fn pairing_defect(values: &[C64], f: impl Fn(C64) -> C64, tol: f64) -> f64 {
    let n = values.len();
    let images: Vec<C64> = values.iter().map(|&v| f(v)).collect();
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(n * n);
    for (i, v) in values.iter().enumerate() {
        for (j, w) in images.iter().enumerate() {
            let d = (v - w).norm();
            if d <= tol {
                pairs.push((d, i, j));
            }
        }
    }
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));
    let (mut used_i, mut used_j) = (vec![false; n], vec![false; n]);
    let (mut matched, mut worst) = (0, 0.0f64);
    for (d, i, j) in pairs {
        if !used_i[i] && !used_j[j] {
            used_i[i] = true;
            used_j[j] = true;
            matched += 1;
            worst = worst.max(d);
        }
    }
    if matched == n {
        worst
    } else {
        f64::INFINITY
    }
}

/// Symmetry flags of an eigenvalue multiset; `tol` is scaled by
/// `max(1, max|ε|)`.
pub fn classify_spectrum(values: &[C64], tol: f64) -> SpectrumFlags {
    let scale = values.iter().map(|v| v.norm()).fold(1.0, f64::max);
    let t = tol * scale;
    SpectrumFlags {
        origin: pairing_defect(values, |v| -v, t) <= t,
        real_axis: pairing_defect(values, |v| v.conj(), t) <= t,
        imag_axis: pairing_defect(values, |v| -v.conj(), t) <= t,
    }
}

/// Replaces every value by the centroid of its cluster, where clusters are
/// the connected components of the relation `|ε_i − ε_j| ≤ radius`.
///
/// Near an exceptional point of order k the computed eigenvalues scatter by
/// roughly `(u‖H‖)^{1/k}` while their mean stays accurate to rounding.
pub fn cluster_centroids(values: &[C64], radius: f64) -> Vec<C64> {
    let n = values.len();
    let mut root: Vec<usize> = (0..n).collect();
    fn find(root: &mut [usize], i: usize) -> usize {
        let mut i = i;
        while root[i] != i {
            root[i] = root[root[i]];
            i = root[i];
        }
        i
    }
    for i in 0..n {
        for j in i + 1..n {
            if (values[i] - values[j]).norm() <= radius {
                let (a, b) = (find(&mut root, i), find(&mut root, j));
                root[a.max(b)] = a.min(b);
            }
        }
    }
    let mut sum = vec![(C64::new(0.0, 0.0), 0usize); n];
    for i in 0..n {
        let r = find(&mut root, i);
        sum[r].0 += values[i];
        sum[r].1 += 1;
    }
    (0..n)
        .map(|i| {
            let (s, k) = sum[find(&mut root, i)];
            s / k as f64
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ZeroKind {
    /// `ε = 0`
    TrueZero,
    /// `Re ε = 0`, `ε ≠ 0`
    NhphZero,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroMode {
    pub value: C64,
    pub vector: Vec<C64>,
    pub kind: ZeroKind,
}

/// Eigenpairs at the origin or on the imaginary axis, both within
/// `tol·max(1, ‖H‖)`.
pub fn zero_modes(h: &CMatrix, tol: f64) -> Result<Vec<ZeroMode>, SpectraError> {
    let sys = eig(h)?;
    let cut = tol * h.norm().max(1.0);
    let mut out = Vec::new();
    for (v, psi) in sys.values.iter().zip(&sys.right) {
        let kind = if v.norm() <= cut {
            ZeroKind::TrueZero
        } else if v.re.abs() <= cut {
            ZeroKind::NhphZero
        } else {
            continue;
        };
        out.push(ZeroMode { value: *v, vector: psi.clone(), kind });
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IntensityRatio {
    /// `max_B |ψ|² / max_A |ψ|²`
    pub ratio: f64,
    /// `max_A |ψ|²` is below 1e-14 relative to the total intensity.
    pub infinite: bool,
}

pub fn intensity_ratio(psi: &[C64], sublattice: &[Sublattice]) -> Result<IntensityRatio, SpectraError> {
    if psi.len() != sublattice.len() {
        return Err(SpectraError::DimensionMismatch { expected: psi.len(), found: sublattice.len() });
    }
    let total: f64 = psi.iter().map(|x| x.norm_sqr()).sum();
    let max_on = |s: Sublattice| {
        psi.iter().zip(sublattice).filter(|(_, l)| **l == s).map(|(x, _)| x.norm_sqr() / total).fold(0.0, f64::max)
    };
    let (a, b) = (max_on(Sublattice::A), max_on(Sublattice::B));
    if a < 1e-14 {
        Ok(IntensityRatio { ratio: f64::INFINITY, infinite: true })
    } else {
        Ok(IntensityRatio { ratio: b / a, infinite: false })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SiteIntensity {
    pub site: usize,
    pub sublattice: String,
    pub intensity: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ModeProfile {
    pub value: C64,
    pub sites: Vec<SiteIntensity>,
    pub algebraic: usize,
    pub geometric: usize,
    /// Present when the eigenvalue is degenerate or coalesced.
    pub note: Option<String>,
}

impl ModeProfile {
    pub fn max_on(&self, s: Sublattice) -> f64 {
        let tag = s.to_string();
        self.sites.iter().filter(|x| x.sublattice == tag).map(|x| x.intensity).fold(0.0, f64::max)
    }
}

/// Normalized `|ψ_i|²` of the eigenvector at `ε`.
///
/// The vector is the smallest right singular vector of `H − ε`, which is
/// the unique eigenvector at an exceptional point of geometric
/// multiplicity 1. The smallest singular value of `H − ε` must be at most
/// `tol·max(1, ‖H‖)`, which holds at a coalescence even when the computed
/// eigenvalues scatter around it.
pub fn mode_profile(h: &CMatrix, eps: C64, sublattice: &[Sublattice], tol: f64) -> Result<ModeProfile, SpectraError> {
    let n = h.rows();
    if sublattice.len() != n {
        return Err(SpectraError::DimensionMismatch { expected: n, found: sublattice.len() });
    }
    let values = eigenvalues(h)?;
    let scale = h.norm().max(1.0);
    let distance = values.iter().map(|v| (v - eps).norm()).fold(f64::INFINITY, f64::min);
    let shifted = h - &CMatrix::identity(n).scale(eps);
    let (sigma, psi) = smallest_singular_pair(&shifted);
    if sigma > tol * scale {
        return Err(SpectraError::NotAnEigenvalue { value: eps, distance });
    }
    let radius = (tol * scale).max(10.0 * distance);
    let m = multiplicities_from(h, &values, eps, radius, 1e-7 * scale);
    let total: f64 = psi.iter().map(|x| x.norm_sqr()).sum();
    let sites = psi
        .iter()
        .zip(sublattice)
        .enumerate()
        .map(|(site, (x, s))| SiteIntensity { site, sublattice: s.to_string(), intensity: x.norm_sqr() / total })
        .collect();
    let note = if m.algebraic > 1 && m.geometric < m.algebraic {
        Some(format!("coalesced eigenvector (algebraic {}, geometric {})", m.algebraic, m.geometric))
    } else if m.algebraic > 1 {
        Some(format!("degenerate eigenvalue (multiplicity {}); one vector of the eigenspace", m.algebraic))
    } else {
        None
    };
    Ok(ModeProfile { value: eps, sites, algebraic: m.algebraic, geometric: m.geometric, note })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn classify_examples() {
        let all = classify_spectrum(&[c(1.0, 0.0), c(-1.0, 0.0), c(0.0, 1.0), c(0.0, -1.0)], 1e-8);
        assert!(all.origin && all.real_axis && all.imag_axis);
        let none = classify_spectrum(&[c(1.0, 1.0), c(-1.0, -1.0), c(0.3, 0.0)], 1e-8);
        assert_eq!(none, SpectrumFlags::default());
        let origin_only = classify_spectrum(&[c(1.0, 0.5), c(-1.0, -0.5)], 1e-8);
        assert_eq!(origin_only, SpectrumFlags { origin: true, real_axis: false, imag_axis: false });
    }

    #[test]
    fn classify_respects_multiplicity() {
        // {1, 1, −1} is not origin-symmetric as a multiset.
        assert!(!classify_spectrum(&[c(1.0, 0.0), c(1.0, 0.0), c(-1.0, 0.0)], 1e-8).origin);
    }

    #[test]
    fn centroids_merge_chains() {
        let v = [c(0.0, 0.0), c(1e-8, 0.0), c(2e-8, 0.0), c(1.0, 0.0)];
        let m = cluster_centroids(&v, 1.5e-8);
        assert!((m[0] - c(1e-8, 0.0)).norm() < 1e-22 && m[0] == m[2]);
        assert_eq!(m[3], c(1.0, 0.0));
    }

    #[test]
    fn dimer_zero_modes() {
        let z = zero_modes(&CMatrix::zeros(2, 2), 1e-10).unwrap();
        assert!(z.len() == 2 && z.iter().all(|m| m.kind == ZeroKind::TrueZero));
        let h = CMatrix::from_rows(&[vec![c(0.0, 0.5), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, 0.5)]]).unwrap();
        assert!(zero_modes(&h, 1e-10).unwrap().is_empty());
        let h = CMatrix::from_rows(&[vec![c(0.0, 2.0), c(1.0, 0.0)], vec![c(1.0, 0.0), c(0.0, -2.0)]]).unwrap();
        let z = zero_modes(&h, 1e-10).unwrap();
        assert_eq!(z.len(), 2);
        assert!(z.iter().all(|m| m.kind == ZeroKind::NhphZero));
    }

    #[test]
    fn ratio_on_labelled_vector() {
        let sub = [Sublattice::A, Sublattice::B, Sublattice::A];
        let r = intensity_ratio(&[c(1.0, 0.0), c(0.0, 2.0), c(0.5, 0.0)], &sub).unwrap();
        assert!((r.ratio - 4.0).abs() < 1e-15);
        let r = intensity_ratio(&[c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)], &sub).unwrap();
        assert!(r.infinite);
    }

    #[test]
    fn profile_of_jordan_block() {
        let j = CMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]).unwrap();
        let p = mode_profile(&j, c(0.0, 0.0), &[Sublattice::A, Sublattice::B], 1e-7).unwrap();
        assert_eq!((p.algebraic, p.geometric), (2, 1));
        assert!(p.note.is_some());
        assert!((p.sites[0].intensity - 1.0).abs() < 1e-14);
        assert!(mode_profile(&j, c(1.0, 0.0), &[Sublattice::A, Sublattice::B], 1e-7).is_err());
    }
}
