use num_complex::Complex64 as C64;
use serde::Serialize;

use super::{Family, SpectraError};
use crate::linalg::{eigenvalues, singular_values, CMatrix, TOL_CLUSTER};

const SCAN_POINTS: usize = 65;
const PARAM_TOL: f64 = 1e-10;
/// Largest spread, relative to `max(1, ‖H‖)`, accepted as a coalescence.
const FOUND_SPREAD: f64 = 1e-3;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EpReport {
    pub family: String,
    pub param_name: String,
    pub param: f64,
    /// Width of the final bracket.
    pub param_uncertainty: f64,
    /// Centroid of the coalescing cluster.
    pub eps0: C64,
    /// Distance from the target to the second-nearest eigenvalue.
    pub spread: f64,
    pub cluster_radius: f64,
    pub algebraic: usize,
    pub geometric: usize,
    pub order: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum EpOutcome {
    Found(EpReport),
    NotFound { family: String, param: f64, min_spread: f64, reason: String },
}

impl EpOutcome {
    pub fn report(&self) -> Option<&EpReport> {
        match self {
            EpOutcome::Found(r) => Some(r),
            EpOutcome::NotFound { .. } => None,
        }
    }
}

/// Distance from `eps0` to the second-nearest eigenvalue: zero when at
/// least two eigenvalues sit at `eps0`.
pub fn ep_spread(values: &[C64], eps0: C64) -> f64 {
    let mut d: Vec<f64> = values.iter().map(|v| (v - eps0).norm()).collect();
    d.sort_by(f64::total_cmp);
    d.get(1).copied().unwrap_or(f64::INFINITY)
}

fn spread_at(f: &Family, p: f64, eps0: C64) -> Result<f64, SpectraError> {
    Ok(ep_spread(&eigenvalues(&f.matrix(p))?, eps0))
}

/// Minimizes [`ep_spread`] over `[lo, hi]`: a uniform scan picks the best
/// sub-bracket, then golden-section search narrows it to `1e-10`.
pub fn ep_locate(f: &Family, lo: f64, hi: f64, eps0: C64) -> Result<EpOutcome, SpectraError> {
    let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
    let step = (hi - lo) / (SCAN_POINTS - 1) as f64;
    let mut best = (lo, f64::INFINITY);
    let mut best_k = 0;
    for k in 0..SCAN_POINTS {
        let p = lo + step * k as f64;
        let s = spread_at(f, p, eps0)?;
        if s < best.1 {
            best = (p, s);
            best_k = k;
        }
    }
    let (mut a, mut b) = (lo + step * best_k.saturating_sub(1) as f64, (lo + step * (best_k + 1) as f64).min(hi));
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut x1 = b - phi * (b - a);
    let mut x2 = a + phi * (b - a);
    let (mut f1, mut f2) = (spread_at(f, x1, eps0)?, spread_at(f, x2, eps0)?);
    while b - a > PARAM_TOL {
        if f1 <= f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - phi * (b - a);
            f1 = spread_at(f, x1, eps0)?;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + phi * (b - a);
            f2 = spread_at(f, x2, eps0)?;
        }
    }
    let (mut p, mut s) = if f1 <= f2 { (x1, f1) } else { (x2, f2) };
    if best.1 < s {
        (p, s) = best;
    }
    let h = f.matrix(p);
    let scale = h.norm().max(1.0);
    if s > FOUND_SPREAD * scale {
        return Ok(EpOutcome::NotFound {
            family: f.name.clone(),
            param: p,
            min_spread: s,
            reason: "no coalescence at the target".into(),
        });
    }
    let values = eigenvalues(&h)?;
    let radius = (TOL_CLUSTER * scale).max(10.0 * s);
    let cluster: Vec<C64> = values.iter().copied().filter(|v| (v - eps0).norm() <= radius).collect();
    let centroid = cluster.iter().sum::<C64>() / cluster.len() as f64;
    let shifted = &h - &CMatrix::identity(h.rows()).scale(centroid);
    let geometric = singular_values(&shifted).iter().filter(|&&x| x <= TOL_CLUSTER * scale).count();
    let algebraic = cluster.len();
    if geometric >= algebraic {
        return Ok(EpOutcome::NotFound {
            family: f.name.clone(),
            param: p,
            min_spread: s,
            reason: format!("degenerate but diagonalizable (algebraic {algebraic}, geometric {geometric})"),
        });
    }
    Ok(EpOutcome::Found(EpReport {
        family: f.name.clone(),
        param_name: f.param.clone(),
        param: p,
        param_uncertainty: b - a,
        eps0: centroid,
        spread: s,
        cluster_radius: radius,
        algebraic,
        geometric,
        order: algebraic - geometric + 1,
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::figure_family;

    #[test]
    fn jordan_family_has_ep2_at_zero() {
        let f = figure_family("jordan2").unwrap();
        let EpOutcome::Found(r) = ep_locate(&f, -0.1, 0.1, C64::new(0.0, 0.0)).unwrap() else {
            panic!("EP expected");
        };
        assert!(r.param.abs() < 1e-8, "{r:?}");
        assert_eq!((r.algebraic, r.geometric, r.order), (2, 1, 2));
    }

    #[test]
    fn spread_of_small_sets() {
        assert!(ep_spread(&[C64::new(1.0, 0.0)], C64::new(0.0, 0.0)).is_infinite());
        assert_eq!(ep_spread(&[C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(5.0, 0.0)], C64::new(0.0, 0.0)), 0.0);
    }
}
