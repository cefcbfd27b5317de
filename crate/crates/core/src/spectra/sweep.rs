use num_complex::Complex64 as C64;
use pathfinding::kuhn_munkres::kuhn_munkres_min;
use pathfinding::matrix::Matrix;
use rayon::prelude::*;
use serde::Serialize;

use super::{classify_spectrum, cluster_centroids, Family, SpectraError, SpectrumFlags, TOL_PAIRING};
use crate::linalg::{eig, TOL_CLUSTER};

/// Sub-intervals inserted on each side of a candidate exceptional point.
const REFINE: usize = 10;
/// Eigenvalue condition number above which a gap minimum counts as an
/// exceptional point rather than an avoided or diabolic crossing.
const EP_CONDITION: f64 = 10.0;

#[derive(Clone, Debug, Serialize)]
pub struct SweepStep {
    pub value: f64,
    /// Eigenvalues ordered so that index `m` follows one trajectory.
    pub eigenvalues: Vec<C64>,
    pub mode_flags: Vec<Vec<&'static str>>,
    pub flags: SpectrumFlags,
    /// Inserted by local refinement.
    pub refined: bool,
    #[serde(skip)]
    condition: Vec<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    ZeroCrossing,
    Degeneracy,
    EpCandidate,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepEvent {
    pub step: usize,
    pub value: f64,
    pub kind: EventKind,
    pub modes: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepResult {
    pub family: String,
    pub param_name: String,
    pub steps: Vec<SweepStep>,
    pub events: Vec<SweepEvent>,
}

impl SweepResult {
    pub fn all_steps(&self, pred: impl Fn(&SpectrumFlags) -> bool) -> bool {
        self.steps.iter().all(|s| pred(&s.flags))
    }

    pub fn events_of(&self, kind: EventKind) -> impl Iterator<Item = &SweepEvent> {
        self.events.iter().filter(move |e| e.kind == kind)
    }
}

struct Raw {
    value: f64,
    values: Vec<C64>,
    condition: Vec<f64>,
    refined: bool,
}

fn solve(f: &Family, p: f64, refined: bool) -> Result<Raw, SpectraError> {
    let sys = eig(&f.matrix(p))?;
    let condition = sys
        .left
        .iter()
        .zip(&sys.right)
        .map(|(l, r)| {
            let overlap: C64 = l.iter().zip(r).map(|(a, b)| a * b).sum();
            let nl: f64 = l.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            let nr: f64 = r.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt();
            nl * nr / overlap.norm()
        })
        .collect();
    Ok(Raw { value: p, values: sys.values, condition, refined })
}

fn solve_all(f: &Family, points: &[(f64, bool)]) -> Result<Vec<Raw>, SpectraError> {
    points.par_iter().map(|&(p, r)| solve(f, p, r)).collect()
}

/// Reorders each step so index `m` continues the trajectory of the
/// previous step's index `m`, minimizing the total `|Δε|`.
fn match_trajectories(raw: &mut [Raw]) {
    for s in 1..raw.len() {
        let (prev, cur) = raw.split_at_mut(s);
        let prev = &prev[s - 1];
        let cur = &mut cur[0];
        let n = cur.values.len();
        if n == 0 || prev.values.len() != n {
            continue;
        }
        let weights: Vec<i64> = prev
            .values
            .iter()
            .flat_map(|a| cur.values.iter().map(move |b| ((a - b).norm().min(1e6) * 1e12).round() as i64))
            .collect();
        let (_, assign) = kuhn_munkres_min(&Matrix::from_vec(n, n, weights).expect("square"));
        cur.values = assign.iter().map(|&j| cur.values[j]).collect();
        cur.condition = assign.iter().map(|&j| cur.condition[j]).collect();
    }
}

fn step_scale(values: &[C64]) -> f64 {
    values.iter().map(|v| v.norm()).fold(1.0, f64::max)
}

fn pair_distance(r: &Raw, i: usize, j: usize) -> f64 {
    (r.values[i] - r.values[j]).norm()
}

/// Steps where some pair distance has a local minimum, deeper than rounding,
/// whose neighbours are not degenerate, with the modes involved. With
/// `min_condition` set, both eigenvalues of the pair also need a condition
/// number at least that large.
fn gap_minima(raw: &[Raw], min_condition: Option<f64>) -> Vec<(usize, Vec<usize>)> {
    let mut out = Vec::new();
    for s in 1..raw.len().saturating_sub(1) {
        let r = &raw[s];
        let n = r.values.len();
        let scale = step_scale(&r.values);
        let cut = TOL_CLUSTER * scale;
        let depth = 1e-12 * scale;
        let mut modes = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let (a, d, b) = (pair_distance(&raw[s - 1], i, j), pair_distance(r, i, j), pair_distance(&raw[s + 1], i, j));
                let minimum = a > cut && b > cut && d <= a.min(b) && a.max(b) - d > depth;
                if minimum && min_condition.is_none_or(|k| r.condition[i].min(r.condition[j]) >= k) {
                    modes.extend([i, j]);
                }
            }
        }
        modes.sort_unstable();
        modes.dedup();
        if !modes.is_empty() {
            out.push((s, modes));
        }
    }
    out
}

fn mode_flags(values: &[C64]) -> Vec<Vec<&'static str>> {
    let scale = step_scale(values);
    let zero = 1e-8 * scale;
    let cluster = TOL_CLUSTER * scale;
    values
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let mut f = Vec::new();
            if v.norm() <= zero {
                f.push("true_zero");
            } else if v.re.abs() <= zero {
                f.push("nhph_zero");
            }
            if values.iter().enumerate().any(|(j, w)| j != i && (v - w).norm() <= cluster) {
                f.push("degenerate");
            }
            f
        })
        .collect()
}

/// 0: at the origin, 1: on the imaginary axis, 2: right half, 3: left half.
fn zero_state(v: C64, scale: f64) -> u8 {
    let z = 1e-8 * scale;
    if v.norm() <= z {
        0
    } else if v.re.abs() <= z {
        1
    } else if v.re > 0.0 {
        2
    } else {
        3
    }
}

fn detect_events(raw: &[Raw]) -> Vec<SweepEvent> {
    let mut events = Vec::new();
    let n = raw.first().map_or(0, |r| r.values.len());
    for s in 0..raw.len() {
        let r = &raw[s];
        let scale = step_scale(&r.values);
        let cluster = TOL_CLUSTER * scale;
        if s > 0 {
            let prev_scale = step_scale(&raw[s - 1].values);
            let modes: Vec<usize> = (0..n)
                .filter(|&m| zero_state(raw[s - 1].values[m], prev_scale) != zero_state(r.values[m], scale))
                .collect();
            if !modes.is_empty() {
                events.push(SweepEvent { step: s, value: r.value, kind: EventKind::ZeroCrossing, modes });
            }
        }
        let mut degenerate = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let now = pair_distance(r, i, j) <= cluster;
                let before = s > 0 && pair_distance(&raw[s - 1], i, j) <= TOL_CLUSTER * step_scale(&raw[s - 1].values);
                if now && !before {
                    degenerate.extend([i, j]);
                }
            }
        }
        degenerate.sort_unstable();
        degenerate.dedup();
        if !degenerate.is_empty() {
            events.push(SweepEvent { step: s, value: r.value, kind: EventKind::Degeneracy, modes: degenerate });
        }
    }
    for (s, modes) in gap_minima(raw, Some(EP_CONDITION)) {
        events.push(SweepEvent { step: s, value: raw[s].value, kind: EventKind::EpCandidate, modes });
    }
    events.sort_by(|a, b| a.step.cmp(&b.step).then((a.kind as u8).cmp(&(b.kind as u8))));
    events
}

/// Sweeps `f` over `n_steps` evenly spaced values in `[lo, hi]`.
///
/// Around each gap minimum of the coarse grid, ten sub-steps per interval
/// are added before trajectories are matched and events are detected on
/// the merged grid. Spectrum flags are computed on cluster centroids so that
/// rounding scatter at a coalescence does not break the pairing.
pub fn sweep(f: &Family, lo: f64, hi: f64, n_steps: usize) -> Result<SweepResult, SpectraError> {
    let n_steps = n_steps.max(2);
    let dp = (hi - lo) / (n_steps - 1) as f64;
    let coarse: Vec<(f64, bool)> = (0..n_steps).map(|k| (if k + 1 == n_steps { hi } else { lo + dp * k as f64 }, false)).collect();
    let mut raw = solve_all(f, &coarse)?;
    match_trajectories(&mut raw);
    let mut extra = Vec::new();
    for (s, _) in gap_minima(&raw, None) {
        for side in [s - 1, s] {
            let (a, b) = (raw[side].value, raw[side + 1].value);
            for k in 1..REFINE {
                extra.push((a + (b - a) * k as f64 / REFINE as f64, true));
            }
        }
    }
    if !extra.is_empty() {
        extra.sort_by(|a, b| a.0.total_cmp(&b.0));
        extra.dedup_by(|a, b| a.0 == b.0);
        let mut fine = solve_all(f, &extra)?;
        raw.append(&mut fine);
        raw.sort_by(|a, b| a.value.total_cmp(&b.value));
        match_trajectories(&mut raw);
    }
    let events = detect_events(&raw);
    let steps = raw
        .into_iter()
        .map(|r| SweepStep {
            flags: classify_spectrum(&cluster_centroids(&r.values, TOL_CLUSTER * step_scale(&r.values)), TOL_PAIRING),
            mode_flags: mode_flags(&r.values),
            value: r.value,
            eigenvalues: r.values,
            refined: r.refined,
            condition: r.condition,
        })
        .collect();
    Ok(SweepResult { family: f.name.clone(), param_name: f.param.clone(), steps, events })
}

impl SweepStep {
    /// Eigenvalue condition numbers `‖ψ̄‖‖ψ‖/|ψ̄ᵀψ|`, in trajectory order.
    pub fn condition(&self) -> &[f64] {
        &self.condition
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::spectra::figure_family;

    #[test]
    fn jordan_sweep_flags_ep() {
        let f = figure_family("jordan2").unwrap();
        let r = sweep(&f, -0.1, 0.1, 40).unwrap();
        assert!(r.steps.iter().any(|s| s.refined));
        let ep: Vec<_> = r.events_of(EventKind::EpCandidate).collect();
        assert!(!ep.is_empty());
        assert!(ep.iter().all(|e| e.value.abs() < 0.01));
        for w in r.steps.windows(2) {
            assert!(w[0].value < w[1].value);
        }
    }

    #[test]
    fn matching_keeps_trajectories_continuous() {
        // Eigenvalues t and 0.3 + it sort differently on either side of t = 0.3.
        let f = Family::new("lines", "t", (-1.0, 1.0), |t| {
            crate::model::Model::from_matrix(
                "x",
                &crate::linalg::CMatrix::from_diag(&[C64::new(t, 0.0), C64::new(0.3, t)]),
                vec![crate::model::Sublattice::None; 2],
                false,
            )
            .unwrap()
        });
        let r = sweep(&f, -1.0, 1.0, 20).unwrap();
        for w in r.steps.windows(2) {
            for m in 0..2 {
                assert!((w[0].eigenvalues[m] - w[1].eigenvalues[m]).norm() < 0.2);
            }
        }
        assert_eq!(r.events_of(EventKind::EpCandidate).count(), 0);
    }
}
