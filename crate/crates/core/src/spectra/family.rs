use std::fmt;
use std::sync::Arc;

use num_complex::Complex64 as C64;

use crate::clifford::GammaLabel;
use crate::linalg::CMatrix;
use crate::model::{fig5_preset, honeycomb_flake, pyramid, rt_wheel, Model, PyramidVariant, Sublattice};

/// Figure protocols available through [`figure_family`].
pub const FIGURES: [&str; 6] = ["1b", "2b", "2c", "4c", "4d", "5b"];

/// One-parameter model family with a default sweep range.
#[derive(Clone)]
pub struct Family {
    pub name: String,
    pub param: String,
    pub range: (f64, f64),
    build: Arc<dyn Fn(f64) -> Model + Send + Sync>,
}

impl fmt::Debug for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Family").field("name", &self.name).field("param", &self.param).field("range", &self.range).finish()
    }
}

impl Family {
    pub fn new(
        name: impl Into<String>,
        param: impl Into<String>,
        range: (f64, f64),
        build: impl Fn(f64) -> Model + Send + Sync + 'static,
    ) -> Self {
        Family { name: name.into(), param: param.into(), range, build: Arc::new(build) }
    }

    pub fn model(&self, p: f64) -> Model {
        (self.build)(p)
    }

    pub fn matrix(&self, p: f64) -> CMatrix {
        self.model(p).to_matrix()
    }
}

fn label(ix: &[u8]) -> GammaLabel {
    GammaLabel::from_sorted(ix).expect("canonical label")
}

/// Named protocols:
///
/// - `1b`: flake, `g = 1`, `τ ∈ [0, 2]`
/// - `2b`: ring, `g_{1i} = g_{2i} ∈ [0, 2]`, `g_{1r} = 1`, `g_{2r} = 2β = 1.5`
/// - `2c`: as `2b` with `2β = 1.5 − 0.2i`
/// - `4c`: chiral pyramid, `g₂ = g₁ = 1`, `g₃ = 0.8`, `αe^{iπ/4}γ³γ⁵`, `α ∈ [0, 2]`
/// - `4d`: as `4c` plus `αe^{iπ/3}γ¹γ²`
/// - `5b`: five-site chain, detuning `δ ∈ [0, |g₁|]`
/// - `jordan2`: `[[0, 1], [δ, 0]]`, `δ ∈ [−0.1, 0.1]`
pub fn figure_family(name: &str) -> Option<Family> {
    let f = match name {
        "1b" => Family::new("1b", "tau", (0.0, 2.0), |t| honeycomb_flake(1.0, t)),
        "2b" | "2c" => {
            let beta = if name == "2b" { C64::new(0.75, 0.0) } else { C64::new(0.75, -0.1) };
            Family::new(name, "g_i", (0.0, 2.0), move |t| rt_wheel(beta, C64::new(1.0, t), C64::new(1.5, t)))
        }
        "4c" | "4d" => {
            let both = name == "4d";
            Family::new(name, "alpha", (0.0, 2.0), move |a| {
                let mut det = vec![(label(&[3, 5]), C64::from_polar(a, std::f64::consts::FRAC_PI_4))];
                if both {
                    det.push((label(&[1, 2]), C64::from_polar(a, std::f64::consts::FRAC_PI_3)));
                }
                let one = C64::new(1.0, 0.0);
                pyramid(PyramidVariant::Chiral, one, one, C64::new(0.8, 0.0), &det).expect("diagonal detunings")
            })
        }
        "5b" => Family::new("5b", "delta", (0.0, C64::new(1.0, -0.1).norm()), fig5_preset),
        "jordan2" => Family::new("jordan2", "delta", (-0.1, 0.1), |d| {
            let h = CMatrix::from_rows(&[vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)], vec![C64::new(d, 0.0), C64::new(0.0, 0.0)]])
                .expect("2x2");
            Model::from_matrix("jordan2", &h, vec![Sublattice::None; 2], false).expect("valid")
        }),
        _ => return None,
    };
    Some(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_figure_builds() {
        for name in FIGURES.iter().chain(&["jordan2"]) {
            let f = figure_family(name).unwrap();
            let m = f.matrix(0.5 * (f.range.0 + f.range.1));
            assert!(m.is_square() && m.rows() > 0);
        }
        assert!(figure_family("9z").is_none());
    }
}
