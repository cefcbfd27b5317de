use num_complex::Complex64 as C64;

use super::{Coupling, Model, ModelError, Sublattice};
use crate::clifford::{gamma_mu, gamma_product, pauli, GammaLabel};
use crate::linalg::CMatrix;
use crate::symmetry::{RelationKind, SymOp};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

/// Central site of the honeycomb flake.
pub const FLAKE_CENTER: usize = 0;
/// Outer A sites carrying `+iτ` (polar angles 60°, 180°, 300°).
pub const FLAKE_GAIN: [usize; 3] = [2, 4, 6];
/// Outer A sites carrying `−iτ` (polar angles 0°, 120°, 240°).
pub const FLAKE_LOSS: [usize; 3] = [1, 3, 5];

/// Site positions of the 13-site flake (three hexagons sharing site 0),
/// bond length 1:
///
/// - 0: center (A)
/// - 1..=6: A at radius √3, angles 0°, 60°, ..., 300°
/// - 7..=9: B at radius 1, angles 30°, 150°, 270°
/// - 10..=12: B at radius 2, angles 90°, 210°, 330°
pub fn honeycomb_positions() -> Vec<(f64, f64)> {
    let polar = |r: f64, deg: f64| {
        let t = deg.to_radians();
        (r * t.cos(), r * t.sin())
    };
    let mut p = vec![(0.0, 0.0)];
    p.extend((0..6).map(|k| polar(3f64.sqrt(), 60.0 * k as f64)));
    p.extend([30.0, 150.0, 270.0].map(|a| polar(1.0, a)));
    p.extend([90.0, 210.0, 330.0].map(|a| polar(2.0, a)));
    p
}

fn flake_sublattice() -> Vec<Sublattice> {
    (0..13).map(|i| if i < 7 { Sublattice::A } else { Sublattice::B }).collect()
}

/// Permutation matrix `P` with `P[σ(i)][i] = 1`, where `σ(i)` is the site
/// at `f(position_i)`.
fn site_permutation(f: impl Fn((f64, f64)) -> (f64, f64)) -> CMatrix {
    let pos = honeycomb_positions();
    let n = pos.len();
    let mut m = CMatrix::zeros(n, n);
    for (i, &p) in pos.iter().enumerate() {
        let q = f(p);
        let j = pos
            .iter()
            .position(|&r| (r.0 - q.0).hypot(r.1 - q.1) < 1e-9)
            .expect("flake is closed under its point group");
        m[(j, i)] = ONE;
    }
    m
}

fn mirror_at(deg: f64) -> CMatrix {
    let (c, s) = ((2.0 * deg.to_radians()).cos(), (2.0 * deg.to_radians()).sin());
    site_permutation(|(x, y)| (c * x + s * y, s * x - c * y))
}

/// Mirror `𝒫_j` of the flake: axes at 90° (j=1), 150° (j=2), 30° (j=3),
/// so that `𝒫_{j+1} = ℛ₃𝒫_j`.
pub fn honeycomb_mirror(j: usize) -> CMatrix {
    match j {
        1 => mirror_at(90.0),
        2 => mirror_at(150.0),
        3 => mirror_at(30.0),
        _ => panic!("mirror index must be 1, 2 or 3"),
    }
}

/// Counterclockwise rotation `ℛ₃` by 120°.
pub fn honeycomb_rotation() -> CMatrix {
    let (c, s) = ((120f64).to_radians().cos(), (120f64).to_radians().sin());
    site_permutation(|(x, y)| (c * x - s * y, s * x + c * y))
}

/// Phenalenyl-type honeycomb flake with nearest-neighbour coupling `g` and
/// `±iτ` on the outer A sites.
pub fn honeycomb_flake(g: f64, tau: f64) -> Model {
    let pos = honeycomb_positions();
    let n = pos.len();
    let mut onsite = vec![ZERO; n];
    for &i in &FLAKE_GAIN {
        onsite[i] = C64::new(0.0, tau);
    }
    for &i in &FLAKE_LOSS {
        onsite[i] = C64::new(0.0, -tau);
    }
    let mut couplings = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let d = (pos[i].0 - pos[j].0).hypot(pos[i].1 - pos[j].1);
            if i != j && (d - 1.0).abs() < 1e-9 {
                couplings.push(Coupling { from: i, to: j, amplitude: C64::new(g, 0.0) });
            }
        }
    }
    let model = Model::new("honeycomb_flake", onsite, couplings, flake_sublattice(), false)
        .expect("flake geometry is bipartite");
    let c = model.sublattice_operator();
    let mut hints = vec![SymOp::new(RelationKind::AntilinearAnticommute, c.clone(), "P_A-P_B")];
    for j in 1..=3 {
        let p = honeycomb_mirror(j);
        hints.push(SymOp::chiral(&p * &c, format!("Pi_{j}")));
        hints.push(SymOp::new(RelationKind::AntilinearCommute, p, format!("P_{j}")));
    }
    model.with_hints(hints)
}

/// Parameters of the four-site ring with complex couplings.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RtWheel {
    pub beta: C64,
    pub g1: C64,
    pub g2: C64,
}

impl RtWheel {
    pub fn new(beta: C64, g1: C64, g2: C64) -> Self {
        RtWheel { beta, g1, g2 }
    }

    /// `Π = g_{2r}γ¹ + i g_{1i}γ³`.
    pub fn chiral_operator(&self) -> CMatrix {
        let g1 = gamma_mu(1).unwrap();
        let g3 = gamma_mu(3).unwrap();
        &g1.scale_real(self.g2.re) + &g3.scale(C64::new(0.0, self.g1.im))
    }

    pub fn model(&self) -> Model {
        rt_wheel(self.beta, self.g1, self.g2)
    }
}

/// Two-fold rotation of the ring: sites 0↔1, 2↔3.
pub fn rotation_r2() -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    for (i, j) in [(0, 1), (1, 0), (2, 3), (3, 2)] {
        m[(i, j)] = ONE;
    }
    m
}

fn symmetric(a: usize, b: usize, amp: C64) -> [Coupling; 2] {
    [Coupling { from: a, to: b, amplitude: amp }, Coupling { from: b, to: a, amplitude: amp }]
}

/// Ring 0–2–1–3–0 with on-site `β, β, −β, −β` and symmetric couplings
/// `g₁` (0–2), `g₁*` (1–3), `g₂` (1–2), `g₂*` (0–3); the matrix is
/// `βγ⁰ + g_{1r}γ⁵ + γ⁰(g_{2r}γ¹ + i g_{1i}γ³) + g_{2i}γ²`.
pub fn rt_wheel(beta: C64, g1: C64, g2: C64) -> Model {
    let onsite = vec![beta, beta, -beta, -beta];
    let mut couplings = Vec::new();
    for (a, b, amp) in [(0, 2, g1), (1, 3, g1.conj()), (1, 2, g2), (0, 3, g2.conj())] {
        if amp != ZERO {
            couplings.extend(symmetric(a, b, amp));
        }
    }
    let sub = vec![Sublattice::A, Sublattice::A, Sublattice::B, Sublattice::B];
    let model = Model::new("rt_wheel", onsite, couplings, sub, false).expect("ring is bipartite");
    let w = RtWheel::new(beta, g1, g2);
    let mut hints = Vec::new();
    let pi = w.chiral_operator();
    if pi.norm() > 0.0 {
        hints.push(SymOp::chiral(pi, "g2r*g1 + i*g1i*g3"));
    }
    if beta == ZERO {
        hints.push(SymOp::chiral(gamma_mu(0).unwrap(), "g0"));
    }
    if beta.im == 0.0 {
        hints.push(SymOp::new(RelationKind::AntilinearCommute, rotation_r2(), "R2"));
        let xi = &rotation_r2() * &(&gamma_mu(1).unwrap().scale_real(g2.re) - &gamma_mu(3).unwrap().scale(C64::new(0.0, g1.im)));
        if xi.norm() > 0.0 {
            hints.push(SymOp::new(RelationKind::AntilinearAnticommute, xi, "R2(g2r*g1 - i*g1i*g3)"));
        }
    }
    model.with_hints(hints)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dirac4Variant {
    /// `g₁γ⁵ − g₂γ¹`
    A,
    /// `g₁γ⁵ + g₂γ⁰γ¹`
    B,
}

fn dirac_sublattice() -> Vec<Sublattice> {
    vec![Sublattice::A, Sublattice::A, Sublattice::B, Sublattice::B]
}

fn labelled(indices: &[u8]) -> SymOp {
    let m = gamma_product(indices).unwrap();
    let label = GammaLabel::from_sorted(indices).unwrap().to_string();
    SymOp::chiral(m, label)
}

pub fn dirac4(variant: Dirac4Variant, g1: C64, g2: C64) -> Model {
    let g5 = gamma_mu(5).unwrap().scale(g1);
    let (name, h, mut hints) = match variant {
        Dirac4Variant::A => {
            let h = &g5 - &gamma_mu(1).unwrap().scale(g2);
            let mut hints: Vec<SymOp> = [&[0u8][..], &[2], &[3], &[1, 5]].iter().map(|ix| labelled(ix)).collect();
            let mixed = &gamma_mu(5).unwrap().scale(g2) - &gamma_mu(1).unwrap().scale(g1);
            if mixed.norm() > 0.0 {
                let scale = mixed.norm();
                hints.push(SymOp::chiral(mixed.scale_real(1.0 / scale), "g2*g5 - g1*g1"));
            }
            hints.push(SymOp::new(RelationKind::TransposeMinus, gamma_mu(1).unwrap(), "g1"));
            ("dirac4_a", h, hints)
        }
        Dirac4Variant::B => {
            let h = &g5 + &gamma_product(&[0, 1]).unwrap().scale(g2);
            let hints = [&[0u8][..], &[1], &[1, 5], &[0, 5]].iter().map(|ix| labelled(ix)).collect();
            ("dirac4_b", h, hints)
        }
    };
    hints.retain(|op| op.matrix.norm() > 0.0);
    Model::from_matrix(name, &h, dirac_sublattice(), false).expect("Dirac models are bipartite").with_hints(hints)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PyramidVariant {
    /// `g₁γ⁵ + g₂γ⁰γ¹ + g₃γ⁰γ¹γ⁵`
    NoChiral,
    /// `g₁γ⁵ + g₂γ⁰γ¹ + g₃γ¹γ⁵`
    Chiral,
}

/// All-to-all four-site model plus diagonal detunings `Σ d·γ_label`, with
/// labels restricted to `γ⁰`, `γ¹γ²`, `γ³γ⁵`.
pub fn pyramid(
    variant: PyramidVariant,
    g1: C64,
    g2: C64,
    g3: C64,
    detunings: &[(GammaLabel, C64)],
) -> Result<Model, ModelError> {
    let allowed: [&[u8]; 3] = [&[0], &[1, 2], &[3, 5]];
    let mut amount = [ZERO; 3];
    for (label, d) in detunings {
        let k = allowed.iter().position(|a| *a == label.indices()).ok_or_else(|| ModelError::InvalidDetuning(label.clone()))?;
        amount[k] += d;
    }
    let third: &[u8] = match variant {
        PyramidVariant::NoChiral => &[0, 1, 5],
        PyramidVariant::Chiral => &[1, 5],
    };
    let mut h = &(&gamma_mu(5).unwrap().scale(g1) + &gamma_product(&[0, 1]).unwrap().scale(g2))
        + &gamma_product(third).unwrap().scale(g3);
    for (ix, d) in allowed.iter().zip(amount) {
        if d != ZERO {
            h = &h + &gamma_product(ix).unwrap().scale(d);
        }
    }
    let name = match variant {
        PyramidVariant::NoChiral => "pyramid_nochiral",
        PyramidVariant::Chiral => "pyramid_chiral",
    };
    let mut hints = Vec::new();
    if variant == PyramidVariant::Chiral {
        let [_, d1, d2] = amount;
        if d2 == ZERO {
            hints.push(labelled(&[1]));
        }
        if d1 == ZERO {
            hints.push(labelled(&[0, 5]));
        }
        if d2 != ZERO && amount[0] == ZERO && g1 != ZERO {
            let op = &gamma_mu(1).unwrap() - &gamma_product(&[1, 3]).unwrap().scale(d2 / g1);
            hints.push(SymOp::chiral(op, "g1 - (d2/g1)*g1*g3"));
        }
    }
    Ok(Model::from_matrix(name, &h, dirac_sublattice(), true)?.with_hints(hints))
}

/// `[[iD_A, T], [T†, iD_B]]` with the A sites first.
pub fn bipartite_pseudo(t: &CMatrix, d_a: &[f64], d_b: &[f64]) -> Result<Model, ModelError> {
    let (na, nb) = (t.rows(), t.cols());
    if d_a.len() != na {
        return Err(ModelError::DimensionMismatch { expected: na, found: d_a.len() });
    }
    if d_b.len() != nb {
        return Err(ModelError::DimensionMismatch { expected: nb, found: d_b.len() });
    }
    let n = na + nb;
    let mut h = CMatrix::zeros(n, n);
    for (i, &d) in d_a.iter().chain(d_b).enumerate() {
        h[(i, i)] = C64::new(0.0, d);
    }
    for i in 0..na {
        for j in 0..nb {
            h[(i, na + j)] = t[(i, j)];
            h[(na + j, i)] = t[(i, j)].conj();
        }
    }
    let sub = (0..n).map(|i| if i < na { Sublattice::A } else { Sublattice::B }).collect();
    let model = Model::from_matrix("bipartite_pseudo", &h, sub, false)?;
    let c = model.sublattice_operator();
    Ok(model.with_hints(vec![SymOp::new(RelationKind::DaggerMinus, c, "P_A-P_B")]))
}

/// Parity of the five-site chain A₀ B₀ A₁ B₁ A₂ in block order
/// (A₀, A₁, A₂, B₀, B₁): A₀↔A₂, B₀↔B₁.
pub fn fig5_parity() -> CMatrix {
    let mut m = CMatrix::zeros(5, 5);
    for (i, j) in [(0, 2), (1, 1), (2, 0), (3, 4), (4, 3)] {
        m[(i, j)] = ONE;
    }
    m
}

/// Five-site chain A–B–A–B–A with `g₁ = g₂* = 1 − 0.1i`,
/// `T = [[g₁, 0], [g₁, g₂], [0, g₂]]` and imaginary detuning `δ·(1, 0, −1)`
/// on A, `δ·(1, −1)` on B.
pub fn fig5_preset(delta: f64) -> Model {
    let g1 = C64::new(1.0, -0.1);
    let g2 = g1.conj();
    let t = CMatrix::from_rows(&[vec![g1, ZERO], vec![g1, g2], vec![ZERO, g2]]).unwrap();
    let mut model = bipartite_pseudo(&t, &[delta, 0.0, -delta], &[delta, -delta]).expect("consistent blocks");
    model.name = "fig5".into();
    let c = model.sublattice_operator();
    let p = fig5_parity();
    let mut hints = model.hints().to_vec();
    hints.push(SymOp::new(RelationKind::AntilinearCommute, p.clone(), "P"));
    hints.push(SymOp::new(RelationKind::TransposeMinus, &p * &c, "P(P_A-P_B)"));
    model.with_hints(hints)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SshVariant {
    /// `(t₁ + t₂cos k)σ_x + (iτ + t₂ sin k)σ_y`
    AsymCoupling,
    /// `iτσ_z + (t₁ + t₂cos k)σ_x + t₂ sin k σ_y`
    ImagOnsite,
}

/// Two-band SSH Bloch Hamiltonian with lattice constant 1.
pub fn ssh_bloch(variant: SshVariant, t1: f64, t2: f64, tau: f64, k: f64) -> CMatrix {
    let x = pauli(1).scale_real(t1 + t2 * k.cos());
    match variant {
        SshVariant::AsymCoupling => &x + &pauli(2).scale(C64::new(t2 * k.sin(), tau)),
        SshVariant::ImagOnsite => {
            &(&x + &pauli(2).scale_real(t2 * k.sin())) + &pauli(3).scale(C64::new(0.0, tau))
        }
    }
}
