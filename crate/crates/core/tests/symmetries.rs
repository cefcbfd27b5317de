use nhsym::clifford::{gamma_mu, gamma_product, pauli, GammaLabel};
use nhsym::linalg::CMatrix;
use nhsym::model::{dirac4, pyramid, rt_wheel, ssh_bloch, Dirac4Variant, PyramidVariant, RtWheel, SshVariant};
use nhsym::symmetry::{
    check, discover_in_basis16, hidden_nhph, pseudo_from_sa, pseudo_properties, RelationKind, SaOutcome, SymOp,
};
use nhsym::C64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

fn draw(rng: &mut ChaCha8Rng) -> C64 {
    c(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0))
}

fn g(ix: &[u8]) -> CMatrix {
    gamma_product(ix).unwrap()
}

fn label(ix: &[u8]) -> GammaLabel {
    GammaLabel::from_sorted(ix).unwrap()
}

fn chiral(m: CMatrix) -> SymOp {
    SymOp::chiral(m, "op")
}

fn sa_passes(h: &CMatrix) {
    let SaOutcome::Found { eta, pi, eta_residual, pi_residual, .. } = pseudo_from_sa(h) else {
        panic!("S and A should anticommute");
    };
    assert!(eta_residual <= 1e-10 && check(h, &eta).unwrap() <= 1e-10);
    assert!(pi_residual.unwrap() <= 1e-10 && check(h, &pi.unwrap()).unwrap() <= 1e-10);
    let rep = pseudo_properties(h, &eta.matrix, &[h.clone(), CMatrix::identity(h.rows())]);
    assert!(rep.all_pass(1e-10), "{rep:?}");
}

#[test]
fn dirac4a_chiral_list() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..50 {
        let (g1, g2) = (draw(&mut rng), draw(&mut rng));
        let h = dirac4(Dirac4Variant::A, g1, g2).to_matrix();
        let mixed = &gamma_mu(5).unwrap().scale(g2) - &gamma_mu(1).unwrap().scale(g1);
        for op in [g(&[0]), g(&[2]), g(&[3]), mixed, g(&[1, 5])] {
            assert!(check(&h, &chiral(op)).unwrap() <= 1e-12);
        }
        let d = discover_in_basis16(&h, RelationKind::LinearAnticommute);
        assert_eq!(d.dimension, 8);
        assert!(d.max_residual() <= 1e-9);
    }
}

#[test]
fn dirac4b_chiral_list() {
    let h = dirac4(Dirac4Variant::B, c(0.7, 0.2), c(-0.4, 1.1)).to_matrix();
    for ix in [&[0u8][..], &[1], &[1, 5], &[0, 5]] {
        assert!(check(&h, &chiral(g(ix))).unwrap() <= 1e-12, "{ix:?}");
    }
}

#[test]
fn ring_chiral_operator_for_complex_beta() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..20 {
        let w = RtWheel::new(draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let h = rt_wheel(w.beta, w.g1, w.g2).to_matrix();
        assert!(check(&h, &chiral(w.chiral_operator())).unwrap() <= 1e-10);
    }
}

#[test]
fn ring_hidden_nhph_for_real_beta() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for _ in 0..20 {
        let w = RtWheel::new(c(rng.gen_range(-1.0..1.0), 0.0), draw(&mut rng), draw(&mut rng));
        let hid = hidden_nhph(&w).unwrap();
        assert!(hid.xi_residual <= 1e-10 && hid.lambda_residual <= 1e-10 && hid.pi_residual <= 1e-10);
        assert!(hid.alignment <= 1e-10, "{}", hid.alignment);
    }
    assert!(hidden_nhph(&RtWheel::new(c(0.75, -0.1), c(1.0, 0.3), c(1.5, 0.3))).is_err());
}

#[test]
fn pyramid_without_chiral_symmetry() {
    let mut rng = ChaCha8Rng::seed_from_u64(14);
    for _ in 0..10 {
        let m = pyramid(PyramidVariant::NoChiral, draw(&mut rng), draw(&mut rng), draw(&mut rng), &[]).unwrap();
        assert_eq!(discover_in_basis16(&m.to_matrix(), RelationKind::LinearAnticommute).dimension, 0);
    }
}

#[test]
fn pyramid_chiral_variant() {
    let mut rng = ChaCha8Rng::seed_from_u64(15);
    for _ in 0..10 {
        let (g1, g2, g3) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let h = pyramid(PyramidVariant::Chiral, g1, g2, g3, &[]).unwrap().to_matrix();
        assert!(check(&h, &chiral(g(&[1]))).unwrap() <= 1e-12);
        assert!(check(&h, &chiral(g(&[0, 5]))).unwrap() <= 1e-12);
    }
}

#[test]
fn pyramid_evolving_operator() {
    let mut rng = ChaCha8Rng::seed_from_u64(16);
    for _ in 0..20 {
        let (g1, g2, g3, d1, d2) = (draw(&mut rng), draw(&mut rng), draw(&mut rng), draw(&mut rng), draw(&mut rng));
        let m = pyramid(PyramidVariant::Chiral, g1, g2, g3, &[(label(&[1, 2]), d1), (label(&[3, 5]), d2)]).unwrap();
        let h = m.to_matrix();
        let evolving = &g(&[1]) - &g(&[1, 3]).scale(d2 / g1);
        assert!(check(&h, &chiral(evolving)).unwrap() <= 1e-10);
        for op in m.hints() {
            assert!(check(&h, op).unwrap() <= 1e-10);
        }
        let plus = &g(&[1]) + &g(&[1, 3]).scale(d2);
        assert!(check(&h, &chiral(plus)).unwrap() > 1e-3);
    }
}

#[test]
fn pyramid_three_detunings_break_chirality() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for _ in 0..10 {
        let theta = rng.gen_range(0.0..std::f64::consts::TAU);
        let det = [
            (label(&[1, 2]), draw(&mut rng)),
            (label(&[3, 5]), draw(&mut rng)),
            (label(&[0]), C64::from_polar(rng.gen_range(0.2..2.0), theta)),
        ];
        let m = pyramid(PyramidVariant::Chiral, draw(&mut rng), draw(&mut rng), draw(&mut rng), &det).unwrap();
        assert_eq!(discover_in_basis16(&m.to_matrix(), RelationKind::LinearAnticommute).dimension, 0);
    }
}

#[test]
fn sa_rule_on_dirac_and_ssh() {
    let mut rng = ChaCha8Rng::seed_from_u64(18);
    for _ in 0..20 {
        sa_passes(&dirac4(Dirac4Variant::A, draw(&mut rng), draw(&mut rng)).to_matrix());
        let k = rng.gen_range(0.1..3.0);
        let h = ssh_bloch(SshVariant::ImagOnsite, rng.gen_range(-2.0..2.0), rng.gen_range(0.1..2.0), rng.gen_range(0.1..2.0), k);
        sa_passes(&h);
    }
}

#[test]
fn sa_counterexample_is_pseudo_chiral() {
    let s = &g(&[0]) + &g(&[5]);
    let a = &(&(&g(&[1]) + &g(&[3])) + &g(&[1, 3])) + &g(&[0, 5]).scale(c(1.0, 1.0));
    let h = &s + &a;
    let eta = SymOp::new(RelationKind::TransposeMinus, g(&[0, 5]), "g0*g5");
    assert!(check(&h, &eta).unwrap() <= 1e-12);
    assert!(pseudo_properties(&h, &eta.matrix, std::slice::from_ref(&h)).all_pass(1e-10));
    let d = discover_in_basis16(&h, RelationKind::LinearAnticommute);
    assert_eq!(d.dimension, 4);
    assert!(d.max_residual() <= 1e-9);
}

#[test]
fn ssh_chiral_and_pseudo_chiral() {
    let mut rng = ChaCha8Rng::seed_from_u64(19);
    let (t1, t2, tau) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0), rng.gen_range(0.1..2.0));
    let sz = chiral(pauli(3));
    let sy = SymOp::new(RelationKind::TransposeMinus, pauli(2), "sy");
    for i in 0..100 {
        let k = -std::f64::consts::PI + std::f64::consts::TAU * i as f64 / 100.0;
        let h = ssh_bloch(SshVariant::AsymCoupling, t1, t2, tau, k);
        assert!(check(&h, &sz).unwrap() <= 1e-12);
        let h = ssh_bloch(SshVariant::ImagOnsite, t1, t2, tau, k);
        assert!(check(&h, &sz).unwrap() > 1e-3);
        assert!(check(&h, &sy).unwrap() <= 1e-12);
        assert!(pseudo_properties(&h, &pauli(2), &[h.clone(), CMatrix::identity(2)]).all_pass(1e-10));
    }
}
