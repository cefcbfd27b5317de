use num_complex::Complex64 as C64;

use super::{check, product_chiral, RelationKind, SymOp, SymmetryError};
use crate::clifford::gamma_mu;
use crate::model::{rotation_r2, RtWheel};

/// The NHPH operator of the ring and the product-rule check built on it.
#[derive(Clone, Debug)]
pub struct HiddenNhph {
    /// `Ξ = CK` with `C = ℛ₂(g_{2r}γ¹ − i g_{1i}γ³)`.
    pub xi: SymOp,
    /// `Λ = ℛ₂K`.
    pub lambda: SymOp,
    /// `Π = ΛΞ = ℛ₂C*`.
    pub pi: SymOp,
    pub xi_residual: f64,
    pub lambda_residual: f64,
    pub pi_residual: f64,
    /// `‖Π − cΠ₀‖/‖Π‖` for the best scalar `c`, with `Π₀ = g_{2r}γ¹ + i g_{1i}γ³`.
    pub alignment: f64,
}

pub fn hidden_nhph(w: &RtWheel) -> Result<HiddenNhph, SymmetryError> {
    if w.beta.im != 0.0 {
        return Err(SymmetryError::ComplexDetuning(w.beta));
    }
    let h = w.model().to_matrix();
    let r2 = rotation_r2();
    let inner = &gamma_mu(1).unwrap().scale_real(w.g2.re) - &gamma_mu(3).unwrap().scale(C64::new(0.0, w.g1.im));
    let xi = SymOp::new(RelationKind::AntilinearAnticommute, &r2 * &inner, "R2(g2r*g1 - i*g1i*g3)");
    let lambda = SymOp::new(RelationKind::AntilinearCommute, r2.clone(), "R2");
    let mut pi = product_chiral(&lambda.matrix, &xi.matrix);
    pi.label = "R2 K Xi".into();
    let reference = w.chiral_operator();
    let alignment = {
        let (p, q) = (pi.matrix.as_slice(), reference.as_slice());
        let qq: f64 = q.iter().map(|x| x.norm_sqr()).sum();
        if qq == 0.0 {
            f64::INFINITY
        } else {
            let c: C64 = q.iter().zip(p).map(|(a, b)| a.conj() * b).sum::<C64>() / qq;
            let r: f64 = p.iter().zip(q).map(|(a, b)| (a - c * b).norm_sqr()).sum::<f64>().sqrt();
            r / pi.matrix.norm().max(f64::MIN_POSITIVE)
        }
    };
    Ok(HiddenNhph {
        xi_residual: check(&h, &xi)?,
        lambda_residual: check(&h, &lambda)?,
        pi_residual: check(&h, &pi)?,
        xi,
        lambda,
        pi,
        alignment,
    })
}
