//! Trigonometric sl₂ solutions in additive variables: λ = eᵘ, μ = eᵛ,
//! μ^{1/2} = e^{v/2}. No square roots are taken.

use crate::tensor::{unit, Mat, Tensor2};
use crate::{expm1, C64};

const ONE: C64 = C64::new(1.0, 0.0);

fn basis() -> (Mat, Mat, Mat, Mat) {
    (unit(2, 0, 0), unit(2, 0, 1), unit(2, 1, 0), unit(2, 1, 1))
}

fn h() -> Mat {
    let (e11, _, _, e22) = basis();
    e11.iter().zip(&e22).map(|(a, b)| a - b).collect()
}

fn lin(a: C64, x: &Mat, b: C64, y: &Mat) -> Mat {
    x.iter().zip(y).map(|(p, q)| a * p + b * q).collect()
}

/// First family: simple pole 1⊗1/u along λ = 1.
pub fn aybe1(u: C64, v: C64) -> Tensor2 {
    let (l, m) = (u.exp(), v.exp());
    let (one_l, one_m) = (-expm1(u), -expm1(v));
    let (e11, e12, e21, e22) = basis();
    let mut t = Tensor2::zeros(2);
    let den = ONE / (one_l * one_m);
    t.add_outer(den, &lin(m, &e11, -ONE, &e22), &lin(ONE, &e11, l, &e22));
    t.add_outer(den, &lin(-l, &e11, m, &e22), &lin(ONE, &e11, ONE, &e22));
    t.add_outer(ONE / one_m, &e21, &e12);
    t.add_outer(m / one_m, &e12, &e21);
    t
}

/// sl₂ limit of [`aybe1`].
pub fn cybe1(v: C64) -> Tensor2 {
    let m = v.exp();
    let one_m = -expm1(v);
    let (_, e12, e21, _) = basis();
    let h = h();
    let mut t = Tensor2::zeros(2);
    t.add_outer((ONE + m) / (4.0 * one_m), &h, &h);
    t.add_outer(ONE / one_m, &e21, &e12);
    t.add_outer(m / one_m, &e12, &e21);
    t
}

/// Second family. `e21_e12` is the exponent of μ on e₂₁⊗e₁₂ (½ is the
/// unitary choice); `with_e21_e21` toggles ((λμ)^{1/2} − (λμ)^{−1/2}) e₂₁⊗e₂₁.
pub fn aybe2_general(u: C64, v: C64, e21_e12: f64, with_e21_e21: bool) -> Tensor2 {
    let l = u.exp();
    let (one_l, one_m, one_lm) = (-expm1(u), -expm1(v), -expm1(u + v));
    let (e11, e12, e21, e22) = basis();
    let mut t = Tensor2::zeros(2);
    let diag = one_lm / (one_l * one_m);
    t.add_outer(diag, &e11, &e11);
    t.add_outer(diag, &e22, &e22);
    t.add_outer(l / one_l, &e11, &e22);
    t.add_outer(ONE / one_l, &e22, &e11);
    t.add_outer((v * e21_e12).exp() / one_m, &e21, &e12);
    t.add_outer((v * 0.5).exp() / one_m, &e12, &e21);
    if with_e21_e21 {
        let s = ((u + v) * 0.5).exp();
        t.add_outer(s - ONE / s, &e21, &e21);
    }
    t
}

/// Second family, unitary form: μ^{1/2} on both exchange terms.
pub fn aybe2(u: C64, v: C64) -> Tensor2 {
    aybe2_general(u, v, 0.5, true)
}

/// Second family without the e₂₁⊗e₂₁ term; this one satisfies the AYBE.
pub fn aybe2_reduced(u: C64, v: C64) -> Tensor2 {
    aybe2_general(u, v, 0.5, false)
}

/// Literal variant with μ^{−1/2} on e₂₁⊗e₁₂. Not unitary; kept for comparison.
pub fn aybe2_literal(u: C64, v: C64) -> Tensor2 {
    aybe2_general(u, v, -0.5, true)
}

/// CYBE form with exponent `e21_e12` on e₂₁⊗e₁₂ and weight `c` on e₂₁⊗e₂₁.
pub fn cybe2_general(v: C64, e21_e12: f64, c: C64) -> Tensor2 {
    let m = v.exp();
    let s = (v * 0.5).exp();
    let one_m = -expm1(v);
    let (_, e12, e21, _) = basis();
    let h = h();
    let mut t = Tensor2::zeros(2);
    t.add_outer((ONE + m) / (4.0 * one_m), &h, &h);
    t.add_outer((v * e21_e12).exp() / one_m, &e21, &e12);
    t.add_outer(s / one_m, &e12, &e21);
    t.add_outer(c * (s - ONE / s), &e21, &e21);
    t
}

/// sl₂ limit of [`aybe2`].
pub fn cybe2(v: C64) -> Tensor2 {
    cybe2_general(v, 0.5, ONE)
}

/// Literal variant with μ^{−1/2} on e₂₁⊗e₁₂. Fails the CYBE; kept for comparison.
pub fn cybe2_literal(v: C64) -> Tensor2 {
    cybe2_general(v, -0.5, ONE)
}
