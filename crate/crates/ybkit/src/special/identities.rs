//! Residuals (LHS − RHS) of identities between ζ, ℘ and F across the
//! isogeny τ → dτ. Callers compare the returned value against a tolerance.

use super::theta::theta11_derivs;
use super::{kronecker_f, kronecker_f_pq, weierstrass_p, weierstrass_zeta, zeta_char_pq, ModularParam};
use crate::{Error, Result, C64, TWO_PI_I};

fn check_d(d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter("d must be positive".into()));
    }
    Ok(())
}

/// (1/d)·x·Σ_{i=1}^{d−1} ℘(i/d).
fn p_correction(d: usize, x: C64, m: &ModularParam) -> Result<C64> {
    let mut s = C64::new(0.0, 0.0);
    for i in 1..d {
        s += weierstrass_p(C64::new(i as f64 / d as f64, 0.0), m)?;
    }
    Ok(s * x / d as f64)
}

/// ζ(dx, dτ) − [(1/d)Σᵢ ζ_{i/d,0}(x, τ) + (x/d)Σ_{i≠0} ℘(i/d, τ)].
pub fn identity_zeta_distribution(d: usize, x: C64, m: &ModularParam) -> Result<C64> {
    identity_zeta_distribution_char(d, 0, x, m)
}

/// ζ_{0,j/d}(dx, dτ) − [(1/d)Σᵢ ζ_{i/d,j/d}(x, τ) + (x/d)Σ_{i≠0} ℘(i/d, τ)].
pub fn identity_zeta_distribution_char(d: usize, j: i64, x: C64, m: &ModularParam) -> Result<C64> {
    check_d(d)?;
    let md = m.scaled(d)?;
    let df = d as f64;
    let lhs = zeta_char_pq(0.0, j as f64 / df, x * df, &md)?;
    let mut s = C64::new(0.0, 0.0);
    for i in 0..d {
        s += zeta_char_pq(i as f64 / df, j as f64 / df, x, m)?;
    }
    Ok(lhs - s / df - p_correction(d, x, m)?)
}

/// 2πi F_{k/d,l/d}(0, dx, dτ) − (1/d)Σⱼ e^{−2πikj/d}[ζ_{j/d,l/d}(x) − ζ_{j/d,0}(−kτ/d)].
///
/// The 1/d is forced by comparing residues at x = −kτ/d.
pub fn identity_f_zeta(d: usize, k: i64, l: i64, x: C64, m: &ModularParam) -> Result<C64> {
    check_d(d)?;
    if k.rem_euclid(d as i64) == 0 {
        return Err(Error::InvalidParameter(format!("k = {k} is divisible by d = {d}")));
    }
    let md = m.scaled(d)?;
    let df = d as f64;
    let (kf, lf) = (k as f64 / df, l as f64 / df);
    let lhs = TWO_PI_I * kronecker_f_pq(kf, lf, C64::new(0.0, 0.0), x * df, &md)?;
    let mut s = C64::new(0.0, 0.0);
    for j in 0..d {
        let jf = j as f64 / df;
        let phase = (-TWO_PI_I * (k as f64 * j as f64 / df)).exp();
        s += phase * (zeta_char_pq(jf, lf, x, m)? - zeta_char_pq(jf, 0.0, -m.tau * kf, m)?);
    }
    Ok(lhs - s / df)
}

/// ℘(dx, dτ) − [(1/d²)Σᵢ ℘(x + i/d, τ) − (1/d²)Σ_{i≠0} ℘(i/d, τ)].
///
/// The second sum runs over the nonzero residues mod d.
pub fn identity_p_distribution(d: usize, x: C64, m: &ModularParam) -> Result<C64> {
    check_d(d)?;
    let md = m.scaled(d)?;
    let df = d as f64;
    let lhs = weierstrass_p(x * df, &md)?;
    let mut s = C64::new(0.0, 0.0);
    for i in 0..d {
        s += weierstrass_p(x + i as f64 / df, m)?;
    }
    for i in 1..d {
        s -= weierstrass_p(C64::new(i as f64 / df, 0.0), m)?;
    }
    Ok(lhs - s / (df * df))
}

/// η₂(dτ) − [η₂(τ) + (τ/d)Σ_{i≠0} ℘(i/d, τ)].
pub fn identity_eta2_isogeny(d: usize, m: &ModularParam) -> Result<C64> {
    check_d(d)?;
    let md = m.scaled(d)?;
    Ok(md.eta2 - m.eta2 - p_correction(d, m.tau, m)?)
}

/// η₁τ − η₂ − 2πi with η₂ = 2ζ(τ/2) taken straight from the theta quotient at
/// the half period, not from the stored `eta2` (which is defined by this relation).
pub fn legendre_residual(m: &ModularParam) -> Result<C64> {
    let half = m.tau * 0.5;
    let d = theta11_derivs(half, m.tau)?;
    let eta2 = 2.0 * (m.eta1 * half + d[1] / d[0]);
    Ok(m.eta1 * m.tau - eta2 - TWO_PI_I)
}

/// [2πi F(x, y) − 1/x] − (ζ(y) − yη₁); O(x) as x → 0.
pub fn kronecker_weierstrass_limit(y: C64, x: C64, m: &ModularParam) -> Result<C64> {
    let lhs = TWO_PI_I * kronecker_f(x, y, m)? - 1.0 / x;
    Ok(lhs - (weierstrass_zeta(y, m)? - y * m.eta1))
}
