use super::theta::{lattice_distance, reduce, theta11_derivs};
use super::{Characteristic, ModularParam};
use crate::tol::POLE_GUARD;
use crate::{Error, Result, C64};

fn log_derivs(x: C64, m: &ModularParam) -> Result<(C64, C64, super::Reduced)> {
    if lattice_distance(x, m.tau) < POLE_GUARD {
        return Err(Error::PoleProximity { at: x, guard: POLE_GUARD });
    }
    let r = reduce(x, m.tau);
    let d = theta11_derivs(r.z, m.tau)?;
    Ok((d[1] / d[0], d[2] / d[0], r))
}

/// Weierstrass ζ(x) for Z + Zτ, as η₁x + θ₁₁'/θ₁₁.
pub fn weierstrass_zeta(x: C64, m: &ModularParam) -> Result<C64> {
    let (l1, _, r) = log_derivs(x, m)?;
    Ok(m.eta1 * r.z + l1 + m.eta1 * r.m as f64 + m.eta2 * r.n as f64)
}

/// Weierstrass ℘(x) = −ζ'(x).
pub fn weierstrass_p(x: C64, m: &ModularParam) -> Result<C64> {
    let (l1, l2, _) = log_derivs(x, m)?;
    Ok(-(m.eta1 + l2 - l1 * l1))
}

/// ζ_{r₁,r₂}(x) = ζ(x + r₁ + r₂τ) − r₁η₁ − r₂η₂ for real r₁, r₂.
pub fn zeta_char_pq(r1: f64, r2: f64, x: C64, m: &ModularParam) -> Result<C64> {
    Ok(weierstrass_zeta(x + r1 + m.tau * r2, m)? - m.eta1 * r1 - m.eta2 * r2)
}

/// ζ_{r₁,r₂} for a rational characteristic (r₁, r₂) = (p, q).
pub fn zeta_char(c: &Characteristic, x: C64, m: &ModularParam) -> Result<C64> {
    zeta_char_pq(c.p(), c.q(), x, m)
}
