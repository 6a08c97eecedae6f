use super::theta::{lattice_distance, theta_split};
use super::{Characteristic, ModularParam};
use crate::tol::POLE_GUARD;
use crate::{Error, Result, C64, TWO_PI_I};

fn guarded(x: C64, tau: C64) -> Result<(C64, C64)> {
    if lattice_distance(x, tau) < POLE_GUARD {
        return Err(Error::PoleProximity { at: x, guard: POLE_GUARD });
    }
    let (t, lf, _) = theta_split(x, tau)?;
    Ok((t, lf))
}

/// Kronecker's function F(u,v) = θ'(0)/(2πi) · θ(u+v)/(θ(u)θ(v)).
pub fn kronecker_f(u: C64, v: C64, m: &ModularParam) -> Result<C64> {
    let (tu, lu) = guarded(u, m.tau)?;
    let (tv, lv) = guarded(v, m.tau)?;
    let (tw, lw) = guarded(u + v, m.tau)?;
    Ok(m.theta_prime0 / TWO_PI_I * tw / (tu * tv) * (lw - lu - lv).exp())
}

/// F_{p,q}(u,v) = exp(2πi(pqτ + pv + qu)) F(u + pτ, v + qτ) for real p, q.
pub fn kronecker_f_pq(p: f64, q: f64, u: C64, v: C64, m: &ModularParam) -> Result<C64> {
    let tau = m.tau;
    let (tu, lu) = guarded(u + tau * p, tau)?;
    let (tv, lv) = guarded(v + tau * q, tau)?;
    let (tw, lw) = guarded(u + v + tau * (p + q), tau)?;
    let pre = TWO_PI_I * (tau * (p * q) + v * p + u * q);
    Ok(m.theta_prime0 / TWO_PI_I * tw / (tu * tv) * (pre + lw - lu - lv).exp())
}

/// F_{p,q} for a rational characteristic.
pub fn kronecker_f_char(c: &Characteristic, u: C64, v: C64, m: &ModularParam) -> Result<C64> {
    kronecker_f_pq(c.p(), c.q(), u, v, m)
}
