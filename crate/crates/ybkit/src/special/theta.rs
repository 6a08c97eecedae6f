use super::ModularParam;
use crate::tol::{SERIES_MAX_TERMS, SERIES_TAIL};
use crate::{Error, Result, C64, TWO_PI_I};
use std::f64::consts::PI;

const PI_I: C64 = C64::new(0.0, PI);

/// A point written as `z + m + nτ` with `z` in the central parallelogram.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduced {
    pub z: C64,
    pub m: i64,
    pub n: i64,
}

/// Subtract the lattice vector nearest (in the skewed coordinates) to `u`.
pub fn reduce(u: C64, tau: C64) -> Reduced {
    let n = (u.im / tau.im).round();
    let w = u - tau * n;
    let m = w.re.round();
    Reduced { z: w - m, m: m as i64, n: n as i64 }
}

/// Euclidean distance from `u` to the lattice Z + Zτ.
pub fn lattice_distance(u: C64, tau: C64) -> f64 {
    let z = reduce(u, tau).z;
    let mut best = f64::INFINITY;
    for a in -1..=1 {
        for b in -1..=1 {
            best = best.min((z - (a as f64) - tau * (b as f64)).norm());
        }
    }
    best
}

/// θ₁₁ and its first three u-derivatives, summed directly from the series.
///
/// No reduction is applied; callers pass reduced arguments when |Im u| is large.
pub fn theta11_derivs(u: C64, tau: C64) -> Result<[C64; 4]> {
    if !(u.re.is_finite() && u.im.is_finite() && tau.re.is_finite() && tau.im.is_finite()) {
        return Err(Error::NonFinite);
    }
    if tau.im <= 0.0 {
        return Err(Error::InvalidTau(tau));
    }
    let mut acc = [C64::new(0.0, 0.0); 4];
    let mut biggest = 0.0_f64;
    for k in 0..SERIES_MAX_TERMS as i64 {
        let mut negligible = true;
        for n in [k, -k - 1] {
            let h = n as f64 + 0.5;
            let sign = if n.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
            let e = (PI_I * (h * h) * tau + TWO_PI_I * h * u).exp() * sign;
            let w = TWO_PI_I * h;
            acc[0] += e;
            acc[1] += e * w;
            acc[2] += e * w * w;
            acc[3] += e * w * w * w;
            let mag = e.norm() * (1.0 + w.norm().powi(3));
            biggest = biggest.max(mag);
            if mag > SERIES_TAIL * biggest {
                negligible = false;
            }
        }
        if negligible {
            return Ok(acc);
        }
    }
    Err(Error::NoConvergence(SERIES_MAX_TERMS))
}

/// `θ(z)` and the log of the factor carrying it to `z + m + nτ`.
pub(crate) fn theta_split(u: C64, tau: C64) -> Result<(C64, C64, Reduced)> {
    let r = reduce(u, tau);
    let t = theta11_derivs(r.z, tau)?[0];
    let (m, n) = (r.m as f64, r.n as f64);
    let log_factor = PI_I * (m + n) - PI_I * (n * n) * tau - TWO_PI_I * n * r.z;
    Ok((t, log_factor, r))
}

/// θ₁₁(u, τ) = Σ (−1)ⁿ exp(πi(n+½)²τ + 2πi(n+½)u).
pub fn theta11(u: C64, m: &ModularParam) -> Result<C64> {
    let (t, lf, _) = theta_split(u, m.tau)?;
    Ok(t * lf.exp())
}

/// θ₁₁'(0, τ), by term-wise differentiation.
pub fn theta11_derivative_at_zero(m: &ModularParam) -> C64 {
    m.theta_prime0
}
