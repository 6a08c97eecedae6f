use super::theta::theta11_derivs;
use crate::tol::{SERIES_MAX_TERMS, SERIES_TAIL};
use crate::{Error, Result, C64, TWO_PI_I};
use std::f64::consts::PI;

/// A point τ of the upper half-plane with its derived constants.
///
/// Immutable after construction. `eta1` comes from θ₁₁ via
/// η₁ = −θ₁₁'''(0)/(3θ₁₁'(0)); `eta2` from the Legendre relation.
#[derive(Debug, Clone, PartialEq)]
pub struct ModularParam {
    pub tau: C64,
    pub q: C64,
    pub eta1: C64,
    pub eta2: C64,
    pub theta_prime0: C64,
    pub theta_third0: C64,
    /// G₂, G₄, G₆ in the q-expansion normalization.
    pub eisenstein: [C64; 3],
}

impl ModularParam {
    pub fn new(tau: C64) -> Result<Self> {
        if !(tau.re.is_finite() && tau.im.is_finite()) {
            return Err(Error::NonFinite);
        }
        if tau.im <= 0.0 {
            return Err(Error::InvalidTau(tau));
        }
        let q = (TWO_PI_I * tau).exp();
        let d = theta11_derivs(C64::new(0.0, 0.0), tau)?;
        let eta1 = -d[3] / (3.0 * d[1]);
        let eta2 = eta1 * tau - TWO_PI_I;
        let eisenstein = [
            eisenstein_series(2, q)?,
            eisenstein_series(4, q)?,
            eisenstein_series(6, q)?,
        ];
        Ok(Self { tau, q, eta1, eta2, theta_prime0: d[1], theta_third0: d[3], eisenstein })
    }

    /// Same lattice with τ scaled by a positive integer.
    pub fn scaled(&self, k: usize) -> Result<Self> {
        Self::new(self.tau * k as f64)
    }

    /// g₂ = 20(2π)⁴G₄.
    pub fn g2(&self) -> C64 {
        self.eisenstein[1] * (20.0 * (2.0 * PI).powi(4))
    }

    /// g₃ = −7(2π)⁶G₆/3.
    pub fn g3(&self) -> C64 {
        -self.eisenstein[2] * (7.0 * (2.0 * PI).powi(6) / 3.0)
    }
}

/// Bernoulli numbers B₀..B₆ with B₁ = −1/2.
pub fn bernoulli(k: usize) -> Option<f64> {
    const TABLE: [f64; 7] = [1.0, -0.5, 1.0 / 6.0, 0.0, -1.0 / 30.0, 0.0, 1.0 / 42.0];
    TABLE.get(k).copied()
}

fn eisenstein_series(k: u32, q: C64) -> Result<C64> {
    let b = bernoulli(k as usize).ok_or_else(|| Error::InvalidParameter(format!("weight {k}")))?;
    let constant = -b / (2.0 * k as f64);
    let mut sum = C64::new(0.0, 0.0);
    let mut qm = C64::new(1.0, 0.0);
    for m in 1..=SERIES_MAX_TERMS {
        qm *= q;
        let term = qm / (1.0 - qm) * (m as f64).powi(k as i32 - 1);
        sum += term;
        if term.norm() < SERIES_TAIL * constant.abs().max(sum.norm()) {
            return Ok(sum + constant);
        }
    }
    Err(Error::NoConvergence(SERIES_MAX_TERMS))
}

/// G_k = −B_k/2k + Σ_{m,n≥1} m^{k−1} qᵐⁿ for k ∈ {2, 4, 6}.
pub fn eisenstein_g(k: u32, m: &ModularParam) -> Result<C64> {
    match k {
        2 => Ok(m.eisenstein[0]),
        4 => Ok(m.eisenstein[1]),
        6 => Ok(m.eisenstein[2]),
        _ => Err(Error::InvalidParameter(format!("Eisenstein weight {k} not in {{2,4,6}}"))),
    }
}

/// j = g₂³/(g₂³ − 27g₃²), normalized so that j(i) = 1.
pub fn j_invariant(m: &ModularParam) -> Result<C64> {
    let g2c = m.g2().powi(3);
    let disc = g2c - 27.0 * m.g3().powi(2);
    if disc.norm().is_nan() || disc.norm() <= f64::MIN_POSITIVE || !disc.re.is_finite() {
        return Err(Error::InvalidParameter("vanishing discriminant".into()));
    }
    Ok(g2c / disc)
}

/// Klein's invariant 1728·j, equal to 1728 at τ = i.
pub fn klein_j(m: &ModularParam) -> Result<C64> {
    Ok(j_invariant(m)? * 1728.0)
}
