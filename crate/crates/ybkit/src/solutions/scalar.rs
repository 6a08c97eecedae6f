//! Scalar (n = 1) solutions.

use crate::special::{kronecker_f, ModularParam};
use crate::{expm1, Result, C64};

/// F(u, v, τ).
pub fn kronecker(u: C64, v: C64, m: &ModularParam) -> Result<C64> {
    kronecker_f(u, v, m)
}

/// F_∞(u,v) = (eᵛ − eᵘ)/((eᵘ − 1)(eᵛ − 1)).
pub fn f_infinity(u: C64, v: C64) -> C64 {
    let (a, b) = (expm1(u), expm1(v));
    (b - a) / (a * b)
}

/// a/u + b/v.
pub fn rational(a: C64, b: C64, u: C64, v: C64) -> C64 {
    a / u + b / v
}
