//! Elliptic solutions for Mat(d), from Kronecker functions with characteristics.

use crate::special::{kronecker_f_pq, zeta_char_pq, ModularParam};
use crate::tensor::Tensor2;
use crate::{Result, C64, TWO_PI_I};

#[inline]
fn frac(k: i64, d: usize) -> f64 {
    k.rem_euclid(d as i64) as f64 / d as f64
}

/// r_L(U, V) = Σ_{j−i ≡ i'−j'} F_{(j−i)/d,(i−j')/d}(dU, −dV, dT) e_{ij}⊗e_{i'j'},
/// with `md` built at dT. Characteristics are reduced to [0, 1).
pub fn r_line(d: usize, u: C64, v: C64, md: &ModularParam) -> Result<Tensor2> {
    let mut t = Tensor2::zeros(d);
    let df = d as f64;
    for i in 0..d {
        for j in 0..d {
            for ip in 0..d {
                let jp = (ip as i64 - (j as i64 - i as i64)).rem_euclid(d as i64) as usize;
                let p = frac(j as i64 - i as i64, d);
                let q = frac(i as i64 - jp as i64, d);
                t.set(i, j, ip, jp, kronecker_f_pq(p, q, u * df, -v * df, md)?);
            }
        }
    }
    Ok(t)
}

/// The sl_d-valued limit written with F(0, ·) off the diagonal and ζ_{0,k/d} on it.
/// `md` is built at dT.
pub fn cybe_theta_form(d: usize, v: C64, md: &ModularParam) -> Result<Tensor2> {
    let mut t = Tensor2::zeros(d);
    let df = d as f64;
    let y = -v * df;
    let zero = C64::new(0.0, 0.0);
    let zetas: Vec<C64> =
        (0..d).map(|k| zeta_char_pq(0.0, k as f64 / df, y, md)).collect::<Result<_>>()?;
    let mean = zetas.iter().sum::<C64>() / df;
    for i in 0..d {
        for j in 0..d {
            for ip in 0..d {
                let jp = (ip as i64 - (j as i64 - i as i64)).rem_euclid(d as i64) as usize;
                let c = if i == j {
                    let k = (i as i64 - ip as i64).rem_euclid(d as i64) as usize;
                    (zetas[k] - mean) / TWO_PI_I
                } else {
                    let p = frac(j as i64 - i as i64, d);
                    let q = frac(i as i64 - jp as i64, d);
                    kronecker_f_pq(p, q, zero, y, md)?
                };
                t.set(i, j, ip, jp, c);
            }
        }
    }
    Ok(t)
}

/// The same tensor written purely with ζ_{a/d,b/d} at the base lattice `m` (at T).
///
/// Off the diagonal the character sum carries a factor 1/d; without it the
/// two forms differ by exactly d.
pub fn cybe_zeta_form(d: usize, v: C64, m: &ModularParam) -> Result<Tensor2> {
    let mut t = Tensor2::zeros(d);
    let df = d as f64;
    let mut z = vec![C64::new(0.0, 0.0); d * d];
    for a in 0..d {
        for b in 0..d {
            z[a * d + b] = zeta_char_pq(a as f64 / df, b as f64 / df, -v, m)?;
        }
    }
    let total = z.iter().sum::<C64>() / (df * df);
    for i in 0..d {
        for j in 0..d {
            for ip in 0..d {
                let jp = (ip as i64 - (j as i64 - i as i64)).rem_euclid(d as i64) as usize;
                let c = if i == j {
                    let b = (i as i64 - ip as i64).rem_euclid(d as i64) as usize;
                    let row = (0..d).map(|a| z[a * d + b]).sum::<C64>() / df;
                    row - total
                } else {
                    let k = j as i64 - i as i64;
                    let b = (i as i64 - jp as i64).rem_euclid(d as i64) as usize;
                    let shift = m.tau * ((i as f64 - j as f64) / df);
                    let mut s = C64::new(0.0, 0.0);
                    for a in 0..d {
                        let phase = (-TWO_PI_I * (a as f64 * k as f64 / df)).exp();
                        s += phase * (z[a * d + b] - zeta_char_pq(a as f64 / df, 0.0, shift, m)?);
                    }
                    s / df
                };
                t.set(i, j, ip, jp, c / TWO_PI_I);
            }
        }
    }
    Ok(t)
}
