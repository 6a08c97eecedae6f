//! Brute-force reference implementations. They share no code with the
//! library beyond the complex type: direct theta series, Fourier double
//! series, lattice sums with extrapolation in the box size, divisor sums.

#![allow(dead_code)]

use num_complex::Complex64 as C64;
use std::f64::consts::PI;

pub const I: C64 = C64::new(0.0, 1.0);

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// k-th u-derivative of θ₁₁ from the defining series with |n| ≤ 40.
pub fn theta_direct(u: C64, tau: C64, k: u32) -> C64 {
    let mut s = c(0.0, 0.0);
    for n in -40i32..=40 {
        let h = n as f64 + 0.5;
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        let w = 2.0 * PI * I * h;
        s += sign * w.powu(k) * (PI * I * h * h * tau + w * u).exp();
    }
    s
}

/// θ′(0)θ(u+v)/(2πi θ(u)θ(v)) from direct theta sums.
pub fn kronecker_direct(u: C64, v: C64, tau: C64) -> C64 {
    theta_direct(c(0.0, 0.0), tau, 1) * theta_direct(u + v, tau, 0)
        / (2.0 * PI * I * theta_direct(u, tau, 0) * theta_direct(v, tau, 0))
}

/// −Σ_{(m+p+½)(n+q+½)>0} sign(m+p+½) e^{2πi((m+p)(n+q)τ + (m+p)v + (n+q)u)} over
/// m, n ∈ Z shifted by p, q ∈ [0, 1). Converges for 0 < Im(u + pτ), Im(v + qτ) < Im τ.
pub fn kronecker_char_series(p: f64, q: f64, u: C64, v: C64, tau: C64, terms: i32) -> C64 {
    let mut s = c(0.0, 0.0);
    for m in -terms..terms {
        for n in -terms..terms {
            let (a, b) = (m as f64 + 0.5, n as f64 + 0.5);
            if a * b <= 0.0 {
                continue;
            }
            let (mp, nq) = (m as f64 + p, n as f64 + q);
            let e = (2.0 * PI * I * (mp * nq * tau + mp * v + nq * u)).exp();
            s -= a.signum() * e;
        }
    }
    s
}

pub fn kronecker_series(u: C64, v: C64, tau: C64) -> C64 {
    kronecker_char_series(0.0, 0.0, u, v, tau, 80)
}

/// Limit of f(M) as M → ∞ assuming f(M) = L + a/M² + b/M³ + c/M⁴.
pub fn extrapolate_box<F: Fn(i64) -> C64>(f: F) -> C64 {
    let ms = [20i64, 40, 80, 160];
    let powers = [2, 3, 4];
    // Solve the 4×4 system by Gaussian elimination with partial pivoting.
    let mut a = [[c(0.0, 0.0); 5]; 4];
    for (row, &m) in ms.iter().enumerate() {
        a[row][0] = c(1.0, 0.0);
        for (k, &p) in powers.iter().enumerate() {
            a[row][k + 1] = c((m as f64).powi(-p), 0.0);
        }
        a[row][4] = f(m);
    }
    for col in 0..4 {
        let piv = (col..4).max_by(|&x, &y| a[x][col].norm().total_cmp(&a[y][col].norm())).unwrap();
        a.swap(col, piv);
        for row in 0..4 {
            if row != col {
                let r = a[row][col] / a[col][col];
                for k in col..5 {
                    let t = a[col][k];
                    a[row][k] -= r * t;
                }
            }
        }
    }
    a[0][4] / a[0][0]
}

fn box_sum<F: Fn(C64) -> C64>(tau: C64, m: i64, f: F) -> C64 {
    let mut s = c(0.0, 0.0);
    for a in -m..=m {
        for b in -m..=m {
            if a != 0 || b != 0 {
                s += f(tau * b as f64 + a as f64);
            }
        }
    }
    s
}

/// ζ(x) = 1/x + Σ′ [1/(x−w) + 1/w + x/w²].
pub fn lattice_zeta(x: C64, tau: C64) -> C64 {
    extrapolate_box(|m| 1.0 / x + box_sum(tau, m, |w| 1.0 / (x - w) + 1.0 / w + x / (w * w)))
}

/// ℘(x) = 1/x² + Σ′ [1/(x−w)² − 1/w²].
pub fn lattice_p(x: C64, tau: C64) -> C64 {
    extrapolate_box(|m| 1.0 / (x * x) + box_sum(tau, m, |w| 1.0 / ((x - w) * (x - w)) - 1.0 / (w * w)))
}

/// Σ′ w^{−k} for k ≥ 3.
pub fn lattice_eisenstein(k: i32, tau: C64) -> C64 {
    extrapolate_box(|m| box_sum(tau, m, |w| w.powi(-k)))
}

/// η₁ = 2ζ(½) from the lattice sum.
pub fn lattice_eta1(tau: C64) -> C64 {
    2.0 * lattice_zeta(c(0.5, 0.0), tau)
}

/// ζ_{r₁,r₂}(x) = ζ(x + r₁ + r₂τ) − r₁η₁ − r₂η₂ with η₂ = 2ζ(τ/2), all from lattice sums.
pub fn lattice_zeta_char(r1: f64, r2: f64, x: C64, tau: C64) -> C64 {
    let eta2 = 2.0 * lattice_zeta(tau * 0.5, tau);
    lattice_zeta(x + r1 + tau * r2, tau) - r1 * lattice_eta1(tau) - r2 * eta2
}

fn sigma(k: u32, n: u64) -> f64 {
    (1..=n).filter(|d| n % d == 0).map(|d| (d as f64).powi(k as i32)).sum()
}

/// −B_k/2k + Σ_n σ_{k−1}(n) qⁿ by divisor sums, with B_k from [`bernoulli_recurrence`].
pub fn eisenstein_divisor(k: u32, tau: C64) -> C64 {
    let q = (2.0 * PI * I * tau).exp();
    let b = bernoulli_recurrence(k as usize);
    let mut s = c(-b / (2.0 * k as f64), 0.0);
    let mut qn = c(1.0, 0.0);
    for n in 1..=200u64 {
        qn *= q;
        s += qn * sigma(k - 1, n);
        if qn.norm() * sigma(k - 1, n) < 1e-22 {
            break;
        }
    }
    s
}

/// Klein's j = 1728E₄³/(E₄³ − E₆²) with E₄, E₆ from divisor sums.
pub fn klein_j_divisor(tau: C64) -> C64 {
    let q = (2.0 * PI * I * tau).exp();
    let (mut e4, mut e6) = (c(1.0, 0.0), c(1.0, 0.0));
    let mut qn = c(1.0, 0.0);
    for n in 1..=200u64 {
        qn *= q;
        e4 += 240.0 * sigma(3, n) * qn;
        e6 -= 504.0 * sigma(5, n) * qn;
        if qn.norm() * sigma(5, n) < 1e-22 {
            break;
        }
    }
    1728.0 * e4.powi(3) / (e4.powi(3) - e6 * e6)
}

/// Bernoulli numbers from Σ_{j=0}^{n} C(n+1, j) B_j = 0, B₀ = 1.
pub fn bernoulli_recurrence(n: usize) -> f64 {
    let mut b = vec![1.0_f64];
    for m in 1..=n {
        let mut s = 0.0;
        let mut binom = 1.0_f64;
        for (j, bj) in b.iter().enumerate() {
            s += binom * bj;
            binom *= (m + 1 - j) as f64 / (j + 1) as f64;
        }
        b.push(-s / (m + 1) as f64);
    }
    b[n]
}

/// Central finite difference of order 4.
pub fn derivative<F: Fn(C64) -> C64>(f: F, z: C64, h: f64) -> C64 {
    (f(z - 2.0 * h) - 8.0 * f(z - h) + 8.0 * f(z + h) - f(z + 2.0 * h)) / (12.0 * h)
}

pub fn close(a: C64, b: C64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

#[track_caller]
pub fn assert_close(a: C64, b: C64, tol: f64) {
    assert!(close(a, b, tol), "{a} vs {b}: |diff| = {:e}, tol {tol:e}", (a - b).norm());
}
