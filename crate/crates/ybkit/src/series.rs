//! Laurent expansions by contour quadrature, the scalar classification by
//! C(r₀) = c₅²/c₃³, and the consistency relations between r₀, r₁, r₂.

use crate::solutions::{Family, Kind, Rescale, SolutionHandle};
use crate::special::lattice_distance;
use crate::tensor::{leg_embed, mul3, Legs, Tensor2, Tensor3};
use crate::verification::ResidualReport;
use crate::{tol, Error, Result, C64, TWO_PI_I};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Coefficients of (variable)^{leading_order + k}.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaurentSeries {
    pub leading_order: i32,
    pub coeffs: Vec<Tensor2>,
    pub radius: f64,
}

impl LaurentSeries {
    /// Coefficient of x^k, if stored.
    pub fn coeff(&self, k: i32) -> Option<&Tensor2> {
        let i = k - self.leading_order;
        if i < 0 {
            None
        } else {
            self.coeffs.get(i as usize)
        }
    }
}

/// Laurent coefficients c_kmin..=c_kmax of f around `center` on a circle of
/// radius `radius`, by the trapezoidal rule. The node count doubles from 64
/// until the scaled coefficients c_k ρ^k agree to 1e−10 of the function scale.
pub fn contour_coeffs<F>(f: F, center: C64, radius: f64, kmin: i32, kmax: i32) -> Result<Vec<Tensor2>>
where
    F: Fn(C64) -> Result<Tensor2>,
{
    let node = |j: usize, n: usize| C64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64);
    let mut n = tol::CONTOUR_NODES;
    let mut values: Vec<Tensor2> = (0..n).map(|j| f(center + node(j, n) * radius)).collect::<Result<_>>()?;
    let mut prev = scaled_coeffs(&values, kmin, kmax);
    loop {
        let mut next = Vec::with_capacity(2 * n);
        for (j, val) in values.into_iter().enumerate() {
            next.push(val);
            next.push(f(center + node(2 * j + 1, 2 * n) * radius)?);
        }
        values = next;
        n *= 2;
        let cur = scaled_coeffs(&values, kmin, kmax);
        let scale = values.iter().map(|t| t.max_abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
        let diff = cur.iter().zip(&prev).map(|(a, b)| a.sub(b).map(|d| d.max_abs())).collect::<Result<Vec<_>>>()?;
        let worst = diff.into_iter().fold(0.0, f64::max);
        prev = cur;
        if worst <= tol::CONTOUR_AGREE * scale {
            break;
        }
        if n >= tol::CONTOUR_NODES_MAX {
            return Err(Error::Unstable(format!("contour quadrature did not settle ({worst:e} at N = {n})")));
        }
    }
    Ok(prev
        .into_iter()
        .zip(kmin..=kmax)
        .map(|(c, k)| c.scale(C64::new(radius.powi(-k), 0.0)))
        .collect())
}

/// (1/N) Σ_j f_j e^{−2πijk/N} for k in kmin..=kmax.
fn scaled_coeffs(values: &[Tensor2], kmin: i32, kmax: i32) -> Vec<Tensor2> {
    let n = values.len();
    (kmin..=kmax)
        .map(|k| {
            let mut acc = Tensor2::zeros(values[0].n);
            for (j, val) in values.iter().enumerate() {
                let w = C64::from_polar(1.0 / n as f64, -2.0 * PI * ((j as i64 * k as i64).rem_euclid(n as i64)) as f64 / n as f64);
                for (a, b) in acc.coeffs.iter_mut().zip(&val.coeffs) {
                    *a += b * w;
                }
            }
            acc
        })
        .collect()
}

/// Shortest nonzero vector of Z + Zτ.
fn min_lattice_norm(tau: C64) -> f64 {
    let mut best = f64::INFINITY;
    for m in -3i32..=3 {
        for n in -3i32..=3 {
            if (m, n) != (0, 0) {
                best = best.min((tau * n as f64 + m as f64).norm());
            }
        }
    }
    best
}

/// Distance from the origin to the nearest pole of u ↦ r(u, v) other than u = 0.
fn u_pole_distance(h: &SolutionHandle, v: C64) -> f64 {
    let rs = h.rescale();
    let bv = v * rs.c4;
    let base = match h.family() {
        Family::EllipticAybe { d, r, tau } => {
            let t = *tau * *r as f64;
            let dr = (*d * *r) as f64;
            (min_lattice_norm(t) / dr).min(lattice_distance(bv * *d as f64, t) / dr)
        }
        Family::ScalarKronecker { tau } => min_lattice_norm(*tau).min(lattice_distance(bv, *tau)),
        Family::TrigAybe1 | Family::TrigAybe2 | Family::TrigAybe2Reduced | Family::ScalarTrig => 2.0 * PI,
        _ => f64::INFINITY,
    };
    base / rs.c3.norm()
}

/// Distance from v to the nearest pole of r₀ other than v itself, in the
/// handle's variable, for scalar families.
fn v_pole_distance(h: &SolutionHandle, v: C64) -> f64 {
    let c4 = h.rescale().c4;
    let bv = v * c4;
    let d = match h.family() {
        Family::ScalarKronecker { tau } => {
            let mut best = f64::INFINITY;
            for m in -3i32..=3 {
                for n in -3i32..=3 {
                    let w = *tau * n as f64 + m as f64;
                    let dist = (bv - w).norm();
                    if dist > 1e-12 {
                        best = best.min(dist);
                    }
                }
            }
            best
        }
        Family::ScalarTrig => {
            let k = (bv.im / (2.0 * PI)).round();
            let mut best = f64::INFINITY;
            for j in [k - 1.0, k, k + 1.0] {
                let dist = (bv - C64::new(0.0, 2.0 * PI * j)).norm();
                if dist > 1e-12 {
                    best = best.min(dist);
                }
            }
            best
        }
        _ => bv.norm().max(1.0),
    };
    d / c4.norm()
}

/// Default radius for u-expansions at fixed v.
pub fn default_u_radius(h: &SolutionHandle, v: C64) -> f64 {
    (0.3 * u_pole_distance(h, v)).min(0.05)
}

/// Coefficients r_kmin..=r_kmax of u ↦ r(u, v) on the given radius.
pub fn u_coeffs_at(h: &SolutionHandle, v: C64, kmin: i32, kmax: i32, radius: f64) -> Result<Vec<Tensor2>> {
    if h.kind() != Kind::Aybe {
        return Err(Error::WrongKind("u-expansions need a two-variable family".into()));
    }
    contour_coeffs(|u| h.eval_aybe(u, v), C64::new(0.0, 0.0), radius, kmin, kmax)
}

/// r₋₁, r₀(v), …, r_order(v) of r(u, v) around u = 0.
///
/// Checks that the u⁻² coefficient vanishes and that the radii ρ and ρ/2
/// give the same coefficients.
pub fn extract_u_series(h: &SolutionHandle, v: C64, order: usize) -> Result<LaurentSeries> {
    let rho = default_u_radius(h, v);
    let a = u_coeffs_at(h, v, -2, order as i32, rho)?;
    let b = u_coeffs_at(h, v, -2, order as i32, rho / 2.0)?;
    let scale = a.iter().map(|t| t.max_abs()).fold(1.0, f64::max);
    if a[0].max_abs() > tol::DOUBLE_POLE * scale {
        return Err(Error::Unstable(format!("u⁻² coefficient {:e} is not zero", a[0].max_abs())));
    }
    for (k, (x, y)) in a.iter().zip(&b).enumerate().skip(1) {
        // Higher coefficients lose ρ^−k of relative accuracy at the smaller radius.
        let allowed = 1e-8 * scale * (2.0 / rho).powi(k as i32 - 1).max(1.0);
        if x.sub(y)?.max_abs() > allowed {
            return Err(Error::Unstable(format!("coefficient u^{} depends on the radius", k as i32 - 2)));
        }
    }
    Ok(LaurentSeries { leading_order: -1, coeffs: a[1..].to_vec(), radius: rho })
}

fn scalar_of(t: &Tensor2) -> C64 {
    t.coeffs[0]
}

fn require_scalar(h: &SolutionHandle) -> Result<()> {
    if h.n() != 1 || h.kind() != Kind::Aybe {
        return Err(Error::WrongKind("expected a scalar AYBE family".into()));
    }
    Ok(())
}

/// (r₋₁, r₀(v), r₁(v)) for a scalar handle.
fn scalar_low_coeffs(h: &SolutionHandle, v: C64) -> Result<[C64; 3]> {
    let c = u_coeffs_at(h, v, -1, 1, default_u_radius(h, v))?;
    Ok([scalar_of(&c[0]), scalar_of(&c[1]), scalar_of(&c[2])])
}

/// Default radius for the v-expansion of r₀ around 0.
fn default_v_radius(h: &SolutionHandle) -> f64 {
    let c4 = h.rescale().c4.norm();
    let base = match h.family() {
        Family::ScalarKronecker { tau } => 0.4 * min_lattice_norm(*tau),
        Family::ScalarTrig => 2.0,
        _ => 1.0,
    };
    base / c4
}

/// Laurent coefficients b₋₁..=b_kmax of r₀(v) around v = 0 (scalar families).
pub fn r0_laurent(h: &SolutionHandle, kmax: i32) -> Result<Vec<C64>> {
    require_scalar(h)?;
    let rho = default_v_radius(h);
    let c = contour_coeffs(
        |v| {
            let r0 = u_coeffs_at(h, v, 0, 0, default_u_radius(h, v))?;
            Ok(r0[0].clone())
        },
        C64::new(0.0, 0.0),
        rho,
        -1,
        kmax,
    )?;
    Ok(c.iter().map(scalar_of).collect())
}

/// r₀(v) and r₀'(v), the derivative by a small contour around v.
pub fn r0_with_derivative(h: &SolutionHandle, v: C64) -> Result<(C64, C64)> {
    require_scalar(h)?;
    let sigma = (0.3 * v_pole_distance(h, v)).min(0.05);
    let c = contour_coeffs(
        |w| {
            let r0 = u_coeffs_at(h, w, 0, 0, default_u_radius(h, w))?;
            Ok(r0[0].clone())
        },
        v,
        sigma,
        0,
        1,
    )?;
    Ok((scalar_of(&c[0]), scalar_of(&c[1])))
}

/// Result of bringing a scalar solution to the normal form
/// r = 1/u + r₀(v) + …, r₀(v) = 1/v + c₃v³ + c₅v⁵ + ….
#[derive(Debug, Clone)]
pub struct NormalForm {
    pub c3: C64,
    pub c5: C64,
    /// The rescale (on top of the handle's own) that achieves the normal form.
    pub applied: Rescale,
    /// The handle with the rescale applied.
    pub handle: SolutionHandle,
}

/// The v-variable scale used for the normal form: 1/(2πi) for the Kronecker
/// family, so that c₃ = −G₄/3 and c₅ = −G₆/60; 1 otherwise. C(r₀) does not
/// depend on this choice.
pub fn natural_v_scale(h: &SolutionHandle) -> C64 {
    match h.family() {
        Family::ScalarKronecker { .. } => 1.0 / TWO_PI_I,
        _ => C64::new(1.0, 0.0),
    }
}

/// Find c·exp(c′uv)·r(c‴u, c″v) with u-pole 1, r₀ = 1/v + O(v³), and read off c₃, c₅.
pub fn normalize_scalar_r0(h: &SolutionHandle) -> Result<NormalForm> {
    require_scalar(h)?;
    let probe = C64::new(0.37, 0.11) / h.rescale().c4;
    let a = scalar_low_coeffs(h, probe)?[0];
    let b = r0_laurent(h, 5)?;
    let (bm1, b1, b3, b5) = (b[0], b[2], b[4], b[6]);
    if a.norm() < 1e-12 || bm1.norm() < 1e-12 {
        return Err(Error::InvalidParameter("no simple pole at u = 0 or v = 0".into()));
    }
    let c4 = natural_v_scale(h);
    let c1 = c4 / bm1;
    let c3 = a * c4 / bm1;
    let c2 = -c1 * c4 * b1;
    let applied = Rescale { c1, c2, c3, c4 };
    let handle = h.clone().with_rescale(applied)?;
    Ok(NormalForm { c3: c1 * c4.powi(3) * b3, c5: c1 * c4.powi(5) * b5, applied, handle })
}

/// C(r₀) with ∞ represented explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CValue {
    Finite(C64),
    Infinity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    RationalLike,
    EllipticLike,
    TrigonometricLike,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScalarClassification {
    pub c3: C64,
    pub c5: C64,
    /// `None` when both c₃ and c₅ vanish.
    pub c: Option<CValue>,
    pub verdict: Verdict,
}

/// −20/49, the value of C at the trigonometric point.
pub const TRIG_C: f64 = -20.0 / 49.0;

pub fn classify_from(c3: C64, c5: C64) -> ScalarClassification {
    let c3_zero = c3.norm() < tol::C3_ZERO;
    let c5_zero = c5.norm() <= tol::C5_NONZERO;
    let (c, verdict) = if c3_zero && c5_zero {
        (None, Verdict::RationalLike)
    } else if c3_zero {
        (Some(CValue::Infinity), Verdict::EllipticLike)
    } else {
        let val = c5 * c5 / (c3 * c3 * c3);
        let near = (val - TRIG_C).norm() < tol::TRIG_POINT * val.norm().max(1.0);
        (Some(CValue::Finite(val)), if near { Verdict::TrigonometricLike } else { Verdict::EllipticLike })
    };
    ScalarClassification { c3, c5, c, verdict }
}

pub fn classify_scalar(h: &SolutionHandle) -> Result<ScalarClassification> {
    let nf = normalize_scalar_r0(h)?;
    Ok(classify_from(nf.c3, nf.c5))
}

/// r₁(v) − (r₀'(v) + r₀(v)²)/2 on the normal form, at each point.
pub fn check_r1_relation(h: &SolutionHandle, pts: &[C64], tolerance: f64) -> Result<ResidualReport> {
    let nf = normalize_scalar_r0(h)?;
    let g = &nf.handle;
    let mut rep = ResidualReport::new("r1-relation", tolerance);
    for &v in pts {
        let [_, r0, r1] = scalar_low_coeffs(g, v)?;
        let (_, dr0) = r0_with_derivative(g, v)?;
        let res = (r1 - 0.5 * (dr0 + r0 * r0)).norm();
        let scale = r1.norm().max(dr0.norm()).max((r0 * r0).norm()).max(1.0);
        rep.record(&[v], res, res / scale);
    }
    Ok(rep.finish())
}

/// (r₀(v) + r₀(v') − r₀(v+v'))² + r₀'(v) + r₀'(v') + r₀'(v+v') on the normal form.
pub fn check_aux4(h: &SolutionHandle, v: C64, vp: C64) -> Result<C64> {
    let nf = normalize_scalar_r0(h)?;
    aux4_on(&nf.handle, v, vp)
}

/// As [`check_aux4`] for a handle already in normal form.
pub fn aux4_on(g: &SolutionHandle, v: C64, vp: C64) -> Result<C64> {
    let (a, da) = r0_with_derivative(g, v)?;
    let (b, db) = r0_with_derivative(g, vp)?;
    let (c, dc) = r0_with_derivative(g, v + vp)?;
    Ok((a + b - c).powi(2) + da + db + dc)
}

/// Divide by the u-pole coefficient so that r₋₁ = 1⊗1. Fails if the pole
/// coefficient is not a multiple of 1⊗1.
pub fn normalize_pole(h: &SolutionHandle) -> Result<SolutionHandle> {
    let v = C64::new(0.31, 0.17) / h.rescale().c4;
    let c = u_coeffs_at(h, v, -1, -1, default_u_radius(h, v))?;
    let n = h.n();
    let a = c[0].get(0, 0, 0, 0);
    let target = Tensor2::one(n).scale(a);
    if a.norm() < 1e-12 || c[0].sub(&target)?.max_abs() > 1e-8 * a.norm() {
        return Err(Error::InvalidParameter("u-pole coefficient is not a multiple of 1⊗1".into()));
    }
    h.clone().with_rescale(Rescale { c1: 1.0 / a, ..Rescale::default() })
}

/// r₀¹²(v)r₀¹³(v+v') − r₀²³(v')r₀¹²(v) + r₀¹³(v+v')r₀²³(v') − (r₁¹²(v) + r₁²³(v') + r₁¹³(v+v')),
/// after normalizing the u-pole to 1⊗1. For n = 1 this is the scalar relation.
pub fn check_aux5(h: &SolutionHandle, v: C64, vp: C64) -> Result<(Tensor3, f64)> {
    let g = normalize_pole(h)?;
    let at = |w: C64| u_coeffs_at(&g, w, 0, 1, default_u_radius(&g, w));
    let (x, y, z) = (at(v)?, at(vp)?, at(v + vp)?);
    let e = |t: &Tensor2, l| leg_embed(t, l);
    let p1 = mul3(&e(&x[0], Legs::L12), &e(&z[0], Legs::L13))?;
    let p2 = mul3(&e(&y[0], Legs::L23), &e(&x[0], Legs::L12))?;
    let p3 = mul3(&e(&z[0], Legs::L13), &e(&y[0], Legs::L23))?;
    let rhs = e(&x[1], Legs::L12).add(&e(&y[1], Legs::L23))?.add(&e(&z[1], Legs::L13))?;
    let scale = [p1.norm(), p2.norm(), p3.norm(), rhs.norm()].into_iter().fold(0.0, f64::max);
    Ok((p1.sub(&p2)?.add(&p3)?.sub(&rhs)?, scale))
}

/// Total-degree-`deg` part in (u, u') of the AYBE expanded in u, given
/// coefficient lists r_{−1}, r₀, … at v, v', v+v' (index 0 is r_{−1}).
pub fn aybe_degree_component(
    at_v: &[Tensor2],
    at_vp: &[Tensor2],
    at_sum: &[Tensor2],
    deg: i32,
    u: C64,
    up: C64,
) -> Result<(Tensor3, f64)> {
    let kmax = at_v.len() as i32 - 2;
    let n = at_v[0].n;
    let mut total = Tensor3::zeros(n);
    let mut scale = 0.0_f64;
    let get = |list: &[Tensor2], k: i32| list[(k + 1) as usize].clone();
    for a in -1..=kmax {
        let b = deg - a;
        if b < -1 || b > kmax {
            continue;
        }
        let terms = [
            (get(at_v, a), Legs::L12, get(at_sum, b), Legs::L13, (-up).powi(a) * (u + up).powi(b), 1.0),
            (get(at_vp, a), Legs::L23, get(at_v, b), Legs::L12, (u + up).powi(a) * u.powi(b), -1.0),
            (get(at_sum, a), Legs::L13, get(at_vp, b), Legs::L23, u.powi(a) * up.powi(b), 1.0),
        ];
        for (x, lx, y, ly, w, sign) in terms {
            let p = mul3(&leg_embed(&x, lx), &leg_embed(&y, ly))?.scale(w * sign);
            scale = scale.max(p.norm());
            total = total.add(&p)?;
        }
    }
    Ok((total, scale))
}

/// The degree-1 relation that determines r₂ from r₋₁, r₀, r₁, checked at
/// each (v, v') for a few (u, u') directions. The pole is normalized to 1⊗1,
/// so the residual is taken relative to max(largest term, 1); for a/u + b/v
/// every term vanishes and the relation holds degenerately.
pub fn check_reconstruction_chain(h: &SolutionHandle, pts: &[(C64, C64)], tolerance: f64) -> Result<ResidualReport> {
    let g = normalize_pole(h)?;
    let dirs = [(C64::new(1.0, 0.0), C64::new(0.5, 0.0)), (C64::new(0.3, 0.2), C64::new(-0.7, 0.1)), (C64::new(-0.4, 0.0), C64::new(0.2, 0.9))];
    let mut rep = ResidualReport::new("reconstruction-degree-2", tolerance);
    for &(v, vp) in pts {
        let at = |w: C64| u_coeffs_at(&g, w, -1, 2, default_u_radius(&g, w));
        let (x, y, z) = (at(v)?, at(vp)?, at(v + vp)?);
        for &(u, up) in &dirs {
            let (res, scale) = aybe_degree_component(&x, &y, &z, 1, u, up)?;
            rep.record(&[v, vp, u, up], res.norm(), res.norm() / scale.max(1.0));
        }
    }
    Ok(rep.finish())
}
