//! Solution families as evaluable handles, with rescaling and gauge transforms.

pub mod elliptic;
pub mod scalar;
pub mod trig;

use crate::special::{lattice_distance, ModularParam};
use crate::tensor::{mat_inv, project_sl, Mat, Tensor2};
use crate::tol::{LIMIT_SEQ, POLE_GUARD};
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;
use std::sync::Arc;

/// Which functional equation a family solves.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// Two spectral parameters (u, v).
    Aybe,
    /// One spectral parameter v, sl_n⊗sl_n valued.
    Cybe,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    EllipticAybe { d: usize, r: usize, tau: C64 },
    EllipticCybe { d: usize, r: usize, tau: C64 },
    TrigAybe1,
    TrigAybe2,
    TrigAybe2Reduced,
    TrigCybe1,
    TrigCybe2,
    ScalarKronecker { tau: C64 },
    ScalarTrig,
    ScalarRational { a: C64, b: C64 },
    /// A constant tensor; useful as a control in tests.
    Constant { tensor: Tensor2 },
}

impl Family {
    pub fn kind(&self) -> Kind {
        match self {
            Family::EllipticCybe { .. } | Family::TrigCybe1 | Family::TrigCybe2 => Kind::Cybe,
            _ => Kind::Aybe,
        }
    }

    /// Matrix size n of the values in Mat(n)⊗Mat(n).
    pub fn n(&self) -> usize {
        match self {
            Family::EllipticAybe { d, .. } | Family::EllipticCybe { d, .. } => *d,
            Family::TrigAybe1
            | Family::TrigAybe2
            | Family::TrigAybe2Reduced
            | Family::TrigCybe1
            | Family::TrigCybe2 => 2,
            Family::Constant { tensor } => tensor.n,
            _ => 1,
        }
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self, Family::EllipticAybe { .. } | Family::EllipticCybe { .. } | Family::ScalarKronecker { .. })
    }

    pub fn is_scalar(&self) -> bool {
        matches!(self, Family::ScalarKronecker { .. } | Family::ScalarTrig | Family::ScalarRational { .. })
    }

    pub fn tag(&self) -> &'static str {
        match self {
            Family::EllipticAybe { .. } => "elliptic-aybe",
            Family::EllipticCybe { .. } => "elliptic-cybe",
            Family::TrigAybe1 => "trig-aybe1",
            Family::TrigAybe2 => "trig-aybe2",
            Family::TrigAybe2Reduced => "trig-aybe2-reduced",
            Family::TrigCybe1 => "trig-cybe1",
            Family::TrigCybe2 => "trig-cybe2",
            Family::ScalarKronecker { .. } => "scalar-kronecker",
            Family::ScalarTrig => "scalar-trig",
            Family::ScalarRational { .. } => "scalar-rational",
            Family::Constant { .. } => "constant",
        }
    }
}

/// c₁·exp(c₂uv)·r(c₃u, c₄v). For CYBE families only c₁ and c₄ act.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Rescale {
    pub c1: C64,
    pub c2: C64,
    pub c3: C64,
    pub c4: C64,
}

impl Default for Rescale {
    fn default() -> Self {
        let one = C64::new(1.0, 0.0);
        Self { c1: one, c2: C64::new(0.0, 0.0), c3: one, c4: one }
    }
}

impl Rescale {
    /// `outer` applied on top of `self`:
    /// o₁e^{o₂uv}·c₁e^{c₂(o₃u)(o₄v)} r(c₃o₃u, c₄o₄v).
    pub fn then(&self, outer: &Rescale) -> Rescale {
        Rescale {
            c1: outer.c1 * self.c1,
            c2: outer.c2 + self.c2 * outer.c3 * outer.c4,
            c3: self.c3 * outer.c3,
            c4: self.c4 * outer.c4,
        }
    }
}

/// Equivalence transform φ. `Constant(M)` acts as (M⊗M) r (M⊗M)⁻¹;
/// `ScalarExp { a }` is φ_{x,y} = exp(a·x·y) on each object, which acts on
/// r(u,v) with u = x₁ − x₂, v = y₁ − y₂ as multiplication by exp(−a·u·v).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Gauge {
    #[default]
    Identity,
    Constant { matrix: Vec<C64> },
    ScalarExp { a: C64 },
}

impl Gauge {
    pub fn tag(&self) -> &'static str {
        match self {
            Gauge::Identity => "identity",
            Gauge::Constant { .. } => "constant",
            Gauge::ScalarExp { .. } => "scalar-exp",
        }
    }
}

#[derive(Debug, Clone)]
enum Cache {
    None,
    /// `base` at rτ, `big` at d·rτ.
    Elliptic { base: Arc<ModularParam>, big: Arc<ModularParam> },
    Kronecker(Arc<ModularParam>),
}

/// One solution family with its parameters, rescale, gauge and an optional
/// constant additive perturbation (for negative controls).
#[derive(Debug, Clone)]
pub struct SolutionHandle {
    family: Family,
    rescale: Rescale,
    gauge: Gauge,
    gauge_inverse: Option<Mat>,
    perturbation: Option<Tensor2>,
    cache: Cache,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Distance from z to 2πiZ.
fn dist_2pi_i(z: C64) -> f64 {
    let k = (z.im / (2.0 * PI)).round();
    (z - C64::new(0.0, 2.0 * PI * k)).norm()
}

fn guard(ok: bool, at: C64, margin: f64) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::PoleProximity { at, guard: margin })
    }
}

impl SolutionHandle {
    pub fn new(family: Family) -> Result<Self> {
        let cache = match &family {
            Family::EllipticAybe { d, r, tau } | Family::EllipticCybe { d, r, tau } => {
                if *d == 0 || *r == 0 {
                    return Err(Error::InvalidParameter("d and r must be positive".into()));
                }
                if gcd(*d, *r) != 1 {
                    return Err(Error::InvalidParameter(format!("gcd(r={r}, d={d}) must be 1")));
                }
                let base = ModularParam::new(*tau * *r as f64)?;
                let big = base.scaled(*d)?;
                Cache::Elliptic { base: Arc::new(base), big: Arc::new(big) }
            }
            Family::ScalarKronecker { tau } => Cache::Kronecker(Arc::new(ModularParam::new(*tau)?)),
            Family::Constant { tensor } => {
                if !tensor.is_finite() || tensor.coeffs.len() != tensor.n.pow(4) {
                    return Err(Error::InvalidParameter("constant tensor must be finite and n⁴ long".into()));
                }
                Cache::None
            }
            Family::ScalarRational { a, b } => {
                if !(a.norm().is_finite() && b.norm().is_finite()) {
                    return Err(Error::NonFinite);
                }
                Cache::None
            }
            _ => Cache::None,
        };
        Ok(Self {
            family,
            rescale: Rescale::default(),
            gauge: Gauge::Identity,
            gauge_inverse: None,
            perturbation: None,
            cache,
        })
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn rescale(&self) -> &Rescale {
        &self.rescale
    }

    pub fn gauge(&self) -> &Gauge {
        &self.gauge
    }

    pub fn perturbation(&self) -> Option<&Tensor2> {
        self.perturbation.as_ref()
    }

    pub fn kind(&self) -> Kind {
        self.family.kind()
    }

    pub fn n(&self) -> usize {
        self.family.n()
    }

    /// The modular data at rτ for elliptic families, at τ for Kronecker.
    pub fn modular(&self) -> Option<&ModularParam> {
        match &self.cache {
            Cache::Elliptic { base, .. } => Some(base),
            Cache::Kronecker(m) => Some(m),
            Cache::None => None,
        }
    }

    /// Compose a further rescale on top of the current one.
    pub fn with_rescale(mut self, outer: Rescale) -> Result<Self> {
        if outer.c1.norm() == 0.0 || outer.c3.norm() == 0.0 || outer.c4.norm() == 0.0 {
            return Err(Error::InvalidParameter("c1, c3, c4 must be nonzero".into()));
        }
        self.rescale = self.rescale.then(&outer);
        Ok(self)
    }

    /// Apply an equivalence transform (replaces any previous gauge).
    pub fn equivalence_transform(mut self, gauge: Gauge) -> Result<Self> {
        self.gauge_inverse = match &gauge {
            Gauge::Constant { matrix } => {
                let n = self.n();
                if matrix.len() != n * n {
                    return Err(Error::SizeMismatch(matrix.len(), n * n));
                }
                Some(mat_inv(n, matrix)?)
            }
            _ => None,
        };
        self.gauge = gauge;
        Ok(self)
    }

    /// Add a constant tensor to every value.
    pub fn with_perturbation(mut self, p: Tensor2) -> Result<Self> {
        if p.n != self.n() {
            return Err(Error::SizeMismatch(p.n, self.n()));
        }
        self.perturbation = Some(p);
        Ok(self)
    }

    /// Reject (u, v) within `margin` of the family's excluded set.
    pub fn check_domain(&self, u: C64, v: C64, margin: f64) -> Result<()> {
        let (u, v) = (u * self.rescale.c3, v * self.rescale.c4);
        self.check_base_domain(u, v, margin)
    }

    /// Same check for CYBE families, in the single variable v.
    pub fn check_domain_cybe(&self, v: C64, margin: f64) -> Result<()> {
        let v = v * self.rescale.c4;
        match &self.family {
            Family::EllipticCybe { d, r, tau } => {
                let t = *tau * *r as f64;
                let y = v * *d as f64;
                guard(lattice_distance(y, t) > margin, y, margin)
            }
            Family::TrigCybe1 | Family::TrigCybe2 => guard(dist_2pi_i(v) > margin, v, margin),
            _ => Err(Error::WrongKind(format!("{} is not a CYBE family", self.family.tag()))),
        }
    }

    fn check_base_domain(&self, u: C64, v: C64, margin: f64) -> Result<()> {
        match &self.family {
            Family::EllipticAybe { d, r, tau } => {
                // Poles of F_{k/d,·}(d r u, −d v) at drτ sit on Z + rτZ.
                let t = *tau * *r as f64;
                let x = u * (*d * *r) as f64;
                let y = -v * *d as f64;
                guard(lattice_distance(x, t) > margin, x, margin)?;
                guard(lattice_distance(y, t) > margin, y, margin)?;
                guard(lattice_distance(x + y, t) > margin, x + y, margin)
            }
            Family::TrigAybe1 | Family::TrigAybe2 | Family::TrigAybe2Reduced | Family::ScalarTrig => {
                guard(dist_2pi_i(u) > margin, u, margin)?;
                guard(dist_2pi_i(v) > margin, v, margin)
            }
            Family::ScalarKronecker { tau } => {
                guard(lattice_distance(u, *tau) > margin, u, margin)?;
                guard(lattice_distance(v, *tau) > margin, v, margin)?;
                guard(lattice_distance(u + v, *tau) > margin, u + v, margin)
            }
            Family::ScalarRational { .. } => {
                guard(u.norm() > margin, u, margin)?;
                guard(v.norm() > margin, v, margin)
            }
            Family::Constant { .. } => Ok(()),
            _ => Err(Error::WrongKind(format!("{} is not an AYBE family", self.family.tag()))),
        }
    }

    fn base_aybe(&self, u: C64, v: C64) -> Result<Tensor2> {
        let one = |z: C64| Tensor2 { n: 1, coeffs: vec![z] };
        match (&self.family, &self.cache) {
            (Family::EllipticAybe { d, r, .. }, Cache::Elliptic { big, .. }) => {
                elliptic::r_line(*d, u * *r as f64, v, big)
            }
            (Family::TrigAybe1, _) => Ok(trig::aybe1(u, v)),
            (Family::TrigAybe2, _) => Ok(trig::aybe2(u, v)),
            (Family::TrigAybe2Reduced, _) => Ok(trig::aybe2_reduced(u, v)),
            (Family::ScalarKronecker { .. }, Cache::Kronecker(m)) => Ok(one(scalar::kronecker(u, v, m)?)),
            (Family::ScalarTrig, _) => Ok(one(scalar::f_infinity(u, v))),
            (Family::ScalarRational { a, b }, _) => Ok(one(scalar::rational(*a, *b, u, v))),
            (Family::Constant { tensor }, _) => Ok(tensor.clone()),
            _ => Err(Error::WrongKind(format!("{} has no two-variable evaluation", self.family.tag()))),
        }
    }

    fn base_cybe(&self, v: C64) -> Result<Tensor2> {
        match (&self.family, &self.cache) {
            (Family::EllipticCybe { d, .. }, Cache::Elliptic { big, .. }) => elliptic::cybe_theta_form(*d, v, big),
            (Family::TrigCybe1, _) => Ok(trig::cybe1(v)),
            (Family::TrigCybe2, _) => Ok(trig::cybe2(v)),
            _ => Err(Error::WrongKind(format!("{} is not a CYBE family", self.family.tag()))),
        }
    }

    fn finish(&self, mut t: Tensor2, uv: C64) -> Result<Tensor2> {
        match &self.gauge {
            Gauge::Identity => {}
            Gauge::Constant { matrix } => {
                let inv = self.gauge_inverse.as_ref().ok_or(Error::Singular)?;
                t = t.sandwich(matrix, matrix, inv, inv);
            }
            Gauge::ScalarExp { a } => t = t.scale((-a * uv).exp()),
        }
        if let Some(p) = &self.perturbation {
            t = t.add(p)?;
        }
        if !t.is_finite() {
            return Err(Error::PoleProximity { at: uv, guard: POLE_GUARD });
        }
        Ok(t)
    }

    /// r(u, v) with rescale, gauge and perturbation applied.
    pub fn eval_aybe(&self, u: C64, v: C64) -> Result<Tensor2> {
        if self.kind() != Kind::Aybe {
            return Err(Error::WrongKind(format!("{} is a CYBE family", self.family.tag())));
        }
        let rs = &self.rescale;
        let (bu, bv) = (u * rs.c3, v * rs.c4);
        self.check_base_domain(bu, bv, POLE_GUARD)?;
        let t = self.base_aybe(bu, bv)?.scale(rs.c1 * (rs.c2 * u * v).exp());
        self.finish(t, u * v)
    }

    /// r̄(v) for CYBE families.
    pub fn eval_cybe(&self, v: C64) -> Result<Tensor2> {
        if self.kind() != Kind::Cybe {
            return Err(Error::WrongKind(format!("{} is an AYBE family", self.family.tag())));
        }
        let rs = &self.rescale;
        self.check_domain_cybe(v, POLE_GUARD)?;
        let t = self.base_cybe(v * rs.c4)?.scale(rs.c1);
        self.finish(t, C64::new(0.0, 0.0))
    }

    /// The alternative ζ-only form of the elliptic CYBE solution.
    pub fn eval_cybe_zeta_form(&self, v: C64) -> Result<Tensor2> {
        match (&self.family, &self.cache) {
            (Family::EllipticCybe { d, .. }, Cache::Elliptic { base, .. }) => {
                let rs = &self.rescale;
                self.check_domain_cybe(v, POLE_GUARD)?;
                let t = elliptic::cybe_zeta_form(*d, v * rs.c4, base)?.scale(rs.c1);
                self.finish(t, C64::new(0.0, 0.0))
            }
            _ => Err(Error::WrongKind("the ζ form exists for elliptic CYBE families only".into())),
        }
    }

    /// Value as a function of v for either kind: r̄(v) for CYBE families.
    pub fn eval_any(&self, u: C64, v: C64) -> Result<Tensor2> {
        match self.kind() {
            Kind::Aybe => self.eval_aybe(u, v),
            Kind::Cybe => self.eval_cybe(v),
        }
    }

    /// The CYBE family obtained from this AYBE family by pr⊗pr at u = 0.
    pub fn cybe_partner(&self) -> Result<SolutionHandle> {
        let fam = match &self.family {
            Family::EllipticAybe { d, r, tau } => Family::EllipticCybe { d: *d, r: *r, tau: *tau },
            Family::TrigAybe1 => Family::TrigCybe1,
            Family::TrigAybe2 => Family::TrigCybe2,
            _ => return Err(Error::WrongKind(format!("{} has no CYBE partner", self.family.tag()))),
        };
        SolutionHandle::new(fam)
    }
}

/// Result of extrapolating (pr⊗pr) r(u, v) to u = 0.
#[derive(Debug, Clone)]
pub struct LimitEstimate {
    pub value: Tensor2,
    /// Observed convergence order of the raw sequence.
    pub order: f64,
    /// Spread between the two first-level extrapolants.
    pub spread: f64,
}

/// Default u-sequence v·{1e−2, 5e−3, 2.5e−3}.
pub fn default_u_seq(v: C64) -> Vec<C64> {
    LIMIT_SEQ.iter().map(|s| v * *s).collect()
}

/// Extrapolate (pr⊗pr) r(u, v) to u = 0 along `u_seq` by Richardson
/// (Neville) extrapolation; all levels of the table are used.
pub fn cybe_limit_of_aybe(h: &SolutionHandle, v: C64, u_seq: &[C64]) -> Result<LimitEstimate> {
    if u_seq.len() < 2 {
        return Err(Error::InvalidParameter("need at least two u values".into()));
    }
    let f: Vec<Tensor2> = u_seq.iter().map(|&u| Ok(project_sl(&h.eval_aybe(u, v)?))).collect::<Result<_>>()?;
    // Neville table for the polynomial interpolant evaluated at 0.
    let mut table = f.clone();
    let mut first_level = Vec::new();
    for level in 1..u_seq.len() {
        for i in 0..u_seq.len() - level {
            let (ui, uj) = (u_seq[i], u_seq[i + level]);
            let num = table[i + 1].scale(ui).sub(&table[i].scale(uj))?;
            table[i] = num.scale(1.0 / (ui - uj));
        }
        if level == 1 {
            first_level = table[..u_seq.len() - 1].to_vec();
        }
    }
    let spread = if first_level.len() >= 2 { first_level[0].sub(&first_level[1])?.norm() } else { 0.0 };
    let order = if f.len() >= 3 {
        let a = f[0].sub(&f[1])?.norm();
        let b = f[1].sub(&f[2])?.norm();
        let ratio = (u_seq[0].norm() / u_seq[1].norm()).ln();
        if a > 0.0 && b > 0.0 && ratio != 0.0 {
            (a / b).ln() / ratio
        } else {
            f64::INFINITY
        }
    } else {
        f64::NAN
    };
    let value = table.swap_remove(0);
    if spread > 1e-3 * value.norm().max(1.0) {
        return Err(Error::Unstable(format!("u → 0 extrapolants disagree by {spread:e}")));
    }
    Ok(LimitEstimate { value, order, spread })
}
