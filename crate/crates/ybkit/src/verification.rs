//! Residuals of the functional equations and pass/fail reports.

use crate::sampling::Sampler;
use crate::solutions::{Kind, SolutionHandle};
use crate::tensor::{commutator, leg_embed, mul3, rank_as_map, swap_legs, Legs, Tensor2, Tensor3};
use crate::{tol, Result, C64};
use serde::{Deserialize, Serialize};

/// A residual tensor with the scale used to make it relative.
#[derive(Debug, Clone)]
pub struct Residual<T> {
    pub tensor: T,
    /// Largest Frobenius norm among the terms that make up the residual.
    pub scale: f64,
}

impl Residual<Tensor3> {
    pub fn abs(&self) -> f64 {
        self.tensor.norm()
    }
    pub fn rel(&self) -> f64 {
        rel(self.abs(), self.scale)
    }
}

impl Residual<Tensor2> {
    pub fn abs(&self) -> f64 {
        self.tensor.norm()
    }
    pub fn rel(&self) -> f64 {
        rel(self.abs(), self.scale)
    }
}

fn rel(abs: f64, scale: f64) -> f64 {
    if scale > 0.0 {
        abs / scale
    } else {
        abs
    }
}

/// Outcome of one check over a set of sample points.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualReport {
    pub equation: String,
    /// Sample points as lists of [re, im] pairs.
    pub points: Vec<Vec<[f64; 2]>>,
    pub max_abs: f64,
    pub max_rel: f64,
    pub tolerance: f64,
    pub pass: bool,
    /// Points skipped because evaluation failed, with the reason.
    pub skipped: Vec<String>,
}

impl ResidualReport {
    pub(crate) fn new(equation: &str, tolerance: f64) -> Self {
        Self {
            equation: equation.into(),
            points: Vec::new(),
            max_abs: 0.0,
            max_rel: 0.0,
            tolerance,
            pass: true,
            skipped: Vec::new(),
        }
    }

    pub(crate) fn record(&mut self, pt: &[C64], abs: f64, rel: f64) {
        self.points.push(pt.iter().map(|z| [z.re, z.im]).collect());
        self.max_abs = self.max_abs.max(abs);
        self.max_rel = self.max_rel.max(rel);
    }

    pub(crate) fn finish(mut self) -> Self {
        self.pass = self.max_rel < self.tolerance && !self.points.is_empty() && self.max_rel.is_finite();
        self
    }
}

/// r¹²(−u',v) r¹³(u+u',v+v') − r²³(u+u',v') r¹²(u,v) + r¹³(u,v+v') r²³(u',v').
pub fn aybe_residual(h: &SolutionHandle, u: C64, up: C64, v: C64, vp: C64) -> Result<Residual<Tensor3>> {
    let a = mul3(&leg_embed(&h.eval_aybe(-up, v)?, Legs::L12), &leg_embed(&h.eval_aybe(u + up, v + vp)?, Legs::L13))?;
    let b = mul3(&leg_embed(&h.eval_aybe(u + up, vp)?, Legs::L23), &leg_embed(&h.eval_aybe(u, v)?, Legs::L12))?;
    let c = mul3(&leg_embed(&h.eval_aybe(u, v + vp)?, Legs::L13), &leg_embed(&h.eval_aybe(up, vp)?, Legs::L23))?;
    let scale = a.norm().max(b.norm()).max(c.norm());
    Ok(Residual { tensor: a.sub(&b)?.add(&c)?, scale })
}

/// The same three terms with each product replaced by a commutator.
pub fn aybe_commutator_residual(
    h: &SolutionHandle,
    u: C64,
    up: C64,
    v: C64,
    vp: C64,
) -> Result<Residual<Tensor3>> {
    let pairs = [
        (h.eval_aybe(-up, v)?, Legs::L12, h.eval_aybe(u + up, v + vp)?, Legs::L13),
        (h.eval_aybe(u + up, vp)?, Legs::L23, h.eval_aybe(u, v)?, Legs::L12),
        (h.eval_aybe(u, v + vp)?, Legs::L13, h.eval_aybe(up, vp)?, Legs::L23),
    ];
    let mut terms = Vec::new();
    let mut scale = 0.0_f64;
    for (x, lx, y, ly) in &pairs {
        let (x, y) = (leg_embed(x, *lx), leg_embed(y, *ly));
        scale = scale.max(mul3(&x, &y)?.norm()).max(mul3(&y, &x)?.norm());
        terms.push(commutator(&x, &y)?);
    }
    Ok(Residual { tensor: terms[0].sub(&terms[1])?.add(&terms[2])?, scale })
}

/// [r¹²(x), r²³(y)] + [r¹²(x), r¹³(x+y)] + [r¹³(x+y), r²³(y)] with x = v, y = v'.
pub fn cybe_residual(h: &SolutionHandle, v: C64, vp: C64) -> Result<Residual<Tensor3>> {
    let r12 = leg_embed(&h.eval_cybe(v)?, Legs::L12);
    let r23 = leg_embed(&h.eval_cybe(vp)?, Legs::L23);
    let r13 = leg_embed(&h.eval_cybe(v + vp)?, Legs::L13);
    cybe_from_legs(&r12, &r13, &r23)
}

/// CYBE residual of an arbitrary tensor-valued function of one variable.
pub fn cybe_residual_fn<F>(f: F, v: C64, vp: C64) -> Result<Residual<Tensor3>>
where
    F: Fn(C64) -> Result<Tensor2>,
{
    let r12 = leg_embed(&f(v)?, Legs::L12);
    let r23 = leg_embed(&f(vp)?, Legs::L23);
    let r13 = leg_embed(&f(v + vp)?, Legs::L13);
    cybe_from_legs(&r12, &r13, &r23)
}

fn cybe_from_legs(r12: &Tensor3, r13: &Tensor3, r23: &Tensor3) -> Result<Residual<Tensor3>> {
    let mut scale = 0.0_f64;
    let mut total = Tensor3::zeros(r12.n);
    for (x, y) in [(r12, r23), (r12, r13), (r13, r23)] {
        scale = scale.max(mul3(x, y)?.norm()).max(mul3(y, x)?.norm());
        total = total.add(&commutator(x, y)?)?;
    }
    Ok(Residual { tensor: total, scale })
}

/// swap(r(−u,−v)) + r(u,v); for CYBE families u is ignored.
pub fn unitarity_residual(h: &SolutionHandle, u: C64, v: C64) -> Result<Residual<Tensor2>> {
    let (plus, minus) = match h.kind() {
        Kind::Aybe => (h.eval_aybe(u, v)?, h.eval_aybe(-u, -v)?),
        Kind::Cybe => (h.eval_cybe(v)?, h.eval_cybe(-v)?),
    };
    let scale = plus.norm().max(minus.norm());
    Ok(Residual { tensor: swap_legs(&minus).add(&plus)?, scale })
}

/// Rank of r at each point; passes iff every rank is full: n² for AYBE
/// families, n² − 1 for sl_n⊗sl_n-valued CYBE families.
pub fn nondegeneracy_check(h: &SolutionHandle, pts: &[(C64, C64)]) -> ResidualReport {
    let n2 = match h.kind() {
        Kind::Aybe => h.n() * h.n(),
        Kind::Cybe => h.n() * h.n() - 1,
    };
    let mut rep = ResidualReport::new("nondegeneracy", 0.5);
    for &(u, v) in pts {
        match h.eval_any(u, v) {
            Ok(t) => {
                let deficit = n2 - rank_as_map(&t).min(n2);
                rep.record(&[u, v], deficit as f64, deficit as f64);
            }
            Err(e) => rep.skipped.push(format!("({u}, {v}): {e}")),
        }
    }
    rep.finish()
}

/// Which checks `run_suite` performs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Check {
    Aybe,
    Cybe,
    Unitarity,
    Nondegeneracy,
    Commutator,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteConfig {
    pub seed: u64,
    pub equation_samples: usize,
    pub unitarity_samples: usize,
    pub rank_samples: usize,
    pub tol_aybe: f64,
    pub tol_cybe: f64,
    pub tol_unitarity: f64,
    /// Restrict to these checks; all applicable ones when `None`.
    pub checks: Option<Vec<Check>>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            equation_samples: 25,
            unitarity_samples: 20,
            rank_samples: 5,
            tol_aybe: tol::AYBE,
            tol_cybe: tol::CYBE,
            tol_unitarity: tol::UNITARITY,
            checks: None,
        }
    }
}

impl SuiteConfig {
    fn wants(&self, c: Check) -> bool {
        self.checks.as_ref().is_none_or(|v| v.contains(&c))
    }
}

/// Run every applicable check with seeded sampling. Each check draws from
/// its own stream so adding or removing checks leaves the others unchanged.
pub fn run_suite(h: &SolutionHandle, cfg: &SuiteConfig) -> Result<Vec<ResidualReport>> {
    let mut out = Vec::new();
    let stream = |k: u64| Sampler::for_handle(cfg.seed.wrapping_mul(0x9E37_79B9).wrapping_add(k), h);
    match h.kind() {
        Kind::Aybe => {
            if cfg.wants(Check::Aybe) {
                let mut s = stream(1);
                let mut rep = ResidualReport::new("aybe", cfg.tol_aybe);
                for _ in 0..cfg.equation_samples {
                    let q = s.aybe_quadruple(h)?;
                    match aybe_residual(h, q[0], q[1], q[2], q[3]) {
                        Ok(r) => rep.record(&q, r.abs(), r.rel()),
                        Err(e) => rep.skipped.push(format!("{q:?}: {e}")),
                    }
                }
                out.push(rep.finish());
            }
            if cfg.wants(Check::Commutator) {
                let mut s = stream(2);
                let mut rep = ResidualReport::new("aybe-commutator", cfg.tol_aybe);
                for _ in 0..cfg.equation_samples {
                    let q = s.aybe_quadruple(h)?;
                    match aybe_commutator_residual(h, q[0], q[1], q[2], q[3]) {
                        Ok(r) => rep.record(&q, r.abs(), r.rel()),
                        Err(e) => rep.skipped.push(format!("{q:?}: {e}")),
                    }
                }
                out.push(rep.finish());
            }
        }
        Kind::Cybe => {
            if cfg.wants(Check::Cybe) {
                let mut s = stream(3);
                let mut rep = ResidualReport::new("cybe", cfg.tol_cybe);
                for _ in 0..cfg.equation_samples {
                    let p = s.cybe_pair(h)?;
                    match cybe_residual(h, p[0], p[1]) {
                        Ok(r) => rep.record(&p, r.abs(), r.rel()),
                        Err(e) => rep.skipped.push(format!("{p:?}: {e}")),
                    }
                }
                out.push(rep.finish());
            }
        }
    }
    if cfg.wants(Check::Unitarity) {
        let mut s = stream(4);
        let mut rep = ResidualReport::new("unitarity", cfg.tol_unitarity);
        for _ in 0..cfg.unitarity_samples {
            let (u, v) = match h.kind() {
                Kind::Aybe => {
                    let p = s.aybe_pair(h)?;
                    (p[0], p[1])
                }
                Kind::Cybe => (C64::new(0.0, 0.0), s.cybe_point(h)?),
            };
            match unitarity_residual(h, u, v) {
                Ok(r) => rep.record(&[u, v], r.abs(), r.rel()),
                Err(e) => rep.skipped.push(format!("({u}, {v}): {e}")),
            }
        }
        out.push(rep.finish());
    }
    if cfg.wants(Check::Nondegeneracy) {
        let mut s = stream(5);
        let mut pts = Vec::new();
        for _ in 0..cfg.rank_samples {
            pts.push(match h.kind() {
                Kind::Aybe => {
                    let p = s.aybe_pair(h)?;
                    (p[0], p[1])
                }
                Kind::Cybe => (C64::new(0.0, 0.0), s.cybe_point(h)?),
            });
        }
        out.push(nondegeneracy_check(h, &pts));
    }
    Ok(out)
}

/// True when every report passed.
pub fn all_pass(reports: &[ResidualReport]) -> bool {
    reports.iter().all(|r| r.pass)
}
