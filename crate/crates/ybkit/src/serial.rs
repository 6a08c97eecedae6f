//! Structured-text (JSON) records for tensors and solution handles. Floats
//! round-trip bit-exactly.

use crate::solutions::{Family, Gauge, Rescale, SolutionHandle};
use crate::tensor::{Tensor2, Tensor3};
use crate::{Error, Result, C64};
use serde::{Deserialize, Serialize};

/// {n, legs, coeffs} with coefficients in row-major (i, j, i′, j′[, i″, j″]) order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorRecord {
    pub n: usize,
    pub legs: usize,
    pub coeffs: Vec<[f64; 2]>,
}

fn pairs(c: &[C64]) -> Vec<[f64; 2]> {
    c.iter().map(|z| [z.re, z.im]).collect()
}

fn complexes(c: &[[f64; 2]]) -> Vec<C64> {
    c.iter().map(|&[re, im]| C64::new(re, im)).collect()
}

impl From<&Tensor2> for TensorRecord {
    fn from(t: &Tensor2) -> Self {
        Self { n: t.n, legs: 2, coeffs: pairs(&t.coeffs) }
    }
}

impl From<&Tensor3> for TensorRecord {
    fn from(t: &Tensor3) -> Self {
        Self { n: t.n, legs: 3, coeffs: pairs(&t.coeffs) }
    }
}

impl TensorRecord {
    pub fn to_tensor2(&self) -> Result<Tensor2> {
        if self.legs != 2 {
            return Err(Error::Parse(format!("expected a 2-leg tensor, got {} legs", self.legs)));
        }
        Tensor2::from_coeffs(self.n, complexes(&self.coeffs))
    }

    pub fn to_tensor3(&self) -> Result<Tensor3> {
        if self.legs != 3 {
            return Err(Error::Parse(format!("expected a 3-leg tensor, got {} legs", self.legs)));
        }
        Tensor3::from_coeffs(self.n, complexes(&self.coeffs))
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// Family, parameters, rescale and gauge of a handle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HandleDescriptor {
    #[serde(flatten)]
    pub family: Family,
    #[serde(default)]
    pub rescale: Rescale,
    #[serde(default)]
    pub gauge: Gauge,
}

impl HandleDescriptor {
    pub fn of(h: &SolutionHandle) -> Self {
        Self { family: h.family().clone(), rescale: *h.rescale(), gauge: h.gauge().clone() }
    }

    pub fn build(&self) -> Result<SolutionHandle> {
        SolutionHandle::new(self.family.clone())?
            .with_rescale(self.rescale)?
            .equivalence_transform(self.gauge.clone())
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}
