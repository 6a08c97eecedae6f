use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// A pair of rationals (p, q), each kept in lowest terms with positive denominator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Characteristic {
    pub p: (i64, i64),
    pub q: (i64, i64),
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

fn lowest(num: i64, den: i64) -> Result<(i64, i64)> {
    if den == 0 {
        return Err(Error::InvalidParameter("zero denominator".into()));
    }
    let g = gcd(num, den).max(1) * den.signum();
    Ok((num / g, den / g))
}

impl Characteristic {
    pub fn new(p_num: i64, p_den: i64, q_num: i64, q_den: i64) -> Result<Self> {
        Ok(Self { p: lowest(p_num, p_den)?, q: lowest(q_num, q_den)? })
    }

    pub fn zero() -> Self {
        Self { p: (0, 1), q: (0, 1) }
    }

    pub fn p(&self) -> f64 {
        self.p.0 as f64 / self.p.1 as f64
    }

    pub fn q(&self) -> f64 {
        self.q.0 as f64 / self.q.1 as f64
    }

    /// (q, p).
    pub fn swapped(&self) -> Self {
        Self { p: self.q, q: self.p }
    }
}
