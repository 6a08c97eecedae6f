//! Dense elements of Mat(n)⊗Mat(n) and Mat(n)⊗Mat(n)⊗Mat(n).
//!
//! `Tensor2` stores c_{i j i' j'} for Σ c e_{ij}⊗e_{i'j'} in row-major
//! (i, j, i', j') order; `Tensor3` likewise over six indices.

use crate::{Error, Result, C64};
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

const ZERO: C64 = C64::new(0.0, 0.0);
const ONE: C64 = C64::new(1.0, 0.0);

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tensor2 {
    pub n: usize,
    pub coeffs: Vec<C64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Tensor3 {
    pub n: usize,
    pub coeffs: Vec<C64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Legs {
    L12,
    L13,
    L23,
}

impl std::str::FromStr for Legs {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "12" => Ok(Legs::L12),
            "13" => Ok(Legs::L13),
            "23" => Ok(Legs::L23),
            _ => Err(Error::InvalidParameter(format!("leg pair {s}"))),
        }
    }
}

/// An n×n matrix, row-major.
pub type Mat = Vec<C64>;

/// Elementary matrix e_{ij}.
pub fn unit(n: usize, i: usize, j: usize) -> Mat {
    let mut m = vec![ZERO; n * n];
    m[i * n + j] = ONE;
    m
}

pub fn identity(n: usize) -> Mat {
    let mut m = vec![ZERO; n * n];
    for i in 0..n {
        m[i * n + i] = ONE;
    }
    m
}

pub fn mat_mul(n: usize, a: &[C64], b: &[C64]) -> Mat {
    let mut c = vec![ZERO; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == ZERO {
                continue;
            }
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}

/// Inverse of an n×n matrix, or `Singular`.
pub fn mat_inv(n: usize, a: &[C64]) -> Result<Mat> {
    let m = DMatrix::from_row_slice(n, n, a);
    let inv = m.try_inverse().ok_or(Error::Singular)?;
    let mut out = vec![ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            out[i * n + j] = inv[(i, j)];
        }
    }
    Ok(out)
}

fn check_len(n: usize, len: usize, power: u32) -> Result<()> {
    if n == 0 || len != n.pow(power) {
        return Err(Error::SizeMismatch(len, n.pow(power)));
    }
    Ok(())
}

impl Tensor2 {
    pub fn zeros(n: usize) -> Self {
        Self { n, coeffs: vec![ZERO; n.pow(4)] }
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<C64>) -> Result<Self> {
        check_len(n, coeffs.len(), 4)?;
        Ok(Self { n, coeffs })
    }

    #[inline]
    pub fn idx(&self, i: usize, j: usize, k: usize, l: usize) -> usize {
        let n = self.n;
        ((i * n + j) * n + k) * n + l
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> C64 {
        self.coeffs[self.idx(i, j, k, l)]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, z: C64) {
        let p = self.idx(i, j, k, l);
        self.coeffs[p] = z;
    }

    /// a⊗b.
    pub fn outer(n: usize, a: &[C64], b: &[C64]) -> Self {
        let mut t = Self::zeros(n);
        for (p, &x) in a.iter().enumerate() {
            for (q, &y) in b.iter().enumerate() {
                t.coeffs[p * n * n + q] = x * y;
            }
        }
        t
    }

    /// 1⊗1.
    pub fn one(n: usize) -> Self {
        let id = identity(n);
        Self::outer(n, &id, &id)
    }

    /// Σ e_{ij}⊗e_{ji}.
    pub fn permutation(n: usize) -> Self {
        let mut t = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.set(i, j, j, i, ONE);
            }
        }
        t
    }

    /// self += z·(a⊗b).
    pub fn add_outer(&mut self, z: C64, a: &[C64], b: &[C64]) {
        let n2 = self.n * self.n;
        for (p, &x) in a.iter().enumerate() {
            if x == ZERO {
                continue;
            }
            for (q, &y) in b.iter().enumerate() {
                self.coeffs[p * n2 + q] += z * x * y;
            }
        }
    }

    pub fn scale(&self, z: C64) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|c| c * z).collect() }
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        check_len(self.n, o.coeffs.len(), 4)?;
        Ok(Self { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.scale(-ONE))
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn is_finite(&self) -> bool {
        self.coeffs.iter().all(|c| c.re.is_finite() && c.im.is_finite())
    }

    /// The n²×n² matrix with rows (i,j) and columns (i',j').
    pub fn as_map(&self) -> DMatrix<C64> {
        let n2 = self.n * self.n;
        DMatrix::from_row_slice(n2, n2, &self.coeffs)
    }

    /// (A⊗B)·t·(C⊗D), computed leg-wise.
    pub fn sandwich(&self, a: &[C64], b: &[C64], c: &[C64], d: &[C64]) -> Self {
        let n = self.n;
        let mut out = Self::zeros(n);
        // leg 1: A x C, leg 2: B y D
        let mut tmp = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = ZERO;
                        for p in 0..n {
                            for q in 0..n {
                                s += a[i * n + p] * self.get(p, q, k, l) * c[q * n + j];
                            }
                        }
                        tmp.set(i, j, k, l, s);
                    }
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    for l in 0..n {
                        let mut s = ZERO;
                        for p in 0..n {
                            for q in 0..n {
                                s += b[k * n + p] * tmp.get(i, j, p, q) * d[q * n + l];
                            }
                        }
                        out.set(i, j, k, l, s);
                    }
                }
            }
        }
        out
    }
}

impl Tensor3 {
    pub fn zeros(n: usize) -> Self {
        Self { n, coeffs: vec![ZERO; n.pow(6)] }
    }

    pub fn from_coeffs(n: usize, coeffs: Vec<C64>) -> Result<Self> {
        check_len(n, coeffs.len(), 6)?;
        Ok(Self { n, coeffs })
    }

    #[inline]
    pub fn idx(&self, i: [usize; 6]) -> usize {
        let n = self.n;
        i.iter().fold(0, |acc, &x| acc * n + x)
    }

    #[inline]
    pub fn get(&self, i: [usize; 6]) -> C64 {
        self.coeffs[self.idx(i)]
    }

    /// 1⊗1⊗1.
    pub fn one(n: usize) -> Self {
        leg_embed(&Tensor2::one(n), Legs::L12)
    }

    pub fn add(&self, o: &Self) -> Result<Self> {
        check_len(self.n, o.coeffs.len(), 6)?;
        Ok(Self { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, o: &Self) -> Result<Self> {
        check_len(self.n, o.coeffs.len(), 6)?;
        Ok(Self { n: self.n, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn scale(&self, z: C64) -> Self {
        Self { n: self.n, coeffs: self.coeffs.iter().map(|c| c * z).collect() }
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Place `t` on the given pair of legs with the identity on the third.
pub fn leg_embed(t: &Tensor2, legs: Legs) -> Tensor3 {
    let n = t.n;
    let mut out = Tensor3::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let c = t.get(i, j, k, l);
                    if c == ZERO {
                        continue;
                    }
                    for m in 0..n {
                        let ix = match legs {
                            Legs::L12 => [i, j, k, l, m, m],
                            Legs::L13 => [i, j, m, m, k, l],
                            Legs::L23 => [m, m, i, j, k, l],
                        };
                        let p = out.idx(ix);
                        out.coeffs[p] = c;
                    }
                }
            }
        }
    }
    out
}

/// Product in Mat(n)⊗Mat(n)⊗Mat(n).
pub fn mul3(x: &Tensor3, y: &Tensor3) -> Result<Tensor3> {
    if x.n != y.n {
        return Err(Error::SizeMismatch(x.n, y.n));
    }
    // View each tensor as an n³×n³ matrix with rows (i1,i2,i3), columns (j1,j2,j3).
    let n = x.n;
    let n3 = n * n * n;
    let to_mat = |t: &Tensor3| {
        let mut m = vec![ZERO; n3 * n3];
        for (p, &c) in t.coeffs.iter().enumerate() {
            let (r, col) = split(p, n);
            m[r * n3 + col] = c;
        }
        DMatrix::from_row_slice(n3, n3, &m)
    };
    let prod = to_mat(x) * to_mat(y);
    let mut out = Tensor3::zeros(n);
    for p in 0..out.coeffs.len() {
        let (r, col) = split(p, n);
        out.coeffs[p] = prod[(r, col)];
    }
    Ok(out)
}

/// Flat (i1,j1,i2,j2,i3,j3) index to (row, column) of the n³×n³ view.
fn split(p: usize, n: usize) -> (usize, usize) {
    let mut ix = [0usize; 6];
    let mut rest = p;
    for slot in ix.iter_mut().rev() {
        *slot = rest % n;
        rest /= n;
    }
    ((ix[0] * n + ix[2]) * n + ix[4], (ix[1] * n + ix[3]) * n + ix[5])
}

/// x·y − y·x.
pub fn commutator(x: &Tensor3, y: &Tensor3) -> Result<Tensor3> {
    mul3(x, y)?.sub(&mul3(y, x)?)
}

/// c_{iji'j'} ↦ c_{i'j'ij}.
pub fn swap_legs(t: &Tensor2) -> Tensor2 {
    let n = t.n;
    let mut out = Tensor2::zeros(n);
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    out.set(k, l, i, j, t.get(i, j, k, l));
                }
            }
        }
    }
    out
}

/// pr⊗pr, where pr removes the scalar part (tr/n)·1 of a matrix.
pub fn project_sl(t: &Tensor2) -> Tensor2 {
    let n = t.n;
    let nf = n as f64;
    // leg 1
    let mut a = t.clone();
    for k in 0..n {
        for l in 0..n {
            let tr: C64 = (0..n).map(|i| t.get(i, i, k, l)).sum::<C64>() / nf;
            for i in 0..n {
                let v = a.get(i, i, k, l) - tr;
                a.set(i, i, k, l, v);
            }
        }
    }
    let mut b = a.clone();
    for i in 0..n {
        for j in 0..n {
            let tr: C64 = (0..n).map(|k| a.get(i, j, k, k)).sum::<C64>() / nf;
            for k in 0..n {
                let v = b.get(i, j, k, k) - tr;
                b.set(i, j, k, k, v);
            }
        }
    }
    b
}

/// Singular values of the (i,j)×(i',j') reshaping, descending.
pub fn singular_values(t: &Tensor2) -> Vec<f64> {
    let mut s: Vec<f64> = t.as_map().singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Numerical rank with cutoff n²·ε·σ_max.
pub fn rank_as_map(t: &Tensor2) -> usize {
    let s = singular_values(t);
    let smax = s.first().copied().unwrap_or(0.0);
    if smax == 0.0 {
        return 0;
    }
    let cutoff = (t.n * t.n) as f64 * f64::EPSILON * smax;
    s.iter().filter(|&&x| x > cutoff).count()
}
