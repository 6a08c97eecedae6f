//! Numerics for the associative and classical Yang-Baxter equations.
//!
//! The crate builds the elliptic, trigonometric and scalar solution families
//! as evaluable handles, checks the functional equations they satisfy, and
//! classifies scalar solutions through their Laurent data.

pub mod cli;
pub mod curve_oracle;
pub mod error;
pub mod fixtures;
pub mod sampling;
pub mod series;
pub mod serial;
pub mod solutions;
pub mod special;
pub mod tensor;
pub mod tol;
pub mod verification;

pub use error::{Error, Result};
pub use num_complex::Complex64 as C64;

/// The imaginary unit.
pub const I: C64 = C64::new(0.0, 1.0);

/// `2πi`.
pub const TWO_PI_I: C64 = C64::new(0.0, 2.0 * std::f64::consts::PI);

/// eᶻ − 1 without cancellation for small |z|.
pub fn expm1(z: C64) -> C64 {
    let (s, c) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    C64::new(z.re.exp_m1() * c - 2.0 * half * half, z.re.exp() * s)
}
