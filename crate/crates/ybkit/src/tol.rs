//! Numerical constants shared across modules. Every tolerance the library
//! applies by default lives here.

/// Relative size of the last retained series term.
pub const SERIES_TAIL: f64 = 1e-18;

/// Hard cap on series terms (per side) before declaring non-convergence.
pub const SERIES_MAX_TERMS: usize = 4000;

/// Distance to a lattice point, after reduction, below which we refuse to evaluate.
pub const POLE_GUARD: f64 = 1e-6;

/// Margin used when sampling random points away from excluded sets.
pub const SAMPLE_MARGIN: f64 = 1e-3;

/// Sampling disc radius for elliptic families.
pub const SAMPLE_RADIUS_ELLIPTIC: f64 = 0.4;

/// Sampling disc radius for trigonometric and rational families.
pub const SAMPLE_RADIUS_TRIG: f64 = 1.0;

/// Default pass threshold for AYBE relative residuals.
pub const AYBE: f64 = 1e-8;

/// Default pass threshold for CYBE relative residuals.
pub const CYBE: f64 = 1e-8;

/// Default pass threshold for unitarity residuals.
pub const UNITARITY: f64 = 1e-10;

/// Legendre relation check.
pub const LEGENDRE: f64 = 1e-10;

/// Initial node count for trapezoidal contour quadrature.
pub const CONTOUR_NODES: usize = 64;

/// Node count ceiling for contour quadrature.
pub const CONTOUR_NODES_MAX: usize = 4096;

/// Agreement required between successive node counts.
pub const CONTOUR_AGREE: f64 = 1e-10;

/// Bound on the u^-2 coefficient for a simple pole.
pub const DOUBLE_POLE: f64 = 1e-9;

/// Below this, c3 counts as zero in the scalar classification.
pub const C3_ZERO: f64 = 1e-12;

/// Above this, c5 counts as nonzero in the scalar classification.
pub const C5_NONZERO: f64 = 1e-10;

/// Comparison tolerance for the trigonometric value of C, scaled by max(1,|C|).
pub const TRIG_POINT: f64 = 1e-8;

/// Richardson sequence for the u -> 0 limit, in units of |v|.
pub const LIMIT_SEQ: [f64; 3] = [1e-2, 5e-3, 2.5e-3];
