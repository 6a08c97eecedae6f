//! Seeded sampling of evaluation points away from excluded sets.

use crate::solutions::{Family, SolutionHandle};
use crate::tol::{SAMPLE_MARGIN, SAMPLE_RADIUS_ELLIPTIC, SAMPLE_RADIUS_TRIG};
use crate::{Error, Result, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Attempts per requested sample before giving up.
const MAX_REJECTIONS: usize = 1000;

/// Deterministic point generator.
pub struct Sampler {
    rng: ChaCha8Rng,
    radius: f64,
}

/// Sampling radius for a family.
pub fn radius_for(f: &Family) -> f64 {
    if f.is_elliptic() {
        SAMPLE_RADIUS_ELLIPTIC
    } else {
        SAMPLE_RADIUS_TRIG
    }
}

impl Sampler {
    pub fn new(seed: u64, radius: f64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed), radius }
    }

    pub fn for_handle(seed: u64, h: &SolutionHandle) -> Self {
        Self::new(seed, radius_for(h.family()))
    }

    /// Uniform point in the disc of the configured radius.
    pub fn point(&mut self) -> C64 {
        loop {
            let x = self.rng.random_range(-1.0..1.0);
            let y = self.rng.random_range(-1.0..1.0);
            if x * x + y * y <= 1.0 {
                return C64::new(x, y) * self.radius;
            }
        }
    }

    /// (u, u', v, v') with all six AYBE arguments in the domain.
    pub fn aybe_quadruple(&mut self, h: &SolutionHandle) -> Result<[C64; 4]> {
        for _ in 0..MAX_REJECTIONS {
            let q = [self.point(), self.point(), self.point(), self.point()];
            let [u, up, v, vp] = q;
            let args = [(-up, v), (u + up, v + vp), (u + up, vp), (u, v), (u, v + vp), (up, vp)];
            if args.iter().all(|&(a, b)| h.check_domain(a, b, SAMPLE_MARGIN).is_ok()) {
                return Ok(q);
            }
        }
        Err(Error::InvalidParameter("could not sample an admissible quadruple".into()))
    }

    /// (v, v') with v, v', v + v' in the CYBE domain.
    pub fn cybe_pair(&mut self, h: &SolutionHandle) -> Result<[C64; 2]> {
        for _ in 0..MAX_REJECTIONS {
            let (v, vp) = (self.point(), self.point());
            if [v, vp, v + vp].iter().all(|&x| h.check_domain_cybe(x, SAMPLE_MARGIN).is_ok()) {
                return Ok([v, vp]);
            }
        }
        Err(Error::InvalidParameter("could not sample an admissible pair".into()))
    }

    /// (u, v) with both (u, v) and (−u, −v) admissible.
    pub fn aybe_pair(&mut self, h: &SolutionHandle) -> Result<[C64; 2]> {
        for _ in 0..MAX_REJECTIONS {
            let (u, v) = (self.point(), self.point());
            if h.check_domain(u, v, SAMPLE_MARGIN).is_ok() && h.check_domain(-u, -v, SAMPLE_MARGIN).is_ok() {
                return Ok([u, v]);
            }
        }
        Err(Error::InvalidParameter("could not sample an admissible point".into()))
    }

    /// v admissible for a CYBE family, together with −v.
    pub fn cybe_point(&mut self, h: &SolutionHandle) -> Result<C64> {
        for _ in 0..MAX_REJECTIONS {
            let v = self.point();
            if h.check_domain_cybe(v, SAMPLE_MARGIN).is_ok() && h.check_domain_cybe(-v, SAMPLE_MARGIN).is_ok() {
                return Ok(v);
            }
        }
        Err(Error::InvalidParameter("could not sample an admissible point".into()))
    }
}
