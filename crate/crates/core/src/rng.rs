//! Seeded generators and random test objects.
//!
//! All randomness in the crate flows from a user seed through ChaCha8, whose
//! output stream is stable across platforms and crate versions. Independent
//! trials get their own stream so that fan-out order never changes results.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::hardy::{ExteriorFunction, InteriorFunction};
use crate::spectral::{BoundaryDistribution, SobolevIndex};

pub type SeededRng = ChaCha8Rng;

pub fn seeded(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Generator for trial `stream` of a run seeded with `seed`.
pub fn trial_rng(seed: u64, stream: u64) -> SeededRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Standard complex normal sample (independent N(0,1) parts).
pub fn complex_normal(rng: &mut impl Rng) -> Complex64 {
    Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

pub fn complex_normals(rng: &mut impl Rng, len: usize) -> Vec<Complex64> {
    (0..len).map(|_| complex_normal(rng)).collect()
}

/// Random polynomial of degree `< len`.
pub fn random_interior(rng: &mut impl Rng, len: usize, s: SobolevIndex) -> InteriorFunction {
    InteriorFunction::new(complex_normals(rng, len), s).expect("normal samples are finite")
}

/// Random exterior function with `b_1 ..= b_len`.
pub fn random_exterior(rng: &mut impl Rng, len: usize, s: SobolevIndex) -> ExteriorFunction {
    ExteriorFunction::new(complex_normals(rng, len), s).expect("normal samples are finite")
}

/// Random boundary data supported on `[lo, hi]`.
pub fn random_boundary(rng: &mut impl Rng, lo: i64, hi: i64) -> BoundaryDistribution {
    let len = (hi - lo + 1).max(0) as usize;
    BoundaryDistribution::new(lo, complex_normals(rng, len)).expect("normal samples are finite")
}

/// Uniform point in the annulus `r_lo <= |z| <= r_hi`.
pub fn point_in_annulus(rng: &mut impl Rng, r_lo: f64, r_hi: f64) -> Complex64 {
    let r = rng.random_range(r_lo..=r_hi);
    let t = rng.random_range(0.0..std::f64::consts::TAU);
    Complex64::from_polar(r, t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_stream() {
        let a = complex_normals(&mut trial_rng(7, 3), 16);
        let b = complex_normals(&mut trial_rng(7, 3), 16);
        assert_eq!(a, b);
        let c = complex_normals(&mut trial_rng(7, 4), 16);
        assert_ne!(a, c);
        let d = complex_normals(&mut trial_rng(8, 3), 16);
        assert_ne!(a, d);
    }

    #[test]
    fn annulus_points_stay_in_range() {
        let mut rng = seeded(1);
        for _ in 0..1000 {
            let r = point_in_annulus(&mut rng, 1.25, 3.0).norm();
            assert!((1.25 - 1e-12..=3.0 + 1e-12).contains(&r));
        }
    }
}
