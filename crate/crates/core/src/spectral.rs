//! Coefficient algebra on the unit circle.
//!
//! A [`BoundaryDistribution`] is a finitely supported two-sided Fourier
//! series `f(θ) = Σ c_n e^{inθ}`. Everything else in the crate consumes the
//! operations here: analysis/synthesis on uniform grids, the spectral
//! Sobolev norms `(Σ (1+n²)^{s'} |c_n|²)^{1/2}`, the sesquilinear L² pairing
//! and the bilinear contour pairing `κ(f, g) = (1/2πi)∮ f g dζ`.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type ComplexScalar = Complex64;

pub(crate) fn is_finite(z: Complex64) -> bool {
    z.re.is_finite() && z.im.is_finite()
}

pub(crate) fn check_finite(values: &[Complex64], what: &str) -> Result<()> {
    match values.iter().position(|z| !is_finite(*z)) {
        Some(i) => Err(Error::InvalidData(format!(
            "non-finite {what} at position {i}: {}",
            values[i]
        ))),
        None => Ok(()),
    }
}

/// Index of a space in the Sobolev scale. Any finite real is admitted on
/// the boundary scale; the holomorphic spaces use integer values.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SobolevIndex(f64);

impl SobolevIndex {
    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() {
            Ok(SobolevIndex(value))
        } else {
            Err(Error::InvalidData(format!("Sobolev index {value} is not finite")))
        }
    }

    pub fn integer(value: i32) -> Self {
        SobolevIndex(f64::from(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<i32> for SobolevIndex {
    fn from(value: i32) -> Self {
        SobolevIndex::integer(value)
    }
}

/// Weight `(1+n²)^{s}` of frequency `n` in the index-`s` norm.
pub fn sobolev_weight(n: i64, s: f64) -> f64 {
    let n = n as f64;
    (1.0 + n * n).powf(s)
}

/// Result of a pairing; always finite for finite inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PairingValue(pub Complex64);

impl PairingValue {
    pub fn value(self) -> Complex64 {
        self.0
    }
}

/// Finitely supported two-sided Fourier coefficient sequence on the unit
/// circle, stored contiguously as `c_n` for `n = n_min ..= n_max`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryDistribution {
    n_min: i64,
    coeffs: Vec<Complex64>,
}

impl BoundaryDistribution {
    pub fn new(n_min: i64, coeffs: Vec<Complex64>) -> Result<Self> {
        check_finite(&coeffs, "coefficient")?;
        Ok(BoundaryDistribution { n_min, coeffs })
    }

    pub fn zero() -> Self {
        BoundaryDistribution {
            n_min: 0,
            coeffs: Vec::new(),
        }
    }

    /// Builds a distribution from `(frequency, coefficient)` pairs. Repeated
    /// frequencies accumulate.
    pub fn from_modes(modes: &[(i64, Complex64)]) -> Result<Self> {
        let (Some(lo), Some(hi)) = (
            modes.iter().map(|m| m.0).min(),
            modes.iter().map(|m| m.0).max(),
        ) else {
            return Ok(Self::zero());
        };
        let mut coeffs = vec![Complex64::new(0.0, 0.0); (hi - lo + 1) as usize];
        for &(n, c) in modes {
            coeffs[(n - lo) as usize] += c;
        }
        Self::new(lo, coeffs)
    }

    pub fn n_min(&self) -> i64 {
        self.n_min
    }

    /// Highest stored frequency; `n_min - 1` when nothing is stored.
    pub fn n_max(&self) -> i64 {
        self.n_min + self.coeffs.len() as i64 - 1
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `c_n`, zero outside the stored window.
    pub fn coeff(&self, n: i64) -> Complex64 {
        if n < self.n_min || n > self.n_max() {
            Complex64::new(0.0, 0.0)
        } else {
            self.coeffs[(n - self.n_min) as usize]
        }
    }

    /// Iterates `(n, c_n)` over the stored window.
    pub fn modes(&self) -> impl Iterator<Item = (i64, Complex64)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .map(move |(i, c)| (self.n_min + i as i64, *c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.re == 0.0 && c.im == 0.0)
    }

    /// Largest `|n|` carrying a nonzero coefficient, `None` for the zero
    /// distribution.
    pub fn max_abs_frequency(&self) -> Option<i64> {
        self.modes()
            .filter(|(_, c)| c.re != 0.0 || c.im != 0.0)
            .map(|(n, _)| n.abs())
            .max()
    }

    pub fn max_abs_coeff(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn scale(&self, factor: Complex64) -> Self {
        BoundaryDistribution {
            n_min: self.n_min,
            coeffs: self.coeffs.iter().map(|c| c * factor).collect(),
        }
    }

    fn combine(&self, other: &Self, op: impl Fn(Complex64, Complex64) -> Complex64) -> Self {
        let windows = [self, other]
            .into_iter()
            .filter(|d| !d.is_empty())
            .map(|d| (d.n_min, d.n_max()));
        let Some((lo, hi)) = windows.reduce(|a, b| (a.0.min(b.0), a.1.max(b.1))) else {
            return Self::zero();
        };
        let coeffs = (lo..=hi)
            .map(|n| op(self.coeff(n), other.coeff(n)))
            .collect();
        BoundaryDistribution { n_min: lo, coeffs }
    }

    fn map(&self, f: impl Fn(Complex64) -> Complex64) -> Self {
        BoundaryDistribution {
            n_min: self.n_min,
            coeffs: self.coeffs.iter().map(|c| f(*c)).collect(),
        }
    }
}

impl Add for &BoundaryDistribution {
    type Output = BoundaryDistribution;

    fn add(self, rhs: Self) -> BoundaryDistribution {
        self.combine(rhs, |a, b| a + b)
    }
}

impl Sub for &BoundaryDistribution {
    type Output = BoundaryDistribution;

    fn sub(self, rhs: Self) -> BoundaryDistribution {
        self.combine(rhs, |a, b| a - b)
    }
}

impl Neg for &BoundaryDistribution {
    type Output = BoundaryDistribution;

    fn neg(self) -> BoundaryDistribution {
        self.map(|c| -c)
    }
}

impl Mul<Complex64> for &BoundaryDistribution {
    type Output = BoundaryDistribution;

    fn mul(self, rhs: Complex64) -> BoundaryDistribution {
        self.scale(rhs)
    }
}

/// Fourier coefficients of samples `f(θ_j)`, `θ_j = 2πj/M`, returned on
/// the band `[-M/2+1, M/2]` with `c_n = (1/M) Σ_j f(θ_j) e^{-inθ_j}`.
pub fn fourier_analyze(samples: &[Complex64]) -> Result<BoundaryDistribution> {
    let m = samples.len();
    if m < 2 || !m.is_multiple_of(2) {
        return Err(Error::InvalidGrid(format!(
            "need an even number of samples >= 2, got {m}"
        )));
    }
    check_finite(samples, "sample")?;

    let mut buf = samples.to_vec();
    FftPlanner::new().plan_fft_forward(m).process(&mut buf);
    let scale = 1.0 / m as f64;

    let half = (m / 2) as i64;
    let n_min = -half + 1;
    let coeffs = (n_min..=half)
        .map(|n| buf[n.rem_euclid(m as i64) as usize] * scale)
        .collect();
    BoundaryDistribution::new(n_min, coeffs)
}

/// Values `Σ c_n e^{inθ_j}` on the uniform `M`-point grid.
pub fn fourier_synthesize(f: &BoundaryDistribution, m: usize) -> Result<Vec<Complex64>> {
    if m < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 samples, got {m}")));
    }
    let mut buf = vec![Complex64::new(0.0, 0.0); m];
    if let Some(max_freq) = f.max_abs_frequency() {
        let required = 2 * max_freq as usize + 2;
        if m < required {
            return Err(Error::Aliasing {
                max_freq,
                m,
                required,
            });
        }
        for (n, c) in f.modes() {
            buf[n.rem_euclid(m as i64) as usize] += c;
        }
    }
    FftPlanner::new().plan_fft_inverse(m).process(&mut buf);
    Ok(buf)
}

/// `Σ (1+n²)^{s'} |c_n|²`, the square of [`sobolev_norm`].
pub fn sobolev_energy(f: &BoundaryDistribution, sp: f64) -> f64 {
    f.modes()
        .map(|(n, c)| sobolev_weight(n, sp) * c.norm_sqr())
        .sum()
}

/// Spectral `H^{s'}(∂D)` norm `(Σ (1+n²)^{s'} |c_n|²)^{1/2}`.
pub fn sobolev_norm(f: &BoundaryDistribution, sp: f64) -> f64 {
    sobolev_energy(f, sp).sqrt()
}

/// Sesquilinear pairing `Σ c_n(f) conj(c_n(g))`, i.e. `(1/2π)∫ f ḡ dθ`.
pub fn l2_pairing(f: &BoundaryDistribution, g: &BoundaryDistribution) -> PairingValue {
    let lo = f.n_min().max(g.n_min());
    let hi = f.n_max().min(g.n_max());
    let sum = (lo..=hi).map(|n| f.coeff(n) * g.coeff(n).conj()).sum();
    PairingValue(sum)
}

/// Bilinear contour pairing `(1/2πi)∮ f g dζ = Σ c_n(f) c_{-1-n}(g)`.
pub fn koethe_pairing(f: &BoundaryDistribution, g: &BoundaryDistribution) -> PairingValue {
    // c_{-1-n}(g) is stored when n lies in [-1-g.n_max, -1-g.n_min]
    let lo = f.n_min().max(-1 - g.n_max());
    let hi = f.n_max().min(-1 - g.n_min());
    let sum = (lo..=hi).map(|n| f.coeff(n) * g.coeff(-1 - n)).sum();
    PairingValue(sum)
}

/// Restricts or zero-extends the stored window to exactly `[n_lo, n_hi]`.
pub fn pad_or_truncate(f: &BoundaryDistribution, n_lo: i64, n_hi: i64) -> Result<BoundaryDistribution> {
    if n_lo > n_hi {
        return Err(Error::InvalidData(format!(
            "empty window [{n_lo}, {n_hi}]"
        )));
    }
    let coeffs = (n_lo..=n_hi).map(|n| f.coeff(n)).collect();
    Ok(BoundaryDistribution {
        n_min: n_lo,
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn samples(m: usize, f: impl Fn(f64) -> Complex64) -> Vec<Complex64> {
        (0..m).map(|j| f(2.0 * PI * j as f64 / m as f64)).collect()
    }

    // direct O(M²) transform, independent of the FFT path
    fn direct_analysis(values: &[Complex64], n: i64) -> Complex64 {
        let m = values.len() as f64;
        values
            .iter()
            .enumerate()
            .map(|(j, v)| v * Complex64::from_polar(1.0, -(n as f64) * 2.0 * PI * j as f64 / m))
            .sum::<Complex64>()
            / m
    }

    #[test]
    fn analyze_single_mode() {
        let f = fourier_analyze(&samples(8, |t| Complex64::from_polar(1.0, t))).unwrap();
        assert_eq!((f.n_min(), f.n_max()), (-3, 4));
        for (n, cn) in f.modes() {
            let want = if n == 1 { 1.0 } else { 0.0 };
            assert!((cn - want).norm() < 1e-15, "n={n} c={cn}");
        }
    }

    #[test]
    fn analyze_constant() {
        let f = fourier_analyze(&[c(3.0, 0.0); 4]).unwrap();
        assert!((f.coeff(0) - 3.0).norm() < 1e-15);
        assert!(f.modes().filter(|m| m.0 != 0).all(|(_, v)| v.norm() < 1e-15));
    }

    #[test]
    fn analyze_two_modes_matches_direct_sum() {
        let vals = samples(16, |t| Complex64::from_polar(1.0, t) + Complex64::from_polar(2.0, -2.0 * t));
        let f = fourier_analyze(&vals).unwrap();
        for n in -7..=8 {
            let direct = direct_analysis(&vals, n);
            assert!((f.coeff(n) - direct).norm() < 1e-14);
            let want = match n {
                1 => 1.0,
                -2 => 2.0,
                _ => 0.0,
            };
            assert!((f.coeff(n) - want).norm() < 1e-14);
        }
    }

    #[test]
    fn analyze_rejects_bad_grids() {
        assert!(matches!(fourier_analyze(&[c(1.0, 0.0); 3]), Err(Error::InvalidGrid(_))));
        assert!(matches!(fourier_analyze(&[c(1.0, 0.0)]), Err(Error::InvalidGrid(_))));
        let mut v = vec![c(1.0, 0.0); 4];
        v[2] = c(f64::NAN, 0.0);
        assert!(matches!(fourier_analyze(&v), Err(Error::InvalidData(_))));
    }

    #[test]
    fn synthesize_unit_modes() {
        let one = BoundaryDistribution::from_modes(&[(0, c(1.0, 0.0))]).unwrap();
        assert!(fourier_synthesize(&one, 6).unwrap().iter().all(|v| (v - 1.0).norm() < 1e-15));

        let e1 = BoundaryDistribution::from_modes(&[(1, c(1.0, 0.0))]).unwrap();
        let vals = fourier_synthesize(&e1, 4).unwrap();
        let want = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)];
        for (v, w) in vals.iter().zip(want) {
            assert!((v - w).norm() < 1e-15);
        }
    }

    #[test]
    fn synthesize_detects_aliasing() {
        let f = BoundaryDistribution::from_modes(&[(-3, c(1.0, 0.0))]).unwrap();
        assert!(fourier_synthesize(&f, 8).is_ok());
        assert!(matches!(
            fourier_synthesize(&f, 6),
            Err(Error::Aliasing { max_freq: 3, m: 6, required: 8 })
        ));
    }

    #[test]
    fn norm_examples() {
        let three = BoundaryDistribution::from_modes(&[(0, c(3.0, 0.0))]).unwrap();
        for sp in [-2.5, 0.0, 0.5, 4.0] {
            assert_eq!(sobolev_norm(&three, sp), 3.0);
        }
        let e1 = BoundaryDistribution::from_modes(&[(1, c(1.0, 0.0))]).unwrap();
        assert!((sobolev_norm(&e1, 1.0) - 2f64.sqrt()).abs() < 1e-15);
        let e2 = BoundaryDistribution::from_modes(&[(2, c(1.0, 0.0))]).unwrap();
        assert!((sobolev_norm(&e2, -1.0) - 0.447213595499958).abs() < 1e-12);
        assert_eq!(sobolev_norm(&BoundaryDistribution::zero(), 1.0), 0.0);
    }

    #[test]
    fn pairing_examples() {
        let e1 = BoundaryDistribution::from_modes(&[(1, c(1.0, 0.0))]).unwrap();
        let em1 = BoundaryDistribution::from_modes(&[(-1, c(1.0, 0.0))]).unwrap();
        assert_eq!(l2_pairing(&e1, &e1).value(), c(1.0, 0.0));
        assert_eq!(l2_pairing(&e1, &em1).value(), c(0.0, 0.0));

        let f = BoundaryDistribution::new(0, vec![c(2.0, 0.0), c(0.0, 1.0)]).unwrap();
        let g = BoundaryDistribution::new(0, vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert_eq!(l2_pairing(&f, &g).value(), c(2.0, 1.0));
    }

    #[test]
    fn koethe_examples() {
        let one = BoundaryDistribution::from_modes(&[(0, c(1.0, 0.0))]).unwrap();
        let z = BoundaryDistribution::from_modes(&[(1, c(1.0, 0.0))]).unwrap();
        let inv_z = BoundaryDistribution::from_modes(&[(-1, c(1.0, 0.0))]).unwrap();
        assert_eq!(koethe_pairing(&one, &inv_z).value(), c(1.0, 0.0));
        assert_eq!(koethe_pairing(&z, &inv_z).value(), c(0.0, 0.0));

        let u = BoundaryDistribution::new(0, vec![c(1.0, 0.0), c(2.0, 0.0)]).unwrap();
        let v = BoundaryDistribution::new(-2, vec![c(4.0, 0.0), c(3.0, 0.0)]).unwrap();
        let spectral = koethe_pairing(&u, &v).value();
        assert_eq!(spectral, c(11.0, 0.0));

        // trapezoid oracle of (1/2πi)∮ u v dζ on the unit circle
        let m = 32;
        let quad: Complex64 = (0..m)
            .map(|j| {
                let zeta = Complex64::from_polar(1.0, 2.0 * PI * j as f64 / m as f64);
                let uv = (1.0 + 2.0 * zeta) * (3.0 / zeta + 4.0 / (zeta * zeta));
                uv * Complex64::i() * zeta
            })
            .sum::<Complex64>()
            * (2.0 * PI / m as f64)
            / (2.0 * PI * Complex64::i());
        assert!((quad - spectral).norm() < 1e-13);
    }

    #[test]
    fn pad_and_truncate() {
        let e1 = BoundaryDistribution::from_modes(&[(1, c(1.0, 0.0))]).unwrap();
        let wide = pad_or_truncate(&e1, -2, 2).unwrap();
        assert_eq!((wide.n_min(), wide.n_max()), (-2, 2));
        assert_eq!(wide.coeff(1), c(1.0, 0.0));
        assert_eq!(pad_or_truncate(&wide, 1, 1).unwrap(), e1);

        let far = BoundaryDistribution::from_modes(&[(-3, c(5.0, 0.0))]).unwrap();
        assert!(pad_or_truncate(&far, -1, 1).unwrap().is_zero());

        let again = pad_or_truncate(&wide, -2, 2).unwrap();
        assert_eq!(again, wide);
        assert!(pad_or_truncate(&e1, 2, 1).is_err());
    }

    #[test]
    fn arithmetic_aligns_windows() {
        let a = BoundaryDistribution::from_modes(&[(-1, c(1.0, 0.0))]).unwrap();
        let b = BoundaryDistribution::from_modes(&[(2, c(0.0, 2.0))]).unwrap();
        let s = &a + &b;
        assert_eq!((s.n_min(), s.n_max()), (-1, 2));
        assert_eq!(s.coeff(2), c(0.0, 2.0));
        let d = &s - &a;
        assert_eq!(d.coeff(-1), c(0.0, 0.0));
        assert!((&BoundaryDistribution::zero() - &a).coeff(-1) == c(-1.0, 0.0));
    }

    #[test]
    fn rejects_non_finite_coefficients() {
        assert!(BoundaryDistribution::new(0, vec![c(f64::INFINITY, 0.0)]).is_err());
        assert!(SobolevIndex::new(f64::NAN).is_err());
    }
}
