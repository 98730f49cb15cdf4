//! Finite order of growth and position on the Sobolev scale.
//!
//! A holomorphic `u` with `|u(z)| <= C |z − z₀|^{−γ}` near a boundary point
//! has Taylor coefficients of size `n^{γ−1}`, and its trace norm
//! `Σ (1+n²)^{s−1/2} |a_n|²` converges exactly when `s < 1 − γ`. This module
//! generates the model family `(1 − z̄₀ z)^{−γ}`, locates a truncated series
//! on the integer scale from its coefficient tail, fits the pointwise growth
//! exponent along the radius towards `z₀`, and classifies coefficient decay.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::{evaluate_interior, InteriorFunction};
use crate::spectral::SobolevIndex;

/// Shortest coefficient list from which a tail fit is attempted.
pub const MIN_TAIL_SUPPORT: usize = 64;
/// Dyadic block ratios must stay below `1 − BLOCK_RATIO_MARGIN`.
pub const BLOCK_RATIO_MARGIN: f64 = 0.05;
/// RMS residual of the log-log tail regression above which the estimate is
/// reported as inconclusive.
pub const TAIL_FIT_RESIDUAL_MAX: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthFamilySpec {
    pub z0: Complex64,
    pub gamma: f64,
    /// Truncation degree; coefficients `a_0 ..= a_N` are produced.
    pub n: usize,
}

impl GrowthFamilySpec {
    pub fn new(z0: Complex64, gamma: f64, n: usize) -> Result<Self> {
        if !((z0.norm() - 1.0).abs() < 1e-12) {
            return Err(Error::InvalidFamily(format!("|z0| = {} is not 1", z0.norm())));
        }
        if !(gamma.is_finite() && gamma > 0.0) {
            return Err(Error::InvalidFamily(format!("growth exponent {gamma} must be positive")));
        }
        if n < 8 {
            return Err(Error::InvalidFamily(format!("truncation degree {n} is below 8")));
        }
        Ok(GrowthFamilySpec { z0, gamma, n })
    }
}

/// Taylor coefficients of `(1 − z̄₀ z)^{−γ}` up to degree `N`, through
/// `a_{n+1} = a_n (n+γ)/(n+1) z̄₀`.
pub fn growth_family_coeffs(spec: &GrowthFamilySpec) -> Result<InteriorFunction> {
    let spec = GrowthFamilySpec::new(spec.z0, spec.gamma, spec.n)?;
    let w = spec.z0.conj();
    let mut a = Vec::with_capacity(spec.n + 1);
    let mut current = Complex64::new(1.0, 0.0);
    for n in 0..=spec.n {
        a.push(current);
        let k = n as f64;
        current = current * w * ((k + spec.gamma) / (k + 1.0));
    }
    InteriorFunction::new(a, SobolevIndex::integer(0))
}

/// Status of one grid index under the dyadic block test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BlockTest {
    Converges,
    /// Block ratio within `BLOCK_RATIO_MARGIN` of 1; no claim is made.
    Borderline,
    Diverges,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub s: i32,
    pub block_ratio: f64,
    pub status: BlockTest,
}

/// Where a truncated series sits on the integer scale `O^s(D)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ScaleMembership {
    /// Largest grid index whose trace-norm sums converge.
    Member { s: i32 },
    /// Exact polynomial: it lies in every `O^s`; `s` is the top of the grid.
    Saturated { s: i32 },
    /// Not even the lowest grid index converges.
    BelowGrid,
    /// Tail too irregular for the block test to be trusted.
    Inconclusive { residual: f64 },
}

impl ScaleMembership {
    /// The grid index reported, if any.
    pub fn index(&self) -> Option<i32> {
        match *self {
            ScaleMembership::Member { s } | ScaleMembership::Saturated { s } => Some(s),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SobolevEstimate {
    pub membership: ScaleMembership,
    /// Fitted `β` in `|a_n| ≈ n^β` over the upper half of the support.
    pub tail_exponent: Option<f64>,
    pub fit_residual: Option<f64>,
    pub grid: Vec<GridPoint>,
}

/// Ordinary least squares `y ≈ intercept + slope·x`; returns
/// `(slope, intercept, rms residual)`.
fn linear_fit(points: &[(f64, f64)]) -> Option<(f64, f64, f64)> {
    let n = points.len() as f64;
    if points.len() < 2 {
        return None;
    }
    let mx = points.iter().map(|p| p.0).sum::<f64>() / n;
    let my = points.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = points.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = points.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let rss: f64 = points
        .iter()
        .map(|p| (p.1 - intercept - slope * p.0).powi(2))
        .sum();
    Some((slope, intercept, (rss / n).sqrt()))
}

/// Largest of the last two dyadic block ratios `B_{k+1}/B_k` of the terms
/// `(1+n²)^{s−1/2} |a_n|²`, blocks `[2^k, 2^{k+1})` inside the support.
fn dyadic_block_ratio(abs_sq: &[f64], s: i32) -> f64 {
    let exponent = f64::from(s) - 0.5;
    let mut blocks = Vec::new();
    let mut lo = 1usize;
    while 2 * lo <= abs_sq.len() {
        let block: f64 = (lo..2 * lo)
            .map(|n| (1.0 + (n * n) as f64).powf(exponent) * abs_sq[n])
            .sum();
        blocks.push(block);
        lo *= 2;
    }
    let ratio = |k: usize| {
        let (prev, next) = (blocks[k - 1], blocks[k]);
        if prev == 0.0 {
            if next == 0.0 { 0.0 } else { f64::INFINITY }
        } else {
            next / prev
        }
    };
    let k = blocks.len() - 1;
    ratio(k).max(ratio(k - 1))
}

/// Places `u` on the integer Sobolev scale by testing convergence of its
/// trace-norm sums on every index of `s_grid`.
pub fn estimate_min_sobolev(u: &InteriorFunction, s_grid: &[i32]) -> Result<SobolevEstimate> {
    let a = u.coeffs();
    let Some(last) = a.iter().rposition(|c| c.norm() != 0.0) else {
        return Err(Error::Degenerate("all coefficients vanish".into()));
    };
    let mut grid: Vec<i32> = s_grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    let Some(&top) = grid.last() else {
        return Err(Error::InvalidData("empty Sobolev grid".into()));
    };

    // short or finitely supported data is an exact polynomial
    if a.len() < MIN_TAIL_SUPPORT || last < a.len() / 2 {
        let grid = grid
            .iter()
            .map(|&s| GridPoint {
                s,
                block_ratio: 0.0,
                status: BlockTest::Converges,
            })
            .collect();
        return Ok(SobolevEstimate {
            membership: ScaleMembership::Saturated { s: top },
            tail_exponent: None,
            fit_residual: None,
            grid,
        });
    }

    let tail: Vec<(f64, f64)> = (a.len() / 2..a.len())
        .filter(|&n| a[n].norm() > 0.0)
        .map(|n| ((n as f64).ln(), a[n].norm().ln()))
        .collect();
    let fit = if tail.len() >= 8 { linear_fit(&tail) } else { None };
    let (tail_exponent, residual) = match fit {
        Some((slope, _, rms)) => (Some(slope), rms),
        None => (None, f64::INFINITY),
    };

    let abs_sq: Vec<f64> = a.iter().map(|c| c.norm_sqr()).collect();
    let points: Vec<GridPoint> = grid
        .iter()
        .map(|&s| {
            let block_ratio = dyadic_block_ratio(&abs_sq, s);
            let status = if block_ratio < 1.0 - BLOCK_RATIO_MARGIN {
                BlockTest::Converges
            } else if block_ratio <= 1.0 + BLOCK_RATIO_MARGIN {
                BlockTest::Borderline
            } else {
                BlockTest::Diverges
            };
            GridPoint { s, block_ratio, status }
        })
        .collect();

    let membership = if residual > TAIL_FIT_RESIDUAL_MAX {
        ScaleMembership::Inconclusive { residual }
    } else {
        points
            .iter()
            .rev()
            .find(|p| p.status == BlockTest::Converges)
            .map_or(ScaleMembership::BelowGrid, |p| ScaleMembership::Member { s: p.s })
    };
    Ok(SobolevEstimate {
        membership,
        tail_exponent,
        fit_residual: Some(residual),
        grid: points,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GrowthFit {
    pub gamma: f64,
    pub c: f64,
    /// Set when the truncation degree is below `10 / (1 − max r)`.
    pub truncation_warning: bool,
}

/// Radii `1 − 2^{−k}` for `k = 1, 2, …` while `N >= 10·2^k`.
pub fn default_radii(degree: usize) -> Vec<f64> {
    (1..=52)
        .take_while(|&k| 10.0 * 2f64.powi(k) <= degree as f64)
        .map(|k| 1.0 - 2f64.powi(-k))
        .collect()
}

/// Least-squares fit of `log|u(r z₀)| ≈ log C + γ·(−log(1 − r))`.
pub fn pointwise_growth_exponent(u: &InteriorFunction, z0: Complex64, radii: &[f64]) -> Result<GrowthFit> {
    if radii.len() < 2 {
        return Err(Error::InvalidData("need at least two radii".into()));
    }
    if radii.windows(2).any(|w| !(w[0] < w[1])) {
        return Err(Error::InvalidData("radii must be strictly increasing".into()));
    }
    let r_max = radii[radii.len() - 1];
    if !(radii[0] > 0.0 && r_max < 1.0 - 1e-6) {
        return Err(Error::InvalidData(format!(
            "radii must lie in (0, 1 - 1e-6), got [{}, {r_max}]",
            radii[0]
        )));
    }
    let direction = z0 / z0.norm();
    let mut points = Vec::with_capacity(radii.len());
    for &r in radii {
        let value = evaluate_interior(u, direction * r)?.norm();
        if !(value > 0.0) {
            return Err(Error::Degenerate(format!("u vanishes at radius {r}")));
        }
        points.push((-(1.0 - r).ln(), value.ln()));
    }
    let (gamma, log_c, _) = linear_fit(&points).expect("distinct radii");
    let degree = u.coeffs().len().saturating_sub(1);
    Ok(GrowthFit {
        gamma,
        c: log_c.exp(),
        truncation_warning: (degree as f64) < 10.0 / (1.0 - r_max),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DecayClass {
    /// Super-polynomial decay: in every space of the scale.
    Smooth,
    /// Bounded by a power of the index.
    FiniteOrder,
    Neither,
}

/// Relative change of the local log-log slope between the last two dyadic
/// windows that separates the three classes.
const SLOPE_DRIFT: f64 = 0.2;

/// Classifies one-sided coefficients `c_0, c_1, …` by how the local slope
/// of `log|c_n|` against `log n` evolves across the last two dyadic windows:
/// steadily more negative means super-polynomial decay, steadily more
/// positive means super-polynomial growth, stable means polynomial bounds.
pub fn classify_decay(coeffs: &[Complex64]) -> Result<DecayClass> {
    if coeffs.len() < 16 {
        return Err(Error::Truncation {
            requested: coeffs.len(),
            required: 16,
        });
    }
    let mut windows = Vec::new();
    let mut lo = 1usize;
    while 2 * lo <= coeffs.len() {
        windows.push(lo..2 * lo);
        lo *= 2;
    }
    let slope = |range: std::ops::Range<usize>| {
        let pts: Vec<(f64, f64)> = range
            .filter(|&n| coeffs[n].norm() > 0.0)
            .map(|n| ((n as f64).ln(), coeffs[n].norm().ln()))
            .collect();
        (pts.len(), linear_fit(&pts).map(|f| f.0))
    };
    let k = windows.len() - 1;
    let (count_last, last) = slope(windows[k].clone());
    let (_, prev) = slope(windows[k - 1].clone());
    if count_last == 0 {
        // vanishing tail: a polynomial
        return Ok(DecayClass::Smooth);
    }
    let (Some(last), Some(prev)) = (last, prev) else {
        return Ok(DecayClass::Neither);
    };
    let drift = last - prev;
    let scale = prev.abs().max(1.0);
    Ok(if last < 0.0 && drift < -SLOPE_DRIFT * scale {
        DecayClass::Smooth
    } else if last > 0.0 && drift > SLOPE_DRIFT * scale {
        DecayClass::Neither
    } else {
        DecayClass::FiniteOrder
    })
}

/// Everything known about one growth family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GrowthReport {
    pub z0: Complex64,
    pub gamma: f64,
    pub n: usize,
    pub gamma_fitted: f64,
    pub c_fitted: f64,
    pub r_used: f64,
    pub s_min_estimate: Option<i32>,
    pub membership: ScaleMembership,
    pub truncation_warning: bool,
    /// `(s, ‖u‖_{O^s})` of the truncated series, nondecreasing in `s`.
    pub norm_curve: Vec<(i32, f64)>,
}

/// Largest integer strictly below `1 − γ`.
pub fn predicted_scale_index(gamma: f64) -> i32 {
    let bound = 1.0 - gamma;
    let floor = bound.floor();
    (if floor == bound { floor - 1.0 } else { floor }) as i32
}

pub fn growth_report(spec: &GrowthFamilySpec, s_grid: &[i32], radii: &[f64]) -> Result<GrowthReport> {
    let u = growth_family_coeffs(spec)?;
    let estimate = estimate_min_sobolev(&u, s_grid)?;
    let fit = pointwise_growth_exponent(&u, spec.z0, radii)?;
    let mut grid = s_grid.to_vec();
    grid.sort_unstable();
    grid.dedup();
    let norm_curve = grid
        .iter()
        .map(|&s| (s, u.clone().with_index(SobolevIndex::integer(s)).trace_norm()))
        .collect();
    Ok(GrowthReport {
        z0: spec.z0,
        gamma: spec.gamma,
        n: spec.n,
        gamma_fitted: fit.gamma,
        c_fitted: fit.c,
        r_used: 1.0 - radii[0],
        s_min_estimate: estimate.membership.index(),
        membership: estimate.membership,
        truncation_warning: fit.truncation_warning,
        norm_curve,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::function::gamma::ln_gamma;

    fn one() -> Complex64 {
        Complex64::new(1.0, 0.0)
    }

    fn family(gamma: f64, n: usize) -> InteriorFunction {
        growth_family_coeffs(&GrowthFamilySpec::new(one(), gamma, n).unwrap()).unwrap()
    }

    #[test]
    fn family_coefficients() {
        assert!(family(1.0, 16).coeffs().iter().all(|a| *a == one()));
        for (n, a) in family(2.0, 16).coeffs().iter().enumerate() {
            assert!((a - (n + 1) as f64).norm() < 1e-12);
        }
        let half = family(0.5, 8);
        let want = [1.0, 0.5, 0.375, 0.3125, 0.2734375];
        for (a, w) in half.coeffs().iter().zip(want) {
            assert!((a - w).norm() < 1e-15);
        }
        assert_eq!(half.coeffs().len(), 9);
    }

    #[test]
    fn recurrence_matches_binomial_series() {
        let z0 = Complex64::from_polar(1.0, 0.7);
        for gamma in [0.3, 1.5, 2.7] {
            let u = growth_family_coeffs(&GrowthFamilySpec::new(z0, gamma, 64).unwrap()).unwrap();
            for (n, a) in u.coeffs().iter().enumerate() {
                let k = n as f64;
                let magnitude = (ln_gamma(k + gamma) - ln_gamma(gamma) - ln_gamma(k + 1.0)).exp();
                let direct = z0.conj().powu(n as u32) * magnitude;
                assert!((a - direct).norm() <= 1e-12 * direct.norm(), "γ={gamma} n={n}");
            }
        }
    }

    #[test]
    fn family_validation() {
        assert!(GrowthFamilySpec::new(Complex64::new(0.5, 0.0), 1.0, 16).is_err());
        assert!(GrowthFamilySpec::new(one(), 0.0, 16).is_err());
        assert!(GrowthFamilySpec::new(one(), 1.0, 7).is_err());
    }

    #[test]
    fn scale_position_of_model_families() {
        let grid: Vec<i32> = (-5..=5).collect();
        let e1 = estimate_min_sobolev(&family(1.0, 4096), &grid).unwrap();
        assert_eq!(e1.membership, ScaleMembership::Member { s: -1 });
        let boundary = e1.grid.iter().find(|p| p.s == 0).unwrap();
        assert_ne!(boundary.status, BlockTest::Converges);
        let e2 = estimate_min_sobolev(&family(2.0, 4096), &grid).unwrap();
        assert_eq!(e2.membership, ScaleMembership::Member { s: -2 });
        assert!((e2.tail_exponent.unwrap() - 1.0).abs() < 0.01);
    }

    #[test]
    fn polynomials_saturate_the_grid() {
        let u = InteriorFunction::new(vec![one(), 0.0.into(), 0.0.into(), one()], SobolevIndex::integer(0)).unwrap();
        let e = estimate_min_sobolev(&u, &[-3, 0, 4]).unwrap();
        assert_eq!(e.membership, ScaleMembership::Saturated { s: 4 });

        let mut a = vec![Complex64::new(0.0, 0.0); 128];
        a[0] = one();
        a[3] = one();
        let u = InteriorFunction::new(a, SobolevIndex::integer(0)).unwrap();
        assert_eq!(estimate_min_sobolev(&u, &[1, 2]).unwrap().membership, ScaleMembership::Saturated { s: 2 });
    }

    #[test]
    fn degenerate_and_irregular_input() {
        let zero = InteriorFunction::new(vec![Complex64::new(0.0, 0.0); 100], SobolevIndex::integer(0)).unwrap();
        assert!(matches!(estimate_min_sobolev(&zero, &[0]), Err(Error::Degenerate(_))));

        // wildly oscillating magnitudes defeat the tail regression
        let a: Vec<Complex64> = (0..256)
            .map(|n| Complex64::new(if n % 2 == 0 { 1.0 } else { 1e-6 }, 0.0))
            .collect();
        let u = InteriorFunction::new(a, SobolevIndex::integer(0)).unwrap();
        assert!(matches!(
            estimate_min_sobolev(&u, &[-2, 0]).unwrap().membership,
            ScaleMembership::Inconclusive { .. }
        ));
    }

    #[test]
    fn pointwise_exponents() {
        let radii = default_radii(4096);
        assert_eq!(radii.len(), 8);
        let f1 = pointwise_growth_exponent(&family(1.0, 4096), one(), &radii).unwrap();
        assert!((f1.gamma - 1.0).abs() < 0.01 && !f1.truncation_warning);
        assert!((f1.c - 1.0).abs() < 0.01);
        let f2 = pointwise_growth_exponent(&family(2.0, 4096), one(), &radii).unwrap();
        assert!((f2.gamma - 2.0).abs() < 0.02);

        let bounded = InteriorFunction::new(vec![one(), one()], SobolevIndex::integer(0)).unwrap();
        let fb = pointwise_growth_exponent(&bounded, one(), &radii).unwrap();
        assert!(fb.gamma.abs() < 0.1, "{}", fb.gamma);
        assert!(fb.truncation_warning);
    }

    #[test]
    fn pointwise_validation() {
        let u = family(1.0, 64);
        assert!(pointwise_growth_exponent(&u, one(), &[0.5]).is_err());
        assert!(pointwise_growth_exponent(&u, one(), &[0.6, 0.5]).is_err());
        assert!(pointwise_growth_exponent(&u, one(), &[0.5, 1.0 - 1e-7]).is_err());
    }

    #[test]
    fn decay_classes() {
        let seq = |f: &dyn Fn(f64) -> f64| -> Vec<Complex64> { (0..64).map(|n| Complex64::new(f(n as f64), 0.0)).collect() };
        assert_eq!(classify_decay(&seq(&|n| 2f64.powf(-n))).unwrap(), DecayClass::Smooth);
        assert_eq!(classify_decay(&seq(&|n| n + 1.0)).unwrap(), DecayClass::FiniteOrder);
        assert_eq!(classify_decay(&seq(&|n| n.sqrt().exp())).unwrap(), DecayClass::Neither);
        assert_eq!(classify_decay(&seq(&|n| (-n.sqrt()).exp())).unwrap(), DecayClass::Smooth);
        assert_eq!(classify_decay(&seq(&|n| (n + 1.0).powi(-3))).unwrap(), DecayClass::FiniteOrder);
        assert_eq!(classify_decay(&seq(&|n| (n + 1.0).powi(5))).unwrap(), DecayClass::FiniteOrder);
        assert!(classify_decay(&seq(&|n| n)[..8]).is_err());
    }

    #[test]
    fn decay_classes_at_minimum_support() {
        let seq = |f: &dyn Fn(f64) -> f64| -> Vec<Complex64> { (0..16).map(|n| Complex64::new(f(n as f64), 0.0)).collect() };
        assert_eq!(classify_decay(&seq(&|n| 2f64.powf(-n))).unwrap(), DecayClass::Smooth);
        assert_eq!(classify_decay(&seq(&|n| n + 1.0)).unwrap(), DecayClass::FiniteOrder);
        assert_eq!(classify_decay(&seq(&|n| n.sqrt().exp())).unwrap(), DecayClass::Neither);
    }

    #[test]
    fn predicted_index() {
        assert_eq!(predicted_scale_index(1.0), -1);
        assert_eq!(predicted_scale_index(2.0), -2);
        assert_eq!(predicted_scale_index(0.5), 0);
        assert_eq!(predicted_scale_index(1.3), -1);
    }

    #[test]
    fn report_norm_curve_grows_with_s() {
        let spec = GrowthFamilySpec::new(one(), 1.0, 256).unwrap();
        let r = growth_report(&spec, &[-3, -2, -1, 0, 1], &default_radii(256)).unwrap();
        assert!(r.norm_curve.windows(2).all(|w| w[0].1 <= w[1].1));
        assert_eq!(r.s_min_estimate, Some(-1));
    }
}
