//! Cauchy transform, Hardy decomposition and weak boundary traces.
//!
//! The Cauchy transform of boundary data `f` is the classical integral
//! `(1/2πi)∮ f(ζ)(ζ−z)^{-1} dζ` over the counterclockwise unit circle. On
//! Fourier coefficients it acts as a frequency split: inside the disk it is
//! `Σ_{n≥0} c_n zⁿ`, outside it is `−Σ_{n≤−1} c_n zⁿ`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{check_finite, sobolev_norm, BoundaryDistribution, SobolevIndex};

/// Spectral evaluation of the Cauchy transform is refused closer than this
/// to the unit circle.
pub const BOUNDARY_THRESHOLD: f64 = 1e-9;

const ZERO: Complex64 = Complex64 { re: 0.0, im: 0.0 };

/// `u(z) = Σ_{n=0}^{N} a_n zⁿ`, holomorphic in the unit disk, tagged with
/// the index `s` of the space `O^s(D)` it is considered in.
#[derive(Debug, Clone, PartialEq)]
pub struct InteriorFunction {
    a: Vec<Complex64>,
    s: SobolevIndex,
}

impl InteriorFunction {
    pub fn new(a: Vec<Complex64>, s: SobolevIndex) -> Result<Self> {
        check_finite(&a, "Taylor coefficient")?;
        Ok(InteriorFunction { a, s })
    }

    pub fn zero(s: SobolevIndex) -> Self {
        InteriorFunction { a: Vec::new(), s }
    }

    /// The monomial `zⁿ`.
    pub fn monomial(n: usize, s: SobolevIndex) -> Self {
        let mut a = vec![ZERO; n + 1];
        a[n] = Complex64::new(1.0, 0.0);
        InteriorFunction { a, s }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.a
    }

    /// `a_n`, zero beyond the stored degree.
    pub fn coeff(&self, n: usize) -> Complex64 {
        self.a.get(n).copied().unwrap_or(ZERO)
    }

    pub fn index(&self) -> SobolevIndex {
        self.s
    }

    pub fn with_index(mut self, s: SobolevIndex) -> Self {
        self.s = s;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(|c| *c == ZERO)
    }

    /// Norm of `u` in `O^s(D)`: the `H^{s−1/2}(∂D)` norm of its trace.
    pub fn trace_norm(&self) -> f64 {
        sobolev_norm(&trace_interior(self), self.s.value() - 0.5)
    }
}

/// `v(z) = Σ_{m=1}^{N} b_m z^{−m}`, holomorphic outside the closed disk and
/// vanishing at infinity. `b()[0]` holds `b_1`; there is no constant term.
#[derive(Debug, Clone, PartialEq)]
pub struct ExteriorFunction {
    b: Vec<Complex64>,
    s: SobolevIndex,
}

impl ExteriorFunction {
    /// `b[k]` is the coefficient of `z^{-(k+1)}`.
    pub fn new(b: Vec<Complex64>, s: SobolevIndex) -> Result<Self> {
        check_finite(&b, "Laurent coefficient")?;
        Ok(ExteriorFunction { b, s })
    }

    pub fn zero(s: SobolevIndex) -> Self {
        ExteriorFunction { b: Vec::new(), s }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.b
    }

    /// `b_m` for `m ≥ 1`, zero beyond the stored order and for `m = 0`.
    pub fn coeff(&self, m: usize) -> Complex64 {
        if m == 0 {
            return ZERO;
        }
        self.b.get(m - 1).copied().unwrap_or(ZERO)
    }

    pub fn index(&self) -> SobolevIndex {
        self.s
    }

    pub fn with_index(mut self, s: SobolevIndex) -> Self {
        self.s = s;
        self
    }

    pub fn is_zero(&self) -> bool {
        self.b.iter().all(|c| *c == ZERO)
    }

    /// Largest `m` with `b_m ≠ 0`.
    pub fn order(&self) -> usize {
        self.b.iter().rposition(|c| *c != ZERO).map_or(0, |k| k + 1)
    }

    /// Norm of `v` in `O^s(Ĉ∖D̄)`: the `H^{s−1/2}(∂D)` norm of its trace.
    pub fn trace_norm(&self) -> f64 {
        sobolev_norm(&trace_exterior(self), self.s.value() - 0.5)
    }
}

/// Weak boundary value of an interior function: `c_n = a_n`, `n ≥ 0`.
pub fn trace_interior(u: &InteriorFunction) -> BoundaryDistribution {
    BoundaryDistribution::new(0, u.a.clone()).expect("coefficients already validated")
}

/// Weak boundary value of an exterior function: `c_{−m} = b_m`, `m ≥ 1`.
pub fn trace_exterior(v: &ExteriorFunction) -> BoundaryDistribution {
    let n_min = -(v.b.len() as i64);
    let coeffs = v.b.iter().rev().copied().collect();
    BoundaryDistribution::new(n_min, coeffs).expect("coefficients already validated")
}

fn horner(coeffs: impl DoubleEndedIterator<Item = Complex64>, z: Complex64) -> Complex64 {
    coeffs.rev().fold(ZERO, |acc, c| acc * z + c)
}

/// Cauchy transform `Kf(z)` off the unit circle.
pub fn cauchy_transform(f: &BoundaryDistribution, z: Complex64) -> Result<Complex64> {
    let r = z.norm();
    if !r.is_finite() || (r - 1.0).abs() <= BOUNDARY_THRESHOLD {
        return Err(Error::BoundaryProximity {
            z: z.to_string(),
            threshold: BOUNDARY_THRESHOLD,
        });
    }
    if r < 1.0 {
        let hi = f.n_max().max(-1);
        Ok(horner((0..=hi).map(|n| f.coeff(n)), z))
    } else {
        // −Σ_{m≥1} c_{−m} w^m with w = 1/z
        let w = z.inv();
        let depth = (-f.n_min()).max(0);
        Ok(-(w * horner((1..=depth).map(|m| f.coeff(-m)), w)))
    }
}

/// Splits `f` into `u = (Kf)^−` inside and `v = (Kf)^+` outside, with
/// `a_n = c_n` and `b_m = −c_{−m}`. Boundary data of index `trace_index`
/// yields holomorphic functions of index `trace_index + 1/2`.
pub fn hardy_projections(
    f: &BoundaryDistribution,
    trace_index: f64,
) -> Result<(InteriorFunction, ExteriorFunction)> {
    let s = SobolevIndex::new(trace_index + 0.5)?;
    let a = (0..=f.n_max().max(-1)).map(|n| f.coeff(n)).collect();
    let b = (1..=(-f.n_min()).max(0)).map(|m| -f.coeff(-m)).collect();
    Ok((InteriorFunction { a, s }, ExteriorFunction { b, s }))
}

/// `‖trace(u) − trace(v⁺) − f‖_{L²}` for `(u, v⁺) = hardy_projections(f)`;
/// zero up to rounding by the jump relation.
pub fn jump_residual(f: &BoundaryDistribution) -> f64 {
    let (u, v_plus) = hardy_projections(f, 0.0).expect("finite index");
    let jump = &trace_interior(&u) - &trace_exterior(&v_plus);
    sobolev_norm(&(&jump - f), 0.0)
}

pub fn evaluate_interior(u: &InteriorFunction, z: Complex64) -> Result<Complex64> {
    if !(z.norm() < 1.0) {
        return Err(Error::Domain {
            z: z.to_string(),
            side: "interior",
        });
    }
    Ok(horner(u.a.iter().copied(), z))
}

pub fn evaluate_exterior(v: &ExteriorFunction, z: Complex64) -> Result<Complex64> {
    let r = z.norm();
    if !(r > 1.0) {
        return Err(Error::Domain {
            z: z.to_string(),
            side: "exterior",
        });
    }
    if r.is_infinite() {
        return Ok(ZERO);
    }
    let w = z.inv();
    Ok(w * horner(v.b.iter().copied(), w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn s0() -> SobolevIndex {
        SobolevIndex::integer(0)
    }

    #[test]
    fn interior_trace() {
        let u = InteriorFunction::new(vec![c(1.0, 0.0), c(1.0, 0.0)], s0()).unwrap();
        let t = trace_interior(&u);
        assert_eq!((t.coeff(0), t.coeff(1), t.coeff(-1)), (c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)));
        assert!(trace_interior(&InteriorFunction::zero(s0())).is_zero());

        let u = InteriorFunction::new(vec![c(1.0, 0.0), c(0.0, 2.0), c(-3.0, 1.0)], SobolevIndex::integer(2)).unwrap();
        let direct: f64 = u
            .coeffs()
            .iter()
            .enumerate()
            .map(|(n, a)| (1.0 + (n * n) as f64).powf(1.5) * a.norm_sqr())
            .sum::<f64>()
            .sqrt();
        assert!((u.trace_norm() - direct).abs() < 1e-12 * direct);
    }

    #[test]
    fn exterior_trace() {
        let v = ExteriorFunction::new(vec![c(1.0, 0.0)], s0()).unwrap();
        assert_eq!(trace_exterior(&v).coeff(-1), c(1.0, 0.0));
        let v = ExteriorFunction::new(vec![c(0.0, 0.0), c(2.0, 0.0)], s0()).unwrap();
        let t = trace_exterior(&v);
        assert_eq!((t.coeff(-2), t.coeff(-1)), (c(2.0, 0.0), c(0.0, 0.0)));
        assert!(trace_exterior(&ExteriorFunction::zero(s0())).is_zero());
    }

    #[test]
    fn cauchy_transform_branches() {
        let f = BoundaryDistribution::new(0, vec![c(1.0, 0.0), c(1.0, 0.0)]).unwrap();
        assert!((cauchy_transform(&f, c(0.5, 0.0)).unwrap() - 1.5).norm() < 1e-15);
        assert_eq!(cauchy_transform(&f, c(2.0, 0.0)).unwrap(), c(0.0, 0.0));

        let g = BoundaryDistribution::from_modes(&[(-1, c(1.0, 0.0))]).unwrap();
        assert!((cauchy_transform(&g, c(2.0, 0.0)).unwrap() + 0.5).norm() < 1e-15);
        assert_eq!(cauchy_transform(&g, c(0.5, 0.0)).unwrap(), c(0.0, 0.0));
    }

    #[test]
    fn cauchy_transform_refuses_boundary() {
        let f = BoundaryDistribution::from_modes(&[(0, c(1.0, 0.0))]).unwrap();
        let err = cauchy_transform(&f, c(1.0 + 1e-10, 0.0)).unwrap_err();
        assert!(matches!(err, Error::BoundaryProximity { threshold, .. } if threshold == 1e-9));
        assert!(err.to_string().contains("1e-9"));
        assert!(cauchy_transform(&f, c(0.0, 1.0 - 1e-8)).is_ok());
    }

    #[test]
    fn projections_split_frequencies() {
        let f = BoundaryDistribution::new(-1, vec![c(1.0, 0.0), c(5.0, 0.0), c(1.0, 0.0)]).unwrap();
        let (u, v) = hardy_projections(&f, -0.5).unwrap();
        assert_eq!(u.coeffs(), &[c(5.0, 0.0), c(1.0, 0.0)]);
        assert_eq!(v.coeffs(), &[c(-1.0, 0.0)]);
        assert_eq!(u.index().value(), 0.0);
        assert_eq!(jump_residual(&f), 0.0);

        let pos = BoundaryDistribution::new(2, vec![c(1.0, 1.0)]).unwrap();
        let (_, v) = hardy_projections(&pos, 0.0).unwrap();
        assert!(v.is_zero());
    }

    #[test]
    fn evaluation() {
        let u = InteriorFunction::new(vec![c(1.0, 0.0), c(2.0, 0.0)], s0()).unwrap();
        assert_eq!(evaluate_interior(&u, c(0.5, 0.0)).unwrap(), c(2.0, 0.0));
        assert!(matches!(evaluate_interior(&u, c(1.0, 0.0)), Err(Error::Domain { .. })));

        let v = ExteriorFunction::new(vec![c(1.0, 0.0)], s0()).unwrap();
        assert_eq!(evaluate_exterior(&v, c(2.0, 0.0)).unwrap(), c(0.5, 0.0));
        assert!(matches!(evaluate_exterior(&v, c(0.5, 0.0)), Err(Error::Domain { .. })));

        let v = ExteriorFunction::new(vec![c(3.0, 0.0), c(4.0, 0.0)], s0()).unwrap();
        let z = c(0.0, 2.0);
        let direct = 3.0 / z + 4.0 / (z * z);
        let got = evaluate_exterior(&v, z).unwrap();
        assert!((got - c(-1.0, -1.5)).norm() < 1e-15);
        assert!((got - direct).norm() < 1e-15);
        assert!(evaluate_exterior(&v, c(1e300, 0.0)).unwrap().norm() < 1e-299);
    }
}
