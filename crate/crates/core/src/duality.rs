//! Duality between `O^s(D)` and `O^{1−s}(Ĉ∖D̄)`.
//!
//! An exterior function `v` acts on interior functions through the contour
//! pairing `f_v(u) = (1/2πi)∮ u v dζ = Σ_{n≥0} a_n b_{n+1}`. This module
//! builds such functionals, computes their dual norm in closed form and by
//! direct maximisation, represents an arbitrary functional given by boundary
//! data `w` as `v = −(Kw)^+`, recovers `v` from black-box access by moment
//! probing, and runs the verification suites.

use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::growth::{classify_decay, DecayClass};
use crate::hardy::{hardy_projections, trace_exterior, trace_interior, ExteriorFunction, InteriorFunction};
use crate::report::{Check, TheoremReport};
use crate::rng::{complex_normal, random_boundary, random_exterior, random_interior, seeded, trial_rng};
use crate::spectral::{koethe_pairing, sobolev_weight, BoundaryDistribution, SobolevIndex};

/// Tolerances of the Theorem 1 suite.
pub const INJECTIVITY_TOL: f64 = 1e-13;
pub const SURJECTIVITY_TOL: f64 = 1e-12;
pub const BRUTEFORCE_TOL: f64 = 1e-6;
pub const BRUTEFORCE_EXCESS_TOL: f64 = 1e-9;
/// Relative slack on bounds that are attained exactly by extremal data.
pub const ROUNDING_SLACK: f64 = 1e-12;
/// Tail share certified by the scale-pairing suite.
pub const SCALE_TAIL_TOL: f64 = 1e-10;

/// The functional `f_v` on `O^s(D)` represented by an exterior function.
#[derive(Debug, Clone, PartialEq)]
pub struct DualFunctional {
    v: ExteriorFunction,
    s: i32,
}

impl DualFunctional {
    pub fn representative(&self) -> &ExteriorFunction {
        &self.v
    }

    /// Index of the domain space `O^s(D)`.
    pub fn domain_index(&self) -> i32 {
        self.s
    }

    pub fn apply(&self, u: &InteriorFunction) -> Complex64 {
        apply_functional(self, u)
    }
}

pub fn functional_from_exterior(v: &ExteriorFunction, s: i32) -> DualFunctional {
    DualFunctional { v: v.clone(), s }
}

/// `f_v(u) = κ(u|∂D, v|∂D) = Σ_{n≥0} a_n b_{n+1}`.
pub fn apply_functional(f: &DualFunctional, u: &InteriorFunction) -> Complex64 {
    koethe_pairing(&trace_interior(u), &trace_exterior(&f.v)).value()
}

/// Exterior representative `v = −(Kw)^+` of `u ↦ κ(u|∂D, w)`, so that
/// `b_m = c_{−m}(w)`. Nonnegative frequencies of `w` pair to zero against
/// every interior function and drop out.
pub fn represent_functional(w: &BoundaryDistribution, s: i32) -> ExteriorFunction {
    let (_, v_plus) = hardy_projections(w, 0.5 - f64::from(s)).expect("integer index is finite");
    let b = v_plus.coeffs().iter().map(|c| -c).collect();
    ExteriorFunction::new(b, SobolevIndex::integer(1 - s)).expect("finite coefficients")
}

/// `‖f_v‖ = (Σ_{m≥1} (1+(m−1)²)^{1/2−s} |b_m|²)^{1/2}`, the dual of the
/// weighted ℓ² norm `‖u‖ = ‖u|∂D‖_{H^{s−1/2}}`.
pub fn functional_norm_closed_form(f: &DualFunctional) -> f64 {
    let exponent = 0.5 - f64::from(f.s);
    f.v.coeffs()
        .iter()
        .enumerate()
        .map(|(k, b)| sobolev_weight(k as i64, exponent) * b.norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// The interior function attaining the dual norm:
/// `a_n = conj(b_{n+1}) (1+n²)^{1/2−s}`.
pub fn norm_maximizer(f: &DualFunctional, degree_bound: usize) -> InteriorFunction {
    let exponent = 0.5 - f64::from(f.s);
    let a = (0..degree_bound)
        .map(|n| f.v.coeff(n + 1).conj() * sobolev_weight(n as i64, exponent))
        .collect();
    InteriorFunction::new(a, SobolevIndex::integer(f.s)).expect("finite coefficients")
}

fn ratio(f: &DualFunctional, u: &InteriorFunction) -> f64 {
    let norm = u.trace_norm();
    if norm == 0.0 {
        0.0
    } else {
        apply_functional(f, u).norm() / norm
    }
}

/// `max |f(u)| / ‖u‖` over the analytic maximiser and `iterations` random
/// probes of degree `< N`.
pub fn functional_norm_bruteforce(f: &DualFunctional, n: usize, iterations: usize, seed: u64) -> Result<f64> {
    let order = f.v.order();
    if n < order {
        return Err(Error::Truncation {
            requested: n,
            required: order,
        });
    }
    if iterations == 0 {
        return Err(Error::InvalidData("at least one probe is required".into()));
    }
    let s = SobolevIndex::integer(f.s);
    let mut best = ratio(f, &norm_maximizer(f, n));
    let mut rng = seeded(seed);
    for _ in 0..iterations {
        let probe = random_interior(&mut rng, n, s);
        best = best.max(ratio(f, &probe));
    }
    Ok(best)
}

/// Recovers the representative of a linear functional known only through
/// its values: `b_{n+1} = eval(zⁿ)` for `n < N`. The result lives in
/// `O^{1−s}` for a functional on `O^s(D)`.
pub fn reconstruct_exterior_from_blackbox<F>(eval: F, n: usize, s: i32) -> ExteriorFunction
where
    F: Fn(&InteriorFunction) -> Complex64,
{
    let domain = SobolevIndex::integer(s);
    let b = (0..n).map(|k| eval(&InteriorFunction::monomial(k, domain))).collect();
    ExteriorFunction::new(b, SobolevIndex::integer(1 - s)).expect("oracle values must be finite")
}

/// `sup_{n≥0} (1+(n+1)²)/(1+n²)`, attained at `n = 1`. The contour pairing
/// shifts frequency by one, so weights of neighbouring frequencies differ by
/// at most this factor.
pub const SHIFT_WEIGHT_RATIO: f64 = 2.5;

/// `[(5/2)^{−|s−1/2|/2}, (5/2)^{|s−1/2|/2}]`, the sharp range of
/// `‖f_v‖ / ‖v|∂D‖_{H^{1/2−s}}`. The extremes are attained by `v = 1/z²`.
pub fn norm_equivalence_bounds(s: i32) -> (f64, f64) {
    let e = (f64::from(s) - 0.5).abs() / 2.0;
    (SHIFT_WEIGHT_RATIO.powf(-e), SHIFT_WEIGHT_RATIO.powf(e))
}

/// Measurements from one Theorem 1 trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TrialOutcome {
    pub injectivity_error: f64,
    pub surjectivity_error: f64,
    pub annihilation_error: f64,
    /// `None` when `v = 0`.
    pub norm_ratio: Option<f64>,
    pub continuity_ratio: Option<f64>,
    pub bruteforce_gap: Option<f64>,
    pub bruteforce_excess: Option<f64>,
}

/// Runs every Theorem 1 identity on one `(v, w, u)` triple.
pub fn theorem1_trial(v: &ExteriorFunction, w: &BoundaryDistribution, u: &InteriorFunction, s: i32, n: usize, seed: u64) -> Result<TrialOutcome> {
    let v = v.clone().with_index(SobolevIndex::integer(1 - s));
    let u = u.clone().with_index(SobolevIndex::integer(s));
    let f = functional_from_exterior(&v, s);

    // injectivity: moments of f_v determine v
    let recovered = reconstruct_exterior_from_blackbox(|x| f.apply(x), n.max(v.coeffs().len()), s);
    let injectivity_error = (1..=recovered.coeffs().len().max(v.coeffs().len()))
        .map(|m| (recovered.coeff(m) - v.coeff(m)).norm())
        .fold(0.0, f64::max);

    // surjectivity: the representative of w reproduces κ(·, w)
    let rep = functional_from_exterior(&represent_functional(w, s), s);
    let lhs = rep.apply(&u);
    let rhs = koethe_pairing(&trace_interior(&u), w).value();
    let scale: f64 = u
        .coeffs()
        .iter()
        .enumerate()
        .map(|(k, a)| a.norm() * w.coeff(-1 - k as i64).norm())
        .sum();
    let surjectivity_error = (lhs - rhs).norm() / scale.max(f64::MIN_POSITIVE);

    // interior traces are annihilated
    let annihilation_error = represent_functional(&trace_interior(&u), s)
        .coeffs()
        .iter()
        .map(|c| c.norm())
        .fold(0.0, f64::max);

    if v.is_zero() {
        return Ok(TrialOutcome {
            injectivity_error,
            surjectivity_error,
            annihilation_error,
            norm_ratio: None,
            continuity_ratio: None,
            bruteforce_gap: None,
            bruteforce_excess: None,
        });
    }

    let closed = functional_norm_closed_form(&f);
    let norm_ratio = closed / v.trace_norm();
    let u_norm = u.trace_norm();
    let continuity_ratio = if u_norm > 0.0 {
        f.apply(&u).norm() / (closed * u_norm)
    } else {
        0.0
    };
    let brute = functional_norm_bruteforce(&f, n.max(v.order()), 8, seed)?;
    Ok(TrialOutcome {
        injectivity_error,
        surjectivity_error,
        annihilation_error,
        norm_ratio: Some(norm_ratio),
        continuity_ratio: Some(continuity_ratio),
        bruteforce_gap: Some((brute - closed).abs()),
        bruteforce_excess: Some((brute - closed) / closed.max(1.0)),
    })
}

/// Aggregates trial outcomes into the Theorem 1 report.
pub fn theorem1_report(s: i32, seed: u64, outcomes: &[TrialOutcome]) -> TheoremReport {
    let max = |f: &dyn Fn(&TrialOutcome) -> Option<f64>| outcomes.iter().filter_map(f).fold(0.0, f64::max);
    let ratios: Vec<f64> = outcomes.iter().filter_map(|o| o.norm_ratio).collect();
    let (lo, hi) = norm_equivalence_bounds(s);

    let mut checks = vec![
        Check::at_most("injectivity_roundtrip", max(&|o| Some(o.injectivity_error)), INJECTIVITY_TOL),
        Check::at_most("surjectivity_identity", max(&|o| Some(o.surjectivity_error)), SURJECTIVITY_TOL),
        Check::at_most("interior_annihilation", max(&|o| Some(o.annihilation_error)), 0.0),
    ];
    let mut notes = Vec::new();
    let degenerate = outcomes.len() - ratios.len();
    if degenerate > 0 {
        notes.push(format!("degenerate input: {degenerate} trial(s) with v = 0, ratio checks skipped"));
    }
    if !ratios.is_empty() {
        let min_ratio = ratios.iter().copied().fold(f64::INFINITY, f64::min);
        let max_ratio = ratios.iter().copied().fold(0.0, f64::max);
        checks.push(Check::at_least("norm_ratio_min", min_ratio, lo * (1.0 - ROUNDING_SLACK)));
        checks.push(Check::at_most("norm_ratio_max", max_ratio, hi * (1.0 + ROUNDING_SLACK)));
        checks.push(Check::at_most("continuity", max(&|o| o.continuity_ratio), 1.0 + ROUNDING_SLACK));
        checks.push(Check::at_most("bruteforce_dual_norm_gap", max(&|o| o.bruteforce_gap), BRUTEFORCE_TOL));
        checks.push(Check::at_most("bruteforce_excess", max(&|o| o.bruteforce_excess), BRUTEFORCE_EXCESS_TOL));
    }
    TheoremReport::new("theorem1", Some(s), seed, checks, notes)
}

/// Randomised check of the isomorphism `(O^s(D))* ≅ O^{1−s}(Ĉ∖D̄)` at
/// truncation `N`: injectivity, surjectivity, norm equivalence, continuity
/// and the dual norm. Trials run in parallel on independent streams.
pub fn verify_theorem1(s: i32, trials: usize, n: usize, seed: u64) -> Result<TheoremReport> {
    if trials == 0 {
        return Err(Error::InvalidData("at least one trial is required".into()));
    }
    if n == 0 {
        return Err(Error::InvalidData("truncation must be positive".into()));
    }
    let outcomes = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let mut rng = trial_rng(seed, t);
            let v = random_exterior(&mut rng, n, SobolevIndex::integer(1 - s));
            let w = random_boundary(&mut rng, -(n as i64), n as i64);
            let u = random_interior(&mut rng, n, SobolevIndex::integer(s));
            let probe_seed: u64 = rng.random();
            theorem1_trial(&v, &w, &u, s, n, probe_seed)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(theorem1_report(s, seed, &outcomes))
}

/// Magnitude profile of a coefficient family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Envelope {
    /// `j^k` with `j = n+1` inside and `j = m` outside: finite order.
    Polynomial { degree: i32 },
    /// `ρ^n` inside and `ρ^m` outside: smooth up to the boundary.
    Geometric { ratio: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Interior,
    Exterior,
}

/// An infinite coefficient sequence `scale · envelope · e^{2πi·phase·index}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoefficientFamily {
    pub envelope: Envelope,
    pub scale: Complex64,
    pub phase_step: f64,
}

impl CoefficientFamily {
    pub fn polynomial(degree: i32) -> Self {
        CoefficientFamily {
            envelope: Envelope::Polynomial { degree },
            scale: Complex64::new(1.0, 0.0),
            phase_step: 0.0,
        }
    }

    pub fn geometric(ratio: f64) -> Self {
        CoefficientFamily {
            envelope: Envelope::Geometric { ratio },
            scale: Complex64::new(1.0, 0.0),
            phase_step: 0.0,
        }
    }

    fn validate(&self) -> Result<()> {
        match self.envelope {
            Envelope::Geometric { ratio } if !(ratio > 0.0 && ratio < 1.0) => Err(Error::InvalidFamily(format!(
                "smooth side must decay geometrically, ratio {ratio} is not in (0, 1)"
            ))),
            _ if !(self.scale.re.is_finite() && self.scale.im.is_finite() && self.phase_step.is_finite()) => {
                Err(Error::InvalidFamily("non-finite family parameters".into()))
            }
            _ => Ok(()),
        }
    }

    fn is_smooth(&self) -> bool {
        matches!(self.envelope, Envelope::Geometric { .. })
    }

    fn envelope_value(&self, side: Side, power: usize) -> f64 {
        match self.envelope {
            Envelope::Polynomial { degree } => {
                let j = match side {
                    Side::Interior => power + 1,
                    Side::Exterior => power,
                };
                (j as f64).powi(degree)
            }
            Envelope::Geometric { ratio } => ratio.powi(power as i32),
        }
    }

    /// `|coefficient|` at `power` (`n` for interior, `m` for exterior).
    pub fn magnitude(&self, side: Side, power: usize) -> f64 {
        self.scale.norm() * self.envelope_value(side, power)
    }

    pub fn coefficient(&self, side: Side, power: usize) -> Complex64 {
        let phase = std::f64::consts::TAU * (self.phase_step * power as f64).fract();
        self.scale * Complex64::from_polar(self.envelope_value(side, power), phase)
    }

    pub fn interior(&self, n: usize) -> Result<InteriorFunction> {
        InteriorFunction::new(
            (0..n).map(|k| self.coefficient(Side::Interior, k)).collect(),
            SobolevIndex::integer(0),
        )
    }

    pub fn exterior(&self, n: usize) -> Result<ExteriorFunction> {
        ExteriorFunction::new(
            (1..=n).map(|m| self.coefficient(Side::Exterior, m)).collect(),
            SobolevIndex::integer(0),
        )
    }
}

/// Absolute-convergence certificate for `κ = Σ a_n b_{n+1}` truncated to
/// `n < N`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScalePairingCertificate {
    pub truncated_sum: Complex64,
    pub absolute_sum: f64,
    /// Rigorous ratio-test bound on `Σ_{n≥N} |a_n b_{n+1}|`.
    pub tail_bound: f64,
    /// Directly summed `Σ_{n≥N} |a_n b_{n+1}|` until terms underflow.
    pub measured_tail: f64,
    pub relative_tail: f64,
}

fn term_magnitude(interior: &CoefficientFamily, exterior: &CoefficientFamily, n: usize) -> f64 {
    interior.magnitude(Side::Interior, n) * exterior.magnitude(Side::Exterior, n + 1)
}

/// Certifies that the truncated pairing of a finite-order family against a
/// smooth one has a negligible tail. Two finite-order families are refused:
/// their pairing need not converge.
pub fn certify_scale_pairing(interior: &CoefficientFamily, exterior: &CoefficientFamily, n: usize) -> Result<ScalePairingCertificate> {
    interior.validate()?;
    exterior.validate()?;
    if !interior.is_smooth() && !exterior.is_smooth() {
        return Err(Error::InvalidFamily(
            "both sides grow polynomially; the pairing is only defined against a smooth side".into(),
        ));
    }
    if n == 0 {
        return Err(Error::InvalidData("truncation must be positive".into()));
    }

    let truncated_sum: Complex64 = (0..n)
        .map(|k| interior.coefficient(Side::Interior, k) * exterior.coefficient(Side::Exterior, k + 1))
        .sum();
    let absolute_sum: f64 = (0..n).map(|k| term_magnitude(interior, exterior, k)).sum();

    // t_{k+1}/t_k ≤ q for all k ≥ N
    let mut contraction = 1.0;
    for family in [interior, exterior] {
        contraction *= match family.envelope {
            Envelope::Geometric { ratio } => ratio,
            // both sides sit at position j = k + 1 in term k
            Envelope::Polynomial { degree } => {
                let j = (n + 1) as f64;
                ((j + 1.0) / j).powi(degree.max(0))
            }
        };
    }
    let first = term_magnitude(interior, exterior, n);
    let tail_bound = if contraction < 1.0 {
        first / (1.0 - contraction)
    } else {
        f64::INFINITY
    };

    let mut measured_tail = 0.0;
    let mut k = n;
    loop {
        let t = term_magnitude(interior, exterior, k);
        measured_tail += t;
        if t <= f64::EPSILON * measured_tail || t == 0.0 || k > n + 100_000 {
            break;
        }
        k += 1;
    }

    let relative_tail = if absolute_sum > 0.0 {
        tail_bound / absolute_sum
    } else if tail_bound == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    Ok(ScalePairingCertificate {
        truncated_sum,
        absolute_sum,
        tail_bound,
        measured_tail,
        relative_tail,
    })
}

/// Which side of the pairing carries the finite-order family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScaleDirection {
    /// Finite-order interior against smooth exterior.
    InteriorFiniteOrder,
    /// Smooth interior against finite-order exterior.
    ExteriorFiniteOrder,
}

/// Checks the pairing of two explicit families at truncation `N`.
pub fn verify_scale_pairing_families(
    interior: &CoefficientFamily,
    exterior: &CoefficientFamily,
    n: usize,
    seed: u64,
) -> Result<TheoremReport> {
    let cert = certify_scale_pairing(interior, exterior, n)?;
    let interior_class = classify_decay(interior.interior(n)?.coeffs())?;
    let exterior_class = classify_decay(exterior.exterior(n)?.coeffs())?;
    let expected = |f: &CoefficientFamily| if f.is_smooth() { DecayClass::Smooth } else { DecayClass::FiniteOrder };

    let checks = vec![
        Check::at_most("tail_share", cert.relative_tail, SCALE_TAIL_TOL),
        Check::at_most("measured_tail_within_bound", cert.measured_tail, cert.tail_bound * (1.0 + ROUNDING_SLACK)),
        Check::flag("truncated_sum_finite", cert.truncated_sum.re.is_finite() && cert.truncated_sum.im.is_finite()),
        Check::flag("interior_decay_class", interior_class == expected(interior)),
        Check::flag("exterior_decay_class", exterior_class == expected(exterior)),
    ];
    let notes = vec![
        format!("interior {:?} classified {:?}", interior.envelope, interior_class),
        format!("exterior {:?} classified {:?}", exterior.envelope, exterior_class),
    ];
    let suite = if interior.is_smooth() && !exterior.is_smooth() {
        "scale_pairing_exterior_finite_order"
    } else {
        "scale_pairing_interior_finite_order"
    };
    Ok(TheoremReport::new(suite, None, seed, checks, notes))
}

/// Draws a random finite-order family and a random smooth family for the
/// requested role assignment and certifies their pairing.
pub fn verify_scale_pairing(direction: ScaleDirection, n: usize, seed: u64) -> Result<TheoremReport> {
    let mut rng = seeded(seed);
    let finite = CoefficientFamily {
        envelope: Envelope::Polynomial {
            degree: rng.random_range(-1..=3),
        },
        scale: complex_normal(&mut rng),
        phase_step: rng.random(),
    };
    let smooth = CoefficientFamily {
        envelope: Envelope::Geometric {
            ratio: rng.random_range(0.2..=0.5),
        },
        scale: complex_normal(&mut rng),
        phase_step: rng.random(),
    };
    let (interior, exterior) = match direction {
        ScaleDirection::InteriorFiniteOrder => (finite, smooth),
        ScaleDirection::ExteriorFiniteOrder => (smooth, finite),
    };
    verify_scale_pairing_families(&interior, &exterior, n, seed)
}
