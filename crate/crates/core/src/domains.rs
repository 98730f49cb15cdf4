//! Smooth Jordan curves and trapezoid-rule contour quadrature.
//!
//! On a closed C^∞ curve the periodic trapezoid rule converges faster than
//! any power of the node count, which makes it a cheap independent oracle
//! for the spectral identities on the unit circle.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::spectral::{check_finite, PairingValue};

/// Anything that maps a parameter `θ ∈ [0, 2π)` onto a closed curve.
pub trait Parametrization {
    fn position(&self, theta: f64) -> Complex64;
    fn derivative(&self, theta: f64) -> Complex64;
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveKind {
    Circle { radius: f64 },
    /// `ζ = p cos θ + i q sin θ`.
    Ellipse { p: f64, q: f64 },
    /// `ζ = (1 + ε cos kθ) e^{iθ}`.
    PerturbedCircle { eps: f64, k: u32 },
}

/// A positively oriented smooth Jordan curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurveDescriptor {
    kind: CurveKind,
}

impl CurveDescriptor {
    pub fn new(kind: CurveKind) -> Result<Self> {
        let ok = match kind {
            CurveKind::Circle { radius } => radius.is_finite() && radius > 0.0,
            CurveKind::Ellipse { p, q } => p.is_finite() && q.is_finite() && p > 0.0 && q > 0.0,
            CurveKind::PerturbedCircle { eps, k } => eps.is_finite() && (0.0..1.0).contains(&eps) && k >= 1,
        };
        if !ok {
            return Err(Error::InvalidCurve(format!("parameters out of range: {kind:?}")));
        }
        let curve = CurveDescriptor { kind };
        // |ζ'| > 0 on a fine grid
        let grid = 1024;
        if (0..grid).any(|j| curve.derivative(2.0 * PI * j as f64 / grid as f64).norm() <= 1e-12) {
            return Err(Error::InvalidCurve(format!("vanishing tangent on {kind:?}")));
        }
        Ok(curve)
    }

    pub fn unit_circle() -> Self {
        CurveDescriptor {
            kind: CurveKind::Circle { radius: 1.0 },
        }
    }

    pub fn circle(radius: f64) -> Result<Self> {
        Self::new(CurveKind::Circle { radius })
    }

    pub fn ellipse(p: f64, q: f64) -> Result<Self> {
        Self::new(CurveKind::Ellipse { p, q })
    }

    pub fn perturbed_circle(eps: f64, k: u32) -> Result<Self> {
        Self::new(CurveKind::PerturbedCircle { eps, k })
    }

    pub fn kind(&self) -> CurveKind {
        self.kind
    }

    pub fn is_unit_circle(&self) -> bool {
        self.kind == CurveKind::Circle { radius: 1.0 }
    }

    /// Whether `z` lies in the bounded component cut out by the curve.
    pub fn encloses(&self, z: Complex64) -> bool {
        match self.kind {
            CurveKind::Circle { radius } => z.norm() < radius,
            CurveKind::Ellipse { p, q } => (z.re / p).powi(2) + (z.im / q).powi(2) < 1.0,
            // star-shaped about the origin
            CurveKind::PerturbedCircle { eps, k } => {
                let theta = z.arg();
                z.norm() < 1.0 + eps * (f64::from(k) * theta).cos()
            }
        }
    }

    /// Curve traversed clockwise; only used to check orientation behaviour.
    pub fn reversed(&self) -> Reversed<'_> {
        Reversed(self)
    }
}

impl Parametrization for CurveDescriptor {
    fn position(&self, theta: f64) -> Complex64 {
        match self.kind {
            CurveKind::Circle { radius } => Complex64::from_polar(radius, theta),
            CurveKind::Ellipse { p, q } => Complex64::new(p * theta.cos(), q * theta.sin()),
            CurveKind::PerturbedCircle { eps, k } => {
                Complex64::from_polar(1.0 + eps * (f64::from(k) * theta).cos(), theta)
            }
        }
    }

    fn derivative(&self, theta: f64) -> Complex64 {
        match self.kind {
            CurveKind::Circle { radius } => Complex64::i() * Complex64::from_polar(radius, theta),
            CurveKind::Ellipse { p, q } => Complex64::new(-p * theta.sin(), q * theta.cos()),
            CurveKind::PerturbedCircle { eps, k } => {
                let k = f64::from(k);
                let rho = 1.0 + eps * (k * theta).cos();
                let drho = -eps * k * (k * theta).sin();
                Complex64::from_polar(1.0, theta) * Complex64::new(drho, rho)
            }
        }
    }
}

impl fmt::Display for CurveDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            CurveKind::Circle { radius } => write!(f, "circle:{radius}"),
            CurveKind::Ellipse { p, q } => write!(f, "ellipse:{p},{q}"),
            CurveKind::PerturbedCircle { eps, k } => write!(f, "perturbed:{eps},{k}"),
        }
    }
}

/// Parses `circle:R`, `ellipse:p,q` or `perturbed:eps,k`.
impl FromStr for CurveDescriptor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (name, params) = s.split_once(':').unwrap_or((s, ""));
        let nums: Vec<f64> = if params.is_empty() {
            Vec::new()
        } else {
            params
                .split(',')
                .map(|p| p.trim().parse::<f64>())
                .collect::<std::result::Result<_, _>>()
                .map_err(|e| Error::InvalidCurve(format!("bad parameter in {s:?}: {e}")))?
        };
        match (name, nums.as_slice()) {
            ("circle", []) => Self::circle(1.0),
            ("circle", [r]) => Self::circle(*r),
            ("ellipse", [p, q]) => Self::ellipse(*p, *q),
            ("perturbed", [eps, k]) if k.fract() == 0.0 && *k >= 1.0 => {
                Self::perturbed_circle(*eps, *k as u32)
            }
            _ => Err(Error::InvalidCurve(format!(
                "unrecognised curve {s:?}; expected circle:R, ellipse:p,q or perturbed:eps,k"
            ))),
        }
    }
}

/// A curve traversed in the opposite direction.
#[derive(Debug, Clone, Copy)]
pub struct Reversed<'a>(&'a CurveDescriptor);

impl Parametrization for Reversed<'_> {
    fn position(&self, theta: f64) -> Complex64 {
        self.0.position(-theta)
    }

    fn derivative(&self, theta: f64) -> Complex64 {
        -self.0.derivative(-theta)
    }
}

/// `M` equispaced nodes `θ_j = 2πj/M` with weights `2π/M`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QuadratureGrid {
    m: usize,
}

impl QuadratureGrid {
    pub const MIN_NODES: usize = 16;

    pub fn new(m: usize) -> Result<Self> {
        if m < Self::MIN_NODES || !m.is_multiple_of(2) {
            return Err(Error::InvalidGrid(format!(
                "quadrature needs an even node count >= {}, got {m}",
                Self::MIN_NODES
            )));
        }
        Ok(QuadratureGrid { m })
    }

    pub fn len(&self) -> usize {
        self.m
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn weight(&self) -> f64 {
        2.0 * PI / self.m as f64
    }

    pub fn theta(&self, j: usize) -> f64 {
        2.0 * PI * j as f64 / self.m as f64
    }

    pub fn nodes<'a>(&'a self, curve: &'a impl Parametrization) -> impl Iterator<Item = Complex64> + 'a {
        (0..self.m).map(move |j| curve.position(self.theta(j)))
    }

    /// `g(ζ(θ_j))` for every node.
    pub fn sample(&self, curve: &impl Parametrization, g: impl Fn(Complex64) -> Complex64) -> Vec<Complex64> {
        self.nodes(curve).map(g).collect()
    }
}

fn check_len(values: &[Complex64], grid: &QuadratureGrid) -> Result<()> {
    if values.len() != grid.len() {
        return Err(Error::InvalidData(format!(
            "{} node values supplied for a {}-node grid",
            values.len(),
            grid.len()
        )));
    }
    check_finite(values, "node value")
}

/// `(2π/M) Σ_j g_j ζ'(θ_j)`, the trapezoid approximation of `∮ g dζ`.
pub fn contour_integral(values: &[Complex64], curve: &impl Parametrization, grid: &QuadratureGrid) -> Result<Complex64> {
    check_len(values, grid)?;
    let sum: Complex64 = values
        .iter()
        .enumerate()
        .map(|(j, g)| g * curve.derivative(grid.theta(j)))
        .sum();
    Ok(sum * grid.weight())
}

/// Trapezoid approximation of the arc length.
pub fn arc_length(curve: &impl Parametrization, grid: &QuadratureGrid) -> f64 {
    (0..grid.len())
        .map(|j| curve.derivative(grid.theta(j)).norm())
        .sum::<f64>()
        * grid.weight()
}

/// Smallest node-to-point distance; a proxy for `dist(z, curve)` that is
/// accurate to `O(h²)` at the resolutions the proximity bound admits.
pub fn distance_to_nodes(curve: &impl Parametrization, grid: &QuadratureGrid, z: Complex64) -> f64 {
    grid.nodes(curve).map(|zeta| (zeta - z).norm()).fold(f64::INFINITY, f64::min)
}

/// Evaluation must stay this far from the curve: `10 · length / M`.
pub fn proximity_bound(curve: &impl Parametrization, grid: &QuadratureGrid) -> f64 {
    10.0 * arc_length(curve, grid) / grid.len() as f64
}

/// `(1/2πi) ∮ f(ζ) (ζ − z)^{-1} dζ` by the trapezoid rule.
pub fn cauchy_integral_quadrature(
    values: &[Complex64],
    curve: &impl Parametrization,
    grid: &QuadratureGrid,
    z: Complex64,
) -> Result<Complex64> {
    check_len(values, grid)?;
    let bound = proximity_bound(curve, grid);
    let distance = distance_to_nodes(curve, grid, z);
    if !(distance > bound) {
        return Err(Error::QuadratureProximity {
            z: z.to_string(),
            distance,
            bound,
        });
    }
    let kernel: Vec<Complex64> = grid
        .nodes(curve)
        .zip(values)
        .map(|(zeta, f)| f / (zeta - z))
        .collect();
    Ok(contour_integral(&kernel, curve, grid)? / (2.0 * PI * Complex64::i()))
}

/// `(1/2πi) ∮ u v dζ` by the trapezoid rule.
pub fn pairing_quadrature(
    u_values: &[Complex64],
    v_values: &[Complex64],
    curve: &impl Parametrization,
    grid: &QuadratureGrid,
) -> Result<PairingValue> {
    check_len(u_values, grid)?;
    check_len(v_values, grid)?;
    let product: Vec<Complex64> = u_values.iter().zip(v_values).map(|(u, v)| u * v).collect();
    Ok(PairingValue(
        contour_integral(&product, curve, grid)? / (2.0 * PI * Complex64::i()),
    ))
}
