//! JSON coefficient files.
//!
//! ```json
//! {"kind": "interior", "n_min": 0, "coeffs": [[1.0, 0.0], [2.0, 0.0]], "s": 0.0}
//! ```
//!
//! Coefficients ascend in frequency starting at `n_min`. Interior files hold
//! frequencies `>= 0` and exterior files frequencies `<= -1`, so an exterior
//! function `Σ b_m z^{-m}` of order `N` is stored from `n_min = -N` as
//! `[b_N, …, b_1]`.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hardy::{trace_exterior, trace_interior, ExteriorFunction, InteriorFunction};
use crate::spectral::{BoundaryDistribution, SobolevIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientKind {
    Boundary,
    Interior,
    Exterior,
}

/// On-disk layout of a coefficient file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoefficientFile {
    pub kind: CoefficientKind,
    pub n_min: i64,
    pub coeffs: Vec<[f64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
}

/// A decoded coefficient file.
#[derive(Debug, Clone, PartialEq)]
pub enum CoefficientObject {
    Boundary {
        f: BoundaryDistribution,
        s: Option<f64>,
    },
    Interior(InteriorFunction),
    Exterior(ExteriorFunction),
}

impl CoefficientObject {
    /// Boundary trace of the object.
    pub fn trace(&self) -> BoundaryDistribution {
        match self {
            CoefficientObject::Boundary { f, .. } => f.clone(),
            CoefficientObject::Interior(u) => trace_interior(u),
            CoefficientObject::Exterior(v) => trace_exterior(v),
        }
    }

    /// Index of the boundary space the trace is measured in: `s` itself for
    /// boundary data, `s − 1/2` for holomorphic functions.
    pub fn trace_index(&self) -> Option<f64> {
        match self {
            CoefficientObject::Boundary { s, .. } => *s,
            CoefficientObject::Interior(u) => Some(u.index().value() - 0.5),
            CoefficientObject::Exterior(v) => Some(v.index().value() - 0.5),
        }
    }

    pub fn kind(&self) -> CoefficientKind {
        match self {
            CoefficientObject::Boundary { .. } => CoefficientKind::Boundary,
            CoefficientObject::Interior(_) => CoefficientKind::Interior,
            CoefficientObject::Exterior(_) => CoefficientKind::Exterior,
        }
    }
}

fn pairs(values: &[Complex64]) -> Vec<[f64; 2]> {
    values.iter().map(|c| [c.re, c.im]).collect()
}

impl From<&BoundaryDistribution> for CoefficientFile {
    fn from(f: &BoundaryDistribution) -> Self {
        CoefficientFile {
            kind: CoefficientKind::Boundary,
            n_min: f.n_min(),
            coeffs: pairs(f.coeffs()),
            s: None,
        }
    }
}

impl From<&InteriorFunction> for CoefficientFile {
    fn from(u: &InteriorFunction) -> Self {
        CoefficientFile {
            kind: CoefficientKind::Interior,
            n_min: 0,
            coeffs: pairs(u.coeffs()),
            s: Some(u.index().value()),
        }
    }
}

impl From<&ExteriorFunction> for CoefficientFile {
    fn from(v: &ExteriorFunction) -> Self {
        let trace = trace_exterior(v);
        CoefficientFile {
            kind: CoefficientKind::Exterior,
            n_min: trace.n_min(),
            coeffs: pairs(trace.coeffs()),
            s: Some(v.index().value()),
        }
    }
}

impl From<&CoefficientObject> for CoefficientFile {
    fn from(obj: &CoefficientObject) -> Self {
        match obj {
            CoefficientObject::Boundary { f, s } => CoefficientFile { s: *s, ..f.into() },
            CoefficientObject::Interior(u) => u.into(),
            CoefficientObject::Exterior(v) => v.into(),
        }
    }
}

impl CoefficientFile {
    pub fn decode(&self) -> Result<CoefficientObject> {
        let coeffs: Vec<Complex64> = self.coeffs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect();
        let index = self.s.map(SobolevIndex::new).transpose()?;
        let f = BoundaryDistribution::new(self.n_min, coeffs)?;
        match self.kind {
            CoefficientKind::Boundary => Ok(CoefficientObject::Boundary { f, s: self.s }),
            CoefficientKind::Interior => {
                if !f.is_empty() && f.n_min() < 0 {
                    return Err(Error::Format(format!(
                        "interior file starts at negative frequency {}",
                        f.n_min()
                    )));
                }
                let a = (0..=f.n_max().max(-1)).map(|n| f.coeff(n)).collect();
                Ok(CoefficientObject::Interior(InteriorFunction::new(
                    a,
                    index.unwrap_or(SobolevIndex::integer(0)),
                )?))
            }
            CoefficientKind::Exterior => {
                if !f.is_empty() && f.n_max() > -1 {
                    return Err(Error::Format(format!(
                        "exterior file reaches nonnegative frequency {}",
                        f.n_max()
                    )));
                }
                let b = (1..=(-f.n_min()).max(0)).map(|m| f.coeff(-m)).collect();
                Ok(CoefficientObject::Exterior(ExteriorFunction::new(
                    b,
                    index.unwrap_or(SobolevIndex::integer(0)),
                )?))
            }
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("coefficient files always serialise")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))
    }
}

/// Errors from reading files, kept apart from numerical errors.
#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("cannot read {path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Parse { path: String, source: Error },
}

pub fn read_coefficients(path: &Path) -> std::result::Result<CoefficientObject, IoError> {
    let text = std::fs::read_to_string(path).map_err(|source| IoError::Read {
        path: path.display().to_string(),
        source,
    })?;
    CoefficientFile::from_json(&text)
        .and_then(|f| f.decode())
        .map_err(|source| IoError::Parse {
            path: path.display().to_string(),
            source,
        })
}
