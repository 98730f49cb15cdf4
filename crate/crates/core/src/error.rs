use thiserror::Error;

/// Errors raised by the spectral, quadrature and growth routines.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid sampling grid: {0}")]
    InvalidGrid(String),

    #[error("invalid data: {0}")]
    InvalidData(String),

    #[error("aliasing: frequency {max_freq} does not fit on a grid of {m} samples (need M >= {required})")]
    Aliasing { max_freq: i64, m: usize, required: usize },

    #[error("point {z} lies within {threshold:e} of the unit circle; spectral evaluation refused")]
    BoundaryProximity { z: String, threshold: f64 },

    #[error("point {z} is at distance {distance:e} from the curve, quadrature requires more than {bound:e}")]
    QuadratureProximity { z: String, distance: f64, bound: f64 },

    #[error("point {z} is not in the {side} of the unit circle")]
    Domain { z: String, side: &'static str },

    #[error("truncation {requested} is too small, data needs at least {required}")]
    Truncation { requested: usize, required: usize },

    #[error("invalid curve: {0}")]
    InvalidCurve(String),

    #[error("invalid growth family: {0}")]
    InvalidFamily(String),

    #[error("malformed coefficient file: {0}")]
    Format(String),

    #[error("degenerate input: {0}")]
    Degenerate(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// True for errors that signal numerical invalidity (non-finite data,
    /// aliasing, evaluation too close to a boundary) rather than bad usage.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::InvalidData(_)
                | Error::Aliasing { .. }
                | Error::BoundaryProximity { .. }
                | Error::QuadratureProximity { .. }
                | Error::Truncation { .. }
        )
    }
}
