//! Spectral toolkit for holomorphic Sobolev spaces on the unit disk.
//!
//! Boundary data lives on the unit circle as finitely supported Fourier
//! series. Functions holomorphic inside the disk are power series, functions
//! holomorphic outside and vanishing at infinity are series in `1/z`. The
//! crate provides the Cauchy transform and Hardy splitting between the two,
//! the boundary Sobolev scale, the bilinear contour pairing that identifies
//! the dual of the interior space `O^s(D)` with the exterior space
//! `O^{1-s}`, constructive representation of functionals, growth-order
//! diagnostics, and a trapezoid contour-quadrature oracle on smooth Jordan
//! curves used to cross-check every spectral identity.

// `!(x < y)` is used on purpose so that NaN fails the guard.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod domains;
pub mod duality;
pub mod error;
pub mod growth;
pub mod hardy;
pub mod io;
pub mod report;
pub mod rng;
pub mod spectral;

pub use error::{Error, Result};
pub use num_complex::Complex64;
pub use spectral::{BoundaryDistribution, PairingValue, SobolevIndex};
pub use hardy::{ExteriorFunction, InteriorFunction};
