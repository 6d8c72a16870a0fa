//! Spectra of the planar two-electron quantum dot.
//!
//! The relative motion of two electrons in a parabolic trap reduces to a
//! single radial equation (see [`model`]). This crate solves it two ways:
//!
//! * [`heun`]: exact polynomial solutions, which exist only at a discrete set
//!   of trap frequencies;
//! * [`numerov`]: Numerov shooting at any frequency, for the `1/r`, `ln r`
//!   and non-interacting cases, including negative-energy states.
//!
//! [`validation`] cross-checks the two engines against each other and
//! against published values.

#![allow(clippy::neg_cmp_op_on_partial_ord)] // `!(x > 0.0)` also rejects NaN

pub mod error;
pub mod heun;
pub mod model;
pub mod numerov;
pub mod quadrature;
pub mod validation;

pub use error::{Error, Result};
pub use model::{
    effective_potential, GridSettings, InnerBoundary, NumericalEigenstate, PotentialKind, QuantumNumbers,
    RadialProblem, RadialWaveFunction,
};
