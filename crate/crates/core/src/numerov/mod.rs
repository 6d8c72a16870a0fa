//! Numerov shooting for the radial equation at arbitrary frequency.

mod shoot;
mod spectrum;

pub use crate::quadrature::normalize;
pub use shoot::{integrate, Shooter, ShotResult};
pub use spectrum::{
    bound_states, find_eigenvalues, BoundStates, SpectrumRequest, DEFAULT_MAX_STATES, DEFAULT_TOL, SCAN_PANELS,
};
