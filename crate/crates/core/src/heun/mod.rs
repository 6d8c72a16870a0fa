//! Exact polynomial solutions of the radial equation.
//!
//! With `x = sqrt(omega) r` and `u(r) = r^(l+1/2) exp(-omega r^2/2) y(x)` the
//! radial equation becomes the biconfluent Heun form
//!
//! ```text
//! x y'' + (1 + alpha - 2 x^2) y' + (-delta/2 + (gamma - alpha - 2) x) y = 0
//! ```
//!
//! with `alpha = 2l`, `gamma = eta/omega` and `delta = 2/sqrt(omega)`. A
//! polynomial solution of degree `n` needs `gamma - alpha - 2 = 2n` (which
//! fixes `eta = 2(n + l + 1) omega`) and `A_{n+1}(t) = 0` at
//! `t = delta/2 = 1/sqrt(omega)`, so only a discrete set of frequencies
//! admits one.

mod laguerre;
mod poly;
mod roots;
mod solution;

pub use laguerre::{laguerre_asymptotic, laguerre_coeffs};
pub use poly::{asymptotic_recurrence, recurrence_coefficients, CoefficientPolynomial};
pub use roots::{admissible_roots, AdmissibleRoots};
pub use solution::{build_solution, quantized_energy, sample_u, HeunSolution, ROOT_TOL};

/// Largest polynomial degree handled with exact coefficients.
pub const MAX_DEGREE: u32 = 20;
