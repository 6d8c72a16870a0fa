use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Input lies outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// Caller supplied an invalid argument (out-of-range index, bad grid, ...).
    #[error("invalid argument: {0}")]
    Argument(String),

    /// An iterative refinement ran out of budget.
    #[error("no convergence after {iterations} iterations in bracket [{lo}, {hi}]")]
    NoConvergence { lo: f64, hi: f64, iterations: usize },

    /// Node counts went backwards while scanning energies; the grid cannot
    /// resolve the spectrum.
    #[error(
        "node count decreased from {before} to {after} between eta = {eta_lo} and {eta_hi} Ha; \
         the grid is too coarse, increase `steps` (smaller h)"
    )]
    GridTooCoarse {
        eta_lo: f64,
        eta_hi: f64,
        before: usize,
        after: usize,
    },

    /// Exact coefficient arithmetic is capped at this polynomial degree.
    #[error("polynomial degree n = {0} exceeds the supported maximum of {max}", max = crate::heun::MAX_DEGREE)]
    DegreeTooLarge(u32),

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
}
