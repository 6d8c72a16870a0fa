//! Domain types shared by the analytic and numerical engines.
//!
//! Everything is in atomic units (hbar = m = e = 1, energies in Hartree,
//! lengths in Bohr radii). The confinement frequency is `omega`, half of the
//! physical trap frequency (Omega = 2 omega).
//!
//! The relative-motion radial function `u(r)` obeys
//!
//! ```text
//! u'' + [eta - v(r) - omega^2 r^2 - (l^2 - 1/4) / r^2] u = 0
//! ```
//!
//! with `v(r)` one of `1/r`, `ln r` or `0` (see [`PotentialKind`]).

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const DEFAULT_R_MIN: f64 = 1e-3;
pub const DEFAULT_STEPS: usize = 20_000;
pub const MIN_STEPS: usize = 1000;
/// Outer cutoff in units of the oscillator length `1/sqrt(omega)`.
pub const DEFAULT_R_MAX_SCALE: f64 = 40.0;

/// Electron-electron interaction entering the effective potential.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PotentialKind {
    /// `1/r`, the three-dimensional Coulomb law restricted to the plane.
    Coulomb,
    /// `ln r` with unit prefactor and no additive constant.
    Log,
    /// Non-interacting electrons.
    None,
}

impl PotentialKind {
    pub const ALL: [PotentialKind; 3] = [PotentialKind::Coulomb, PotentialKind::Log, PotentialKind::None];

    /// Interaction term `v(r)`; `r` must be positive.
    #[inline]
    pub fn interaction(self, r: f64) -> f64 {
        match self {
            PotentialKind::Coulomb => 1.0 / r,
            PotentialKind::Log => r.ln(),
            PotentialKind::None => 0.0,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            PotentialKind::Coulomb => "coulomb",
            PotentialKind::Log => "log",
            PotentialKind::None => "none",
        }
    }
}

impl fmt::Display for PotentialKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PotentialKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "coulomb" | "1/r" => Ok(PotentialKind::Coulomb),
            "log" | "ln" | "ln(r)" => Ok(PotentialKind::Log),
            "none" | "free" => Ok(PotentialKind::None),
            other => Err(Error::Argument(format!(
                "unknown potential `{other}` (expected coulomb, log or none)"
            ))),
        }
    }
}

/// Angular momentum and, for analytic solutions, the polynomial degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct QuantumNumbers {
    pub l: u32,
    pub n: Option<u32>,
}

impl QuantumNumbers {
    pub fn new(l: u32) -> Self {
        Self { l, n: None }
    }

    pub fn analytic(n: u32, l: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::Argument("polynomial degree n must be at least 1".into()));
        }
        Ok(Self { l, n: Some(n) })
    }
}

/// `V_eff(r) = v(r) + omega^2 r^2 + (l^2 - 1/4) / r^2`.
///
/// For `l = 0` the centrifugal part is `-1/(4 r^2)`, i.e. attractive.
pub fn effective_potential(potential: PotentialKind, omega: f64, l: u32, r: f64) -> Result<f64> {
    if !(r > 0.0) || !r.is_finite() {
        return Err(Error::Domain(format!("radius must be positive and finite, got {r}")));
    }
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::Domain(format!("omega must be positive and finite, got {omega}")));
    }
    Ok(effective_potential_unchecked(potential, omega, l, r))
}

#[inline]
pub(crate) fn effective_potential_unchecked(potential: PotentialKind, omega: f64, l: u32, r: f64) -> f64 {
    let l = l as f64;
    potential.interaction(r) + omega * omega * r * r + (l * l - 0.25) / (r * r)
}

/// How the outward sweep is started at `r_min`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "kebab-case")]
pub enum InnerBoundary {
    /// The solution regular at the origin, `u ~ r^(l+1/2)`, carried accurately
    /// through the singular zone before the uniform Numerov sweep takes over.
    #[default]
    Regular,
    /// `u(r_min) = r_min^(l+1/2)` and `u(r_min + h) = (r_min + h)^(l+1/2)`
    /// seeded straight into the uniform Numerov recursion. For `l = 0` the
    /// discretisation error of the first steps acts as a short-range
    /// regulariser of the critical `-1/(4 r^2)` term, which is what produces
    /// negative-energy states whose depth depends on `r_min`.
    CutoffSeed,
}

/// One radial eigenproblem: interaction, frequency, angular momentum, grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadialProblem {
    pub potential: PotentialKind,
    pub omega: f64,
    pub l: u32,
    pub r_min: f64,
    pub r_max: f64,
    pub steps: usize,
    pub inner: InnerBoundary,
}

impl RadialProblem {
    /// Problem on the default grid: `r_min = 1e-3`, `r_max = 40/sqrt(omega)`,
    /// 20000 points.
    pub fn new(potential: PotentialKind, omega: f64, l: u32) -> Result<Self> {
        if !(omega > 0.0) || !omega.is_finite() {
            return Err(Error::Argument(format!(
                "omega must be positive and finite, got {omega}"
            )));
        }
        Ok(Self {
            potential,
            omega,
            l,
            r_min: DEFAULT_R_MIN,
            r_max: default_r_max(omega),
            steps: DEFAULT_STEPS,
            inner: InnerBoundary::Regular,
        })
    }

    pub fn with_grid(mut self, r_min: f64, r_max: f64, steps: usize) -> Result<Self> {
        self.r_min = r_min;
        self.r_max = r_max;
        self.steps = steps;
        self.validate()?;
        Ok(self)
    }

    pub fn with_r_min(mut self, r_min: f64) -> Result<Self> {
        self.r_min = r_min;
        self.validate()?;
        Ok(self)
    }

    pub fn with_steps(mut self, steps: usize) -> Result<Self> {
        self.steps = steps;
        self.validate()?;
        Ok(self)
    }

    pub fn with_inner(mut self, inner: InnerBoundary) -> Self {
        self.inner = inner;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.omega > 0.0) || !self.omega.is_finite() {
            return Err(Error::Argument(format!(
                "omega must be positive and finite, got {}",
                self.omega
            )));
        }
        if !(self.r_min > 0.0) || !(self.r_max > self.r_min) || !self.r_max.is_finite() {
            return Err(Error::Argument(format!(
                "grid needs 0 < r_min < r_max, got r_min = {}, r_max = {}",
                self.r_min, self.r_max
            )));
        }
        if self.steps < MIN_STEPS {
            return Err(Error::Argument(format!(
                "grid needs at least {MIN_STEPS} points, got {}",
                self.steps
            )));
        }
        Ok(())
    }

    /// Grid spacing.
    pub fn h(&self) -> f64 {
        (self.r_max - self.r_min) / (self.steps - 1) as f64
    }

    pub fn radius(&self, i: usize) -> f64 {
        self.r_min + self.h() * i as f64
    }

    pub fn grid(&self) -> Vec<f64> {
        let h = self.h();
        (0..self.steps).map(|i| self.r_min + h * i as f64).collect()
    }

    pub fn effective_potential(&self, r: f64) -> f64 {
        effective_potential_unchecked(self.potential, self.omega, self.l, r)
    }
}

pub fn default_r_max(omega: f64) -> f64 {
    DEFAULT_R_MAX_SCALE / omega.sqrt()
}

/// Grid and tolerance choices applied to every problem built from them.
/// `r_max = None` means the frequency-dependent default.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSettings {
    pub r_min: f64,
    pub r_max: Option<f64>,
    pub steps: usize,
    pub tol: f64,
}

impl Default for GridSettings {
    fn default() -> Self {
        Self {
            r_min: DEFAULT_R_MIN,
            r_max: None,
            steps: DEFAULT_STEPS,
            tol: crate::numerov::DEFAULT_TOL,
        }
    }
}

impl GridSettings {
    pub fn problem(&self, potential: PotentialKind, omega: f64, l: u32) -> Result<RadialProblem> {
        let p = RadialProblem::new(potential, omega, l)?;
        let r_max = self.r_max.unwrap_or(p.r_max);
        p.with_grid(self.r_min, r_max, self.steps)
    }
}

/// Samples of `u(r)` on a uniform grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialWaveFunction {
    pub grid: Vec<f64>,
    pub values: Vec<f64>,
}

impl RadialWaveFunction {
    pub fn new(grid: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        if grid.len() != values.len() {
            return Err(Error::Argument(format!(
                "grid has {} points but {} values were given",
                grid.len(),
                values.len()
            )));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Argument("grid must be strictly increasing".into()));
        }
        Ok(Self { grid, values })
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// Spacing of a uniform grid (first interval).
    pub fn spacing(&self) -> f64 {
        self.grid[1] - self.grid[0]
    }

    /// Interior sign changes, ignoring exact zeros.
    pub fn sign_changes(&self) -> usize {
        count_sign_changes(&self.values)
    }
}

pub(crate) fn count_sign_changes(values: &[f64]) -> usize {
    let mut last = 0.0_f64;
    let mut changes = 0;
    for &v in values {
        if v == 0.0 || !v.is_finite() {
            continue;
        }
        if last != 0.0 && (v > 0.0) != (last > 0.0) {
            changes += 1;
        }
        last = v;
    }
    changes
}

/// One converged Numerov eigenvalue with its normalised radial function.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NumericalEigenstate {
    pub eta: f64,
    pub nodes: usize,
    pub wave: RadialWaveFunction,
}
