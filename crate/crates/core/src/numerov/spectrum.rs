use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{InnerBoundary, NumericalEigenstate, RadialProblem, RadialWaveFunction};
use crate::quadrature::normalize;

use super::shoot::Shooter;

pub const DEFAULT_TOL: f64 = 1e-6;
pub const DEFAULT_MAX_STATES: usize = 64;
/// Panels in the initial energy scan.
pub const SCAN_PANELS: usize = 400;
const MAX_REFINE: usize = 200;
const MAX_SPLIT_DEPTH: usize = 60;
const POLISH_STEPS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpectrumRequest {
    pub problem: RadialProblem,
    pub eta_min: f64,
    pub eta_max: f64,
    pub max_states: usize,
    pub tol: f64,
}

impl SpectrumRequest {
    pub fn new(problem: RadialProblem, eta_min: f64, eta_max: f64) -> Self {
        Self {
            problem,
            eta_min,
            eta_max,
            max_states: DEFAULT_MAX_STATES,
            tol: DEFAULT_TOL,
        }
    }

    pub fn with_max_states(mut self, max_states: usize) -> Self {
        self.max_states = max_states;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        self.problem.validate()?;
        if !(self.eta_min < self.eta_max) || !self.eta_min.is_finite() || !self.eta_max.is_finite() {
            return Err(Error::Argument(format!(
                "energy window needs eta_min < eta_max, got [{}, {}]",
                self.eta_min, self.eta_max
            )));
        }
        if self.max_states == 0 {
            return Err(Error::Argument("max_states must be at least 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Argument(format!("tolerance must be positive, got {}", self.tol)));
        }
        Ok(())
    }
}

/// An energy interval holding exactly one eigenvalue.
#[derive(Debug, Clone, Copy)]
struct Bracket {
    lo: f64,
    hi: f64,
}

/// Eigenvalues in `[eta_min, eta_max]`, ascending, with normalised
/// wavefunctions.
///
/// Energies are bracketed by the sign-change count of the outward solution
/// (one more per eigenvalue crossed), narrowed by bisection to `tol` and then
/// polished with regula falsi on the matching mismatch. Trial energies are
/// evaluated in parallel; the result does not depend on scheduling.
pub fn find_eigenvalues(request: &SpectrumRequest) -> Result<Vec<NumericalEigenstate>> {
    request.validate()?;
    let shooter = Shooter::new(&request.problem)?;
    if shooter.min_weight(request.eta_min) <= 0.0 {
        return Err(Error::Argument(format!(
            "eta_min = {} is too far below the potential for h = {}; the Numerov recursion breaks down",
            request.eta_min,
            request.problem.h()
        )));
    }

    let brackets = isolate(&shooter, request)?;
    let etas: Vec<f64> = brackets
        .par_iter()
        .map(|b| refine(&shooter, *b, request.tol))
        .collect::<Result<_>>()?;

    let states: Vec<NumericalEigenstate> = etas
        .par_iter()
        .map(|&eta| eigenstate(&shooter, eta))
        .collect::<Result<_>>()?;

    for pair in states.windows(2) {
        if pair[1].nodes <= pair[0].nodes {
            return Err(Error::GridTooCoarse {
                eta_lo: pair[0].eta,
                eta_hi: pair[1].eta,
                before: pair[0].nodes,
                after: pair[1].nodes,
            });
        }
    }
    Ok(states)
}

fn isolate(shooter: &Shooter, request: &SpectrumRequest) -> Result<Vec<Bracket>> {
    let (a, b) = (request.eta_min, request.eta_max);
    let etas: Vec<f64> = (0..=SCAN_PANELS)
        .map(|i| a + (b - a) * i as f64 / SCAN_PANELS as f64)
        .collect();
    let counts: Vec<usize> = etas.par_iter().map(|&e| shooter.count(e)).collect();
    check_monotone(&etas, &counts)?;

    let mut brackets = Vec::new();
    for i in 0..SCAN_PANELS {
        if counts[i + 1] > counts[i] {
            split(
                shooter,
                etas[i],
                etas[i + 1],
                counts[i],
                counts[i + 1],
                0,
                &mut brackets,
            )?;
        }
        if brackets.len() >= request.max_states {
            break;
        }
    }
    brackets.truncate(request.max_states);
    Ok(brackets)
}

fn check_monotone(etas: &[f64], counts: &[usize]) -> Result<()> {
    for i in 0..counts.len() - 1 {
        if counts[i + 1] < counts[i] {
            return Err(Error::GridTooCoarse {
                eta_lo: etas[i],
                eta_hi: etas[i + 1],
                before: counts[i],
                after: counts[i + 1],
            });
        }
    }
    Ok(())
}

/// Subdivide until every sub-interval gains exactly one count.
fn split(
    shooter: &Shooter,
    lo: f64,
    hi: f64,
    c_lo: usize,
    c_hi: usize,
    depth: usize,
    out: &mut Vec<Bracket>,
) -> Result<()> {
    if c_hi < c_lo {
        return Err(Error::GridTooCoarse {
            eta_lo: lo,
            eta_hi: hi,
            before: c_lo,
            after: c_hi,
        });
    }
    match c_hi - c_lo {
        0 => Ok(()),
        1 => {
            out.push(Bracket { lo, hi });
            Ok(())
        }
        _ if depth >= MAX_SPLIT_DEPTH => Err(Error::NoConvergence {
            lo,
            hi,
            iterations: depth,
        }),
        _ => {
            let mid = 0.5 * (lo + hi);
            let c_mid = shooter.count(mid);
            split(shooter, lo, mid, c_lo, c_mid, depth + 1, out)?;
            split(shooter, mid, hi, c_mid, c_hi, depth + 1, out)
        }
    }
}

fn refine(shooter: &Shooter, bracket: Bracket, tol: f64) -> Result<f64> {
    let Bracket { mut lo, mut hi } = bracket;
    let target = shooter.count(lo) + 1;
    let mut iterations = 0;
    while hi - lo > tol {
        if iterations == MAX_REFINE {
            return Err(Error::NoConvergence { lo, hi, iterations });
        }
        let mid = 0.5 * (lo + hi);
        if shooter.count(mid) >= target {
            hi = mid;
        } else {
            lo = mid;
        }
        iterations += 1;
    }
    Ok(polish(shooter, lo, hi, tol).unwrap_or(0.5 * (lo + hi)))
}

/// Illinois regula falsi on the mismatch inside a bracket already narrower
/// than `tol`. Gives up (returns `None`) when the mismatch is not continuous
/// across the bracket.
fn polish(shooter: &Shooter, mut lo: f64, mut hi: f64, tol: f64) -> Option<f64> {
    let (mut f_lo, join_lo, nodes_lo) = shooter.probe(lo);
    let (mut f_hi, join_hi, nodes_hi) = shooter.probe(hi);
    if join_lo != join_hi || nodes_lo != nodes_hi || !f_lo.is_finite() || !f_hi.is_finite() {
        return None;
    }
    if f_lo == 0.0 {
        return Some(lo);
    }
    if f_hi == 0.0 {
        return Some(hi);
    }
    if f_lo.signum() == f_hi.signum() {
        return None;
    }
    let mut side = 0;
    let mut x = 0.5 * (lo + hi);
    for _ in 0..POLISH_STEPS {
        x = (lo * f_hi - hi * f_lo) / (f_hi - f_lo);
        if !(x > lo && x < hi) {
            return None;
        }
        let (f, join, nodes) = shooter.probe(x);
        if join != join_lo || nodes != nodes_lo || !f.is_finite() {
            return None;
        }
        if f == 0.0 || hi - lo < tol * 1e-6 {
            return Some(x);
        }
        if f.signum() == f_hi.signum() {
            hi = x;
            f_hi = f;
            if side == 1 {
                f_lo *= 0.5;
            }
            side = 1;
        } else {
            lo = x;
            f_lo = f;
            if side == -1 {
                f_hi *= 0.5;
            }
            side = -1;
        }
    }
    Some(x)
}

fn eigenstate(shooter: &Shooter, eta: f64) -> Result<NumericalEigenstate> {
    let shot = shooter.shoot(eta);
    let wave = normalize(&RadialWaveFunction {
        grid: shooter.radii().to_vec(),
        values: shot.samples,
    })?;
    let nodes = wave.sign_changes();
    Ok(NumericalEigenstate { eta, nodes, wave })
}

/// Negative-energy states at `l = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundStates {
    /// Inner cutoff the energies were computed with; they depend on it.
    pub r_min: f64,
    pub states: Vec<NumericalEigenstate>,
}

/// Eigenvalues in `[eta_floor, 0)` for an `l = 0` problem.
///
/// The regular solution of the planar problem has no negative-energy states:
/// the `-1/(4r^2)` centrifugal term sits exactly at the critical strength.
/// Bound states appear once that term is regularised at short distance, so
/// the search always uses [`InnerBoundary::CutoffSeed`] and the energies move
/// with `r_min` (and `h`).
pub fn bound_states(problem: &RadialProblem, eta_floor: f64) -> Result<BoundStates> {
    if problem.l != 0 {
        return Err(Error::Domain(format!(
            "bound states exist only for l = 0: for l = {} the centrifugal term (l^2 - 1/4)/r^2 is repulsive \
             and, added to the interaction, keeps the effective potential positive",
            problem.l
        )));
    }
    if !(eta_floor < 0.0) {
        return Err(Error::Argument(format!("eta_floor must be negative, got {eta_floor}")));
    }
    let problem = problem.with_inner(InnerBoundary::CutoffSeed);
    let request = SpectrumRequest::new(problem, eta_floor, 0.0).with_max_states(usize::MAX);
    let mut states = find_eigenvalues(&request)?;
    states.retain(|s| s.eta < 0.0);
    Ok(BoundStates {
        r_min: problem.r_min,
        states,
    })
}
