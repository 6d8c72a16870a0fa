//! Two-sided Numerov sweeps for `u'' = (V_eff(r) - eta) u` on a uniform grid.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{count_sign_changes, InnerBoundary, PotentialKind, RadialProblem};

/// Running solutions are divided by this factor once they exceed it.
const RESCALE_AT: f64 = 1e150;
/// The regular start hands over to the uniform recursion at `r >= HANDOVER * h`.
const HANDOVER: f64 = 20.0;
/// Largest Runge-Kutta step in `ln r`, before the local-wavelength reduction.
const MAX_LOG_STEP: f64 = 0.01;

/// Diagnostics of one trial energy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ShotResult {
    pub eta: f64,
    /// Sign changes of the outward solution over the whole grid. This is the
    /// number of eigenvalues below `eta` (Dirichlet at `r_max`).
    pub nodes: usize,
    /// Outward minus inward logarithmic derivative at the join, times `h`.
    pub mismatch: f64,
    /// Grid index where the sweeps meet: the outermost classical turning point.
    pub join: usize,
    /// Outward solution up to the join, inward solution beyond it, scaled to
    /// agree at the join.
    pub samples: Vec<f64>,
    /// How many times a sweep was renormalised to stay inside `f64` range.
    pub rescales: usize,
}

/// Precomputed grid and potential for repeated shots at different energies.
#[derive(Debug, Clone)]
pub struct Shooter {
    problem: RadialProblem,
    h: f64,
    radii: Vec<f64>,
    v_eff: Vec<f64>,
    /// Last index filled by the regular start (at least 1).
    handover: usize,
}

impl Shooter {
    pub fn new(problem: &RadialProblem) -> Result<Self> {
        problem.validate()?;
        let radii = problem.grid();
        let v_eff = radii.iter().map(|&r| problem.effective_potential(r)).collect();
        let h = problem.h();
        let handover = match problem.inner {
            InnerBoundary::CutoffSeed => 1,
            InnerBoundary::Regular => {
                let needed = ((HANDOVER * h - problem.r_min) / h).ceil();
                (needed.max(1.0) as usize).min(problem.steps - 3)
            }
        };
        Ok(Self {
            problem: *problem,
            h,
            radii,
            v_eff,
            handover,
        })
    }

    pub fn problem(&self) -> &RadialProblem {
        &self.problem
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn len(&self) -> usize {
        self.radii.len()
    }

    pub fn is_empty(&self) -> bool {
        self.radii.is_empty()
    }

    /// Numerov weight `1 + h^2 (eta - V_eff) / 12` at index `i`.
    #[inline]
    fn weight(&self, eta: f64, i: usize) -> f64 {
        1.0 + self.h * self.h * (eta - self.v_eff[i]) / 12.0
    }

    /// Smallest Numerov weight over the part of the grid covered by the
    /// recursion; it is meaningless once the weight reaches zero.
    pub fn min_weight(&self, eta: f64) -> f64 {
        (self.handover - 1..self.len())
            .map(|i| self.weight(eta, i))
            .fold(f64::INFINITY, f64::min)
    }

    /// Outermost index with `eta > V_eff`, kept clear of both ends.
    pub fn join_index(&self, eta: f64) -> usize {
        let n = self.len();
        let lo = self.handover + 1;
        let hi = n - 3;
        let turning = self.v_eff.iter().rposition(|&v| eta > v).unwrap_or_else(|| {
            // classically forbidden everywhere: join at the bottom of the well
            self.v_eff
                .iter()
                .enumerate()
                .min_by(|a, b| a.1.total_cmp(b.1))
                .map(|(i, _)| i)
                .unwrap_or(lo)
        });
        turning.clamp(lo, hi)
    }

    /// Fill `u[0..=handover]` with the start of the outward solution.
    fn seed(&self, eta: f64, u: &mut [f64]) {
        let l = self.problem.l as f64;
        let s = l + 0.5;
        match self.problem.inner {
            InnerBoundary::CutoffSeed => {
                u[0] = self.radii[0].powf(s);
                u[1] = self.radii[1].powf(s);
            }
            InnerBoundary::Regular => self.regular_start(eta, u),
        }
    }

    /// Regular solution from `r_min` up to the handover index.
    ///
    /// With `u = sqrt(r) phi` and `x = ln r` the radial equation becomes
    /// `phi'' = Q(x) phi`, `Q = l^2 + r^2 (v(r) + omega^2 r^2 - eta)`, which is
    /// smooth down to the origin. It is integrated with RK4 in `x`, starting
    /// from the small-`r` expansion of the regular solution.
    fn regular_start(&self, eta: f64, u: &mut [f64]) {
        let p = &self.problem;
        let l = p.l as f64;
        let r0 = self.radii[0];
        // u = r^(l+1/2) w(r); leading terms of w
        let (w, dw) = match p.potential {
            PotentialKind::Coulomb | PotentialKind::None => {
                let q = if p.potential == PotentialKind::Coulomb {
                    1.0
                } else {
                    0.0
                };
                let c1 = q / (2.0 * l + 1.0);
                let c2 = (q * c1 - eta) / (4.0 * l + 4.0);
                (1.0 + c1 * r0 + c2 * r0 * r0, c1 + 2.0 * c2 * r0)
            }
            PotentialKind::Log => {
                let a = 1.0 / (4.0 * l + 4.0);
                let b = (-eta - a * (2.0 * l + 4.0)) / (4.0 * l + 4.0);
                let lr = r0.ln();
                (1.0 + r0 * r0 * (a * lr + b), 2.0 * r0 * (a * lr + b) + a * r0)
            }
        };
        let rl = r0.powf(l);
        let mut phi = rl * w;
        let mut dphi = rl * (l * w + r0 * dw);
        u[0] = r0.sqrt() * phi;

        let omega2 = p.omega * p.omega;
        let q = |x: f64| {
            let r = x.exp();
            l * l + r * r * (p.potential.interaction(r) + omega2 * r * r - eta)
        };
        for i in 0..self.handover {
            let (xa, xb) = (self.radii[i].ln(), self.radii[i + 1].ln());
            let q_end = q(xb).abs().max(q(xa).abs());
            let max_step = MAX_LOG_STEP / (1.0 + q_end.sqrt());
            let substeps = ((xb - xa) / max_step).ceil().max(1.0) as usize;
            let dx = (xb - xa) / substeps as f64;
            let mut x = xa;
            for _ in 0..substeps {
                let k1 = (dphi, q(x) * phi);
                let qm = q(x + 0.5 * dx);
                let k2 = (dphi + 0.5 * dx * k1.1, qm * (phi + 0.5 * dx * k1.0));
                let k3 = (dphi + 0.5 * dx * k2.1, qm * (phi + 0.5 * dx * k2.0));
                let qe = q(x + dx);
                let k4 = (dphi + dx * k3.1, qe * (phi + dx * k3.0));
                phi += dx / 6.0 * (k1.0 + 2.0 * k2.0 + 2.0 * k3.0 + k4.0);
                dphi += dx / 6.0 * (k1.1 + 2.0 * k2.1 + 2.0 * k3.1 + k4.1);
                x += dx;
            }
            u[i + 1] = self.radii[i + 1].sqrt() * phi;
        }
    }

    /// Outward sweep. Stores `u[0..=store_to]` in `buf` and keeps going to
    /// `r_max` with a two-point window. Returns (sign changes, rescales).
    fn outward(&self, eta: f64, store_to: usize, buf: &mut Vec<f64>) -> (usize, usize) {
        let n = self.len();
        let store_to = store_to.max(self.handover).min(n - 1);
        buf.clear();
        buf.resize(store_to + 1, 0.0);
        self.seed(eta, buf);
        let mut rescales = 0;
        let mut nodes = count_sign_changes(&buf[..=self.handover]);
        let mut last_sign = buf[..=self.handover]
            .iter()
            .rev()
            .find(|v| **v != 0.0)
            .map_or(0.0, |v| v.signum());

        let (mut prev, mut cur) = (buf[self.handover - 1], buf[self.handover]);
        let mut f_prev = self.weight(eta, self.handover - 1);
        let mut f_cur = self.weight(eta, self.handover);
        for i in self.handover..n - 1 {
            let f_next = self.weight(eta, i + 1);
            let mut next = ((12.0 - 10.0 * f_cur) * cur - f_prev * prev) / f_next;
            if next.abs() > RESCALE_AT {
                rescales += 1;
                next /= RESCALE_AT;
                cur /= RESCALE_AT;
                if i < store_to {
                    for v in buf[..=i].iter_mut() {
                        *v /= RESCALE_AT;
                    }
                }
            }
            if next != 0.0 {
                let s = next.signum();
                if last_sign != 0.0 && s != last_sign {
                    nodes += 1;
                }
                last_sign = s;
            }
            if i < store_to {
                buf[i + 1] = next;
            }
            prev = cur;
            cur = next;
            f_prev = f_cur;
            f_cur = f_next;
        }
        (nodes, rescales)
    }

    /// Inward sweep from `u(r_max) = 0` down to `stop`; returns the samples
    /// (indexed like the grid, zero below `stop`) and the rescale count.
    fn inward(&self, eta: f64, stop: usize) -> (Vec<f64>, usize) {
        let n = self.len();
        let mut u = vec![0.0; n];
        u[n - 2] = 1.0;
        let mut rescales = 0;
        let mut i = n - 2;
        while i > stop {
            let next = ((12.0 - 10.0 * self.weight(eta, i)) * u[i] - self.weight(eta, i + 1) * u[i + 1])
                / self.weight(eta, i - 1);
            u[i - 1] = next;
            if next.abs() > RESCALE_AT {
                rescales += 1;
                for v in u[i - 1..].iter_mut() {
                    *v /= RESCALE_AT;
                }
            }
            i -= 1;
        }
        (u, rescales)
    }

    /// Sign changes of the outward solution, i.e. the count of eigenvalues
    /// below `eta`.
    pub fn count(&self, eta: f64) -> usize {
        let mut buf = Vec::new();
        self.outward(eta, self.handover, &mut buf).0
    }

    fn sweeps(&self, eta: f64) -> Sweeps {
        let join = self.join_index(eta);
        let mut outward = Vec::new();
        let (nodes, out_rescales) = self.outward(eta, join + 1, &mut outward);
        let (inward, in_rescales) = self.inward(eta, join - 1);
        let log_derivative = |u: &[f64]| (u[join + 1] - u[join - 1]) / (2.0 * u[join]);
        let mismatch = if outward[join] == 0.0 || inward[join] == 0.0 {
            f64::INFINITY
        } else {
            log_derivative(&outward) - log_derivative(&inward)
        };
        Sweeps {
            join,
            nodes,
            mismatch,
            outward,
            inward,
            rescales: out_rescales + in_rescales,
        }
    }

    pub fn shoot(&self, eta: f64) -> ShotResult {
        let Sweeps {
            join,
            nodes,
            mismatch,
            outward,
            inward: mut samples,
            rescales,
        } = self.sweeps(eta);
        let ratio = if samples[join] != 0.0 {
            outward[join] / samples[join]
        } else {
            0.0
        };
        for v in samples[join + 1..].iter_mut() {
            *v *= ratio;
        }
        samples[..=join].copy_from_slice(&outward[..=join]);
        ShotResult {
            eta,
            nodes,
            mismatch,
            join,
            samples,
            rescales,
        }
    }

    /// Mismatch, join index and the outward sign changes up to the join. The
    /// mismatch is continuous in `eta` while the last two stay fixed.
    pub(crate) fn probe(&self, eta: f64) -> (f64, usize, usize) {
        let s = self.sweeps(eta);
        (s.mismatch, s.join, count_sign_changes(&s.outward[..=s.join]))
    }
}

struct Sweeps {
    join: usize,
    nodes: usize,
    mismatch: f64,
    outward: Vec<f64>,
    inward: Vec<f64>,
    rescales: usize,
}

/// One trial energy on `problem`.
pub fn integrate(problem: &RadialProblem, eta: f64) -> Result<ShotResult> {
    if !eta.is_finite() {
        return Err(Error::Argument(format!("trial energy must be finite, got {eta}")));
    }
    Ok(Shooter::new(problem)?.shoot(eta))
}
