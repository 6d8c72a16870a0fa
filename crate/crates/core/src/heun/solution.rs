use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::RadialWaveFunction;
use crate::quadrature::normalize;

use super::poly::recurrence_values;
use super::roots::admissible_roots;

/// Tolerance used when a solution is built from its root index.
pub const ROOT_TOL: f64 = 1e-13;

/// `eta = 2 (n + l + 1) omega`.
pub fn quantized_energy(n: u32, l: u32, omega: f64) -> f64 {
    2.0 * (n + l + 1) as f64 * omega
}

/// An exact polynomial solution of the radial equation,
/// `u(r) = r^(l+1/2) exp(-omega r^2 / 2) y(r)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HeunSolution {
    pub n: u32,
    pub l: u32,
    /// Index of `t` among the ascending positive roots.
    pub root_index: usize,
    /// `t = 1/sqrt(omega)`.
    pub t: f64,
    pub omega: f64,
    pub eta: f64,
    /// `y` as a polynomial in `r` (index = power).
    pub y_coeffs: Vec<f64>,
    /// `alpha = 2l`.
    pub alpha: f64,
    /// `gamma = eta / omega`.
    pub gamma: f64,
}

impl HeunSolution {
    pub fn from_root(n: u32, l: u32, root_index: usize, t: f64) -> Result<Self> {
        if !(t > 0.0) || !t.is_finite() {
            return Err(Error::Argument(format!("root t must be positive, got {t}")));
        }
        let alpha = 2.0 * l as f64;
        let a = recurrence_values(n, l, t);
        // r^p coefficient: A_p(t) t^-p / ((1 + alpha)_p p!)
        let mut y_coeffs = Vec::with_capacity(a.len());
        let mut denom = 1.0;
        for (p, ap) in a.iter().enumerate() {
            if p > 0 {
                let pf = p as f64;
                denom *= (alpha + pf) * pf * t;
            }
            y_coeffs.push(ap / denom);
        }
        let omega = 1.0 / (t * t);
        let eta = quantized_energy(n, l, omega);
        Ok(Self {
            n,
            l,
            root_index,
            t,
            omega,
            eta,
            y_coeffs,
            alpha,
            gamma: eta / omega,
        })
    }

    /// Coefficient `c` of the Gaussian factor `exp(-c r^2)`, i.e. `omega / 2`.
    pub fn exponent(&self) -> f64 {
        0.5 * self.omega
    }

    pub fn y(&self, r: f64) -> f64 {
        self.y_coeffs.iter().rev().fold(0.0, |acc, c| acc * r + c)
    }

    /// Unnormalised `u(r)`.
    pub fn u(&self, r: f64) -> f64 {
        r.powf(self.l as f64 + 0.5) * (-self.exponent() * r * r).exp() * self.y(r)
    }

    /// `y` re-expressed in `x = sqrt(omega) r`.
    pub fn x_coeffs(&self) -> Vec<f64> {
        self.y_coeffs
            .iter()
            .enumerate()
            .map(|(p, b)| b * self.t.powi(p as i32))
            .collect()
    }

    /// Coefficients (powers of `x`) of
    /// `x y'' + (1 + alpha - 2x^2) y' + (-delta/2 + (gamma - alpha - 2) x) y`,
    /// divided by the largest term magnitude that entered each coefficient.
    /// Identically zero for an exact solution.
    pub fn bhe_residual(&self) -> Vec<f64> {
        let a = self.x_coeffs();
        let get = |k: isize| -> f64 {
            if k < 0 {
                0.0
            } else {
                a.get(k as usize).copied().unwrap_or(0.0)
            }
        };
        let half_delta = self.t;
        let shift = self.gamma - self.alpha - 2.0;
        (0..a.len() as isize + 2)
            .map(|k| {
                let kf = k as f64;
                let terms = [
                    get(k + 1) * (kf + 1.0) * kf,
                    (1.0 + self.alpha) * (kf + 1.0) * get(k + 1),
                    -2.0 * (kf - 1.0) * get(k - 1),
                    -half_delta * get(k),
                    shift * get(k - 1),
                ];
                let scale = terms.iter().map(|v| v.abs()).fold(0.0, f64::max).max(f64::MIN_POSITIVE);
                terms.iter().sum::<f64>() / scale.max(1.0)
            })
            .collect()
    }
}

/// The exact solution of degree `n` at the `root_index`-th positive root
/// (ascending) of the termination polynomial.
pub fn build_solution(n: u32, l: u32, root_index: usize) -> Result<HeunSolution> {
    let roots = admissible_roots(n, l, ROOT_TOL)?;
    let t = *roots.roots.get(root_index).ok_or_else(|| {
        Error::Argument(format!(
            "root index {root_index} out of range: (n={n}, l={l}) has {} positive roots",
            roots.roots.len()
        ))
    })?;
    HeunSolution::from_root(n, l, root_index, t)
}

/// Normalised `u` on the given grid.
pub fn sample_u(solution: &HeunSolution, grid: &[f64]) -> Result<RadialWaveFunction> {
    if grid.first().is_some_and(|&r| !(r > 0.0)) {
        return Err(Error::Argument("grid radii must be positive".into()));
    }
    let values = grid.iter().map(|&r| solution.u(r)).collect();
    let wave = RadialWaveFunction::new(grid.to_vec(), values)?;
    normalize(&wave)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn energy_is_linear_in_omega() {
        assert_eq!(quantized_energy(1, 0, 0.5), 2.0);
        assert!((quantized_energy(3, 0, 0.027) - 0.216).abs() < 1e-15);
        assert_eq!(quantized_energy(0, 0, 0.0), 0.0);
    }

    #[test]
    fn n1_solution() {
        let s = build_solution(1, 0, 0).unwrap();
        assert!((s.omega - 0.5).abs() < 1e-12);
        assert!((s.eta - 2.0).abs() < 1e-12);
        assert!((s.y_coeffs[0] - 1.0).abs() < 1e-15);
        assert!((s.y_coeffs[1] - 1.0).abs() < 1e-12);
        assert_eq!(s.y_coeffs.len(), 2);
        assert!((s.exponent() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn n2_solution() {
        let s = build_solution(2, 0, 0).unwrap();
        assert!((s.t - 12f64.sqrt()).abs() < 1e-12);
        assert!((s.y_coeffs[2] - 1.0 / 6.0).abs() < 1e-12);
        assert!((s.eta - 0.5).abs() < 1e-12);
    }

    #[test]
    fn parameter_identities() {
        for n in 1..=6 {
            for l in 0..4 {
                let roots = admissible_roots(n, l, ROOT_TOL).unwrap().roots;
                for k in 0..roots.len() {
                    let s = build_solution(n, l, k).unwrap();
                    assert_eq!(s.y_coeffs.len(), n as usize + 1);
                    assert_eq!(s.y_coeffs[0], 1.0);
                    // r^1 coefficient: t * sqrt(omega) / (1 + alpha)
                    assert!((s.y_coeffs[1] - 1.0 / (1.0 + s.alpha)).abs() < 1e-12);
                    assert!((s.gamma - s.alpha - 2.0 - 2.0 * n as f64).abs() < 1e-9);
                    assert!((s.eta - 2.0 * (n + l + 1) as f64 * s.omega).abs() < 1e-15);
                    assert!((s.exponent() - 0.5 / (s.t * s.t)).abs() < 1e-15);
                }
            }
        }
    }

    #[test]
    fn solutions_satisfy_the_heun_equation() {
        for n in 1..=8 {
            for l in 0..4 {
                let count = admissible_roots(n, l, ROOT_TOL).unwrap().roots.len();
                for k in 0..count {
                    let s = build_solution(n, l, k).unwrap();
                    for (i, r) in s.bhe_residual().iter().enumerate() {
                        assert!(r.abs() <= 1e-10, "n={n} l={l} k={k} x^{i}: {r}");
                    }
                }
            }
        }
    }

    #[test]
    fn out_of_range_root_index() {
        assert!(matches!(build_solution(1, 0, 1), Err(Error::Argument(_))));
    }

    #[test]
    fn sampled_u_is_regular_at_origin() {
        let s = build_solution(3, 1, 0).unwrap();
        let grid: Vec<f64> = (1..=4001).map(|i| i as f64 * 0.005).collect();
        let w = sample_u(&s, &grid).unwrap();
        // u / r^(l + 1/2) tends to a constant
        let c0 = w.values[0] / grid[0].powf(1.5);
        let c1 = w.values[1] / grid[1].powf(1.5);
        assert!((c0 - c1).abs() < 0.05 * c0.abs());
    }

    #[test]
    fn s_wave_solutions_up_to_n4_are_nodeless() {
        for n in 1..=4 {
            let roots = admissible_roots(n, 0, ROOT_TOL).unwrap().roots;
            let s = build_solution(n, 0, roots.len() - 1).unwrap();
            let grid: Vec<f64> = (1..=20001).map(|i| i as f64 * 0.01).collect();
            assert_eq!(sample_u(&s, &grid).unwrap().sign_changes(), 0, "n={n}");
        }
    }
}
