use crate::error::{Error, Result};
use crate::model::RadialWaveFunction;
use crate::quadrature::simpson;

/// `|integral a(r) b(r) dr|` on the grid of `a`.
///
/// When the grids differ, `b` is resampled onto `a`'s grid by local cubic
/// interpolation and taken as zero outside its own range.
pub fn overlap(a: &RadialWaveFunction, b: &RadialWaveFunction) -> Result<f64> {
    if a.len() < 4 || b.len() < 4 {
        return Err(Error::Argument("overlap needs at least 4 samples per function".into()));
    }
    let (a_lo, a_hi) = (a.grid[0], a.grid[a.len() - 1]);
    let (b_lo, b_hi) = (b.grid[0], b.grid[b.len() - 1]);
    if a_lo.max(b_lo) >= a_hi.min(b_hi) {
        return Err(Error::Argument(format!(
            "grids [{a_lo}, {a_hi}] and [{b_lo}, {b_hi}] do not overlap"
        )));
    }
    let product: Vec<f64> = if same_grid(a, b) {
        a.values.iter().zip(&b.values).map(|(x, y)| x * y).collect()
    } else {
        a.grid.iter().zip(&a.values).map(|(&r, x)| x * resample(b, r)).collect()
    };
    Ok(simpson(&product, a.spacing()).abs())
}

fn same_grid(a: &RadialWaveFunction, b: &RadialWaveFunction) -> bool {
    let close = |x: f64, y: f64| (x - y).abs() <= 1e-12 * x.abs().max(y.abs()).max(1.0);
    a.len() == b.len() && close(a.grid[0], b.grid[0]) && close(a.grid[a.len() - 1], b.grid[b.len() - 1])
}

/// Cubic Lagrange interpolation through the four samples around `r`.
fn resample(w: &RadialWaveFunction, r: f64) -> f64 {
    let n = w.len();
    let (lo, hi) = (w.grid[0], w.grid[n - 1]);
    if r < lo || r > hi {
        return 0.0;
    }
    let h = w.spacing();
    let i = (((r - lo) / h).floor() as usize).clamp(1, n - 3) - 1;
    let xs = &w.grid[i..i + 4];
    let ys = &w.values[i..i + 4];
    (0..4)
        .map(|j| {
            let basis: f64 = (0..4)
                .filter(|&m| m != j)
                .map(|m| (r - xs[m]) / (xs[j] - xs[m]))
                .product();
            ys[j] * basis
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::normalize;

    fn wave(a: f64, b: f64, n: usize, f: impl Fn(f64) -> f64) -> RadialWaveFunction {
        let h = (b - a) / (n - 1) as f64;
        let grid: Vec<f64> = (0..n).map(|i| a + h * i as f64).collect();
        let values = grid.iter().map(|&r| f(r)).collect();
        normalize(&RadialWaveFunction::new(grid, values).unwrap()).unwrap()
    }

    #[test]
    fn self_overlap_is_one() {
        let u = wave(1e-3, 30.0, 4001, |r| r.sqrt() * (-r * r / 4.0).exp() * (1.0 + r));
        assert!((overlap(&u, &u).unwrap() - 1.0).abs() < 1e-9);
    }

    #[test]
    fn resampled_grids_agree() {
        let f = |r: f64| r.sqrt() * (-r * r / 4.0).exp() * (1.0 + r);
        let a = wave(1e-3, 30.0, 4001, f);
        let b = wave(1e-3, 25.0, 2999, f);
        let ab = overlap(&a, &b).unwrap();
        let ba = overlap(&b, &a).unwrap();
        assert!((ab - 1.0).abs() < 1e-6, "{ab}");
        assert!((ab - ba).abs() < 1e-6);
    }

    #[test]
    fn orthogonal_functions() {
        // first two oscillator states at omega = 1, l = 0
        let g0 = wave(1e-4, 12.0, 6001, |r| r.sqrt() * (-r * r / 2.0).exp());
        let g1 = wave(1e-4, 12.0, 6001, |r| r.sqrt() * (-r * r / 2.0).exp() * (1.0 - r * r));
        assert!(overlap(&g0, &g1).unwrap() < 1e-6);
    }

    #[test]
    fn disjoint_grids_are_rejected() {
        let a = wave(0.1, 1.0, 11, |r| r);
        let b = wave(2.0, 3.0, 11, |r| r);
        assert!(matches!(overlap(&a, &b), Err(Error::Argument(_))));
    }
}
