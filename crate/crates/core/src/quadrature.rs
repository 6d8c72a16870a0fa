//! Quadrature on uniform grids and wavefunction normalisation.

use crate::error::{Error, Result};
use crate::model::RadialWaveFunction;

/// Composite Simpson rule for samples `f` on a uniform grid of spacing `h`.
/// An even number of samples is handled by closing with Simpson's 3/8 rule
/// on the last four points.
pub fn simpson(f: &[f64], h: f64) -> f64 {
    match f.len() {
        0 | 1 => 0.0,
        2 => 0.5 * h * (f[0] + f[1]),
        3 => h / 3.0 * (f[0] + 4.0 * f[1] + f[2]),
        4 => 3.0 * h / 8.0 * (f[0] + 3.0 * f[1] + 3.0 * f[2] + f[3]),
        n if n % 2 == 1 => {
            let inner: f64 = f[1..n - 1]
                .iter()
                .enumerate()
                .map(|(i, v)| if i % 2 == 0 { 4.0 * v } else { 2.0 * v })
                .sum();
            h / 3.0 * (f[0] + inner + f[n - 1])
        }
        n => simpson(&f[..n - 3], h) + simpson(&f[n - 4..], h),
    }
}

/// `integral u^2 dr` by Simpson's rule.
pub fn norm_squared(wave: &RadialWaveFunction) -> f64 {
    let sq: Vec<f64> = wave.values.iter().map(|v| v * v).collect();
    simpson(&sq, wave.spacing())
}

/// Rescale so that `integral u^2 dr = 1` and the first interior sample is
/// positive.
pub fn normalize(wave: &RadialWaveFunction) -> Result<RadialWaveFunction> {
    if wave.len() < 3 {
        return Err(Error::Argument(format!(
            "normalisation needs at least 3 samples, got {}",
            wave.len()
        )));
    }
    let norm = norm_squared(wave);
    if !(norm > 0.0) || !norm.is_finite() {
        return Err(Error::Argument(
            "cannot normalise a vanishing or non-finite function".into(),
        ));
    }
    // sign reference: first interior sample, or the first non-zero one after it
    let reference = wave.values[1..].iter().copied().find(|v| *v != 0.0).unwrap_or(1.0);
    let scale = reference.signum() / norm.sqrt();
    Ok(RadialWaveFunction {
        grid: wave.grid.clone(),
        values: wave.values.iter().map(|v| v * scale).collect(),
    })
}
