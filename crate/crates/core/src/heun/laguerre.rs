//! Non-interacting (`t -> 0`) limit in closed form.

fn factorial(k: u32) -> f64 {
    (1..=k).map(f64::from).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    if k > n {
        return 0.0;
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// Coefficients of the generalised Laguerre polynomial `L_n^a(z)` in powers
/// of `z`, for integer `a`:
/// `L_n^a(z) = sum_k (-1)^k C(n + a, n - k) z^k / k!`.
pub fn laguerre_coeffs(n: u32, a: u32) -> Vec<f64> {
    (0..=n)
        .map(|k| {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            sign * binomial(n + a, n - k) / factorial(k)
        })
        .collect()
}

/// `y(x) = n! Gamma(1 + l) / Gamma(1 + l + n) * L_n^l(x^2)` as coefficients
/// of powers of `x` (odd powers are zero). Normalised so that `y(0) = 1`.
pub fn laguerre_asymptotic(n: u32, l: u32) -> Vec<f64> {
    // Gamma(1 + l) / Gamma(1 + l + n) with integer l
    let norm = factorial(n) * factorial(l) / factorial(l + n);
    let mut y = vec![0.0; 2 * n as usize + 1];
    for (k, c) in laguerre_coeffs(n, l).into_iter().enumerate() {
        y[2 * k] = norm * c;
    }
    y
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_is_one() {
        for l in 0..5 {
            assert_eq!(laguerre_asymptotic(0, l), vec![1.0]);
        }
    }

    #[test]
    fn degree_one() {
        assert_eq!(laguerre_asymptotic(1, 0), vec![1.0, 0.0, -1.0]);
        // L_1^2(z) = 3 - z, prefactor 1! 2! / 3! = 1/3
        let y = laguerre_asymptotic(1, 2);
        assert!((y[2] + 1.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn odd_powers_vanish() {
        let y = laguerre_asymptotic(2, 0);
        assert_eq!(y.len(), 5);
        assert!(y.iter().skip(1).step_by(2).all(|&c| c == 0.0));
        assert_eq!(y, vec![1.0, 0.0, -2.0, 0.0, 0.5]);
    }

    #[test]
    fn known_laguerre() {
        // L_2^1(z) = (z^2 - 6z + 6)/2
        assert_eq!(laguerre_coeffs(2, 1), vec![3.0, -3.0, 0.5]);
    }
}
