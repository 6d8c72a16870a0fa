use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::MAX_DEGREE;

/// Series coefficient `A_p` of the polynomial Heun solution, itself a
/// polynomial with integer coefficients in `t = 1/sqrt(omega)`.
///
/// `coeffs[k]` multiplies `t^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientPolynomial {
    pub coeffs: Vec<BigInt>,
}

impl CoefficientPolynomial {
    pub fn constant(c: i64) -> Self {
        Self {
            coeffs: vec![BigInt::from(c)],
        }
    }

    /// The monomial `t`.
    pub fn t() -> Self {
        Self {
            coeffs: vec![BigInt::zero(), BigInt::from(1)],
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Coefficient of `t^k` (zero past the stored length).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// Coefficients as `i64`, when they fit.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coeffs[..=self.degree()].iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn eval(&self, t: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * t + c.to_f64().unwrap_or(f64::NAN))
    }

    /// True when only powers with the parity of `p` appear.
    pub fn has_parity(&self, p: usize) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(k, c)| c.is_zero() || k % 2 == p % 2)
    }

    fn shift_by_t(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigInt::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    fn sub_scaled(&self, other: &Self, factor: &BigInt) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len).map(|k| self.coeff(k) - factor * other.coeff(k)).collect();
        Self { coeffs }
    }
}

/// Three-term weight `(2n - 2p)(p + 1)(p + alpha + 1)` with `alpha = 2l`.
fn recurrence_weight(n: u32, l: u32, p: u32) -> BigInt {
    let alpha = 2 * l as i64;
    let (n, p) = (n as i64, p as i64);
    BigInt::from(2 * n - 2 * p) * BigInt::from(p + 1) * BigInt::from(p + alpha + 1)
}

/// `A_0 ..= A_{n+1}` for the degree-`n` polynomial solution at angular
/// momentum `l`, from
///
/// ```text
/// A_0 = 1,  A_1 = t,
/// A_{p+2} = t A_{p+1} - (2n - 2p)(p + 1)(p + 2l + 1) A_p
/// ```
///
/// The series truncates at degree `n` exactly when `A_{n+1}(t) = 0`.
pub fn recurrence_coefficients(n: u32, l: u32) -> Result<Vec<CoefficientPolynomial>> {
    if n == 0 {
        return Err(Error::Argument("polynomial degree n must be at least 1".into()));
    }
    if n > MAX_DEGREE {
        return Err(Error::DegreeTooLarge(n));
    }
    let mut a = Vec::with_capacity(n as usize + 2);
    a.push(CoefficientPolynomial::constant(1));
    a.push(CoefficientPolynomial::t());
    for p in 0..n {
        let next = a[p as usize + 1]
            .shift_by_t()
            .sub_scaled(&a[p as usize], &recurrence_weight(n, l, p));
        a.push(next);
    }
    Ok(a)
}

/// Numerical values `A_0(t) ..= A_{n}(t)` at a given `t`, by running the
/// same recurrence in floating point.
pub(crate) fn recurrence_values(n: u32, l: u32, t: f64) -> Vec<f64> {
    let alpha = 2.0 * l as f64;
    let mut a = Vec::with_capacity(n as usize + 1);
    a.push(1.0);
    a.push(t);
    for p in 0..n.saturating_sub(1) {
        let pf = p as f64;
        let w = (2.0 * n as f64 - 2.0 * pf) * (pf + 1.0) * (pf + alpha + 1.0);
        let next = t * a[p as usize + 1] - w * a[p as usize];
        a.push(next);
    }
    a.truncate(n as usize + 1);
    a
}

/// Power-series coefficients of `y(x)` (powers of `x`) obtained from the
/// recurrence with the `delta` term dropped and `gamma - alpha - 2 = 4n`:
///
/// ```text
/// A_0 = 1, A_1 = 0, A_{p+2} = -(4n - 2p)(p + 1)(p + 2l + 1) A_p
/// ```
///
/// and `y_p = A_p / ((1 + 2l)_p p!)`. This is the non-interacting limit.
pub fn asymptotic_recurrence(n: u32, l: u32) -> Vec<f64> {
    let alpha = 2.0 * l as f64;
    let len = 2 * n as usize + 1;
    let mut a = vec![0.0; len + 1];
    a[0] = 1.0;
    for p in 0..len.saturating_sub(1) {
        let pf = p as f64;
        a[p + 2] = -(4.0 * n as f64 - 2.0 * pf) * (pf + 1.0) * (pf + alpha + 1.0) * a[p];
    }
    let mut denom = 1.0;
    let mut y = Vec::with_capacity(len);
    for (p, ap) in a.iter().take(len).enumerate() {
        if p > 0 {
            let pf = p as f64;
            denom *= (alpha + pf) * pf;
        }
        y.push(ap / denom);
    }
    y
}
