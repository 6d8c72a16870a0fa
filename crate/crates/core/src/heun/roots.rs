//! Positive roots of the termination polynomial `A_{n+1}(t)`.
//!
//! `A_{n+1}` has the parity of `n + 1`, so after removing a possible factor
//! `t` it is a polynomial `P(s)` in `s = t^2`. Roots of `P` on `(0, inf)` are
//! isolated exactly with a Sturm sequence over the rationals and then
//! narrowed by exact-sign bisection; no root can be missed and no floating
//! point cancellation enters the sign tests.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

use super::poly::recurrence_coefficients;

const MAX_BISECTIONS: usize = 400;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AdmissibleRoots {
    /// Positive roots `t = 1/sqrt(omega)`, ascending.
    pub roots: Vec<f64>,
    /// `t = 0` is also a root (the `omega -> inf` solution); happens for even `n`.
    pub asymptotic: bool,
}

/// Dense polynomial over the rationals, `c[k]` multiplies `x^k`.
#[derive(Debug, Clone, PartialEq)]
struct RatPoly(Vec<BigRational>);

impl RatPoly {
    fn trimmed(mut c: Vec<BigRational>) -> Self {
        while c.len() > 1 && c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        RatPoly(c)
    }

    fn degree(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("non-empty polynomial")
    }

    fn eval(&self, x: &BigRational) -> BigRational {
        self.0.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    fn derivative(&self) -> Self {
        if self.0.len() <= 1 {
            return RatPoly(vec![BigRational::zero()]);
        }
        let c = self.0[1..]
            .iter()
            .enumerate()
            .map(|(k, c)| c * BigRational::from_integer(BigInt::from(k + 1)))
            .collect();
        Self::trimmed(c)
    }

    /// Euclidean division `self = q * d + r`.
    fn div_rem(&self, d: &Self) -> (Self, Self) {
        let mut r = self.0.clone();
        if self.degree() < d.degree() {
            return (RatPoly(vec![BigRational::zero()]), Self::trimmed(r));
        }
        let dd = d.degree();
        let mut q = vec![BigRational::zero(); self.degree() - dd + 1];
        for k in (0..q.len()).rev() {
            let coef = &r[k + dd] / d.lead();
            if !coef.is_zero() {
                for (j, dc) in d.0.iter().enumerate() {
                    r[k + j] -= &coef * dc;
                }
            }
            q[k] = coef;
        }
        r.truncate(dd.max(1));
        (Self::trimmed(q), Self::trimmed(r))
    }

    fn neg(&self) -> Self {
        RatPoly(self.0.iter().map(|c| -c).collect())
    }
}

fn sign(x: &BigRational) -> i8 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

fn variations(signs: impl Iterator<Item = i8>) -> usize {
    let mut last = 0;
    let mut count = 0;
    for s in signs.filter(|&s| s != 0) {
        if last != 0 && s != last {
            count += 1;
        }
        last = s;
    }
    count
}

struct Sturm {
    chain: Vec<RatPoly>,
}

impl Sturm {
    fn new(p: &RatPoly) -> Self {
        let mut chain = vec![p.clone(), p.derivative()];
        loop {
            let n = chain.len();
            if chain[n - 1].is_zero() || chain[n - 1].degree() == 0 {
                break;
            }
            let (_, r) = chain[n - 2].div_rem(&chain[n - 1]);
            if r.is_zero() {
                break;
            }
            chain.push(r.neg());
        }
        chain.retain(|q| !q.is_zero());
        Self { chain }
    }

    fn gcd(&self) -> &RatPoly {
        self.chain.last().expect("non-empty chain")
    }

    fn variations_at(&self, x: &BigRational) -> usize {
        variations(self.chain.iter().map(|q| sign(&q.eval(x))))
    }

    fn variations_at_infinity(&self) -> usize {
        variations(self.chain.iter().map(|q| sign(q.lead())))
    }

    /// Distinct roots in `(a, b]`.
    fn count(&self, a: &BigRational, b: &BigRational) -> usize {
        self.variations_at(a) - self.variations_at(b)
    }
}

fn to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}

/// Positive roots of `A_{n+1}(t)` accurate to `tol`, plus the asymptotic
/// (`t = 0`) flag.
pub fn admissible_roots(n: u32, l: u32, tol: f64) -> Result<AdmissibleRoots> {
    if !(tol > 0.0) {
        return Err(Error::Argument(format!("root tolerance must be positive, got {tol}")));
    }
    let a = recurrence_coefficients(n, l)?;
    let top = &a[n as usize + 1];

    let asymptotic = top.coeff(0).is_zero();
    // strip the t factor if present, then keep even powers only
    let offset = top.coeffs.iter().position(|c| !c.is_zero()).unwrap_or(0);
    let reduced: Vec<BigRational> = top
        .coeffs
        .iter()
        .skip(offset)
        .step_by(2)
        .map(|c| BigRational::from_integer(c.clone()))
        .collect();
    let p = RatPoly::trimmed(reduced);

    let squarefree = {
        let sturm = Sturm::new(&p);
        if sturm.gcd().degree() == 0 {
            p
        } else {
            p.div_rem(sturm.gcd()).0
        }
    };
    let sturm = Sturm::new(&squarefree);

    let zero = BigRational::zero();
    // Cauchy bound on |s|
    let lead = squarefree.lead().abs();
    let bound = squarefree.0[..squarefree.degree()]
        .iter()
        .map(|c| c.abs() / &lead)
        .fold(BigRational::zero(), |m, c| if c > m { c } else { m })
        + BigRational::one();

    let total = sturm.variations_at(&zero) - sturm.variations_at_infinity();
    let mut isolated = Vec::with_capacity(total);
    let mut stack = vec![(zero.clone(), bound.clone(), sturm.count(&zero, &bound))];
    let two = BigRational::from_integer(BigInt::from(2));
    while let Some((lo, hi, count)) = stack.pop() {
        match count {
            0 => {}
            1 => isolated.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / &two;
                let left = sturm.count(&lo, &mid);
                stack.push((mid.clone(), hi, count - left));
                stack.push((lo, mid, left));
            }
        }
    }
    debug_assert_eq!(isolated.len(), total);

    let mut roots = Vec::with_capacity(isolated.len());
    for (lo, hi) in isolated {
        roots.push(refine(&squarefree, lo, hi, tol)?);
    }
    roots.sort_by(f64::total_cmp);
    Ok(AdmissibleRoots { roots, asymptotic })
}

/// Narrow the single root of `p` in `(lo, hi]` until `sqrt(hi) - sqrt(lo) <= tol`
/// and return it as `t = sqrt(s)`.
fn refine(p: &RatPoly, mut lo: BigRational, mut hi: BigRational, tol: f64) -> Result<f64> {
    let two = BigRational::from_integer(BigInt::from(2));
    let s_hi = sign(&p.eval(&hi));
    if s_hi == 0 {
        return Ok(to_f64(&hi).sqrt());
    }
    for _ in 0..MAX_BISECTIONS {
        let (t_lo, t_hi) = (to_f64(&lo).sqrt(), to_f64(&hi).sqrt());
        if t_hi - t_lo <= tol {
            return Ok(0.5 * (t_lo + t_hi));
        }
        let mid = (&lo + &hi) / &two;
        match sign(&p.eval(&mid)) {
            0 => return Ok(to_f64(&mid).sqrt()),
            s if s == s_hi => hi = mid,
            _ => lo = mid,
        }
    }
    Err(Error::NoConvergence {
        lo: to_f64(&lo).sqrt(),
        hi: to_f64(&hi).sqrt(),
        iterations: MAX_BISECTIONS,
    })
}
