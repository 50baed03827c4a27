//! Bernstein basis conversions on [0, 1].

use num::bigint::BigInt;
use num::Zero;

use super::poly::Poly;
use crate::error::{Error, Result};
use crate::rat::Rational;

pub fn binomial(n: usize, k: usize) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut out = BigInt::from(1);
    for i in 0..k {
        out = out * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    out
}

fn binom_rat(n: usize, k: usize) -> Rational {
    Rational::from_integer(binomial(n, k))
}

/// B^d_i as a monomial polynomial.
pub fn bernstein_mono(d: usize, i: usize) -> Poly {
    assert!(i <= d, "basis index out of range");
    // C(d,i) t^i (1-t)^{d-i}
    let mut coeffs = vec![Rational::zero(); d + 1];
    let cdi = binom_rat(d, i);
    for k in 0..=(d - i) {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let term = &cdi * binom_rat(d - i, k) * Rational::from_integer(BigInt::from(sign));
        coeffs[i + k] += term;
    }
    Poly::new(coeffs)
}

/// Monomial polynomial from Bernstein coefficients b_0..b_d.
pub fn from_bernstein(coeffs: &[Rational]) -> Poly {
    let d = coeffs.len().saturating_sub(1);
    let mut out = Poly::zero();
    for (i, b) in coeffs.iter().enumerate() {
        if !b.is_zero() {
            out = &out + &bernstein_mono(d, i).scale(b);
        }
    }
    out
}

/// Bernstein degree-d coefficients of `p`; errors if `deg p > d`.
///
/// Requesting a degree above `deg p` performs exact degree elevation.
pub fn to_bernstein(p: &Poly, d: usize) -> Result<Vec<Rational>> {
    if p.deg_i() > d as i64 {
        return Err(Error::DegreeExceeded(format!(
            "degree {} does not fit in Bernstein degree {}",
            p.deg_i(),
            d
        )));
    }
    let mut out = Vec::with_capacity(d + 1);
    for i in 0..=d {
        let mut s = Rational::zero();
        for k in 0..=i {
            let a = p.coeff(k);
            if !a.is_zero() {
                s += a * binom_rat(i, k) / binom_rat(d, k);
            }
        }
        out.push(s);
    }
    Ok(out)
}
