//! Sign constancy of a polynomial on [0, 1] via Sturm sequences.

use num::{Signed, Zero};

use super::poly::Poly;
use crate::rat::{rat_int, Rational};

/// Sign behaviour of a polynomial on the closed unit interval.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UnitSign {
    /// Identically zero.
    Zero,
    /// Strictly positive on all of [0, 1].
    Positive,
    /// Strictly negative on all of [0, 1].
    Negative,
    /// Vanishes somewhere in [0, 1].
    Vanishes,
}

impl UnitSign {
    pub fn is_nonzero_constant(self) -> bool {
        matches!(self, UnitSign::Positive | UnitSign::Negative)
    }
}

fn sturm_chain(p: &Poly) -> Vec<Poly> {
    let mut chain = vec![p.clone(), p.derivative()];
    loop {
        let n = chain.len();
        if chain[n - 1].is_zero() {
            chain.pop();
            return chain;
        }
        let r = chain[n - 2]
            .quo_rem(&chain[n - 1])
            .expect("nonzero divisor")
            .1;
        if r.is_zero() {
            return chain;
        }
        chain.push(-&r);
    }
}

fn sign_variations(chain: &[Poly], x: &Rational) -> usize {
    let mut count = 0;
    let mut last: Option<bool> = None;
    for p in chain {
        let v = p.eval(x);
        if v.is_zero() {
            continue;
        }
        let pos = v.is_positive();
        if let Some(prev) = last {
            if prev != pos {
                count += 1;
            }
        }
        last = Some(pos);
    }
    count
}

/// Number of distinct real roots of `p` in the closed interval [0, 1].
pub fn root_count_unit(p: &Poly) -> usize {
    if p.is_zero() {
        return usize::MAX;
    }
    let zero = rat_int(0);
    let one = rat_int(1);
    let mut count = 0;
    if p.eval(&zero).is_zero() {
        count += 1;
    }
    if p.eval(&one).is_zero() {
        count += 1;
    }
    // squarefree part isolates distinct roots; Sturm counts over (0, 1]
    let square = Poly::gcd(p, &p.derivative());
    let sf = p.div_exact(&square).expect("gcd divides");
    let chain = sturm_chain(&sf);
    let open = sign_variations(&chain, &zero) - sign_variations(&chain, &one);
    let end_root_in_open = usize::from(p.eval(&one).is_zero());
    count + open - end_root_in_open
}

/// Classifies the sign of `p` over [0, 1].
pub fn unit_sign(p: &Poly) -> UnitSign {
    if p.is_zero() {
        return UnitSign::Zero;
    }
    if root_count_unit(p) > 0 {
        return UnitSign::Vanishes;
    }
    if p.eval(&rat_int(0)).is_positive() {
        UnitSign::Positive
    } else {
        UnitSign::Negative
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use super::super::poly::poly_i;
    use crate::rat::rat;

    #[test]
    fn counts_roots_in_unit_interval() {
        // (x - 1/2)(x - 1/4)
        let p = &poly_i(&[-1, 2]) * &poly_i(&[-1, 4]);
        assert_eq!(root_count_unit(&p), 2);
        // x^2 + 1
        assert_eq!(root_count_unit(&poly_i(&[1, 0, 1])), 0);
        // roots at both endpoints
        let q = &poly_i(&[0, 1]) * &poly_i(&[-1, 1]);
        assert_eq!(root_count_unit(&q), 2);
        // double root inside
        let r = &poly_i(&[-1, 2]) * &poly_i(&[-1, 2]);
        assert_eq!(root_count_unit(&r), 1);
        // root outside [0,1]
        assert_eq!(root_count_unit(&poly_i(&[-3, 1])), 0);
    }

    #[test]
    fn classifies_signs() {
        assert_eq!(unit_sign(&Poly::zero()), UnitSign::Zero);
        assert_eq!(unit_sign(&poly_i(&[1, 0, 1])), UnitSign::Positive);
        assert_eq!(unit_sign(&poly_i(&[-2, 1])), UnitSign::Negative);
        assert_eq!(unit_sign(&poly_i(&[-1, 2])), UnitSign::Vanishes);
        assert_eq!(unit_sign(&poly_i(&[0, 1])), UnitSign::Vanishes);
        // 5/4 - v + v^2 stays positive (discriminant negative)
        let beta = Poly::new(vec![rat(5, 4), rat(-1, 1), rat(1, 1)]);
        assert_eq!(unit_sign(&beta), UnitSign::Positive);
    }
}
