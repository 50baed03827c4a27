//! Dense bivariate polynomials and exact reference-domain integrals.

use num::Zero;

use super::bernstein::{bernstein_mono, binomial};
use super::poly::Poly;
use crate::rat::{rat_int, Rational};

/// Reference domain of an element: unit triangle (u, v ≥ 0, u + v ≤ 1) or
/// unit square.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Domain {
    Triangle,
    Square,
}

/// Row-major control-net index order: `i` slow, `j` fast.
pub fn net_indices(domain: Domain, d: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..=d {
        let jmax = match domain {
            Domain::Triangle => d - i,
            Domain::Square => d,
        };
        for j in 0..=jmax {
            out.push((i, j));
        }
    }
    out
}

pub fn net_len(domain: Domain, d: usize) -> usize {
    match domain {
        Domain::Triangle => (d + 1) * (d + 2) / 2,
        Domain::Square => (d + 1) * (d + 1),
    }
}

/// Position of `(i, j)` in the [`net_indices`] ordering.
pub fn net_pos(domain: Domain, d: usize, i: usize, j: usize) -> usize {
    match domain {
        // row i starts after rows of lengths d+1, d, ..., d+2-i
        Domain::Triangle => i * (d + 1) - i * i.saturating_sub(1) / 2 + j,
        Domain::Square => i * (d + 1) + j,
    }
}

/// Bivariate polynomial with rectangular monomial storage: `coeffs[i][j]`
/// multiplies u^i v^j.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BiPoly {
    coeffs: Vec<Vec<Rational>>,
}

impl BiPoly {
    pub fn zero(nu: usize, nv: usize) -> Self {
        BiPoly {
            coeffs: vec![vec![Rational::zero(); nv]; nu],
        }
    }

    pub fn nu(&self) -> usize {
        self.coeffs.len()
    }

    pub fn nv(&self) -> usize {
        self.coeffs.first().map_or(0, |r| r.len())
    }

    pub fn coeff(&self, i: usize, j: usize) -> Rational {
        self.coeffs
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|r| r.iter().all(|c| c.is_zero()))
    }

    /// Expands a Bernstein control net of degree `d` into monomial form.
    ///
    /// `net` follows the row-major index order of [`net_indices`].
    pub fn from_bernstein_net(domain: Domain, d: usize, net: &[Rational]) -> Self {
        assert_eq!(net.len(), net_len(domain, d), "control net length");
        let mut out = BiPoly::zero(d + 1, d + 1);
        match domain {
            Domain::Triangle => {
                for ((i, j), b) in net_indices(domain, d).into_iter().zip(net) {
                    if b.is_zero() {
                        continue;
                    }
                    let k = d - i - j;
                    let c0 = b * Rational::from_integer(binomial(d, i) * binomial(d - i, j));
                    // expand (1 - u - v)^k
                    for a in 0..=k {
                        for bb in 0..=(k - a) {
                            let m = binomial(k, a) * binomial(k - a, bb);
                            let sign = if (a + bb) % 2 == 0 { 1 } else { -1 };
                            out.coeffs[i + a][j + bb] +=
                                &c0 * Rational::from_integer(m * num::BigInt::from(sign));
                        }
                    }
                }
            }
            Domain::Square => {
                for ((i, j), b) in net_indices(domain, d).into_iter().zip(net) {
                    if b.is_zero() {
                        continue;
                    }
                    let pu = bernstein_mono(d, i);
                    let pv = bernstein_mono(d, j);
                    for (a, ca) in pu.coeffs().iter().enumerate() {
                        for (bb, cb) in pv.coeffs().iter().enumerate() {
                            out.coeffs[a][bb] += b * ca * cb;
                        }
                    }
                }
            }
        }
        out
    }

    pub fn partial_u(&self) -> BiPoly {
        if self.nu() <= 1 {
            return BiPoly::zero(1, self.nv());
        }
        let coeffs = (1..self.nu())
            .map(|i| {
                self.coeffs[i]
                    .iter()
                    .map(|c| c * rat_int(i as i64))
                    .collect()
            })
            .collect();
        BiPoly { coeffs }
    }

    pub fn partial_v(&self) -> BiPoly {
        if self.nv() <= 1 {
            return BiPoly::zero(self.nu(), 1);
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| {
                (1..row.len())
                    .map(|j| &row[j] * rat_int(j as i64))
                    .collect()
            })
            .collect();
        BiPoly { coeffs }
    }

    /// Restriction to the interface edge u = 0, as a polynomial in v.
    pub fn restrict_u0(&self) -> Poly {
        Poly::new(self.coeffs.first().cloned().unwrap_or_default())
    }

    pub fn eval(&self, u: &Rational, v: &Rational) -> Rational {
        // Horner in u over Horner in v
        let mut acc = Rational::zero();
        for row in self.coeffs.iter().rev() {
            let mut rv = Rational::zero();
            for c in row.iter().rev() {
                rv = rv * v + c;
            }
            acc = acc * u + rv;
        }
        acc
    }

    pub fn add(&self, rhs: &BiPoly) -> BiPoly {
        let nu = self.nu().max(rhs.nu());
        let nv = self.nv().max(rhs.nv());
        let mut out = BiPoly::zero(nu, nv);
        for i in 0..nu {
            for j in 0..nv {
                out.coeffs[i][j] = self.coeff(i, j) + rhs.coeff(i, j);
            }
        }
        out
    }

    pub fn sub(&self, rhs: &BiPoly) -> BiPoly {
        self.add(&rhs.scale(&rat_int(-1)))
    }

    pub fn scale(&self, s: &Rational) -> BiPoly {
        let coeffs = self
            .coeffs
            .iter()
            .map(|row| row.iter().map(|c| c * s).collect())
            .collect();
        BiPoly { coeffs }
    }

    pub fn mul(&self, rhs: &BiPoly) -> BiPoly {
        let mut out = BiPoly::zero(self.nu() + rhs.nu() - 1, self.nv() + rhs.nv() - 1);
        for i in 0..self.nu() {
            for j in 0..self.nv() {
                let a = &self.coeffs[i][j];
                if a.is_zero() {
                    continue;
                }
                for k in 0..rhs.nu() {
                    for l in 0..rhs.nv() {
                        let b = &rhs.coeffs[k][l];
                        if !b.is_zero() {
                            out.coeffs[i + k][j + l] += a * b;
                        }
                    }
                }
            }
        }
        out
    }

    /// Exact integral over the reference domain.
    ///
    /// Uses the monomial moments: over the unit square the moment of u^i v^j
    /// is 1/((i+1)(j+1)); over the unit triangle it is i! j! / (i+j+2)!.
    pub fn integral(&self, domain: Domain) -> Rational {
        let mut acc = Rational::zero();
        for i in 0..self.nu() {
            for j in 0..self.nv() {
                let c = &self.coeffs[i][j];
                if c.is_zero() {
                    continue;
                }
                let w = match domain {
                    Domain::Square => Rational::new(
                        1.into(),
                        (num::BigInt::from(i as u64 + 1)) * num::BigInt::from(j as u64 + 1),
                    ),
                    Domain::Triangle => {
                        let den = binomial(i + j, i)
                            * num::BigInt::from((i + j + 1) as u64)
                            * num::BigInt::from((i + j + 2) as u64);
                        Rational::new(1.into(), den)
                    }
                };
                acc += c * w;
            }
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    fn ones(domain: Domain, d: usize) -> Vec<Rational> {
        vec![rat_int(1); net_len(domain, d)]
    }

    #[test]
    fn net_sizes() {
        assert_eq!(net_len(Domain::Triangle, 2), 6);
        assert_eq!(net_len(Domain::Square, 2), 9);
        assert_eq!(net_indices(Domain::Triangle, 2).len(), 6);
        assert_eq!(
            net_indices(Domain::Triangle, 2),
            vec![(0, 0), (0, 1), (0, 2), (1, 0), (1, 1), (2, 0)]
        );
    }

    #[test]
    fn net_pos_matches_index_order() {
        for d in 1..=6 {
            for domain in [Domain::Triangle, Domain::Square] {
                for (k, (i, j)) in net_indices(domain, d).into_iter().enumerate() {
                    assert_eq!(net_pos(domain, d, i, j), k);
                }
            }
        }
    }

    #[test]
    fn bernstein_nets_partition_unity() {
        for domain in [Domain::Triangle, Domain::Square] {
            for d in 1..=4 {
                let p = BiPoly::from_bernstein_net(domain, d, &ones(domain, d));
                assert_eq!(p.eval(&rat(1, 3), &rat(2, 7)), rat_int(1));
                assert_eq!(p.coeff(0, 0), rat_int(1));
                let mut sum_rest = Rational::zero();
                for i in 0..p.nu() {
                    for j in 0..p.nv() {
                        if (i, j) != (0, 0) {
                            sum_rest += p.coeff(i, j);
                        }
                    }
                }
                assert!(sum_rest.is_zero());
            }
        }
    }

    #[test]
    fn reference_integrals() {
        let one = BiPoly::from_bernstein_net(Domain::Square, 1, &ones(Domain::Square, 1));
        assert_eq!(one.integral(Domain::Square), rat_int(1));
        assert_eq!(one.integral(Domain::Triangle), rat(1, 2));
        // u v over the square: 1/4; over the triangle: 1/24
        let mut uv = BiPoly::zero(2, 2);
        uv.coeffs[1][1] = rat_int(1);
        assert_eq!(uv.integral(Domain::Square), rat(1, 4));
        assert_eq!(uv.integral(Domain::Triangle), rat(1, 24));
    }

    #[test]
    fn partials_and_restriction() {
        // p = u^2 v + 3v^2
        let mut p = BiPoly::zero(3, 3);
        p.coeffs[2][1] = rat_int(1);
        p.coeffs[0][2] = rat_int(3);
        let pu = p.partial_u();
        assert_eq!(pu.eval(&rat_int(1), &rat_int(2)), rat_int(4));
        let pv = p.partial_v();
        assert_eq!(pv.eval(&rat_int(1), &rat_int(1)), rat_int(7));
        let edge = p.restrict_u0();
        assert_eq!(edge, Poly::new(vec![rat_int(0), rat_int(0), rat_int(3)]));
    }

    #[test]
    fn product_evaluates_pointwise() {
        let mut a = BiPoly::zero(2, 2);
        a.coeffs[1][0] = rat_int(2);
        a.coeffs[0][1] = rat_int(1);
        let b = a.clone();
        let p = a.mul(&b);
        let (u, v) = (rat(1, 2), rat(1, 3));
        let lhs = p.eval(&u, &v);
        let one = a.eval(&u, &v);
        assert_eq!(lhs, &one * &one);
    }
}
