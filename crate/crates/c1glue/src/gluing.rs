//! Gluing data along the interface: the Jacobian-type polynomials that encode
//! how the two element parameterizations meet across the shared edge.
//!
//! With `n` the rotated edge tangent, the data consists of
//!
//! * `alpha_tilde_l = det[dF_l/du, dF/dv]` restricted to the edge,
//! * `alpha = det[dF_2/du, dF_1/du]`,
//! * `beta = <n, n>` and `beta_l = <(dF_l/du) rotated, n>`,
//! * `gamma = gcd(alpha_tilde_1, alpha_tilde_2)` and `alpha_l = alpha_tilde_l / gamma`,
//!
//! together with the remainders (`hat`) and quotients (`star`) of `alpha_l`,
//! `beta_l` after division by `beta`. The relation
//! `beta * alpha = alpha_tilde_2 * beta_1 - alpha_tilde_1 * beta_2` ties the
//! pieces together and is verified on construction.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::geometry::MeshPair;
use crate::polyalg::Poly;
use crate::rat::{rat_int, Rational};

/// How the gcd `gamma` was normalized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaNormalization {
    /// Scaled so that `gamma(0) = 1` (the default).
    UnitValueAtZero,
    /// `gamma(0)` vanished; fell back to a monic leading coefficient.
    LeadingCoefficient,
}

#[derive(Debug, Clone)]
pub struct GluingData {
    pub alpha_tilde: [Poly; 2],
    pub alpha: Poly,
    /// Rotated edge tangent (y, -x) components.
    pub normal: [Poly; 2],
    pub beta: Poly,
    pub beta_l: [Poly; 2],
    pub gamma: Poly,
    pub gamma_normalization: GammaNormalization,
    pub alpha_l: [Poly; 2],
    pub alpha_hat: [Poly; 2],
    pub alpha_star: [Poly; 2],
    pub beta_hat: [Poly; 2],
    pub beta_star: [Poly; 2],
}

fn det2(a: &[Poly; 2], b: &[Poly; 2]) -> Poly {
    &(&a[0] * &b[1]) - &(&a[1] * &b[0])
}

fn perp(a: &[Poly; 2]) -> [Poly; 2] {
    [a[1].clone(), -&a[0]]
}

fn dot(a: &[Poly; 2], b: &[Poly; 2]) -> Poly {
    &(&a[0] * &b[0]) + &(&a[1] * &b[1])
}

impl GluingData {
    /// Computes all gluing polynomials for a validated mesh.
    pub fn compute(mesh: &MeshPair) -> Result<GluingData> {
        let [e1, e2] = &mesh.elements;
        let du1 = e1.du_edge();
        let du2 = e2.du_edge();
        let dv = e1.dv_edge();
        if dv != e2.dv_edge() {
            return Err(Error::EdgeMismatch(
                "elements disagree on the interface tangent".into(),
            ));
        }
        let alpha_tilde = [det2(&du1, &dv), det2(&du2, &dv)];
        let alpha = det2(&du2, &du1);
        let normal = perp(&dv);
        let beta = dot(&normal, &normal);
        if beta.is_zero() {
            return Err(Error::IrregularGluing("edge tangent is zero".into()));
        }
        let beta_l = [dot(&perp(&du1), &normal), dot(&perp(&du2), &normal)];

        let raw_gamma = Poly::gcd(&alpha_tilde[0], &alpha_tilde[1]);
        if raw_gamma.is_zero() {
            return Err(Error::IrregularGluing(
                "both interface Jacobians vanish identically".into(),
            ));
        }
        let at_zero = raw_gamma.eval(&rat_int(0));
        let (gamma, gamma_normalization) = if !at_zero.is_zero() {
            let inv = Rational::one() / at_zero;
            (raw_gamma.scale(&inv), GammaNormalization::UnitValueAtZero)
        } else {
            // gcd is already monic here
            (raw_gamma, GammaNormalization::LeadingCoefficient)
        };

        let alpha_l = [
            alpha_tilde[0].div_exact(&gamma)?,
            alpha_tilde[1].div_exact(&gamma)?,
        ];

        // beta * alpha = alpha_tilde_2 * beta_1 - alpha_tilde_1 * beta_2
        let lhs = &beta * &alpha;
        let rhs = &(&alpha_tilde[1] * &beta_l[0]) - &(&alpha_tilde[0] * &beta_l[1]);
        if lhs != rhs {
            return Err(Error::InternalInconsistency(
                "gluing relation beta*alpha = at2*beta1 - at1*beta2 failed".into(),
            ));
        }

        let mut alpha_hat = [Poly::zero(), Poly::zero()];
        let mut alpha_star = [Poly::zero(), Poly::zero()];
        let mut beta_hat = [Poly::zero(), Poly::zero()];
        let mut beta_star = [Poly::zero(), Poly::zero()];
        for l in 0..2 {
            let (q, r) = alpha_l[l].quo_rem(&beta)?;
            alpha_star[l] = q;
            alpha_hat[l] = r;
            let (q, r) = beta_l[l].quo_rem(&beta)?;
            beta_star[l] = q;
            beta_hat[l] = r;
        }

        Ok(GluingData {
            alpha_tilde,
            alpha,
            normal,
            beta,
            beta_l,
            gamma,
            gamma_normalization,
            alpha_l,
            alpha_hat,
            alpha_star,
            beta_hat,
            beta_star,
        })
    }

    /// Integer-primitive rescale of `gamma` with a positive leading
    /// coefficient; the representative used inside normal-derivative rows.
    pub fn primitive_gamma(&self) -> Poly {
        primitive_rescale(&self.gamma)
    }

    /// The constant `c` with `alpha_hat_1 * beta_hat_2 - alpha_hat_2 *
    /// beta_hat_1 = c * beta`; only meaningful when `deg beta = 2`.
    pub fn hat_cross_constant(&self) -> Result<Rational> {
        let cross =
            &(&self.alpha_hat[0] * &self.beta_hat[1]) - &(&self.alpha_hat[1] * &self.beta_hat[0]);
        if cross.is_zero() {
            return Ok(Rational::zero());
        }
        let (q, r) = cross.quo_rem(&self.beta)?;
        if !r.is_zero() || q.deg_i() > 0 {
            return Err(Error::InternalInconsistency(
                "hat cross product is not a constant multiple of beta".into(),
            ));
        }
        Ok(q.coeff(0))
    }

    /// Orientation sign of each element along the interface (+1 or -1).
    pub fn orientation_signs(&self) -> Result<[i32; 2]> {
        let mut out = [0; 2];
        for l in 0..2 {
            let v = self.alpha_tilde[l].eval(&rat_int(0));
            if v.is_zero() {
                return Err(Error::IrregularOnInterface(format!(
                    "element {} Jacobian vanishes at the interface start",
                    l + 1
                )));
            }
            out[l] = if v.is_positive() { 1 } else { -1 };
        }
        Ok(out)
    }
}

/// Rescales a rational polynomial to integer coefficients with gcd 1 and a
/// positive leading coefficient. Constants map to 1.
pub fn primitive_rescale(p: &Poly) -> Poly {
    if p.deg_i() <= 0 {
        return Poly::one();
    }
    let mut den = num::BigInt::one();
    for c in p.coeffs() {
        den = num::integer::lcm(den, c.denom().clone());
    }
    let ints: Vec<num::BigInt> = p
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    let mut g = num::BigInt::zero();
    for n in &ints {
        g = num::integer::gcd(g, n.clone());
    }
    let mut coeffs: Vec<Rational> = ints
        .into_iter()
        .map(|n| Rational::from_integer(n / &g))
        .collect();
    if coeffs.last().map_or(false, |c| c.is_negative()) {
        for c in &mut coeffs {
            *c = -&*c;
        }
    }
    Poly::new(coeffs)
}

/// Shape of the interface edge, fixing the case analysis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeShape {
    /// Straight edge with uniform parameterization (C1 is the midpoint).
    UniformLine,
    /// Straight edge with a non-uniform parameterization; carries the
    /// reparameterization factor `rho(v) = 2 lambda + 2 (1 - 2 lambda) v`.
    SkewLine { lambda: Rational, rho: Poly },
    /// Genuinely parabolic edge.
    Parabola,
}

impl EdgeShape {
    pub fn label(&self) -> &'static str {
        match self {
            EdgeShape::UniformLine => "uniform-line",
            EdgeShape::SkewLine { .. } => "skew-line",
            EdgeShape::Parabola => "parabola",
        }
    }
}

/// Classifies the interface edge of a validated mesh.
pub fn classify_edge(mesh: &MeshPair) -> Result<EdgeShape> {
    let [c0, c1, c2] = mesh.edge_points();
    if c0 == c2 {
        return Err(Error::DegenerateEdge(
            "interface endpoints C0 and C2 coincide".into(),
        ));
    }
    let half = Rational::new(1.into(), 2.into());
    let mid = [
        (&c0[0] + &c2[0]) * &half,
        (&c0[1] + &c2[1]) * &half,
    ];
    if c1[0] == mid[0] && c1[1] == mid[1] {
        return Ok(EdgeShape::UniformLine);
    }
    let chord = [&c2[0] - &c0[0], &c2[1] - &c0[1]];
    let leg = [&c1[0] - &c0[0], &c1[1] - &c0[1]];
    let cross = &(&leg[0] * &chord[1]) - &(&leg[1] * &chord[0]);
    if cross.is_zero() {
        let lambda = (&(&leg[0] * &chord[0]) + &(&leg[1] * &chord[1]))
            / (&(&chord[0] * &chord[0]) + &(&chord[1] * &chord[1]));
        let two_lambda = &lambda * rat_int(2);
        let slope = rat_int(2) * (Rational::one() - rat_int(2) * &lambda);
        let rho = Poly::new(vec![two_lambda, slope]);
        return Ok(EdgeShape::SkewLine { lambda, rho });
    }
    Ok(EdgeShape::Parabola)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat;

    #[test]
    fn primitive_rescale_examples() {
        let p = Poly::new(vec![rat(1, 2), rat(1, 4)]);
        assert_eq!(primitive_rescale(&p), Poly::new(vec![rat_int(2), rat_int(1)]));
        let q = Poly::new(vec![rat_int(3), rat_int(-6)]);
        assert_eq!(
            primitive_rescale(&q),
            Poly::new(vec![rat_int(-1), rat_int(2)])
        );
        assert_eq!(primitive_rescale(&Poly::constant(rat(7, 3))), Poly::one());
    }
}
