//! Construction of the admissible trace / normal-derivative pairs along the
//! interface, organized by edge shape.
//!
//! A C1-smooth function with pullbacks f_1, f_2 is described along the edge
//! by its trace `theta(v)`, the tangential derivative `tau = theta'`, and the
//! scaled normal derivative `omega`. Smoothness is equivalent to, for each
//! element,
//!
//! * A1: `beta` divides `r_l = alpha_l * omega + beta_l * tau`, and
//! * A2: `deg r_l <= d - 1 + sigma_l + deg beta`,
//!
//! in which case `eta_l = r_l / beta` prescribes the first interior row of
//! Bézier coefficients. The admissible pairs `(theta, omega)` form a linear
//! space; this module produces an explicit direction basis for it, tagged by
//! the free parameters theta_0, tau_i, omega_j and, where needed, mu_k.

use num::{One, Zero};

use crate::error::{Error, Result};
use crate::geometry::MeshPair;
use crate::gluing::{classify_edge, EdgeShape, GluingData};
use crate::polyalg::{bernstein_mono, Poly};
use crate::rat::{rat_int, Rational};

/// Which block of the free-parameter ledger a direction belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ParamGroup {
    Theta,
    Omega,
    Mu,
}

impl ParamGroup {
    pub fn as_str(self) -> &'static str {
        match self {
            ParamGroup::Theta => "theta",
            ParamGroup::Omega => "omega",
            ParamGroup::Mu => "mu",
        }
    }
}

/// One free-parameter direction: the trace/normal pair it contributes.
#[derive(Debug, Clone)]
pub struct Direction {
    pub name: String,
    pub group: ParamGroup,
    pub theta: Poly,
    pub omega: Poly,
}

/// Construction branch taken for a mesh, reported by `analyze`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BranchTag {
    /// Uniform straight edge, transversal degrees in general position.
    A1,
    /// Uniform straight edge with a leading-coefficient tie between theta
    /// and omega.
    A2,
    /// Skew straight edge, independent remainder rows.
    B1,
    /// Skew straight edge, proportional remainder rows.
    B2,
    /// Parabolic edge with nonzero hat cross constant.
    CGeneric,
    /// Parabolic edge, both beta hats vanish.
    CBetaHatsZero,
    /// Parabolic edge, all hats share a common (possibly constant) factor.
    CCommonFactor,
    /// Parabolic edge, alpha hats proportional to beta hats columnwise.
    CPropColumns,
    /// Parabolic edge, proportional hat rows with nonconstant alpha hat.
    CPropRowsAlpha,
    /// Parabolic edge, proportional hat rows with nonconstant beta hat.
    CPropRowsBeta,
}

impl BranchTag {
    pub fn case_label(self) -> &'static str {
        match self {
            BranchTag::A1 | BranchTag::A2 => "a",
            BranchTag::B1 | BranchTag::B2 => "b",
            _ => "c",
        }
    }

    pub fn branch_name(self) -> &'static str {
        match self {
            BranchTag::A1 | BranchTag::B1 => "1",
            BranchTag::A2 | BranchTag::B2 => "2",
            BranchTag::CGeneric => "generic",
            BranchTag::CBetaHatsZero => "beta-hats-zero",
            BranchTag::CCommonFactor => "common-factor",
            BranchTag::CPropColumns => "proportional-columns",
            BranchTag::CPropRowsAlpha => "proportional-rows-alpha",
            BranchTag::CPropRowsBeta => "proportional-rows-beta",
        }
    }
}

/// Dimension bookkeeping for the smooth space at one degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceDimensions {
    pub degree: usize,
    pub total: usize,
    /// Interior Bézier coefficients with no influence on interface smoothness.
    pub interior: usize,
    /// Free parameters attached to the interface data.
    pub interface: usize,
    pub n_theta: usize,
    pub n_omega: usize,
    pub n_mu: usize,
    pub d_omega: i64,
    pub m_shift: i64,
    pub kappa: usize,
}

/// Count of interior Bézier coefficients (rows i >= 2 of both nets).
pub fn interior_count(d: usize, sigma: [usize; 2]) -> usize {
    let choose2 = d * d.saturating_sub(1) / 2;
    let quad_part = (d.saturating_sub(1)) * (d + 1);
    choose2 * (2 - sigma[0] - sigma[1]) + quad_part * (sigma[0] + sigma[1])
}

/// Case-specific output: branch tag, directions, and ledger counts.
struct CaseBuild {
    tag: BranchTag,
    directions: Vec<Direction>,
    n_theta: usize,
    n_omega: usize,
    n_mu: usize,
    kappa: usize,
    skew_constants: Option<[Rational; 4]>,
}

/// The admissible trace/normal space for a mesh at degree `d`.
#[derive(Debug, Clone)]
pub struct TraceNormalSpace {
    pub degree: usize,
    pub branch: BranchTag,
    pub edge: EdgeShape,
    pub sigma: [usize; 2],
    pub m_shift: i64,
    pub d_omega: i64,
    pub kappa: usize,
    pub n_theta: usize,
    pub n_omega: usize,
    pub n_mu: usize,
    pub directions: Vec<Direction>,
    pub gluing: GluingData,
    /// Constant remainders (a_1, a_2, b_1, b_2) of the skew-line analysis.
    pub skew_constants: Option<[Rational; 4]>,
}

impl TraceNormalSpace {
    pub fn build(mesh: &MeshPair, d: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::DegreeMismatch(format!(
                "spline degree must be at least 2, got {d}"
            )));
        }
        mesh.validate()?;
        let gluing = GluingData::compute(mesh)?;
        let edge = classify_edge(mesh)?;
        let sigma = [
            mesh.elements[0].kind.sigma(),
            mesh.elements[1].kind.sigma(),
        ];
        let m_shift = (0..2)
            .map(|l| sigma[l] as i64 - gluing.alpha_l[l].deg_i())
            .min()
            .unwrap();
        let d_omega = d as i64 - 1 + m_shift;
        let n_omega = (d_omega + 1).max(0) as usize;

        let built = match &edge {
            EdgeShape::UniformLine => case_a(&gluing, d, sigma, d_omega, n_omega)?,
            EdgeShape::SkewLine { rho, .. } => case_b(&gluing, d, d_omega, n_omega, rho)?,
            EdgeShape::Parabola => case_c(&gluing, d, d_omega, n_omega)?,
        };
        let space = TraceNormalSpace {
            degree: d,
            branch: built.tag,
            edge,
            sigma,
            m_shift,
            d_omega,
            kappa: built.kappa,
            n_theta: built.n_theta,
            n_omega: built.n_omega,
            n_mu: built.n_mu,
            directions: built.directions,
            gluing,
            skew_constants: built.skew_constants,
        };
        space.check_directions()?;
        space.check_dimension_ledger()?;
        Ok(space)
    }

    pub fn dimensions(&self) -> SpaceDimensions {
        let interior = interior_count(self.degree, self.sigma);
        let interface = self.n_theta + self.n_omega + self.n_mu;
        SpaceDimensions {
            degree: self.degree,
            total: interior + interface,
            interior,
            interface,
            n_theta: self.n_theta,
            n_omega: self.n_omega,
            n_mu: self.n_mu,
            d_omega: self.d_omega,
            m_shift: self.m_shift,
            kappa: self.kappa,
        }
    }

    /// Verifies A1, A2 and the trace degree bound for every direction.
    fn check_directions(&self) -> Result<()> {
        let d = self.degree as i64;
        for dir in &self.directions {
            if dir.theta.deg_i() > d {
                return Err(Error::DegreeExceeded(format!(
                    "direction {} has trace degree {}",
                    dir.name,
                    dir.theta.deg_i()
                )));
            }
            let tau = dir.theta.derivative();
            for l in 0..2 {
                let r = &(&self.gluing.alpha_l[l] * &dir.omega) + &(&self.gluing.beta_l[l] * &tau);
                let (_, rem) = r.quo_rem(&self.gluing.beta)?;
                if !rem.is_zero() {
                    return Err(Error::FormulaMismatch(format!(
                        "direction {} violates divisibility for element {}",
                        dir.name,
                        l + 1
                    )));
                }
                let bound = d - 1 + self.sigma[l] as i64 + self.gluing.beta.deg_i();
                if r.deg_i() > bound {
                    return Err(Error::FormulaMismatch(format!(
                        "direction {} exceeds the degree bound for element {}: {} > {}",
                        dir.name,
                        l + 1,
                        r.deg_i(),
                        bound
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_dimension_ledger(&self) -> Result<()> {
        let d = self.degree as i64;
        let formula = 2 * d + self.m_shift + self.kappa as i64;
        let ledger = (self.n_theta + self.n_omega + self.n_mu) as i64;
        if formula != ledger {
            return Err(Error::InternalInconsistency(format!(
                "interface dimension formula {formula} != parameter ledger {ledger}"
            )));
        }
        if self.directions.len() != ledger as usize {
            return Err(Error::InternalInconsistency(format!(
                "{} directions for a ledger of {ledger}",
                self.directions.len()
            )));
        }
        Ok(())
    }

    /// Transversal derivative polynomials `eta_l` for an admissible pair.
    pub fn eta_pair(&self, theta: &Poly, omega: &Poly) -> Result<[Poly; 2]> {
        eta_for(&self.gluing, self.sigma, self.degree, theta, omega)
    }
}

/// Computes `eta_l = (alpha_l * omega + beta_l * theta') / beta` exactly.
pub fn eta_for(
    gluing: &GluingData,
    sigma: [usize; 2],
    d: usize,
    theta: &Poly,
    omega: &Poly,
) -> Result<[Poly; 2]> {
    let tau = theta.derivative();
    let mut out = [Poly::zero(), Poly::zero()];
    for l in 0..2 {
        let r = &(&gluing.alpha_l[l] * omega) + &(&gluing.beta_l[l] * &tau);
        let eta = r.div_exact(&gluing.beta)?;
        let bound = d as i64 - 1 + sigma[l] as i64;
        if eta.deg_i() > bound {
            return Err(Error::DegreeExceeded(format!(
                "eta for element {} has degree {} > {}",
                l + 1,
                eta.deg_i(),
                bound
            )));
        }
        out[l] = eta;
    }
    Ok(out)
}

/// Uniform straight edge: `theta` and `omega` decouple into plain Bernstein
/// coefficient directions, with at most one leading-coefficient tie.
fn case_a(
    g: &GluingData,
    d: usize,
    sigma: [usize; 2],
    d_omega: i64,
    n_omega: usize,
) -> Result<CaseBuild> {
    let lhs = (&(&g.alpha_l[0] * &g.beta_l[1]) - &(&g.alpha_l[1] * &g.beta_l[0])).deg_i();
    let rhs =
        (g.alpha_l[0].deg_i() + sigma[1] as i64).max(g.alpha_l[1].deg_i() + sigma[0] as i64) + 1;
    let branch_one = lhs == rhs;

    let mut directions = Vec::new();
    let (tag, n_theta, kappa);
    if branch_one {
        for i in 0..d {
            directions.push(Direction {
                name: format!("theta{i}"),
                group: ParamGroup::Theta,
                theta: bernstein_mono(d - 1, i),
                omega: Poly::zero(),
            });
        }
        (tag, n_theta, kappa) = (BranchTag::A1, d, 0);
    } else {
        // minimizer of sigma_l - deg alpha_l; ties resolve to element 1
        let l = if sigma[0] as i64 - g.alpha_l[0].deg_i() <= sigma[1] as i64 - g.alpha_l[1].deg_i()
        {
            0
        } else {
            1
        };
        let lead_b = g.beta_l[l].coeff(sigma[l] + 1);
        let lead_a = g.alpha_l[l]
            .leading()
            .cloned()
            .unwrap_or_else(Rational::zero);
        if lead_a.is_zero() {
            return Err(Error::InternalInconsistency(
                "vanishing leading coefficient in the tie construction".into(),
            ));
        }
        // cancels the top coefficient of r_l so the degree bound holds
        let tie = -(rat_int(d as i64) * lead_b) / lead_a;
        let tail_exp = (d_omega + 1).max(0) as usize;
        for i in 0..=d {
            let theta = bernstein_mono(d, i);
            let scale = &tie * &theta.coeff(d);
            let omega = if scale.is_zero() {
                Poly::zero()
            } else {
                Poly::monomial(scale, tail_exp)
            };
            directions.push(Direction {
                name: format!("theta{i}"),
                group: ParamGroup::Theta,
                theta,
                omega,
            });
        }
        (tag, n_theta, kappa) = (BranchTag::A2, d + 1, 1);
    }
    for j in 0..n_omega {
        directions.push(Direction {
            name: format!("omega{j}"),
            group: ParamGroup::Omega,
            theta: Poly::zero(),
            omega: bernstein_mono(d_omega as usize, j),
        });
    }
    Ok(CaseBuild {
        tag,
        directions,
        n_theta,
        n_omega,
        n_mu: 0,
        kappa,
        skew_constants: None,
    })
}

/// Skew straight edge: remainders of `alpha_l` and `beta_l / rho` modulo the
/// reparameterization factor `rho` decide whether one extra direction exists.
fn case_b(
    g: &GluingData,
    d: usize,
    d_omega: i64,
    n_omega: usize,
    rho: &Poly,
) -> Result<CaseBuild> {
    let constant_rem = |p: &Poly, what: &str| -> Result<Rational> {
        let r = p.rem(rho)?;
        if r.deg_i() > 0 {
            return Err(Error::InternalInconsistency(format!(
                "{what} remainder modulo rho is not constant"
            )));
        }
        Ok(r.coeff(0))
    };
    let a1 = constant_rem(&g.alpha_l[0], "alpha_1")?;
    let a2 = constant_rem(&g.alpha_l[1], "alpha_2")?;
    let over_rho = |p: &Poly, what: &str| -> Result<Poly> {
        p.div_exact(rho)
            .map_err(|_| Error::InternalInconsistency(format!("{what} lost its rho factor")))
    };
    let b1 = constant_rem(&over_rho(&g.beta_l[0], "beta_1")?, "beta_1 / rho")?;
    let b2 = constant_rem(&over_rho(&g.beta_l[1], "beta_2")?, "beta_2 / rho")?;

    let branch_one = &a2 * &b1 != &a1 * &b2;
    let skew_constants = Some([a1.clone(), a2.clone(), b1.clone(), b2.clone()]);

    let mut directions = vec![Direction {
        name: "theta0".into(),
        group: ParamGroup::Theta,
        theta: Poly::one(),
        omega: Poly::zero(),
    }];
    for i in 0..d.saturating_sub(2) {
        directions.push(Direction {
            name: format!("tau{i}"),
            group: ParamGroup::Theta,
            theta: (&bernstein_mono(d - 3, i) * &g.beta).integral_from_zero(),
            omega: Poly::zero(),
        });
    }
    directions.push(Direction {
        name: "mu1".into(),
        group: ParamGroup::Theta,
        theta: rho.integral_from_zero(),
        omega: Poly::zero(),
    });
    if !branch_one {
        // proportional rows: one more direction built from the first
        // nonzero remainder row
        let (al, bl) = if !a1.is_zero() || !b1.is_zero() {
            (a1, b1)
        } else {
            (a2, b2)
        };
        directions.push(Direction {
            name: "mu2".into(),
            group: ParamGroup::Theta,
            theta: Poly::constant(al).integral_from_zero(),
            omega: rho.scale(&-bl),
        });
    }
    let (tag, n_theta, kappa) = if branch_one {
        (BranchTag::B1, d, 0)
    } else {
        (BranchTag::B2, d + 1, 1)
    };
    for j in 0..n_omega {
        directions.push(Direction {
            name: format!("omega{j}"),
            group: ParamGroup::Omega,
            theta: Poly::zero(),
            omega: &bernstein_mono(d_omega as usize, j) * &g.beta,
        });
    }
    Ok(CaseBuild {
        tag,
        directions,
        n_theta,
        n_omega,
        n_mu: 0,
        kappa,
        skew_constants,
    })
}

/// Parabolic edge: two extra directions determined by the hat remainders.
fn case_c(g: &GluingData, d: usize, d_omega: i64, n_omega: usize) -> Result<CaseBuild> {
    if g.beta.deg_i() != 2 {
        return Err(Error::InternalInconsistency(
            "parabolic edge requires a quadratic beta".into(),
        ));
    }
    let c = g.hat_cross_constant()?;
    let (tag, mu_dirs) = if !c.is_zero() {
        (
            BranchTag::CGeneric,
            [
                (g.alpha_hat[0].clone(), -&g.beta_hat[0]),
                (g.alpha_hat[1].clone(), -&g.beta_hat[1]),
            ],
        )
    } else {
        degenerate_mu_directions(g)?
    };

    let mut directions = vec![Direction {
        name: "theta0".into(),
        group: ParamGroup::Theta,
        theta: Poly::one(),
        omega: Poly::zero(),
    }];
    for i in 0..d.saturating_sub(2) {
        directions.push(Direction {
            name: format!("tau{i}"),
            group: ParamGroup::Theta,
            theta: (&bernstein_mono(d - 3, i) * &g.beta).integral_from_zero(),
            omega: Poly::zero(),
        });
    }
    for j in 0..n_omega {
        directions.push(Direction {
            name: format!("omega{j}"),
            group: ParamGroup::Omega,
            theta: Poly::zero(),
            omega: &bernstein_mono(d_omega as usize, j) * &g.beta,
        });
    }
    for (k, (tau_hat, omega_hat)) in mu_dirs.into_iter().enumerate() {
        directions.push(Direction {
            name: format!("mu{}", k + 1),
            group: ParamGroup::Mu,
            theta: tau_hat.integral_from_zero(),
            omega: omega_hat,
        });
    }
    Ok(CaseBuild {
        tag,
        directions,
        n_theta: d - 1,
        n_omega,
        n_mu: 2,
        kappa: 1,
        skew_constants: None,
    })
}

/// Degenerate parabolic sub-cases (hat cross constant zero): chooses the two
/// remainder directions (tau_hat, omega_hat) by the structure of the hats.
///
/// The dispatch order is fixed: vanishing beta hats, common factor,
/// proportional columns, proportional rows.
fn degenerate_mu_directions(g: &GluingData) -> Result<(BranchTag, [(Poly, Poly); 2])> {
    let lin = Poly::monomial(Rational::one(), 1);
    let ha = [&g.alpha_hat[0], &g.alpha_hat[1]];
    let hb = [&g.beta_hat[0], &g.beta_hat[1]];

    if hb[0].is_zero() && hb[1].is_zero() {
        return Ok((
            BranchTag::CBetaHatsZero,
            [(lin, Poly::zero()), (Poly::one(), Poly::zero())],
        ));
    }

    let hats = [ha[0], ha[1], hb[0], hb[1]];
    // common-factor form: every hat is a constant multiple of one zeta,
    // where zeta is either 1 (all hats constant) or a shared linear factor
    let multipliers: Option<Vec<Rational>> = if hats.iter().all(|h| h.deg_i() <= 0) {
        Some(hats.iter().map(|h| h.coeff(0)).collect())
    } else {
        let zeta = hats
            .iter()
            .find(|h| h.deg_i() == 1)
            .expect("a linear hat exists here");
        hats.iter().map(|h| constant_multiple_of(h, zeta)).collect()
    };
    if let Some(ms) = multipliers {
        let aa = [&ms[0], &ms[1]];
        let bb = [&ms[2], &ms[3]];
        let l = if !aa[0].is_zero() || !bb[0].is_zero() { 0 } else { 1 };
        return Ok((
            BranchTag::CCommonFactor,
            [
                (lin.scale(aa[l]), lin.scale(&-bb[l])),
                (Poly::constant(aa[l].clone()), Poly::constant(-bb[l])),
            ],
        ));
    }

    // columns proportional: alpha_hat_l = ct * beta_hat_l with one shared ct
    let mut candidates = Vec::new();
    for l in 0..2 {
        if let (Some(la), Some(lb)) = (ha[l].leading(), hb[l].leading()) {
            candidates.push(la / lb);
        }
    }
    for ct in candidates {
        if (0..2).all(|l| &hb[l].scale(&ct) == ha[l]) {
            return Ok((
                BranchTag::CPropColumns,
                [
                    (lin.scale(&-&ct), lin),
                    (Poly::constant(-&ct), Poly::one()),
                ],
            ));
        }
    }

    // rows proportional: work from the first nonzero row
    let l = if !ha[0].is_zero() || !hb[0].is_zero() { 0 } else { 1 };
    let (ha_l, hb_l) = (ha[l], hb[l]);
    if ha_l.deg_i() >= 1 {
        let dirs = row_directions(&g.beta, ha_l, hb_l, false)?;
        Ok((BranchTag::CPropRowsAlpha, dirs))
    } else if hb_l.deg_i() >= 1 {
        let dirs = row_directions(&g.beta, hb_l, ha_l, true)?;
        Ok((BranchTag::CPropRowsBeta, dirs))
    } else {
        Err(Error::SubcaseExhausted(
            "degenerate parabolic hats match no known structure".into(),
        ))
    }
}

/// Returns `s` with `h = s * zeta` if it exists (zero maps to scale 0).
fn constant_multiple_of(h: &Poly, zeta: &Poly) -> Option<Rational> {
    if h.is_zero() {
        return Some(Rational::zero());
    }
    if h.deg_i() != zeta.deg_i() {
        return None;
    }
    let s = h.leading().unwrap() / zeta.leading().unwrap();
    if &zeta.scale(&s) == h {
        Some(s)
    } else {
        None
    }
}

/// Directions for the proportional-row sub-cases.
///
/// Writing `z` for the nonconstant hat of the chosen row and expanding
/// `beta = c2 z^2 + c1 z + c0`, the paired hat is `w = w1 z + w0` and the two
/// remainder directions follow from eliminating `z` against `beta`. The
/// `swapped` flag moves the construction from the (alpha, beta) ordering to
/// the (beta, alpha) one.
fn row_directions(beta: &Poly, z: &Poly, w: &Poly, swapped: bool) -> Result<[(Poly, Poly); 2]> {
    let p = z.coeff(1);
    let q = z.coeff(0);
    if p.is_zero() {
        return Err(Error::InternalInconsistency(
            "row construction needs a nonconstant hat".into(),
        ));
    }
    let c2 = beta.coeff(2) / (&p * &p);
    let c1 = (beta.coeff(1) - rat_int(2) * &p * &q * &c2) / &p;
    let c0 = beta.coeff(0) - &c2 * &q * &q - &c1 * &q;
    if c0.is_zero() {
        return Err(Error::InternalInconsistency(
            "beta vanishes at the root of the hat factor".into(),
        ));
    }
    let w1 = w.coeff(1) / &p;
    let w0 = w.coeff(0) - &w1 * &q;

    let first_other = &z.scale(&-&w1) + &Poly::constant(-&w0);
    let second_other =
        &z.scale(&(&w0 * &c2 / &c0)) + &Poly::constant((&w0 * &c1 - &w1 * &c0) / &c0);
    let pair = if !swapped {
        [(z.clone(), first_other), (Poly::one(), second_other)]
    } else {
        [(first_other, z.clone()), (second_other, Poly::one())]
    };
    Ok(pair)
}
