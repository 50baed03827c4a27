//! Interpolatory basis construction by endpoint-derivative collocation.
//!
//! The interface block of the smooth space is parameterized by the direction
//! ledger of [`TraceNormalSpace`]. A square set of functionals (point values
//! and endpoint derivatives of the trace and of the rescaled normal
//! derivative) is collocated against the non-mu directions; its exact inverse
//! yields one basis function per functional. Remaining mu directions are
//! completed to functions annihilated by every functional and, optionally,
//! orthogonalized in the L2 inner product of the physical domain.

use num::{One, Signed, Zero};

use crate::c1space::{ParamGroup, TraceNormalSpace};
use crate::error::{Error, Result};
use crate::geometry::MeshPair;
use crate::polyalg::{net_indices, net_len, net_pos, to_bernstein, BiPoly, Poly};
use crate::rat::{rat, rat_int, Rational};

/// Row scaling profile for the functional set.
///
/// `Weighted` divides derivative rows by falling factorials of the relevant
/// degrees so all rows act on comparable coefficient scales; `Unit` leaves
/// every evaluation unscaled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScalingMode {
    Weighted,
    Unit,
}

/// Which interface quantity a functional acts on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionalTarget {
    /// The trace polynomial `theta`.
    Trace,
    /// The rescaled normal derivative `omega / gamma_primitive`.
    Normal,
}

impl FunctionalTarget {
    pub fn as_str(self) -> &'static str {
        match self {
            FunctionalTarget::Trace => "trace",
            FunctionalTarget::Normal => "normal",
        }
    }
}

/// One collocation functional: scaled derivative evaluation at a node.
#[derive(Debug, Clone)]
pub struct Functional {
    pub target: FunctionalTarget,
    pub node: Rational,
    pub order: usize,
    pub scale: Rational,
}

/// The collocation system for one space: functionals, the square matrix over
/// the non-mu directions, and the data needed to evaluate normal rows.
#[derive(Debug, Clone)]
pub struct Collocation {
    pub functionals: Vec<Functional>,
    /// Confluent endpoint order: derivatives up to this order are matched at
    /// both interface endpoints.
    pub k_confluent: usize,
    /// Scale base for normal rows: degree of `omega / gamma_primitive`.
    pub w_base: i64,
    pub gamma_prim: Poly,
    /// Entries `matrix[row][col]`, square of size n_theta + n_omega.
    pub matrix: Vec<Vec<Rational>>,
    /// Direction indices (into the space ledger) forming the columns.
    pub columns: Vec<usize>,
}

fn falling(x: i64, j: usize) -> i64 {
    (0..j as i64).map(|t| x - t).product()
}

/// Builds the functional layout for the given block sizes.
///
/// With at least two trace parameters, derivatives of order up to K are
/// matched at both endpoints (K chosen as large as both blocks allow) and
/// the remaining functionals are uniformly spaced point evaluations. A
/// single trace parameter degenerates to one point evaluation at 0.
pub fn functional_layout(
    n_t: usize,
    n_w: usize,
    d: usize,
    w_base: i64,
    scaling: ScalingMode,
) -> Result<(Vec<Functional>, usize)> {
    if n_t == 0 {
        return Err(Error::TooFewDofs(
            "no trace parameters to collocate".into(),
        ));
    }
    let k = if n_t >= 2 {
        ((n_t - 2) / 2).min(n_w / 2)
    } else {
        0
    };
    let weighted = scaling == ScalingMode::Weighted;
    let mut fs = Vec::with_capacity(n_t + n_w);
    let ends = [rat_int(0), rat_int(1)];

    if n_t >= 2 {
        for node in &ends {
            for j in 0..=k {
                let scale = if weighted {
                    rat_int(falling(d as i64, j))
                } else {
                    Rational::one()
                };
                fs.push(Functional {
                    target: FunctionalTarget::Trace,
                    node: node.clone(),
                    order: j,
                    scale,
                });
            }
        }
    } else {
        fs.push(Functional {
            target: FunctionalTarget::Trace,
            node: rat_int(0),
            order: 0,
            scale: Rational::one(),
        });
    }
    for node in &ends {
        for j in 0..k {
            let scale = if weighted {
                rat_int(falling(w_base, j + 1))
            } else {
                Rational::one()
            };
            fs.push(Functional {
                target: FunctionalTarget::Normal,
                node: node.clone(),
                order: j,
                scale,
            });
        }
    }
    if n_t >= 2 {
        let interior = n_t - 2 * k - 2;
        for i in 1..=interior {
            fs.push(Functional {
                target: FunctionalTarget::Trace,
                node: rat(i as i64, (interior + 1) as i64),
                order: 0,
                scale: Rational::one(),
            });
        }
    }
    let interior_w = n_w - 2 * k;
    for j in 1..=interior_w {
        let scale = if weighted {
            rat_int(w_base)
        } else {
            Rational::one()
        };
        fs.push(Functional {
            target: FunctionalTarget::Normal,
            node: rat(j as i64, (interior_w + 1) as i64),
            order: 0,
            scale,
        });
    }

    if fs.len() != n_t + n_w {
        return Err(Error::InternalInconsistency(format!(
            "functional layout produced {} rows for {} parameters",
            fs.len(),
            n_t + n_w
        )));
    }
    for f in &fs {
        if f.scale.is_zero() {
            return Err(Error::InternalInconsistency(
                "vanishing functional scale".into(),
            ));
        }
    }
    Ok((fs, k))
}

/// Order-th derivative of the quotient `p / q` at `node`, by iterating the
/// quotient rule symbolically.
fn quotient_deriv(p: &Poly, q: &Poly, node: &Rational, order: usize) -> Result<Rational> {
    let mut num = p.clone();
    let mut den = q.clone();
    for _ in 0..order {
        let next = &(&num.derivative() * &den) - &(&num * &den.derivative());
        den = &den * &den;
        num = next;
    }
    let dval = den.eval(node);
    if dval.is_zero() {
        return Err(Error::InternalInconsistency(format!(
            "normal-row denominator vanishes at {node}"
        )));
    }
    Ok(num.eval(node) / dval)
}

impl Collocation {
    pub fn build(space: &TraceNormalSpace, scaling: ScalingMode) -> Result<Self> {
        let gamma_prim = space.gluing.primitive_gamma();
        let w_base = space.d_omega + space.gluing.beta.deg_i() - gamma_prim.deg_i();
        let (functionals, k_confluent) =
            functional_layout(space.n_theta, space.n_omega, space.degree, w_base, scaling)?;
        let columns: Vec<usize> = space
            .directions
            .iter()
            .enumerate()
            .filter(|(_, dir)| dir.group != ParamGroup::Mu)
            .map(|(i, _)| i)
            .collect();
        if columns.len() != space.n_theta + space.n_omega {
            return Err(Error::InternalInconsistency(format!(
                "{} collocation columns for {} trace/normal parameters",
                columns.len(),
                space.n_theta + space.n_omega
            )));
        }
        let mut matrix = Vec::with_capacity(functionals.len());
        for f in &functionals {
            let mut row = Vec::with_capacity(columns.len());
            for &ci in &columns {
                row.push(apply_functional(f, space, ci, &gamma_prim)?);
            }
            matrix.push(row);
        }
        Ok(Collocation {
            functionals,
            k_confluent,
            w_base,
            gamma_prim,
            matrix,
            columns,
        })
    }

    /// Applies every functional to an arbitrary direction of the ledger.
    fn functional_column(&self, space: &TraceNormalSpace, dir_index: usize) -> Result<Vec<Rational>> {
        self.functionals
            .iter()
            .map(|f| apply_functional(f, space, dir_index, &self.gamma_prim))
            .collect()
    }
}

/// Applies one functional to an arbitrary trace/normal pair.
pub fn apply_to_pair(
    f: &Functional,
    theta: &Poly,
    omega: &Poly,
    gamma_prim: &Poly,
) -> Result<Rational> {
    let value = match f.target {
        FunctionalTarget::Trace => theta.eval_deriv(&f.node, f.order),
        FunctionalTarget::Normal => quotient_deriv(omega, gamma_prim, &f.node, f.order)?,
    };
    Ok(value / &f.scale)
}

fn apply_functional(
    f: &Functional,
    space: &TraceNormalSpace,
    dir_index: usize,
    gamma_prim: &Poly,
) -> Result<Rational> {
    let dir = &space.directions[dir_index];
    apply_to_pair(f, &dir.theta, &dir.omega, gamma_prim)
}

/// Exact inverse by Gauss-Jordan elimination.
fn invert_matrix(m: &[Vec<Rational>]) -> Result<Vec<Vec<Rational>>> {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut inv: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { Rational::one() } else { Rational::zero() })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::SingularCollocation(format!("pivot lost in column {col}")))?;
        a.swap(col, piv);
        inv.swap(col, piv);
        let p = a[col][col].clone();
        for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
            *x = &*x / &p;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in 0..n {
                let t = &a[col][c] * &factor;
                a[r][c] = &a[r][c] - &t;
                let t = &inv[col][c] * &factor;
                inv[r][c] = &inv[r][c] - &t;
            }
        }
    }
    Ok(inv)
}

/// One basis function of the smooth space, stored as a Bernstein net per
/// element together with its interface data (zero for interior functions).
#[derive(Debug, Clone)]
pub struct IsoFunction {
    pub tag: String,
    pub nets: [Vec<Rational>; 2],
    pub trace: Poly,
    pub normal: Poly,
}

/// A full basis of the smooth space at one degree.
#[derive(Debug, Clone)]
pub struct BasisSet {
    pub degree: usize,
    pub collocation: Collocation,
    pub functions: Vec<IsoFunction>,
}

/// Builds the two Bernstein nets realizing an admissible pair.
///
/// Row 0 carries the trace; row 1 follows from the transversal derivative
/// `eta_l`; all deeper rows stay zero.
pub fn interface_nets(
    mesh: &MeshPair,
    space: &TraceNormalSpace,
    theta: &Poly,
    omega: &Poly,
) -> Result<[Vec<Rational>; 2]> {
    let d = space.degree;
    let etas = space.eta_pair(theta, omega)?;
    let trace = to_bernstein(theta, d)?;
    let mut nets: [Vec<Rational>; 2] = [Vec::new(), Vec::new()];
    for l in 0..2 {
        let domain = mesh.elements[l].kind.domain();
        let mut net = vec![Rational::zero(); net_len(domain, d)];
        for (j, b) in trace.iter().enumerate() {
            net[net_pos(domain, d, 0, j)] = b.clone();
        }
        let row_deg = d - 1 + space.sigma[l];
        let eta_b = to_bernstein(&etas[l], row_deg)?;
        for (j, e) in eta_b.iter().enumerate() {
            net[net_pos(domain, d, 1, j)] = &trace[j] + &(e / &rat_int(d as i64));
        }
        nets[l] = net;
    }
    Ok(nets)
}

/// Exact L2 inner product over the physical domain.
///
/// Each element contributes its reference integral of `f * g * det(grad F)`,
/// multiplied by the orientation sign of its parameterization so both
/// elements add positively regardless of handedness.
pub fn inner_product(
    mesh: &MeshPair,
    space: &TraceNormalSpace,
    f: &IsoFunction,
    g: &IsoFunction,
) -> Result<Rational> {
    let signs = space.gluing.orientation_signs()?;
    let d = space.degree;
    let mut total = Rational::zero();
    for l in 0..2 {
        let domain = mesh.elements[l].kind.domain();
        let fb = BiPoly::from_bernstein_net(domain, d, &f.nets[l]);
        let gb = BiPoly::from_bernstein_net(domain, d, &g.nets[l]);
        let jac = mesh.elements[l].jacobian_det();
        let val = fb.mul(&gb).mul(&jac).integral(domain);
        total += val * rat_int(signs[l] as i64);
    }
    Ok(total)
}

impl BasisSet {
    /// Generates the complete basis: one interpolatory function per
    /// collocation functional, completed mu functions, then the interior
    /// Bernstein coefficients of both elements.
    pub fn generate(
        mesh: &MeshPair,
        space: &TraceNormalSpace,
        scaling: ScalingMode,
        orthogonalize_mu: bool,
    ) -> Result<Self> {
        let d = space.degree;
        let coll = Collocation::build(space, scaling)?;
        let inverse = invert_matrix(&coll.matrix)?;
        let n = coll.columns.len();
        let mut functions = Vec::new();

        let combine = |coeffs: &dyn Fn(usize) -> Rational| -> (Poly, Poly) {
            let mut theta = Poly::zero();
            let mut omega = Poly::zero();
            for (j, &ci) in coll.columns.iter().enumerate() {
                let c = coeffs(j);
                if c.is_zero() {
                    continue;
                }
                let dir = &space.directions[ci];
                theta = &theta + &dir.theta.scale(&c);
                omega = &omega + &dir.omega.scale(&c);
            }
            (theta, omega)
        };

        for i in 0..n {
            let (theta, omega) = combine(&|j| inverse[j][i].clone());
            let nets = interface_nets(mesh, space, &theta, &omega)?;
            functions.push(IsoFunction {
                tag: format!("dof-{i}"),
                nets,
                trace: theta,
                normal: omega,
            });
        }

        let mu_indices: Vec<usize> = space
            .directions
            .iter()
            .enumerate()
            .filter(|(_, dir)| dir.group == ParamGroup::Mu)
            .map(|(i, _)| i)
            .collect();
        for (k, &mi) in mu_indices.iter().enumerate() {
            let rhs = coll.functional_column(space, mi)?;
            // annihilate every functional: x = -inverse * rhs
            let x: Vec<Rational> = (0..n)
                .map(|r| {
                    let mut acc = Rational::zero();
                    for (c, rv) in rhs.iter().enumerate() {
                        acc += &inverse[r][c] * rv;
                    }
                    -acc
                })
                .collect();
            let (mut theta, mut omega) = combine(&|j| x[j].clone());
            let dir = &space.directions[mi];
            theta = &theta + &dir.theta;
            omega = &omega + &dir.omega;
            let nets = interface_nets(mesh, space, &theta, &omega)?;
            functions.push(IsoFunction {
                tag: format!("mu-{}", k + 1),
                nets,
                trace: theta,
                normal: omega,
            });
        }

        if orthogonalize_mu && mu_indices.len() == 2 {
            let g1 = functions[n].clone();
            let norm1 = inner_product(mesh, space, &g1, &g1)?;
            if !norm1.is_positive() {
                return Err(Error::MixedOrientation(format!(
                    "first mu function has signed norm {norm1}"
                )));
            }
            let cross = inner_product(mesh, space, &functions[n + 1], &g1)?;
            let factor = cross / norm1;
            let g2 = &mut functions[n + 1];
            for l in 0..2 {
                for (dst, src) in g2.nets[l].iter_mut().zip(&g1.nets[l]) {
                    let t = src * &factor;
                    *dst = &*dst - &t;
                }
            }
            g2.trace = &g2.trace - &g1.trace.scale(&factor);
            g2.normal = &g2.normal - &g1.normal.scale(&factor);
        }

        for l in 0..2 {
            let domain = mesh.elements[l].kind.domain();
            for (i, j) in net_indices(domain, d) {
                if i < 2 {
                    continue;
                }
                let mut nets = [
                    vec![Rational::zero(); net_len(mesh.elements[0].kind.domain(), d)],
                    vec![Rational::zero(); net_len(mesh.elements[1].kind.domain(), d)],
                ];
                nets[l][net_pos(domain, d, i, j)] = Rational::one();
                functions.push(IsoFunction {
                    tag: format!("int{}-{}-{}", l + 1, i, j),
                    nets,
                    trace: Poly::zero(),
                    normal: Poly::zero(),
                });
            }
        }

        let dims = space.dimensions();
        if functions.len() != dims.total {
            return Err(Error::InternalInconsistency(format!(
                "{} basis functions for a dimension of {}",
                functions.len(),
                dims.total
            )));
        }
        Ok(BasisSet {
            degree: d,
            collocation: coll,
            functions,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn falling_factorials() {
        assert_eq!(falling(5, 0), 1);
        assert_eq!(falling(5, 2), 20);
        assert_eq!(falling(3, 4), 0);
    }

    #[test]
    fn layout_counts_and_orders() {
        let (fs, k) = functional_layout(6, 5, 6, 7, ScalingMode::Weighted).unwrap();
        assert_eq!(k, 2);
        assert_eq!(fs.len(), 11);
        let traces = fs
            .iter()
            .filter(|f| f.target == FunctionalTarget::Trace)
            .count();
        assert_eq!(traces, 6);
        // endpoint trace rows carry falling-factorial scales
        assert_eq!(fs[0].scale, rat_int(1));
        assert_eq!(fs[1].scale, rat_int(6));
        assert_eq!(fs[2].scale, rat_int(30));
    }

    #[test]
    fn single_trace_parameter_degenerates_to_point_rows() {
        let (fs, k) = functional_layout(1, 2, 2, 2, ScalingMode::Weighted).unwrap();
        assert_eq!(k, 0);
        assert_eq!(fs.len(), 3);
        assert_eq!(fs[0].node, rat_int(0));
        assert_eq!(fs[1].node, rat(1, 3));
        assert_eq!(fs[2].node, rat(2, 3));
    }

    #[test]
    fn inverts_small_matrix() {
        let m = vec![
            vec![rat_int(2), rat_int(1)],
            vec![rat_int(1), rat_int(1)],
        ];
        let inv = invert_matrix(&m).unwrap();
        assert_eq!(inv[0], vec![rat_int(1), rat_int(-1)]);
        assert_eq!(inv[1], vec![rat_int(-1), rat_int(2)]);
    }

    #[test]
    fn singular_matrix_is_reported() {
        let m = vec![
            vec![rat_int(1), rat_int(2)],
            vec![rat_int(2), rat_int(4)],
        ];
        assert!(matches!(
            invert_matrix(&m),
            Err(Error::SingularCollocation(_))
        ));
    }

    #[test]
    fn quotient_derivatives_match_hand_results() {
        // p/q = (v^2)/(1+v): value 1/2, derivative (2v(1+v)-v^2)/(1+v)^2 = 3/4 at 1
        let p = Poly::new(vec![rat_int(0), rat_int(0), rat_int(1)]);
        let q = Poly::new(vec![rat_int(1), rat_int(1)]);
        assert_eq!(quotient_deriv(&p, &q, &rat_int(1), 0).unwrap(), rat(1, 2));
        assert_eq!(quotient_deriv(&p, &q, &rat_int(1), 1).unwrap(), rat(3, 4));
    }
}
