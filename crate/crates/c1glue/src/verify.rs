//! Independent checks on constructed bases: exact smoothness identities, an
//! independent dimension count, numerical gradient jumps, and conditioning.

use std::collections::BTreeMap;

use nalgebra::DMatrix;
use num::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::MeshPair;
use crate::gluing::GluingData;
use crate::polyalg::{bernstein_mono, net_indices, net_len, net_pos, BiPoly, Poly};
use crate::rat::{rat, rat_int, to_f64, Rational};

/// Exact residuals of the smoothness conditions for one net pair.
#[derive(Debug, Clone)]
pub struct C1Report {
    /// Difference of the two traces, `f_1(0, .) - f_2(0, .)`.
    pub trace_residual: Poly,
    /// Residual of `at_1 * du f_2 - at_2 * du f_1 + alpha * dv f_1`.
    pub identity_residual: Poly,
}

impl C1Report {
    pub fn passed(&self) -> bool {
        self.trace_residual.is_zero() && self.identity_residual.is_zero()
    }
}

/// Exact smoothness check for one function given as a Bernstein net pair.
///
/// Verifies that both elements share the same trace and that the matching
/// condition `at_1 * du f_2 - at_2 * du f_1 + alpha * dv f_1 = 0` holds
/// identically along the interface, where `at_l` are the edge Jacobians and
/// `alpha` couples the two transversal directions. Both residuals are exact
/// polynomials; no tolerance is involved.
pub fn c1_identity_check(
    mesh: &MeshPair,
    gluing: &GluingData,
    d: usize,
    nets: &[Vec<Rational>; 2],
) -> Result<C1Report> {
    let mut traces = Vec::new();
    let mut du_traces = Vec::new();
    for l in 0..2 {
        let domain = mesh.elements[l].kind.domain();
        if nets[l].len() != net_len(domain, d) {
            return Err(Error::InternalInconsistency(format!(
                "net {} has {} coefficients, expected {}",
                l + 1,
                nets[l].len(),
                net_len(domain, d)
            )));
        }
        let f = BiPoly::from_bernstein_net(domain, d, &nets[l]);
        traces.push(f.restrict_u0());
        du_traces.push(f.partial_u().restrict_u0());
    }
    let trace_residual = &traces[0] - &traces[1];
    let dv_trace = traces[0].derivative();
    let identity_residual = &(&(&gluing.alpha_tilde[0] * &du_traces[1])
        - &(&gluing.alpha_tilde[1] * &du_traces[0]))
        + &(&gluing.alpha * &dv_trace);
    Ok(C1Report {
        trace_residual,
        identity_residual,
    })
}

/// Largest Euclidean norm of the physical gradient jump across the
/// interface, evaluated at `samples` uniform nodes.
///
/// Gradients are computed in exact arithmetic at each node; only the final
/// norm is floating point, so the result measures the construction rather
/// than evaluation roundoff.
pub fn gradient_jump(
    mesh: &MeshPair,
    d: usize,
    nets: &[Vec<Rational>; 2],
    samples: usize,
) -> Result<f64> {
    if samples < 2 {
        return Err(Error::InternalInconsistency(
            "gradient sampling needs at least two nodes".into(),
        ));
    }
    let mut fields = Vec::new();
    for l in 0..2 {
        let domain = mesh.elements[l].kind.domain();
        let f = BiPoly::from_bernstein_net(domain, d, &nets[l]);
        let x = mesh.elements[l].coordinate_poly(0);
        let y = mesh.elements[l].coordinate_poly(1);
        fields.push((
            f.partial_u(),
            f.partial_v(),
            x.partial_u(),
            x.partial_v(),
            y.partial_u(),
            y.partial_v(),
        ));
    }
    let zero = rat_int(0);
    let mut worst = 0.0f64;
    for s in 0..samples {
        let v = rat(s as i64, (samples - 1) as i64);
        let mut grads = Vec::new();
        for (fu, fv, xu, xv, yu, yv) in &fields {
            let fu = fu.eval(&zero, &v);
            let fv = fv.eval(&zero, &v);
            let xu = xu.eval(&zero, &v);
            let xv = xv.eval(&zero, &v);
            let yu = yu.eval(&zero, &v);
            let yv = yv.eval(&zero, &v);
            let det = &(&xu * &yv) - &(&xv * &yu);
            if det.is_zero() {
                return Err(Error::IrregularOnInterface(format!(
                    "vanishing Jacobian at v = {v}"
                )));
            }
            let gx = (&(&yv * &fu) - &(&yu * &fv)) / &det;
            let gy = (&(&xu * &fv) - &(&xv * &fu)) / &det;
            grads.push((gx, gy));
        }
        let dx = &grads[0].0 - &grads[1].0;
        let dy = &grads[0].1 - &grads[1].1;
        let jump = (to_f64(&dx).powi(2) + to_f64(&dy).powi(2)).sqrt();
        worst = worst.max(jump);
    }
    Ok(worst)
}

fn rank(mut rows: Vec<Vec<Rational>>, ncols: usize) -> usize {
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    let mut rank = 0;
    let mut row = 0;
    for col in 0..ncols {
        let Some(piv) = (row..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
            continue;
        };
        rows.swap(row, piv);
        let p = rows[row][col].clone();
        for x in rows[row].iter_mut() {
            *x = &*x / &p;
        }
        for r in 0..rows.len() {
            if r == row || rows[r][col].is_zero() {
                continue;
            }
            let factor = rows[r][col].clone();
            for c in col..ncols {
                let t = &rows[row][c] * &factor;
                rows[r][c] = &rows[r][c] - &t;
            }
        }
        row += 1;
        rank += 1;
        if row == rows.len() {
            break;
        }
    }
    rank
}

/// Dimension of the smooth space computed directly from the coefficient
/// constraints, without the case analysis.
///
/// Unknowns are all Bernstein coefficients of both elements; constraints are
/// trace equality and the coefficients of the exact matching condition.
pub fn dimension_oracle(mesh: &MeshPair, d: usize) -> Result<usize> {
    let gluing = GluingData::compute(mesh)?;
    let domains = [
        mesh.elements[0].kind.domain(),
        mesh.elements[1].kind.domain(),
    ];
    let offsets = [0, net_len(domains[0], d)];
    let ncols = offsets[1] + net_len(domains[1], d);
    let pos = |l: usize, i: usize, j: usize| offsets[l] + net_pos(domains[l], d, i, j);

    let mut rows = Vec::new();
    for j in 0..=d {
        let mut row = vec![Rational::zero(); ncols];
        row[pos(0, 0, j)] = Rational::one();
        row[pos(1, 0, j)] = -Rational::one();
        rows.push(row);
    }

    // polynomial contribution of each unknown to the matching condition
    let mut contribs: BTreeMap<usize, Poly> = BTreeMap::new();
    let mut acc = |col: usize, p: Poly| {
        let entry = contribs.entry(col).or_insert_with(Poly::zero);
        *entry = &*entry + &p;
    };
    let d_i = rat_int(d as i64);
    let weights = [
        (1usize, gluing.alpha_tilde[0].clone()),
        (0usize, gluing.alpha_tilde[1].scale(&-Rational::one())),
    ];
    for (l, weight) in weights {
        let row_deg = d - 1 + mesh.elements[l].kind.sigma();
        for j in 0..=row_deg {
            let b = bernstein_mono(row_deg, j).scale(&d_i);
            acc(pos(l, 1, j), &b * &weight);
            acc(pos(l, 0, j), &b.scale(&-Rational::one()) * &weight);
        }
    }
    for j in 0..=d {
        let b = bernstein_mono(d, j).derivative();
        acc(pos(0, 0, j), &b * &gluing.alpha);
    }

    let max_deg = contribs
        .values()
        .map(|p| p.deg_i())
        .max()
        .unwrap_or(-1);
    for k in 0..=max_deg {
        let mut row = vec![Rational::zero(); ncols];
        let mut nonzero = false;
        for (&col, p) in &contribs {
            let c = p.coeff(k as usize);
            if !c.is_zero() {
                nonzero = true;
            }
            row[col] = c;
        }
        if nonzero {
            rows.push(row);
        }
    }

    Ok(ncols - rank(rows, ncols))
}

/// Spectral condition number of a rational matrix, computed in floating
/// point.
pub fn condition_number(matrix: &[Vec<Rational>]) -> f64 {
    let n = matrix.len();
    if n == 0 {
        return 1.0;
    }
    let m = DMatrix::from_fn(n, matrix[0].len(), |r, c| to_f64(&matrix[r][c]));
    let sv = m.svd(false, false).singular_values;
    let smax = sv.iter().cloned().fold(0.0f64, f64::max);
    let smin = sv.iter().cloned().fold(f64::INFINITY, f64::min);
    if smin == 0.0 {
        f64::INFINITY
    } else {
        smax / smin
    }
}

/// One evaluated surface point, in reference and physical coordinates.
#[derive(Debug, Clone, Serialize)]
pub struct SampleRow {
    pub elem: usize,
    pub u: f64,
    pub v: f64,
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

/// Evaluates a net pair on a uniform reference grid with `n + 1` nodes per
/// direction (triangles keep `i + j <= n`).
pub fn sample_surface(
    mesh: &MeshPair,
    d: usize,
    nets: &[Vec<Rational>; 2],
    n: usize,
) -> Result<Vec<SampleRow>> {
    if n == 0 {
        return Err(Error::Parse("grid resolution must be positive".into()));
    }
    let mut out = Vec::new();
    for l in 0..2 {
        let domain = mesh.elements[l].kind.domain();
        if nets[l].len() != net_len(domain, d) {
            return Err(Error::InternalInconsistency(format!(
                "net {} has {} coefficients, expected {}",
                l + 1,
                nets[l].len(),
                net_len(domain, d)
            )));
        }
        let f = BiPoly::from_bernstein_net(domain, d, &nets[l]);
        let x = mesh.elements[l].coordinate_poly(0);
        let y = mesh.elements[l].coordinate_poly(1);
        for (i, j) in grid_nodes(domain, n) {
            let u = rat(i as i64, n as i64);
            let v = rat(j as i64, n as i64);
            out.push(SampleRow {
                elem: l + 1,
                u: to_f64(&u),
                v: to_f64(&v),
                x: to_f64(&x.eval(&u, &v)),
                y: to_f64(&y.eval(&u, &v)),
                value: to_f64(&f.eval(&u, &v)),
            });
        }
    }
    Ok(out)
}

fn grid_nodes(domain: crate::polyalg::Domain, n: usize) -> Vec<(usize, usize)> {
    net_indices(domain, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    #[test]
    fn rank_of_simple_systems() {
        let rows = vec![
            vec![rat_int(1), rat_int(2), rat_int(3)],
            vec![rat_int(2), rat_int(4), rat_int(6)],
            vec![rat_int(0), rat_int(1), rat_int(1)],
        ];
        assert_eq!(rank(rows, 3), 2);
        assert_eq!(rank(vec![vec![rat_int(0); 3]], 3), 0);
    }

    #[test]
    fn condition_number_of_diagonal() {
        let m = vec![
            vec![rat_int(4), rat_int(0)],
            vec![rat_int(0), rat_int(2)],
        ];
        assert!((condition_number(&m) - 2.0).abs() < 1e-12);
    }
}
