//! Report structures for the command-line and Python front ends.
//!
//! All rational values are serialized as strings (exact decimal when the
//! denominator allows, `p/q` otherwise); polynomials as low-degree-first
//! monomial coefficient arrays. Struct field order fixes the JSON key order,
//! so identical inputs produce byte-identical output.

use serde::Serialize;

use crate::basisgen::{BasisSet, ScalingMode};
use crate::c1space::TraceNormalSpace;
use crate::error::Result;
use crate::geometry::MeshPair;
use crate::gluing::GammaNormalization;
use crate::polyalg::Poly;
use crate::rat::{rational_string, to_f64, Rational};
use crate::verify::{c1_identity_check, condition_number, dimension_oracle, gradient_jump};

/// Exact-zero checks tolerate nothing; this bound only applies to the
/// floating-point gradient probe.
pub const GRADIENT_TOLERANCE: f64 = 1e-10;

pub fn poly_strings(p: &Poly) -> Vec<String> {
    p.coeffs().iter().map(rational_string).collect()
}

fn rat_string(x: &Rational) -> String {
    rational_string(x)
}

#[derive(Debug, Clone, Serialize)]
pub struct CaseReport {
    pub edge: String,
    pub case: String,
    pub branch: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct GluingReport {
    pub alpha_tilde: [Vec<String>; 2],
    pub alpha: Vec<String>,
    pub beta: Vec<String>,
    pub beta_l: [Vec<String>; 2],
    pub gamma: Vec<String>,
    pub gamma_normalization: String,
    pub alpha_l: [Vec<String>; 2],
    pub alpha_hat: [Vec<String>; 2],
    pub alpha_star: [Vec<String>; 2],
    pub beta_hat: [Vec<String>; 2],
    pub beta_star: [Vec<String>; 2],
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionsReport {
    pub degree: usize,
    pub total: usize,
    pub interior: usize,
    pub interface: usize,
    pub n_theta: usize,
    pub n_omega: usize,
    pub n_mu: usize,
    pub d_omega: i64,
    pub m_shift: i64,
    pub kappa: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct FreeParameterReport {
    pub name: String,
    pub group: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalyzeReport {
    pub degree: usize,
    #[serde(flatten)]
    pub case: CaseReport,
    pub dimensions: DimensionsReport,
    pub gluing: GluingReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub skew_constants: Option<[String; 4]>,
    pub free_parameters: Vec<FreeParameterReport>,
}

fn pair_strings(ps: &[Poly; 2]) -> [Vec<String>; 2] {
    [poly_strings(&ps[0]), poly_strings(&ps[1])]
}

pub fn case_report(space: &TraceNormalSpace) -> CaseReport {
    CaseReport {
        edge: space.edge.label().to_string(),
        case: space.branch.case_label().to_string(),
        branch: space.branch.branch_name().to_string(),
    }
}

pub fn dimensions_report(space: &TraceNormalSpace) -> DimensionsReport {
    let dims = space.dimensions();
    DimensionsReport {
        degree: dims.degree,
        total: dims.total,
        interior: dims.interior,
        interface: dims.interface,
        n_theta: dims.n_theta,
        n_omega: dims.n_omega,
        n_mu: dims.n_mu,
        d_omega: dims.d_omega,
        m_shift: dims.m_shift,
        kappa: dims.kappa,
    }
}

pub fn gluing_report(space: &TraceNormalSpace) -> GluingReport {
    let g = &space.gluing;
    GluingReport {
        alpha_tilde: pair_strings(&g.alpha_tilde),
        alpha: poly_strings(&g.alpha),
        beta: poly_strings(&g.beta),
        beta_l: pair_strings(&g.beta_l),
        gamma: poly_strings(&g.gamma),
        gamma_normalization: match g.gamma_normalization {
            GammaNormalization::UnitValueAtZero => "unit-value-at-zero".to_string(),
            GammaNormalization::LeadingCoefficient => "leading-coefficient".to_string(),
        },
        alpha_l: pair_strings(&g.alpha_l),
        alpha_hat: pair_strings(&g.alpha_hat),
        alpha_star: pair_strings(&g.alpha_star),
        beta_hat: pair_strings(&g.beta_hat),
        beta_star: pair_strings(&g.beta_star),
    }
}

pub fn analyze_report(space: &TraceNormalSpace) -> AnalyzeReport {
    AnalyzeReport {
        degree: space.degree,
        case: case_report(space),
        dimensions: dimensions_report(space),
        gluing: gluing_report(space),
        skew_constants: space
            .skew_constants
            .as_ref()
            .map(|cs| [0, 1, 2, 3].map(|i| rat_string(&cs[i]))),
        free_parameters: space
            .directions
            .iter()
            .map(|dir| FreeParameterReport {
                name: dir.name.clone(),
                group: dir.group.as_str().to_string(),
            })
            .collect(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FunctionalReport {
    pub target: String,
    pub node: String,
    pub order: usize,
    pub scale: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FunctionReport {
    pub tag: String,
    pub net1: Vec<String>,
    pub net2: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub net1_float: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub net2_float: Option<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BasisReport {
    pub degree: usize,
    #[serde(flatten)]
    pub case: CaseReport,
    pub dimensions: DimensionsReport,
    pub scaling: String,
    pub mu_orthogonalized: bool,
    pub functionals: Vec<FunctionalReport>,
    pub condition_number: f64,
    pub functions: Vec<FunctionReport>,
}

pub fn basis_report(
    space: &TraceNormalSpace,
    basis: &BasisSet,
    scaling: ScalingMode,
    mu_orthogonalized: bool,
    with_float: bool,
) -> BasisReport {
    let functionals = basis
        .collocation
        .functionals
        .iter()
        .map(|f| FunctionalReport {
            target: f.target.as_str().to_string(),
            node: rat_string(&f.node),
            order: f.order,
            scale: rat_string(&f.scale),
        })
        .collect();
    let functions = basis
        .functions
        .iter()
        .map(|f| {
            let floats = |net: &Vec<Rational>| net.iter().map(to_f64).collect::<Vec<f64>>();
            FunctionReport {
                tag: f.tag.clone(),
                net1: f.nets[0].iter().map(rat_string).collect(),
                net2: f.nets[1].iter().map(rat_string).collect(),
                net1_float: with_float.then(|| floats(&f.nets[0])),
                net2_float: with_float.then(|| floats(&f.nets[1])),
            }
        })
        .collect();
    BasisReport {
        degree: basis.degree,
        case: case_report(space),
        dimensions: dimensions_report(space),
        scaling: match scaling {
            ScalingMode::Weighted => "weighted".to_string(),
            ScalingMode::Unit => "unit".to_string(),
        },
        mu_orthogonalized,
        functionals,
        condition_number: condition_number(&basis.collocation.matrix),
        functions,
    }
}

/// Which verification passes to run.
#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub identity: bool,
    pub oracle: bool,
    pub gradient_samples: Option<usize>,
    pub cond: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            identity: true,
            oracle: true,
            gradient_samples: Some(101),
            cond: true,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdentityCheckReport {
    pub functions_checked: usize,
    pub failures: Vec<String>,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleCheckReport {
    pub constructed: usize,
    pub independent: usize,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GradientCheckReport {
    pub samples: usize,
    pub max_jump: f64,
    pub tolerance: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub degree: usize,
    #[serde(flatten)]
    pub case: CaseReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub identity: Option<IdentityCheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle: Option<OracleCheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gradient: Option<GradientCheckReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub condition_number: Option<f64>,
    pub passed: bool,
}

/// Runs the requested verification passes over a generated basis.
pub fn run_verification(
    mesh: &MeshPair,
    space: &TraceNormalSpace,
    basis: &BasisSet,
    opts: &VerifyOptions,
) -> Result<VerifyReport> {
    let d = space.degree;
    let mut passed = true;

    let identity = if opts.identity {
        let mut failures = Vec::new();
        for f in &basis.functions {
            let rep = c1_identity_check(mesh, &space.gluing, d, &f.nets)?;
            if !rep.passed() {
                failures.push(f.tag.clone());
            }
        }
        let ok = failures.is_empty();
        passed &= ok;
        Some(IdentityCheckReport {
            functions_checked: basis.functions.len(),
            failures,
            passed: ok,
        })
    } else {
        None
    };

    let oracle = if opts.oracle {
        let independent = dimension_oracle(mesh, d)?;
        let constructed = space.dimensions().total;
        let ok = independent == constructed;
        passed &= ok;
        Some(OracleCheckReport {
            constructed,
            independent,
            passed: ok,
        })
    } else {
        None
    };

    let gradient = if let Some(samples) = opts.gradient_samples {
        let mut max_jump = 0.0f64;
        for f in &basis.functions {
            max_jump = max_jump.max(gradient_jump(mesh, d, &f.nets, samples)?);
        }
        let ok = max_jump <= GRADIENT_TOLERANCE;
        passed &= ok;
        Some(GradientCheckReport {
            samples,
            max_jump,
            tolerance: GRADIENT_TOLERANCE,
            passed: ok,
        })
    } else {
        None
    };

    let cond = opts
        .cond
        .then(|| condition_number(&basis.collocation.matrix));

    Ok(VerifyReport {
        degree: d,
        case: case_report(space),
        identity,
        oracle,
        gradient,
        condition_number: cond,
        passed,
    })
}

/// Serializes any report deterministically.
pub fn to_json_pretty<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report structs serialize infallibly")
}
