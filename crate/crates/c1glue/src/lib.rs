//! Exact construction of C1-smooth isogeometric spline spaces over a pair of
//! planar quadratic Bézier elements sharing one edge.
//!
//! All symbolic computation is carried out in arbitrary-precision rational
//! arithmetic; floating point appears only in final reports (condition
//! numbers, gradient-jump estimates, surface samples).

pub mod basisgen;
pub mod c1space;
pub mod error;
pub mod examples;
pub mod geometry;
pub mod gluing;
pub mod polyalg;
pub mod rat;
pub mod report;
pub mod verify;

pub use basisgen::{
    apply_to_pair, inner_product, BasisSet, Collocation, Functional, FunctionalTarget,
    IsoFunction, ScalingMode,
};
pub use c1space::{
    interior_count, BranchTag, Direction, ParamGroup, SpaceDimensions, TraceNormalSpace,
};
pub use error::{Error, ErrorCategory, Result};
pub use examples::{example_mesh, EXAMPLE_NAMES};
pub use geometry::{Element, ElementKind, MeshPair, GEOMETRY_DEGREE};
pub use gluing::{classify_edge, EdgeShape, GammaNormalization, GluingData};
pub use rat::{parse_rational, rat, rat_int, rational_string, to_f64, Rational};
pub use report::{analyze_report, basis_report, run_verification, VerifyOptions};
pub use verify::{
    c1_identity_check, condition_number, dimension_oracle, gradient_jump, sample_surface,
    C1Report, SampleRow,
};
