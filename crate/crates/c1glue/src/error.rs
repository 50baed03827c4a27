use thiserror::Error;

/// Coarse error category used by callers to pick an exit code.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorCategory {
    /// Input could not be read as a mesh description at all.
    Parse,
    /// Input parsed but violates a mesh validity requirement.
    Validation,
    /// A construction or verification step failed on valid input.
    Computation,
}

/// Errors produced by mesh handling, space construction and verification.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    /// The two elements do not share the interface edge control points.
    #[error("edge mismatch: {0}")]
    EdgeMismatch(String),

    /// A geometry Jacobian vanishes somewhere on the interface.
    #[error("geometry is irregular on the interface: {0}")]
    IrregularOnInterface(String),

    /// The gluing data degenerates (beta vanishes on the interface).
    #[error("irregular gluing data: {0}")]
    IrregularGluing(String),

    /// The interface edge collapses (equal endpoint control points).
    #[error("degenerate interface edge: {0}")]
    DegenerateEdge(String),

    /// An internal identity that must hold by construction failed.
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    /// A construction was requested for an interface case it does not cover.
    #[error("wrong case: {0}")]
    WrongCase(String),

    /// No sub-case of the degenerate-interface analysis matched.
    #[error("sub-case dispatch exhausted: {0}")]
    SubcaseExhausted(String),

    /// A smoothness condition that should hold for a constructed direction failed.
    #[error("formula mismatch: {0}")]
    FormulaMismatch(String),

    #[error("polynomial division left a remainder: {0}")]
    NotDivisible(String),

    #[error("degree bound exceeded: {0}")]
    DegreeExceeded(String),

    /// The requested construction has too few free parameters to interpolate.
    #[error("too few degrees of freedom: {0}")]
    TooFewDofs(String),

    #[error("collocation matrix is singular: {0}")]
    SingularCollocation(String),

    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    /// Element orientations along the interface cannot be reconciled.
    #[error("mixed element orientation: {0}")]
    MixedOrientation(String),
}

impl Error {
    pub fn category(&self) -> ErrorCategory {
        use Error::*;
        match self {
            Parse(_) => ErrorCategory::Parse,
            EdgeMismatch(_) | IrregularOnInterface(_) | IrregularGluing(_)
            | DegenerateEdge(_) | DegreeMismatch(_) | MixedOrientation(_) => {
                ErrorCategory::Validation
            }
            _ => ErrorCategory::Computation,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
