use thiserror::Error;

/// Errors raised by the library.
///
/// The variants are grouped by the kind of failure so callers (the CLI in
/// particular) can map them onto usage, data and numerical exit codes.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported group descriptor `{0}` (expected picard or eisenstein)")]
    UnsupportedGroup(String),

    #[error("unsupported cusp index {0}: no residue table is available")]
    UnsupportedIndex(u32),

    #[error("finite-difference stencil leaves the upper half-space (r = {r}, h = {h})")]
    StepTooLarge { r: f64, h: f64 },

    #[error("enumeration at height {height} would exceed the element cap {cap}")]
    ElementCapExceeded { height: i64, cap: usize },

    #[error("enumeration bound insufficient: {0}")]
    BoundInsufficient(String),

    #[error("element is not elliptic")]
    NotElliptic,

    #[error("infinite centralizer detected for {0}")]
    InfiniteCentralizer(String),

    #[error("representation is not unitary: {0}")]
    NonUnitary(String),

    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),

    #[error("eigenvalue clustering failed: {0}")]
    EigenClustering(String),

    #[error("the trivial character makes the lattice sum diverge; use the kappa fit instead")]
    TrivialCharacter,

    #[error("both Siegel parameters are integers")]
    IntegralSiegelParameters,

    #[error("fit residual inconsistent with the x^(-1/2) error law: {0}")]
    FitInconsistent(String),

    #[error("quadrature did not converge: {0}")]
    Quadrature(String),

    #[error("torsion-sum collapse check failed: {0}")]
    Collapse(String),

    #[error("log A terms do not cancel: {0}")]
    Cancellation(String),

    #[error("negative multiplicity {0}")]
    NegativeMultiplicity(i64),

    #[error("eigenvalue {0} is not unimodular")]
    NonUnimodular(String),

    #[error("cache version mismatch or corrupted header: {0}")]
    CacheVersion(String),

    #[error("cache format error at line {line}: {msg}")]
    CacheFormat { line: usize, msg: String },

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for errors caused by incomplete or inconsistent input data.
    pub fn is_data_error(&self) -> bool {
        matches!(
            self,
            Error::BoundInsufficient(_)
                | Error::ElementCapExceeded { .. }
                | Error::InfiniteCentralizer(_)
                | Error::CacheVersion(_)
                | Error::CacheFormat { .. }
                | Error::InvalidRepresentation(_)
                | Error::NonUnitary(_)
                | Error::Io(_)
                | Error::Json(_)
        )
    }

    /// True for errors raised by a numerical procedure.
    pub fn is_numerical_error(&self) -> bool {
        matches!(
            self,
            Error::Quadrature(_)
                | Error::Collapse(_)
                | Error::Cancellation(_)
                | Error::FitInconsistent(_)
                | Error::EigenClustering(_)
                | Error::StepTooLarge { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
