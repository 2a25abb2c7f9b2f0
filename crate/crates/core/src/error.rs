use thiserror::Error;

/// Errors raised by the geometry and probability routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("complex argument of a number with modulus {0:e} is undefined")]
    ZeroArgument(f64),
    #[error("cannot form a ray from the zero vector")]
    ZeroVector,
    #[error("states {0} are orthogonal")]
    OrthogonalPair(&'static str),
    #[error("superposition undefined: the component states are orthogonal")]
    OrthogonalComponents,
    #[error("superposition weight {0} is outside [0, 1]")]
    InvalidWeight(f64),
    #[error("degenerate triple: {0}")]
    DegenerateTriple(String),
    #[error("propositions are not orthogonal")]
    NotOrthogonal,
    #[error("propositions do not commute")]
    NotCommuting,
    #[error("first proposition is not contained in the second")]
    NotContained,
    #[error("state is orthogonal to the conditioning proposition")]
    OrthogonalState,
    #[error("precondition unmet: {0}")]
    PreconditionUnmet(String),
    #[error("linear map is not an isometry up to scale")]
    NotIsometry,
    #[error("linear map is not injective")]
    NotInjective,
    #[error("invalid value: {0}")]
    InvalidValue(String),
    #[error("unknown law `{0}`")]
    UnknownLaw(String),
}

impl Error {
    /// Short machine-readable name of the variant, used in structured output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::ZeroArgument(_) => "ZeroArgument",
            Error::ZeroVector => "ZeroVector",
            Error::OrthogonalPair(_) => "OrthogonalPair",
            Error::OrthogonalComponents => "OrthogonalComponents",
            Error::InvalidWeight(_) => "InvalidWeight",
            Error::DegenerateTriple(_) => "DegenerateTriple",
            Error::NotOrthogonal => "NotOrthogonal",
            Error::NotCommuting => "NotCommuting",
            Error::NotContained => "NotContained",
            Error::OrthogonalState => "OrthogonalState",
            Error::PreconditionUnmet(_) => "PreconditionUnmet",
            Error::NotIsometry => "NotIsometry",
            Error::NotInjective => "NotInjective",
            Error::InvalidValue(_) => "InvalidValue",
            Error::UnknownLaw(_) => "UnknownLaw",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_dim(expected: usize, found: usize) -> Result<()> {
    if expected == found {
        Ok(())
    } else {
        Err(Error::DimensionMismatch { expected, found })
    }
}
