use thiserror::Error;

/// Errors raised anywhere in the pipeline.
///
/// The CLI maps a few of these onto fixed exit codes, see [`Error::exit_code`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable `{name}` at position {pos}")]
    UnknownVariable { name: String, pos: usize },
    #[error("variable lists differ: {left:?} vs {right:?}")]
    VariableMismatch {
        left: Vec<String>,
        right: Vec<String>,
    },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error(
        "quotient is infinite-dimensional: variable `{var}` has no pure power among leading terms"
    )]
    InfiniteDimensional { var: String },
    #[error("ideal is not proper (1 lies in the ideal)")]
    ImproperIdeal,
    #[error("custom basis is not a basis of the quotient (rank {rank} < {dim})")]
    SingularBasis { rank: usize, dim: usize },
    #[error("invalid custom basis: {0}")]
    InvalidBasis(String),
    #[error("algebra is not local: image of `{var}` is not nilpotent")]
    NotLocal { var: String },
    #[error("generator `{generator}` is not weighted-homogeneous for the given weights")]
    NotHomogeneous { generator: String },
    #[error("algebra is not Gorenstein (socle dimension {socle_dim}, algebra dimension {dim})")]
    NotGorenstein { socle_dim: usize, dim: usize },
    #[error("element does not lie in the maximal ideal")]
    ElementNotInMaxIdeal,
    #[error("element is not of the form 1 + u with u in the maximal ideal")]
    UnitPartNotOne,
    #[error("form degree {degree} outside 2..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error("quadratic part of the nil-polynomial is degenerate")]
    DegenerateQuadraticForm,
    #[error("polynomial is zero")]
    ZeroPolynomial,
    #[error("not a complement to m^2 inside m: {0}")]
    NotAComplement(String),
    #[error("complement element {index} does not lie in the kernel of the projection")]
    NotInsideKernel { index: usize },
    #[error("matrix of the candidate is singular")]
    SingularC,
    #[error("socle scale of the candidate is zero")]
    ZeroScale,
    #[error("fingerprints differ: {0}")]
    FingerprintMismatch(String),
    #[error("map is not block-diagonal with respect to the projections")]
    NotBlockDiagonal,
    #[error("input error: {0}")]
    Input(String),
}

impl Error {
    /// Process exit code used by the command-line tool.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::InfiniteDimensional { .. } => 3,
            Error::NotLocal { .. } => 4,
            Error::NotGorenstein { .. } => 5,
            Error::NotAComplement(_) | Error::NotInsideKernel { .. } => 6,
            _ => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
