use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FerroError {
    #[error("Majorana index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("operator on {0} qubits cannot be split into two equal registers")]
    OddQubitCount(usize),

    #[error("not a state: {0}")]
    NotAState(String),

    #[error("operator is not even (parity commutator norm {0:e})")]
    NotEven(f64),

    #[error("state is not pure (purity {0})")]
    NotPure(f64),

    #[error("operator is not unitary (residual {0:e})")]
    NotUnitary(f64),

    #[error("matrix is not antisymmetric (residual {0:e})")]
    NotAntisymmetric(f64),

    #[error("odd matrix dimension {0}")]
    OddDimension(usize),

    #[error("covariance is not physical: largest singular value squared {0}")]
    NotPhysicalCovariance(f64),

    #[error("Grassmann constant term must be {expected}, found {found}")]
    ConstantTerm { expected: f64, found: f64 },

    #[error("{0}")]
    Malformed(String),

    #[error("{what} exceeds the dense engine limit ({limit})")]
    TooLarge { what: String, limit: usize },

    #[error("parse error: {0}")]
    Parse(String),
}

impl FerroError {
    /// Stable machine-readable code, one per variant.
    pub fn code(&self) -> &'static str {
        match self {
            FerroError::IndexOutOfRange { .. } => "E_INDEX",
            FerroError::DimensionMismatch { .. } => "E_DIM",
            FerroError::NotPowerOfTwo(_) => "E_POW2",
            FerroError::OddQubitCount(_) => "E_ODD_QUBITS",
            FerroError::NotAState(_) => "E_NOT_STATE",
            FerroError::NotEven(_) => "E_NOT_EVEN",
            FerroError::NotPure(_) => "E_NOT_PURE",
            FerroError::NotUnitary(_) => "E_NOT_UNITARY",
            FerroError::NotAntisymmetric(_) => "E_NOT_ANTISYM",
            FerroError::OddDimension(_) => "E_ODD_DIM",
            FerroError::NotPhysicalCovariance(_) => "E_COVARIANCE",
            FerroError::ConstantTerm { .. } => "E_CONSTANT_TERM",
            FerroError::Malformed(_) => "E_MALFORMED",
            FerroError::TooLarge { .. } => "E_TOO_LARGE",
            FerroError::Parse(_) => "E_PARSE",
        }
    }
}

pub type Result<T> = std::result::Result<T, FerroError>;
