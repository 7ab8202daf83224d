use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("unsupported rank {0}")]
    UnsupportedRank(i64),
    #[error("denominator vanishes at the sample point")]
    PoleAtPoint,
    #[error("division by zero")]
    DivisionByZero,
    #[error("both series carry an exponential prefactor")]
    BothPrefactored,
    #[error("series prefactors differ")]
    PrefactorMismatch,
    #[error("highest weight is not dominant integral")]
    NotDominant,
    #[error("weight is not generic: {0}")]
    NonGenericWeight(String),
    #[error("depth {0} exceeded")]
    DepthExceeded(usize),
    #[error("singular linear system")]
    SingularSystem,
    #[error("vector is not weight-homogeneous")]
    NonHomogeneousVector,
    #[error("module has no zero-weight vectors")]
    EmptyZeroWeightSpace,
    #[error("Q-matrix is singular on the zero-weight space")]
    SingularQ,
    #[error("postcondition failed: {0}")]
    Postcondition(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = core::result::Result<T, Error>;

impl Error {
    /// Failures that a fresh numeric sample can cure.
    pub fn is_genericity(&self) -> bool {
        matches!(
            self,
            Error::PoleAtPoint | Error::NonGenericWeight(_) | Error::SingularSystem | Error::SingularQ
        )
    }
}
