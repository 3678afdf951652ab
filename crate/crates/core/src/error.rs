use thiserror::Error;

use crate::scalars::Rational;
use crate::superalgebra::GeneratorId;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("generator {gen} is not a mode of SVir(t={t})")]
    InvalidGenerator { gen: Box<GeneratorId>, t: Box<Rational> },

    #[error("invalid lowest weight: {0}")]
    InvalidWeight(String),

    #[error("invalid label: {0}")]
    InvalidLabel(String),

    #[error("sectors belong to different levels (n={0} vs n={1})")]
    MismatchedLevel(u32, u32),

    #[error("sector {0} is not invertible")]
    NotInvertible(String),

    #[error("zero modes G0+/G0- do not exist in a Neveu-Schwarz module")]
    NsZeroMode,

    #[error("level {level} exceeds the module cutoff {cutoff}")]
    BeyondCutoff { level: Box<Rational>, cutoff: Box<Rational> },

    #[error("cannot parse {what} from {input:?}")]
    Parse { what: &'static str, input: String },

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "division_by_zero",
            Error::InvalidGenerator { .. } => "invalid_generator",
            Error::InvalidWeight(_) => "invalid_weight",
            Error::InvalidLabel(_) => "invalid_label",
            Error::MismatchedLevel(..) => "mismatched_level",
            Error::NotInvertible(_) => "not_invertible",
            Error::NsZeroMode => "ns_zero_mode",
            Error::BeyondCutoff { .. } => "beyond_cutoff",
            Error::Parse { .. } => "parse",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
