use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("weight matrix has {found} columns but the ambient dimension is {expected}")]
    WeightShape { expected: usize, found: usize },

    #[error("character has length {found}, expected rank {expected}")]
    CharacterLength { expected: usize, found: usize },

    #[error("generator {index} is not homogeneous: {reason}")]
    InhomogeneousGenerator { index: usize, reason: String },

    #[error("the ideal has no grading attached")]
    UngradedIdeal,

    #[error("theta is not effective: the semistable locus is empty")]
    NotEffective,

    #[error("no witness of weight m*theta found within caps (max degree {max_degree}); raise caps")]
    RaiseCaps { max_degree: u32 },

    #[error("invalid preset: {0}")]
    InvalidPreset(String),

    #[error("computation too large: {0}")]
    TooLarge(String),

    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
