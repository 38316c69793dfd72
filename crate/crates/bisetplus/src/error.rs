//! Crate-wide error type.
//!
//! Domain errors carry enough context to produce the structured JSON error
//! object emitted by the command-line interface (exit code 1).  Input-format
//! problems are reported as `Parse` errors (exit code 2).

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A permutation image list is not a bijection on `{0..degree-1}`.
    #[error("malformed permutation: {0}")]
    MalformedPermutation(String),

    /// Generators act on different domain sizes.
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    /// Enumerated group order exceeded the configured cap.
    #[error("group order exceeds cap {cap}: {context}")]
    OrderCapExceeded { cap: usize, context: String },

    /// A claimed subgroup is not contained in (or not a subgroup of) the parent.
    #[error("not a subgroup: {0}")]
    NotASubgroup(String),

    /// A quotient was requested by a non-normal subgroup.
    #[error("not a normal subgroup: {0}")]
    NotNormal(String),

    /// The middle groups of a composition do not agree.
    #[error("composition mismatch: {0}")]
    CompositionMismatch(String),

    /// Two elements live over different groups (or functors) and cannot combine.
    #[error("incompatible operands: {0}")]
    Incompatible(String),

    /// A map failed the homomorphism (or bijectivity) requirement.
    #[error("invalid homomorphism: {0}")]
    InvalidHom(String),

    /// An ambient group is outside the admissible class of a category spec.
    #[error("group not admissible: {0}")]
    NotAdmissible(String),

    /// A biset class failed a section-membership precondition.
    #[error("inadmissible biset class: {0}")]
    InadmissibleClass(String),

    /// The ghost action requires a right-free class (trivial second kernel).
    #[error("right action is not free: {0}")]
    RightActionNotFree(String),

    /// A functor action was applied to a class whose first projection is not
    /// the full left group.
    #[error("first projection is not full: {0}")]
    ProjectionNotFull(String),

    /// An unknown basis label / label index for a functor value.
    #[error("unknown basis label: {0}")]
    UnknownLabel(String),

    /// Cyclotomic conductor outside the supported range.
    #[error("unsupported conductor {0} (supported range: 1..=24)")]
    UnsupportedConductor(u64),

    /// Division by zero in a cyclotomic field.
    #[error("division by zero in cyclotomic field")]
    CyclotomicDivisionByZero,

    /// Unknown verification suite name.
    #[error("unknown suite: {0}")]
    UnknownSuite(String),

    /// Unknown group preset name.
    #[error("unknown preset: {0}")]
    UnknownPreset(String),

    /// Malformed textual or JSON input.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    /// Exit code the CLI should use for this error: 2 for input-format
    /// problems, 1 for domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) => 2,
            _ => 1,
        }
    }

    /// Stable machine-readable error code for the JSON error object.
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedPermutation(_) => "malformed-permutation",
            Error::DegreeMismatch(_) => "degree-mismatch",
            Error::OrderCapExceeded { .. } => "order-cap-exceeded",
            Error::NotASubgroup(_) => "not-a-subgroup",
            Error::NotNormal(_) => "not-normal",
            Error::CompositionMismatch(_) => "composition-mismatch",
            Error::Incompatible(_) => "incompatible-operands",
            Error::InvalidHom(_) => "invalid-homomorphism",
            Error::NotAdmissible(_) => "group-not-admissible",
            Error::InadmissibleClass(_) => "inadmissible-class",
            Error::RightActionNotFree(_) => "right-action-not-free",
            Error::ProjectionNotFull(_) => "projection-not-full",
            Error::UnknownLabel(_) => "unknown-label",
            Error::UnsupportedConductor(_) => "unsupported-conductor",
            Error::CyclotomicDivisionByZero => "cyclotomic-division-by-zero",
            Error::UnknownSuite(_) => "unknown-suite",
            Error::UnknownPreset(_) => "unknown-preset",
            Error::Parse(_) => "parse-error",
        }
    }
}
