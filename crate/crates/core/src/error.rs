use alloc::string::String;

/// Errors raised by the algebraic layer.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("vector has length {found}, expected ambient rank {expected}")]
    RankMismatch { expected: usize, found: usize },
    #[error("no positive grading: the monoid has nontrivial units")]
    NoPositiveGrading,
    #[error("ideal contains the identity")]
    IdealContainsIdentity,
    #[error("vector {0:?} is not an element of the monoid")]
    NotAMember(alloc::vec::Vec<i64>),
    #[error("localizing at the basepoint gives the zero monoid")]
    LocalizeAtZero,
    #[error("weight lies in the ideal or is the basepoint")]
    WeightInIdeal,
    #[error("element is nilpotent")]
    Nilpotent,
    #[error("dilation factors must be at least 2")]
    BadDilation,
    #[error("extension is not finite over the base monoid")]
    NotFinite,
    #[error("invalid cone: {0}")]
    InvalidCone(String),
    #[error("invalid fan: {0}")]
    InvalidFan(String),
    #[error("ray lies outside the support of the fan")]
    RayOutsideSupport,
    #[error("not a refinement: {0}")]
    NotARefinement(String),
    #[error("square does not match its type: {0}")]
    ShapeMismatch(String),
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = core::result::Result<T, Error>;
