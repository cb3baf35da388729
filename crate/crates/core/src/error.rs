use alloc::string::String;
use core::fmt;

/// Error type shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A nonzero vector was required.
    ZeroVector,
    /// An operation received an empty point set.
    EmptyInput,
    /// Points of mixed ambient dimension, or an ambient-dimension clash.
    DimensionMismatch { expected: usize, got: usize },
    /// Operation requires a full-dimensional polytope; reduce first.
    NotFullDimensional,
    /// Operation is defined for lattice simplices only.
    NotSimplex,
    /// Operation requires a simple polytope.
    NotSimple,
    /// Operation requires a smooth polytope.
    NotSmooth,
    /// Parameters outside the stated domain of an identity or certificate.
    OutOfDomain(String),
    /// Two routes that must agree exactly disagreed; this signals a bug in
    /// the computation, never a property of the input.
    Inconsistency(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroVector => write!(f, "zero vector has no primitive form"),
            Error::EmptyInput => write!(f, "empty point set"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::NotFullDimensional => write!(f, "polytope is not full-dimensional"),
            Error::NotSimplex => write!(f, "input is not a lattice simplex"),
            Error::NotSimple => write!(f, "input is not a simple polytope"),
            Error::NotSmooth => write!(f, "input is not a smooth polytope"),
            Error::OutOfDomain(msg) => write!(f, "out of domain: {msg}"),
            Error::Inconsistency(msg) => write!(f, "internal consistency error: {msg}"),
        }
    }
}

pub type Result<T> = core::result::Result<T, Error>;
