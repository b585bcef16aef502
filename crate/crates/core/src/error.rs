use std::fmt;

use thiserror::Error;

use crate::calculus::RHomResult;

/// Syntax error with a character offset into the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("parse error at {position}: {message}")]
pub struct ParseError {
    pub position: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(position: usize, message: impl Into<String>) -> Self {
        ParseError { position, message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LatticeError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("class is not an integral combination of the basis: {0}")]
    NotIntegral(String),
    #[error("sublattice is not contained in the source lattice")]
    NotContained,
    #[error("vector is not in the lattice")]
    NotAMember,
    #[error("integer overflow in lattice arithmetic")]
    Overflow,
    #[error("class-level mutation needs chi(e, e) = 1, found {0}")]
    NotExceptional(i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CalculusError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("mutation through a non-exceptional object: RHom(e, e) = {0}")]
    NotExceptional(Witness),
    #[error("mutation needs a determined RHom, got {0}")]
    Ambiguous(Witness),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// The RHom value that made an operation fail, rendered for messages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness(pub RHomResult);

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StabilityError {
    #[error("collection is not Ext-exceptional: Hom^{degree}({source_label}, {target_label}) != 0")]
    NotExtExceptional { source_label: String, target_label: String, first: usize, second: usize, degree: i64 },
    #[error("RHom between simples {0} and {1} is ambiguous")]
    Ambiguous(usize, usize),
    #[error("simple {0} is not exceptional")]
    NotExceptional(usize),
    #[error("classes of the simples are linearly dependent")]
    DependentClasses,
    #[error("simple index {0} out of range")]
    BadIndex(usize),
    #[error("tilt precondition fails: Hom^{degree}(S_{from}, S_{at}) != 0")]
    TiltPrecondition { from: usize, at: usize, degree: i64 },
    #[error("charge has {got} values for {expected} simples")]
    ChargeArity { expected: usize, got: usize },
    #[error("quadratic form is not square and symmetric")]
    NotSymmetric,
    #[error("empty multiset or zero vector")]
    Empty,
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// Problems found before any check runs; the CLI maps these to exit code 2.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("configuration error: {0}")]
    Config(String),
    #[error("unknown check `{0}`")]
    UnknownCheck(String),
    #[error("while elaborating `{name}`: {source}")]
    Elaboration { name: String, source: CalculusError },
    #[error(transparent)]
    Calculus(#[from] CalculusError),
    #[error(transparent)]
    Stability(#[from] StabilityError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}
