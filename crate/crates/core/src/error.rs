use thiserror::Error;

/// Errors raised by the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("invalid generator set: {0}")]
    InvalidGenerators(String),

    #[error("no value assigned to generator `{0}`")]
    MissingAssignment(String),

    #[error("not a lattice: elements {a} and {b} have no {what}")]
    NotALattice { a: String, b: String, what: &'static str },

    #[error("order relation is not a partial order: {0}")]
    NotAPartialOrder(String),

    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),

    #[error("set to be doubled is not convex: {0}")]
    NotConvex(String),

    #[error("map is not monotone: {0}")]
    NotMonotone(String),

    #[error("interval lower end is not below its upper end: [{lo}, {hi}]")]
    EmptyInterval { lo: String, hi: String },

    #[error("homomorphism is not {0} bounded")]
    NotBounded(&'static str),

    #[error("element {0} is not in the image of the homomorphism")]
    NotInImage(String),

    #[error("beta/alpha iteration did not stabilize after {0} rounds")]
    NoStabilization(usize),

    #[error("tower mismatch: {0}")]
    TowerMismatch(String),

    #[error("terms are equal in the free lattice: {0}")]
    TermsEqual(String),

    #[error("lattice file, line {line}: {msg}")]
    Format { line: usize, msg: String },

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
