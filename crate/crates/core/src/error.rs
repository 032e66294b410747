//! Error type shared by every module.

use thiserror::Error;

/// Failures of mathematical preconditions or malformed input data.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The cone data does not describe a fan (duplicate or non-primitive
    /// rays, bad indices, cones not meeting along common faces, ...).
    #[error("malformed fan: {0}")]
    MalformedFan(String),

    /// The fan is required to be complete but is not.
    #[error("fan is not complete")]
    NotComplete,

    /// The fan is required to be simplicial but is not.
    #[error("fan is not simplicial")]
    NotSimplicial,

    /// A polyhedron expected to be bounded has a nonzero recession cone.
    #[error("polyhedron is unbounded")]
    UnboundedRegion,

    /// A Weil divisor is not Cartier: no integral linear form matches it on
    /// the given maximal cone.
    #[error("divisor is not Cartier on maximal cone {cone}")]
    NotCartier { cone: usize },

    /// A Cartier divisor fails the semiampleness (convexity) test.
    #[error("divisor is not semiample")]
    NotSemiample,

    /// The degree is semiample but not big, where bigness is required.
    #[error("degree is not big (Iitaka dimension {kappa} < {dim})")]
    NotBig { kappa: usize, dim: usize },

    /// A monomial degree is not a multiple of the semiample class.
    #[error("monomial degree is not a multiple of the divisor class")]
    DegreeNotMultipleOfD,

    /// Restriction to an orbit closure produced a fractional exponent.
    #[error("restriction produced a non-integral exponent")]
    NonIntegralExponent,

    /// A Laurent quotient that must be a polynomial is not.
    #[error("quotient is not a polynomial: {0}")]
    NotDivisible(String),

    /// An operation defined only for anticanonical polynomials.
    #[error("polynomial is not anticanonical")]
    NotAnticanonical,

    /// Two vector spaces expected to be isomorphic have different dimensions.
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    /// A linear system that should be solvable has no solution.
    #[error("linear system has no solution")]
    NoSolution,

    /// Terms or operands whose degrees disagree.
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),

    /// Structurally invalid input (wrong lengths, out-of-range indices, ...).
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
