//! Crate-wide error type.
//!
//! Most variants signal *mathematical* facts rather than I/O failures:
//! `IncompatibleSupport` means a claimed identity does not close inside the
//! quasi-polynomial function space, `NotProportional` means a ladder action
//! failed to land on a scalar multiple of its target, and so on. Callers
//! that verify paper identities treat these as data, not as panics.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Two factors share a root but disagree on the base orientation
    /// `(z - a)` vs `(a - z)`, and the exponent is not an integer so the
    /// sign cannot be folded into the polynomial part.
    #[error("orientation clash at root {root}")]
    OrientationClash { root: String },

    /// Operands live on different factor supports (different exponential
    /// rates, different roots, or exponent gaps that are not integers).
    #[error("incompatible quasi-polynomial support: {detail}")]
    IncompatibleSupport { detail: String },

    /// The first operand is not an exact scalar multiple of the second.
    #[error("functions are not proportional")]
    NotProportional,

    /// Ratio against the zero function.
    #[error("ratio divisor is the zero function")]
    ZeroDivisor,

    /// Numerical evaluation requested outside the domain where every
    /// factor base is positive.
    #[error("domain violation: factor base {base} is not positive at z = {point}")]
    DomainViolation { base: String, point: String },

    /// Associated Legendre order exceeds the degree; the function would be
    /// identically zero, which the ladder bookkeeping must not silently eat.
    #[error("associated Legendre order {order} exceeds degree {degree}")]
    OrderExceedsDegree { order: u32, degree: u32 },

    /// Conjugation requires a pure prefactor (polynomial part constant).
    #[error("ground state has a non-constant polynomial part and cannot be inverted")]
    NonInvertibleGroundState,

    /// Quantum numbers violate a model constraint; the violated constraint
    /// is named.
    #[error("invalid quantum numbers: {constraint}")]
    InvalidQuantumNumbers { constraint: String },

    /// Unknown operator name passed to `build_operator` / the CLI.
    #[error("unknown operator {name}")]
    UnknownOperator { name: String },

    /// A convention resolver found no candidate (or more than one) that
    /// satisfies the defining property it resolves against.
    #[error("convention resolution failed: {detail}")]
    ConventionUnresolved { detail: String },

    /// The linear solve for the energy inside `solve_constraints` is
    /// inconsistent (cannot occur for alpha > 0).
    #[error("structure-function constraints admit no solution: {detail}")]
    NoSolution { detail: String },

    /// Malformed rational literal or other configuration input.
    #[error("parse error: {detail}")]
    Parse { detail: String },

    /// High-precision arithmetic failure (precision bookkeeping, NaN).
    #[error("high-precision evaluation error: {detail}")]
    Numeric { detail: String },
}

pub type Result<T> = std::result::Result<T, Error>;
