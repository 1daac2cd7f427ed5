//! Hermite-Sobolev type orthogonal polynomials at extended precision.
//!
//! This crate constructs the monic polynomials orthogonal with respect to
//! inner products of the form
//!
//! ```text
//! (f, g) = integral f g e^{-x^2} dx + F(0)^T A G(0)
//! ```
//!
//! where F(0) collects derivative values of f at the origin and A is a
//! positive semidefinite mass matrix. It evaluates the kernel closed forms
//! that make the construction explicit, and it measures two asymptotic
//! phenomena numerically: scaling limits of the polynomials toward Bessel
//! functions, and the accelerated convergence of their smallest zeros.
//!
//! The `examples/` directory is the front door. Each example is a runnable
//! walkthrough of one capability:
//!
//! * `hermite_basics`: the classical monic family, norms, recurrence.
//! * `kernel_closed_forms`: reproducing kernels at the origin vs brute force.
//! * `bessel_functions`: the limit-side special functions and their zeros.
//! * `connection_coefficients`: the two-mass family in closed form.
//! * `mehler_heine_trends`: scaled polynomial values approaching their limits.
//! * `zero_acceleration`: how mass points pull zeros toward the origin.
//! * `symmetrization`: the quadratic map onto half-line families.
//! * `conjecture_probe`: the predicted limit for three derivative masses.
//!
//! Everything is deterministic: same inputs, same precision, same bytes out.

pub mod bessel;
pub mod exact;
pub mod gram;
pub mod hermite;
pub mod kernels;
pub mod mehler_heine;
pub mod poly;
pub mod qlambda;
pub mod real;
pub mod report;
pub mod suites;
pub mod symmetrize;
pub mod zeros;

use std::fmt;

/// Errors surfaced by constructions and certified searches.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// A closed-form kernel table has no entry for the requested indices.
    /// The summation fallback still serves these cases.
    #[error("no closed form for {0}")]
    UnsupportedKernelCase(String),
    /// Input outside the mathematical domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Working precision ran out before a pivot or certification succeeded.
    #[error("precision insufficient: {0}")]
    PrecisionInsufficient(String),
    /// A certified count or bracket check failed; results would be unreliable.
    #[error("certification violation: {0}")]
    CertificationViolation(String),
    /// Sign-change search exhausted its budget.
    #[error("bracket search failed: {0}")]
    BracketSearch(String),
    /// The requested configuration has no established scaling limit.
    #[error("no covered scaling limit: {0}")]
    UncoveredCase(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    /// An identity that must hold exactly failed; indicates a bug.
    #[error("internal consistency: {0}")]
    InternalConsistency(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Parity of a polynomial family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of_degree(d: usize) -> Parity {
        if d % 2 == 0 { Parity::Even } else { Parity::Odd }
    }

    pub fn label(&self) -> &'static str {
        match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

pub use poly::{eval_poly, Poly};
pub use real::{fmt40, Real, DEFAULT_PREC};
