//! The coefficient field ℚ(a, b, c, z, n).
//!
//! Everything downstream manipulates elements of a fixed rational function
//! field in five variables: the ₂F₁ parameters a, b, c, the argument z, and
//! a recurrence index n.  [`MPoly`] is a sparse multivariate polynomial with
//! arbitrary-precision rational coefficients; [`RatFunc`] is a quotient of
//! two such polynomials kept in a canonical reduced form, so that structural
//! equality coincides with mathematical equality.

mod gcd;
mod mpoly;
mod ratfunc;

pub use mpoly::MPoly;
pub use ratfunc::{pochhammer, RatFunc};

pub(crate) use gcd::{mpoly_gcd, poly_lcm};

use thiserror::Error;

/// Exact rational scalar (arbitrary-precision numerator and denominator,
/// always reduced, denominator positive).
pub type Rational = num_rational::BigRational;

/// The five variables of the coefficient field, in term order:
/// a > b > c > z > n.  Lexicographic monomial comparisons look at the
/// `a`-exponent first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    A = 0,
    B = 1,
    C = 2,
    Z = 3,
    N = 4,
}

/// Number of variables in the field.
pub const NVARS: usize = 5;

/// All variables in term order.
pub const VARS: [Var; NVARS] = [Var::A, Var::B, Var::C, Var::Z, Var::N];

impl Var {
    /// One-letter name as it appears in the expression grammar.
    pub fn name(self) -> &'static str {
        match self {
            Var::A => "a",
            Var::B => "b",
            Var::C => "c",
            Var::Z => "z",
            Var::N => "n",
        }
    }

    /// Inverse of [`Var::name`].
    pub fn from_name(s: &str) -> Option<Var> {
        match s {
            "a" => Some(Var::A),
            "b" => Some(Var::B),
            "c" => Some(Var::C),
            "z" => Some(Var::Z),
            "n" => Some(Var::N),
            _ => None,
        }
    }

    pub(crate) fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum FieldError {
    /// Construction of a fraction with zero denominator, or division by the
    /// zero rational function.
    #[error("division by the zero polynomial")]
    DivisionByZero,
    /// Evaluation of a fraction at a common root of the denominator.
    #[error("denominator vanishes at the evaluation point")]
    Pole,
}
