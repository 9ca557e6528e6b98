//! Equivalence classes of second-order recurrences under
//! hypergeometric-term rescaling of solutions.
//!
//! A recurrence A(n)·S(n+1) + B(n)·S(n) + C(n)·S(n−1) = 0 with
//! rational-function coefficients keeps its shape when the solution is
//! rescaled S(n) = h(n)·Z(n) by a hypergeometric term h (one with
//! h(n+1)/h(n) rational in n).  Choosing h to normalize the first two
//! coefficients to 1 and −1 yields the unique reduced form
//!
//! ```text
//! Z(n+1) − Z(n) + H(n)·Z(n−1) = 0,   H(n) = C(n)·A(n−1)/(B(n)·B(n−1)),
//! ```
//!
//! so the reciprocal B(n)·B(n−1)/(C(n)·A(n−1)) — the class function — is
//! a complete invariant: two recurrences admit solutions differing by a
//! hypergeometric-term factor exactly when their class functions are
//! equal.  The module ships the two ₀F₁ fixtures whose class functions
//! coincide (lower parameter walking up as ĉ+n and down as 2−ĉ−n), and a
//! numeric confluent cross-check ₁F₁(α; 2α; 4z) = e²ᶻ·₀F₁(; α+½; z²).

use crate::oracle::{float_pfq, FloatError};
use crate::ratfield::{RatFunc, Var};

/// A second-order recurrence A(n)·S(n+1) + B(n)·S(n) + C(n)·S(n−1) = 0;
/// coefficients are rational in n and may carry the free parameters
/// a, b, c, z as symbols.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Recurrence {
    a: RatFunc,
    b: RatFunc,
    c: RatFunc,
}

/// Shape violations when building a recurrence.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RecurrenceError {
    #[error("coefficient {0}(n) must not be identically zero")]
    ZeroCoefficient(&'static str),
}

impl Recurrence {
    /// Build from the three coefficients; each must be nonzero.
    pub fn new(a: RatFunc, b: RatFunc, c: RatFunc) -> Result<Recurrence, RecurrenceError> {
        if a.is_zero() {
            return Err(RecurrenceError::ZeroCoefficient("A"));
        }
        if b.is_zero() {
            return Err(RecurrenceError::ZeroCoefficient("B"));
        }
        if c.is_zero() {
            return Err(RecurrenceError::ZeroCoefficient("C"));
        }
        Ok(Recurrence { a, b, c })
    }

    /// Coefficient of S(n+1).
    pub fn coeff_up(&self) -> &RatFunc {
        &self.a
    }

    /// Coefficient of S(n).
    pub fn coeff_mid(&self) -> &RatFunc {
        &self.b
    }

    /// Coefficient of S(n−1).
    pub fn coeff_down(&self) -> &RatFunc {
        &self.c
    }

    /// The class function B(n)·B(n−1)/(C(n)·A(n−1)): invariant under
    /// common rescaling of the coefficients and under
    /// hypergeometric-term rescaling of the solutions.
    pub fn class_function(&self) -> RatFunc {
        let num = self.b.mul(&self.b.shift(Var::N, -1));
        let den = self.c.mul(&self.a.shift(Var::N, -1));
        num.checked_div(&den).expect("nonzero coefficients")
    }

    /// The coefficient H(n) of the normalized form
    /// Z(n+1) − Z(n) + H(n)·Z(n−1) = 0: the reciprocal of the class
    /// function.
    pub fn normalize_z(&self) -> RatFunc {
        self.class_function().reciprocal().expect("nonzero coefficients")
    }

    /// Whether two recurrences have solutions differing only by a
    /// hypergeometric-term factor.
    pub fn same_class(&self, other: &Recurrence) -> bool {
        self.class_function() == other.class_function()
    }
}

/// Names accepted by [`builtin`].
pub const BUILTIN_NAMES: [&str; 2] = ["0f1-up", "0f1-down"];

/// The shipped fixtures: recurrences in n of S(n) = ₀F₁(; ĉ+n; ẑ)
/// (`"0f1-up"`) and S(n) = ₀F₁(; 2−ĉ−n; ẑ) (`"0f1-down"`), both derived
/// from the contiguous identity F(;c−1) − F(;c) = z/(c(c−1))·F(;c+1).
pub fn builtin(name: &str) -> Option<Recurrence> {
    let rf = |src: &str| crate::exprio::parse_expr(src).expect("valid builtin expression");
    let (a, b, c) = match name {
        "0f1-up" => ("-z/((c + n)*(c + n - 1))", "-1", "1"),
        "0f1-down" => ("1", "-1", "-z/((2 - c - n)*(1 - c - n))"),
        _ => return None,
    };
    Some(Recurrence::new(rf(a), rf(b), rf(c)).expect("builtin coefficients are nonzero"))
}

/// Both sides of the confluent identity
/// ₁F₁(α; 2α; 4z) = e²ᶻ·₀F₁(; α+½; z²) as floats.
pub fn confluent_pair(alpha: f64, z: f64) -> Result<(f64, f64), FloatError> {
    let lhs = float_pfq(&[alpha], &[2.0 * alpha], 4.0 * z)?.value;
    let rhs = (2.0 * z).exp() * float_pfq(&[], &[alpha + 0.5], z * z)?.value;
    Ok((lhs, rhs))
}
