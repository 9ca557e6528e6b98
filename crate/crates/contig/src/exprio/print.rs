//! Canonical expression printer.
//!
//! The output format is frozen so golden files and JSON payloads stay
//! stable: polynomial terms in descending lexicographic order with
//! explicit `*` between factors, `^` only for exponents ≥ 2, and a
//! fraction rendered as `(numerator)/(denominator)`.

use num_traits::{One, Signed};

use crate::ratfield::{MPoly, RatFunc, Rational, VARS};

/// Render one monomial coefficient magnitude: `7`, `7/3`.
fn magnitude(r: &Rational) -> String {
    let r = r.abs();
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Render a polynomial as a bare sum of terms.
pub fn print_poly(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (mono, coeff)) in p.terms().iter().enumerate() {
        let negative = coeff.is_negative();
        if i == 0 {
            if negative {
                out.push('-');
            }
        } else if negative {
            out.push_str(" - ");
        } else {
            out.push_str(" + ");
        }
        let mut factors = Vec::new();
        for v in VARS {
            let e = mono.0[v.index()];
            match e {
                0 => {}
                1 => factors.push(v.name().to_string()),
                _ => factors.push(format!("{}^{}", v.name(), e)),
            }
        }
        let mag = coeff.abs();
        if factors.is_empty() {
            out.push_str(&magnitude(coeff));
        } else if mag.is_one() {
            out.push_str(&factors.join("*"));
        } else {
            out.push_str(&magnitude(coeff));
            out.push('*');
            out.push_str(&factors.join("*"));
        }
    }
    out
}

/// Render a rational function; polynomials print bare, true fractions as
/// `(num)/(den)`.
pub fn print_expr(x: &RatFunc) -> String {
    if x.denom().is_one() {
        print_poly(x.numer())
    } else {
        format!("({})/({})", print_poly(x.numer()), print_poly(x.denom()))
    }
}
