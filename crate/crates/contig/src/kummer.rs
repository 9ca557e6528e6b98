//! Contiguous expansions of the evaluation ₂F₁(a + n, b; a − b; −1).
//!
//! Kummer's quadratic evaluation pins ₂F₁ at z = −1 whenever the lower
//! parameter is 1 + a − b:
//!
//! ```text
//! ₂F₁(a, b; 1 + a − b; −1) = Γ(1 + a − b)·Γ(1 + a/2) / (Γ(1 + a)·Γ(1 + a/2 − b)).
//! ```
//!
//! Shifting the first upper parameter off that line by an integer n leaves
//! a family Fₙ = ₂F₁(a + n, b; a − b; −1) that satisfies the three-term
//! recurrence
//!
//! ```text
//! −2(a + n)·Fₙ₊₁ + (2a + 3n)·Fₙ − (b + n)·Fₙ₋₁ = 0,
//! ```
//!
//! so each member is a combination Fₙ = P(n)·G₁ + Q(n)·G₂ of the two
//! Γ-quotients
//!
//! ```text
//! G₁ = Γ(a − b)·Γ((a+1)/2) / (Γ(a)·Γ((a+1)/2 − b)),
//! G₂ = Γ(a − b)·Γ(a/2)     / (Γ(a)·Γ(a/2 − b)),
//! ```
//!
//! with coefficients P(n), Q(n) ∈ ℚ(a, b).  For n ≥ 0 both coefficients
//! are terminating ₃F₂ sums at unit argument:
//!
//! ```text
//! P(n) = 2^{−(n+1)}·₃F₂(−n/2, −(n+1)/2, a/2 − b; 1/2, a/2; 1),
//! Q(n) = (n+1)·2^{−(n+1)}·₃F₂((1−n)/2, −n/2, (a+1)/2 − b; 3/2, (a+1)/2; 1),
//! ```
//!
//! and negative n follows by running the recurrence backwards.  The module
//! computes P and Q exactly, exposes the recurrence as a [`Recurrence`]
//! value, and checks the evaluations in floating point against the Γ side,
//! including a doubly-lowered special case that collapses to a single
//! Γ-quotient on a plane conic in the (a, b) parameter plane.

use num_traits::ToPrimitive;

use crate::gauss::poly;
use crate::oracle::{float_2f1_neg1, float_gamma, FloatError};
use crate::ratfield::{FieldError, MPoly, RatFunc, Rational, Var};
use crate::recurrence::Recurrence;

/// Why a floating-point evaluation check could not be carried out.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    /// A Γ argument too close to a pole for the evaluation to mean anything.
    #[error("Γ argument {0} is within 1e-6 of a non-positive integer")]
    GammaPole(f64),
    /// A coefficient denominator vanished at the chosen parameters.
    #[error("coefficient pole at the chosen parameters")]
    CoefficientPole,
    /// The series side failed to sum.
    #[error(transparent)]
    Float(#[from] FloatError),
    /// No admissible specialization was found while probing a parameter curve.
    #[error("no admissible specialization among the first {0} candidates")]
    NoAdmissiblePoint(usize),
}

impl From<FieldError> for EvalError {
    fn from(_: FieldError) -> EvalError {
        EvalError::CoefficientPole
    }
}

/// Two sides of a numeric identity check and their relative discrepancy.
#[derive(Debug, Clone, Copy)]
pub struct EvalCheck {
    pub lhs: f64,
    pub rhs: f64,
    pub rel_err: f64,
    pub passed: bool,
}

/// An admissible point found on a parameter curve, with its identity check.
#[derive(Debug, Clone)]
pub struct SpecProbe {
    pub a: Rational,
    pub b: Rational,
    pub check: EvalCheck,
}

const GAMMA_POLE_TOL: f64 = 1e-6;

fn gamma_checked(x: f64) -> Result<f64, EvalError> {
    let nearest = x.round();
    if nearest <= 0.0 && (x - nearest).abs() < GAMMA_POLE_TOL {
        return Err(EvalError::GammaPole(x));
    }
    Ok(float_gamma(x))
}

fn rel_check(lhs: f64, rhs: f64, tol: f64) -> EvalCheck {
    let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
    let rel_err = (lhs - rhs).abs() / scale;
    EvalCheck { lhs, rhs, rel_err, passed: rel_err < tol }
}

fn to_f64(r: &Rational) -> f64 {
    r.to_f64().expect("parameter fits in an f64")
}

/// x/2 as a constant rational function.
fn half_int(x: i64) -> RatFunc {
    RatFunc::from_rational(Rational::new(x.into(), 2.into()))
}

/// (a + p)/2.
fn half_a_plus(p: i64) -> RatFunc {
    RatFunc::var_plus(Var::A, p)
        .mul(&RatFunc::from_rational(Rational::new(1.into(), 2.into())))
}

/// Σₖ (u₁)ₖ(u₂)ₖ(u₃)ₖ / ((l₁)ₖ(l₂)ₖ·k!) at unit argument, summed until an
/// upper factor uᵢ + k vanishes.  Callers guarantee one numeric upper
/// parameter is a non-positive half-integer that lands on 0 at an integer k
/// within `max_terms` steps.
fn terminating_3f2(upper: [RatFunc; 3], lower: [RatFunc; 2], max_terms: i64) -> RatFunc {
    let mut sum = RatFunc::zero();
    let mut term = RatFunc::one();
    for k in 0..=max_terms {
        sum = sum.add(&term);
        let mut numer = RatFunc::one();
        for u in &upper {
            let factor = u.add(&RatFunc::from_int(k));
            if factor.is_zero() {
                return sum;
            }
            numer = numer.mul(&factor);
        }
        let mut denom = RatFunc::from_int(k + 1);
        for l in &lower {
            denom = denom.mul(&l.add(&RatFunc::from_int(k)));
        }
        term = term.mul(&numer.checked_div(&denom).expect("lower factors stay nonzero"));
    }
    unreachable!("series did not terminate within the promised number of terms")
}

fn p_nonneg(n: i64) -> RatFunc {
    let sum = terminating_3f2(
        [
            half_int(-n),
            half_int(-(n + 1)),
            half_a_plus(0).sub(&RatFunc::var(Var::B)),
        ],
        [half_int(1), half_a_plus(0)],
        n + 2,
    );
    sum.mul(&pow2_scale(n, 1))
}

fn q_nonneg(n: i64) -> RatFunc {
    let sum = terminating_3f2(
        [
            half_int(1 - n),
            half_int(-n),
            half_a_plus(1).sub(&RatFunc::var(Var::B)),
        ],
        [half_int(3), half_a_plus(1)],
        n + 2,
    );
    sum.mul(&pow2_scale(n, n + 1))
}

/// num/2^{n+1} as a constant rational function.
fn pow2_scale(n: i64, num: i64) -> RatFunc {
    let den = num_bigint::BigInt::from(1) << (n + 1) as usize;
    RatFunc::from_rational(Rational::new(num.into(), den))
}

/// Runs the three-term recurrence backwards from (F₁, F₀) down to F(target):
/// F(m−1) = [−2(a + m)·F(m+1) + (2a + 3m)·F(m)] / (b + m).
fn backward(f1: RatFunc, f0: RatFunc, target: i64) -> RatFunc {
    let (mut up, mut cur) = (f1, f0);
    let mut m = 0i64;
    while m > target {
        let lead = RatFunc::var_plus(Var::A, m)
            .mul(&RatFunc::from_int(-2))
            .mul(&up);
        let mid = RatFunc::var(Var::A)
            .mul(&RatFunc::from_int(2))
            .add(&RatFunc::from_int(3 * m))
            .mul(&cur);
        let next = lead
            .add(&mid)
            .checked_div(&RatFunc::var_plus(Var::B, m))
            .expect("b + m is not the zero function");
        up = cur;
        cur = next;
        m -= 1;
    }
    cur
}

/// The coefficient of G₁ in Fₙ = P(n)·G₁ + Q(n)·G₂, exact in ℚ(a, b).
pub fn kummer_p(n: i64) -> RatFunc {
    if n >= 0 {
        p_nonneg(n)
    } else {
        backward(p_nonneg(1), p_nonneg(0), n)
    }
}

/// The coefficient of G₂ in Fₙ = P(n)·G₁ + Q(n)·G₂, exact in ℚ(a, b).
pub fn kummer_q(n: i64) -> RatFunc {
    if n >= 0 {
        q_nonneg(n)
    } else {
        backward(q_nonneg(1), q_nonneg(0), n)
    }
}

/// The three-term recurrence −2(a+n)·Fₙ₊₁ + (2a+3n)·Fₙ − (b+n)·Fₙ₋₁ = 0
/// satisfied by Fₙ, P(n), and Q(n) alike.
pub fn kummer_recurrence() -> Recurrence {
    let up = RatFunc::var(Var::A)
        .add(&RatFunc::var(Var::N))
        .mul(&RatFunc::from_int(-2));
    let mid = RatFunc::var(Var::A)
        .mul(&RatFunc::from_int(2))
        .add(&RatFunc::var(Var::N).mul(&RatFunc::from_int(3)));
    let down = RatFunc::var(Var::B).add(&RatFunc::var(Var::N)).neg();
    Recurrence::new(up, mid, down).expect("coefficients are nonzero")
}

/// Checks ₂F₁(a, b; 1 + a − b; −1) against its Γ-quotient value at a
/// rational point, to relative error 1e−8.
pub fn classical_check(a: &Rational, b: &Rational) -> Result<EvalCheck, EvalError> {
    let (af, bf) = (to_f64(a), to_f64(b));
    let lhs = float_2f1_neg1(af, bf, 1.0 + af - bf)?.value;
    let rhs = gamma_checked(1.0 + af - bf)? * gamma_checked(1.0 + af / 2.0)?
        / (gamma_checked(1.0 + af)? * gamma_checked(1.0 + af / 2.0 - bf)?);
    Ok(rel_check(lhs, rhs, 1e-8))
}

/// Checks Fₙ = P(n)·G₁ + Q(n)·G₂ in floating point at a rational point,
/// to relative error 1e−8.  P(n) and Q(n) are evaluated exactly first.
pub fn gkummer_check(n: i64, a: &Rational, b: &Rational) -> Result<EvalCheck, EvalError> {
    let point = [(Var::A, a.clone()), (Var::B, b.clone())];
    let pv = to_f64(&kummer_p(n).eval(&point)?);
    let qv = to_f64(&kummer_q(n).eval(&point)?);
    let (af, bf) = (to_f64(a), to_f64(b));
    let lhs = float_2f1_neg1(af + n as f64, bf, af - bf)?.value;
    let shared = gamma_checked(af - bf)? / gamma_checked(af)?;
    let g1 = shared * gamma_checked((af + 1.0) / 2.0)? / gamma_checked((af + 1.0) / 2.0 - bf)?;
    let g2 = shared * gamma_checked(af / 2.0)? / gamma_checked(af / 2.0 - bf)?;
    Ok(rel_check(lhs, pv * g1 + qv * g2, 1e-8))
}

/// The plane conic 2a² − 4ab + b² − 12a + 17b + 12 on which the doubly
/// lowered evaluation F₋₅ collapses to a single Γ-quotient.
pub fn collapse_conic() -> MPoly {
    poly("2*a^2 - 4*a*b + b^2 - 12*a + 17*b + 12")
}

fn is_nonpositive_integer(x: &Rational) -> bool {
    x.is_integer() && x.numer().sign() != num_bigint::Sign::Plus
}

/// Walks rational points on the collapse conic through (3, 1) along integer
/// slopes 1, −1, 2, −2, … until one admits every Γ factor, then checks
///
/// ```text
/// ₂F₁(a − 5, b; a − b; −1)
///     = (a − b − 1)/(a − 2b) · Γ(a−b−2)·Γ(a/2−1) / (Γ(a−3)·Γ(a/2−b))
/// ```
///
/// there to relative error 1e−6.
pub fn specfo2_probe() -> Result<SpecProbe, EvalError> {
    const MAX_SLOPES: usize = 50;
    for k in 1..=MAX_SLOPES as i64 {
        // slope sequence 1, −1, 2, −2, …
        let s = if k % 2 == 1 { (k + 1) / 2 } else { -k / 2 };
        // the line b − 1 = s(a − 3) meets the conic again where
        // u = a − 3 satisfies u·(s² − 4s + 2) + (7s − 4) = 0
        let u = Rational::new((4 - 7 * s).into(), (s * s - 4 * s + 2).into());
        let a = Rational::from_integer(3.into()) + u.clone();
        let b = Rational::from_integer(1.into()) + Rational::from_integer(s.into()) * u;
        let gamma_args = [
            a.clone() - b.clone() - Rational::from_integer(2.into()),
            a.clone() / Rational::from_integer(2.into()) - Rational::from_integer(1.into()),
            a.clone() - Rational::from_integer(3.into()),
            a.clone() / Rational::from_integer(2.into()) - b.clone(),
        ];
        let scale_pole = a.clone() - Rational::from_integer(2.into()) * b.clone();
        let lower = a.clone() - b.clone();
        if gamma_args.iter().any(is_nonpositive_integer)
            || scale_pole == Rational::from_integer(0.into())
            || is_nonpositive_integer(&lower)
        {
            continue;
        }
        let (af, bf) = (to_f64(&a), to_f64(&b));
        let lhs = float_2f1_neg1(af - 5.0, bf, af - bf)?.value;
        let factor = to_f64(
            &((a.clone() - b.clone() - Rational::from_integer(1.into())) / scale_pole),
        );
        let rhs = factor * gamma_checked(af - bf - 2.0)? * gamma_checked(af / 2.0 - 1.0)?
            / (gamma_checked(af - 3.0)? * gamma_checked(af / 2.0 - bf)?);
        return Ok(SpecProbe { a, b, check: rel_check(lhs, rhs, 1e-6) });
    }
    Err(EvalError::NoAdmissiblePoint(MAX_SLOPES))
}
