//! Canonical rational functions.
//!
//! A [`RatFunc`] is a reduced fraction num/den of multivariate polynomials:
//!
//! * gcd(num, den) = 1, both as polynomials and as integer content —
//!   numerator and denominator have integer coefficients whose joint
//!   content is 1;
//! * the denominator's leading coefficient (lexicographic term order) is
//!   positive;
//! * zero is represented as 0/1.
//!
//! With these invariants structural equality is mathematical equality, so
//! `PartialEq` can be derived.

use num_traits::Zero;
use std::fmt;

use super::mpoly_gcd;
use super::{FieldError, MPoly, Rational, Var};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    /// Build and fully reduce a fraction.  Errors on a zero denominator.
    pub fn new(num: MPoly, den: MPoly) -> Result<RatFunc, FieldError> {
        if den.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = mpoly_gcd(&num, &den);
        if g.is_one() {
            Ok(RatFunc::from_coprime(num, den))
        } else {
            Ok(RatFunc::from_coprime(
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            ))
        }
    }

    /// Canonicalise a fraction whose numerator and denominator are already
    /// coprime as polynomials: only the scalar normalisation remains.
    pub(crate) fn from_coprime(num: MPoly, den: MPoly) -> RatFunc {
        debug_assert!(!den.is_zero());
        if num.is_zero() {
            return RatFunc::zero();
        }
        let (cn, n0) = num.primitive();
        let (cd, d0) = den.primitive();
        let ratio = cn / cd; // reduced; denominator positive
        let num = n0.mul_scalar(&Rational::from_integer(ratio.numer().clone()));
        let den = d0.mul_scalar(&Rational::from_integer(ratio.denom().clone()));
        RatFunc { num, den }
    }

    pub fn zero() -> RatFunc {
        RatFunc { num: MPoly::zero(), den: MPoly::one() }
    }

    pub fn one() -> RatFunc {
        RatFunc { num: MPoly::one(), den: MPoly::one() }
    }

    pub fn from_poly(p: MPoly) -> RatFunc {
        RatFunc::from_coprime(p, MPoly::one())
    }

    pub fn from_int(k: i64) -> RatFunc {
        RatFunc::from_poly(MPoly::from_int(k))
    }

    pub fn from_rational(r: Rational) -> RatFunc {
        RatFunc::from_coprime(MPoly::constant(r), MPoly::one())
    }

    pub fn var(v: Var) -> RatFunc {
        RatFunc::from_poly(MPoly::var(v))
    }

    /// `v + k` as a rational function.
    pub fn var_plus(v: Var, k: i64) -> RatFunc {
        RatFunc::from_poly(MPoly::var_plus(v, k))
    }

    pub fn numer(&self) -> &MPoly {
        &self.num
    }

    pub fn denom(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The constant value, if this is a constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.num.is_constant() && self.den.is_constant() {
            Some(self.num.as_constant()? / self.den.as_constant()?)
        } else {
            None
        }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn add(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let d = mpoly_gcd(&self.den, &other.den);
        if d.is_one() {
            let n = self.num.mul(&other.den).add(&other.num.mul(&self.den));
            // n is automatically coprime to den1·den2 here.
            return RatFunc::from_coprime(n, self.den.mul(&other.den));
        }
        let d2_red = other.den.exact_div(&d).expect("gcd divides");
        let d1_red = self.den.exact_div(&d).expect("gcd divides");
        let t = self.num.mul(&d2_red).add(&other.num.mul(&d1_red));
        if t.is_zero() {
            return RatFunc::zero();
        }
        // Common factors of t and the lcm all sit inside d.
        let h = mpoly_gcd(&t, &d);
        if h.is_one() {
            RatFunc::from_coprime(t, self.den.mul(&d2_red))
        } else {
            let num = t.exact_div(&h).expect("gcd divides");
            let den = self.den.exact_div(&h).expect("gcd divides").mul(&d2_red);
            RatFunc::from_coprime(num, den)
        }
    }

    pub fn sub(&self, other: &RatFunc) -> RatFunc {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFunc) -> RatFunc {
        if self.is_zero() || other.is_zero() {
            return RatFunc::zero();
        }
        // Cross-reduce before multiplying; the product is then coprime.
        let g1 = mpoly_gcd(&self.num, &other.den);
        let g2 = mpoly_gcd(&other.num, &self.den);
        let n1 = if g1.is_one() { self.num.clone() } else { self.num.exact_div(&g1).unwrap() };
        let d2 = if g1.is_one() { other.den.clone() } else { other.den.exact_div(&g1).unwrap() };
        let n2 = if g2.is_one() { other.num.clone() } else { other.num.exact_div(&g2).unwrap() };
        let d1 = if g2.is_one() { self.den.clone() } else { self.den.exact_div(&g2).unwrap() };
        RatFunc::from_coprime(n1.mul(&n2), d1.mul(&d2))
    }

    /// Multiplicative inverse.  Errors on zero.
    pub fn reciprocal(&self) -> Result<RatFunc, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        Ok(RatFunc::from_coprime(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &RatFunc) -> Result<RatFunc, FieldError> {
        Ok(self.mul(&other.reciprocal()?))
    }

    /// Integer power; negative exponents invert (error on zero base).
    pub fn pow(&self, e: i32) -> Result<RatFunc, FieldError> {
        if e < 0 {
            return self.reciprocal()?.pow(-e);
        }
        Ok(RatFunc {
            num: self.num.pow(e as u32),
            den: self.den.pow(e as u32),
        })
    }

    /// Substitute `v ↦ v + k`.  Ring automorphism: canonical form is
    /// preserved, so no renormalisation is needed.
    pub fn shift(&self, v: Var, k: i64) -> RatFunc {
        if k == 0 {
            return self.clone();
        }
        RatFunc { num: self.num.shift(v, k), den: self.den.shift(v, k) }
    }

    /// Swap two variables (the a ↔ b symmetry).
    pub fn swap_vars(&self, u: Var, v: Var) -> RatFunc {
        // Swapping can change which denominator term leads; renormalise the
        // sign but the fraction stays reduced.
        RatFunc::from_coprime(self.num.swap_vars(u, v), self.den.swap_vars(u, v))
    }

    /// Substitute rational values for a subset of the variables.  Errors if
    /// the denominator collapses to zero.
    pub fn specialize(&self, vals: &[(Var, Rational)]) -> Result<RatFunc, FieldError> {
        let den = self.den.substitute(vals);
        if den.is_zero() {
            return Err(FieldError::Pole);
        }
        let num = self.num.substitute(vals);
        RatFunc::new(num, den)
    }

    /// Evaluate at a full assignment.  Errors at denominator roots.
    pub fn eval(&self, vals: &[(Var, Rational)]) -> Result<Rational, FieldError> {
        let den = self.den.eval(vals);
        if den.is_zero() {
            return Err(FieldError::Pole);
        }
        Ok(self.num.eval(vals) / den)
    }
}

/// Pochhammer symbol (x)ₖ of a rational-function base, for any integer k:
/// (x)ₖ = x(x+1)⋯(x+k−1) for k ≥ 0, and (x)₋ₖ = 1/((x−1)(x−2)⋯(x−k)).
pub fn pochhammer(base: &RatFunc, k: i64) -> RatFunc {
    let mut acc = RatFunc::one();
    if k >= 0 {
        for j in 0..k {
            acc = acc.mul(&base.add(&RatFunc::from_int(j)));
        }
    } else {
        for j in 1..=(-k) {
            acc = acc
                .checked_div(&base.sub(&RatFunc::from_int(j)))
                .expect("pochhammer with vanishing factor");
        }
    }
    acc
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({})", crate::exprio::print_expr(self))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::exprio::print_expr(self))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl std::ops::$trait for &RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: &RatFunc) -> RatFunc {
                self.$inner(rhs)
            }
        }
        impl std::ops::$trait for RatFunc {
            type Output = RatFunc;
            fn $method(self, rhs: RatFunc) -> RatFunc {
                (&self).$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Div for &RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by the zero rational function")
    }
}

impl std::ops::Div for RatFunc {
    type Output = RatFunc;
    fn div(self, rhs: RatFunc) -> RatFunc {
        (&self) / (&rhs)
    }
}

impl std::ops::Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(self)
    }
}

impl std::ops::Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc::neg(&self)
    }
}

/// Convenience: `q(k)` shorthand for integer constants in expressions.
impl From<i64> for RatFunc {
    fn from(k: i64) -> RatFunc {
        RatFunc::from_int(k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;
    use num_traits::Zero;

    fn rf(s: &str) -> RatFunc {
        crate::exprio::parse_expr(s).unwrap()
    }

    #[test]
    fn sum_of_simple_poles() {
        // 1/(c−1) + 1/c = (2c − 1)/(c² − c)
        let x = rf("1/(c-1)").add(&rf("1/c"));
        assert_eq!(x, rf("(2*c-1)/(c*(c-1))"));
        assert_eq!(crate::exprio::print_expr(&x), "(2*c - 1)/(c^2 - c)");
    }

    #[test]
    fn cancellation_is_detected() {
        // (a² − 1)/(a + 1) reduces to a − 1
        let x = RatFunc::new(rf("a^2-1").numer().clone(), rf("a+1").numer().clone()).unwrap();
        assert_eq!(x, rf("a-1"));
    }

    #[test]
    fn difference_of_equal_values_is_zero() {
        let x = rf("(c-a)/(a*(1-z))");
        let y = rf("(a-c)/(a*(z-1))");
        assert_eq!(x, y);
        assert!(x.sub(&y).is_zero());
    }

    #[test]
    fn denominator_sign_is_canonical() {
        // (b−a)/b and its (−1/−1) rescaling must print identically
        let x = rf("(b-a)/b");
        let y = rf("(a-b)/(-b)");
        assert_eq!(x, y);
        assert!(x.denom().leading_coeff() > Rational::zero());
    }

    #[test]
    fn pochhammer_negative_index() {
        // (a)₋₂ = 1/((a−2)(a−1))
        let p = pochhammer(&RatFunc::var(Var::A), -2);
        assert_eq!(p, rf("1/((a-2)*(a-1))"));
    }

    #[test]
    fn pochhammer_composes() {
        // (x)_{j+k} = (x)_j (x+j)_k with j = 3, k = −2
        let x = rf("c-a");
        let lhs = pochhammer(&x, 1);
        let rhs = pochhammer(&x, 3).mul(&pochhammer(&x.add(&RatFunc::from_int(3)), -2));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn eval_at_rational_point() {
        // (c−a)/(a(1−z)) at a=1/2, c=2, z=−1 → 3/2
        let x = rf("(c-a)/(a*(1-z))");
        let val = x
            .eval(&[
                (Var::A, Rational::new(BigInt::from(1), BigInt::from(2))),
                (Var::C, Rational::from_integer(BigInt::from(2))),
                (Var::Z, Rational::from_integer(BigInt::from(-1))),
            ])
            .unwrap();
        assert_eq!(val, Rational::new(BigInt::from(3), BigInt::from(2)));
    }

    #[test]
    fn pole_detection() {
        let x = rf("1/(c-a)");
        let err = x.eval(&[
            (Var::A, Rational::from_integer(2.into())),
            (Var::C, Rational::from_integer(2.into())),
        ]);
        assert_eq!(err, Err(FieldError::Pole));
    }

    #[test]
    fn shift_commutes_with_arithmetic() {
        let x = rf("(c-a)/(a*(1-z))");
        let y = rf("(2*a-c+b*z)/(c-1)");
        let lhs = x.add(&y).shift(Var::A, 3);
        let rhs = x.shift(Var::A, 3).add(&y.shift(Var::A, 3));
        assert_eq!(lhs, rhs);
    }
}
