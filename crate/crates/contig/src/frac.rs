//! Factored-denominator fractions: the engine-internal number type.
//!
//! Every denominator the shift engine produces is a product of small
//! primitive polynomials (b, z − 1, a − c, c(c+1)…, and their shifts), so a
//! value is stored as one expanded numerator over a multiset of denominator
//! factors.  Cancellation is trial division of the numerator by each
//! factor; addition unifies denominators factor-by-factor.  No polynomial
//! GCD ever runs on this path, which is what keeps deep shift computations
//! fast.
//!
//! Invariants: factors are non-constant, integer-primitive, with positive
//! leading coefficient (scalar adjustments are folded into the numerator),
//! and the numerator is not divisible by any stored factor.  With
//! irreducible factors — every factor the engine builds is linear — this
//! makes the representation canonical, so `PartialEq` is structural.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::ratfield::{MPoly, RatFunc, Rational, Var};

#[derive(Clone, PartialEq, Eq)]
pub(crate) struct Frac {
    num: MPoly,
    den: BTreeMap<MPoly, u32>,
}

impl Frac {
    pub(crate) fn zero() -> Frac {
        Frac { num: MPoly::zero(), den: BTreeMap::new() }
    }

    pub(crate) fn one() -> Frac {
        Frac { num: MPoly::one(), den: BTreeMap::new() }
    }

    pub(crate) fn from_poly(num: MPoly) -> Frac {
        Frac { num, den: BTreeMap::new() }
    }

    /// Build `num / Π factorᵉ`, normalising each factor to the primitive
    /// positive-leading form and folding the scalar remainder into the
    /// numerator.  Panics on zero or constant factors.
    pub(crate) fn new(num: MPoly, factors: &[(MPoly, u32)]) -> Frac {
        let mut f = Frac::from_poly(num);
        for (factor, mult) in factors {
            f = f.div_factor_pow(factor, *mult);
        }
        f
    }

    /// Divide by `factorᵐ`.
    pub(crate) fn div_factor_pow(&self, factor: &MPoly, m: u32) -> Frac {
        assert!(!factor.is_zero(), "zero denominator factor");
        if m == 0 || self.num.is_zero() {
            return self.clone();
        }
        if factor.is_constant() {
            let c = factor.as_constant().unwrap();
            let inv = Rational::one() / c;
            let mut scale = Rational::one();
            for _ in 0..m {
                scale = &scale * &inv;
            }
            return Frac { num: self.num.mul_scalar(&scale), den: self.den.clone() };
        }
        let (content, prim) = factor.primitive();
        let mut num = self.num.clone();
        if !content.is_one() {
            let inv = Rational::one() / content;
            let mut scale = Rational::one();
            for _ in 0..m {
                scale = &scale * &inv;
            }
            num = num.mul_scalar(&scale);
        }
        let mut den = self.den.clone();
        *den.entry(prim).or_insert(0) += m;
        Frac { num, den }.reduced()
    }

    /// Trial-divide the numerator by every denominator factor.
    fn reduced(mut self) -> Frac {
        if self.num.is_zero() {
            self.den.clear();
            return self;
        }
        let factors: Vec<MPoly> = self.den.keys().cloned().collect();
        for f in factors {
            while self.den.get(&f).copied().unwrap_or(0) > 0 {
                match self.num.exact_div(&f) {
                    Some(q) => {
                        self.num = q;
                        let m = self.den.get_mut(&f).unwrap();
                        *m -= 1;
                        if *m == 0 {
                            self.den.remove(&f);
                        }
                    }
                    None => break,
                }
            }
        }
        self
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub(crate) fn neg(&self) -> Frac {
        Frac { num: self.num.neg(), den: self.den.clone() }
    }

    pub(crate) fn mul(&self, other: &Frac) -> Frac {
        if self.is_zero() || other.is_zero() {
            return Frac::zero();
        }
        let mut den = self.den.clone();
        for (f, m) in &other.den {
            *den.entry(f.clone()).or_insert(0) += m;
        }
        Frac { num: self.num.mul(&other.num), den }.reduced()
    }

    pub(crate) fn mul_poly(&self, p: &MPoly) -> Frac {
        if self.is_zero() || p.is_zero() {
            return Frac::zero();
        }
        Frac { num: self.num.mul(p), den: self.den.clone() }.reduced()
    }

    pub(crate) fn add(&self, other: &Frac) -> Frac {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // Common denominator: factor-wise maximum of multiplicities.
        let mut den = self.den.clone();
        for (f, m) in &other.den {
            let e = den.entry(f.clone()).or_insert(0);
            *e = (*e).max(*m);
        }
        let raise = |num: &MPoly, have: &BTreeMap<MPoly, u32>| {
            let mut n = num.clone();
            for (f, want) in &den {
                let got = have.get(f).copied().unwrap_or(0);
                for _ in got..*want {
                    n = n.mul(f);
                }
            }
            n
        };
        let num = raise(&self.num, &self.den).add(&raise(&other.num, &other.den));
        Frac { num, den }.reduced()
    }

    pub(crate) fn sub(&self, other: &Frac) -> Frac {
        self.add(&other.neg())
    }

    /// Value equality (cheap: denominators share factors, so the
    /// subtraction never multiplies two large numerators).
    pub(crate) fn equals(&self, other: &Frac) -> bool {
        self.sub(other).is_zero()
    }

    /// Substitute `v ↦ v + k` (a ring automorphism: factors stay
    /// primitive with the same leading coefficient).
    pub(crate) fn shift(&self, v: Var, k: i64) -> Frac {
        if k == 0 {
            return self.clone();
        }
        let num = self.num.shift(v, k);
        let den = self
            .den
            .iter()
            .map(|(f, m)| (f.shift(v, k), *m))
            .collect::<BTreeMap<_, _>>();
        Frac { num, den }
    }

    /// Shift all three parameters: a += da, b += db, c += dc.
    pub(crate) fn shift_abc(&self, da: i64, db: i64, dc: i64) -> Frac {
        self.shift(Var::A, da).shift(Var::B, db).shift(Var::C, dc)
    }

    /// The distinct denominator factors (without multiplicities).
    #[cfg(test)]
    pub(crate) fn den_factors(&self) -> impl Iterator<Item = &MPoly> {
        self.den.keys()
    }

    /// The numerator polynomial.
    pub(crate) fn numerator(&self) -> &MPoly {
        &self.num
    }

    /// Denominator factors with multiplicities (primitive, positive-leading).
    pub(crate) fn factors(&self) -> impl Iterator<Item = (&MPoly, u32)> {
        self.den.iter().map(|(f, m)| (f, *m))
    }

    /// Expand into a canonical rational function.
    pub(crate) fn to_ratfunc(&self) -> RatFunc {
        if self.num.is_zero() {
            return RatFunc::zero();
        }
        let mut den = MPoly::one();
        let mut all_linear = true;
        for (f, m) in &self.den {
            if f.degree_total() > 1 {
                all_linear = false;
            }
            for _ in 0..*m {
                den = den.mul(f);
            }
        }
        if all_linear {
            // linear factors are irreducible and none divides the
            // numerator, so the pair is already coprime
            RatFunc::from_coprime(self.num.clone(), den)
        } else {
            RatFunc::new(self.num.clone(), den).expect("nonzero denominator")
        }
    }

}

impl fmt::Debug for Frac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})", self.num)?;
        for (factor, m) in &self.den {
            write!(f, "/({:?})^{}", factor, m)?;
        }
        Ok(())
    }
}
