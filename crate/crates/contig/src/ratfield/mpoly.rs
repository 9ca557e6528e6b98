//! Sparse multivariate polynomials over ℚ.
//!
//! Terms are kept in a vector sorted by strictly descending lexicographic
//! monomial order (a > b > c > z > n), with no explicit zero coefficients.
//! The leading term is therefore always `terms[0]`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, Var, NVARS, VARS};

/// Exponent vector.  Derived ordering is lexicographic with the
/// `a`-exponent most significant, matching the documented term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct Monomial(pub(crate) [u16; NVARS]);

impl Monomial {
    pub(crate) const ONE: Monomial = Monomial([0; NVARS]);

    fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = [0u16; NVARS];
        for i in 0..NVARS {
            let sum = self.0[i] as u32 + other.0[i] as u32;
            assert!(sum <= u16::MAX as u32, "monomial exponent overflow");
            out[i] = sum as u16;
        }
        Monomial(out)
    }

    /// Componentwise division; `None` when any exponent would go negative.
    fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = [0u16; NVARS];
        for i in 0..NVARS {
            out[i] = self.0[i].checked_sub(other.0[i])?;
        }
        Some(Monomial(out))
    }
}

/// Sparse multivariate polynomial over ℚ in the variables a, b, c, z, n.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MPoly {
    /// Terms in strictly descending monomial order; coefficients nonzero.
    terms: Vec<(Monomial, Rational)>,
}

impl MPoly {
    pub fn zero() -> MPoly {
        MPoly { terms: Vec::new() }
    }

    pub fn one() -> MPoly {
        MPoly::constant(Rational::one())
    }

    pub fn constant(r: Rational) -> MPoly {
        if r.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(Monomial::ONE, r)] }
        }
    }

    pub fn from_int(k: i64) -> MPoly {
        MPoly::constant(Rational::from_integer(BigInt::from(k)))
    }

    pub fn var(v: Var) -> MPoly {
        let mut e = [0u16; NVARS];
        e[v.index()] = 1;
        MPoly { terms: vec![(Monomial(e), Rational::one())] }
    }

    /// The variable `v` shifted by an integer: `v + k`.
    pub fn var_plus(v: Var, k: i64) -> MPoly {
        &MPoly::var(v) + &MPoly::from_int(k)
    }

    pub(crate) fn from_term(m: Monomial, c: Rational) -> MPoly {
        if c.is_zero() {
            MPoly::zero()
        } else {
            MPoly { terms: vec![(m, c)] }
        }
    }

    pub(crate) fn from_map(map: BTreeMap<Monomial, Rational>) -> MPoly {
        let mut terms: Vec<(Monomial, Rational)> =
            map.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.reverse(); // BTreeMap iterates ascending; we store descending
        MPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// The constant value, if this polynomial is constant.
    pub fn as_constant(&self) -> Option<Rational> {
        if self.is_zero() {
            Some(Rational::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub(crate) fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    /// Leading coefficient under the lexicographic term order
    /// (zero polynomial → 0).
    pub fn leading_coeff(&self) -> Rational {
        self.terms.first().map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    /// Degree in a single variable (zero polynomial → 0).
    pub fn degree(&self, v: Var) -> u32 {
        self.terms.iter().map(|(m, _)| m.0[v.index()] as u32).max().unwrap_or(0)
    }

    /// Total degree (zero polynomial → 0).
    pub fn degree_total(&self) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.0.iter().map(|&e| e as u32).sum())
            .max()
            .unwrap_or(0)
    }

    /// Whether the variable occurs at all.
    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.iter().any(|(m, _)| m.0[v.index()] > 0)
    }

    /// Variables occurring with positive degree.
    pub fn vars(&self) -> Vec<Var> {
        VARS.iter().copied().filter(|&v| self.contains_var(v)).collect()
    }

    pub fn neg(&self) -> MPoly {
        MPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect() }
    }

    pub fn add(&self, other: &MPoly) -> MPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match mb.cmp(ma) {
                Ordering::Less => {
                    out.push((*ma, ca.clone()));
                    i += 1;
                }
                Ordering::Greater => {
                    out.push((*mb, cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((*ma, c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(other.terms[j..].iter().cloned());
        MPoly { terms: out }
    }

    pub fn sub(&self, other: &MPoly) -> MPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &MPoly) -> MPoly {
        if self.is_zero() || other.is_zero() {
            return MPoly::zero();
        }
        // Multiply the shorter operand into the longer one.
        let (short, long) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        if short.terms.len() == 1 {
            let (m, c) = &short.terms[0];
            return long.mul_term(m, c);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (ma, ca) in &short.terms {
            for (mb, cb) in &long.terms {
                let m = ma.mul(mb);
                let prod = ca * cb;
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(prod);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() += prod;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        MPoly::from_map(acc)
    }

    fn mul_term(&self, m: &Monomial, c: &Rational) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly { terms: self.terms.iter().map(|(mm, cc)| (mm.mul(m), cc * c)).collect() }
    }

    pub fn mul_scalar(&self, c: &Rational) -> MPoly {
        self.mul_term(&Monomial::ONE, c)
    }

    pub fn pow(&self, e: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    /// Exact division: `Some(q)` with `self = q·d`, or `None` when `d` does
    /// not divide `self`.  Panics if `d` is zero.
    pub fn exact_div(&self, d: &MPoly) -> Option<MPoly> {
        assert!(!d.is_zero(), "division by the zero polynomial");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if d.is_constant() {
            let inv = Rational::one() / d.terms[0].1.clone();
            return Some(self.mul_scalar(&inv));
        }
        let (dm, dc) = &d.terms[0];
        let mut rem: BTreeMap<Monomial, Rational> =
            self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        let mut quot: Vec<(Monomial, Rational)> = Vec::new();
        while let Some((lm, lc)) = rem.iter().next_back().map(|(m, c)| (*m, c.clone())) {
            let qm = lm.div(dm)?;
            let qc = lc / dc;
            quot.push((qm, qc.clone()));
            // rem -= (qm, qc) * d
            for (m, c) in &d.terms {
                let key = m.mul(&qm);
                let delta = c * &qc;
                match rem.entry(key) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(-delta);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        *e.get_mut() -= delta;
                        if e.get().is_zero() {
                            e.remove();
                        }
                    }
                }
            }
        }
        // Quotient terms were produced in descending order already.
        Some(MPoly { terms: quot })
    }

    /// Whether `d` divides `self` exactly.
    pub fn divisible_by(&self, d: &MPoly) -> bool {
        self.exact_div(d).is_some()
    }

    /// Substitute `v ↦ v + k` (an automorphism of the ring).
    pub fn shift(&self, v: Var, k: i64) -> MPoly {
        if k == 0 || !self.contains_var(v) {
            return self.clone();
        }
        let idx = v.index();
        let kk = BigInt::from(k);
        // (v + k)^e expanded once per distinct exponent e.
        let max_e = self.degree(v) as usize;
        // binom[e][j] · k^(e−j) for j = 0..=e
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(max_e + 1);
        rows.push(vec![BigInt::one()]);
        for e in 1..=max_e {
            let prev = &rows[e - 1];
            let mut row = vec![BigInt::zero(); e + 1];
            // Pascal on binomial-times-power rows: row[j] = prev[j−1] + prev[j]·k
            for j in 0..=e {
                let mut val = BigInt::zero();
                if j > 0 {
                    val += &prev[j - 1];
                }
                if j < e {
                    val += &prev[j] * &kk;
                }
                row[j] = val;
            }
            rows.push(row);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            for (j, w) in rows[e].iter().enumerate() {
                if w.is_zero() {
                    continue;
                }
                let mut nm = *m;
                nm.0[idx] = j as u16;
                let add = c * Rational::from_integer(w.clone());
                match acc.entry(nm) {
                    std::collections::btree_map::Entry::Vacant(en) => {
                        en.insert(add);
                    }
                    std::collections::btree_map::Entry::Occupied(mut en) => {
                        *en.get_mut() += add;
                        if en.get().is_zero() {
                            en.remove();
                        }
                    }
                }
            }
        }
        MPoly::from_map(acc)
    }

    /// Swap two variables (used for the a ↔ b symmetry of ₂F₁).
    pub fn swap_vars(&self, u: Var, v: Var) -> MPoly {
        let (ui, vi) = (u.index(), v.index());
        let mut terms: Vec<(Monomial, Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = *m;
                e.0.swap(ui, vi);
                (e, c.clone())
            })
            .collect();
        terms.sort_by(|x, y| y.0.cmp(&x.0));
        MPoly { terms }
    }

    /// Substitute rational values for a subset of the variables.
    pub fn substitute(&self, vals: &[(Var, Rational)]) -> MPoly {
        let mut assign: [Option<&Rational>; NVARS] = [None; NVARS];
        for (v, r) in vals {
            assign[v.index()] = Some(r);
        }
        let mut acc: BTreeMap<Monomial, Rational> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut nm = *m;
            for i in 0..NVARS {
                if let Some(r) = assign[i] {
                    let e = nm.0[i];
                    if e > 0 {
                        coeff *= pow_rational(r, e);
                        nm.0[i] = 0;
                    }
                }
            }
            if coeff.is_zero() {
                continue;
            }
            match acc.entry(nm) {
                std::collections::btree_map::Entry::Vacant(en) => {
                    en.insert(coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut en) => {
                    *en.get_mut() += coeff;
                    if en.get().is_zero() {
                        en.remove();
                    }
                }
            }
        }
        MPoly::from_map(acc)
    }

    /// Evaluate at a full assignment of all occurring variables.
    pub fn eval(&self, vals: &[(Var, Rational)]) -> Rational {
        let r = self.substitute(vals);
        r.as_constant().expect("evaluation left free variables")
    }

    /// Positive rational `r` with `self = r · (integer-coefficient
    /// polynomial of content 1)`.  Zero polynomial → 0.
    pub fn content(&self) -> Rational {
        if self.is_zero() {
            return Rational::zero();
        }
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for (_, c) in &self.terms {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        Rational::new(num_gcd, den_lcm)
    }

    /// `(s, p)` with `self = s·p`, `p` having integer coefficients of
    /// content 1 and positive leading coefficient.  Zero → `(0, 0)`.
    pub fn primitive(&self) -> (Rational, MPoly) {
        if self.is_zero() {
            return (Rational::zero(), MPoly::zero());
        }
        let mut s = self.content();
        if self.terms[0].1.is_negative() {
            s = -s;
        }
        let inv = Rational::one() / s.clone();
        (s, self.mul_scalar(&inv))
    }

    /// Extract the largest monomial dividing every term.
    /// Returns `(m, p)` with `self = m·p`.
    pub(crate) fn monomial_content(&self) -> (Monomial, MPoly) {
        if self.is_zero() {
            return (Monomial::ONE, MPoly::zero());
        }
        let mut min = self.terms[0].0;
        for (m, _) in &self.terms[1..] {
            for i in 0..NVARS {
                min.0[i] = min.0[i].min(m.0[i]);
            }
        }
        if min.is_one() {
            return (Monomial::ONE, self.clone());
        }
        let p = MPoly {
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (m.div(&min).expect("monomial content"), c.clone()))
                .collect(),
        };
        (min, p)
    }

    /// View as a dense univariate polynomial in `v` with `MPoly`
    /// coefficients (index = degree in `v`).
    pub(crate) fn coeffs_in(&self, v: Var) -> Vec<MPoly> {
        let idx = v.index();
        let deg = self.degree(v) as usize;
        let mut out = vec![MPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            let e = m.0[idx] as usize;
            let mut nm = *m;
            nm.0[idx] = 0;
            out[e] = out[e].add(&MPoly::from_term(nm, c.clone()));
        }
        out
    }

    /// Inverse of [`coeffs_in`].
    pub(crate) fn from_coeffs_in(v: Var, coeffs: &[MPoly]) -> MPoly {
        let idx = v.index();
        let mut acc = MPoly::zero();
        for (e, p) in coeffs.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let mut shifted = p.clone();
            for (m, _) in shifted.terms.iter_mut() {
                debug_assert_eq!(m.0[idx], 0);
                m.0[idx] = e as u16;
            }
            shifted.terms.sort_by(|x, y| y.0.cmp(&x.0));
            acc = acc.add(&shifted);
        }
        acc
    }
}

fn pow_rational(r: &Rational, e: u16) -> Rational {
    let mut out = Rational::one();
    let mut base = r.clone();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            out *= &base;
        }
        e >>= 1;
        if e > 0 {
            base = base.clone() * &base;
        }
    }
    out
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({})", crate::exprio::print_poly(self))
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::exprio::print_poly(self))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $inner:ident) => {
        impl std::ops::$trait for &MPoly {
            type Output = MPoly;
            fn $method(self, rhs: &MPoly) -> MPoly {
                self.$inner(rhs)
            }
        }
        impl std::ops::$trait for MPoly {
            type Output = MPoly;
            fn $method(self, rhs: MPoly) -> MPoly {
                (&self).$inner(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly::neg(self)
    }
}

impl std::ops::Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a() -> MPoly {
        MPoly::var(Var::A)
    }

    fn z() -> MPoly {
        MPoly::var(Var::Z)
    }

    #[test]
    fn add_cancels_to_zero() {
        let p = &a() * &z() - MPoly::from_int(3);
        let q = p.neg();
        assert!(p.add(&q).is_zero());
    }

    #[test]
    fn multiplication_expands() {
        // (a + 1)(a − 1) = a² − 1
        let p = MPoly::var_plus(Var::A, 1).mul(&MPoly::var_plus(Var::A, -1));
        let expected = a().mul(&a()).sub(&MPoly::one());
        assert_eq!(p, expected);
    }

    #[test]
    fn exact_division_roundtrip() {
        let d = MPoly::var_plus(Var::A, 2).mul(&MPoly::var_plus(Var::Z, -1));
        let q = MPoly::var_plus(Var::B, -3);
        let p = d.mul(&q);
        assert_eq!(p.exact_div(&d), Some(q));
        assert_eq!(p.exact_div(&MPoly::var(Var::C)), None);
    }

    #[test]
    fn shift_is_homomorphic() {
        let p = a().mul(&a()).add(&z());
        // (a+2)² + z
        let shifted = p.shift(Var::A, 2);
        let direct = MPoly::var_plus(Var::A, 2).pow(2).add(&z());
        assert_eq!(shifted, direct);
        assert_eq!(shifted.shift(Var::A, -2), p);
    }

    #[test]
    fn primitive_part_normalises() {
        // 4a/6 − 2/6 → content 1/3, primitive 2a − 1
        let p = a()
            .mul_scalar(&Rational::new(BigInt::from(2), BigInt::from(3)))
            .sub(&MPoly::constant(Rational::new(BigInt::from(1), BigInt::from(3))));
        let (s, prim) = p.primitive();
        assert_eq!(s, Rational::new(BigInt::from(1), BigInt::from(3)));
        let expected = a().mul_scalar(&Rational::from_integer(BigInt::from(2))).sub(&MPoly::one());
        assert_eq!(prim, expected);
    }

    #[test]
    fn leading_term_is_lex_largest() {
        // a·z and b²: a-exponent wins
        let p = a().mul(&z()).add(&MPoly::var(Var::B).pow(2));
        assert_eq!(p.terms()[0].0 .0, [1, 0, 0, 1, 0]);
    }
}
