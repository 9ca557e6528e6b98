//! Assembly of three-term contiguous relations and their canonical form.
//!
//! Any two expansions over the basis {F, F(a+1)} determine a relation:
//! eliminating F(a+1) between
//!
//! ```text
//! F(s₂) = P(s₂)·F + Q(s₂)·F(a+1)
//! F(s₃) = P(s₃)·F + Q(s₃)·F(a+1)
//! ```
//!
//! gives Q(s₃)·F(s₂) − Q(s₂)·F(s₃) − W·F = 0 with the pair Wronskian
//! W = P(s₂)Q(s₃) − P(s₃)Q(s₂), and translating all three parameters
//! moves the relation to an arbitrary base point s₁.
//!
//! The canonical form divides out everything inessential: coefficients
//! are cleared to polynomials, stripped of their common polynomial factor
//! and joint integer content, terms are sorted by shift (largest first in
//! lexicographic order), and the overall sign makes the first coefficient's
//! leading term positive. Two derivations of the same relation therefore
//! produce byte-identical output.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::frac::Frac;
use crate::gauss::{ContigRelation, RelationError, ShiftVector};
use crate::pq::{Method, PqEngine};
use crate::ratfield::{mpoly_gcd, poly_lcm, MPoly, RatFunc, Rational};

/// The relation linking F(s₁), F(s₂), F(s₃), with both non-base
/// coefficients and the Wronskian computed from basis expansions.
pub fn three_term(
    engine: &PqEngine,
    s1: ShiftVector,
    s2: ShiftVector,
    s3: ShiftVector,
) -> Result<ContigRelation, RelationError> {
    check_distinct(s1, s2, s3)?;
    let s2p = s2 - s1;
    let s3p = s3 - s1;
    let (p2, q2) = engine.pq_frac(s2p, Method::Auto);
    let (p3, q3) = engine.pq_frac(s3p, Method::Auto);
    let w = p2.mul(&q3).sub(&p3.mul(&q2));
    assemble(s1, s2, s3, &q3, &q2, &w)
}

/// Same relation, but with the Wronskian taken from its closed form
/// instead of the defining 2×2 determinant.
pub fn three_term_det(
    engine: &PqEngine,
    s1: ShiftVector,
    s2: ShiftVector,
    s3: ShiftVector,
) -> Result<ContigRelation, RelationError> {
    check_distinct(s1, s2, s3)?;
    let s2p = s2 - s1;
    let s3p = s3 - s1;
    let q2 = engine.q_frac(s2p);
    let q3 = engine.q_frac(s3p);
    let w = engine.w_symbol_closed_frac(s3p - s2p, s2p);
    assemble(s1, s2, s3, &q3, &q2, &w)
}

/// Translate the base-relative coefficients to the base point s₁ and
/// normalize: coefficient Q(s₃−s₁) at s₂, −Q(s₂−s₁) at s₃, −W at s₁.
fn assemble(
    s1: ShiftVector,
    s2: ShiftVector,
    s3: ShiftVector,
    q3: &Frac,
    q2: &Frac,
    w: &Frac,
) -> Result<ContigRelation, RelationError> {
    let sh = |f: &Frac| f.shift_abc(s1.da as i64, s1.db as i64, s1.dc as i64);
    normalize_frac_terms(vec![
        (s2, sh(q3)),
        (s3, sh(&q2.neg())),
        (s1, sh(&w.neg())),
    ])
}

fn check_distinct(
    s1: ShiftVector,
    s2: ShiftVector,
    s3: ShiftVector,
) -> Result<(), RelationError> {
    if s1 == s2 || s1 == s3 || s2 == s3 {
        Err(RelationError::DuplicateShift)
    } else {
        Ok(())
    }
}

/// Bring three (shift, coefficient) terms into canonical form.
pub(crate) fn normalize_terms(
    terms: Vec<(ShiftVector, RatFunc)>,
) -> Result<ContigRelation, RelationError> {
    if terms.len() != 3 {
        return Err(RelationError::WrongArity(terms.len()));
    }
    check_distinct(terms[0].0, terms[1].0, terms[2].0)?;
    if terms.iter().filter(|(_, c)| !c.is_zero()).count() < 2 {
        return Err(RelationError::TooManyZeros);
    }

    // clear denominators with their least common multiple
    let lcm = terms
        .iter()
        .fold(MPoly::one(), |acc, (_, c)| poly_lcm(&acc, c.denom()));
    let mut polys: Vec<MPoly> = terms
        .iter()
        .map(|(_, c)| {
            c.numer()
                .mul(&lcm.exact_div(c.denom()).expect("denominator divides its lcm"))
        })
        .collect();

    // strip the common polynomial factor
    let g = joint_gcd(&polys);
    if !g.is_constant() {
        for p in polys.iter_mut() {
            if !p.is_zero() {
                *p = p.exact_div(&g).expect("common factor divides");
            }
        }
    }

    let shifts: Vec<ShiftVector> = terms.iter().map(|(s, _)| *s).collect();
    finish_normalization(shifts.into_iter().zip(polys).collect())
}

/// Bring three factored (shift, coefficient) terms into canonical form
/// without ever expanding the denominators: the common denominator is read
/// off the factor maps, known factors are stripped from the numerators by
/// trial division, and the general gcd only sees the (typically coprime)
/// residues.
pub(crate) fn normalize_frac_terms(
    terms: Vec<(ShiftVector, Frac)>,
) -> Result<ContigRelation, RelationError> {
    if terms.len() != 3 {
        return Err(RelationError::WrongArity(terms.len()));
    }
    check_distinct(terms[0].0, terms[1].0, terms[2].0)?;
    if terms.iter().filter(|(_, c)| !c.is_zero()).count() < 2 {
        return Err(RelationError::TooManyZeros);
    }
    // The factor-wise bookkeeping below assumes the denominator atoms are
    // pairwise coprime, which distinct primitive linear forms always are.
    if terms
        .iter()
        .flat_map(|(_, c)| c.factors())
        .any(|(f, _)| f.degree_total() > 1)
    {
        return normalize_terms(
            terms.into_iter().map(|(s, c)| (s, c.to_ratfunc())).collect(),
        );
    }

    // union of denominator atoms, with the maximal multiplicity of each
    let mut atoms: std::collections::BTreeMap<MPoly, u32> = Default::default();
    for (_, c) in &terms {
        for (f, m) in c.factors() {
            let e = atoms.entry(f.clone()).or_insert(0);
            *e = (*e).max(m);
        }
    }
    let atoms: Vec<(MPoly, u32)> = atoms.into_iter().collect();

    // Clearing denominators multiplies each numerator by its complementary
    // factors; rather than expanding, record the atom exponent the cleared
    // coefficient would carry and strip any further atom powers hiding in
    // the numerator itself.
    let mut cores: Vec<MPoly> = Vec::with_capacity(3);
    let mut exps: Vec<Vec<u32>> = Vec::with_capacity(3);
    for (_, c) in &terms {
        let mut core = c.numerator().clone();
        let mut e = vec![0u32; atoms.len()];
        if !c.is_zero() {
            for (j, (f, lcm_mult)) in atoms.iter().enumerate() {
                let own = c
                    .factors()
                    .find(|(g, _)| *g == f)
                    .map(|(_, m)| m)
                    .unwrap_or(0);
                let mut extra = 0u32;
                while let Some(q) = core.exact_div(f) {
                    core = q;
                    extra += 1;
                }
                e[j] = *lcm_mult - own + extra;
            }
        }
        cores.push(core);
        exps.push(e);
    }

    // residual common factor of the atom-free numerators (normally 1, and
    // the modular screening inside the gcd settles that cheaply)
    let g = joint_gcd(&cores);
    if !g.is_constant() {
        for core in cores.iter_mut().filter(|p| !p.is_zero()) {
            *core = core.exact_div(&g).expect("common factor divides");
        }
    }

    // drop each atom's joint minimum exponent, then expand what remains
    for j in 0..atoms.len() {
        let min = cores
            .iter()
            .zip(&exps)
            .filter(|(core, _)| !core.is_zero())
            .map(|(_, e)| e[j])
            .min()
            .unwrap_or(0);
        if min > 0 {
            for (core, e) in cores.iter_mut().zip(exps.iter_mut()) {
                if !core.is_zero() {
                    e[j] -= min;
                }
            }
        }
    }
    let polys: Vec<MPoly> = cores
        .into_iter()
        .zip(&exps)
        .map(|(mut core, e)| {
            for (j, (f, _)) in atoms.iter().enumerate() {
                for _ in 0..e[j] {
                    core = core.mul(f);
                }
            }
            core
        })
        .collect();

    let shifts: Vec<ShiftVector> = terms.iter().map(|(s, _)| *s).collect();
    finish_normalization(shifts.into_iter().zip(polys).collect())
}

/// Shared canonical tail: joint rational content 1, largest shift first,
/// overall sign fixed by the leading coefficient of the first nonzero term.
fn finish_normalization(
    mut items: Vec<(ShiftVector, MPoly)>,
) -> Result<ContigRelation, RelationError> {
    let mut content = Rational::zero();
    for (_, p) in &items {
        content = rational_gcd(&content, &p.content());
    }
    if !content.is_one() {
        let inv = Rational::one() / content;
        for (_, p) in items.iter_mut() {
            *p = p.mul_scalar(&inv);
        }
    }

    items.sort_by(|x, y| y.0.cmp(&x.0));
    let flip = items
        .iter()
        .find(|(_, p)| !p.is_zero())
        .map(|(_, p)| p.leading_coeff().is_negative())
        .unwrap_or(false);
    if flip {
        for (_, p) in items.iter_mut() {
            *p = p.neg();
        }
    }

    let mut it = items.into_iter().map(|(s, p)| (s, RatFunc::from_poly(p)));
    Ok(ContigRelation::from_normalized([
        it.next().unwrap(),
        it.next().unwrap(),
        it.next().unwrap(),
    ]))
}

/// GCD of the nonzero entries, folded smallest-first: gcd results only
/// shrink, so seeding the fold with the smallest operand keeps the
/// pseudo-remainder sequences short.
fn joint_gcd(polys: &[MPoly]) -> MPoly {
    let mut order: Vec<&MPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    order.sort_by_key(|p| p.num_terms());
    let mut g: Option<MPoly> = None;
    for p in order {
        g = Some(match g {
            None => p.clone(),
            Some(g) if g.is_one() => return g,
            Some(g) => mpoly_gcd(&g, p),
        });
    }
    g.expect("at least two coefficients are nonzero")
}

fn rational_gcd(a: &Rational, b: &Rational) -> Rational {
    if a.is_zero() {
        return b.abs();
    }
    if b.is_zero() {
        return a.abs();
    }
    Rational::new(a.numer().gcd(b.numer()), a.denom().lcm(b.denom()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::StepDirection;

    fn sv(da: i32, db: i32, dc: i32) -> ShiftVector {
        ShiftVector::new(da, db, dc)
    }

    fn rf(src: &str) -> RatFunc {
        crate::exprio::parse_expr(src).unwrap()
    }

    #[test]
    fn classical_a_step_relation_is_reproduced() {
        // (c−a)F(a−1) + (2a−c−az+bz)F + a(z−1)F(a+1) = 0
        let e = PqEngine::new();
        let rel = three_term(&e, ShiftVector::ZERO, sv(1, 0, 0), sv(-1, 0, 0)).unwrap();
        let terms = rel.terms();
        assert_eq!(terms[0].0, sv(1, 0, 0));
        assert_eq!(terms[0].1, rf("a*z - a"));
        assert_eq!(terms[1].0, sv(0, 0, 0));
        assert_eq!(terms[1].1, rf("2*a - c - a*z + b*z"));
        assert_eq!(terms[2].0, sv(-1, 0, 0));
        assert_eq!(terms[2].1, rf("c - a"));
    }

    #[test]
    fn wronskian_route_gives_the_same_relation() {
        let e = PqEngine::new();
        let triples = [
            (ShiftVector::ZERO, sv(1, 0, 0), sv(0, 1, 0)),
            (ShiftVector::ZERO, sv(0, 0, 1), sv(0, 0, -1)),
            (sv(1, -1, 0), sv(2, -1, 0), sv(1, -1, 1)),
            (ShiftVector::ZERO, sv(2, 1, 0), sv(-1, 0, 2)),
        ];
        for (s1, s2, s3) in triples {
            assert_eq!(
                three_term(&e, s1, s2, s3).unwrap(),
                three_term_det(&e, s1, s2, s3).unwrap(),
                "triple {s1} {s2} {s3}"
            );
        }
    }

    #[test]
    fn relations_translate_covariantly() {
        let e = PqEngine::new();
        let base = three_term(&e, ShiftVector::ZERO, sv(0, 1, 0), sv(0, 0, 1)).unwrap();
        let t = sv(-1, 2, 1);
        let direct = three_term(&e, t, t + sv(0, 1, 0), t + sv(0, 0, 1)).unwrap();
        assert_eq!(base.translated(t), direct);
    }

    #[test]
    fn a_b_swap_maps_the_a_relation_onto_the_b_relation() {
        let e = PqEngine::new();
        let a_rel = three_term(&e, ShiftVector::ZERO, sv(1, 0, 0), sv(-1, 0, 0)).unwrap();
        let b_rel = three_term(&e, ShiftVector::ZERO, sv(0, 1, 0), sv(0, -1, 0)).unwrap();
        assert_eq!(a_rel.swapped_ab(), b_rel);
    }

    #[test]
    fn common_rational_factor_is_divided_out() {
        let e = PqEngine::new();
        let rel = three_term(&e, ShiftVector::ZERO, sv(1, 0, 0), sv(-1, 0, 0)).unwrap();
        let noise = rf("(c - a)/(3*b)");
        let scaled: Vec<_> = rel
            .terms()
            .iter()
            .map(|(s, c)| (*s, c.mul(&noise)))
            .collect();
        assert_eq!(ContigRelation::from_terms(scaled).unwrap(), rel);
    }

    #[test]
    fn malformed_term_lists_are_rejected() {
        let one = RatFunc::one;
        assert_eq!(
            ContigRelation::from_terms(vec![(sv(0, 0, 0), one())]),
            Err(RelationError::WrongArity(1))
        );
        assert_eq!(
            ContigRelation::from_terms(vec![
                (sv(0, 0, 0), one()),
                (sv(0, 0, 0), one()),
                (sv(1, 0, 0), one()),
            ]),
            Err(RelationError::DuplicateShift)
        );
        assert_eq!(
            ContigRelation::from_terms(vec![
                (sv(0, 0, 0), RatFunc::zero()),
                (sv(1, 0, 0), RatFunc::zero()),
                (sv(0, 1, 0), one()),
            ]),
            Err(RelationError::TooManyZeros)
        );
        assert_eq!(
            three_term(&PqEngine::new(), sv(0, 1, 0), sv(0, 1, 0), sv(1, 0, 0)),
            Err(RelationError::DuplicateShift)
        );
    }

    #[test]
    fn fifteen_direction_pairs_are_generated_in_order() {
        let rels = crate::gauss::gauss_relations();
        assert_eq!(rels.len(), 15);
        // first pair is (+a, −a), last is (+c, −c)
        let dirs = StepDirection::ALL;
        let mut idx = 0;
        for i in 0..6 {
            for j in (i + 1)..6 {
                let shifts = rels[idx].shifts();
                assert!(shifts.contains(&dirs[i].unit()), "relation {idx}");
                assert!(shifts.contains(&dirs[j].unit()), "relation {idx}");
                assert!(shifts.contains(&ShiftVector::ZERO), "relation {idx}");
                idx += 1;
            }
        }
    }
}
