//! Independent numerical checks: exact power series and floating-point
//! evaluation.
//!
//! The series oracle knows nothing about step matrices or Wronskians; it
//! expands ₂F₁(a, b; c; z) = Σ (a)ₙ(b)ₙ/((c)ₙ n!) zⁿ from the term-ratio
//! recurrence with exact rational arithmetic and verifies a candidate
//! relation Σᵢ wᵢ(z)·F(a+kᵢ, b+lᵢ; c+mᵢ) = 0 by specializing (a, b, c)
//! at a random rational point, clearing the z-denominators, convolving
//! the polynomial weights with the truncated series, and demanding that
//! every coefficient of the residual vanish. A wrong coefficient anywhere
//! leaves a nonzero residual at some small power of z.
//!
//! The floating-point half sums generalized hypergeometric series with a
//! running truncation bound and provides Γ via the Lanczos approximation;
//! it backs the checks of limit identities at z = −1, reached through the
//! Pfaff transformation ₂F₁(α, β; γ; −1) = 2^(−α)·₂F₁(α, γ−β; γ; ½).

use num_traits::{One, Zero};
use rand::Rng;

use crate::gauss::{ContigRelation, ShiftVector};
use crate::ratfield::{poly_lcm, FieldError, MPoly, RatFunc, Rational, Var};

/// Why a series check could not pass.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OracleError {
    /// The sample point cannot probe the relation (parameter pole,
    /// vanishing weights); the check is undecided, not failed.
    #[error("inadmissible sample point: {0}")]
    Inadmissible(String),
    /// The relation is wrong: the residual series has a nonzero
    /// coefficient at z^index.
    #[error("nonzero residual at z^{index}")]
    Residual { index: usize },
}

/// Exact Taylor coefficients s₀ … s_order of a series around z = 0.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesTrunc {
    coeffs: Vec<Rational>,
}

impl SeriesTrunc {
    pub fn coeff(&self, j: usize) -> &Rational {
        &self.coeffs[j]
    }

    /// Largest included power of z.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }
}

/// The series of ₂F₁(a, b; c; z) to the given order, by the term ratio
/// tₙ₊₁ = tₙ·(a+n)(b+n)/((c+n)(n+1)). A terminating series (upper
/// parameter a nonpositive integer) propagates its zeros past any later
/// (c+n) = 0; otherwise a nonpositive integer c is a pole.
pub fn series_2f1(
    a: &Rational,
    b: &Rational,
    c: &Rational,
    order: usize,
) -> Result<SeriesTrunc, OracleError> {
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut t = Rational::one();
    for n in 0..=order {
        coeffs.push(t.clone());
        if n == order {
            break;
        }
        if t.is_zero() {
            continue;
        }
        let nn = Rational::from_integer(n.into());
        let den = (c + &nn) * (&nn + Rational::one());
        if den.is_zero() {
            return Err(OracleError::Inadmissible(format!(
                "lower parameter {c} reaches zero at term {n}"
            )));
        }
        t = t * (a + &nn) * (b + &nn) / den;
    }
    Ok(SeriesTrunc { coeffs })
}

/// Verify a relation at a rational parameter point by exact series
/// expansion. The z-denominators of the specialized coefficients are
/// cleared, each series is taken to order max(`order`, weight degree),
/// and the full residual must vanish coefficient by coefficient. Points
/// where any of the three functions fails to exist are inadmissible.
pub fn check_relation(
    rel: &ContigRelation,
    a: &Rational,
    b: &Rational,
    c: &Rational,
    order: usize,
) -> Result<(), OracleError> {
    let point = [(Var::A, a.clone()), (Var::B, b.clone()), (Var::C, c.clone())];
    let mut weights: Vec<(ShiftVector, RatFunc)> = Vec::with_capacity(3);
    for (s, coeff) in rel.terms() {
        let w = coeff.specialize(&point).map_err(|e| match e {
            FieldError::Pole | FieldError::DivisionByZero => OracleError::Inadmissible(
                format!("coefficient at {s} has a pole at a={a}, b={b}, c={c}"),
            ),
        })?;
        weights.push((*s, w));
    }
    if weights.iter().all(|(_, w)| w.is_zero()) {
        return Err(OracleError::Inadmissible(format!(
            "every coefficient vanishes at a={a}, b={b}, c={c}"
        )));
    }

    // clear z-denominators so the weights become polynomials in z
    let lcm = weights
        .iter()
        .fold(MPoly::one(), |acc, (_, w)| poly_lcm(&acc, w.denom()));
    let polys: Vec<(ShiftVector, MPoly)> = weights
        .iter()
        .map(|(s, w)| {
            let scale = lcm.exact_div(w.denom()).expect("denominator divides lcm");
            (*s, w.numer().mul(&scale))
        })
        .collect();

    let degree = polys.iter().map(|(_, p)| p.degree(Var::Z) as usize).max().unwrap_or(0);
    let n_eff = order.max(degree);

    let mut residual = vec![Rational::zero(); n_eff + 1];
    for (s, p) in &polys {
        let fa = a + Rational::from_integer(s.da.into());
        let fb = b + Rational::from_integer(s.db.into());
        let fc = c + Rational::from_integer(s.dc.into());
        // every series must exist, even under a vanishing weight: at such
        // points (say c = 1 in the F(c−1)/F(c+1) relation) the dropped
        // product weight·F tends to a finite nonzero limit, so the
        // surviving terms alone do not cancel and prove nothing
        let series = series_2f1(&fa, &fb, &fc, n_eff)?;
        if p.is_zero() {
            continue;
        }
        for (e, w) in p.coeffs_in(Var::Z).into_iter().enumerate() {
            if w.is_zero() {
                continue;
            }
            let w = w.as_constant().expect("weights are constants after specialization");
            for j in e..=n_eff {
                residual[j] = &residual[j] + &w * series.coeff(j - e);
            }
        }
    }

    match residual.iter().position(|x| !x.is_zero()) {
        Some(index) => Err(OracleError::Residual { index }),
        None => Ok(()),
    }
}

/// Draw a random parameter point with numerators in [−20, 20] and
/// denominators in [7, 13]; such points rarely land on the integer
/// lattice where contiguous denominators vanish, and any collision is
/// reported as inadmissible and resampled by the caller.
pub fn sample_params<R: Rng>(rng: &mut R) -> (Rational, Rational, Rational) {
    let one = |rng: &mut R| {
        let num: i64 = rng.gen_range(-20..=20);
        let den: i64 = rng.gen_range(7..=13);
        Rational::new(num.into(), den.into())
    };
    (one(rng), one(rng), one(rng))
}

/// Run [`check_relation`] at a fresh random point, resampling (up to a
/// fixed budget) whenever the point turns out inadmissible.
pub fn check_relation_at_random<R: Rng>(
    rel: &ContigRelation,
    order: usize,
    rng: &mut R,
) -> Result<(Rational, Rational, Rational), OracleError> {
    let mut last = None;
    for _ in 0..64 {
        let (a, b, c) = sample_params(rng);
        match check_relation(rel, &a, &b, &c, order) {
            Ok(()) => return Ok((a, b, c)),
            Err(OracleError::Inadmissible(reason)) => last = Some(reason),
            Err(e) => return Err(e),
        }
    }
    Err(OracleError::Inadmissible(format!(
        "no admissible sample point found in 64 draws (last: {})",
        last.unwrap_or_default()
    )))
}

// ----------------------------------------------------------------------
// Floating point
// ----------------------------------------------------------------------

/// Why a floating-point summation failed.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FloatError {
    #[error("series terms fail to decay")]
    Divergent,
    #[error("lower parameter is a nonpositive integer")]
    LowerParameterPole,
}

/// A floating-point sum with a bound on the truncation error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FloatSum {
    pub value: f64,
    pub bound: f64,
}

const MAX_TERMS: usize = 20_000;

/// Sum the generalized hypergeometric series
/// Σₙ Π(uᵢ)ₙ / Π(lⱼ)ₙ · zⁿ/n! in f64, stopping once the terms are at
/// machine noise and geometrically decaying. Terminating series (a
/// nonpositive integer upper parameter) are summed exactly.
pub fn float_pfq(upper: &[f64], lower: &[f64], z: f64) -> Result<FloatSum, FloatError> {
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    for n in 0..MAX_TERMS {
        let nf = n as f64;
        let mut ratio = z / (nf + 1.0);
        for u in upper {
            ratio *= u + nf;
        }
        for l in lower {
            let d = l + nf;
            if d == 0.0 {
                return Err(FloatError::LowerParameterPole);
            }
            ratio /= d;
        }
        term *= ratio;
        if term == 0.0 {
            // terminated: the remaining terms are exactly zero
            return Ok(FloatSum { value: sum, bound: 0.0 });
        }
        sum += term;
        let r = ratio.abs();
        if r < 0.95 && term.abs() <= f64::EPSILON * sum.abs().max(1.0) {
            let bound = term.abs() * r / (1.0 - r);
            return Ok(FloatSum { value: sum, bound });
        }
        if !term.is_finite() {
            return Err(FloatError::Divergent);
        }
    }
    Err(FloatError::Divergent)
}

/// ₂F₁(α, β; γ; −1) through the Pfaff transformation, which maps the
/// boundary point −1 to the interior point ½.
pub fn float_2f1_neg1(alpha: f64, beta: f64, gamma: f64) -> Result<FloatSum, FloatError> {
    let inner = float_pfq(&[alpha, gamma - beta], &[gamma], 0.5)?;
    let scale = 2f64.powf(-alpha);
    Ok(FloatSum { value: scale * inner.value, bound: scale * inner.bound })
}

/// Γ(x) by the Lanczos approximation (g = 7, nine coefficients), with
/// the reflection formula below ½. Accurate to ~1e−13 relative error.
pub fn float_gamma(x: f64) -> f64 {
    const G: [f64; 9] = [
        0.99999999999980993,
        676.5203681218851,
        -1259.1392167224028,
        771.32342877765313,
        -176.61502916214059,
        12.507343278686905,
        -0.13857109526572012,
        9.9843695780195716e-6,
        1.5056327351493116e-7,
    ];
    if x < 0.5 {
        std::f64::consts::PI
            / ((std::f64::consts::PI * x).sin() * float_gamma(1.0 - x))
    } else {
        let x = x - 1.0;
        let mut acc = G[0];
        for (i, g) in G.iter().enumerate().skip(1) {
            acc += g / (x + i as f64);
        }
        let t = x + 7.5;
        (2.0 * std::f64::consts::PI).sqrt() * t.powf(x + 0.5) * (-t).exp() * acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::gauss_relations;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn logarithmic_case_has_harmonic_coefficients() {
        // ₂F₁(1, 1; 2; z) = −ln(1−z)/z has coefficients 1/(n+1)
        let s = series_2f1(&q(1, 1), &q(1, 1), &q(2, 1), 12).unwrap();
        for n in 0..=12 {
            assert_eq!(s.coeff(n), &q(1, n as i64 + 1));
        }
    }

    #[test]
    fn terminating_series_is_a_polynomial() {
        let s = series_2f1(&q(-3, 1), &q(1, 2), &q(5, 7), 10).unwrap();
        for n in 0..=3 {
            assert!(!s.coeff(n).is_zero(), "coefficient {n} should survive");
        }
        for n in 4..=10 {
            assert!(s.coeff(n).is_zero(), "coefficient {n} should vanish");
        }
    }

    #[test]
    fn lower_parameter_pole_is_flagged() {
        let err = series_2f1(&q(1, 3), &q(1, 2), &q(-2, 1), 10).unwrap_err();
        assert!(matches!(err, OracleError::Inadmissible(_)));
        // ...unless the series terminates first
        let ok = series_2f1(&q(-1, 1), &q(1, 2), &q(-2, 1), 10).unwrap();
        assert!(ok.coeff(5).is_zero());
    }

    #[test]
    fn true_relations_have_zero_residual() {
        let (a, b, c) = (q(3, 7), q(5, 11), q(9, 13));
        for rel in gauss_relations().iter().take(4) {
            check_relation(rel, &a, &b, &c, 20).unwrap();
        }
    }

    #[test]
    fn corrupted_coefficient_is_caught() {
        let rel = gauss_relations()[0].clone();
        let mut terms: Vec<_> = rel.terms().to_vec();
        let bump = crate::exprio::parse_expr("b - 1").unwrap();
        terms[1].1 = terms[1].1.add(&bump);
        let bad = ContigRelation::from_terms(terms).unwrap();
        let err = check_relation(&bad, &q(3, 7), &q(5, 11), &q(9, 13), 20).unwrap_err();
        assert!(matches!(err, OracleError::Residual { .. }));
    }

    #[test]
    fn degenerate_points_are_inadmissible_not_failures() {
        let rel = &gauss_relations()[0];
        // every coefficient vanishes at a = 0, c = 0 for the ±a relation
        let err = check_relation(rel, &q(0, 1), &q(0, 1), &q(0, 1), 10).unwrap_err();
        assert!(matches!(err, OracleError::Inadmissible(_)));
        // c at a nonpositive integer poisons the base series
        let err = check_relation(rel, &q(1, 2), &q(1, 3), &q(-1, 1), 10).unwrap_err();
        assert!(matches!(err, OracleError::Inadmissible(_)));
    }

    #[test]
    fn random_point_checks_resample_until_admissible() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for rel in gauss_relations().iter().take(3) {
            check_relation_at_random(rel, 16, &mut rng).unwrap();
        }
    }

    #[test]
    fn float_gamma_matches_reference_values() {
        let pi = std::f64::consts::PI;
        let mut cases = vec![
            (0.5, pi.sqrt()),
            (1.5, pi.sqrt() / 2.0),
            (-0.5, -2.0 * pi.sqrt()),
            (-1.5, 4.0 * pi.sqrt() / 3.0),
        ];
        let mut fact = 1.0f64;
        for n in 1..=10 {
            cases.push((n as f64, fact)); // Γ(n) = (n−1)!
            fact *= n as f64;
        }
        for (x, want) in cases {
            let got = float_gamma(x);
            assert!(
                ((got - want) / want).abs() < 1e-12,
                "Γ({x}) = {got}, want {want}"
            );
        }
    }

    #[test]
    fn float_sums_match_closed_forms() {
        // ₁F₁(1; 2; 1) = e − 1
        let s = float_pfq(&[1.0], &[2.0], 1.0).unwrap();
        assert!((s.value - (std::f64::consts::E - 1.0)).abs() < s.bound + 1e-13);
        // ₂F₁(1, 1; 2; ½) = 2 ln 2
        let s = float_pfq(&[1.0, 1.0], &[2.0], 0.5).unwrap();
        assert!((s.value - 2.0 * std::f64::consts::LN_2).abs() < s.bound + 1e-13);
        // terminating: ₂F₁(−2, 3; 4; 1) = (4−3)₂/(4)₂ = 1/10 by Vandermonde
        let s = float_pfq(&[-2.0, 3.0], &[4.0], 1.0).unwrap();
        assert_eq!(s.bound, 0.0);
        assert!((s.value - 0.1).abs() < 1e-14);
    }

    #[test]
    fn pfaff_reaches_the_point_minus_one() {
        // ₂F₁(1, 1; 2; −1) = ln 2
        let s = float_2f1_neg1(1.0, 1.0, 2.0).unwrap();
        assert!((s.value - std::f64::consts::LN_2).abs() < s.bound + 1e-13);
    }

    #[test]
    fn non_decaying_series_is_divergent() {
        let err = float_pfq(&[1.0, 2.0], &[1.5], 1.0).unwrap_err();
        assert_eq!(err, FloatError::Divergent);
    }
}
