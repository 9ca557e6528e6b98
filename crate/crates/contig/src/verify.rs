//! Self-verification suites: every structural identity the engine relies
//! on, checked as an exact symbolic statement and reported one line per
//! check.
//!
//! The symbolic suite covers the basis-expansion machinery (initial
//! conditions, the lowering identity that ties P to Q, the
//! argument-addition rule, the closed product for non-positive shifts,
//! strategy cross-agreement) and the pair Wronskians
//! W_{p,q,r}(k,l,m) = P(k,l,m)·Q(k+p,l+q,m+r) − Q(k,l,m)·P(k+p,l+q,m+r)
//! (antisymmetry, values at the origin, first-order recurrences in each
//! direction, the closed form, the factorization through W_{1,0,0}, the
//! determinant of two coefficient columns, and compatibility with the
//! fifteen neighbour relations).  The numerical suite re-checks every
//! relation against truncated series at random rational points.
//!
//! All checks are equalities in ℚ(a, b, c, z); a failure report carries
//! the first offending lattice point.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::frac::Frac;
use crate::gauss::{gauss_relations, poly, ShiftVector};
use crate::oracle::{check_relation_at_random, OracleError};
use crate::pq::{lowering_factor, raising_factor, w_one_closed_frac, Method, PqEngine};
use crate::relation::three_term;

const E_A: ShiftVector = ShiftVector { da: 1, db: 0, dc: 0 };

/// Outcome of one named check.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub passed: bool,
    /// Number of individual identities confirmed (or attempted).
    pub cases: usize,
    /// Empty on success; the first counterexample otherwise.
    pub detail: String,
}

impl CheckReport {
    fn pass(name: impl Into<String>, cases: usize) -> CheckReport {
        CheckReport { name: name.into(), passed: true, cases, detail: String::new() }
    }

    fn fail(name: impl Into<String>, cases: usize, detail: String) -> CheckReport {
        CheckReport { name: name.into(), passed: false, cases, detail }
    }

    /// One human-readable status line.
    pub fn render(&self) -> String {
        if self.passed {
            format!("PASS {} ({} cases)", self.name, self.cases)
        } else {
            format!("FAIL {}: {}", self.name, self.detail)
        }
    }
}

/// A bundle of check results.
#[derive(Debug, Clone, Default)]
pub struct SuiteReport {
    pub checks: Vec<CheckReport>,
}

impl SuiteReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    /// One line per check, in execution order.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            out.push_str(&c.render());
            out.push('\n');
        }
        out
    }
}

/// Iterate over the cube of shifts with every component in [−max, max].
fn box_shifts(max: i32) -> impl Iterator<Item = ShiftVector> {
    (-max..=max).flat_map(move |da| {
        (-max..=max)
            .flat_map(move |db| (-max..=max).map(move |dc| ShiftVector::new(da, db, dc)))
    })
}

fn random_shift<R: Rng>(rng: &mut R, max: i32) -> ShiftVector {
    ShiftVector::new(
        rng.gen_range(-max..=max),
        rng.gen_range(-max..=max),
        rng.gen_range(-max..=max),
    )
}

// ----------------------------------------------------------------------
// Basis-expansion checks
// ----------------------------------------------------------------------

/// P(0,0,0) = 1, Q(0,0,0) = 0 and P(1,0,0) = 0, Q(1,0,0) = 1.
pub fn check_initial_conditions(engine: &PqEngine) -> CheckReport {
    let name = "initial-conditions";
    let zero = engine.pq(ShiftVector::ZERO, Method::Path);
    if !zero.p.is_one() || !zero.q.is_zero() {
        return CheckReport::fail(name, 2, "expansion of F itself is not (1, 0)".into());
    }
    let up = engine.pq(E_A, Method::Path);
    if !up.p.is_zero() || !up.q.is_one() {
        return CheckReport::fail(name, 2, "expansion of F(a+1) is not (0, 1)".into());
    }
    CheckReport::pass(name, 2)
}

/// P(t) = (c−a−1)/((a+1)(1−z)) · Sₐ(Q(t−e_a)) on the whole shift box.
pub fn check_lowering_identity(engine: &PqEngine, max_shift: i32) -> CheckReport {
    let name = "lowering-identity";
    let factor = lowering_factor();
    let mut cases = 0;
    for t in box_shifts(max_shift) {
        cases += 1;
        let p = engine.pq_frac(t, Method::Auto).0;
        let rhs = factor.mul(&engine.q_frac(t - E_A).shift_abc(1, 0, 0));
        if !p.equals(&rhs) {
            return CheckReport::fail(name, cases, format!("mismatch at t = {t}"));
        }
    }
    CheckReport::pass(name, cases)
}

/// Q(t+s) = Sᵗ(Q(s))·Q(t+e_a) + Sᵗ⁺ᵉ[(c−a)/(a(1−z))·Q(s−e_a)]·Q(t) for
/// seeded random t, s.
pub fn check_argument_addition(engine: &PqEngine, seed: u64, trials: usize) -> CheckReport {
    let name = "argument-addition";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 0..trials {
        let t = random_shift(&mut rng, 3);
        let s = random_shift(&mut rng, 3);
        let lhs = engine.q_frac(t + s);
        let first = engine
            .q_frac(s)
            .shift_abc(t.da as i64, t.db as i64, t.dc as i64)
            .mul(&engine.q_frac(t + E_A));
        let second = raising_factor()
            .mul(&engine.q_frac(s - E_A))
            .shift_abc(t.da as i64 + 1, t.db as i64, t.dc as i64)
            .mul(&engine.q_frac(t));
        if !lhs.equals(&first.add(&second)) {
            return CheckReport::fail(name, n + 1, format!("mismatch at t = {t}, s = {s}"));
        }
    }
    CheckReport::pass(name, trials)
}

/// det [P(t) Q(t); P(t′) Q(t′)] = W_{1,0,0}(t)·Sᵗ(Q(t′−t)) with the
/// closed W_{1,0,0}, for seeded random pairs of shifts.
pub fn check_pair_determinants(engine: &PqEngine, seed: u64, trials: usize) -> CheckReport {
    let name = "pair-determinants";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 0..trials {
        let t = random_shift(&mut rng, 3);
        let mut t2 = random_shift(&mut rng, 3);
        while t2 == t {
            t2 = random_shift(&mut rng, 3);
        }
        let (p1, q1) = engine.pq_frac(t, Method::Auto);
        let (p2, q2) = engine.pq_frac(t2, Method::Auto);
        let det = p1.mul(&q2).sub(&q1.mul(&p2));
        let rhs = w_one_closed_frac(t).mul(
            &engine
                .q_frac(t2 - t)
                .shift_abc(t.da as i64, t.db as i64, t.dc as i64),
        );
        if !det.equals(&rhs) {
            return CheckReport::fail(name, n + 1, format!("mismatch at t = {t}, t′ = {t2}"));
        }
    }
    CheckReport::pass(name, trials)
}

/// The closed product for (−k, −l, −m) equals the stepped pair for all
/// 0 ≤ k, l, m ≤ max_shift.
pub fn check_nonpositive_closed_form(engine: &PqEngine, max_shift: i32) -> CheckReport {
    let name = "nonpositive-closed-form";
    let mut cases = 0;
    for k in 0..=max_shift {
        for l in 0..=max_shift {
            for m in 0..=max_shift {
                cases += 1;
                let closed = engine.pq_negative(k, l, m);
                let stepped = engine.pq(ShiftVector::new(-k, -l, -m), Method::Path);
                if closed != stepped {
                    return CheckReport::fail(
                        name,
                        cases,
                        format!("mismatch at (−{k}, −{l}, −{m})"),
                    );
                }
            }
        }
    }
    CheckReport::pass(name, cases)
}

/// The stepping and halving strategies (and the closed product, where it
/// applies) agree on the whole shift box.
pub fn check_method_agreement(engine: &PqEngine, max_shift: i32) -> CheckReport {
    let name = "method-agreement";
    let mut cases = 0;
    for t in box_shifts(max_shift) {
        cases += 1;
        let (pp, pq) = engine.pq_frac(t, Method::Path);
        let (dp, dq) = engine.pq_frac(t, Method::DivideConquer);
        if !pp.equals(&dp) || !pq.equals(&dq) {
            return CheckReport::fail(name, cases, format!("path ≠ halving at t = {t}"));
        }
        if t.all_nonpositive() {
            let neg = engine.pq_negative(-t.da, -t.db, -t.dc);
            let path = engine.pq(t, Method::Path);
            if neg != path {
                return CheckReport::fail(
                    name,
                    cases,
                    format!("closed product ≠ path at t = {t}"),
                );
            }
        }
    }
    CheckReport::pass(name, cases)
}

// ----------------------------------------------------------------------
// Wronskian checks
// ----------------------------------------------------------------------

/// W_{0,0,0}(k,l,m) = 0 on the whole shift box.
pub fn check_wronskian_antisymmetry(engine: &PqEngine, max_shift: i32) -> CheckReport {
    let name = "wronskian-antisymmetry";
    let mut cases = 0;
    for klm in box_shifts(max_shift) {
        cases += 1;
        if !engine.w_symbol_frac(ShiftVector::ZERO, klm).is_zero() {
            return CheckReport::fail(name, cases, format!("nonzero at (k,l,m) = {klm}"));
        }
    }
    CheckReport::pass(name, cases)
}

/// W_{p,q,r}(0,0,0) = Q(p,q,r) on the whole shift box.
pub fn check_wronskian_at_origin(engine: &PqEngine, max_shift: i32) -> CheckReport {
    let name = "wronskian-at-origin";
    let mut cases = 0;
    for pqr in box_shifts(max_shift) {
        cases += 1;
        let w = engine.w_symbol_frac(pqr, ShiftVector::ZERO);
        if !w.equals(&engine.q_frac(pqr)) {
            return CheckReport::fail(name, cases, format!("mismatch at (p,q,r) = {pqr}"));
        }
    }
    CheckReport::pass(name, cases)
}

/// The three first-order recurrences of W_{1,0,0}:
///
/// ```text
/// W(k+1,l,m) = Sₐᵏ⁺¹S꜀ᵐ[(a−c)/(a(1−z))] · W(k,l,m)
/// W(k,l+1,m) = S_bˡS꜀ᵐ[(b−c+1)/(b(1−z))] · W(k,l,m)
/// W(k,l,m+1) = SₐᵏS_bˡS꜀ᵐ[c²(z−1)/((c−a)(c−b)z)] · W(k,l,m)
/// ```
///
/// checked with both sides from the definition.
pub fn check_wronskian_recurrences(engine: &PqEngine, max_shift: i32) -> CheckReport {
    let name = "wronskian-recurrences";
    let factor_a = Frac::new(poly("a - c"), &[(poly("a"), 1), (poly("1 - z"), 1)]);
    let factor_b = Frac::new(poly("b - c + 1"), &[(poly("b"), 1), (poly("1 - z"), 1)]);
    let factor_c = Frac::new(
        poly("c^2*(z - 1)"),
        &[(poly("c - a"), 1), (poly("c - b"), 1), (poly("z"), 1)],
    );
    let mut cases = 0;
    for klm in box_shifts(max_shift) {
        let (k, l, m) = (klm.da as i64, klm.db as i64, klm.dc as i64);
        let w = engine.w_symbol_frac(E_A, klm);
        let steps = [
            (ShiftVector::new(1, 0, 0), factor_a.shift_abc(k + 1, 0, m)),
            (ShiftVector::new(0, 1, 0), factor_b.shift_abc(0, l, m)),
            (ShiftVector::new(0, 0, 1), factor_c.shift_abc(k, l, m)),
        ];
        for (step, factor) in steps {
            cases += 1;
            let lhs = engine.w_symbol_frac(E_A, klm + step);
            if !lhs.equals(&factor.mul(&w)) {
                return CheckReport::fail(
                    name,
                    cases,
                    format!("{} step fails at (k,l,m) = {klm}", step),
                );
            }
        }
    }
    CheckReport::pass(name, cases)
}

/// The closed form of W_{1,0,0} equals the definition on the whole box.
pub fn check_wronskian_closed_form(engine: &PqEngine, max_shift: i32) -> CheckReport {
    let name = "wronskian-closed-form";
    let mut cases = 0;
    for klm in box_shifts(max_shift) {
        cases += 1;
        if !w_one_closed_frac(klm).equals(&engine.w_symbol_frac(E_A, klm)) {
            return CheckReport::fail(name, cases, format!("mismatch at (k,l,m) = {klm}"));
        }
    }
    CheckReport::pass(name, cases)
}

/// W_{p,q,r}(k,l,m) = W_{1,0,0}(k,l,m)·Sᵏˡᵐ(Q(p,q,r)) for seeded random
/// subscript/argument pairs.
pub fn check_wronskian_factorization(
    engine: &PqEngine,
    seed: u64,
    trials: usize,
) -> CheckReport {
    let name = "wronskian-factorization";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 0..trials {
        let mut pqr = random_shift(&mut rng, 3);
        while pqr.is_zero() {
            pqr = random_shift(&mut rng, 3);
        }
        let klm = random_shift(&mut rng, 3);
        let lhs = engine.w_symbol_frac(pqr, klm);
        let rhs = engine.w_symbol_frac(E_A, klm).mul(
            &engine
                .q_frac(pqr)
                .shift_abc(klm.da as i64, klm.db as i64, klm.dc as i64),
        );
        if !lhs.equals(&rhs) {
            return CheckReport::fail(
                name,
                n + 1,
                format!("mismatch at (p,q,r) = {pqr}, (k,l,m) = {klm}"),
            );
        }
    }
    CheckReport::pass(name, trials)
}

/// Each neighbour relation Σᵢ cᵢ·F(sᵢ) = 0 lifts to the Wronskians: for
/// any argument (k,l,m) and offset (p,q,r),
///
/// ```text
/// Σᵢ S^{(k,l,m)+(p,q,r)}(cᵢ) · W_{sᵢ+(p,q,r)}(k,l,m) = 0,
/// ```
///
/// because W with a fixed first argument is a fixed linear combination of
/// the coefficient columns.  Seeded random sample of (relation, argument,
/// offset) triples with offsets in {0,1}³.
pub fn check_relation_wronskian_compat(
    engine: &PqEngine,
    seed: u64,
    samples: usize,
) -> CheckReport {
    let name = "relation-wronskian-compat";
    let relations = gauss_relations();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for n in 0..samples {
        let rel = &relations[rng.gen_range(0..relations.len())];
        let klm = random_shift(&mut rng, 2);
        let pqr = ShiftVector::new(
            rng.gen_range(0..=1),
            rng.gen_range(0..=1),
            rng.gen_range(0..=1),
        );
        let t = klm + pqr;
        let mut acc = Frac::zero();
        for (s, coeff) in rel.terms() {
            debug_assert!(coeff.denom().is_one(), "relation coefficients are polynomials");
            let shifted = coeff
                .numer()
                .shift(crate::ratfield::Var::A, t.da as i64)
                .shift(crate::ratfield::Var::B, t.db as i64)
                .shift(crate::ratfield::Var::C, t.dc as i64);
            let w = engine.w_symbol_frac(*s + pqr, klm);
            acc = acc.add(&w.mul_poly(&shifted));
        }
        if !acc.is_zero() {
            return CheckReport::fail(
                name,
                n + 1,
                format!("nonzero sum at (k,l,m) = {klm}, (p,q,r) = {pqr}"),
            );
        }
    }
    CheckReport::pass(name, samples)
}

/// Every neighbour relation, translated to a few random base points,
/// annihilates the coefficient columns: Σᵢ Sᵗ(cᵢ)·P(sᵢ+t) = 0 and the
/// same with Q.
pub fn check_relation_basis_consistency(engine: &PqEngine, seed: u64) -> CheckReport {
    let name = "relation-basis-consistency";
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = 0;
    for rel in gauss_relations() {
        let translations =
            [ShiftVector::ZERO, random_shift(&mut rng, 2), random_shift(&mut rng, 2)];
        for t in translations {
            cases += 1;
            let shifted = rel.translated(t);
            let mut acc_p = Frac::zero();
            let mut acc_q = Frac::zero();
            for (s, coeff) in shifted.terms() {
                debug_assert!(coeff.denom().is_one(), "relation coefficients are polynomials");
                let (p, q) = engine.pq_frac(*s, Method::Auto);
                acc_p = acc_p.add(&p.mul_poly(coeff.numer()));
                acc_q = acc_q.add(&q.mul_poly(coeff.numer()));
            }
            if !acc_p.is_zero() || !acc_q.is_zero() {
                return CheckReport::fail(
                    name,
                    cases,
                    format!("relation fails on the basis coefficients at t = {t}"),
                );
            }
        }
    }
    CheckReport::pass(name, cases)
}

// ----------------------------------------------------------------------
// Suites
// ----------------------------------------------------------------------

/// The full symbolic suite: every identity above, with box checks out to
/// `max_shift` (recurrences fixed at radius 2, method agreement at
/// min(max_shift, 4): the cross-strategy box grows eightfold per step).
pub fn theorem_suite(engine: &PqEngine, max_shift: i32, seed: u64) -> SuiteReport {
    let checks = vec![
        check_initial_conditions(engine),
        check_lowering_identity(engine, max_shift),
        check_argument_addition(engine, seed, 20),
        check_pair_determinants(engine, seed, 20),
        check_nonpositive_closed_form(engine, max_shift),
        check_method_agreement(engine, max_shift.min(4)),
        check_wronskian_antisymmetry(engine, max_shift),
        check_wronskian_at_origin(engine, max_shift),
        check_wronskian_recurrences(engine, 2),
        check_wronskian_closed_form(engine, max_shift),
        check_wronskian_factorization(engine, seed, 20),
        check_relation_wronskian_compat(engine, seed, 200),
        check_relation_basis_consistency(engine, seed),
    ];
    SuiteReport { checks }
}

/// Names for the fifteen neighbour relations, in table order (one per
/// unordered pair of unit directions).
const RELATION_NAMES: [&str; 15] = [
    "series: F(a+1) / F(a-1)",
    "series: F(a+1) / F(b+1)",
    "series: F(a+1) / F(b-1)",
    "series: F(a+1) / F(c+1)",
    "series: F(a+1) / F(c-1)",
    "series: F(a-1) / F(b+1)",
    "series: F(a-1) / F(b-1)",
    "series: F(a-1) / F(c+1)",
    "series: F(a-1) / F(c-1)",
    "series: F(b+1) / F(b-1)",
    "series: F(b+1) / F(c+1)",
    "series: F(b+1) / F(c-1)",
    "series: F(b-1) / F(c+1)",
    "series: F(b-1) / F(c-1)",
    "series: F(c+1) / F(c-1)",
];

/// Numerical spot-check: every neighbour relation at `trials` random
/// rational parameter points against series truncated at `order`.
pub fn series_suite(seed: u64, trials: usize, order: usize) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    for (i, rel) in gauss_relations().iter().enumerate() {
        let name = RELATION_NAMES[i];
        let mut failed = None;
        for n in 0..trials {
            match check_relation_at_random(rel, order, &mut rng) {
                Ok(_) => {}
                Err(OracleError::Residual { index }) => {
                    failed = Some((n, format!("nonzero series coefficient at z^{index}")));
                    break;
                }
                Err(e) => {
                    failed = Some((n, e.to_string()));
                    break;
                }
            }
        }
        checks.push(match failed {
            None => CheckReport::pass(name, trials),
            Some((n, detail)) => CheckReport::fail(name, n + 1, detail),
        });
    }
    SuiteReport { checks }
}

/// Numerical check of `count` freshly derived relations on random triples
/// of distinct shifts in [−2, 2]³, each at `trials` random parameter
/// points, against series truncated at `order`.
pub fn generated_series_suite(
    engine: &PqEngine,
    seed: u64,
    count: usize,
    trials: usize,
    order: usize,
) -> SuiteReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x6E65_7261_7465_6467);
    let mut checks = Vec::new();
    while checks.len() < count {
        let (s1, s2, s3) = (
            random_shift(&mut rng, 2),
            random_shift(&mut rng, 2),
            random_shift(&mut rng, 2),
        );
        let Ok(rel) = three_term(engine, s1, s2, s3) else {
            continue; // coincident shifts: draw again
        };
        let name = format!("series: generated F{s1} / F{s2} / F{s3}");
        let mut failed = None;
        for n in 0..trials {
            match check_relation_at_random(&rel, order, &mut rng) {
                Ok(_) => {}
                Err(OracleError::Residual { index }) => {
                    failed = Some((n, format!("nonzero series coefficient at z^{index}")));
                    break;
                }
                Err(e) => {
                    failed = Some((n, e.to_string()));
                    break;
                }
            }
        }
        checks.push(match failed {
            None => CheckReport::pass(name, trials),
            Some((n, detail)) => CheckReport::fail(name, n + 1, detail),
        });
    }
    SuiteReport { checks }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_symbolic_suite_passes() {
        let engine = PqEngine::global();
        let report = theorem_suite(engine, 3, 0xC0FFEE);
        assert!(report.all_passed(), "\n{}", report.render());
        assert_eq!(report.checks.len(), 13);
        assert!(report.checks.iter().all(|c| c.cases > 0));
    }

    #[test]
    fn the_series_suite_passes() {
        let report = series_suite(42, 3, 16);
        assert!(report.all_passed(), "\n{}", report.render());
        assert_eq!(report.checks.len(), 15);
    }

    #[test]
    fn freshly_generated_relations_pass_the_series_check() {
        let report = generated_series_suite(PqEngine::global(), 7, 4, 2, 16);
        assert!(report.all_passed(), "\n{}", report.render());
        assert_eq!(report.checks.len(), 4);
        assert!(report.checks.iter().all(|c| c.name.starts_with("series: generated F(")));
    }

    #[test]
    fn reports_render_one_line_per_check() {
        let report = SuiteReport {
            checks: vec![
                CheckReport::pass("alpha", 7),
                CheckReport::fail("beta", 3, "mismatch at t = (1, 0, 0)".into()),
            ],
        };
        assert!(!report.all_passed());
        assert_eq!(
            report.render(),
            "PASS alpha (7 cases)\nFAIL beta: mismatch at t = (1, 0, 0)\n"
        );
    }
}
