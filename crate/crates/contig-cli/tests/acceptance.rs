//! Acceptance gate for the whole workspace.
//!
//! Each test is one acceptance criterion; the harness therefore prints one
//! pass/fail line per criterion. Run with `-- --nocapture` to also see the
//! per-criterion measurements (case counts and wall-clock times).

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use contig::oracle::{check_relation_at_random, OracleError};
use contig::recurrence::builtin;
use contig::verify::{
    check_argument_addition, check_initial_conditions, check_lowering_identity,
    check_method_agreement, check_nonpositive_closed_form, check_pair_determinants,
    check_wronskian_antisymmetry, check_wronskian_at_origin, check_wronskian_closed_form,
    check_wronskian_factorization, check_wronskian_recurrences, CheckReport,
};
use contig::{
    classical_check, confluent_pair, gauss_relations, gkummer_check, kummer_p, kummer_q,
    kummer_recurrence, parse_expr, series_suite, specfo2_probe, ContigRelation, PqEngine,
    RatFunc, Rational, Var,
};

const SEED: u64 = 0xACCE;

fn expect_pass(report: &CheckReport, cases: usize) {
    assert!(report.passed, "{} failed: {}", report.name, report.detail);
    assert_eq!(report.cases, cases, "{} covered too few cases", report.name);
}

fn rational(src: &str) -> Rational {
    src.parse().unwrap()
}

// ---------------------------------------------------------------------
// 1. The `relation` command reproduces the three classical contiguous
//    equations byte-for-byte against the golden files, each call < 1 s.
// ---------------------------------------------------------------------
#[test]
fn criterion_1_relation_cli_reproduces_the_classical_equations() {
    let golden_dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let cases: [(&[&str], &str, [(&str, [i64; 3]); 3]); 3] = [
        (
            &["relation", "1,0,0", "0,0,0", "-1,0,0"],
            "relation_a_pm.json",
            [
                ("a*z - a", [1, 0, 0]),
                ("-a*z + 2*a + b*z - c", [0, 0, 0]),
                ("-a + c", [-1, 0, 0]),
            ],
        ),
        (
            &["relation", "1,0,0", "0,0,-1", "0,0,0"],
            "relation_ac.json",
            [
                ("a", [1, 0, 0]),
                ("-a + c - 1", [0, 0, 0]),
                ("-c + 1", [0, 0, -1]),
            ],
        ),
        (
            &["relation", "1,0,0", "0,1,0", "0,0,0"],
            "relation_ab.json",
            [("a", [1, 0, 0]), ("-b", [0, 1, 0]), ("-a + b", [0, 0, 0])],
        ),
    ];

    let mut slowest = Duration::ZERO;
    for (args, file, coeffs) in cases {
        let start = Instant::now();
        let output = Command::new(env!("CARGO_BIN_EXE_contig"))
            .args(args)
            .args(["--format", "json"])
            .env_remove("CONTIG_FORMAT")
            .output()
            .expect("failed to run contig");
        let elapsed = start.elapsed();
        slowest = slowest.max(elapsed);
        assert!(output.status.success(), "{file}: command failed");
        assert!(elapsed < Duration::from_secs(1), "{file}: took {elapsed:?}");

        let golden = std::fs::read_to_string(golden_dir.join(file)).unwrap();
        let stdout = String::from_utf8(output.stdout).unwrap();
        assert_eq!(stdout, golden, "{file}: output drifted from the golden file");

        // Pin the coefficients themselves, so the goldens cannot silently
        // drift together with the implementation.
        let parsed: contig::RelationJson = serde_json::from_str(&stdout).unwrap();
        for ((coeff, shift), term) in coeffs.iter().zip(&parsed.terms) {
            assert_eq!(term.shift, *shift, "{file}: term order changed");
            assert_eq!(term.coeff, *coeff, "{file}: coefficient changed");
        }
    }
    println!("criterion 1 PASS: three classical relations byte-equal (slowest call {slowest:.2?})");
}

// ---------------------------------------------------------------------
// 2. Path stepping, interval halving, and (on the non-positive orthant)
//    the closed product agree exactly on all 729 shifts in [−4,4]³.
// ---------------------------------------------------------------------
#[test]
fn criterion_2_all_methods_agree_on_the_full_shift_box() {
    let start = Instant::now();
    let report = check_method_agreement(PqEngine::global(), 4);
    expect_pass(&report, 729);
    println!(
        "criterion 2 PASS: 729 shifts, path = halving = closed product ({:.2?})",
        start.elapsed()
    );
}

// ---------------------------------------------------------------------
// 3. The basis-expansion identities: initial conditions, the lowering
//    identity on [−3,3]³, 20 seeded argument-addition splits, 20 seeded
//    pair determinants, and the closed product on the cube 0..3.
// ---------------------------------------------------------------------
#[test]
fn criterion_3_basis_expansion_identities_hold_exactly() {
    let engine = PqEngine::global();
    let start = Instant::now();
    expect_pass(&check_initial_conditions(engine), 2);
    expect_pass(&check_lowering_identity(engine, 3), 343);
    expect_pass(&check_argument_addition(engine, SEED, 20), 20);
    expect_pass(&check_pair_determinants(engine, SEED, 20), 20);
    expect_pass(&check_nonpositive_closed_form(engine, 3), 64);
    println!(
        "criterion 3 PASS: 449 exact identity cases ({:.2?})",
        start.elapsed()
    );
}

// ---------------------------------------------------------------------
// 4. The W-symbol lemma: vanishing at equal subscripts and reduction at
//    the origin over [−3,3]³, the three first-order recurrences over
//    [−2,2]³, the closed form of W_{1,0,0} over [−3,3]³, and the
//    factorization W_{p,q,r}(k,l,m) = W_{1,0,0}(k,l,m)·S^{klm}Q(p,q,r)
//    for 20 seeded pairs.
// ---------------------------------------------------------------------
#[test]
fn criterion_4_w_symbol_lemma_holds_exactly() {
    let engine = PqEngine::global();
    let start = Instant::now();
    expect_pass(&check_wronskian_antisymmetry(engine, 3), 343);
    expect_pass(&check_wronskian_at_origin(engine, 3), 343);
    expect_pass(&check_wronskian_recurrences(engine, 2), 375);
    expect_pass(&check_wronskian_closed_form(engine, 3), 343);
    expect_pass(&check_wronskian_factorization(engine, SEED, 20), 20);
    println!(
        "criterion 4 PASS: 1424 exact W-symbol cases ({:.2?})",
        start.elapsed()
    );
}

// ---------------------------------------------------------------------
// 5. Every built-in relation (the fifteen two-parameter relations,
//    which include the three from criterion 1) has an exactly vanishing
//    series residual through z²⁰ at 5 seeded admissible points each.
// ---------------------------------------------------------------------
#[test]
fn criterion_5_series_oracle_accepts_every_relation() {
    let start = Instant::now();
    let report = series_suite(SEED, 5, 20);
    assert_eq!(report.checks.len(), 15);
    for check in &report.checks {
        assert!(check.passed, "{} failed: {}", check.name, check.detail);
        assert_eq!(check.cases, 5);
    }
    println!(
        "criterion 5 PASS: 15 relations × 5 points, residual 0 through z^20 ({:.2?})",
        start.elapsed()
    );
}

// ---------------------------------------------------------------------
// 6. The z = −1 evaluation family: the classical closed form at 10
//    seeded points, the P/Q recurrence symbolically for n = 1..20, the
//    shifted closed form for n = 0..10 at three points, and the conic
//    specialization probe.
// ---------------------------------------------------------------------
#[test]
fn criterion_6_evaluation_family_at_minus_one() {
    let start = Instant::now();

    // Classical closed form, 10 seeded points with b < 0.
    let mut rng = ChaCha8Rng::seed_from_u64(0x1729);
    for _ in 0..10 {
        let draw = |rng: &mut ChaCha8Rng| {
            Rational::from_integer(rng.gen_range(1i64..40).into())
                / Rational::from_integer(rng.gen_range(7i64..13).into())
        };
        let a = draw(&mut rng);
        let b = -draw(&mut rng);
        let check = classical_check(&a, &b).unwrap();
        assert!(check.passed, "classical check failed at a = {a}, b = {b}");
        assert!(check.rel_err < 1e-8);
    }

    // Both coefficient families satisfy the three-term recurrence
    // symbolically (as rational functions of a and b) for n = 1..20.
    let rec = kummer_recurrence();
    let at = |f: &RatFunc, n: i64| {
        f.specialize(&[(Var::N, Rational::from_integer(n.into()))])
            .unwrap()
    };
    for family in [kummer_p as fn(i64) -> RatFunc, kummer_q] {
        let values: Vec<RatFunc> = (0..=21).map(family).collect();
        for n in 1..=20usize {
            let residue = at(rec.coeff_up(), n as i64)
                .mul(&values[n + 1])
                .add(&at(rec.coeff_mid(), n as i64).mul(&values[n]))
                .add(&at(rec.coeff_down(), n as i64).mul(&values[n - 1]));
            assert!(residue.is_zero(), "recurrence fails at n = {n}");
        }
    }

    // Shifted closed form for n = 0..10 at three admissible points.
    let points = [("5/3", "-1/4"), ("7/2", "-3/5"), ("9/4", "-5/7")];
    for (a, b) in points {
        let (a, b) = (rational(a), rational(b));
        for n in 0..=10 {
            let check = gkummer_check(n, &a, &b).unwrap();
            assert!(check.passed, "n = {n}, a = {a}, b = {b}");
            assert!(check.rel_err < 1e-8);
        }
    }

    // The doubly-lowered specialization on its conic.
    let probe = specfo2_probe().unwrap();
    assert!(probe.check.passed, "conic probe failed at a = {}, b = {}", probe.a, probe.b);
    assert!(probe.check.rel_err < 1e-6);

    println!(
        "criterion 6 PASS: closed forms at z = −1, recurrence n = 1..20, conic point a = {}, b = {} ({:.2?})",
        probe.a,
        probe.b,
        start.elapsed()
    );
}

// ---------------------------------------------------------------------
// 7. Recurrence equivalence classes: the printed class of the rising
//    fixture, class equality of the two fixtures, and the confluent
//    numeric demo to 10⁻¹⁰ for n = 0..5.
// ---------------------------------------------------------------------
#[test]
fn criterion_7_equivalence_classes_and_confluent_demo() {
    let start = Instant::now();
    let up = builtin("0f1-up").unwrap();
    let down = builtin("0f1-down").unwrap();
    assert_eq!(
        up.class_function(),
        parse_expr("-(n + c - 1)*(n + c - 2)/z").unwrap()
    );
    assert!(up.same_class(&down));

    for n in 0..=5 {
        let alpha = 5.0 / 3.0 + n as f64;
        let (lhs, rhs) = confluent_pair(alpha, 0.25).unwrap();
        assert!(
            (lhs - rhs).abs() <= 1e-10 * rhs.abs().max(1.0),
            "n = {n}: {lhs} vs {rhs}"
        );
    }
    println!(
        "criterion 7 PASS: class function exact, demo within 1e-10 ({:.2?})",
        start.elapsed()
    );
}

// ---------------------------------------------------------------------
// 8. Mutation sensitivity: adding a never-vanishing delta (1, z, or z²)
//    to a single coefficient of a built-in relation must be rejected by
//    the series oracle with a residual, for ten distinct mutations.
// ---------------------------------------------------------------------
#[test]
fn criterion_8_mutated_relations_are_rejected() {
    let start = Instant::now();
    let deltas = [
        parse_expr("1").unwrap(),
        parse_expr("z").unwrap(),
        parse_expr("z^2").unwrap(),
    ];
    let relations = gauss_relations();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    for i in 0..10 {
        let relation = &relations[i % relations.len()];
        let mut terms = relation.terms().to_vec();
        let slot = i % 3;
        terms[slot].1 = terms[slot].1.add(&deltas[i % deltas.len()]);
        let mutated = ContigRelation::from_terms(terms).unwrap();
        let result = check_relation_at_random(&mutated, 20, &mut rng);
        assert!(
            matches!(result, Err(OracleError::Residual { .. })),
            "mutation {i} was not rejected: {result:?}"
        );
    }
    println!(
        "criterion 8 PASS: 10 single-coefficient mutations rejected ({:.2?})",
        start.elapsed()
    );
}
