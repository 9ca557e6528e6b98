//! Exact contiguous-relation engine for the Gauss hypergeometric function
//! ₂F₁(a, b; c; z).
//!
//! Any contiguous shift F(a+k, b+l; c+m) expands over the two-element basis
//! {F(a, b; c), F(a+1, b; c)} with coefficients P(k,l,m), Q(k,l,m) that are
//! rational functions of a, b, c, z:
//!
//! ```text
//! F(a+k, b+l; c+m) = P(k,l,m)·F(a,b;c) + Q(k,l,m)·F(a+1,b;c)
//! ```
//!
//! The crate computes these coefficient pairs exactly, exposes the
//! three-term contiguous relations that generate them, verifies the
//! structural identities the pairs satisfy (Wronskians, inversion,
//! composition), and carries two satellite components: contiguous
//! expansions of a Kummer-type quadratic identity, and recurrence-class
//! utilities for hypergeometric term sequences.
//!
//! Module map:
//!
//! * [`ratfield`] — exact arithmetic in ℚ(a, b, c, z): sparse multivariate
//!   polynomials, GCDs, canonical rational functions.
//! * [`exprio`] — parsing, canonical printing, JSON shapes.
//! * [`gauss`] — shift vectors, step matrices, three-term relations, and
//!   the table of the fifteen relations between nearest neighbours.
//! * [`pq`] — the engine computing (P, Q) pairs by stepping, halving, or
//!   closed products, plus the pair Wronskians.
//! * [`relation`] — relation assembly and canonical normalization.
//! * [`discover`] — independent relation derivation by linear algebra on
//!   symbolic series.
//! * [`oracle`] — independent checks: exact power series, floating-point
//!   summation, Γ.
//! * [`verify`] — named self-verification suites over all of the above.
//! * [`kummer`] — contiguous expansions of the evaluation ₂F₁(a+n, b; a−b; −1).
//! * [`recurrence`] — equivalence classes of three-term recurrences under
//!   hypergeometric-term rescaling.

pub mod discover;
pub mod exprio;
pub(crate) mod frac;
pub mod gauss;
pub mod kummer;
pub mod oracle;
pub mod pq;
pub mod ratfield;
pub mod recurrence;
pub mod relation;
pub mod verify;

pub use exprio::{parse_expr, print_expr, ParseError, PqJson, RelationJson, RelationTermJson};
pub use oracle::{
    check_relation, check_relation_at_random, float_2f1_neg1, float_gamma, float_pfq,
    sample_params, series_2f1, FloatError, FloatSum, OracleError, SeriesTrunc,
};
pub use gauss::{
    gauss_relations, step_matrix, ContigRelation, RelationError, ShiftVector, StepDirection,
    StepMatrix,
};
pub use pq::{
    w_one_closed, Method, PqEngine, PqPair, DC_THRESHOLD, NEGATIVE_CLOSED_FORM_THRESHOLD,
};
pub use discover::derive_relation;
pub use kummer::{
    classical_check, gkummer_check, kummer_p, kummer_q, kummer_recurrence, specfo2_probe,
    EvalCheck, EvalError, SpecProbe,
};
pub use ratfield::{pochhammer, MPoly, RatFunc, Rational, Var};
pub use recurrence::{confluent_pair, Recurrence, RecurrenceError};
pub use relation::{three_term, three_term_det};
pub use verify::{generated_series_suite, series_suite, theorem_suite, CheckReport, SuiteReport};
