//! Core domain types for contiguous shifts of ₂F₁ and the fifteen
//! three-term relations linking F(a,b;c) to pairs of its six nearest
//! neighbours F(a±1), F(b±1), F(c±1).
//!
//! Everything reduces to the two-element basis {F, F(a+1)}: a unit move in
//! any parameter direction acts on the column (P, Q), (P⁺, Q⁺) of basis
//! coefficients by a 2×2 matrix of rational functions (the step matrix),
//! and a relation between three contiguous functions falls out of
//! eliminating F(a+1) between two basis expansions.

pub(crate) mod seeds;

use std::fmt;

use once_cell::sync::Lazy;
use serde::{Deserialize, Serialize};

use crate::exprio::{RelationJson, RelationTermJson};
use crate::ratfield::{MPoly, RatFunc, Var};

/// Integer shift (Δa, Δb, Δc) of the three parameters.
#[derive(
    Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, Default,
)]
pub struct ShiftVector {
    pub da: i32,
    pub db: i32,
    pub dc: i32,
}

impl ShiftVector {
    pub const ZERO: ShiftVector = ShiftVector { da: 0, db: 0, dc: 0 };

    pub fn new(da: i32, db: i32, dc: i32) -> ShiftVector {
        ShiftVector { da, db, dc }
    }

    pub fn is_zero(self) -> bool {
        self == ShiftVector::ZERO
    }

    pub fn add(self, o: ShiftVector) -> ShiftVector {
        ShiftVector::new(self.da + o.da, self.db + o.db, self.dc + o.dc)
    }

    pub fn sub(self, o: ShiftVector) -> ShiftVector {
        ShiftVector::new(self.da - o.da, self.db - o.db, self.dc - o.dc)
    }

    pub fn neg(self) -> ShiftVector {
        ShiftVector::new(-self.da, -self.db, -self.dc)
    }

    /// Largest component magnitude.
    pub fn max_abs(self) -> i32 {
        self.da.abs().max(self.db.abs()).max(self.dc.abs())
    }

    /// Sum of component magnitudes (walk length).
    pub fn sum_abs(self) -> i32 {
        self.da.abs() + self.db.abs() + self.dc.abs()
    }

    pub fn all_nonpositive(self) -> bool {
        self.da <= 0 && self.db <= 0 && self.dc <= 0
    }

    pub fn as_array(self) -> [i64; 3] {
        [self.da as i64, self.db as i64, self.dc as i64]
    }

    /// Swap the a- and b-components (the a ↔ b symmetry).
    pub fn swapped_ab(self) -> ShiftVector {
        ShiftVector::new(self.db, self.da, self.dc)
    }
}

impl std::ops::Add for ShiftVector {
    type Output = ShiftVector;
    fn add(self, o: ShiftVector) -> ShiftVector {
        ShiftVector::add(self, o)
    }
}

impl std::ops::Sub for ShiftVector {
    type Output = ShiftVector;
    fn sub(self, o: ShiftVector) -> ShiftVector {
        ShiftVector::sub(self, o)
    }
}

impl std::ops::Neg for ShiftVector {
    type Output = ShiftVector;
    fn neg(self) -> ShiftVector {
        ShiftVector::neg(self)
    }
}

impl fmt::Display for ShiftVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.da, self.db, self.dc)
    }
}

/// One of the six unit parameter moves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepDirection {
    APlus,
    AMinus,
    BPlus,
    BMinus,
    CPlus,
    CMinus,
}

impl StepDirection {
    pub const ALL: [StepDirection; 6] = [
        StepDirection::APlus,
        StepDirection::AMinus,
        StepDirection::BPlus,
        StepDirection::BMinus,
        StepDirection::CPlus,
        StepDirection::CMinus,
    ];

    pub fn unit(self) -> ShiftVector {
        match self {
            StepDirection::APlus => ShiftVector::new(1, 0, 0),
            StepDirection::AMinus => ShiftVector::new(-1, 0, 0),
            StepDirection::BPlus => ShiftVector::new(0, 1, 0),
            StepDirection::BMinus => ShiftVector::new(0, -1, 0),
            StepDirection::CPlus => ShiftVector::new(0, 0, 1),
            StepDirection::CMinus => ShiftVector::new(0, 0, -1),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StepDirection::APlus => "+a",
            StepDirection::AMinus => "-a",
            StepDirection::BPlus => "+b",
            StepDirection::BMinus => "-b",
            StepDirection::CPlus => "+c",
            StepDirection::CMinus => "-c",
        }
    }
}

impl fmt::Display for StepDirection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The 2×2 transfer matrix of one unit move at a given base shift:
/// (PQ(base+e), PQ(base+e+(1,0,0)))ᵀ = M · (PQ(base), PQ(base+(1,0,0)))ᵀ.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StepMatrix {
    pub u11: RatFunc,
    pub u12: RatFunc,
    pub u21: RatFunc,
    pub u22: RatFunc,
    pub direction: StepDirection,
}

impl StepMatrix {
    pub fn det(&self) -> RatFunc {
        self.u11.mul(&self.u22).sub(&self.u12.mul(&self.u21))
    }
}

/// The step matrix for one unit move, based at an arbitrary shift: the
/// unit-move matrix with every entry shifted by the base.
pub fn step_matrix(direction: StepDirection, base: ShiftVector) -> StepMatrix {
    let u = seeds::unit_matrix(direction);
    let s = |f: &crate::frac::Frac| {
        f.shift_abc(base.da as i64, base.db as i64, base.dc as i64).to_ratfunc()
    };
    StepMatrix {
        u11: s(&u.p1),
        u12: s(&u.q1),
        u21: s(&u.p2),
        u22: s(&u.q2),
        direction,
    }
}

/// A three-term contiguous relation Σᵢ coeffᵢ·F(a+kᵢ, b+lᵢ; c+mᵢ) = 0.
///
/// Stored in normalized form: coefficients are polynomials with integer
/// coefficients and joint content 1, terms sorted by shift in descending
/// lexicographic order, and the first term's leading coefficient positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContigRelation {
    terms: [(ShiftVector, RatFunc); 3],
}

/// Shape violations detected when assembling a relation.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RelationError {
    #[error("a relation needs exactly three terms, got {0}")]
    WrongArity(usize),
    #[error("the three shift vectors must be pairwise distinct")]
    DuplicateShift,
    #[error("at least two coefficients must be nonzero")]
    TooManyZeros,
}

impl ContigRelation {
    /// Normalize and validate a list of three (shift, coefficient) terms.
    pub fn from_terms(
        terms: Vec<(ShiftVector, RatFunc)>,
    ) -> Result<ContigRelation, RelationError> {
        crate::relation::normalize_terms(terms)
    }

    /// Internal constructor: `terms` must already be normalized.
    pub(crate) fn from_normalized(terms: [(ShiftVector, RatFunc); 3]) -> ContigRelation {
        ContigRelation { terms }
    }

    pub fn terms(&self) -> &[(ShiftVector, RatFunc); 3] {
        &self.terms
    }

    pub fn shifts(&self) -> [ShiftVector; 3] {
        [self.terms[0].0, self.terms[1].0, self.terms[2].0]
    }

    /// The coefficient attached to a given shift, if present.
    pub fn coeff(&self, shift: ShiftVector) -> Option<&RatFunc> {
        self.terms.iter().find(|(s, _)| *s == shift).map(|(_, c)| c)
    }

    /// Translate every term by t (shift arguments and coefficients alike).
    /// Translation preserves the normalized form.
    pub fn translated(&self, t: ShiftVector) -> ContigRelation {
        let shift_coeff = |c: &RatFunc| {
            c.shift(Var::A, t.da as i64)
                .shift(Var::B, t.db as i64)
                .shift(Var::C, t.dc as i64)
        };
        ContigRelation {
            terms: [
                (self.terms[0].0 + t, shift_coeff(&self.terms[0].1)),
                (self.terms[1].0 + t, shift_coeff(&self.terms[1].1)),
                (self.terms[2].0 + t, shift_coeff(&self.terms[2].1)),
            ],
        }
    }

    /// The image under the a ↔ b symmetry, renormalized.
    pub fn swapped_ab(&self) -> ContigRelation {
        let terms = self
            .terms
            .iter()
            .map(|(s, c)| (s.swapped_ab(), c.swap_vars(Var::A, Var::B)))
            .collect();
        ContigRelation::from_terms(terms).expect("swap preserves relation shape")
    }

    pub fn to_json(&self) -> RelationJson {
        RelationJson {
            terms: self
                .terms
                .iter()
                .map(|(s, c)| RelationTermJson {
                    shift: s.as_array(),
                    coeff: crate::exprio::print_expr(c),
                })
                .collect(),
        }
    }

    /// LaTeX rendering (coefficients in canonical order, `*` dropped).
    pub fn to_latex(&self) -> String {
        let mut out = String::new();
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                out.push_str(" + ");
            }
            let coeff = crate::exprio::print_expr(c).replace('*', " ");
            out.push_str(&format!(
                "\\left({}\\right)\\,{{}}_2F_1\\!\\left({},\\,{};\\,{};\\,z\\right)",
                coeff,
                shifted_param("a", s.da),
                shifted_param("b", s.db),
                shifted_param("c", s.dc),
            ));
        }
        out.push_str(" = 0");
        out
    }
}

fn shifted_param(name: &str, d: i32) -> String {
    match d {
        0 => name.to_string(),
        d if d > 0 => format!("{name}+{d}"),
        d => format!("{name}{d}"),
    }
}

impl fmt::Display for ContigRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, (s, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(
                f,
                "({})*F({}, {}; {})",
                crate::exprio::print_expr(c),
                shifted_param("a", s.da),
                shifted_param("b", s.db),
                shifted_param("c", s.dc),
            )?;
        }
        write!(f, " = 0")
    }
}

/// The fifteen relations between F and a pair of its six unit-step
/// neighbours, one per unordered pair of distinct directions, in the
/// direction order +a, −a, +b, −b, +c, −c.
pub fn gauss_relations() -> &'static [ContigRelation] {
    static TABLE: Lazy<Vec<ContigRelation>> = Lazy::new(|| {
        let engine = crate::pq::PqEngine::global();
        let dirs = StepDirection::ALL;
        let mut out = Vec::with_capacity(15);
        for i in 0..dirs.len() {
            for j in (i + 1)..dirs.len() {
                out.push(
                    crate::relation::three_term(
                        engine,
                        ShiftVector::ZERO,
                        dirs[i].unit(),
                        dirs[j].unit(),
                    )
                    .expect("unit direction pairs are distinct"),
                );
            }
        }
        out
    });
    &TABLE
}

/// Parse a polynomial seed, panicking on rational functions (used by the
/// seed tables below and by tests).
pub(crate) fn poly(src: &str) -> MPoly {
    let x = crate::exprio::parse_expr(src).expect("valid seed expression");
    assert!(x.denom().is_one(), "seed is not a polynomial: {src}");
    x.numer().clone()
}
