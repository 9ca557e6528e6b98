//! JSON shapes for machine-readable output.
//!
//! Coefficients are carried as canonical expression strings (see
//! [`super::print_expr`]) rather than structured trees: the printed form is
//! stable, diff-friendly, and reparses exactly.

use serde::{Deserialize, Serialize};

/// One term of a contiguous relation: the (Δa, Δb, Δc) shift applied to
/// the function argument and the coefficient multiplying it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationTermJson {
    pub shift: [i64; 3],
    pub coeff: String,
}

/// A full relation: the terms sum to zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationJson {
    pub terms: Vec<RelationTermJson>,
}

/// A P/Q coefficient pair expressing F(a+k, b+l; c+m) over the basis
/// {F, F(a+1)}.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PqJson {
    pub shift: [i64; 3],
    pub p: String,
    pub q: String,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn relation_round_trips_through_json() {
        let rel = RelationJson {
            terms: vec![
                RelationTermJson { shift: [1, 0, 0], coeff: "a*z - a".into() },
                RelationTermJson { shift: [0, 0, 0], coeff: "2*a - c - a*z + b*z".into() },
                RelationTermJson { shift: [-1, 0, 0], coeff: "-a + c".into() },
            ],
        };
        let text = serde_json::to_string(&rel).unwrap();
        let back: RelationJson = serde_json::from_str(&text).unwrap();
        assert_eq!(rel, back);
    }

    #[test]
    fn pq_pair_round_trips_through_json() {
        let pq = PqJson {
            shift: [0, 1, 0],
            p: "(-a + b)/(b)".into(),
            q: "(a)/(b)".into(),
        };
        let text = serde_json::to_string(&pq).unwrap();
        assert_eq!(pq, serde_json::from_str::<PqJson>(&text).unwrap());
    }
}
