//! Relation discovery from scratch: find the coefficients linking three
//! contiguous functions by pure linear algebra on symbolic series.
//!
//! Nothing here touches step matrices or precomputed coefficient pairs.
//! The series of F(a+k, b+l; c+m) is expanded symbolically — its zⁿ
//! coefficient is a rational function of a, b, c — and a candidate
//! relation Σᵢ fᵢ(z)·F(a+kᵢ, b+lᵢ; c+mᵢ) = 0 with polynomial unknowns
//! fᵢ(z) = Σ_d xᵢ_d z^d turns into a homogeneous linear system over
//! ℚ(a, b, c): one equation per power of z. A nontrivial kernel vector
//! is a relation; the degree bound adapts upward until one appears.
//!
//! This gives an independent derivation route for every relation the
//! stepping engine produces, which the tests exploit.

use crate::gauss::{ContigRelation, ShiftVector};
use crate::ratfield::{RatFunc, Var};

/// Highest z-degree tried for the unknown coefficients.
const MAX_DEGREE: usize = 3;

/// Derive the relation linking the three shifted functions, if one with
/// polynomial z-coefficients of degree ≤ 3 exists. The result is in the
/// same canonical form the assembly route produces.
pub fn derive_relation(
    s1: ShiftVector,
    s2: ShiftVector,
    s3: ShiftVector,
) -> Option<ContigRelation> {
    if s1 == s2 || s1 == s3 || s2 == s3 {
        return None;
    }
    let shifts = [s1, s2, s3];
    (0..=MAX_DEGREE).find_map(|deg| kernel_relation(&shifts, deg))
}

/// The zⁿ coefficients (n = 0..=order) of F(a+k, b+l; c+m) as rational
/// functions of a, b, c, from the term-ratio recurrence.
fn symbolic_series(s: ShiftVector, order: usize) -> Vec<RatFunc> {
    let mut out = Vec::with_capacity(order + 1);
    let mut t = RatFunc::one();
    for n in 0..=order {
        out.push(t.clone());
        if n == order {
            break;
        }
        let n = n as i64;
        let num = RatFunc::var_plus(Var::A, s.da as i64 + n)
            .mul(&RatFunc::var_plus(Var::B, s.db as i64 + n));
        let den = RatFunc::var_plus(Var::C, s.dc as i64 + n).mul(&RatFunc::from_int(n + 1));
        t = t.mul(&num.checked_div(&den).expect("symbolic denominator is nonzero"));
    }
    out
}

/// Set up the linear system for unknown coefficients of degree ≤ deg and
/// extract a kernel vector, if any.
fn kernel_relation(shifts: &[ShiftVector; 3], deg: usize) -> Option<ContigRelation> {
    let jmax = 3 * (deg + 1) + 4;
    let series: Vec<Vec<RatFunc>> = shifts
        .iter()
        .map(|s| symbolic_series(*s, jmax))
        .collect();
    let ncols = 3 * (deg + 1);
    let mut rows = Vec::with_capacity(jmax + 1);
    for j in 0..=jmax {
        let mut row = Vec::with_capacity(ncols);
        for s in &series {
            for d in 0..=deg {
                row.push(if j >= d { s[j - d].clone() } else { RatFunc::zero() });
            }
        }
        rows.push(row);
    }
    let x = kernel_vector(rows, ncols)?;

    let z = RatFunc::var(Var::Z);
    let mut terms = Vec::with_capacity(3);
    for (i, s) in shifts.iter().enumerate() {
        let mut f = RatFunc::zero();
        let mut zp = RatFunc::one();
        for d in 0..=deg {
            f = f.add(&x[i * (deg + 1) + d].mul(&zp));
            zp = zp.mul(&z);
        }
        terms.push((*s, f));
    }
    ContigRelation::from_terms(terms).ok()
}

/// Reduced row echelon form over ℚ(a, b, c), returning one kernel vector
/// (free variable set to 1) or `None` when the columns are independent.
fn kernel_vector(mut rows: Vec<Vec<RatFunc>>, ncols: usize) -> Option<Vec<RatFunc>> {
    let nrows = rows.len();
    let mut pivot_row_of: Vec<Option<usize>> = vec![None; ncols];
    let mut next = 0;
    for col in 0..ncols {
        let Some(p) = (next..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(next, p);
        let inv = rows[next][col]
            .reciprocal()
            .expect("pivot entry is nonzero");
        for entry in rows[next].iter_mut() {
            *entry = entry.mul(&inv);
        }
        for i in 0..nrows {
            if i == next || rows[i][col].is_zero() {
                continue;
            }
            let factor = rows[i][col].clone();
            for c in col..ncols {
                let delta = factor.mul(&rows[next][c]);
                rows[i][c] = rows[i][c].sub(&delta);
            }
        }
        pivot_row_of[col] = Some(next);
        next += 1;
        if next == nrows {
            break;
        }
    }
    let free = (0..ncols).find(|&c| pivot_row_of[c].is_none())?;
    let mut x = vec![RatFunc::zero(); ncols];
    x[free] = RatFunc::one();
    for c in 0..ncols {
        if let Some(r) = pivot_row_of[c] {
            x[c] = rows[r][free].neg();
        }
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gauss::{gauss_relations, StepDirection};

    #[test]
    fn rederives_every_neighbour_relation() {
        let table = gauss_relations();
        let dirs = StepDirection::ALL;
        let mut idx = 0;
        for i in 0..6 {
            for j in (i + 1)..6 {
                let derived =
                    derive_relation(ShiftVector::ZERO, dirs[i].unit(), dirs[j].unit())
                        .expect("a relation exists between unit neighbours");
                assert_eq!(derived, table[idx], "pair ({}, {})", dirs[i], dirs[j]);
                idx += 1;
            }
        }
    }

    #[test]
    fn rederives_a_non_neighbour_relation() {
        let e = crate::pq::PqEngine::new();
        let (s1, s2, s3) = (
            ShiftVector::ZERO,
            ShiftVector::new(2, 0, 0),
            ShiftVector::new(1, 0, 0),
        );
        let derived = derive_relation(s1, s2, s3).unwrap();
        let assembled = crate::relation::three_term(&e, s1, s2, s3).unwrap();
        assert_eq!(derived, assembled);
    }

    #[test]
    fn degenerate_triples_yield_nothing() {
        assert!(derive_relation(
            ShiftVector::ZERO,
            ShiftVector::ZERO,
            ShiftVector::new(1, 0, 0)
        )
        .is_none());
    }
}
