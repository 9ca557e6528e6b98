//! The engine that expands an arbitrary contiguous shift over the basis
//! {F, F(a+1)}: given t = (k, l, m) it produces the coefficient pair
//!
//! ```text
//! F(a+k, b+l; c+m) = P(t)·F(a,b;c) + Q(t)·F(a+1,b;c).
//! ```
//!
//! Three strategies are implemented and cross-checked against each other:
//!
//! * **Path** — peel one unit move at a time using the composition rule
//!   PQ(t) = Sᵈ(P(t−d))·PQ(d) + Sᵈ(Q(t−d))·PQ(d+e_a), where d is a unit
//!   move and Sᵈ shifts the parameters by d. Moves are consumed in the
//!   fixed order a, then b, then c, so every prefix lands in the cache.
//! * **Halving** — cut the shift in two roughly equal parts t + s and
//!   combine with one multiplication pass via the argument-addition rule
//!   for Q together with the lowering identity that recovers P from Q:
//!
//!   ```text
//!   P(t) = (c−a−1)/((a+1)(1−z)) · Sₐ(Q(t − e_a)),
//!   Q(t+s) = Sᵗ(Q(s))·Q(t+e_a) + Sᵗ⁺ᵉ[(c−a)/(a(1−z)) · Q(s−e_a)]·Q(t).
//!   ```
//!
//!   This needs O(log ‖t‖) rounds instead of ‖t‖ and keeps intermediate
//!   results dyadic, which pays off for long single-direction shifts.
//! * **Closed product** — for an entirely non-positive shift −(k, l, m),
//!   Q collapses to an explicit product of Pochhammer factors times the
//!   reflected coefficient S⁻ᵗ(Q(k, l, m)):
//!
//!   ```text
//!   Q(−k,−l,−m) = (−1)^{m+1} (−a)_k (1−b)_l z^m (1−z)^{k+l−m}
//!                 / [(1−c)_m² (c−a)_{k−m} (c−b)_{l−m}] · S⁻ᵗ(Q(k,l,m)).
//!   ```
//!
//! All internal arithmetic runs on factored fractions ([`Frac`]) whose
//! denominators stay products of linear polynomials, so cancellation is
//! trial division instead of general GCD extraction.
//!
//! The module also evaluates the pair Wronskians
//! W_{p,q,r}(k,l,m) = P(k,l,m)·Q(k+p,l+q,m+r) − Q(k,l,m)·P(k+p,l+q,m+r),
//! both from their definition and from the closed form
//! W_{1,0,0}(k,l,m) = (c)_m² z⁻ᵐ (z−1)^{m−k−l} /
//! [(a+1)_k (b)_l (c−a)_{m−k} (c−b)_{m−l}] together with
//! W_{p,q,r} = W_{1,0,0}·Sᵏˡᵐ(Q(p,q,r)).

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use once_cell::sync::Lazy;

use crate::exprio::PqJson;
use crate::frac::Frac;
use crate::gauss::{poly, seeds, ShiftVector, StepDirection};
use crate::ratfield::{MPoly, RatFunc};

const E_A: ShiftVector = ShiftVector { da: 1, db: 0, dc: 0 };

/// Strategy for computing a coefficient pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    /// Choose a strategy from the shape of the shift.
    #[default]
    Auto,
    /// One unit move at a time.
    Path,
    /// Halve the shift recursively.
    DivideConquer,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Auto => "auto",
            Method::Path => "path",
            Method::DivideConquer => "dc",
        }
    }
}

/// Entirely non-positive shifts at least this many unit moves long go
/// through the closed product formula under [`Method::Auto`].
pub const NEGATIVE_CLOSED_FORM_THRESHOLD: i32 = 4;

/// Shifts with a component at least this large in magnitude go through
/// the halving recursion under [`Method::Auto`].
pub const DC_THRESHOLD: i32 = 8;

/// A computed basis expansion: F(a+k, b+l; c+m) = p·F + q·F(a+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PqPair {
    pub shift: ShiftVector,
    pub p: RatFunc,
    pub q: RatFunc,
}

impl PqPair {
    pub fn to_json(&self) -> PqJson {
        PqJson {
            shift: self.shift.as_array(),
            p: crate::exprio::print_expr(&self.p),
            q: crate::exprio::print_expr(&self.q),
        }
    }
}

type FracPair = (Frac, Frac);

/// Shared computation engine with per-strategy memo tables.
pub struct PqEngine {
    path_cache: Mutex<HashMap<ShiftVector, Arc<FracPair>>>,
    dc_cache: Mutex<HashMap<ShiftVector, Arc<Frac>>>,
}

static GLOBAL: Lazy<PqEngine> = Lazy::new(PqEngine::new);

impl Default for PqEngine {
    fn default() -> Self {
        PqEngine::new()
    }
}

impl PqEngine {
    pub fn new() -> PqEngine {
        PqEngine {
            path_cache: Mutex::new(HashMap::new()),
            dc_cache: Mutex::new(HashMap::new()),
        }
    }

    /// The process-wide engine (shared caches).
    pub fn global() -> &'static PqEngine {
        &GLOBAL
    }

    /// The coefficient pair for a shift, via the chosen strategy.
    pub fn pq(&self, shift: ShiftVector, method: Method) -> PqPair {
        let (p, q) = self.pq_frac(shift, method);
        PqPair { shift, p: p.to_ratfunc(), q: q.to_ratfunc() }
    }

    /// (P, Q) for the non-positive shift (−k, −l, −m) via the closed
    /// product formula; k, l, m must all be ≥ 0.
    pub fn pq_negative(&self, k: i32, l: i32, m: i32) -> PqPair {
        assert!(
            k >= 0 && l >= 0 && m >= 0,
            "pq_negative takes the magnitudes (k, l, m) of a non-positive shift"
        );
        let shift = ShiftVector::new(-k, -l, -m);
        let (p, q) = self.negative_pair(k, l, m);
        PqPair { shift, p: p.to_ratfunc(), q: q.to_ratfunc() }
    }

    /// Factored-form pair, for crate-internal reuse of the denominators.
    pub(crate) fn pq_frac(&self, shift: ShiftVector, method: Method) -> FracPair {
        match method {
            Method::Path => {
                let pair = self.path_pair(shift);
                (pair.0.clone(), pair.1.clone())
            }
            Method::DivideConquer => self.dc_pair(shift),
            Method::Auto => {
                if shift.all_nonpositive()
                    && shift.sum_abs() > NEGATIVE_CLOSED_FORM_THRESHOLD
                {
                    self.negative_pair(-shift.da, -shift.db, -shift.dc)
                } else if shift.max_abs() >= DC_THRESHOLD {
                    self.dc_pair(shift)
                } else {
                    let pair = self.path_pair(shift);
                    (pair.0.clone(), pair.1.clone())
                }
            }
        }
    }

    /// Q alone, in factored form, via the automatic strategy.
    pub(crate) fn q_frac(&self, shift: ShiftVector) -> Frac {
        self.pq_frac(shift, Method::Auto).1
    }

    // ------------------------------------------------------------------
    // Path strategy
    // ------------------------------------------------------------------

    fn path_pair(&self, v: ShiftVector) -> Arc<FracPair> {
        if let Some(hit) = self.path_cache.lock().unwrap().get(&v).cloned() {
            return hit;
        }
        let pair = if v.is_zero() {
            (Frac::one(), Frac::zero())
        } else if v == E_A {
            (Frac::zero(), Frac::one())
        } else {
            // consume a-moves innermost, then b, then c: the peeled (last)
            // move is the first nonzero direction in the order c, b, a
            let dir = if v.dc > 0 {
                StepDirection::CPlus
            } else if v.dc < 0 {
                StepDirection::CMinus
            } else if v.db > 0 {
                StepDirection::BPlus
            } else if v.db < 0 {
                StepDirection::BMinus
            } else if v.da > 0 {
                StepDirection::APlus
            } else {
                StepDirection::AMinus
            };
            let d = dir.unit();
            let rest = self.path_pair(v - d);
            let sp = rest.0.shift_abc(d.da as i64, d.db as i64, d.dc as i64);
            let sq = rest.1.shift_abc(d.da as i64, d.db as i64, d.dc as i64);
            let u = seeds::unit_matrix(dir);
            let p = sp.mul(&u.p1).add(&sq.mul(&u.p2));
            let q = sp.mul(&u.q1).add(&sq.mul(&u.q2));
            (p, q)
        };
        let arc = Arc::new(pair);
        self.path_cache
            .lock()
            .unwrap()
            .entry(v)
            .or_insert(arc)
            .clone()
    }

    // ------------------------------------------------------------------
    // Halving strategy
    // ------------------------------------------------------------------

    fn dc_pair(&self, v: ShiftVector) -> FracPair {
        if v.max_abs() <= 2 {
            let pair = self.path_pair(v);
            return (pair.0.clone(), pair.1.clone());
        }
        let q = self.dc_q(v).as_ref().clone();
        let p = lowering_factor().mul(&self.dc_q(v - E_A).shift_abc(1, 0, 0));
        (p, q)
    }

    fn dc_q(&self, v: ShiftVector) -> Arc<Frac> {
        if let Some(hit) = self.dc_cache.lock().unwrap().get(&v).cloned() {
            return hit;
        }
        let q = if v.max_abs() <= 2 {
            self.path_pair(v).1.clone()
        } else {
            let (t, s) = split(v);
            let q_s = self.dc_q(s);
            let q_t_up = self.dc_q(t + E_A);
            let q_s_down = self.dc_q(s - E_A);
            let q_t = self.dc_q(t);
            let first = q_s
                .shift_abc(t.da as i64, t.db as i64, t.dc as i64)
                .mul(&q_t_up);
            let second = raising_factor()
                .mul(&q_s_down)
                .shift_abc(t.da as i64 + 1, t.db as i64, t.dc as i64)
                .mul(&q_t);
            first.add(&second)
        };
        let arc = Arc::new(q);
        self.dc_cache.lock().unwrap().entry(v).or_insert(arc).clone()
    }

    // ------------------------------------------------------------------
    // Closed product for non-positive shifts
    // ------------------------------------------------------------------

    fn negative_pair(&self, k: i32, l: i32, m: i32) -> FracPair {
        let q = self.negative_q(k, l, m);
        let p = lowering_factor().mul(&self.negative_q(k + 1, l, m).shift_abc(1, 0, 0));
        (p, q)
    }

    /// Q(−k, −l, −m) for k, l, m ≥ 0 as a Pochhammer product times the
    /// reflected coefficient.
    fn negative_q(&self, k: i32, l: i32, m: i32) -> Frac {
        let reflected = ShiftVector::new(k, l, m);
        // the reflected lattice point is positive, so this never re-enters
        // the closed product branch
        let q_pos = self.q_frac(reflected);
        let mut f = q_pos.shift_abc(-(k as i64), -(l as i64), -(m as i64));
        if m % 2 == 0 {
            f = f.neg(); // (−1)^(m+1)
        }
        f = times_poch(&f, &poly("-a"), k as i64, false);
        f = times_poch(&f, &poly("1 - b"), l as i64, false);
        f = f.mul(&power(&poly("z"), m as i64));
        f = f.mul(&power(&poly("1 - z"), (k + l - m) as i64));
        f = times_poch(&f, &poly("1 - c"), m as i64, true);
        f = times_poch(&f, &poly("1 - c"), m as i64, true);
        f = times_poch(&f, &poly("c - a"), (k - m) as i64, true);
        f = times_poch(&f, &poly("c - b"), (l - m) as i64, true);
        f
    }

    // ------------------------------------------------------------------
    // Pair Wronskians
    // ------------------------------------------------------------------

    /// W_{p,q,r}(k,l,m) straight from its definition.
    pub fn w_symbol(&self, pqr: ShiftVector, klm: ShiftVector) -> RatFunc {
        self.w_symbol_frac(pqr, klm).to_ratfunc()
    }

    pub(crate) fn w_symbol_frac(&self, pqr: ShiftVector, klm: ShiftVector) -> Frac {
        let (p1, q1) = self.pq_frac(klm, Method::Auto);
        let (p2, q2) = self.pq_frac(klm + pqr, Method::Auto);
        p1.mul(&q2).sub(&q1.mul(&p2))
    }

    /// W_{p,q,r}(k,l,m) via the closed form for W_{1,0,0} and one
    /// coefficient lookup.
    pub fn w_symbol_closed(&self, pqr: ShiftVector, klm: ShiftVector) -> RatFunc {
        self.w_symbol_closed_frac(pqr, klm).to_ratfunc()
    }

    pub(crate) fn w_symbol_closed_frac(&self, pqr: ShiftVector, klm: ShiftVector) -> Frac {
        let q = self
            .q_frac(pqr)
            .shift_abc(klm.da as i64, klm.db as i64, klm.dc as i64);
        w_one_closed_frac(klm).mul(&q)
    }
}

/// The closed form of W_{1,0,0}(k,l,m).
pub fn w_one_closed(klm: ShiftVector) -> RatFunc {
    w_one_closed_frac(klm).to_ratfunc()
}

pub(crate) fn w_one_closed_frac(klm: ShiftVector) -> Frac {
    let (k, l, m) = (klm.da as i64, klm.db as i64, klm.dc as i64);
    let mut f = Frac::one();
    f = times_poch(&f, &poly("c"), m, false);
    f = times_poch(&f, &poly("c"), m, false);
    f = f.mul(&power(&poly("z"), -m));
    f = f.mul(&power(&poly("z - 1"), m - k - l));
    f = times_poch(&f, &poly("a + 1"), k, true);
    f = times_poch(&f, &poly("b"), l, true);
    f = times_poch(&f, &poly("c - a"), m - k, true);
    f = times_poch(&f, &poly("c - b"), m - l, true);
    f
}

/// (c−a−1)/((a+1)(1−z)): turns Sₐ(Q(t−e_a)) into P(t).
pub(crate) fn lowering_factor() -> Frac {
    Frac::new(poly("c - a - 1"), &[(poly("a + 1"), 1), (poly("1 - z"), 1)])
}

/// (c−a)/(a(1−z)): the same factor one a-step lower.
pub(crate) fn raising_factor() -> Frac {
    Frac::new(poly("c - a"), &[(poly("a"), 1), (poly("1 - z"), 1)])
}

/// Multiply `f` by the Pochhammer symbol (base)_n (or divide by it when
/// `invert`); n may be negative, with (base)_{−n} = 1/((base−1)⋯(base−n)).
fn times_poch(f: &Frac, base: &MPoly, n: i64, invert: bool) -> Frac {
    let mut out = f.clone();
    if n >= 0 {
        for j in 0..n {
            let factor = base.add(&MPoly::from_int(j));
            if invert {
                out = out.div_factor_pow(&factor, 1);
            } else {
                out = out.mul_poly(&factor);
            }
        }
    } else {
        for j in 1..=(-n) {
            let factor = base.sub(&MPoly::from_int(j));
            if invert {
                out = out.mul_poly(&factor);
            } else {
                out = out.div_factor_pow(&factor, 1);
            }
        }
    }
    out
}

/// base^e as a factored fraction, e of either sign.
fn power(base: &MPoly, e: i64) -> Frac {
    if e >= 0 {
        let mut p = MPoly::one();
        for _ in 0..e {
            p = p.mul(base);
        }
        Frac::from_poly(p)
    } else {
        Frac::one().div_factor_pow(base, (-e) as u32)
    }
}

/// Cut a shift into two halves t + s = v for the halving recursion.
///
/// The largest component (preferring a, then b, then c on ties) splits
/// into its two integer halves; the a-component, when it is not the split
/// axis, goes to the t side if non-positive and the s side otherwise, and
/// remaining components go to the s side. This keeps all four recursion
/// arguments t, t+e_a, s, s−e_a strictly below v in the well-founded
/// order (max component magnitude, number of components attaining it),
/// so the recursion always reaches short shifts.
fn split(v: ShiftVector) -> (ShiftVector, ShiftVector) {
    let m = v.max_abs();
    debug_assert!(m >= 3);
    // (to_t, to_s): t takes the half that keeps t+e_a short
    let halves = |val: i32| {
        let small = val / 2;
        let big = val - small;
        if val > 0 {
            (small, big)
        } else {
            (big, small)
        }
    };
    if v.da.abs() == m {
        let (ta, sa) = halves(v.da);
        (ShiftVector::new(ta, 0, 0), ShiftVector::new(sa, v.db, v.dc))
    } else if v.db.abs() == m {
        let (tb, sb) = halves(v.db);
        if v.da <= 0 {
            (ShiftVector::new(v.da, tb, 0), ShiftVector::new(0, sb, v.dc))
        } else {
            (ShiftVector::new(0, tb, 0), ShiftVector::new(v.da, sb, v.dc))
        }
    } else {
        let (tc, sc) = halves(v.dc);
        if v.da <= 0 {
            (ShiftVector::new(v.da, 0, tc), ShiftVector::new(0, v.db, sc))
        } else {
            (ShiftVector::new(0, 0, tc), ShiftVector::new(v.da, v.db, sc))
        }
    }
}
