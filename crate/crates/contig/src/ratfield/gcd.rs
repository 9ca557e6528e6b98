//! Multivariate polynomial GCD.
//!
//! Strategy: strip monomial and scalar content, recurse on the content /
//! primitive-part split with respect to a chosen main variable, and run a
//! subresultant pseudo-remainder sequence on the primitive parts.  Before
//! committing to a PRS, a cheap modular evaluation maps both inputs to
//! univariate images over 𝔽_p; when the image gcd is constant the true gcd
//! carries no main-variable part, which settles the common coprime case
//! almost for free.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::{MPoly, Rational, Var, NVARS};

/// Canonical polynomial GCD: integer coefficients of content 1, positive
/// leading coefficient.  `gcd(f, 0)` is the canonical form of `f`; the gcd
/// of two nonzero constants is 1 (scalar content is the caller's business).
pub(crate) fn mpoly_gcd(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() {
        return g.primitive().1;
    }
    if g.is_zero() {
        return f.primitive().1;
    }
    if f.is_constant() || g.is_constant() {
        return MPoly::one();
    }

    let (mf, f1) = f.monomial_content();
    let (mg, g1) = g.monomial_content();
    let mut common = [0u16; NVARS];
    for i in 0..NVARS {
        common[i] = mf.0[i].min(mg.0[i]);
    }
    let mono = MPoly::from_term(super::mpoly::Monomial(common), Rational::one());

    let f1 = f1.primitive().1;
    let g1 = g1.primitive().1;
    if f1 == g1 {
        return mono.mul(&f1);
    }

    let vars: Vec<Var> = f1.vars().into_iter().filter(|&v| g1.contains_var(v)).collect();
    if vars.is_empty() {
        return mono;
    }
    // Main variable: smallest min-degree keeps the PRS short.
    let x = *vars
        .iter()
        .min_by_key(|&&v| f1.degree(v).min(g1.degree(v)))
        .unwrap();

    let core = gcd_with_main_var(&f1, &g1, x);
    mono.mul(&core).primitive().1
}

/// Canonical least common multiple: `f·g / gcd(f, g)`, normalized like
/// the gcd (integer coefficients of content 1, positive leading term).
pub(crate) fn poly_lcm(f: &MPoly, g: &MPoly) -> MPoly {
    if f.is_zero() || g.is_zero() {
        return MPoly::zero();
    }
    if f.is_one() {
        return g.primitive().1;
    }
    if g.is_one() {
        return f.primitive().1;
    }
    let d = mpoly_gcd(f, g);
    f.mul(&g.exact_div(&d).expect("gcd divides")).primitive().1
}

fn gcd_with_main_var(f: &MPoly, g: &MPoly, x: Var) -> MPoly {
    let fc = f.coeffs_in(x);
    let gc = g.coeffs_in(x);

    let cont_f = coeff_gcd(&fc);
    let cont_g = coeff_gcd(&gc);
    let cont = mpoly_gcd(&cont_f, &cont_g);

    if image_gcd_is_constant(f, g, x) {
        return cont;
    }

    let ppf: Vec<MPoly> = fc.iter().map(|p| p.exact_div(&cont_f).expect("content divides")).collect();
    let ppg: Vec<MPoly> = gc.iter().map(|p| p.exact_div(&cont_g).expect("content divides")).collect();

    // Trial division: in reduction workloads one primitive part frequently
    // divides the other outright.
    let (lo, hi) = if deg(&ppf) <= deg(&ppg) { (&ppf, &ppg) } else { (&ppg, &ppf) };
    let lo_poly = MPoly::from_coeffs_in(x, lo);
    let hi_poly = MPoly::from_coeffs_in(x, hi);
    if hi_poly.divisible_by(&lo_poly) {
        return cont.mul(&lo_poly).primitive().1;
    }

    let pp_gcd = subresultant_prs(lo.clone(), hi.clone(), x);
    cont.mul(&pp_gcd)
}

/// GCD of the coefficient list, with early exit once it collapses to a
/// constant.
fn coeff_gcd(coeffs: &[MPoly]) -> MPoly {
    let mut acc = MPoly::zero();
    for c in coeffs {
        if c.is_zero() {
            continue;
        }
        acc = mpoly_gcd(&acc, c);
        if acc.is_one() {
            break;
        }
    }
    acc
}

fn deg(p: &[MPoly]) -> usize {
    p.iter().rposition(|c| !c.is_zero()).unwrap_or(0)
}

fn trim(mut p: Vec<MPoly>) -> Vec<MPoly> {
    while p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Subresultant PRS on primitive inputs, viewed as univariate in `x`.
/// Returns the primitive gcd of the primitive parts.
fn subresultant_prs(u: Vec<MPoly>, v: Vec<MPoly>, x: Var) -> MPoly {
    let (mut a, mut b) = if deg(&u) >= deg(&v) { (u, v) } else { (v, u) };
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let delta = deg(&a) - deg(&b);
        let r = pseudo_rem(&a, &b, delta);
        if r.is_empty() {
            let b_poly = MPoly::from_coeffs_in(x, &b);
            let cont = coeff_gcd(&b);
            return b_poly.exact_div(&cont).expect("content divides").primitive().1;
        }
        if deg(&r) == 0 {
            // Nonzero constant (in x) remainder: primitive parts coprime.
            return MPoly::one();
        }
        a = b;
        let divisor = g.mul(&h.pow(delta as u32));
        b = trim(
            r.into_iter()
                .map(|c| c.exact_div(&divisor).expect("subresultant divisor divides"))
                .collect(),
        );
        g = a[deg(&a)].clone();
        h = if delta == 0 {
            h
        } else {
            g.pow(delta as u32)
                .exact_div(&h.pow(delta as u32 - 1))
                .expect("subresultant h-update divides")
        };
    }
}

/// Pseudo-remainder of `a` by `b`: `lc(b)^(δ+1)·a mod b`, as coefficient
/// vectors in the main variable.
fn pseudo_rem(a: &[MPoly], b: &[MPoly], delta: usize) -> Vec<MPoly> {
    let db = deg(b);
    let lcb = &b[db];
    let mut r: Vec<MPoly> = trim(a.to_vec());
    let mut steps = 0usize;
    while !r.is_empty() && deg(&r) >= db {
        let dr = deg(&r);
        let lead = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
        for i in 0..=db {
            r[shift + i] = r[shift + i].sub(&lead.mul(&b[i]));
        }
        r = trim(r);
        steps += 1;
    }
    // Top up to the exact lc(b)^(δ+1) normalisation the subresultant
    // divisors assume (division steps may have ended early).
    while steps <= delta {
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
        steps += 1;
    }
    r
}

// --- modular univariate screening ---------------------------------------

const P: u64 = (1 << 61) - 1;

fn mul_mod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn pow_mod(mut base: u64, mut e: u32) -> u64 {
    let mut acc = 1u64;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

fn bigint_mod_p(v: &BigInt) -> u64 {
    let m = v.mod_floor(&BigInt::from(P));
    m.to_u64().expect("reduced mod p fits in u64")
}

fn rational_mod_p(r: &Rational) -> Option<u64> {
    let den = bigint_mod_p(r.denom());
    if den == 0 {
        return None;
    }
    let num = bigint_mod_p(r.numer());
    Some(mul_mod(num, inv_mod_p(den)))
}

fn inv_mod_p(a: u64) -> u64 {
    // Fermat: a^(P−2) mod P, with a 61-bit exponent.
    let mut acc = 1u64;
    let mut base = a;
    let mut e = P - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, base);
        }
        base = mul_mod(base, base);
        e >>= 1;
    }
    acc
}

/// Map to a univariate image over 𝔽_p by assigning random values to every
/// variable except `x`.  `None` when a coefficient denominator vanishes.
fn univariate_image(p: &MPoly, x: Var, assign: &[u64; NVARS]) -> Option<Vec<u64>> {
    let dx = p.degree(x) as usize;
    let xi = x.index();
    let mut out = vec![0u64; dx + 1];
    for (m, c) in p.terms() {
        let mut val = rational_mod_p(c)?;
        for i in 0..NVARS {
            if i == xi {
                continue;
            }
            let e = m.0[i];
            if e > 0 {
                val = mul_mod(val, pow_mod(assign[i], e as u32));
            }
        }
        let e = m.0[xi] as usize;
        out[e] = (out[e] + val) % P;
    }
    Some(out)
}

fn uni_deg(p: &[u64]) -> Option<usize> {
    p.iter().rposition(|&c| c != 0)
}

fn uni_gcd_mod_p(mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    loop {
        let db = match uni_deg(&b) {
            None => return a,
            Some(d) => d,
        };
        let da = match uni_deg(&a) {
            None => return b,
            Some(d) => d,
        };
        if da < db {
            std::mem::swap(&mut a, &mut b);
            continue;
        }
        let inv = inv_mod_p(b[db]);
        // a mod b
        for top in (db..=da).rev() {
            let lead = a[top];
            if lead == 0 {
                continue;
            }
            let q = mul_mod(lead, inv);
            let shift = top - db;
            for i in 0..=db {
                let sub = mul_mod(q, b[i]);
                a[shift + i] = (a[shift + i] + P - sub) % P;
            }
        }
        a.truncate(db);
        std::mem::swap(&mut a, &mut b);
    }
}

/// Certified test that gcd(f, g) has degree 0 in `x`.  A `true` answer is a
/// proof (given nonvanishing leading-coefficient images); `false` merely
/// means the screening was inconclusive.
fn image_gcd_is_constant(f: &MPoly, g: &MPoly, x: Var) -> bool {
    let mut state: u64 = 0x9e3779b97f4a7c15;
    for _attempt in 0..4 {
        let mut assign = [0u64; NVARS];
        for slot in assign.iter_mut() {
            // xorshift64*
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            *slot = 2 + (state % 9973);
        }
        let fi = match univariate_image(f, x, &assign) {
            Some(v) => v,
            None => continue,
        };
        let gi = match univariate_image(g, x, &assign) {
            Some(v) => v,
            None => continue,
        };
        let (df, dg) = (f.degree(x) as usize, g.degree(x) as usize);
        if uni_deg(&fi) != Some(df) || uni_deg(&gi) != Some(dg) {
            continue; // leading coefficient vanished; resample
        }
        let h = uni_gcd_mod_p(fi, gi);
        return uni_deg(&h) == Some(0);
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(x: Var) -> MPoly {
        MPoly::var(x)
    }

    #[test]
    fn gcd_of_coprime_is_one() {
        let f = MPoly::var_plus(Var::A, 1);
        let g = MPoly::var_plus(Var::B, -2);
        assert!(mpoly_gcd(&f, &g).is_one());
    }

    #[test]
    fn gcd_recovers_common_factor() {
        let g = MPoly::var_plus(Var::A, 1).mul(&MPoly::var_plus(Var::Z, -1));
        let f1 = g.mul(&MPoly::var_plus(Var::B, 3));
        let f2 = g.mul(&v(Var::C).pow(2).sub(&MPoly::from_int(2)));
        assert_eq!(mpoly_gcd(&f1, &f2), g);
    }

    #[test]
    fn gcd_handles_monomial_content() {
        // gcd(a²z·(b+1), a·z²·(b+1)) = a·z·(b+1)
        let common = v(Var::A).mul(&v(Var::Z)).mul(&MPoly::var_plus(Var::B, 1));
        let f = common.mul(&v(Var::A));
        let g = common.mul(&v(Var::Z));
        assert_eq!(mpoly_gcd(&f, &g), common);
    }

    #[test]
    fn gcd_sign_and_content_are_canonical() {
        let g = MPoly::var_plus(Var::C, -4);
        let f1 = g.mul_scalar(&Rational::from_integer((-6).into())).mul(&v(Var::A));
        let f2 = g.mul_scalar(&Rational::from_integer(4.into())).mul(&v(Var::B));
        // canonical gcd is primitive with positive leading coefficient
        assert_eq!(mpoly_gcd(&f1, &f2), g);
    }

    #[test]
    fn gcd_multivariate_nontrivial() {
        // g = (a + b − c)² shared between two dissimilar cofactors
        let core = v(Var::A).add(&v(Var::B)).sub(&v(Var::C));
        let g = core.pow(2);
        let f1 = g.mul(&MPoly::var_plus(Var::Z, 5));
        let f2 = g.mul(&v(Var::A).pow(2).add(&MPoly::one()));
        assert_eq!(mpoly_gcd(&f1, &f2), g);
    }
}
