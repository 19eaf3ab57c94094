//! Hirzebruch-Jung continued fractions and cyclic quotient singularities.
//!
//! A cyclic quotient singularity `1/m(1, q)` (with `0 < q < m`, `gcd(q, m) =
//! 1`) is resolved by a chain of rational curves whose self-intersections
//! `-b_1, ..., -b_s` are read off the negative-regular continued fraction
//!
//! ```text
//! m/q = b_1 - 1/(b_2 - 1/(... - 1/b_s)),   all b_k >= 2.
//! ```
//!
//! Alongside the expansion we carry the three companion sequences `alpha`,
//! `beta`, `gamma` (each of length `s + 2`) that drive every pull-back and
//! discrepancy computation:
//!
//! * `beta_0 = m`, `beta_1 = q`, `beta_{k+1} = b_k beta_k - beta_{k-1}`
//!   (strictly decreasing to `beta_s = 1`, `beta_{s+1} = 0`),
//! * `alpha_0 = 0`, `alpha_1 = 1`, same recurrence, increasing to
//!   `alpha_s = q^{-1} (mod m)`, `alpha_{s+1} = m`,
//! * `gamma_0 = -1`, `gamma_1 = 0`, same recurrence.

use crate::error::{Error, Result};
use crate::numeric::{gcd, mod_inverse, mod_reduce, rat, rat_int, Rational};

/// The expansion `m/q = [b_1, ..., b_s]` together with its companion
/// sequences. For the smooth case `m = 1` the term list is empty and the
/// sequences collapse to their two boundary entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HjExpansion {
    pub m: i64,
    pub q: i64,
    /// `q^{-1} (mod m)`; equals `alpha[s]`. Zero when `m = 1`.
    pub q_inverse: i64,
    pub terms: Vec<i64>,
    pub alpha: Vec<i64>,
    pub beta: Vec<i64>,
    pub gamma: Vec<i64>,
}

impl HjExpansion {
    /// Number of exceptional curves in the chain.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }
}

fn companion(m: i64, q: i64, terms: &[i64], a0: i64, a1: i64) -> Vec<i64> {
    let _ = (m, q);
    let mut v = Vec::with_capacity(terms.len() + 2);
    v.push(a0);
    v.push(a1);
    for (k, &b) in terms.iter().enumerate() {
        let next = b * v[k + 1] - v[k];
        v.push(next);
    }
    v
}

/// Expand `m/q` as a Hirzebruch-Jung continued fraction.
///
/// Requires `m >= 1`, `0 <= q < m` with `gcd(q, m) = 1`; `q = 0` is accepted
/// only for `m = 1` (the smooth point, empty chain).
pub fn hj_expand(m: i64, q: i64) -> Result<HjExpansion> {
    if m < 1 {
        return Err(Error::OutOfRange(format!("order m = {m} must be >= 1")));
    }
    if m == 1 {
        if q != 0 {
            return Err(Error::OutOfRange(format!(
                "q = {q} out of range for m = 1 (expected 0)"
            )));
        }
        return Ok(HjExpansion {
            m: 1,
            q: 0,
            q_inverse: 0,
            terms: vec![],
            alpha: vec![0, 1],
            beta: vec![1, 0],
            gamma: vec![-1, 0],
        });
    }
    if !(1..m).contains(&q) {
        return Err(Error::OutOfRange(format!("q = {q} not in 1..{m}")));
    }
    let g = gcd(m, q);
    if g != 1 {
        return Err(Error::NotCoprime { a: m, b: q, g });
    }
    let mut terms = Vec::new();
    let (mut num, mut den) = (m, q);
    while den > 0 {
        // b = ceil(num/den); then m/q = b - 1/(den/(b*den - num)).
        let b = (num + den - 1) / den;
        terms.push(b);
        (num, den) = (den, b * den - num);
    }
    let alpha = companion(m, q, &terms, 0, 1);
    let beta = companion(m, q, &terms, m, q);
    let gamma = companion(m, q, &terms, -1, 0);
    let s = terms.len();
    debug_assert_eq!(beta[s], 1);
    debug_assert_eq!(beta[s + 1], 0);
    debug_assert_eq!(alpha[s + 1], m);
    let q_inverse = alpha[s];
    debug_assert_eq!(mod_reduce(q_inverse * q, m), 1);
    Ok(HjExpansion {
        m,
        q,
        q_inverse,
        terms,
        alpha,
        beta,
        gamma,
    })
}

/// Evaluate `[b_1, ..., b_s]` as an exact rational. Every entry must be
/// `>= 2`; the empty word evaluates to 1 (the `m = 1` convention).
pub fn hj_value(terms: &[i64]) -> Result<Rational> {
    for &b in terms {
        if b < 2 {
            return Err(Error::HjEntryTooSmall(b));
        }
    }
    let Some((&last, rest)) = terms.split_last() else {
        return Ok(rat_int(1));
    };
    let mut val = rat_int(last);
    for &b in rest.iter().rev() {
        // val is the value of the tail, always > 1, so the division is safe.
        val = rat_int(b) - val.recip();
    }
    Ok(val)
}

/// A normalized cyclic quotient singularity `1/m(1, q)`.
///
/// [`normalize_singularity`] brings a raw type `1/m(a, b)` to this form by
/// eliminating quasi-reflections; both `q` and `q_inverse` describe the same
/// singularity (the chain read from the other end).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicQuotientSingularity {
    /// Order after normalization (1 means a smooth point).
    pub order: i64,
    /// The raw `(m, a, b)` this was derived from.
    pub raw: (i64, i64, i64),
    /// `q` with `a' q = b' (mod order)` in the reduced weights.
    pub q: i64,
    pub q_inverse: i64,
    /// Expansion of `order/q` (empty for a smooth point).
    pub expansion: HjExpansion,
}

impl CyclicQuotientSingularity {
    pub fn is_smooth(&self) -> bool {
        self.order == 1
    }

    /// `min(q, q^{-1})`: the representative used when displaying the type,
    /// so that `1/m(1, q)` and `1/m(1, q^{-1})` print identically.
    pub fn canonical_q(&self) -> i64 {
        self.q.min(self.q_inverse)
    }
}

/// Normalize the data `1/m(a, b)` (order `m`, weights `a`, `b`) to the form
/// `1/m'(1, q)`.
///
/// Requires `m >= 1` and `gcd(a, b, m) = 1` (the action must be faithful
/// after reduction). Quasi-reflections are eliminated by dividing `m` and
/// `a` by `gcd(a, m)`, then `m` and `b` by `gcd(b, m)`; afterwards both
/// weights are units and `q = b a^{-1} (mod m')`.
pub fn normalize_singularity(m: i64, a: i64, b: i64) -> Result<CyclicQuotientSingularity> {
    if m < 1 {
        return Err(Error::OutOfRange(format!("order m = {m} must be >= 1")));
    }
    let raw = (m, a, b);
    let g = gcd(gcd(a.rem_euclid(m.max(1)), b.rem_euclid(m.max(1))), m);
    if m > 1 && g != 1 {
        return Err(Error::NotCoprime { a: g, b: m, g });
    }
    // Quasi-reflection elimination: the subgroup acting trivially on the
    // second (resp. first) coordinate has order gcd(a, m) (resp. gcd(b, m)).
    let ha = gcd(a, m);
    let m1 = m / ha;
    let a1 = a / ha;
    let hb = gcd(b, m1);
    let m2 = m1 / hb;
    let b1 = b / hb;
    if m2 == 1 {
        return Ok(CyclicQuotientSingularity {
            order: 1,
            raw,
            q: 0,
            q_inverse: 0,
            expansion: hj_expand(1, 0)?,
        });
    }
    let a2 = mod_reduce(a1, m2);
    let b2 = mod_reduce(b1, m2);
    let q = mod_reduce(b2 * mod_inverse(a2, m2)?, m2);
    if q == 0 || gcd(q, m2) != 1 {
        return Err(Error::ConsistencyFailure(format!(
            "normalization of 1/{m}({a}, {b}) produced non-unit q = {q} mod {m2}"
        )));
    }
    let expansion = hj_expand(m2, q)?;
    let q_inverse = expansion.q_inverse;
    Ok(CyclicQuotientSingularity {
        order: m2,
        raw,
        q,
        q_inverse,
        expansion,
    })
}

/// Chain length `l(a, b; n)`: the number of exceptional curves over
/// `1/n(a, b)`, computed from `q` with `a + q b = 0 (mod n)`.
///
/// The two solutions coming from swapping `a` and `b` are inverse residues,
/// so the length is well defined. `n = 1` gives 0.
pub fn hj_length(a: i64, b: i64, n: i64) -> Result<usize> {
    if n < 1 {
        return Err(Error::OutOfRange(format!("modulus n = {n} must be >= 1")));
    }
    if n == 1 {
        return Ok(0);
    }
    let q = mod_reduce(-a * mod_inverse(b, n)?, n);
    if q == 0 {
        return Err(Error::NotInvertible { a: mod_reduce(a, n), n });
    }
    Ok(hj_expand(n, q)?.len())
}

/// Pull-back coefficients of the two branches through a singular point:
/// the coordinate axis tangent to the `beta`-branch pulls back with
/// coefficients `beta_k / m`, the other with `alpha_k / m`, for
/// `k = 0, ..., s + 1` (the ends are the strict transforms themselves).
pub fn pullback_coefficients(
    sing: &CyclicQuotientSingularity,
) -> (Vec<Rational>, Vec<Rational>) {
    let m = sing.order;
    let beta = sing
        .expansion
        .beta
        .iter()
        .map(|&x| rat(x, m))
        .collect::<Vec<_>>();
    let alpha = sing
        .expansion
        .alpha
        .iter()
        .map(|&x| rat(x, m))
        .collect::<Vec<_>>();
    (beta, alpha)
}

/// Discrepancies `k_i = -1 + (alpha_i + beta_i)/m` of the exceptional curves
/// `E_1, ..., E_s` (interior indices only).
pub fn k_coefficients(sing: &CyclicQuotientSingularity) -> Vec<Rational> {
    let m = sing.order;
    let s = sing.expansion.len();
    (1..=s)
        .map(|i| rat(sing.expansion.alpha[i] + sing.expansion.beta[i], m) - rat_int(1))
        .collect()
}
