//! Dedekind sums, reciprocity, and the inequalities used by the
//! classification sweeps.
//!
//! The sum used throughout is
//!
//! ```text
//! s(a, b; n) = sum_{i=1}^{n-1} ((i a / n)) ((i b / n))
//! ```
//!
//! with the sawtooth `((x)) = x - floor(x) - 1/2`, defined for `a`, `b`
//! coprime to `n`. Two independent evaluators are provided: a literal
//! summation ([`dedekind_direct`]) and a reciprocity-based recursion
//! ([`dedekind_fast`]); the test suite pins them against each other.

use crate::error::{Error, Result};
use crate::hj::hj_expand;
use crate::numeric::{gcd, mod_inverse, mod_reduce, rat, rat_int, Rational};
use num_integer::Integer;

fn check_args(a: i64, b: i64, n: i64) -> Result<()> {
    if n < 1 {
        return Err(Error::OutOfRange(format!("modulus n = {n} must be >= 1")));
    }
    for x in [a, b] {
        let g = gcd(x, n);
        if g != 1 && n > 1 {
            return Err(Error::NotCoprime { a: x, b: n, g });
        }
    }
    Ok(())
}

/// Literal term-by-term evaluation of `s(a, b; n)`, exact.
///
/// Each sawtooth value is `(2r - n) / 2n` for a residue `r` in `1..n`, so the
/// whole sum is an integer divided by `4 n^2`; the summation is carried out
/// on that integer. Coprimality guarantees no term hits the sawtooth's
/// integer-argument singularity.
pub fn dedekind_direct(a: i64, b: i64, n: i64) -> Result<Rational> {
    check_args(a, b, n)?;
    if n == 1 {
        return Ok(rat_int(0));
    }
    let (ar, br) = (mod_reduce(a, n), mod_reduce(b, n));
    let mut acc: i128 = 0;
    let (mut ra, mut rb) = (0i64, 0i64);
    for _ in 1..n {
        ra += ar;
        if ra >= n {
            ra -= n;
        }
        rb += br;
        if rb >= n {
            rb -= n;
        }
        debug_assert!(ra != 0 && rb != 0);
        acc += i128::from(2 * ra - n) * i128::from(2 * rb - n);
    }
    Ok(Rational::new(acc.into(), (4 * i128::from(n) * i128::from(n)).into()))
}

/// `s(1, q; n)` for `1 <= q < n`, `gcd(q, n) = 1`, by Dedekind reciprocity:
///
/// ```text
/// s(1, q; n) + s(1, n mod q; q) = (n/q + 1/(n q) + q/n)/12 - 1/4
/// ```
///
/// with the closed form `s(1, 1; n) = (n - 1)(n - 2) / 12n` as base case.
fn s_one(q: i64, n: i64) -> Rational {
    debug_assert!(n >= 1 && (n == 1 || (1..n).contains(&q)) && gcd(q, n) == 1);
    if n == 1 {
        return rat_int(0);
    }
    if let Some((num, den)) = s_one_i128(q, n) {
        return Rational::new(num.into(), den.into());
    }
    s_one_big(q, n)
}

/// The same recursion over machine integers, unrolled to a loop. `6n s(1,q;n)`
/// is an integer, so all reduced intermediates stay tiny compared to i128;
/// `None` on (checked) overflow falls back to the arbitrary-precision path.
fn s_one_i128(q: i64, n: i64) -> Option<(i128, i128)> {
    fn add(acc: (i128, i128), num: i128, den: i128) -> Option<(i128, i128)> {
        let g = den.gcd(&acc.1);
        let num = acc.0.checked_mul(den / g)?.checked_add(num.checked_mul(acc.1 / g)?)?;
        let den = acc.1.checked_mul(den / g)?;
        let g = num.gcd(&den);
        if g == 0 {
            return Some((0, 1));
        }
        Some((num / g, den / g))
    }
    let (mut n, mut q) = (i128::from(n), i128::from(q));
    let mut acc = (0i128, 1i128);
    let mut sign = 1i128;
    loop {
        if q == 1 {
            // s(1, 1; n) = (n - 1)(n - 2) / 12n.
            let num = (n - 1).checked_mul(n - 2)?;
            return add(acc, sign * num, 12 * n);
        }
        // (n/q + 1/nq + q/n)/12 - 1/4 = (n^2 + q^2 + 1 - 3nq) / 12nq.
        let num = n.checked_mul(n)?.checked_add(q.checked_mul(q)?)? + 1
            - 3i128.checked_mul(n.checked_mul(q)?)?;
        acc = add(acc, sign.checked_mul(num)?, 12i128.checked_mul(n.checked_mul(q)?)?)?;
        let r = n % q;
        n = q;
        q = r;
        sign = -sign;
    }
}

fn s_one_big(q: i64, n: i64) -> Rational {
    if q == 1 {
        return rat((n - 1) * (n - 2), 12 * n);
    }
    let recip = (rat(n, q) + rat(1, n * q) + rat(q, n)) / rat_int(12) - rat(1, 4);
    recip - s_one_big(n % q, q)
}

/// Fast exact evaluation of `s(a, b; n)` via `s(a, b; n) = s(1, a b^{-1}; n)`
/// and reciprocity. Agrees with [`dedekind_direct`] everywhere.
pub fn dedekind_fast(a: i64, b: i64, n: i64) -> Result<Rational> {
    check_args(a, b, n)?;
    if n == 1 {
        return Ok(rat_int(0));
    }
    let q = mod_reduce(a * mod_inverse(b, n)?, n);
    Ok(s_one(q, n))
}

/// Closed form `2 s(1, 2; n) = (n^2 - 6n + 5) / 12n` for odd `n` (reciprocity
/// applied once to `s(1, 2; n)`).
pub fn closed_form_two(n: i64) -> Result<Rational> {
    if n < 1 || n % 2 == 0 {
        return Err(Error::OutOfRange(format!(
            "closed_form_two needs odd n >= 1, got {n}"
        )));
    }
    Ok(rat(n * n - 6 * n + 5, 12 * n))
}

/// Residual of the chain identity
///
/// ```text
/// 12 s(a, b; n) = (q + q^{-1})/n + sum_k (b_k - 3)
/// ```
///
/// where `q = a b^{-1} (mod n)` and the `b_k` expand `n/q`. Always zero; the
/// sweeps assert that and any nonzero value is a bug.
pub fn hj_relation_residual(a: i64, b: i64, n: i64) -> Result<Rational> {
    check_args(a, b, n)?;
    if n == 1 {
        return Ok(rat_int(0));
    }
    let q = mod_reduce(a * mod_inverse(b, n)?, n);
    let e = hj_expand(n, q)?;
    let sum_b: i64 = e.terms.iter().map(|&b| b - 3).sum();
    let rhs = rat(q + e.q_inverse, n) + rat_int(sum_b);
    Ok(rat_int(12) * dedekind_fast(a, b, n)? - rhs)
}

/// Outcome of testing one part of the maximality inequalities at one modulus.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub part: u8,
    pub n: i64,
    /// Units excluded from the sweep (the residues where equality or the
    /// next-largest value is attained).
    pub excluded: Vec<i64>,
    /// `(a, lhs, rhs)` for every unit where the strict inequality fails.
    pub counterexamples: Vec<(i64, Rational, Rational)>,
}

impl BoundReport {
    pub fn holds(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Check one part of the maximality lemma `s(1, 1; n) > k * s(1, a; n)` at
/// modulus `n`:
///
/// * part 1 (`k = 2`): for every unit `a != 1`,
/// * part 2 (`k = 3`): for units `a` not congruent to `1, 2, 2^{-1}`,
/// * part 3 (`k = 4`): for units `a` not congruent to
///   `1, 2, 2^{-1}, 3, 3^{-1}`.
///
/// Excluded residues that are not units at a given `n` are simply absent
/// from the sweep.
pub fn bound_lemma_check(part: u8, n: i64) -> Result<BoundReport> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n} must be >= 2")));
    }
    let (k, protected): (i64, &[i64]) = match part {
        1 => (2, &[1]),
        2 => (3, &[1, 2]),
        3 => (4, &[1, 2, 3]),
        _ => return Err(Error::OutOfRange(format!("part {part} not in 1..=3"))),
    };
    let mut excluded = Vec::new();
    for &r in protected {
        if gcd(r, n) == 1 {
            excluded.push(mod_reduce(r, n));
            excluded.push(mod_inverse(r, n)?);
        }
    }
    excluded.sort_unstable();
    excluded.dedup();
    let table = DedekindTable::new(n)?;
    let lhs4 = table.s4(1)?;
    let denom = rat_int(4 * n * n);
    let mut counterexamples = Vec::new();
    for a in 1..n {
        if gcd(a, n) != 1 || excluded.contains(&a) {
            continue;
        }
        let rhs4 = k * table.s4(a)?;
        if lhs4 <= rhs4 {
            counterexamples.push((
                a,
                rat_int(lhs4) / denom.clone(),
                rat_int(rhs4) / denom.clone(),
            ));
        }
    }
    Ok(BoundReport {
        part,
        n,
        excluded,
        counterexamples,
    })
}

/// Evaluate one of the three derived positivity corollaries at modulus `n`,
/// returning `true` when the strict inequality holds. Errors when a required
/// inverse does not exist at that modulus.
///
/// * id 1: `2s(1,1) - 2s(1,2) + s(1,4) - s(1,3) + s(1,2*3^{-1}) - s(1,4*3^{-1}) > 0`
/// * id 2: `2s(1,1) - s(1,2) - s(1,3) - s(1,4) + s(1,6) - s(1,2*3^{-1}) + s(1,4*3^{-1}) > 0`
/// * id 3: `2s(1,1) - s(1,2) - s(1,3) - s(1,5) + s(1,6) + s(1,2*5^{-1}) - s(1,6*5^{-1}) > 0`
pub fn corollary_check(id: u8, n: i64) -> Result<bool> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n} must be >= 2")));
    }
    // Each corollary is a signed combination sum c_r * s(1, r; n) > 0, where
    // the residues r are built from small integers and their inverses.
    let terms: Vec<(i64, i64)> = match id {
        1 => {
            let i3 = mod_inverse(3, n)?;
            vec![
                (2, 1),
                (-2, 2),
                (1, 4),
                (-1, 3),
                (1, 2 * i3),
                (-1, 4 * i3),
            ]
        }
        2 => {
            let i3 = mod_inverse(3, n)?;
            vec![
                (2, 1),
                (-1, 2),
                (-1, 3),
                (-1, 4),
                (1, 6),
                (-1, 2 * i3),
                (1, 4 * i3),
            ]
        }
        3 => {
            let i5 = mod_inverse(5, n)?;
            vec![
                (2, 1),
                (-1, 2),
                (-1, 3),
                (-1, 5),
                (1, 6),
                (1, 2 * i5),
                (-1, 6 * i5),
            ]
        }
        _ => return Err(Error::OutOfRange(format!("corollary id {id} not in 1..=3"))),
    };
    let mut total = rat_int(0);
    for (c, r) in terms {
        let r = mod_reduce(r, n);
        let g = gcd(r, n);
        if r == 0 || g != 1 {
            return Err(Error::NotInvertible { a: r, n });
        }
        total += rat_int(c) * s_one(r, n);
    }
    Ok(total > rat_int(0))
}

/// Integer-scaled table of `s(1, q; n)` for a fixed modulus: `s4(q)` returns
/// `4 n^2 s(1, q; n)` as an `i64` (bounded by `n^3`), built by direct
/// summation in `O(n)` per unit. Used by the exhaustive sweeps where millions
/// of Dedekind sums per modulus are needed.
pub struct DedekindTable {
    pub n: i64,
    s4: Vec<i64>,
    inv: Vec<i64>,
    unit: Vec<bool>,
}

impl DedekindTable {
    pub fn new(n: i64) -> Result<Self> {
        if !(2..=100_000).contains(&n) {
            return Err(Error::OutOfRange(format!(
                "table modulus n = {n} out of supported range"
            )));
        }
        let nu = n as usize;
        let mut s4 = vec![0i64; nu];
        let mut inv = vec![0i64; nu];
        let mut unit = vec![false; nu];
        for q in 1..n {
            if gcd(q, n) != 1 {
                continue;
            }
            unit[q as usize] = true;
            inv[q as usize] = mod_inverse(q, n)?;
            let mut acc = 0i64;
            let mut rq = 0i64;
            for i in 1..n {
                rq += q;
                if rq >= n {
                    rq -= n;
                }
                acc += (2 * i - n) * (2 * rq - n);
            }
            s4[q as usize] = acc;
        }
        Ok(DedekindTable { n, s4, inv, unit })
    }

    /// `4 n^2 s(1, q; n)`.
    pub fn s4(&self, q: i64) -> Result<i64> {
        let q = mod_reduce(q, self.n) as usize;
        if !self.unit[q] {
            return Err(Error::NotInvertible { a: q as i64, n: self.n });
        }
        Ok(self.s4[q])
    }

    /// `4 n^2 s(a, b; n)` via the reduction `s(a, b; n) = s(1, a b^{-1}; n)`.
    pub fn pair_s4(&self, a: i64, b: i64) -> Result<i64> {
        let b = mod_reduce(b, self.n) as usize;
        if !self.unit[b] {
            return Err(Error::NotInvertible { a: b as i64, n: self.n });
        }
        self.s4(mod_reduce(a, self.n) * self.inv[b])
    }

    /// Least positive inverse of a unit.
    pub fn inverse(&self, a: i64) -> Result<i64> {
        let a = mod_reduce(a, self.n) as usize;
        if !self.unit[a] {
            return Err(Error::NotInvertible { a: a as i64, n: self.n });
        }
        Ok(self.inv[a])
    }

    pub fn is_unit(&self, a: i64) -> bool {
        self.unit[mod_reduce(a, self.n) as usize]
    }
}
