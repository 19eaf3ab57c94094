//! Exact rational arithmetic primitives shared by every other module.
//!
//! All geometric quantities in this crate (Dedekind sums, discrepancies,
//! self-intersections, ...) are rational numbers that must be compared
//! exactly, so everything is built on arbitrary-precision rationals; floating
//! point appears only in statistical summaries that are explicitly labelled
//! as such.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational number, always stored in lowest terms with a
/// positive denominator (the `num-rational` constructor enforces both).
pub type Rational = BigRational;

/// Build a rational from machine integers. Panics on a zero denominator;
/// use [`rat_normalize`] for untrusted input.
pub fn rat(num: i64, den: i64) -> Rational {
    assert!(den != 0, "rat: zero denominator");
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Rational with denominator 1.
pub fn rat_int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Reduce `num/den` to lowest terms with positive denominator, rejecting a
/// zero denominator.
pub fn rat_normalize(num: i64, den: i64) -> Result<Rational> {
    if den == 0 {
        return Err(Error::ZeroDenominator);
    }
    Ok(rat(num, den))
}

/// Least nonnegative residue of `a` modulo `n` (`n > 0`).
pub fn mod_reduce(a: i64, n: i64) -> i64 {
    debug_assert!(n > 0);
    a.rem_euclid(n)
}

/// Multiplicative inverse of `a` modulo `n > 0`, as the least positive
/// residue. Errors when `gcd(a, n) != 1`.
pub fn mod_inverse(a: i64, n: i64) -> Result<i64> {
    if n <= 0 {
        return Err(Error::OutOfRange(format!("modulus {n} must be positive")));
    }
    if n == 1 {
        // Degenerate but convenient: everything is 0 modulo 1.
        return Ok(0);
    }
    let a = mod_reduce(a, n);
    // Extended Euclid on (a, n) tracking only the coefficient of a.
    let (mut r0, mut r1) = (a, n);
    let (mut s0, mut s1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
    }
    if r0 != 1 {
        return Err(Error::NotInvertible { a, n });
    }
    Ok(mod_reduce(s0, n))
}

/// Sawtooth function `((x)) = x - floor(x) - 1/2` for non-integral `x`.
///
/// At integers the literal formula would give `-1/2`, but every use in this
/// crate expects the symmetrized value `0` there and reaching an integer
/// argument means an upstream coprimality hypothesis was violated, so integer
/// input is an error rather than a silent wrong value.
pub fn sawtooth(x: &Rational) -> Result<Rational> {
    if x.is_integer() {
        return Err(Error::SawtoothAtInteger(x.to_string()));
    }
    Ok(x - x.floor() - rat(1, 2))
}

/// `gcd` on machine integers (nonnegative result).
pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

/// Sum of a slice of rationals.
pub fn rat_sum<'a, I: IntoIterator<Item = &'a Rational>>(xs: I) -> Rational {
    let mut acc = Rational::zero();
    for x in xs {
        acc += x;
    }
    acc
}

/// True when `x` is an integer.
pub fn is_integer(x: &Rational) -> bool {
    x.is_integer()
}

/// Extract an `i64` from an integral rational; errors otherwise.
pub fn to_i64(x: &Rational) -> Result<i64> {
    if !x.is_integer() {
        return Err(Error::ConsistencyFailure(format!(
            "{x} expected to be an integer"
        )));
    }
    let n = x.to_integer();
    i64::try_from(&n).map_err(|_| Error::OutOfRange(format!("{n} does not fit in i64")))
}

/// Positive fractional part as a rational: `x - floor(x)`.
pub fn frac(x: &Rational) -> Rational {
    x - x.floor()
}

/// `|x|`.
pub fn rat_abs(x: &Rational) -> Rational {
    x.abs()
}

/// One as a rational.
pub fn rat_one() -> Rational {
    Rational::one()
}
