//! Invariants attached to a Kollár surface `X(a_1, a_2, a_3, a_4)`: the
//! hypersurface `x_1^{a_1} x_2 + x_2^{a_2} x_3 + x_3^{a_3} x_4 + x_4^{a_4}
//! x_1 = 0` in the weighted projective space `P(w_1, ..., w_4)`.
//!
//! From the exponents one derives the weights
//! `W_i = a_{i+1} a_{i+2} a_{i+3} - a_{i+2} a_{i+3} + a_{i+3} - 1`
//! (indices mod 4), the degree `D = a_1 a_2 a_3 a_4 - 1`, the common divisor
//! `w* = gcd(W_1, ..., W_4)`, the reduced weights `w_i = W_i / w*`, and the
//! branch multiplicities `mu_i` of the associated `w*`-th root cover of the
//! plane. All invariants are Dedekind-sum expressions in these residues.

use crate::dedekind::dedekind_fast;
use crate::error::{Error, Result};
use crate::hj::{normalize_singularity, CyclicQuotientSingularity};
use crate::numeric::{gcd, mod_reduce, rat, rat_int, to_i64, Rational};

/// Exponents, weights, and branch data of one Kollár surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KollarData {
    /// Exponents `a_1..a_4`.
    pub a: [i64; 4],
    /// Unreduced weights `W_1..W_4`.
    pub w_big: [i64; 4],
    /// Degree `D = a_1 a_2 a_3 a_4 - 1`.
    pub d_big: i64,
    /// `w* = gcd(W_1, ..., W_4)`.
    pub wstar: i64,
    /// Reduced weights `w_i = W_i / w*`.
    pub w: [i64; 4],
    /// `d = D / w*`.
    pub d: i64,
    /// Branch multiplicities `mu_1..mu_4` of the root cover (`None` when
    /// `w* = 1`, where the cover is trivial).
    pub mu: Option<[i64; 4]>,
    /// `t` with `t w* = sum mu_i` (`None` when `w* = 1`).
    pub t: Option<i64>,
}

impl KollarData {
    /// 1-based cyclic access to exponents: `a(5) = a(1)`.
    pub fn a_at(&self, i: usize) -> i64 {
        self.a[(i - 1) % 4]
    }

    /// 1-based cyclic access to reduced weights.
    pub fn w_at(&self, i: usize) -> i64 {
        self.w[(i - 1) % 4]
    }
}

/// The standard numerical invariants of a surface with `q = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceInvariants {
    /// Geometric genus; an exact rational that is always a nonnegative
    /// integer (checked on construction).
    pub pg: Rational,
    /// Topological Euler characteristic.
    pub euler: i64,
    /// Canonical self-intersection.
    pub ksq: Rational,
    /// `chi(O) = 1 + p_g` (irregularity vanishes).
    pub chi: i64,
    /// True exactly when `p_g = 0` (rationality criterion in this family).
    pub rational_flag: bool,
}

fn checked_mul(acc: i64, x: i64) -> Result<i64> {
    acc.checked_mul(x)
        .ok_or_else(|| Error::OutOfRange("exponent product overflows i64".into()))
}

/// Build [`KollarData`] from the four exponents.
///
/// Requires every `a_i >= 1` and excludes the degenerate patterns
/// `a_1 = a_3 = 1` and `a_2 = a_4 = 1` (for which some `W_i` vanishes and
/// the hypersurface is not of the intended type). Every structural identity
/// (`a_i W_i + W_{i+1} = D`, unit residues, `sum mu_i = t w*`) is recomputed
/// as a self-check.
pub fn from_exponents(a1: i64, a2: i64, a3: i64, a4: i64) -> Result<KollarData> {
    let a = [a1, a2, a3, a4];
    if a.iter().any(|&x| x < 1) {
        return Err(Error::OutOfRange(format!("exponents {a:?} must be >= 1")));
    }
    if (a1 == 1 && a3 == 1) || (a2 == 1 && a4 == 1) {
        return Err(Error::ExcludedExponents(a1, a2, a3, a4));
    }
    let at = |i: usize| a[(i - 1) % 4];
    let mut w_big = [0i64; 4];
    for i in 1..=4 {
        // W_i = a_{i+1} a_{i+2} a_{i+3} - a_{i+2} a_{i+3} + a_{i+3} - 1
        let p3 = checked_mul(checked_mul(at(i + 1), at(i + 2))?, at(i + 3))?;
        let p2 = checked_mul(at(i + 2), at(i + 3))?;
        w_big[i - 1] = p3 - p2 + at(i + 3) - 1;
        if w_big[i - 1] < 1 {
            return Err(Error::ConsistencyFailure(format!(
                "W_{i} = {} not positive for a = {a:?}",
                w_big[i - 1]
            )));
        }
    }
    let d_big = checked_mul(checked_mul(checked_mul(a1, a2)?, a3)?, a4)? - 1;
    for i in 1..=4 {
        let lhs = checked_mul(at(i), w_big[i - 1])? + w_big[i % 4];
        if lhs != d_big {
            return Err(Error::ConsistencyFailure(format!(
                "a_{i} W_{i} + W_{} = {lhs} != D = {d_big}",
                i % 4 + 1
            )));
        }
    }
    // w* = gcd of any adjacent pair; cross-check against all four.
    let wstar = gcd(w_big[0], w_big[1]);
    let wstar_all = w_big.iter().fold(0, |g, &x| gcd(g, x));
    if wstar != wstar_all {
        return Err(Error::ConsistencyFailure(format!(
            "gcd(W_1, W_2) = {wstar} != gcd of all four = {wstar_all}"
        )));
    }
    let w = [
        w_big[0] / wstar,
        w_big[1] / wstar,
        w_big[2] / wstar,
        w_big[3] / wstar,
    ];
    if d_big % wstar != 0 {
        return Err(Error::ConsistencyFailure(format!(
            "w* = {wstar} does not divide D = {d_big}"
        )));
    }
    let d = d_big / wstar;
    for &ai in &a {
        let g = gcd(ai, wstar);
        if g != 1 {
            return Err(Error::ConsistencyFailure(format!(
                "gcd(a_i = {ai}, w* = {wstar}) = {g} != 1"
            )));
        }
    }
    let (mu, t) = if wstar > 1 {
        let m = [
            mod_reduce(a2 * a3 * a4, wstar),
            mod_reduce(-a3 * a4, wstar),
            mod_reduce(a4, wstar),
            mod_reduce(-1, wstar),
        ];
        for &mi in &m {
            if mi == 0 || gcd(mi, wstar) != 1 {
                return Err(Error::ConsistencyFailure(format!(
                    "mu = {m:?} contains a non-unit mod {wstar}"
                )));
            }
        }
        let sum: i64 = m.iter().sum();
        if sum % wstar != 0 {
            return Err(Error::ConsistencyFailure(format!(
                "sum mu = {sum} not divisible by w* = {wstar}"
            )));
        }
        (Some(m), Some(sum / wstar))
    } else {
        (None, None)
    };
    Ok(KollarData {
        a,
        w_big,
        d_big,
        wstar,
        w,
        d,
        mu,
        t,
    })
}

/// Singularity of `X` at the coordinate point `p_i`: type
/// `1/w_i(w_{i+2}, w_{i+3})`, normalized (including the quasi-reflection
/// reduction when `gcd(w_i, w_{i+2}) > 1`).
pub fn singularity_at(data: &KollarData, i: usize) -> Result<CyclicQuotientSingularity> {
    if !(1..=4).contains(&i) {
        return Err(Error::OutOfRange(format!("point index {i} not in 1..=4")));
    }
    normalize_singularity(data.w_at(i), data.w_at(i + 2), data.w_at(i + 3))
}

/// `p_g`, `e`, `K^2`, `chi` of (the minimal resolution of) `X`.
///
/// The geometric genus is computed twice — once from the exponent residues,
/// once from the branch multiplicities — and the two exact values must agree:
///
/// ```text
/// p_g = 2s(1,1;w*) - sum_i s(1,a_i;w*) + s(1,a_1 a_4;w*) + s(1,a_1 a_2;w*)
///     = 2s(1,1;w*) + sum_{i<j} s(mu_i, mu_j; w*)
/// ```
///
/// `e = w* + 4` and `K^2 = d (d - sum w_i)^2 / prod w_i` refer to the
/// singular model, so no Noether check applies here (contrast
/// [`crate::rootcover::invariants_y`]).
pub fn invariants_x(data: &KollarData) -> Result<SurfaceInvariants> {
    let n = data.wstar;
    let pg = if n == 1 {
        rat_int(0)
    } else {
        let [a1, a2, _a3, a4] = data.a;
        let mut expo = rat_int(2) * dedekind_fast(1, 1, n)?;
        for &ai in &data.a {
            expo -= dedekind_fast(1, ai, n)?;
        }
        expo += dedekind_fast(1, mod_reduce(a1 * a4, n), n)?;
        expo += dedekind_fast(1, mod_reduce(a1 * a2, n), n)?;

        let mu = data.mu.expect("mu present when w* > 1");
        let mut part = rat_int(2) * dedekind_fast(1, 1, n)?;
        for i in 0..4 {
            for j in (i + 1)..4 {
                part += dedekind_fast(mu[i], mu[j], n)?;
            }
        }
        if expo != part {
            return Err(Error::ConsistencyFailure(format!(
                "p_g formulas disagree for a = {:?}: exponent form {expo}, partition form {part}",
                data.a
            )));
        }
        expo
    };
    let pg_int = to_i64(&pg)?;
    if pg_int < 0 {
        return Err(Error::ConsistencyFailure(format!(
            "negative p_g = {pg_int} for a = {:?}",
            data.a
        )));
    }
    let sum_w: i64 = data.w.iter().sum();
    let prod_w = data
        .w
        .iter()
        .try_fold(1i64, |acc, &x| acc.checked_mul(x))
        .ok_or_else(|| Error::OutOfRange("weight product overflows i64".into()))?;
    let diff = rat_int(data.d - sum_w);
    let ksq = rat_int(data.d) * diff.clone() * diff / rat_int(prod_w);
    Ok(SurfaceInvariants {
        pg,
        euler: n + 4,
        ksq,
        chi: 1 + pg_int,
        rational_flag: pg_int == 0,
    })
}

/// Residual (left minus right) of the Dedekind-sum identity
///
/// ```text
/// 12 ( sum_{i<j} s(mu_i, mu_j; w*) + sum_i s(w_{i+2}, w_{i+3}; w_i) )
///   = d (d - sum w_i)^2 / prod w_i - sum_i 2/w_i - (w*^2 - 6 w* + 4)/w*
/// ```
///
/// valid when the opposite weight pairs are coprime. Always zero; returned
/// as a value so sweeps can assert it.
pub fn identity_residual(data: &KollarData) -> Result<Rational> {
    if gcd(data.w[0], data.w[2]) != 1 || gcd(data.w[1], data.w[3]) != 1 {
        return Err(Error::HypothesisViolated(
            "weights not pairwise coprime".into(),
        ));
    }
    let n = data.wstar;
    let mut lhs = rat_int(0);
    if let Some(mu) = data.mu {
        for i in 0..4 {
            for j in (i + 1)..4 {
                lhs += dedekind_fast(mu[i], mu[j], n)?;
            }
        }
    }
    for i in 1..=4 {
        let m = data.w_at(i);
        if m > 1 {
            lhs += dedekind_fast(
                mod_reduce(data.w_at(i + 2), m),
                mod_reduce(data.w_at(i + 3), m),
                m,
            )?;
        }
    }
    lhs *= rat_int(12);
    let sum_w: i64 = data.w.iter().sum();
    let prod_w: i64 = data.w.iter().product();
    let diff = rat_int(data.d - sum_w);
    let mut rhs = rat_int(data.d) * diff.clone() * diff / rat_int(prod_w);
    for &wi in &data.w {
        rhs -= rat(2, wi);
    }
    rhs -= rat(n * n - 6 * n + 4, n);
    Ok(lhs - rhs)
}

/// The arithmetic criterion for `p_g = 0` (equivalently rationality) when
/// `w* > 1`: some `a_i = 1` or some `a_i a_{i+1} = -1` modulo `w*`.
pub fn pg_zero_predicate(data: &KollarData) -> Result<bool> {
    let n = data.wstar;
    if n <= 1 {
        return Err(Error::HypothesisViolated(
            "p_g = 0 criterion requires w* > 1".into(),
        ));
    }
    for i in 1..=4 {
        if mod_reduce(data.a_at(i), n) == 1 {
            return Ok(true);
        }
        if mod_reduce(data.a_at(i) * data.a_at(i + 1) + 1, n) == 0 {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Number of nonnegative integer solutions of `a x + b y = m` for coprime
/// positive `a`, `b` (Popoviciu's formula).
fn two_term_count(a: i64, b: i64, m: i64) -> i64 {
    debug_assert!(a > 0 && b > 0 && gcd(a, b) == 1);
    if m < 0 {
        return 0;
    }
    let (a, b, m) = (a as i128, b as i128, m as i128);
    // N(m) = m/(ab) - {a^{-1} m / b} - {b^{-1} m / a} + 1, written with
    // integer residues: (m - a*((a^{-1} m) mod b) - b*((b^{-1} m) mod a))/(ab) + 1.
    let inv = |x: i128, md: i128| -> i128 {
        if md == 1 {
            return 0;
        }
        let (mut r0, mut r1) = (x.rem_euclid(md), md);
        let (mut s0, mut s1) = (1i128, 0i128);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        s0.rem_euclid(md)
    };
    let ra = (inv(a, b) * (m % b)).rem_euclid(b);
    let rb = (inv(b, a) * (m % a)).rem_euclid(a);
    let count = (m - a * ra - b * rb) / (a * b) + 1;
    i64::try_from(count).expect("lattice count fits i64")
}

/// Arithmetic genus of the curve `Gamma_{i+2,i+3}` in `X`, computed as the
/// number of nonnegative solutions of
///
/// ```text
/// t2 x + w_{i+2} y + t4 z = a_{i+1} t2 - t2 - w_{i+2} - t4,
/// ```
///
/// where `t2 = w_{i+1}/h`, `t4 = w_{i+3}/h`, `h = gcd(w_{i+1}, w_{i+3})`
/// (so `h = 1` reproduces the plain equation). Returns 0 when the right-hand
/// side is negative.
pub fn gamma_genus(data: &KollarData, i: usize) -> Result<i64> {
    if !(1..=4).contains(&i) {
        return Err(Error::OutOfRange(format!("curve index {i} not in 1..=4")));
    }
    let (w2, w3, w4) = (data.w_at(i + 1), data.w_at(i + 2), data.w_at(i + 3));
    let a2 = data.a_at(i + 1);
    let h = gcd(w2, w4);
    let (t2, t4) = (w2 / h, w4 / h);
    let rhs = a2
        .checked_mul(t2)
        .and_then(|x| x.checked_sub(t2 + w3 + t4))
        .ok_or_else(|| Error::OutOfRange("genus equation overflows i64".into()))?;
    if rhs < 0 {
        return Ok(0);
    }
    // Adjacent reduced weights are coprime, so gcd(t2, w3) = 1 and the count
    // over each fixed z is a two-variable Popoviciu evaluation.
    debug_assert_eq!(gcd(t2, w3), 1);
    let mut total = 0i64;
    let mut m = rhs;
    while m >= 0 {
        total += two_term_count(t2, w3, m);
        m -= t4;
    }
    Ok(total)
}

/// How the strict transform of `Gamma_{i+2,i+3}` meets the exceptional chain
/// over the singular point `p_{i+3}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GammaChainReport {
    /// The curve `Gamma_{curve.0, curve.1}`.
    pub curve: (usize, usize),
    /// Index of the singular point analyzed (`i + 3` cyclically).
    pub point: usize,
    /// The singularity over that point, oriented so the companion sequences
    /// match the sign analysis below.
    pub singularity: CyclicQuotientSingularity,
    /// The integer sequence `a_{i+1} alpha_k - (a_{i+2} - 1) beta_k`,
    /// `k = 0..s+1`; strictly increasing from negative to positive.
    pub signs: Vec<i64>,
    /// Chain components met by the strict transform, as `(k, multiplicity)`
    /// with `k` in `1..=s`. One entry when the sign sequence hits zero,
    /// otherwise the two components around the sign change.
    pub components: Vec<(usize, i64)>,
    /// True exactly when the curve meets a single component with
    /// multiplicity one.
    pub transversal: bool,
}

/// Analyze how the strict transform of `Gamma_{i+2,i+3}` meets the
/// exceptional chain over `p_{i+3}` (the singular point the curve passes
/// through). The multiplicities `(m_j, m_{j+1})` solve
///
/// ```text
/// a_{i+2} - 1 = alpha_j m_j + alpha_{j+1} m_{j+1}
/// a_{i+1}     = beta_j  m_j + beta_{j+1}  m_{j+1}.
/// ```
///
/// Requires opposite weight pairs coprime and all `a_i >= 2`; a smooth point
/// is reported as an error (no exceptional chain to meet).
pub fn gamma_chain_data(data: &KollarData, i: usize) -> Result<GammaChainReport> {
    if !(1..=4).contains(&i) {
        return Err(Error::OutOfRange(format!("curve index {i} not in 1..=4")));
    }
    if gcd(data.w[0], data.w[2]) != 1 || gcd(data.w[1], data.w[3]) != 1 {
        return Err(Error::HypothesisViolated(
            "weights not pairwise coprime".into(),
        ));
    }
    if data.a.iter().any(|&x| x < 2) {
        return Err(Error::HypothesisViolated(
            "chain analysis assumes all a_i >= 2".into(),
        ));
    }
    let point = (i + 2) % 4 + 1; // p_{i+3} in 1..=4
    let sing = singularity_at(data, point)?;
    if sing.is_smooth() {
        return Err(Error::HypothesisViolated(format!(
            "no exceptional chain: p_{point} is a smooth point"
        )));
    }
    let m = sing.order;
    let b_coef = data.a_at(i + 1);
    let a_coef = data.a_at(i + 2) - 1;
    let e = &sing.expansion;
    let s = e.len();
    let signs: Vec<i64> = (0..=s + 1)
        .map(|k| b_coef * e.alpha[k] - a_coef * e.beta[k])
        .collect();
    debug_assert!(signs.windows(2).all(|w| w[0] < w[1]));
    debug_assert!(signs[0] < 0 && signs[s + 1] > 0);
    // j = last index with sign <= 0; the curve meets E_j (and E_{j+1} when
    // the sign there is strictly negative, i.e. no zero is hit).
    let j = (0..=s + 1).rev().find(|&k| signs[k] <= 0).unwrap();
    for &k in &[j, j + 1] {
        if signs[k] % m != 0 {
            return Err(Error::ConsistencyFailure(format!(
                "sign value {} not divisible by the order {m}",
                signs[k]
            )));
        }
    }
    let mut raw = Vec::new();
    let mult_j = signs[j + 1] / m; // solves the 2x2 system, det = -m
    let mult_j1 = -signs[j] / m;
    if mult_j > 0 {
        raw.push((j, mult_j));
    }
    if mult_j1 > 0 {
        raw.push((j + 1, mult_j1));
    }
    // Self-check: the reported multiplicities satisfy both linear relations.
    let chk_a: i64 = raw.iter().map(|&(k, m_)| e.alpha[k] * m_).sum();
    let chk_b: i64 = raw.iter().map(|&(k, m_)| e.beta[k] * m_).sum();
    if chk_a != a_coef || chk_b != b_coef {
        return Err(Error::ConsistencyFailure(format!(
            "multiplicity relations failed at p_{point}: got ({chk_a}, {chk_b}), want ({a_coef}, {b_coef})"
        )));
    }
    // Indices 0 and s+1 are the strict transforms of the toric axes, not
    // exceptional curves; only the chain indices 1..=s count for the
    // transversality criterion.
    let components: Vec<(usize, i64)> = raw.into_iter().filter(|&(k, _)| k >= 1 && k <= s).collect();
    let transversal = components.len() == 1 && components[0].1 == 1;
    let curve = ((i + 1) % 4 + 1, (i + 2) % 4 + 1);
    Ok(GammaChainReport {
        curve,
        point,
        singularity: sing,
        signs,
        components,
        transversal,
    })
}

/// The two singularities created by contracting the curves `C_1`, `C_2`,
/// with the `w* = 1` pattern check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionData {
    /// `s_1 = a_4 w_4 - w_3`; contracting `C_1` yields `1/s_1(w_2, w_4)`.
    pub s1: i64,
    pub sing1: CyclicQuotientSingularity,
    /// `s_2 = a_3 w_3 - w_2`; contracting `C_2` yields `1/s_2(w_1, w_3)`.
    pub s2: i64,
    pub sing2: CyclicQuotientSingularity,
    /// Expected chain `[2 x (a_4 - 1), a_3, a_1, 2 x (a_2 - 1)]` for `C_1`.
    pub pattern1: Vec<i64>,
    /// Expected chain `[2 x (a_3 - 1), a_2, a_4, 2 x (a_1 - 1)]` for `C_2`.
    pub pattern2: Vec<i64>,
    /// Whether each normalized chain equals its pattern up to reversal;
    /// `None` unless `w* = 1`, all pattern entries are `>= 2`, and the
    /// singularity is not smooth.
    pub pattern1_match: Option<bool>,
    pub pattern2_match: Option<bool>,
}

fn build_pattern(twos_front: i64, mid1: i64, mid2: i64, twos_back: i64) -> Vec<i64> {
    let mut v = vec![2; twos_front.max(0) as usize];
    v.push(mid1);
    v.push(mid2);
    v.extend(std::iter::repeat(2).take(twos_back.max(0) as usize));
    v
}

fn pattern_matches(sing: &CyclicQuotientSingularity, pattern: &[i64]) -> Option<bool> {
    if sing.is_smooth() || pattern.iter().any(|&b| b < 2) {
        return None;
    }
    let terms = &sing.expansion.terms;
    let mut rev = pattern.to_vec();
    rev.reverse();
    Some(terms == pattern || terms == &rev)
}

/// Singularity types formed by contracting `C_1` and `C_2`.
pub fn contraction_data(data: &KollarData) -> Result<ContractionData> {
    let [a1, a2, a3, a4] = data.a;
    let [w1, w2, w3, w4] = data.w;
    let s1 = a4 * w4 - w3;
    let s2 = a3 * w3 - w2;
    if s1 <= 0 || s2 <= 0 {
        return Err(Error::HypothesisViolated(format!(
            "degenerate contraction: s1 = {s1}, s2 = {s2} must be positive"
        )));
    }
    let sing1 = normalize_singularity(s1, w2, w4)?;
    let sing2 = normalize_singularity(s2, w1, w3)?;
    let pattern1 = build_pattern(a4 - 1, a3, a1, a2 - 1);
    let pattern2 = build_pattern(a3 - 1, a2, a4, a1 - 1);
    let (pattern1_match, pattern2_match) = if data.wstar == 1 {
        (
            pattern_matches(&sing1, &pattern1),
            pattern_matches(&sing2, &pattern2),
        )
    } else {
        (None, None)
    };
    Ok(ContractionData {
        s1,
        sing1,
        s2,
        sing2,
        pattern1,
        pattern2,
        pattern1_match,
        pattern2_match,
    })
}

/// Contractibility criterion for `C_1` in the `a_1 = 1` family: contractible
/// iff `a_3 > a_2`.
pub fn c1_contractible_a1_one(data: &KollarData) -> Result<bool> {
    if data.a[0] != 1 {
        return Err(Error::HypothesisViolated(format!(
            "criterion requires a_1 = 1, got {}",
            data.a[0]
        )));
    }
    Ok(data.a[2] > data.a[1])
}

/// Search for exponents `a'_i = a_i + t_i w*` (`0 <= t_i <= search_bound`,
/// `a'_i >= 2`) with the same `w*` and opposite weight pairs coprime. Lifts
/// are explored by increasing total shift, so the returned model is minimal
/// in that order. The input is returned unchanged when it already qualifies.
pub fn find_coprime_model(data: &KollarData, search_bound: i64) -> Result<KollarData> {
    if data.wstar <= 1 {
        return Err(Error::HypothesisViolated(
            "coprime-model search requires w* > 1".into(),
        ));
    }
    if search_bound < 0 {
        return Err(Error::OutOfRange("search bound must be >= 0".into()));
    }
    let n = data.wstar;
    for total in 0..=4 * search_bound {
        for t1 in 0..=total.min(search_bound) {
            for t2 in 0..=(total - t1).min(search_bound) {
                for t3 in 0..=(total - t1 - t2).min(search_bound) {
                    let t4 = total - t1 - t2 - t3;
                    if t4 > search_bound {
                        continue;
                    }
                    let lifted = [
                        data.a[0] + t1 * n,
                        data.a[1] + t2 * n,
                        data.a[2] + t3 * n,
                        data.a[3] + t4 * n,
                    ];
                    if lifted.iter().any(|&x| x < 2) {
                        continue;
                    }
                    let Ok(cand) = from_exponents(lifted[0], lifted[1], lifted[2], lifted[3])
                    else {
                        continue;
                    };
                    if cand.wstar == n
                        && gcd(cand.w[0], cand.w[2]) == 1
                        && gcd(cand.w[1], cand.w[3]) == 1
                    {
                        return Ok(cand);
                    }
                }
            }
        }
    }
    Err(Error::SearchExhausted(format!(
        "no coprime model within shift bound {search_bound}; increase search bound"
    )))
}

/// Well-formedness of the ambient weighted projective space: every
/// 3-element subset of the weights must have gcd 1.
pub fn wellformed_check(w: [i64; 4]) -> bool {
    for skip in 0..4 {
        let mut g = 0;
        for (k, &wk) in w.iter().enumerate() {
            if k != skip {
                g = gcd(g, wk);
            }
        }
        if g != 1 {
            return false;
        }
    }
    true
}
