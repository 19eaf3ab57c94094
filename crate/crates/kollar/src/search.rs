//! Enumeration and verification campaigns: exhaustive sweeps over branch
//! configurations, orbit classification, the `p_g = 0` and `p_g = 1`
//! verifications, the Dedekind-sum inequality sweeps, and the seeded
//! `K^2/e` sampling at large prime degree.
//!
//! The hot loops avoid rational arithmetic entirely: for a fixed modulus
//! `n`, `4 n^2 s(1, q; n)` is an integer bounded by `n^3`, so a per-`n`
//! integer table turns each configuration's `p_g` into seven lookups.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::dedekind::{bound_lemma_check, corollary_check, BoundReport, DedekindTable};
use crate::error::{Error, Result};
use crate::numeric::{gcd, mod_reduce, rat_int, Rational};
use crate::rootcover::{invariants_y, validate_config, RootCoverConfig};

/// An equivalence class of branch configurations at fixed `n`, under
/// simultaneous unit scaling and coordinate permutation (both preserve all
/// invariants).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct PartitionClass {
    pub n: i64,
    /// Lexicographically minimal sorted representative over the whole orbit.
    pub representative: [i64; 4],
    /// Number of ordered quadruples in the orbit.
    pub orbit_size: u64,
    pub pg: i64,
}

/// All ordered valid quadruples `(mu_1..mu_4)` for modulus `n`, in
/// lexicographic order.
pub fn enumerate_configs(n: i64) -> Result<Vec<[i64; 4]>> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n} must be >= 2")));
    }
    let units: Vec<i64> = (1..n).filter(|&x| gcd(x, n) == 1).collect();
    let is_unit = |x: i64| x > 0 && gcd(x, n) == 1;
    let mut out = Vec::new();
    for &m1 in &units {
        for &m2 in &units {
            for &m3 in &units {
                let m4 = mod_reduce(-(m1 + m2 + m3), n);
                if is_unit(m4) {
                    out.push([m1, m2, m3, m4]);
                }
            }
        }
    }
    Ok(out)
}

/// Sorted multisets of units summing to 0 mod n: each valid multiset is hit
/// exactly once by choosing `m1 <= m2 <= m3` and completing.
fn sorted_multisets(n: i64) -> Vec<[i64; 4]> {
    let units: Vec<i64> = (1..n).filter(|&x| gcd(x, n) == 1).collect();
    let mut out = Vec::new();
    for (i, &m1) in units.iter().enumerate() {
        for (j, &m2) in units[i..].iter().enumerate() {
            for &m3 in &units[i + j..] {
                let m4 = mod_reduce(-(m1 + m2 + m3), n);
                if m4 >= m3 && gcd(m4, n) == 1 {
                    out.push([m1, m2, m3, m4]);
                }
            }
        }
    }
    out
}

/// Number of distinct permutations of a sorted quadruple.
fn permutation_count(m: &[i64; 4]) -> u64 {
    let mut runs = Vec::new();
    let mut len = 1u64;
    for k in 1..4 {
        if m[k] == m[k - 1] {
            len += 1;
        } else {
            runs.push(len);
            len = 1;
        }
    }
    runs.push(len);
    let fact = |x: u64| (1..=x).product::<u64>();
    24 / runs.into_iter().map(fact).product::<u64>()
}

/// Canonical orbit representative: the lexicographically minimal sorted
/// unit-scaling of the multiset.
fn canonical_form(n: i64, mu: &[i64; 4]) -> [i64; 4] {
    let mut best: Option<[i64; 4]> = None;
    for c in 1..n {
        if gcd(c, n) != 1 {
            continue;
        }
        let mut scaled = [
            mod_reduce(c * mu[0], n),
            mod_reduce(c * mu[1], n),
            mod_reduce(c * mu[2], n),
            mod_reduce(c * mu[3], n),
        ];
        scaled.sort_unstable();
        if best.as_ref().is_none_or(|b| &scaled < b) {
            best = Some(scaled);
        }
    }
    best.expect("n >= 2 has the unit 1")
}

/// `4 n^2 p_g` for a configuration, via table lookups.
fn pg_times_4n2(table: &DedekindTable, mu: &[i64; 4]) -> Result<i64> {
    let mut acc = 2 * table.s4(1)?;
    for i in 0..4 {
        for j in (i + 1)..4 {
            acc += table.pair_s4(mu[i], mu[j])?;
        }
    }
    Ok(acc)
}

fn pg_from_table(table: &DedekindTable, mu: &[i64; 4]) -> Result<i64> {
    let n = table.n;
    let v = pg_times_4n2(table, mu)?;
    if v % (4 * n * n) != 0 {
        return Err(Error::ConsistencyFailure(format!(
            "p_g not an integer for (n; mu) = ({n}; {mu:?})"
        )));
    }
    Ok(v / (4 * n * n))
}

fn class_from_canonical(n: i64, table: &DedekindTable, canonical: [i64; 4]) -> Result<PartitionClass> {
    let pg = pg_from_table(table, &canonical)?;
    // Orbit = all sorted unit-scalings; orbit size sums their permutations.
    let mut members = std::collections::BTreeSet::new();
    for c in 1..n {
        if gcd(c, n) != 1 {
            continue;
        }
        let mut scaled = [
            mod_reduce(c * canonical[0], n),
            mod_reduce(c * canonical[1], n),
            mod_reduce(c * canonical[2], n),
            mod_reduce(c * canonical[3], n),
        ];
        scaled.sort_unstable();
        members.insert(scaled);
    }
    let orbit_size = members.iter().map(permutation_count).sum();
    Ok(PartitionClass {
        n,
        representative: canonical,
        orbit_size,
        pg,
    })
}

/// All equivalence classes at modulus `n`, sorted by representative.
pub fn classes(n: i64) -> Result<Vec<PartitionClass>> {
    if n < 2 {
        return Err(Error::OutOfRange(format!("n = {n} must be >= 2")));
    }
    let table = DedekindTable::new(n)?;
    let mut canon = std::collections::BTreeSet::new();
    for m in sorted_multisets(n) {
        canon.insert(canonical_form(n, &m));
    }
    canon
        .into_iter()
        .map(|c| class_from_canonical(n, &table, c))
        .collect()
}

/// One counterexample of the `p_g = 0` criterion check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pg0Counterexample {
    pub n: i64,
    pub mu: [i64; 4],
    pub pg: i64,
    pub pair_vanishes: bool,
}

/// Exhaustively verify, for every configuration with `2 <= n <= n_max`, that
/// `p_g = 0` holds exactly when some `mu_i + mu_j = 0 (mod n)`.
pub fn verify_pg_zero(n_max: i64) -> Result<Vec<Pg0Counterexample>> {
    if n_max < 2 {
        return Err(Error::OutOfRange(format!("n_max = {n_max} must be >= 2")));
    }
    let results: Vec<Result<Vec<Pg0Counterexample>>> = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let table = DedekindTable::new(n)?;
            let mut bad = Vec::new();
            for mu in sorted_multisets(n) {
                let pg = pg_from_table(&table, &mu)?;
                let pair = (0..4).any(|i| {
                    ((i + 1)..4).any(|j| mod_reduce(mu[i] + mu[j], n) == 0)
                });
                if (pg == 0) != pair {
                    bad.push(Pg0Counterexample {
                        n,
                        mu,
                        pg,
                        pair_vanishes: pair,
                    });
                }
            }
            Ok(bad)
        })
        .collect();
    let mut out = Vec::new();
    for r in results {
        out.extend(r?);
    }
    Ok(out)
}

/// All classes with `p_g = target_pg` over `2 <= n <= n_max`, sorted by
/// `(n, representative)`. Deterministic regardless of worker count.
pub fn find_pg_classes(n_max: i64, target_pg: i64) -> Result<Vec<PartitionClass>> {
    if n_max < 2 || target_pg < 0 {
        return Err(Error::OutOfRange(format!(
            "need n_max >= 2 and target_pg >= 0, got ({n_max}, {target_pg})"
        )));
    }
    let per_n: Vec<Result<Vec<PartitionClass>>> = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let table = DedekindTable::new(n)?;
            let target4 = target_pg * 4 * n * n;
            let mut canon = std::collections::BTreeSet::new();
            for mu in sorted_multisets(n) {
                if pg_times_4n2(&table, &mu)? == target4 {
                    canon.insert(canonical_form(n, &mu));
                }
            }
            canon
                .into_iter()
                .map(|c| class_from_canonical(n, &table, c))
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for r in per_n {
        out.extend(r?);
    }
    out.sort();
    Ok(out)
}

/// The explicit genus-`g` construction: `n = 3g + 1`,
/// `mu = (3, n-1, n-1, n-1)`, which has `p_g = g` exactly.
pub fn anypg_construct(g: i64) -> Result<RootCoverConfig> {
    if g < 1 {
        return Err(Error::OutOfRange(format!(
            "g = {g} must be >= 1 (g = 0 is any w* = 1 surface)"
        )));
    }
    let n = 3 * g + 1;
    validate_config(n, [3, n - 1, n - 1, n - 1])
}

/// Statistics of the `K^2/e` ratio over seeded random partitions at prime
/// degree. All quantiles are exact rationals; `mean_f64` is a convenience
/// float echo of `mean`.
#[derive(Debug, Clone)]
pub struct SampleStats {
    pub n: i64,
    pub count: usize,
    pub seed: u64,
    pub min: Rational,
    pub median: Rational,
    pub mean: Rational,
    /// Fraction of samples with ratio >= 4/5.
    pub fraction_ge_four_fifths: Rational,
    /// True when every sampled ratio is < 1.
    pub all_below_one: bool,
}

fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Sample `count` uniform ordered partitions `mu_1 + mu_2 + mu_3 + mu_4 = n`
/// (`n` prime, so units are automatic) and report statistics of
/// `K_Y^2 / e(Y)`. Deterministic for a fixed seed.
pub fn generic_sample(n: i64, count: usize, seed: u64) -> Result<SampleStats> {
    if !is_prime(n) {
        return Err(Error::HypothesisViolated(format!(
            "sampling degree n = {n} must be prime"
        )));
    }
    if count == 0 {
        return Err(Error::OutOfRange("sample count must be >= 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut quads = Vec::with_capacity(count);
    while quads.len() < count {
        let m1 = rng.gen_range(1..n);
        let m2 = rng.gen_range(1..n);
        let m3 = rng.gen_range(1..n);
        let m4 = n - m1 - m2 - m3;
        if (1..n).contains(&m4) {
            quads.push([m1, m2, m3, m4]);
        }
    }
    let mut ratios: Vec<Rational> = quads
        .par_iter()
        .map(|&mu| {
            let cfg = validate_config(n, mu)?;
            let inv = invariants_y(&cfg)?;
            Ok(inv.ksq / rat_int(inv.euler))
        })
        .collect::<Result<_>>()?;
    ratios.sort();
    let min = ratios[0].clone();
    let median = if count % 2 == 1 {
        ratios[count / 2].clone()
    } else {
        (ratios[count / 2 - 1].clone() + ratios[count / 2].clone()) / rat_int(2)
    };
    let mut mean = rat_int(0);
    for r in &ratios {
        mean += r;
    }
    mean /= rat_int(count as i64);
    let threshold = rat_int(4) / rat_int(5);
    let ge = ratios.iter().filter(|r| **r >= threshold).count();
    let all_below_one = ratios.iter().all(|r| *r < rat_int(1));
    Ok(SampleStats {
        n,
        count,
        seed,
        min,
        median,
        mean,
        fraction_ge_four_fifths: rat_int(ge as i64) / rat_int(count as i64),
        all_below_one,
    })
}

/// Run [`bound_lemma_check`] for one part over `2 <= n <= n_max`, returning
/// the reports that contain counterexamples (expected: none).
pub fn verify_dedekind_bounds(part: u8, n_max: i64) -> Result<Vec<BoundReport>> {
    if n_max < 2 {
        return Err(Error::OutOfRange(format!("n_max = {n_max} must be >= 2")));
    }
    let reports: Vec<Result<Option<BoundReport>>> = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let r = bound_lemma_check(part, n)?;
            Ok(if r.holds() { None } else { Some(r) })
        })
        .collect();
    let mut out = Vec::new();
    for r in reports {
        if let Some(bad) = r? {
            out.push(bad);
        }
    }
    Ok(out)
}

/// One corollary evaluation that deviated from the expected pattern
/// (holds everywhere it is defined except `(id, n)` in
/// `{(1,5), (2,7), (3,7)}`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorollaryDeviation {
    pub id: u8,
    pub n: i64,
    pub holds: bool,
}

/// Sweep the three corollaries over `3 <= n <= n_max` (skipping moduli where
/// they are undefined) and report deviations from the expected pattern.
pub fn verify_corollaries(n_max: i64) -> Result<Vec<CorollaryDeviation>> {
    if n_max < 2 {
        return Err(Error::OutOfRange(format!("n_max = {n_max} must be >= 2")));
    }
    let per_n: Vec<Vec<CorollaryDeviation>> = (3..=n_max)
        .into_par_iter()
        .map(|n| {
            let mut dev = Vec::new();
            for id in 1..=3u8 {
                match corollary_check(id, n) {
                    Err(_) => {} // undefined at this modulus
                    Ok(holds) => {
                        let expected = !matches!((id, n), (1, 5) | (2, 7) | (3, 7));
                        if holds != expected {
                            dev.push(CorollaryDeviation { id, n, holds });
                        }
                    }
                }
            }
            dev
        })
        .collect();
    Ok(per_n.into_iter().flatten().collect())
}

/// Exhaustive Noether check over all configs for `2 <= n <= n_max` (the
/// check itself lives inside [`invariants_y`]; this drives it).
pub fn verify_noether(n_max: i64) -> Result<()> {
    if n_max < 2 {
        return Err(Error::OutOfRange(format!("n_max = {n_max} must be >= 2")));
    }
    (2..=n_max)
        .into_par_iter()
        .map(|n| {
            for mu in sorted_multisets(n) {
                invariants_y(&validate_config(n, mu)?)?;
            }
            Ok(())
        })
        .collect::<Result<Vec<()>>>()?;
    Ok(())
}
