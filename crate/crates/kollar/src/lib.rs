//! Exact numerical invariants of Kollár surfaces `X(a_1, a_2, a_3, a_4)`
//! and of `n`-th root covers of the projective plane branched along four
//! general lines.
//!
//! Everything is computed in exact arbitrary-precision rational arithmetic:
//! Dedekind sums, Hirzebruch-Jung resolutions of cyclic quotient
//! singularities, geometric genus / Euler characteristic / canonical
//! self-intersection, exceptional-curve ledgers, and the exhaustive
//! classification sweeps (`p_g = 0` characterization, `p_g = 1` classes,
//! Dedekind-sum inequalities, generic `K²/e` sampling).

pub mod dedekind;
pub mod error;
pub mod hj;
pub mod numeric;
pub mod rootcover;
pub mod search;
pub mod surface;

pub use error::{Error, Result};
pub use numeric::Rational;
