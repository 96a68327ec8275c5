//! Closed-form numerical invariants of bundles on curves.
//!
//! For a rank-`n`, degree-`d` bundle `E` and a subbundle `E'` of rank `n'`
//! and degree `d'`, `s(E, E') = n'd - nd'`, and `s_{n'}(E)` is its minimum
//! over rank-`n'` subbundles. A subbundle attaining the minimum is maximal.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::Serialize;

use crate::error::{Error, Result};

/// Ranks and degrees of a bundle together with a subbundle type.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BundleParams {
    pub n: i64,
    pub d: i64,
    pub sub_rank: i64,
    pub sub_degree: i64,
    pub genus: i64,
}

impl BundleParams {
    pub fn validate(&self) -> Result<()> {
        check_sub_rank(self.n, self.sub_rank)?;
        if self.genus < 2 {
            return Err(Error::OutOfRange(format!("genus {} < 2", self.genus)));
        }
        Ok(())
    }

    pub fn s(&self) -> Result<i64> {
        s_invariant(self.n, self.d, self.sub_rank, self.sub_degree)
    }

    /// Quotient rank `n'' = n - n'` and degree `d'' = d - d'`.
    pub fn quotient(&self) -> (i64, i64) {
        (self.n - self.sub_rank, self.d - self.sub_degree)
    }
}

fn check_sub_rank(n: i64, sub_rank: i64) -> Result<()> {
    if sub_rank < 1 || sub_rank >= n {
        return Err(Error::OutOfRange(format!(
            "subbundle rank {sub_rank} must satisfy 1 <= n' <= n - 1 with n = {n}"
        )));
    }
    Ok(())
}

fn check_genus(g: i64) -> Result<()> {
    if g < 2 {
        return Err(Error::OutOfRange(format!("genus {g} < 2")));
    }
    Ok(())
}

/// `s(E, E') = n'd - nd'`.
pub fn s_invariant(n: i64, d: i64, sub_rank: i64, sub_degree: i64) -> Result<i64> {
    check_sub_rank(n, sub_rank)?;
    Ok(sub_rank * d - n * sub_degree)
}

/// The value of `s_{n'}(E)` for general `E`: `n'(n - n')(g - 1) + ε` with
/// `0 <= ε <= n - 1` fixed by `s ≡ n'd (mod n)`.
pub fn hirschowitz_smax(n: i64, sub_rank: i64, d: i64, g: i64) -> Result<i64> {
    check_sub_rank(n, sub_rank)?;
    check_genus(g)?;
    let base = sub_rank * (n - sub_rank) * (g - 1);
    let eps = (sub_rank * d - base).mod_floor(&n);
    Ok(base + eps)
}

/// Dimension of the stratum of bundles with `s_{n'}(E) = s`:
/// `(n^2 - n'(n - n'))(g - 1) + s + 1`.
pub fn stratum_dim(n: i64, sub_rank: i64, d: i64, g: i64, s: i64) -> Result<i64> {
    check_sub_rank(n, sub_rank)?;
    check_genus(g)?;
    if s <= 0 {
        return Err(Error::OutOfRange(format!(
            "stratum label s = {s} must be positive"
        )));
    }
    if (s - sub_rank * d).mod_floor(&n) != 0 {
        return Err(Error::EmptyStratum(format!(
            "s = {s} is not congruent to n'd = {} mod {n}",
            sub_rank * d
        )));
    }
    Ok((n * n - sub_rank * (n - sub_rank)) * (g - 1) + s + 1)
}

/// Expected dimension of the Quot scheme of rank-`n_G`, degree-`d_G`
/// subsheaves of a bundle of rank `n''` and degree `d''`:
/// `n_G d'' - n'' d_G - n_G (n'' - n_G)(g - 1)`. Negative values mean the
/// scheme is empty for general bundles.
pub fn quot_dim(n_g: i64, d_g: i64, n_q: i64, d_q: i64, g: i64) -> Result<i64> {
    if n_g < 1 || n_g > n_q {
        return Err(Error::OutOfRange(format!(
            "subsheaf rank {n_g} must satisfy 1 <= n_G <= {n_q}"
        )));
    }
    Ok(n_g * d_q - n_q * d_g - n_g * (n_q - n_g) * (g - 1))
}

/// Number of maximal line subbundles of a general bundle: `n^g`.
pub fn m1_closed(n: u32, g: u32) -> BigInt {
    num_traits::pow(BigInt::from(n), g as usize)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct M2Report {
    /// `n^3 (n^2 + 2) / 48`.
    pub value: BigRational,
    /// Induced degree `d = 3n/2 - 2` of `E`.
    pub induced_degree: BigRational,
    pub admissible: bool,
}

/// Number of rank-2 maximal subbundles of a general bundle of rank `n` on a
/// genus-2 curve. Evaluated for every `n`; `admissible` records whether `n`
/// meets the hypotheses (`n >= 4` even, `2d + 4 ≡ 0 mod n`, `(2d + 4)/n` odd).
pub fn m2_closed(n: i64) -> M2Report {
    let nn = BigInt::from(n);
    let value = BigRational::new(nn.pow(3) * (nn.pow(2) + 2), BigInt::from(48));
    let induced_degree = BigRational::new(BigInt::from(3 * n - 4), BigInt::from(2));
    let admissible = n >= 4 && n % 2 == 0 && {
        let d = (3 * n - 4) / 2;
        let t = 2 * d + 4;
        t % n == 0 && (t / n) % 2 == 1
    };
    M2Report {
        value,
        induced_degree,
        admissible,
    }
}
