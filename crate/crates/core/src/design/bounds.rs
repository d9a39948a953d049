use std::fmt;

use serde::Serialize;

use crate::algebra::arith::prime_power;
use crate::error::{domain, Result};
use crate::nonlinear::binomial_bound;

pub const MIN_TABLE_DIM: u64 = 2;
pub const MAX_TABLE_DIM: u64 = 50;
/// Largest `kd + 1` tried when looking for a prime-power field.
const MAX_FIELD_SEARCH: u64 = 1 << 20;

/// How an upper bound on the number of bases is achieved.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "recipe", rename_all = "kebab-case")]
pub enum Recipe {
    /// `d = p^n`: complete set of mutually unbiased bases.
    PrimePower { p: u64, n: u32 },
    /// `d + 1 = p^n`: `y^j` into `F_{d+1}`.
    PrimePowerPlusOne { p: u64, n: u32 },
    /// `kd + 1 = p^n`: `y^j` into `F_{kd+1}`.
    Exponential { k: u64, p: u64, n: u32 },
    /// `binom(j, 2)` into `Z_n`.
    Binomial { n: u64 },
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Recipe::PrimePower { p, n } => write!(f, "complete MUBs (d = {p}^{n})"),
            Recipe::PrimePowerPlusOne { p, n } => write!(f, "exp into F_{{d+1}} (d+1 = {p}^{n})"),
            Recipe::Exponential { k, p, n } => write!(f, "exp into F_{{{k}d+1}} ({k}d+1 = {p}^{n})"),
            Recipe::Binomial { n } => write!(f, "binomial into Z_{n}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BasisBound {
    pub d: u64,
    pub bases: u64,
    #[serde(flatten)]
    pub recipe: Recipe,
}

/// Best known upper bound on the number of orthonormal bases whose union
/// supports a weighted 2-design in dimension `d`, for `2 ≤ d ≤ 50`.
///
/// Ties between the exponential and binomial recipes go to the exponential one.
pub fn min_bases_upper_bound(d: u64) -> Result<BasisBound> {
    if !(MIN_TABLE_DIM..=MAX_TABLE_DIM).contains(&d) {
        return domain(format!("d = {d} is outside {MIN_TABLE_DIM}..={MAX_TABLE_DIM}"));
    }
    if let Some((p, n)) = prime_power(d) {
        return Ok(BasisBound { d, bases: d + 1, recipe: Recipe::PrimePower { p, n } });
    }
    if let Some((p, n)) = prime_power(d + 1) {
        return Ok(BasisBound { d, bases: d + 2, recipe: Recipe::PrimePowerPlusOne { p, n } });
    }
    let exp = (2..)
        .take_while(|k| k * d < MAX_FIELD_SEARCH)
        .find_map(|k| prime_power(k * d + 1).map(|(p, n)| (k, p, n)));
    let bin_n = binomial_bound(d);
    let bin = BasisBound { d, bases: bin_n + 1, recipe: Recipe::Binomial { n: bin_n } };
    Ok(match exp {
        Some((k, p, n)) if k * d + 2 <= bin.bases => BasisBound {
            d,
            bases: k * d + 2,
            recipe: Recipe::Exponential { k, p, n },
        },
        _ => bin,
    })
}

/// One row per `d` in `2..=dmax`.
pub fn bound_table(dmax: u64) -> Result<Vec<BasisBound>> {
    if !(MIN_TABLE_DIM..=MAX_TABLE_DIM).contains(&dmax) {
        return domain(format!("dmax = {dmax} is outside {MIN_TABLE_DIM}..={MAX_TABLE_DIM}"));
    }
    (MIN_TABLE_DIM..=dmax).map(min_bases_upper_bound).collect()
}
