//! Exact k-subset sum counts over a valued domain.
//!
//! Three independent algorithms compute the same tables: a subset-sum
//! dynamic program, a generating-function product in the group ring, and
//! the Newton recurrence on power sums. The Odlyzko-Stanley counts
//! `N*_m(k, b)`, subgroup counts `M(k, b)` and plain `N(k, b, D)` are all
//! instances of one valued domain.

mod domain;
mod dp;
mod genfun;
mod group_ring;
mod newton;
mod table;

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};

pub use domain::ValuedDomain;
pub use dp::count_dp;
pub use genfun::count_genfun;
pub use group_ring::GroupRingPoly;
pub use newton::{count_newton, count_newton_with, Symmetry};
pub use table::CountTable;

use crate::combinatorics::composition_weights;
use crate::error::{Error, Result};
use crate::field::{PowerResidueStructure, PrimeModulus};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Dp,
    Genfun,
    Newton,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Dp, Algorithm::Genfun, Algorithm::Newton];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Dp => "dp",
            Algorithm::Genfun => "genfun",
            Algorithm::Newton => "newton",
        }
    }

    pub fn run(self, domain: &ValuedDomain, k_max: usize) -> Result<Vec<CountTable>> {
        match self {
            Algorithm::Dp => count_dp(domain, k_max),
            Algorithm::Genfun => count_genfun(domain, k_max),
            Algorithm::Newton => count_newton(domain, k_max),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dp" => Ok(Algorithm::Dp),
            "genfun" => Ok(Algorithm::Genfun),
            "newton" => Ok(Algorithm::Newton),
            other => Err(Error::InvalidParameter(format!("unknown algorithm '{other}'"))),
        }
    }
}

/// Tables for `k = 0..=k_max` from all three algorithms, with agreement.
pub fn count_all(domain: &ValuedDomain, k_max: usize) -> Result<(Vec<CountTable>, bool)> {
    let newton = count_newton(domain, k_max)?;
    let dp = count_dp(domain, k_max)?;
    let genfun = count_genfun(domain, k_max)?;
    let agree = newton == dp && newton == genfun;
    Ok((newton, agree))
}

fn units_domain(modulus: PrimeModulus, m: u64) -> Result<ValuedDomain> {
    Ok(ValuedDomain::power_image(&PowerResidueStructure::new(modulus, m)?))
}

/// `N*_m(k, .)`: k-subsets of `F_p*` by the sum of their m-th powers.
pub fn count_odlyzko_stanley(modulus: PrimeModulus, m: u64, k: usize) -> Result<CountTable> {
    let mut tables = count_odlyzko_stanley_upto(modulus, m, k)?;
    Ok(tables.pop().expect("k_max + 1 tables"))
}

/// `N*_m(j, .)` for every `j` in `0..=k_max`.
pub fn count_odlyzko_stanley_upto(modulus: PrimeModulus, m: u64, k_max: usize) -> Result<Vec<CountTable>> {
    let domain = units_domain(modulus, m)?;
    count_newton(&domain, k_max)
}

/// `N*_m(b)` over subsets of every size, the empty set included.
pub fn total_count(modulus: PrimeModulus, m: u64) -> Result<Vec<BigUint>> {
    let h = PowerResidueStructure::new(modulus, m)?;
    let mut poly = GroupRingPoly::<BigUint>::one(modulus);
    for &(v, d) in ValuedDomain::power_image(&h).items() {
        for _ in 0..d {
            poly.mul_one_plus_monomial(v);
        }
    }
    Ok(poly.into_coeffs())
}

/// One residue of the lifting audit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuditRow {
    pub b: u64,
    /// `sum_j M(j, b) W_m(j, k)` with `M` counted over the subgroup.
    pub claimed: BigUint,
    /// `N*_m(k, b)` counted directly.
    pub actual: BigUint,
}

impl AuditRow {
    /// `claimed - actual`.
    pub fn diff(&self) -> BigInt {
        BigInt::from(self.claimed.clone()) - BigInt::from(self.actual.clone())
    }
}

/// Compares the box-lifting expansion of `N*_m(k, b)` over subgroup counts
/// with the direct count. Requires `m | p - 1`. Differences are reported,
/// never asserted.
pub fn decomposition_audit(modulus: PrimeModulus, m: u64, k: usize) -> Result<Vec<AuditRow>> {
    if m == 0 {
        return Err(Error::ZeroExponent);
    }
    let p = modulus.value();
    if modulus.group_order() % m != 0 {
        let gcd = num_integer::gcd(m, p - 1);
        return Err(Error::ExponentNotDivisor { m, p, gcd });
    }
    if k as u64 > p - 1 {
        return Err(Error::KOutOfRange { k, n: p as usize - 1 });
    }
    let h = PowerResidueStructure::new(modulus, m)?;
    let s = h.order() as usize;
    let subgroup = count_newton(&ValuedDomain::subgroup(&h), k.min(s))?;
    let weights = composition_weights(m, k);
    let actual = count_odlyzko_stanley(modulus, m, k)?;
    Ok((0..p)
        .map(|b| {
            let claimed = subgroup
                .iter()
                .enumerate()
                .map(|(j, table)| table.get(b) * &weights[j][k])
                .sum();
            AuditRow { b, claimed, actual: actual.get(b).clone() }
        })
        .collect())
}

/// `T = sum_{x in F_p*} x^m`: `-1` when `(p-1) | m`, else `0`.
pub fn power_sum_of_units(modulus: PrimeModulus, m: u64) -> u64 {
    if m % modulus.group_order() == 0 {
        modulus.value() - 1
    } else {
        0
    }
}

#[cfg(test)]
mod tests;
