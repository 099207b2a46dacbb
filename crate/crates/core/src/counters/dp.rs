use num_bigint::BigUint;
use num_traits::Zero;

use super::{CountTable, ValuedDomain};
use crate::error::Result;

/// Subset-sum dynamic program over `(k, b)`.
///
/// Each copy of an item with value `v` is either skipped or taken, which
/// shifts layer `j - 1` by `v` into layer `j`.
pub fn count_dp(domain: &ValuedDomain, k_max: usize) -> Result<Vec<CountTable>> {
    domain.check_k(k_max)?;
    let p = domain.modulus().value() as usize;
    let mut layers = vec![vec![BigUint::zero(); p]; k_max + 1];
    layers[0][0] = BigUint::from(1u32);
    for &(v, mu) in domain.items() {
        let v = v as usize;
        for _ in 0..mu {
            for j in (1..=k_max).rev() {
                let (below, above) = layers.split_at_mut(j);
                let (src, dst) = (&below[j - 1], &mut above[0]);
                for (b, c) in src.iter().enumerate() {
                    if !c.is_zero() {
                        let t = if b + v >= p { b + v - p } else { b + v };
                        dst[t] += c;
                    }
                }
            }
        }
    }
    Ok(layers.into_iter().enumerate().map(|(k, c)| CountTable::new(k, c)).collect())
}
