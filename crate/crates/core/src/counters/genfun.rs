use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::Signed;

use super::{CountTable, GroupRingPoly, ValuedDomain};
use crate::error::Result;

/// Expands `prod (1 + t X^v)^mu` in `(Z[t]/t^(k_max+1))[X]/(X^p - 1)`.
///
/// The accumulator is a list of group-ring layers, one per power of `t`;
/// each item's factor is multiplied in by cyclic convolution.
pub fn count_genfun(domain: &ValuedDomain, k_max: usize) -> Result<Vec<CountTable>> {
    domain.check_k(k_max)?;
    let modulus = domain.modulus();
    let mut acc: Vec<GroupRingPoly> = (0..=k_max)
        .map(|k| if k == 0 { GroupRingPoly::one(modulus) } else { GroupRingPoly::zero(modulus) })
        .collect();
    for &(v, mu) in domain.items() {
        let top = (mu as usize).min(k_max);
        // layer i of (1 + t X^v)^mu is C(mu, i) X^(i v)
        let factor: Vec<GroupRingPoly> = (0..=top)
            .map(|i| {
                let c = binomial(BigInt::from(mu), BigInt::from(i));
                GroupRingPoly::monomial(modulus, modulus.mul(i as u64 % modulus.value(), v), c)
            })
            .collect();
        let mut next = Vec::with_capacity(k_max + 1);
        for k in 0..=k_max {
            let mut layer = GroupRingPoly::zero(modulus);
            for (i, f) in factor.iter().enumerate().take(k.min(top) + 1) {
                if !acc[k - i].is_zero() {
                    layer += &f.mul(&acc[k - i]);
                }
            }
            next.push(layer);
        }
        acc = next;
    }
    Ok(acc
        .into_iter()
        .enumerate()
        .map(|(k, layer)| {
            let counts = layer
                .into_coeffs()
                .into_iter()
                .map(|c| {
                    debug_assert!(!c.is_negative());
                    c.to_biguint().unwrap_or_default()
                })
                .collect();
            CountTable::new(k, counts)
        })
        .collect())
}

