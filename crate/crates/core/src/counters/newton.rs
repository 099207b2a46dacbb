//! Counting through power sums and the signed Newton recurrence.
//!
//! With `P_i = sum mu X^(i v)` and `e_0 = 1`, the elementary layers satisfy
//! `k e_k = sum_{i=1..k} (-1)^(i-1) P_i * e_{k-i}` in the group ring; the
//! coefficient of `X^b` in `e_k` is the number of k-subsets summing to `b`.
//! Grouping the distinct-coordinate sieve by cycle type gives exactly this
//! recurrence: a cycle of length `i` contributes the power sum `P_i`.
//!
//! Every layer is divided by `k` exactly; a nonzero remainder is reported as
//! an error since it would mean the sieve produced a non-integral count.
//!
//! Layers are stored per orbit of the multiplicative stabilizer of the
//! domain, which for m-th power instances shrinks the state from `p`
//! residues to `1 + gcd(m, p - 1)` orbits without changing any value.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::{CountTable, ValuedDomain};
use crate::error::{Error, Result};
use crate::field::PrimeModulus;

/// Orbits of `Z/p` under multiplication by the largest subgroup `G` of
/// `F_p*` that maps the domain onto itself (multiplicities included).
#[derive(Debug, Clone)]
pub struct Symmetry {
    modulus: PrimeModulus,
    stabilizer_order: u64,
    orbit_of: Vec<u32>,
    reps: Vec<u64>,
}

impl Symmetry {
    pub fn of(domain: &ValuedDomain) -> Self {
        let modulus = domain.modulus();
        let p = modulus.value();
        let order = modulus.group_order();
        let root = modulus.primitive_root();

        let mut mult = vec![0u64; p as usize];
        for &(v, mu) in domain.items() {
            mult[v as usize] = mu;
        }
        let stabilizer_order = modulus
            .group_order_divisors()
            .into_iter()
            .rev()
            .find(|&t| {
                let g = modulus.pow(root, order / t);
                domain.items().iter().all(|&(v, mu)| mult[modulus.mul(g, v) as usize] == mu)
            })
            .unwrap_or(1);

        // cosets of G are the residues of the discrete log mod (p-1)/t
        let cosets = order / stabilizer_order;
        let mut orbit_of = vec![0u32; p as usize];
        let mut reps = Vec::with_capacity(cosets as usize + 1);
        reps.push(0);
        let mut x = 1u64;
        for j in 0..order {
            let c = j % cosets;
            orbit_of[x as usize] = 1 + c as u32;
            if j < cosets {
                reps.push(x);
            }
            x = modulus.mul(x, root);
        }
        Self { modulus, stabilizer_order, orbit_of, reps }
    }

    /// Orbits are singletons; used to check the reduction against the plain recurrence.
    pub fn trivial(modulus: PrimeModulus) -> Self {
        let p = modulus.value();
        Self {
            modulus,
            stabilizer_order: 1,
            orbit_of: (0..p as u32).collect(),
            reps: (0..p).collect(),
        }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn stabilizer_order(&self) -> u64 {
        self.stabilizer_order
    }

    pub fn orbit_count(&self) -> usize {
        self.reps.len()
    }

    pub fn orbit_of(&self, b: u64) -> usize {
        self.orbit_of[b as usize] as usize
    }
}

/// Sparse power sum `P_i`: merged `(position, weight)` pairs.
fn power_sum(domain: &ValuedDomain, i: usize) -> Vec<(u64, u64)> {
    let modulus = domain.modulus();
    let scale = (i as u64) % modulus.value();
    let mut terms: Vec<(u64, u64)> =
        domain.items().iter().map(|&(v, mu)| (modulus.mul(scale, v), mu)).collect();
    terms.sort_unstable();
    terms.dedup_by(|next, kept| {
        if next.0 == kept.0 {
            kept.1 += next.1;
            true
        } else {
            false
        }
    });
    terms
}

pub fn count_newton(domain: &ValuedDomain, k_max: usize) -> Result<Vec<CountTable>> {
    count_newton_with(domain, k_max, &Symmetry::of(domain))
}

/// The recurrence evaluated over a caller-supplied orbit structure.
///
/// `symmetry` must be invariant for the domain; [`Symmetry::trivial`] always is.
pub fn count_newton_with(domain: &ValuedDomain, k_max: usize, symmetry: &Symmetry) -> Result<Vec<CountTable>> {
    domain.check_k(k_max)?;
    let modulus = domain.modulus();
    let orbits = symmetry.orbit_count();
    let powers: Vec<Vec<(u64, u64)>> = (0..=k_max).map(|i| if i == 0 { Vec::new() } else { power_sum(domain, i) }).collect();

    let mut layers: Vec<Vec<BigInt>> = Vec::with_capacity(k_max + 1);
    let mut first = vec![BigInt::zero(); orbits];
    first[0] = BigInt::from(1);
    layers.push(first);

    for k in 1..=k_max {
        let mut acc = vec![BigInt::zero(); orbits];
        for (i, terms) in powers.iter().enumerate().take(k + 1).skip(1) {
            let prev = &layers[k - i];
            let add = i % 2 == 1;
            for (o, &rep) in symmetry.reps.iter().enumerate() {
                let slot = &mut acc[o];
                for &(pos, w) in terms {
                    let src = &prev[symmetry.orbit_of(modulus.sub(rep, pos))];
                    if src.is_zero() {
                        continue;
                    }
                    let t = src * w;
                    if add {
                        *slot += t;
                    } else {
                        *slot -= t;
                    }
                }
            }
        }
        let divisor = BigInt::from(k);
        let mut layer = Vec::with_capacity(orbits);
        for (o, v) in acc.into_iter().enumerate() {
            let (q, r) = v.div_rem(&divisor);
            if !r.is_zero() || q.is_negative() {
                return Err(Error::NonIntegral { k, b: symmetry.reps[o] });
            }
            layer.push(q);
        }
        layers.push(layer);
    }

    let p = modulus.value();
    Ok(layers
        .into_iter()
        .enumerate()
        .map(|(k, layer)| {
            let per_orbit: Vec<BigUint> = layer.into_iter().map(|v| v.to_biguint().unwrap_or_default()).collect();
            let counts = (0..p).map(|b| per_orbit[symmetry.orbit_of(b)].clone()).collect();
            CountTable::new(k, counts)
        })
        .collect())
}
