//! Cycle types of the symmetric group and the exact identities built on them.

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Exact rational scalar, always in lowest terms.
pub type ExactScalar = BigRational;

/// A cycle type `(c_1, ..., c_k)` with `sum i c_i = k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PartitionType {
    /// `counts[i - 1]` is the number of cycles of length `i`.
    counts: Vec<u32>,
}

impl PartitionType {
    /// Builds a type from cycle counts; `None` if `sum i c_i` is zero.
    pub fn from_counts(counts: Vec<u32>) -> Option<Self> {
        let k: u64 = counts.iter().enumerate().map(|(i, &c)| (i as u64 + 1) * c as u64).sum();
        if k == 0 {
            return None;
        }
        let mut counts = counts;
        counts.resize(k as usize, 0);
        Some(Self { counts })
    }

    fn from_parts(parts: &[u32], k: usize) -> Self {
        let mut counts = vec![0u32; k];
        for &part in parts {
            counts[part as usize - 1] += 1;
        }
        Self { counts }
    }

    pub fn k(&self) -> usize {
        self.counts.len()
    }

    /// `c_i` for cycle length `i >= 1`.
    pub fn count(&self, i: usize) -> u32 {
        self.counts.get(i.wrapping_sub(1)).copied().unwrap_or(0)
    }

    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// Number of cycles including fixed points.
    pub fn cycles(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// `(-1)^(k - cycles)`.
    pub fn sign(&self) -> i32 {
        if (self.k() as u32 - self.cycles()) % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Number of permutations with this cycle type.
    pub fn class_size(&self) -> BigUint {
        let mut denom = BigUint::one();
        for (idx, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                denom *= num_traits::pow(BigUint::from(idx + 1), c as usize) * factorial(c as usize);
            }
        }
        factorial(self.k()) / denom
    }

    /// Parts in descending order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (idx, &c) in self.counts.iter().enumerate().rev() {
            out.extend(std::iter::repeat(idx as u32 + 1).take(c as usize));
        }
        out
    }
}

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// Every cycle type of `S_k` once, in descending lexicographic order of
/// `(c_k, ..., c_1)`: the single k-cycle first, the identity last.
pub fn enumerate_types(k: usize) -> PartitionTypes {
    PartitionTypes { k, parts: if k == 0 { None } else { Some(vec![k as u32]) } }
}

#[derive(Debug, Clone)]
pub struct PartitionTypes {
    k: usize,
    parts: Option<Vec<u32>>,
}

impl Iterator for PartitionTypes {
    type Item = PartitionType;

    fn next(&mut self) -> Option<PartitionType> {
        let parts = self.parts.as_mut()?;
        let out = PartitionType::from_parts(parts, self.k);
        // descend: lower the rightmost part above 1, refill greedily
        let mut ones = 0u32;
        while parts.last() == Some(&1) {
            parts.pop();
            ones += 1;
        }
        match parts.pop() {
            None => self.parts = None,
            Some(last) => {
                let part = last - 1;
                parts.push(part);
                let mut rest = ones + 1;
                while rest > 0 {
                    let take = part.min(rest);
                    parts.push(take);
                    rest -= take;
                }
            }
        }
        Some(out)
    }
}

/// `C_k(t_1, ..., t_k) = sum over types of N(c) prod t_i^(c_i)`.
///
/// Panics if fewer than `k` variables are supplied.
pub fn cycle_index_eval(k: usize, t: &[ExactScalar]) -> ExactScalar {
    assert!(t.len() >= k, "need {k} variables, got {}", t.len());
    let mut total = ExactScalar::zero();
    for ty in enumerate_types(k) {
        let mut term = ExactScalar::from_integer(BigInt::from(ty.class_size()));
        for (idx, &c) in ty.counts().iter().enumerate() {
            if c > 0 {
                term *= num_traits::pow(t[idx].clone(), c as usize);
            }
        }
        total += term;
    }
    total
}

/// `(x)_k = x (x-1) ... (x-k+1)`, with `(x)_0 = 1`.
pub fn falling_factorial(x: &ExactScalar, k: usize) -> ExactScalar {
    (0..k).fold(ExactScalar::one(), |acc, j| acc * (x - ExactScalar::from_integer(BigInt::from(j))))
}

/// `C(x, k) = (x)_k / k!`.
pub fn gen_binomial(x: &ExactScalar, k: usize) -> ExactScalar {
    falling_factorial(x, k) / ExactScalar::from_integer(BigInt::from(factorial(k)))
}

/// Two exact sides of an identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub lhs: BigInt,
    pub rhs: BigInt,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.lhs == self.rhs
    }
}

/// `W[j][k]`: sum over compositions `i_1 + ... + i_j = k` with
/// `1 <= i_t <= n` of `prod C(n, i_t)`. Ways to draw `k` balls from `j`
/// chosen boxes of size `n`, every chosen box nonempty.
pub fn composition_weights(n: u64, k_max: usize) -> Vec<Vec<BigUint>> {
    let choose: Vec<BigUint> = (0..=k_max).map(|i| binomial(BigUint::from(n), BigUint::from(i))).collect();
    let mut w = vec![vec![BigUint::zero(); k_max + 1]; k_max + 1];
    w[0][0] = BigUint::one();
    for j in 1..=k_max {
        for k in j..=k_max {
            let mut acc = BigUint::zero();
            // cap i at n: C(n, i) vanishes beyond it
            for i in 1..=(k - (j - 1)).min(n as usize) {
                let prev = &w[j - 1][k - i];
                if !prev.is_zero() {
                    acc += prev * &choose[i];
                }
            }
            w[j][k] = acc;
        }
    }
    w
}

/// Double counting of k-subsets of `n * s` balls sorted into `s` boxes of size `n`:
/// `C(ns, k) = sum_j C(s, j) W_n(j, k)`.
pub fn box_identity_check(n: u64, s: u64, k: usize) -> IdentityCheck {
    let lhs = binomial(BigUint::from(n * s), BigUint::from(k));
    let w = composition_weights(n, k);
    let rhs: BigUint = (0..=k.min(s as usize))
        .map(|j| binomial(BigUint::from(s), BigUint::from(j)) * &w[j][k])
        .sum();
    IdentityCheck { name: "box", lhs: lhs.into(), rhs: rhs.into() }
}

/// The distinct-coordinate sieve with `f = 1` on `D^k`, `|D| = n`:
/// `sum over types of sign * N(c) * n^(cycles) = (n)_k`.
pub fn sieve_identity_check(n: u64, k: usize) -> IdentityCheck {
    let nb = BigInt::from(n);
    let lhs: BigInt = enumerate_types(k)
        .map(|ty| {
            let term = BigInt::from(ty.class_size()) * num_traits::pow(nb.clone(), ty.cycles() as usize);
            if ty.sign() > 0 {
                term
            } else {
                -term
            }
        })
        .sum();
    let rhs = (0..k as u64).fold(BigInt::one(), |acc, j| acc * (BigInt::from(n) - j));
    IdentityCheck { name: "sieve", lhs, rhs }
}

/// Cycle index at `t_i = q` against the rising factorial `(q + k - 1)_k`.
pub fn cycle_index_identity(k: usize, q: &ExactScalar) -> (ExactScalar, ExactScalar) {
    let lhs = cycle_index_eval(k, &vec![q.clone(); k]);
    let rhs = falling_factorial(&(q + ExactScalar::from_integer(BigInt::from(k as i64 - 1))), k);
    (lhs, rhs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactScalar {
        ExactScalar::from_integer(v.into())
    }

    fn types(k: usize) -> Vec<Vec<u32>> {
        enumerate_types(k).map(|t| t.parts()).collect()
    }

    #[test]
    fn enumeration_examples() {
        assert_eq!(types(2), vec![vec![2], vec![1, 1]]);
        assert_eq!(types(4), vec![vec![4], vec![3, 1], vec![2, 2], vec![2, 1, 1], vec![1, 1, 1, 1]]);
        assert_eq!(enumerate_types(10).count(), 42);
        assert_eq!(enumerate_types(1).count(), 1);
        assert_eq!(enumerate_types(0).count(), 0);
    }

    // p(k) by the pentagonal-number-free recurrence on largest part
    fn partition_count(k: usize) -> u64 {
        let mut table = vec![vec![0u64; k + 1]; k + 1];
        for m in 0..=k {
            table[0][m] = 1;
        }
        for n in 1..=k {
            for m in 1..=k {
                table[n][m] = table[n][m - 1] + if m <= n { table[n - m][m] } else { 0 };
            }
        }
        table[k][k]
    }

    #[test]
    fn enumeration_order_and_counts() {
        for k in 1..=16 {
            let all: Vec<PartitionType> = enumerate_types(k).collect();
            assert_eq!(all.len() as u64, partition_count(k), "k = {k}");
            for t in &all {
                let weight: usize = t.counts().iter().enumerate().map(|(i, &c)| (i + 1) * c as usize).sum();
                assert_eq!(weight, k);
            }
            for w in all.windows(2) {
                let a: Vec<u32> = w[0].counts().iter().rev().copied().collect();
                let b: Vec<u32> = w[1].counts().iter().rev().copied().collect();
                assert!(a > b, "order broken at k = {k}: {a:?} then {b:?}");
            }
        }
    }

    #[test]
    fn class_sizes() {
        let t = PartitionType::from_counts(vec![0, 1]).unwrap();
        assert_eq!(t.class_size(), BigUint::from(1u32));
        let t = PartitionType::from_counts(vec![0, 0, 1]).unwrap();
        assert_eq!(t.class_size(), BigUint::from(2u32));
        let t = PartitionType::from_counts(vec![2, 1]).unwrap();
        assert_eq!((t.k(), t.class_size()), (4, BigUint::from(6u32)));
        assert_eq!(t.sign(), -1);
        assert!(PartitionType::from_counts(vec![0, 0]).is_none());
    }

    #[test]
    fn class_sizes_sum_to_factorial() {
        for k in 1..=14 {
            let total: BigUint = enumerate_types(k).map(|t| t.class_size()).sum();
            assert_eq!(total, factorial(k));
            for t in enumerate_types(k) {
                let mut denom = BigUint::one();
                for (i, &c) in t.counts().iter().enumerate() {
                    denom *= num_traits::pow(BigUint::from(i + 1), c as usize) * factorial(c as usize);
                }
                assert_eq!(t.class_size() * denom, factorial(k));
            }
        }
    }

    #[test]
    fn cycle_index_examples() {
        assert_eq!(cycle_index_eval(2, &[int(3), int(3)]), int(12));
        let q = ExactScalar::new(7.into(), 3.into());
        assert_eq!(cycle_index_eval(1, &[q.clone()]), q);
        assert_eq!(cycle_index_eval(3, &[int(2), int(2), int(2)]), int(24));
        assert_eq!(cycle_index_identity(6, &int(4)), (int(60480), int(60480)));
    }

    #[test]
    fn falling_and_binomial() {
        assert_eq!(falling_factorial(&int(5), 2), int(20));
        assert_eq!(falling_factorial(&ExactScalar::new(1.into(), 2.into()), 2), ExactScalar::new((-1).into(), 4.into()));
        assert_eq!(falling_factorial(&int(4), 2), int(12));
        assert_eq!(falling_factorial(&int(9), 0), int(1));
        assert_eq!(gen_binomial(&int(4), 2), int(6));
        assert_eq!(gen_binomial(&int(0), 3), int(0));
        assert_eq!(gen_binomial(&int(-1), 3), int(-1));
    }

    #[test]
    fn box_examples() {
        let c = box_identity_check(2, 2, 2);
        assert_eq!((c.lhs.clone(), c.rhs.clone()), (BigInt::from(6), BigInt::from(6)));
        let w = composition_weights(2, 2);
        assert_eq!(w[2][2], BigUint::from(4u32));
        assert_eq!(w[1][2], BigUint::from(1u32));
        let c = box_identity_check(1, 5, 3);
        assert_eq!(c.lhs, BigInt::from(10));
        assert!(c.holds());
        let c = box_identity_check(3, 4, 0);
        assert_eq!((c.lhs.clone(), c.rhs.clone()), (BigInt::from(1), BigInt::from(1)));
    }

    #[test]
    fn sieve_examples() {
        assert_eq!(sieve_identity_check(4, 2).lhs, BigInt::from(12));
        let c = sieve_identity_check(3, 4);
        assert_eq!((c.lhs.clone(), c.holds()), (BigInt::zero(), true));
        let c = sieve_identity_check(10, 3);
        assert_eq!((c.lhs.clone(), c.holds()), (BigInt::from(720), true));
    }
}
