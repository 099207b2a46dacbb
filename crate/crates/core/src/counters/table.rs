use num_bigint::BigUint;
use num_traits::Zero;

/// Exact counts `N(k, b, D)` for one `k`, indexed by the target `b` in `Z/p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    k: usize,
    counts: Vec<BigUint>,
}

impl CountTable {
    pub fn new(k: usize, counts: Vec<BigUint>) -> Self {
        Self { k, counts }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn get(&self, b: u64) -> &BigUint {
        &self.counts[b as usize]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    pub fn min(&self) -> BigUint {
        self.counts.iter().min().cloned().unwrap_or_default()
    }

    /// Targets with no representation.
    pub fn unreachable(&self) -> Vec<u64> {
        (0..self.counts.len() as u64).filter(|&b| self.counts[b as usize].is_zero()).collect()
    }

    /// Nonzero entries as `(b, count)`.
    pub fn support(&self) -> impl Iterator<Item = (u64, &BigUint)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(b, c)| (b as u64, c))
    }

    pub fn into_counts(self) -> Vec<BigUint> {
        self.counts
    }
}
