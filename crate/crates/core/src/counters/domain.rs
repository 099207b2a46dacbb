use crate::error::{Error, Result};
use crate::field::{PowerResidueStructure, PrimeModulus};

/// A multiset of residues mod `p`: distinct values, each with a positive
/// multiplicity. Items are kept in ascending value order.
///
/// The m-th power instance stores each `h` in `H` with multiplicity
/// `d = gcd(m, p - 1)`, one copy per m-th root of `h`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuedDomain {
    modulus: PrimeModulus,
    items: Vec<(u64, u64)>,
    size: usize,
}

impl ValuedDomain {
    pub fn new(modulus: PrimeModulus, items: impl IntoIterator<Item = (u64, u64)>) -> Result<Self> {
        let mut items: Vec<(u64, u64)> = items
            .into_iter()
            .map(|(v, mu)| (modulus.reduce(v), mu))
            .collect();
        items.sort_unstable();
        for w in items.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::DuplicateValue { value: w[0].0 });
            }
        }
        if let Some(&(value, _)) = items.iter().find(|(_, mu)| *mu == 0) {
            return Err(Error::ZeroMultiplicity { value });
        }
        let size = items.iter().map(|&(_, mu)| mu as usize).sum();
        Ok(Self { modulus, items, size })
    }

    /// A plain set: every value with multiplicity one.
    pub fn from_set(modulus: PrimeModulus, values: &[u64]) -> Result<Self> {
        Self::new(modulus, values.iter().map(|&v| (v, 1)))
    }

    /// All of `F_p*`.
    pub fn units(modulus: PrimeModulus) -> Self {
        let items = (1..modulus.value()).map(|v| (v, 1)).collect();
        Self { modulus, items, size: modulus.group_order() as usize }
    }

    /// `{(h, d) : h in H}`: the m-th powers of `F_p*` with their preimage counts.
    pub fn power_image(h: &PowerResidueStructure) -> Self {
        let d = h.index();
        let items = h.members().iter().map(|&v| (v, d)).collect();
        Self { modulus: h.modulus(), items, size: h.modulus().group_order() as usize }
    }

    /// The subgroup `H` itself, each member once.
    pub fn subgroup(h: &PowerResidueStructure) -> Self {
        let items = h.members().iter().map(|&v| (v, 1)).collect();
        Self { modulus: h.modulus(), items, size: h.order() as usize }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn items(&self) -> &[(u64, u64)] {
        &self.items
    }

    /// Total size `n`, counting multiplicity.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn multiplicity(&self, value: u64) -> u64 {
        let v = self.modulus.reduce(value);
        self.items
            .binary_search_by_key(&v, |&(x, _)| x)
            .map_or(0, |i| self.items[i].1)
    }

    /// True for an honest subset of `F_p*`: no zero, no repeats.
    pub fn is_subset_of_units(&self) -> bool {
        self.items.iter().all(|&(v, mu)| v != 0 && mu == 1)
    }

    pub(crate) fn check_k(&self, k: usize) -> Result<()> {
        if k > self.size {
            Err(Error::KOutOfRange { k, n: self.size })
        } else {
            Ok(())
        }
    }
}

impl std::fmt::Display for ValuedDomain {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .items
            .iter()
            .map(|&(v, mu)| if mu == 1 { v.to_string() } else { format!("{v}:{mu}") })
            .collect();
        f.write_str(&parts.join(","))
    }
}
