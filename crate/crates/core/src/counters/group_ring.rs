use std::ops::AddAssign;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::field::PrimeModulus;

/// An element of the group ring over `Z/p`: coefficients indexed by residue,
/// with multiplication by cyclic convolution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingPoly<C = BigInt> {
    modulus: PrimeModulus,
    coeffs: Vec<C>,
}

impl<C> GroupRingPoly<C>
where
    C: Clone + Zero + for<'a> AddAssign<&'a C>,
    for<'a> &'a C: std::ops::Mul<&'a C, Output = C>,
{
    pub fn zero(modulus: PrimeModulus) -> Self {
        Self { modulus, coeffs: vec![C::zero(); modulus.value() as usize] }
    }

    /// `coeff * X^exponent`.
    pub fn monomial(modulus: PrimeModulus, exponent: u64, coeff: C) -> Self {
        let mut out = Self::zero(modulus);
        out.coeffs[modulus.reduce(exponent) as usize] = coeff;
        out
    }

    pub fn one(modulus: PrimeModulus) -> Self
    where
        C: num_traits::One,
    {
        Self::monomial(modulus, 0, C::one())
    }

    pub fn from_coeffs(modulus: PrimeModulus, coeffs: Vec<C>) -> Self {
        assert_eq!(coeffs.len() as u64, modulus.value(), "coefficient vector must have length p");
        Self { modulus, coeffs }
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn coeff(&self, b: u64) -> &C {
        &self.coeffs[b as usize]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<C> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Cyclic convolution. Zero coefficients of `self` are skipped, so a
    /// sparse left operand costs `O(nnz * p)`.
    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let p = self.coeffs.len();
        let mut out = Self::zero(self.modulus);
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            for (b, cb) in other.coeffs.iter().enumerate() {
                if cb.is_zero() {
                    continue;
                }
                let idx = if a + b >= p { a + b - p } else { a + b };
                out.coeffs[idx] += &(ca * cb);
            }
        }
        out
    }

    /// In-place multiplication by `1 + X^v`.
    pub fn mul_one_plus_monomial(&mut self, v: u64) {
        let p = self.coeffs.len();
        let v = self.modulus.reduce(v) as usize;
        let shifted: Vec<C> = (0..p).map(|b| self.coeffs[(b + p - v) % p].clone()).collect();
        for (c, s) in self.coeffs.iter_mut().zip(&shifted) {
            *c += s;
        }
    }
}

impl<C> AddAssign<&GroupRingPoly<C>> for GroupRingPoly<C>
where
    C: for<'a> AddAssign<&'a C>,
{
    fn add_assign(&mut self, rhs: &GroupRingPoly<C>) {
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}
