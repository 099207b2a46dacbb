//! Prime-field arithmetic, the m-th power residue subgroup, and numeric
//! additive character sums.
//!
//! Field elements are machine words; only counts need arbitrary precision.
//! Character sums are evaluated in double precision with compensated
//! summation and carry an explicit rounding bound.

use std::f64::consts::TAU;

use num_integer::Integer;

use crate::counters::ValuedDomain;
use crate::error::{Error, Result};

/// An odd prime `p`, validated at construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus {
    p: u64,
}

const MILLER_RABIN_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
const TRIAL_DIVISION_LIMIT: u64 = 1 << 20;

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p < 3 {
            return if p == 2 {
                Err(Error::EvenModulus(2))
            } else {
                Err(Error::ModulusTooSmall(p))
            };
        }
        if p % 2 == 0 {
            return Err(Error::EvenModulus(p));
        }
        let limit = p.isqrt().min(TRIAL_DIVISION_LIMIT);
        let mut d = 3;
        while d <= limit {
            if p % d == 0 {
                return Err(Error::Composite { p, divisor: Some(d) });
            }
            d += 2;
        }
        if !is_probable_prime(p) {
            return Err(Error::Composite { p, divisor: None });
        }
        Ok(Self { p })
    }

    #[inline]
    pub fn value(&self) -> u64 {
        self.p
    }

    /// `p - 1`, the order of the multiplicative group.
    #[inline]
    pub fn group_order(&self) -> u64 {
        self.p - 1
    }

    #[inline]
    pub fn reduce(&self, x: u64) -> u64 {
        x % self.p
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.p as u128) as u64
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        let (a, b) = (a % self.p, b % self.p);
        if a >= b {
            a - b
        } else {
            self.p - (b - a)
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        mul_mod(a, b, self.p)
    }

    pub fn pow(&self, base: u64, exp: u64) -> u64 {
        pow_mod(base, exp, self.p)
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: u64) -> Option<u64> {
        let a = a % self.p;
        (a != 0).then(|| self.pow(a, self.p - 2))
    }

    /// Smallest generator of the multiplicative group.
    pub fn primitive_root(&self) -> u64 {
        let order = self.group_order();
        let primes = prime_factors(order);
        (2..self.p)
            .find(|&g| primes.iter().all(|&q| self.pow(g, order / q) != 1))
            .unwrap_or(1)
    }

    /// Ascending divisors of `p - 1`.
    pub fn group_order_divisors(&self) -> Vec<u64> {
        divisors(self.group_order())
    }
}

impl std::fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        self.p.fmt(f)
    }
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    let mut b = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        exp >>= 1;
    }
    acc
}

// Deterministic for all u64 with the first twelve prime bases.
fn is_probable_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &q in &MILLER_RABIN_BASES {
        if n % q == 0 {
            return n == q;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MILLER_RABIN_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors in ascending order.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            out.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += if q == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// All positive divisors of `n` in ascending order.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// The image `H = {x^m : x in F_p*}`, a subgroup of index `d = gcd(m, p-1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerResidueStructure {
    modulus: PrimeModulus,
    m: u64,
    d: u64,
    s: u64,
    members: Vec<u64>,
}

impl PowerResidueStructure {
    pub fn new(modulus: PrimeModulus, m: u64) -> Result<Self> {
        if m == 0 {
            return Err(Error::ZeroExponent);
        }
        let order = modulus.group_order();
        let d = m.gcd(&order);
        let s = order / d;
        let mut seen = vec![false; modulus.value() as usize];
        for x in 1..modulus.value() {
            seen[modulus.pow(x, m) as usize] = true;
        }
        let members: Vec<u64> = (1..modulus.value()).filter(|&h| seen[h as usize]).collect();
        debug_assert_eq!(members.len() as u64, s);
        Ok(Self { modulus, m, d, s, members })
    }

    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    pub fn exponent(&self) -> u64 {
        self.m
    }

    /// `gcd(m, p - 1)`: each member has exactly this many m-th roots.
    pub fn index(&self) -> u64 {
        self.d
    }

    /// `|H| = (p - 1) / d`.
    pub fn order(&self) -> u64 {
        self.s
    }

    /// Ascending canonical representatives in `[1, p - 1]`.
    pub fn members(&self) -> &[u64] {
        &self.members
    }

    pub fn contains(&self, h: u64) -> bool {
        self.members.binary_search(&self.modulus.reduce(h)).is_ok()
    }
}

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Default, Clone, Copy)]
struct CompensatedSum {
    sum: f64,
    carry: f64,
}

impl CompensatedSum {
    fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.carry += (self.sum - t) + x;
        } else {
            self.carry += (x - t) + self.sum;
        }
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum + self.carry
    }
}

/// `cos` and `sin` of `2*pi*j/p` for every residue `j`.
struct UnitRoots {
    cos: Vec<f64>,
    sin: Vec<f64>,
}

impl UnitRoots {
    fn new(p: u64) -> Self {
        let pf = p as f64;
        let (cos, sin) = (0..p)
            .map(|j| {
                let theta = TAU * j as f64 / pf;
                (theta.cos(), theta.sin())
            })
            .unzip();
        Self { cos, sin }
    }
}

// Per unit-magnitude term: angle formation plus cos/sin, plus the
// compensated accumulation and the final hypot, all well inside 32 ulps.
const ULPS_PER_TERM: f64 = 32.0;

/// Rounding bound for a character sum whose terms have total weight `weight`.
pub fn character_sum_error(weight: u64) -> f64 {
    ULPS_PER_TERM * f64::EPSILON * (weight as f64 + 1.0)
}

/// `|sum_{x in F_p*} e(a x^m / p)|`, summed term by term over all `x`.
pub fn monomial_exp_sum(modulus: PrimeModulus, m: u64, a: u64) -> Result<f64> {
    if m == 0 {
        return Err(Error::ZeroExponent);
    }
    let p = modulus.value();
    if a % p == 0 {
        return Err(Error::PrincipalCharacter { p, a });
    }
    let pf = p as f64;
    let mut re = CompensatedSum::default();
    let mut im = CompensatedSum::default();
    for x in 1..p {
        let r = modulus.mul(a, modulus.pow(x, m));
        let theta = TAU * r as f64 / pf;
        re.add(theta.cos());
        im.add(theta.sin());
    }
    Ok(re.value().hypot(im.value()))
}

/// Magnitudes of every nontrivial additive character sum over a domain.
#[derive(Debug, Clone, PartialEq)]
pub struct CharacterSumProfile {
    modulus: PrimeModulus,
    /// Index `a - 1` holds `|sum_x mu(x) e(a x / p)|`.
    magnitudes: Vec<f64>,
    phi: f64,
    argmax: u64,
    error_bound: f64,
}

impl CharacterSumProfile {
    pub fn modulus(&self) -> PrimeModulus {
        self.modulus
    }

    /// Magnitude at character index `a` in `1..p`.
    pub fn magnitude(&self, a: u64) -> f64 {
        self.magnitudes[(a - 1) as usize]
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    /// `max_a |sum_{x in D} mu(x) e(a x / p)|` over `a != 0`.
    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Smallest `a` attaining `phi`.
    pub fn argmax(&self) -> u64 {
        self.argmax
    }

    pub fn error_bound(&self) -> f64 {
        self.error_bound
    }
}

pub fn character_profile(domain: &ValuedDomain) -> Result<CharacterSumProfile> {
    if domain.is_empty() {
        return Err(Error::EmptyDomain);
    }
    let modulus = domain.modulus();
    let p = modulus.value();
    let roots = UnitRoots::new(p);
    let mut magnitudes = Vec::with_capacity(p as usize - 1);
    for a in 1..p {
        let mut re = CompensatedSum::default();
        let mut im = CompensatedSum::default();
        for &(v, mu) in domain.items() {
            let j = modulus.mul(a, v) as usize;
            let w = mu as f64;
            re.add(w * roots.cos[j]);
            im.add(w * roots.sin[j]);
        }
        magnitudes.push(re.value().hypot(im.value()));
    }
    let (idx, phi) = magnitudes
        .iter()
        .copied()
        .enumerate()
        .fold((0, f64::NEG_INFINITY), |best, (i, v)| if v > best.1 { (i, v) } else { best });
    Ok(CharacterSumProfile {
        modulus,
        magnitudes,
        phi,
        argmax: idx as u64 + 1,
        error_bound: character_sum_error(domain.size() as u64),
    })
}
