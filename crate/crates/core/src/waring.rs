//! Waring numbers modulo a prime.
//!
//! `gamma(m, p)` is the least `k` such that every residue is a sum of `k`
//! m-th powers, zero allowed. The distinct variant asks for `k` pairwise
//! distinct nonzero bases and is read off the exact count tables.

use std::collections::HashSet;
use std::fmt;

use rustfft::num_complex::Complex;
use rustfft::FftPlanner;

use crate::counters::count_odlyzko_stanley_upto;
use crate::error::{Error, Result};
use crate::field::{PowerResidueStructure, PrimeModulus};

/// Above this modulus the sumset step switches to cyclic convolution.
pub const FFT_THRESHOLD: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum WaringKind {
    /// Sums of `k` m-th powers, `0^m = 0` allowed.
    Ordinary,
    /// Sums of exactly `k` nonzero m-th powers.
    OrdinaryNonzero,
    /// Sums of m-th powers of `k` distinct elements of `F_p*`.
    Distinct,
}

impl WaringKind {
    pub fn name(self) -> &'static str {
        match self {
            WaringKind::Ordinary => "ordinary",
            WaringKind::OrdinaryNonzero => "ordinary-nonzero",
            WaringKind::Distinct => "distinct",
        }
    }
}

impl fmt::Display for WaringKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WaringResult {
    pub kind: WaringKind,
    pub p: u64,
    pub m: u64,
    /// `None` when no `k` represents every residue.
    pub value: Option<usize>,
    /// Unreachable residues for each probed `k`, in increasing `k`.
    pub coverage: Vec<(usize, Vec<u64>)>,
}

impl WaringResult {
    pub fn unreachable(&self, k: usize) -> Option<&[u64]> {
        self.coverage.iter().find(|(j, _)| *j == k).map(|(_, u)| u.as_slice())
    }
}

fn unreachable_of(reached: &[bool]) -> Vec<u64> {
    reached.iter().enumerate().filter(|(_, &r)| !r).map(|(b, _)| b as u64).collect()
}

/// `{x^m : x in F_p*}` as a sorted list.
fn nonzero_powers(modulus: PrimeModulus, m: u64) -> Result<Vec<u64>> {
    Ok(PowerResidueStructure::new(modulus, m)?.members().to_vec())
}

fn sumset_direct(current: &[bool], step: &[u64], p: u64) -> Vec<bool> {
    let mut next = vec![false; p as usize];
    for (x, _) in current.iter().enumerate().filter(|(_, &r)| r) {
        for &h in step {
            let y = (x as u64 + h) % p;
            next[y as usize] = true;
        }
    }
    next
}

/// Cyclic sumset through an FFT product of indicator vectors.
struct FftSumset {
    p: usize,
    step_spectrum: Vec<Complex<f64>>,
    forward: std::sync::Arc<dyn rustfft::Fft<f64>>,
    inverse: std::sync::Arc<dyn rustfft::Fft<f64>>,
}

impl FftSumset {
    fn new(step: &[u64], p: u64) -> Self {
        let p = p as usize;
        let mut planner = FftPlanner::new();
        let forward = planner.plan_fft_forward(p);
        let inverse = planner.plan_fft_inverse(p);
        let mut step_spectrum = vec![Complex::new(0.0, 0.0); p];
        for &h in step {
            step_spectrum[h as usize].re = 1.0;
        }
        forward.process(&mut step_spectrum);
        Self { p, step_spectrum, forward, inverse }
    }

    fn apply(&self, current: &[bool]) -> Vec<bool> {
        let mut buf: Vec<Complex<f64>> = current.iter().map(|&r| Complex::new(if r { 1.0 } else { 0.0 }, 0.0)).collect();
        self.forward.process(&mut buf);
        for (x, s) in buf.iter_mut().zip(&self.step_spectrum) {
            *x *= s;
        }
        self.inverse.process(&mut buf);
        // entries are integer counts times p; any count >= 1 sits far above 0.5
        let scale = self.p as f64;
        buf.iter().map(|c| c.re / scale > 0.5).collect()
    }
}

enum Stepper {
    Direct(Vec<u64>, u64),
    Fft(FftSumset),
}

impl Stepper {
    fn new(step: Vec<u64>, p: u64, force_fft: bool) -> Self {
        if force_fft || (p > FFT_THRESHOLD && step.len() >= 64) {
            Stepper::Fft(FftSumset::new(&step, p))
        } else {
            Stepper::Direct(step, p)
        }
    }

    fn apply(&self, current: &[bool]) -> Vec<bool> {
        match self {
            Stepper::Direct(step, p) => sumset_direct(current, step, *p),
            Stepper::Fft(f) => f.apply(current),
        }
    }
}

fn ordinary_impl(modulus: PrimeModulus, m: u64, force_fft: bool) -> Result<WaringResult> {
    let p = modulus.value();
    let mut step = nonzero_powers(modulus, m)?;
    step.insert(0, 0);
    let mut reached = vec![false; p as usize];
    step.iter().for_each(|&h| reached[h as usize] = true);
    let stepper = Stepper::new(step, p, force_fft);
    let mut coverage = Vec::new();
    let mut k = 1;
    loop {
        let missing = unreachable_of(&reached);
        let done = missing.is_empty();
        coverage.push((k, missing));
        if done {
            return Ok(WaringResult { kind: WaringKind::Ordinary, p, m, value: Some(k), coverage });
        }
        reached = stepper.apply(&reached);
        k += 1;
    }
}

/// `gamma(m, p)` by iterated sumsets of `{x^m : x in F_p}`.
pub fn gamma_ordinary(modulus: PrimeModulus, m: u64) -> Result<WaringResult> {
    ordinary_impl(modulus, m, false)
}

/// [`gamma_ordinary`] with the convolution step forced at any size.
pub fn gamma_ordinary_fft(modulus: PrimeModulus, m: u64) -> Result<WaringResult> {
    ordinary_impl(modulus, m, true)
}

/// Least `k` such that every residue is a sum of exactly `k` nonzero m-th
/// powers. The sets are not monotone in `k`, so the search stops once a set
/// repeats.
pub fn gamma_ordinary_nonzero(modulus: PrimeModulus, m: u64) -> Result<WaringResult> {
    let p = modulus.value();
    let step = nonzero_powers(modulus, m)?;
    let mut reached = vec![false; p as usize];
    step.iter().for_each(|&h| reached[h as usize] = true);
    let stepper = Stepper::new(step, p, false);
    let mut seen = HashSet::new();
    let mut coverage = Vec::new();
    let mut k = 1;
    loop {
        let missing = unreachable_of(&reached);
        if missing.is_empty() {
            coverage.push((k, missing));
            return Ok(WaringResult { kind: WaringKind::OrdinaryNonzero, p, m, value: Some(k), coverage });
        }
        if !seen.insert(reached.clone()) {
            return Ok(WaringResult { kind: WaringKind::OrdinaryNonzero, p, m, value: None, coverage });
        }
        coverage.push((k, missing));
        reached = stepper.apply(&reached);
        k += 1;
    }
}

/// `gamma'(m, p)`: least `k` at which every `N*_m(k, b)` is positive.
///
/// Probes `k = 1..=p-1` until one covers `F_p`; `value` is `None` when none does.
pub fn gamma_distinct(modulus: PrimeModulus, m: u64) -> Result<WaringResult> {
    let full = distinct_coverage(modulus, m)?;
    let value = full.iter().find(|(_, u)| u.is_empty()).map(|(k, _)| *k);
    let coverage = match value {
        Some(k) => full.into_iter().take_while(|(j, _)| *j <= k).collect(),
        None => full,
    };
    Ok(WaringResult { kind: WaringKind::Distinct, p: modulus.value(), m, value, coverage })
}

/// Unreachable residues of the distinct problem for every `k = 1..=p-1`.
pub fn distinct_coverage(modulus: PrimeModulus, m: u64) -> Result<Vec<(usize, Vec<u64>)>> {
    let n = modulus.group_order() as usize;
    let tables = count_odlyzko_stanley_upto(modulus, m, n)?;
    Ok(tables.iter().skip(1).map(|t| (t.k(), t.unreachable())).collect())
}

/// `gamma` and `gamma'` side by side for one `(p, m)`.
#[derive(Debug, Clone, PartialEq)]
pub struct WaringComparison {
    pub p: u64,
    pub m: u64,
    pub gamma: usize,
    pub gamma_nonzero: Option<usize>,
    pub gamma_distinct: Option<usize>,
    /// `gamma <= m`.
    pub cauchy_holds: bool,
    /// `gamma <= gamma'`, when `gamma'` exists.
    pub ordering_holds: Option<bool>,
    /// `delta = 1 - ln m / ln p`, so that `m = p^(1 - delta)`.
    pub delta: f64,
    /// `4^(1/delta)`, descriptive.
    pub cochrane_cipra: f64,
}

impl WaringComparison {
    pub fn violated(&self) -> bool {
        !self.cauchy_holds || self.ordering_holds == Some(false)
    }
}

pub fn compare(modulus: PrimeModulus, m: u64) -> Result<WaringComparison> {
    if m == 0 {
        return Err(Error::ZeroExponent);
    }
    let p = modulus.value();
    let gamma = gamma_ordinary(modulus, m)?.value.expect("1 is an m-th power");
    let gamma_nonzero = gamma_ordinary_nonzero(modulus, m)?.value;
    let gamma_distinct = gamma_distinct(modulus, m)?.value;
    let delta = 1.0 - (m as f64).ln() / (p as f64).ln();
    Ok(WaringComparison {
        p,
        m,
        gamma,
        gamma_nonzero,
        gamma_distinct,
        cauchy_holds: gamma as u64 <= m,
        ordering_holds: gamma_distinct.map(|g| gamma <= g),
        delta,
        cochrane_cipra: 4f64.powf(1.0 / delta),
    })
}

/// Every prime `p <= p_max` and every `m | p-1` with `m < p-1`.
pub fn waring_bound_suite(p_max: u64) -> Result<Vec<WaringComparison>> {
    if p_max < 3 {
        return Err(Error::InvalidParameter(format!("p_max must be at least 3, got {p_max}")));
    }
    let mut out = Vec::new();
    for p in 3..=p_max {
        let Ok(modulus) = PrimeModulus::new(p) else { continue };
        for m in modulus.group_order_divisors() {
            if m < p - 1 {
                out.push(compare(modulus, m)?);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn md(p: u64) -> PrimeModulus {
        PrimeModulus::new(p).unwrap()
    }

    /// Least k such that every residue is a sum of k m-th powers, by enumerating k-tuples.
    fn gamma_brute(p: u64, m: u64) -> usize {
        let modulus = md(p);
        let powers: Vec<u64> = (0..p).map(|x| modulus.pow(x, m)).collect();
        let mut reach: HashSet<u64> = HashSet::from([0]);
        for k in 1.. {
            reach = reach.iter().flat_map(|&s| powers.iter().map(move |&h| (s + h) % p)).collect();
            if reach.len() as u64 == p {
                return k;
            }
        }
        unreachable!()
    }

    /// Distinct subsets by bitmask.
    fn distinct_brute(p: u64, m: u64) -> Vec<Vec<u64>> {
        let modulus = md(p);
        let n = p as usize - 1;
        let mut hit = vec![vec![false; p as usize]; n + 1];
        for mask in 0u32..(1 << n) {
            let s = (1..p).filter(|x| mask & (1 << (x - 1)) != 0).fold(0, |a, x| modulus.add(a, modulus.pow(x, m)));
            hit[mask.count_ones() as usize][s as usize] = true;
        }
        hit.iter().skip(1).map(|h| unreachable_of(h)).collect()
    }

    #[test]
    fn ordinary_examples() {
        let r = gamma_ordinary(md(5), 2).unwrap();
        assert_eq!(r.value, Some(2));
        assert_eq!(r.unreachable(1), Some(&[2u64, 3][..]));
        assert_eq!(gamma_ordinary(md(7), 1).unwrap().value, Some(1));
        assert_eq!(gamma_ordinary(md(5), 4).unwrap().value, Some(4));
    }

    #[test]
    fn distinct_examples() {
        assert_eq!(gamma_distinct(md(5), 1).unwrap().value, Some(2));
        let r = gamma_distinct(md(5), 2).unwrap();
        assert_eq!(r.value, None);
        let cov: Vec<(usize, Vec<u64>)> = vec![(1, vec![0, 2, 3]), (2, vec![1, 4]), (3, vec![0, 2, 3]), (4, vec![1, 2, 3, 4])];
        assert_eq!(r.coverage, cov);
        // pair sums of distinct units already cover F_7
        assert_eq!(gamma_distinct(md(7), 1).unwrap().value, Some(2));
    }

    #[test]
    fn nonzero_variant() {
        assert_eq!(gamma_ordinary_nonzero(md(5), 4).unwrap().value, None);
        assert_eq!(gamma_ordinary_nonzero(md(7), 1).unwrap().value, Some(2));
        // three nonzero squares never sum to 0 mod 5
        assert_eq!(gamma_ordinary_nonzero(md(5), 2).unwrap().value, Some(4));
    }

    #[test]
    fn ordinary_matches_tuple_enumeration() {
        for p in [3u64, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
            for m in 1..p {
                assert_eq!(gamma_ordinary(md(p), m).unwrap().value, Some(gamma_brute(p, m)), "p={p} m={m}");
            }
        }
    }

    #[test]
    fn ordinary_monotone_and_gcd_invariant() {
        for p in [7u64, 11, 13, 31, 61] {
            let modulus = md(p);
            for m in 1..p {
                let r = gamma_ordinary(modulus, m).unwrap();
                for w in r.coverage.windows(2) {
                    assert!(w[1].1.iter().all(|b| w[0].1.contains(b)));
                    assert!(!w[0].1.is_empty());
                }
                let g = num_integer::gcd(m, p - 1);
                assert_eq!(r.value, gamma_ordinary(modulus, g).unwrap().value);
            }
        }
    }

    #[test]
    fn fft_path_agrees() {
        for p in [101u64, 211, 401, 1009] {
            for m in md(p).group_order_divisors() {
                assert_eq!(gamma_ordinary(md(p), m).unwrap(), gamma_ordinary_fft(md(p), m).unwrap(), "p={p} m={m}");
            }
        }
        let big = md(10007);
        assert_eq!(gamma_ordinary(big, 2).unwrap().value, Some(2));
    }

    #[test]
    fn distinct_matches_subset_enumeration() {
        for p in [3u64, 5, 7, 11, 13] {
            for m in 1..p {
                assert_eq!(
                    distinct_coverage(md(p), m).unwrap(),
                    distinct_brute(p, m).into_iter().enumerate().map(|(i, u)| (i + 1, u)).collect::<Vec<_>>(),
                    "p={p} m={m}"
                );
            }
        }
    }

    #[test]
    fn distinct_coverage_complement() {
        for p in [5u64, 7, 11, 13, 17] {
            let modulus = md(p);
            for m in 1..p {
                let t = crate::counters::power_sum_of_units(modulus, m);
                let cov = distinct_coverage(modulus, m).unwrap();
                let n = p as usize - 1;
                for (k, miss) in cov.iter().take(n - 1) {
                    let other = &cov[n - k - 1].1;
                    for b in 0..p {
                        assert_eq!(miss.contains(&b), other.contains(&modulus.sub(t, b)));
                    }
                }
            }
        }
    }

    #[test]
    fn suite_has_no_violations() {
        let rows = waring_bound_suite(100).unwrap();
        assert!(rows.iter().all(|r| !r.violated()));
        let r = rows.iter().find(|r| r.p == 5 && r.m == 2).unwrap();
        assert_eq!((r.gamma, r.gamma_distinct), (2, None));
        assert!(waring_bound_suite(2).is_err());
    }
}
