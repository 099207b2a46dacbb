//! Explicit inequalities on the exact counts, evaluated with rigorous
//! enclosures.
//!
//! Each check yields [`BoundReport`]s. A report holds when the enclosure of
//! its left side reaches no higher than the top of the right side's
//! enclosure, i.e. `lhs <= rhs + numeric_error` with midpoints.
//!
//! Unconditional results (`os`, `zhuwan`, `lemma31`, `expsum` inside a
//! covered regime) are asserted by callers. The main theorem's inequality
//! and the open-problem variant depend on an ineffective constant, so their
//! reports are descriptive only.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::counters::{count_newton, count_odlyzko_stanley, count_odlyzko_stanley_upto, total_count, CountTable, ValuedDomain};
use crate::error::{Error, Result};
use crate::field::{character_profile, CharacterSumProfile, PowerResidueStructure, PrimeModulus};
use crate::real::Interval;

pub use crate::real::DEFAULT_BITS;

/// The Bourgain-Garaev admissible exponent for subgroups with `|H| > p^(1/4)`.
/// Kept for reference; no check consumes it.
pub const BOURGAIN_GARAEV_DELTA_PRIME: f64 = 0.000015927;

/// Upper end of the search range for [`fit_epsilon`].
pub const EPSILON_SEARCH_MAX: f64 = 8.0;

/// Resolution of [`fit_epsilon`].
pub const EPSILON_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    /// Total count over all subset sizes against `(4/sqrt(2 pi)) e^(m sqrt(p) ln p)`.
    OsTotal,
    /// Same, with a base-2 logarithm in the exponent.
    OsTotalLog2,
    /// Per-size count against `2 p^(-1/2) C(m sqrt(p) + 1 + k, k)`.
    ZhuWan,
    /// `N(k, b, D)` against `C(Phi(D) + k - 1, k)`.
    Lemma31,
    /// Monomial exponential sums against the piecewise explicit bound.
    ExpSum,
    /// `N*_m(k, b)` against `C(p^(1-eps) + mk - m, k)`.
    Thm11,
    /// `N*_m(k, b)` against `C(p^(1-eps) + k - 1, k)`.
    OpenProblem,
}

impl BoundKind {
    pub fn name(self) -> &'static str {
        match self {
            BoundKind::OsTotal => "os",
            BoundKind::OsTotalLog2 => "os-log2",
            BoundKind::ZhuWan => "zhuwan",
            BoundKind::Lemma31 => "lemma31",
            BoundKind::ExpSum => "expsum",
            BoundKind::Thm11 => "thm11",
            BoundKind::OpenProblem => "open",
        }
    }

    /// Whether a failure of this bound is a real violation.
    pub fn is_unconditional(self) -> bool {
        matches!(self, BoundKind::OsTotal | BoundKind::ZhuWan | BoundKind::Lemma31 | BoundKind::ExpSum)
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "os" => BoundKind::OsTotal,
            "os-log2" => BoundKind::OsTotalLog2,
            "zhuwan" => BoundKind::ZhuWan,
            "lemma31" => BoundKind::Lemma31,
            "expsum" => BoundKind::ExpSum,
            "thm11" => BoundKind::Thm11,
            "open" => BoundKind::OpenProblem,
            other => return Err(Error::InvalidParameter(format!("unknown bound '{other}'"))),
        })
    }
}

/// Constants for the conditional bounds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundParams {
    pub delta: f64,
    pub epsilon: f64,
    /// Constant of the solvability interval, in `(0, 1)`.
    pub c: f64,
    /// Fractional bits of every enclosure.
    pub bits: u32,
}

impl BoundParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.delta > 0.0 && self.delta < 1.0) {
            return Err(Error::InvalidParameter(format!("delta must lie in (0, 1), got {}", self.delta)));
        }
        if !(self.epsilon > 0.0 && self.epsilon < self.delta) {
            return Err(Error::InvalidParameter(format!(
                "epsilon must lie in (0, delta = {}), got {}",
                self.delta, self.epsilon
            )));
        }
        if !(self.c > 0.0 && self.c < 1.0) {
            return Err(Error::InvalidParameter(format!("c must lie in (0, 1), got {}", self.c)));
        }
        Ok(())
    }
}

impl Default for BoundParams {
    fn default() -> Self {
        Self { delta: 0.5, epsilon: 0.25, c: 0.5, bits: DEFAULT_BITS }
    }
}

/// `lambda = 2 / 4^(1/3) = 2^(1/3)`.
pub fn cochrane_pinner_lambda(bits: u32) -> Interval {
    Interval::from_int(2, bits).pow(&Interval::from_fraction(1, 3, bits))
}

/// One instance of an inequality `lhs <= rhs`.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub p: u64,
    pub m: Option<u64>,
    pub k: Option<usize>,
    pub b: Option<u64>,
    /// Character index, for exponential-sum rows.
    pub a: Option<u64>,
    /// Domain, for rows over an explicit set.
    pub domain: Option<String>,
    pub epsilon: Option<f64>,
    pub regime: Option<String>,
    pub lhs: Interval,
    pub rhs: Interval,
}

impl BoundReport {
    fn new(kind: BoundKind, p: u64, lhs: Interval, rhs: Interval) -> Self {
        Self { kind, p, m: None, k: None, b: None, a: None, domain: None, epsilon: None, regime: None, lhs, rhs }
    }

    /// `lhs <= rhs + numeric_error`.
    pub fn holds(&self) -> bool {
        self.lhs.possibly_le(&self.rhs)
    }

    /// Holds for every point of both enclosures.
    pub fn holds_certainly(&self) -> bool {
        self.lhs.certainly_le(&self.rhs)
    }

    /// `rhs - lhs` at the midpoints.
    pub fn slack(&self) -> BigRational {
        self.rhs.midpoint() - self.lhs.midpoint()
    }

    /// Combined enclosure radius of both sides.
    pub fn numeric_error(&self) -> BigRational {
        self.lhs.radius() + self.rhs.radius()
    }

    /// A failure here is a genuine counterexample to a proven bound.
    pub fn is_asserted(&self) -> bool {
        self.kind.is_unconditional() && self.regime.as_deref().map_or(true, |r| !r.starts_with("none"))
    }

    pub fn is_violation(&self) -> bool {
        self.is_asserted() && !self.holds()
    }
}

fn exact_deviation(count: &BigUint, expected: &BigRational) -> BigRational {
    (BigRational::from_integer(BigInt::from(count.clone())) - expected).abs()
}

fn deviation_reports(
    kind: BoundKind,
    modulus: PrimeModulus,
    table: &CountTable,
    n: usize,
    rhs: &Interval,
) -> Vec<BoundReport> {
    let p = modulus.value();
    let bits = rhs.bits();
    let expected = BigRational::new(binomial(BigUint::from(n), BigUint::from(table.k())).into(), BigInt::from(p));
    (0..p)
        .map(|b| {
            let lhs = Interval::from_ratio(&exact_deviation(table.get(b), &expected), bits);
            let mut r = BoundReport::new(kind, p, lhs, rhs.clone());
            r.k = Some(table.k());
            r.b = Some(b);
            r
        })
        .collect()
}

/// Which logarithm appears in the total-count exponent.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogBase {
    Natural,
    Two,
}

/// `|N*_m(b) - 2^(p-1)/p| <= (4/sqrt(2 pi)) e^(m sqrt(p) log p)`, one report per `b`.
pub fn check_os_total(modulus: PrimeModulus, m: u64, base: LogBase, bits: u32) -> Result<Vec<BoundReport>> {
    let totals = total_count(modulus, m)?;
    let p = modulus.value();
    let pb = Interval::from_int(p, bits);
    let mut log_p = pb.ln();
    if base == LogBase::Two {
        log_p = log_p.div(&Interval::from_int(2, bits).ln());
    }
    let exponent = Interval::from_int(m, bits).mul(&pb.sqrt()).mul(&log_p);
    let front = Interval::from_int(4, bits).div(&Interval::pi(bits).mul_int(2).sqrt());
    let rhs = front.mul(&exponent.exp());
    let kind = if base == LogBase::Natural { BoundKind::OsTotal } else { BoundKind::OsTotalLog2 };
    let expected = BigRational::new(BigInt::from(1) << (p - 1), BigInt::from(p));
    Ok(totals
        .iter()
        .enumerate()
        .map(|(b, count)| {
            let lhs = Interval::from_ratio(&exact_deviation(count, &expected), bits);
            let mut r = BoundReport::new(kind, p, lhs, rhs.clone());
            r.m = Some(m);
            r.b = Some(b as u64);
            r
        })
        .collect())
}

fn zhu_wan_rhs(p: u64, m: u64, k: usize, bits: u32) -> Interval {
    let sqrt_p = Interval::from_int(p, bits).sqrt();
    let arg = Interval::from_int(m, bits).mul(&sqrt_p).add_int(1 + k as i64);
    arg.binomial(k as u32).mul_int(2).div(&sqrt_p)
}

fn check_k_range(modulus: PrimeModulus, k: usize, min: usize) -> Result<()> {
    let n = modulus.group_order() as usize;
    if k < min || k > n {
        return Err(Error::KOutOfRange { k, n });
    }
    Ok(())
}

/// `|N*_m(k, b) - C(p-1, k)/p| <= 2 p^(-1/2) C(m sqrt(p) + 1 + k, k)` for `1 <= k <= p-1`.
pub fn check_zhu_wan(modulus: PrimeModulus, m: u64, k: usize, bits: u32) -> Result<Vec<BoundReport>> {
    check_k_range(modulus, k, 1)?;
    let table = count_odlyzko_stanley(modulus, m, k)?;
    Ok(zhu_wan_from_table(modulus, m, &table, bits))
}

/// As [`check_zhu_wan`] with a precomputed `N*_m(k, .)` table.
pub fn zhu_wan_from_table(modulus: PrimeModulus, m: u64, table: &CountTable, bits: u32) -> Vec<BoundReport> {
    let rhs = zhu_wan_rhs(modulus.value(), m, table.k(), bits);
    let mut out = deviation_reports(BoundKind::ZhuWan, modulus, table, modulus.group_order() as usize, &rhs);
    out.iter_mut().for_each(|r| r.m = Some(m));
    out
}

/// Enclosure of `Phi(D)` from the double-precision profile.
pub fn phi_enclosure(profile: &CharacterSumProfile, bits: u32) -> Interval {
    Interval::from_f64_with_error(profile.phi(), profile.error_bound(), bits)
}

/// `|N(k, b, D) - C(n, k)/p| <= C(Phi(D) + k - 1, k)` for `1 <= k <= n`.
pub fn check_lemma31(domain: &ValuedDomain, k: usize, bits: u32) -> Result<Vec<BoundReport>> {
    if k == 0 || k > domain.size() {
        return Err(Error::KOutOfRange { k, n: domain.size() });
    }
    let profile = character_profile(domain)?;
    let tables = count_newton(domain, k)?;
    Ok(lemma31_from_parts(domain, &profile, &tables[k], bits))
}

pub fn lemma31_from_parts(
    domain: &ValuedDomain,
    profile: &CharacterSumProfile,
    table: &CountTable,
    bits: u32,
) -> Vec<BoundReport> {
    let k = table.k();
    let rhs = phi_enclosure(profile, bits).add_int(k as i64 - 1).binomial(k as u32);
    let label = domain.to_string();
    let mut out = deviation_reports(BoundKind::Lemma31, domain.modulus(), table, domain.size(), &rhs);
    out.iter_mut().for_each(|r| r.domain = Some(label.clone()));
    out
}

/// Every `(k, b)` of the lemma for one domain.
pub fn check_lemma31_all(domain: &ValuedDomain, bits: u32) -> Result<Vec<BoundReport>> {
    let profile = character_profile(domain)?;
    let tables = count_newton(domain, domain.size())?;
    Ok(tables
        .iter()
        .skip(1)
        .flat_map(|t| lemma31_from_parts(domain, &profile, t, bits))
        .collect())
}

/// Regime of the explicit monomial exponential-sum bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExpSumRegime {
    /// `m <= 3 p^(1/3)`: bound `m sqrt(p)`.
    Small,
    /// `3 p^(1/3) < m < p^(1/2)`: bound `lambda m^(5/8) p^(5/8)`.
    Middle,
    /// `p^(1/2) <= m < p^(2/3) / 3`: bound `lambda m^(3/8) p^(3/4)`.
    Large,
    /// Outside every covered range; only the trivial bound `p - 1` applies.
    Uncovered,
}

impl ExpSumRegime {
    pub fn classify(p: u64, m: u64) -> Self {
        let (p, m) = (p as u128, m as u128);
        if m * m * m <= 27 * p {
            ExpSumRegime::Small
        } else if m * m < p {
            ExpSumRegime::Middle
        } else if 27 * m * m * m < p * p {
            ExpSumRegime::Large
        } else {
            ExpSumRegime::Uncovered
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            ExpSumRegime::Small => "m<=3p^(1/3)",
            ExpSumRegime::Middle => "3p^(1/3)<m<p^(1/2)",
            ExpSumRegime::Large => "p^(1/2)<=m<p^(2/3)/3",
            ExpSumRegime::Uncovered => "none",
        }
    }

    pub fn bound(self, p: u64, m: u64, bits: u32) -> Interval {
        let pb = Interval::from_int(p, bits);
        let mb = Interval::from_int(m, bits);
        let frac = |n, d| Interval::from_fraction(n, d, bits);
        match self {
            ExpSumRegime::Small => mb.mul(&pb.sqrt()),
            ExpSumRegime::Middle => cochrane_pinner_lambda(bits).mul(&mb.pow(&frac(5, 8))).mul(&pb.pow(&frac(5, 8))),
            ExpSumRegime::Large => cochrane_pinner_lambda(bits).mul(&mb.pow(&frac(3, 8))).mul(&pb.pow(&frac(3, 4))),
            ExpSumRegime::Uncovered => Interval::from_int(p - 1, bits),
        }
    }
}

/// Heath-Brown–Konyagin ranges: `m <= p^(1/3)`, `<= p^(1/2)`, `<= p^(2/3)`.
pub fn hbk_regime(p: u64, m: u64) -> &'static str {
    let (p, m) = (p as u128, m as u128);
    if m * m * m <= p {
        "hbk:m<=p^(1/3)"
    } else if m * m <= p {
        "hbk:m<=p^(1/2)"
    } else if m * m * m <= p * p {
        "hbk:m<=p^(2/3)"
    } else {
        "hbk:none"
    }
}

/// `|sum_{x in F_p*} e(a x^m / p)|` against the explicit piecewise bound, one report per `a`.
pub fn check_exp_sum(modulus: PrimeModulus, m: u64, bits: u32) -> Result<Vec<BoundReport>> {
    let p = modulus.value();
    let domain = ValuedDomain::power_image(&PowerResidueStructure::new(modulus, m)?);
    let profile = character_profile(&domain)?;
    let regime = ExpSumRegime::classify(p, m);
    let rhs = regime.bound(p, m, bits);
    let label = format!("{};{}", regime.label(), hbk_regime(p, m));
    Ok((1..p)
        .map(|a| {
            let lhs = Interval::from_f64_with_error(profile.magnitude(a), profile.error_bound(), bits);
            let mut r = BoundReport::new(BoundKind::ExpSum, p, lhs, rhs.clone());
            r.m = Some(m);
            r.a = Some(a);
            r.regime = Some(label.clone());
            r
        })
        .collect())
}

fn thm11_rhs(p: u64, m: u64, k: usize, epsilon: &Interval) -> Interval {
    let bits = epsilon.bits();
    let main = Interval::from_int(p, bits).pow(&Interval::one(bits).sub(epsilon));
    main.add_int((m as i64) * (k as i64) - m as i64).binomial(k as u32)
}

fn open_rhs(p: u64, k: usize, epsilon: &Interval) -> Interval {
    let bits = epsilon.bits();
    let main = Interval::from_int(p, bits).pow(&Interval::one(bits).sub(epsilon));
    main.add_int(k as i64 - 1).binomial(k as u32)
}

/// Reports for the main inequality at a given `epsilon`, without hypothesis checks.
pub fn thm11_from_table(modulus: PrimeModulus, m: u64, table: &CountTable, epsilon: f64, bits: u32) -> Vec<BoundReport> {
    let eps = Interval::from_f64(epsilon, bits);
    let rhs = thm11_rhs(modulus.value(), m, table.k(), &eps);
    let mut out = deviation_reports(BoundKind::Thm11, modulus, table, modulus.group_order() as usize, &rhs);
    out.iter_mut().for_each(|r| {
        r.m = Some(m);
        r.epsilon = Some(epsilon);
    });
    out
}

fn hypothesis_holds(p: u64, m: u64, delta: f64, bits: u32) -> bool {
    let limit = Interval::from_int(p, bits).pow(&Interval::one(bits).sub(&Interval::from_f64(delta, bits)));
    Interval::from_int(m, bits).certainly_le(&limit) && Interval::from_int(m, bits) != limit
}

/// `|N*_m(k, b) - C(p-1, k)/p|` against `C(p^(1-eps) + mk - m, k)`.
///
/// Requires `m < p^(1 - delta)`. The reports are descriptive: the admissible
/// `epsilon` is not effectively known.
pub fn check_thm11(modulus: PrimeModulus, m: u64, k: usize, params: &BoundParams) -> Result<Vec<BoundReport>> {
    if !(params.delta > 0.0 && params.delta < 1.0 && params.epsilon > 0.0 && params.epsilon < params.delta) {
        return Err(Error::InvalidParameter(format!(
            "need 0 < epsilon < delta < 1, got epsilon = {}, delta = {}",
            params.epsilon, params.delta
        )));
    }
    if !hypothesis_holds(modulus.value(), m, params.delta, params.bits) {
        return Err(Error::HypothesisViolated { m, p: modulus.value(), delta: params.delta });
    }
    check_k_range(modulus, k, 0)?;
    let table = count_odlyzko_stanley(modulus, m, k)?;
    Ok(thm11_from_table(modulus, m, &table, params.epsilon, params.bits))
}

/// Result of bisecting for the largest admissible `epsilon`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpsilonFit {
    /// Largest grid value at which every `b` holds; `0` if none does.
    pub epsilon: f64,
    /// The inequality already fails at `epsilon = 0`.
    pub fails_at_zero: bool,
    /// The inequality still holds at [`EPSILON_SEARCH_MAX`].
    pub saturated: bool,
}

fn all_hold(reports: &[BoundReport]) -> bool {
    reports.iter().all(BoundReport::holds)
}

/// Bisection for the supremum `epsilon` at which the main inequality holds
/// for every `b` at this `(p, m, k)`. The right side decreases in `epsilon`.
pub fn fit_epsilon(modulus: PrimeModulus, m: u64, k: usize, bits: u32) -> Result<EpsilonFit> {
    check_k_range(modulus, k, 0)?;
    let table = count_odlyzko_stanley(modulus, m, k)?;
    Ok(fit_epsilon_from_table(modulus, m, &table, bits))
}

pub fn fit_epsilon_from_table(modulus: PrimeModulus, m: u64, table: &CountTable, bits: u32) -> EpsilonFit {
    let holds = |eps: f64| all_hold(&thm11_from_table(modulus, m, table, eps, bits));
    if !holds(0.0) {
        return EpsilonFit { epsilon: 0.0, fails_at_zero: true, saturated: false };
    }
    if holds(EPSILON_SEARCH_MAX) {
        return EpsilonFit { epsilon: EPSILON_SEARCH_MAX, fails_at_zero: false, saturated: true };
    }
    let (mut lo, mut hi) = (0.0f64, EPSILON_SEARCH_MAX);
    while hi - lo > EPSILON_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        if holds(mid) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    EpsilonFit { epsilon: lo, fails_at_zero: false, saturated: false }
}

/// The open-problem inequality at the fitted `epsilon` for this `(p, m, k)`.
pub fn check_open_problem(modulus: PrimeModulus, m: u64, k: usize, bits: u32) -> Result<Vec<BoundReport>> {
    check_k_range(modulus, k, 0)?;
    let table = count_odlyzko_stanley(modulus, m, k)?;
    let fit = fit_epsilon_from_table(modulus, m, &table, bits);
    Ok(open_from_table(modulus, m, &table, fit.epsilon, bits))
}

pub fn open_from_table(modulus: PrimeModulus, m: u64, table: &CountTable, epsilon: f64, bits: u32) -> Vec<BoundReport> {
    let eps = Interval::from_f64(epsilon, bits);
    let rhs = open_rhs(modulus.value(), table.k(), &eps);
    let mut out = deviation_reports(BoundKind::OpenProblem, modulus, table, modulus.group_order() as usize, &rhs);
    out.iter_mut().for_each(|r| {
        r.m = Some(m);
        r.epsilon = Some(epsilon);
    });
    out
}

/// Exact positivity of `N*_m(k, .)` at one `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Positivity {
    pub k: usize,
    pub min_count: BigUint,
}

impl Positivity {
    pub fn solvable(&self) -> bool {
        !self.min_count.is_zero()
    }
}

/// An open real interval of `k` and the integer points inside it, each verified.
#[derive(Debug, Clone, PartialEq)]
pub struct SolvabilityWindow {
    pub k_low: f64,
    pub k_high: f64,
    pub verified: Vec<Positivity>,
}

impl SolvabilityWindow {
    pub fn is_empty(&self) -> bool {
        self.verified.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolvabilityReport {
    /// `-ln p / ln c < k < c p^delta - p^(delta - eps)`.
    pub general: SolvabilityWindow,
    /// `1/eps < k < (e - 1) p^(delta - eps)`, present when `c = e p^(-eps) < 1`.
    pub simplified: Option<SolvabilityWindow>,
}

fn integer_points(low: f64, high: f64, n: usize) -> Vec<usize> {
    if !(low < high) {
        return Vec::new();
    }
    let start = (low.floor() + 1.0).max(1.0);
    let end = (high.ceil() - 1.0).min(n as f64);
    if start > end {
        return Vec::new();
    }
    (start as usize..=end as usize).collect()
}

/// Evaluates the solvability interval and checks each integer `k` in it
/// against the exact minimum `min_b N*_m(k, b)`.
pub fn solvability_range(modulus: PrimeModulus, m: u64, params: &BoundParams) -> Result<SolvabilityReport> {
    params.validate()?;
    let p = modulus.value() as f64;
    let n = modulus.group_order() as usize;
    let (delta, eps, c) = (params.delta, params.epsilon, params.c);
    let general = (-p.ln() / c.ln(), c * p.powf(delta) - p.powf(delta - eps));
    let c_simple = std::f64::consts::E * p.powf(-eps);
    let simplified = (c_simple < 1.0).then(|| (1.0 / eps, (std::f64::consts::E - 1.0) * p.powf(delta - eps)));

    let mut ks = integer_points(general.0, general.1, n);
    if let Some((lo, hi)) = simplified {
        ks.extend(integer_points(lo, hi, n));
    }
    let k_max = ks.iter().copied().max().unwrap_or(0);
    let tables = count_odlyzko_stanley_upto(modulus, m, k_max)?;
    let window = |(lo, hi): (f64, f64)| SolvabilityWindow {
        k_low: lo,
        k_high: hi,
        verified: integer_points(lo, hi, n)
            .into_iter()
            .map(|k| Positivity { k, min_count: tables[k].min() })
            .collect(),
    };
    Ok(SolvabilityReport { general: window(general), simplified: simplified.map(window) })
}

/// `min_b N*_m(k, b)`.
pub fn min_count(modulus: PrimeModulus, m: u64, k: usize) -> Result<Positivity> {
    let table = count_odlyzko_stanley(modulus, m, k)?;
    Ok(Positivity { k, min_count: table.min() })
}

/// `1 - log|Phi(H)| / log|H|`: the exponent `delta'` in `Phi(H) = |H|^(1 - delta')`.
pub fn empirical_delta_prime(profile: &CharacterSumProfile, subgroup_order: u64) -> Option<f64> {
    (subgroup_order > 1 && profile.phi() > 0.0).then(|| 1.0 - profile.phi().ln() / (subgroup_order as f64).ln())
}
