//! Rigorous real enclosures on a fixed-point dyadic grid.
//!
//! An [`Interval`] stores `[lo, hi] / 2^bits` with big-integer endpoints.
//! Every operation rounds outward, so the true value of any expression built
//! from exact inputs always lies inside the computed interval. Transcendental
//! functions add an explicit bound on the truncated series tail.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Default working precision: 256 bits, about 77 decimal digits.
pub const DEFAULT_BITS: u32 = 256;

#[derive(Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigInt,
    hi: BigInt,
    bits: u32,
}

fn floor_shr(x: &BigInt, n: u32) -> BigInt {
    x.div_floor(&(BigInt::one() << n))
}

fn ceil_shr(x: &BigInt, n: u32) -> BigInt {
    -floor_shr(&-x, n)
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -(-a).div_floor(b)
}

impl Interval {
    pub fn from_int(v: impl Into<BigInt>, bits: u32) -> Self {
        let v = v.into() << bits;
        Self { lo: v.clone(), hi: v, bits }
    }

    pub fn zero(bits: u32) -> Self {
        Self::from_int(0, bits)
    }

    pub fn one(bits: u32) -> Self {
        Self::from_int(1, bits)
    }

    /// Tightest grid enclosure of an exact rational.
    pub fn from_ratio(r: &BigRational, bits: u32) -> Self {
        let num = r.numer() << bits;
        let den = r.denom();
        Self { lo: num.div_floor(den), hi: ceil_div(&num, den), bits }
    }

    pub fn from_fraction(num: impl Into<BigInt>, den: impl Into<BigInt>, bits: u32) -> Self {
        Self::from_ratio(&BigRational::new(num.into(), den.into()), bits)
    }

    /// Exact enclosure of a finite double (every finite double is dyadic).
    pub fn from_f64(x: f64, bits: u32) -> Self {
        let r = BigRational::from_float(x).expect("finite float");
        Self::from_ratio(&r, bits)
    }

    /// `[mid - radius, mid + radius]` for doubles.
    pub fn from_f64_with_error(mid: f64, radius: f64, bits: u32) -> Self {
        let r = radius.abs();
        Self::from_f64(mid - r, bits).hull(&Self::from_f64(mid + r, bits)).widen_ulps(1)
    }

    /// Interval `[a, b]` from two exact rationals with `a <= b`.
    pub fn spanning(a: &BigRational, b: &BigRational, bits: u32) -> Self {
        Self::from_ratio(a, bits).hull(&Self::from_ratio(b, bits))
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn lower(&self) -> BigRational {
        BigRational::new(self.lo.clone(), BigInt::one() << self.bits)
    }

    pub fn upper(&self) -> BigRational {
        BigRational::new(self.hi.clone(), BigInt::one() << self.bits)
    }

    pub fn midpoint(&self) -> BigRational {
        BigRational::new(&self.lo + &self.hi, BigInt::one() << (self.bits + 1))
    }

    pub fn radius(&self) -> BigRational {
        BigRational::new(&self.hi - &self.lo, BigInt::one() << (self.bits + 1))
    }

    pub fn to_f64(&self) -> f64 {
        ratio_to_f64(&self.midpoint())
    }

    pub fn radius_f64(&self) -> f64 {
        ratio_to_f64(&self.radius())
    }

    pub fn contains(&self, r: &BigRational) -> bool {
        &self.lower() <= r && r <= &self.upper()
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn is_positive(&self) -> bool {
        self.lo.is_positive()
    }

    /// Re-express on a grid with `bits` fractional bits, rounding outward.
    pub fn with_bits(&self, bits: u32) -> Self {
        match bits.cmp(&self.bits) {
            Ordering::Equal => self.clone(),
            Ordering::Greater => {
                let s = bits - self.bits;
                Self { lo: &self.lo << s, hi: &self.hi << s, bits }
            }
            Ordering::Less => {
                let s = self.bits - bits;
                Self { lo: floor_shr(&self.lo, s), hi: ceil_shr(&self.hi, s), bits }
            }
        }
    }

    fn align(&self, other: &Self) -> (Self, Self) {
        let bits = self.bits.max(other.bits);
        (self.with_bits(bits), other.with_bits(bits))
    }

    fn widen_ulps(mut self, ulps: u32) -> Self {
        self.lo -= ulps;
        self.hi += ulps;
        self
    }

    pub fn hull(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        Self { lo: a.lo.min(b.lo), hi: a.hi.max(b.hi), bits: a.bits }
    }

    pub fn add(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        Self { lo: a.lo + b.lo, hi: a.hi + b.hi, bits: a.bits }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        Self { lo: a.lo - b.hi, hi: a.hi - b.lo, bits: a.bits }
    }

    pub fn neg(&self) -> Self {
        Self { lo: -&self.hi, hi: -&self.lo, bits: self.bits }
    }

    pub fn abs(&self) -> Self {
        if !self.lo.is_negative() {
            self.clone()
        } else if !self.hi.is_positive() {
            self.neg()
        } else {
            let hi = (-&self.lo).max(self.hi.clone());
            Self { lo: BigInt::zero(), hi, bits: self.bits }
        }
    }

    /// Largest absolute value of any point in the interval.
    pub fn magnitude(&self) -> Self {
        let m = self.lo.abs().max(self.hi.abs());
        Self { lo: m.clone(), hi: m, bits: self.bits }
    }

    pub fn add_int(&self, v: i64) -> Self {
        self.add(&Self::from_int(v, self.bits))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let (a, b) = self.align(other);
        let prods = [&a.lo * &b.lo, &a.lo * &b.hi, &a.hi * &b.lo, &a.hi * &b.hi];
        let lo = prods.iter().min().unwrap();
        let hi = prods.iter().max().unwrap();
        Self { lo: floor_shr(lo, a.bits), hi: ceil_shr(hi, a.bits), bits: a.bits }
    }

    pub fn mul_int(&self, v: i64) -> Self {
        let v = BigInt::from(v);
        let (lo, hi) = (&self.lo * &v, &self.hi * &v);
        if v.is_negative() {
            Self { lo: hi, hi: lo, bits: self.bits }
        } else {
            Self { lo, hi, bits: self.bits }
        }
    }

    /// Division by an interval that excludes zero.
    ///
    /// Panics if `other` contains zero.
    pub fn div(&self, other: &Self) -> Self {
        assert!(!other.contains_zero(), "interval division by a range containing zero");
        let (a, b) = self.align(other);
        let mut lo: Option<BigInt> = None;
        let mut hi: Option<BigInt> = None;
        for n in [&a.lo, &a.hi] {
            for d in [&b.lo, &b.hi] {
                let scaled = n << a.bits;
                let f = scaled.div_floor(d);
                let c = ceil_div(&scaled, d);
                lo = Some(lo.map_or(f.clone(), |x| x.min(f)));
                hi = Some(hi.map_or(c.clone(), |x| x.max(c)));
            }
        }
        Self { lo: lo.unwrap(), hi: hi.unwrap(), bits: a.bits }
    }

    pub fn div_int(&self, v: i64) -> Self {
        assert!(v != 0, "division by zero");
        let v = BigInt::from(v);
        let (lo, hi) = if v.is_negative() { (&self.hi, &self.lo) } else { (&self.lo, &self.hi) };
        Self { lo: lo.div_floor(&v), hi: ceil_div(hi, &v), bits: self.bits }
    }

    pub fn powi(&self, n: u32) -> Self {
        let mut acc = Self::one(self.bits);
        for _ in 0..n {
            acc = acc.mul(self);
        }
        if n % 2 == 0 && acc.lo.is_negative() {
            acc.lo = BigInt::zero();
        }
        acc
    }

    pub fn sqrt(&self) -> Self {
        assert!(!self.hi.is_negative(), "square root of a negative interval");
        let lo = if self.lo.is_positive() { (&self.lo << self.bits).sqrt() } else { BigInt::zero() };
        let hi_sq = &self.hi << self.bits;
        let mut hi = hi_sq.sqrt();
        if &hi * &hi < hi_sq {
            hi += 1;
        }
        Self { lo, hi, bits: self.bits }
    }

    pub fn exp(&self) -> Self {
        let lo = exp_point(&self.lo, self.bits).lo;
        let hi = exp_point(&self.hi, self.bits).hi;
        Self { lo, hi, bits: self.bits }
    }

    /// Natural logarithm; panics unless the interval is strictly positive.
    pub fn ln(&self) -> Self {
        assert!(self.is_positive(), "logarithm of a non-positive interval");
        let lo = ln_point(&self.lo, self.bits).lo;
        let hi = ln_point(&self.hi, self.bits).hi;
        Self { lo, hi, bits: self.bits }
    }

    /// `self^y` for a strictly positive base.
    pub fn pow(&self, y: &Self) -> Self {
        y.mul(&self.ln()).exp()
    }

    pub fn pi(bits: u32) -> Self {
        let w = bits + 32;
        let atan5 = atan_inv(5, w);
        let atan239 = atan_inv(239, w);
        atan5.mul_int(16).sub(&atan239.mul_int(4)).with_bits(bits)
    }

    /// `x (x-1) ... (x-k+1)`.
    pub fn falling_factorial(&self, k: u32) -> Self {
        let mut acc = Self::one(self.bits);
        for j in 0..k {
            acc = acc.mul(&self.add_int(-(j as i64)));
        }
        acc
    }

    /// Generalized binomial `(x)_k / k!`.
    pub fn binomial(&self, k: u32) -> Self {
        let mut acc = Self::one(self.bits);
        for j in 0..k {
            acc = acc.mul(&self.add_int(-(j as i64))).div_int(j as i64 + 1);
        }
        acc
    }

    /// The whole interval lies at or below `other`'s lower end.
    pub fn certainly_le(&self, other: &Self) -> bool {
        let (a, b) = self.align(other);
        a.hi <= b.lo
    }

    /// Some point of `self` lies at or below some point of `other`.
    pub fn possibly_le(&self, other: &Self) -> bool {
        let (a, b) = self.align(other);
        a.lo <= b.hi
    }

    /// Midpoint in scientific notation with `digits` significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        format_sci(&self.midpoint(), digits)
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{} +/- {}]", self.to_sci(17), format_sci(&self.radius(), 3))
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_sci(15))
    }
}

pub fn ratio_to_f64(r: &BigRational) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() {
            return v;
        }
    }
    if r.is_negative() {
        f64::NEG_INFINITY
    } else {
        f64::INFINITY
    }
}

fn bit_length(v: &BigInt) -> u64 {
    v.magnitude().bits()
}

// exp of the grid point v / 2^bits.
fn exp_point(v: &BigInt, bits: u32) -> Interval {
    // halve until |t| <= 1/2, then square back up
    let halvings = (bit_length(v) as i64 - bits as i64 + 1).max(0) as u32;
    let w = bits + 40 + halvings;
    let t = Interval::from_fraction(v.clone(), BigInt::one() << (bits + halvings), w);
    let mut sum = Interval::one(w);
    let mut term = Interval::one(w);
    let eps = BigInt::one();
    let mut n = 1i64;
    loop {
        term = term.mul(&t).div_int(n);
        sum = sum.add(&term);
        let mag = term.magnitude();
        if mag.hi <= eps {
            // remaining tail is below |term| for |t| <= 1/2
            let tail = Interval { lo: -&mag.hi - 1, hi: &mag.hi + 1, bits: w };
            sum = sum.add(&tail);
            break;
        }
        n += 1;
    }
    for _ in 0..halvings {
        sum = sum.mul(&sum);
    }
    sum.with_bits(bits)
}

fn atanh_series(z: &Interval, w: u32) -> Interval {
    // z in [0, 1/3]: tail after the last term is below 2 |z|^(2N+3)
    let z2 = z.mul(z);
    let mut power = z.clone();
    let mut sum = z.clone();
    let mut n = 1i64;
    loop {
        power = power.mul(&z2);
        let mag = power.magnitude();
        if mag.hi <= BigInt::one() {
            let bound = &mag.hi * 2 + 2;
            sum = sum.add(&Interval { lo: -&bound, hi: bound, bits: w });
            return sum;
        }
        sum = sum.add(&power.div_int(2 * n + 1));
        n += 1;
    }
}

fn ln2(w: u32) -> Interval {
    atanh_series(&Interval::from_fraction(1, 3, w), w).mul_int(2)
}

// ln of the positive grid point v / 2^bits.
fn ln_point(v: &BigInt, bits: u32) -> Interval {
    assert!(v.sign() == Sign::Plus);
    let w = bits + 40;
    // v / 2^bits = 2^e * y with y in [1, 2)
    let e = bit_length(v) as i64 - 1 - bits as i64;
    let y_den_exp = bit_length(v) - 1;
    let y = Interval::from_fraction(v.clone(), BigInt::one() << y_den_exp, w);
    let z = y.add_int(-1).div(&y.add_int(1));
    let ln_y = atanh_series(&z, w).mul_int(2);
    let result = if e == 0 { ln_y } else { ln_y.add(&ln2(w).mul_int(e)) };
    result.with_bits(bits)
}

// atan(1/n) for n >= 2 via the alternating series
fn atan_inv(n: i64, w: u32) -> Interval {
    let x = Interval::from_fraction(1, n, w);
    let x2 = x.mul(&x);
    let mut power = x.clone();
    let mut sum = x;
    let mut k = 1i64;
    loop {
        power = power.mul(&x2);
        let term = power.div_int(2 * k + 1);
        let mag = term.magnitude();
        if mag.hi <= BigInt::one() {
            let bound = &mag.hi + 2;
            return sum.add(&Interval { lo: -&bound, hi: bound, bits: w });
        }
        sum = if k % 2 == 1 { sum.sub(&term) } else { sum.add(&term) };
        k += 1;
    }
}

/// Scientific notation with `digits` significant digits, e.g. `1.23400000000000e+2`.
pub fn format_sci(r: &BigRational, digits: usize) -> String {
    let digits = digits.max(1);
    if r.is_zero() {
        return format!("{:.*}e+0", digits - 1, 0.0);
    }
    let neg = r.is_negative();
    let a = r.abs();
    // decimal exponent estimate from bit lengths, then correct
    let ten = BigInt::from(10);
    let mut e = ((a.numer().bits() as f64 - a.denom().bits() as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let pow10 = |x: i64| -> BigRational {
        if x >= 0 {
            BigRational::from_integer(num_traits::pow(ten.clone(), x as usize))
        } else {
            BigRational::new(BigInt::one(), num_traits::pow(ten.clone(), (-x) as usize))
        }
    };
    while a >= pow10(e + 1) {
        e += 1;
    }
    while a < pow10(e) {
        e -= 1;
    }
    let scaled = &a / pow10(e - (digits as i64 - 1));
    let mut mant = scaled.round().to_integer();
    if mant >= num_traits::pow(ten.clone(), digits) {
        mant /= &ten;
        e += 1;
    }
    let s = mant.to_string();
    let (head, tail) = s.split_at(1);
    let sign = if neg { "-" } else { "" };
    let exp_sign = if e < 0 { '-' } else { '+' };
    if tail.is_empty() {
        format!("{sign}{head}e{exp_sign}{}", e.abs())
    } else {
        format!("{sign}{head}.{tail}e{exp_sign}{}", e.abs())
    }
}
