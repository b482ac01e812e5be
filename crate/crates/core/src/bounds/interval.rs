//! Closed intervals with exact rational endpoints.
//!
//! Arithmetic is exact on the endpoints; [`Interval::round`] snaps the lower
//! endpoint down and the upper endpoint up to the grid `2^-bits`, which keeps
//! the numbers small while staying an enclosure. Transcendental functions
//! (`ln`, `sqrt`, `e`) enclose their true values using series with explicit
//! remainder bounds.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    lo: BigRational,
    hi: BigRational,
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn floor_to_grid(q: &BigRational, bits: u32) -> BigRational {
    let scaled = q.numer() * pow2(bits);
    BigRational::new(scaled.div_floor(q.denom()), pow2(bits))
}

fn ceil_to_grid(q: &BigRational, bits: u32) -> BigRational {
    let scaled = q.numer() * pow2(bits);
    BigRational::new(scaled.div_ceil(q.denom()), pow2(bits))
}

fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or_else(|| {
        // rationals with enormous parts: scale through the bit lengths
        let shift = q.numer().bits() as i64 - q.denom().bits() as i64;
        let scaled = if shift > 0 {
            q / BigRational::from_integer(BigInt::one() << shift as u32)
        } else {
            q * BigRational::from_integer(BigInt::one() << (-shift) as u32)
        };
        scaled.to_f64().unwrap_or(f64::NAN) * 2f64.powi(shift as i32)
    })
}

impl Interval {
    pub fn new(lo: BigRational, hi: BigRational) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(q: BigRational) -> Self {
        Interval { lo: q.clone(), hi: q }
    }

    pub fn from_int(x: i64) -> Self {
        Self::point(BigRational::from_integer(BigInt::from(x)))
    }

    pub fn from_ratio(n: i64, d: i64) -> Self {
        Self::point(ratio(n, d))
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, q: &BigRational) -> bool {
        &self.lo <= q && q <= &self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        to_f64(&((&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2))))
    }

    pub fn lo_f64(&self) -> f64 {
        to_f64(&self.lo)
    }

    pub fn hi_f64(&self) -> f64 {
        to_f64(&self.hi)
    }

    /// Every point of `self` is below every point of `other`.
    pub fn certainly_lt(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn certainly_le(&self, other: &Interval) -> bool {
        self.hi <= other.lo
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo <= other.hi && other.lo <= self.hi
    }

    /// Outward rounding to the grid `2^-bits`.
    pub fn round(&self, bits: u32) -> Interval {
        Interval { lo: floor_to_grid(&self.lo, bits), hi: ceil_to_grid(&self.hi, bits) }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo + &other.lo, hi: &self.hi + &other.hi }
    }

    pub fn sub(&self, other: &Interval) -> Interval {
        Interval { lo: &self.lo - &other.hi, hi: &self.hi - &other.lo }
    }

    pub fn neg(&self) -> Interval {
        Interval { lo: -&self.hi, hi: -&self.lo }
    }

    pub fn mul(&self, other: &Interval) -> Interval {
        let products =
            [&self.lo * &other.lo, &self.lo * &other.hi, &self.hi * &other.lo, &self.hi * &other.hi];
        let lo = products.iter().min().expect("four products").clone();
        let hi = products.iter().max().expect("four products").clone();
        Interval { lo, hi }
    }

    pub fn scale(&self, q: &BigRational) -> Interval {
        if q.is_negative() {
            Interval { lo: &self.hi * q, hi: &self.lo * q }
        } else {
            Interval { lo: &self.lo * q, hi: &self.hi * q }
        }
    }

    /// Division by an interval that excludes zero.
    pub fn div(&self, other: &Interval) -> Interval {
        assert!(other.lo.is_positive() || other.hi.is_negative(), "division by an interval containing zero");
        let inv = Interval { lo: other.hi.recip(), hi: other.lo.recip() };
        self.mul(&inv)
    }

    pub fn powi(&self, exp: u32) -> Interval {
        if exp == 0 {
            return Self::from_int(1);
        }
        let a = num_traits::pow(self.lo.clone(), exp as usize);
        let b = num_traits::pow(self.hi.clone(), exp as usize);
        if exp % 2 == 1 || !self.lo.is_negative() {
            Interval { lo: a, hi: b }
        } else if !self.hi.is_positive() {
            Interval { lo: b, hi: a }
        } else {
            Interval { lo: BigRational::zero(), hi: a.max(b) }
        }
    }

    /// Enclosure of `sqrt` on a non-negative interval, endpoints on the grid.
    pub fn sqrt(&self, bits: u32) -> Interval {
        assert!(!self.lo.is_negative(), "sqrt of an interval reaching below zero");
        let scale = pow2(2 * bits);
        let lo_scaled = (self.lo.numer() * &scale).div_floor(self.lo.denom());
        let hi_scaled = (self.hi.numer() * &scale).div_ceil(self.hi.denom());
        let lo_root = lo_scaled.sqrt();
        let mut hi_root = hi_scaled.sqrt();
        if &hi_root * &hi_root < hi_scaled {
            hi_root += 1;
        }
        Interval { lo: BigRational::new(lo_root, pow2(bits)), hi: BigRational::new(hi_root, pow2(bits)) }
    }

    /// Enclosure of the natural logarithm on a positive interval.
    pub fn ln(&self, ctx: &Precision) -> Interval {
        assert!(self.lo.is_positive(), "ln of an interval reaching zero");
        let lo = ln_rational(&self.lo, ctx);
        let hi = if self.hi == self.lo { lo.clone() } else { ln_rational(&self.hi, ctx) };
        Interval { lo: lo.lo, hi: hi.hi }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:.12e}, {:.12e}]", self.lo_f64(), self.hi_f64())
    }
}

/// Working precision plus the constants every evaluation needs.
#[derive(Debug, Clone)]
pub struct Precision {
    bits: u32,
    ln2: Interval,
    e: Interval,
}

/// Extra grid bits carried inside series evaluations.
const GUARD_BITS: u32 = 16;

impl Precision {
    pub fn new(bits: u32) -> Self {
        let work = bits + GUARD_BITS;
        let ln2 = atanh_series(&ratio(1, 3), work).scale(&ratio(2, 1)).round(work);
        Precision { bits, ln2, e: euler(work) }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    fn work_bits(&self) -> u32 {
        self.bits + GUARD_BITS
    }

    pub fn ln2(&self) -> &Interval {
        &self.ln2
    }

    pub fn e(&self) -> &Interval {
        &self.e
    }

    /// `C = (3 / 2e)^{3/2}`.
    pub fn c_constant(&self) -> Interval {
        let work = self.work_bits();
        let q = Interval::from_int(3).div(&self.e.scale(&ratio(2, 1))).round(work);
        q.mul(&q.sqrt(work)).round(self.bits)
    }

    pub fn ln_int(&self, x: u64) -> Interval {
        ln_rational(&BigRational::from_integer(BigInt::from(x)), self)
    }

    pub fn ln(&self, q: &BigRational) -> Interval {
        ln_rational(q, self)
    }

    /// `ln 1, …, ln max` (index `i` holds `ln(i + 1)`), built from
    /// `ln(a + 1) = ln a + 2 atanh(1 / (2a + 1))`.
    pub fn ln_table(&self, max: u64) -> Vec<Interval> {
        let work = self.work_bits() + 8 + u64::BITS - max.leading_zeros();
        let mut out = Vec::with_capacity(max as usize);
        let mut acc = Interval::from_int(0);
        for a in 1..=max {
            out.push(acc.round(self.bits));
            let step = atanh_series(&ratio(1, 2 * a as i64 + 1), work).scale(&ratio(2, 1));
            acc = acc.add(&step).round(work);
        }
        out
    }
}

/// `e = Σ 1/j!` with tail in `[0, 2/(N+1)!]`.
fn euler(bits: u32) -> Interval {
    let target = BigInt::one() << (bits + 2);
    let mut sum = BigRational::zero();
    let mut fact = BigInt::one();
    let mut j: u64 = 0;
    loop {
        sum += BigRational::new(BigInt::one(), fact.clone());
        j += 1;
        fact *= j;
        if fact > target {
            break;
        }
    }
    // fact is now j! where j = N + 1
    let tail = BigRational::new(BigInt::from(2), fact);
    Interval { lo: sum.clone(), hi: sum + tail }.round(bits)
}

/// `atanh(z) = Σ z^{2j+1}/(2j+1)` for `|z| <= 1/3`, with the tail bounded by
/// `|z|^{2N+3} / ((2N+3)(1 - z²))`.
fn atanh_series(z: &BigRational, bits: u32) -> Interval {
    let zi = Interval::point(z.clone());
    let z2 = zi.mul(&zi).round(bits + 8);
    let abs_z = z.abs();
    assert!(abs_z <= ratio(1, 3), "series argument out of range");
    let threshold = BigRational::new(BigInt::one(), pow2(bits + 4));
    let mut term = zi.clone();
    let mut sum = Interval::from_int(0);
    let mut j: i64 = 0;
    let mut abs_pow = abs_z.clone();
    loop {
        sum = sum.add(&term.scale(&ratio(1, 2 * j + 1))).round(bits + 8);
        term = term.mul(&z2).round(bits + 8);
        abs_pow = ceil_to_grid(&(&abs_pow * &abs_z * &abs_z), bits + 8);
        j += 1;
        // tail after the last included term j-1
        let one_minus = BigRational::one() - &abs_z * &abs_z;
        let tail = &abs_pow / (BigRational::from_integer(BigInt::from(2 * j + 1)) * one_minus);
        if tail < threshold || abs_z.is_zero() {
            let slack = Interval { lo: -&tail, hi: tail };
            return sum.add(&slack).round(bits);
        }
    }
}

/// `ln x = s · ln 2 + 2 atanh((y - 1)/(y + 1))` with `x = 2^s · y`,
/// `y ∈ [2/3, 4/3]`.
fn ln_rational(x: &BigRational, ctx: &Precision) -> Interval {
    assert!(x.is_positive(), "ln of a non-positive number");
    let work = ctx.work_bits();
    let mut s: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let shift = |s: i64| -> BigRational {
        if s >= 0 {
            BigRational::from_integer(BigInt::one() << s as u32)
        } else {
            BigRational::new(BigInt::one(), BigInt::one() << (-s) as u32)
        }
    };
    let mut y = x / shift(s);
    let four_thirds = ratio(4, 3);
    let two_thirds = ratio(2, 3);
    while y > four_thirds {
        y /= BigRational::from_integer(BigInt::from(2));
        s += 1;
    }
    while y < two_thirds {
        y *= BigRational::from_integer(BigInt::from(2));
        s -= 1;
    }
    let z = (&y - BigRational::one()) / (&y + BigRational::one());
    let series = atanh_series(&z, work).scale(&ratio(2, 1));
    let scaled_ln2 = ctx.ln2.scale(&BigRational::from_integer(BigInt::from(s)));
    series.add(&scaled_ln2).round(ctx.bits)
}

/// Exact binomial coefficient.
pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub(crate) fn rational_from_biguint(x: BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from_biguint(Sign::Plus, x))
}
