//! The binomial-distribution inequality
//! `C(n,a) p^a (1-p)^{n-a} < C / sqrt(n p (1-p))` with `C = (3/2e)^{3/2}`,
//! in the normalized form `f(n,a,p) = sqrt(n) C(n,a) p^{a+1/2} (1-p)^{n-a+1/2} < C`.
//!
//! `f²` is rational whenever `p` is, so orderings between values of `f` are
//! decided exactly; only comparisons against `C` go through intervals.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::Serialize;

use super::interval::{binomial, rational_from_biguint, Interval, Precision};
use super::BoundsError;

pub const DEFAULT_BITS: u32 = 128;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialPoint {
    n: u64,
    a: u64,
    p: BigRational,
}

impl BinomialPoint {
    pub fn new(n: u64, a: u64, p: BigRational) -> Result<Self, BoundsError> {
        if a == 0 || a >= n || !p.is_positive() || p >= BigRational::one() {
            return Err(BoundsError::InvalidPoint(format!("n={n}, a={a}, p={p}")));
        }
        Ok(BinomialPoint { n, a, p })
    }

    /// The maximizer of `f(n, a, ·)`: `p* = (a + 1/2)/(n + 1)`.
    pub fn critical(n: u64, a: u64) -> Result<Self, BoundsError> {
        Self::new(n, a, critical_p(n, a))
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn a(&self) -> u64 {
        self.a
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }
}

pub fn critical_p(n: u64, a: u64) -> BigRational {
    BigRational::new(BigInt::from(2 * a + 1), BigInt::from(2 * n + 2))
}

/// `C(n,a) p^a (1-p)^{n-a}`, exact.
fn binomial_mass(pt: &BinomialPoint) -> BigRational {
    let q = BigRational::one() - &pt.p;
    rational_from_biguint(binomial(pt.n, pt.a))
        * num_traits::pow(pt.p.clone(), pt.a as usize)
        * num_traits::pow(q, (pt.n - pt.a) as usize)
}

/// Unreduced numerator and denominator of `f(n,a,u/w)²`:
/// `n C(n,a)² u^{2a+1} (w-u)^{2(n-a)+1} / w^{2n+2}`.
fn f_squared_parts(n: u64, a: u64, choose: &BigUint, u: u64, w: u64) -> (BigUint, BigUint) {
    let num = BigUint::from(n)
        * choose
        * choose
        * BigUint::from(u).pow((2 * a + 1) as u32)
        * BigUint::from(w - u).pow((2 * (n - a) + 1) as u32);
    (num, BigUint::from(w).pow((2 * n + 2) as u32))
}

/// `a/b < c/d` for positive denominators.
fn ratio_lt(a: &(BigUint, BigUint), c: &(BigUint, BigUint)) -> bool {
    &a.0 * &c.1 < &c.0 * &a.1
}

/// `f(n,a,p)²`, exact.
pub fn f_squared(pt: &BinomialPoint) -> BigRational {
    let mass = binomial_mass(pt);
    let q = BigRational::one() - &pt.p;
    &mass * &mass * BigRational::from_integer(BigInt::from(pt.n)) * &pt.p * q
}

/// Enclosure of `f(n,a,p)` on the grid `2^-bits`.
pub fn f_npa(pt: &BinomialPoint, bits: u32) -> Interval {
    let q = BigRational::one() - &pt.p;
    let var = Interval::point(BigRational::from_integer(BigInt::from(pt.n)) * &pt.p * q);
    let root = var.sqrt(bits + 8);
    root.scale(&binomial_mass(pt)).round(bits)
}

/// `f(n, a) = f(n, a, p*)`.
pub fn f_critical(n: u64, a: u64, bits: u32) -> Result<Interval, BoundsError> {
    Ok(f_npa(&BinomialPoint::critical(n, a)?, bits))
}

#[derive(Debug, Clone, Serialize)]
pub struct BinomReport {
    pub checked: u64,
    pub grid_checked: u64,
    /// Upper end of the largest enclosure of `f(n, a)`.
    pub max_observed: f64,
    pub argmax: (u64, u64),
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Copy)]
pub struct BinomConfig {
    pub n_max: u64,
    /// Grid `p = i / grid` for `0 < i < grid`.
    pub grid: u64,
    /// The grid sweep covers `n <= grid_n_max`.
    pub grid_n_max: u64,
    pub bits: u32,
}

impl BinomConfig {
    pub fn new(n_max: u64) -> Self {
        BinomConfig { n_max, grid: 16, grid_n_max: 60, bits: DEFAULT_BITS }
    }
}

/// Checks `f(n, a, p*) < C` for every `1 <= a < n <= n_max`, and on the
/// `p`-grid checks `f(n,a,p) <= f(n,a,p*)` and `f(n,a,p) < C`. All
/// comparisons are between exact squares and the square of the lower end
/// of the enclosure of `C`.
pub fn check_binomial_inequality(cfg: &BinomConfig) -> Result<BinomReport, BoundsError> {
    let prec = Precision::new(cfg.bits);
    let c = prec.c_constant();
    let c_sq = c.lo() * c.lo();
    let c_sq = (c_sq.numer().magnitude().clone(), c_sq.denom().magnitude().clone());
    let mut report = BinomReport {
        checked: 0,
        grid_checked: 0,
        max_observed: 0.0,
        argmax: (0, 0),
        bound: c.lo_f64(),
        pass: true,
    };
    let mut best: Option<(BigUint, BigUint)> = None;
    for n in 2..=cfg.n_max {
        let mut choose = BigUint::one();
        for a in 1..n {
            choose = choose * (n - a + 1) / a;
            let star = f_squared_parts(n, a, &choose, 2 * a + 1, 2 * n + 2);
            if !ratio_lt(&star, &c_sq) {
                let f = f_critical(n, a, cfg.bits)?;
                return Err(BoundsError::Violation(format!("f({n},{a}) = {f} is not below C = {c}")));
            }
            report.checked += 1;
            if best.as_ref().is_none_or(|b| ratio_lt(b, &star)) {
                report.argmax = (n, a);
                best = Some(star.clone());
            }
            if n > cfg.grid_n_max || cfg.grid < 2 {
                continue;
            }
            for i in 1..cfg.grid {
                let sq = f_squared_parts(n, a, &choose, i, cfg.grid);
                if ratio_lt(&star, &sq) || !ratio_lt(&sq, &c_sq) {
                    return Err(BoundsError::Violation(format!(
                        "f({n},{a},{i}/{}) exceeds its critical value or C",
                        cfg.grid
                    )));
                }
                report.grid_checked += 1;
            }
        }
    }
    if best.is_some() {
        let (n, a) = report.argmax;
        report.max_observed = f_critical(n, a, cfg.bits)?.hi_f64();
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct AppendixReport {
    pub x_checked: u64,
    pub y_checked: u64,
    /// Midpoint of `x(probe) + 1`.
    pub x_limit_gap: f64,
    pub y_limit: f64,
    pub pass: bool,
}

/// Where the limit `x(a) -> -1` is probed.
pub const X_LIMIT_PROBE: u64 = 1_000_000;

/// `x(a) = ln(a + 1/2) + a ln a - (a + 1) ln(a + 1)`.
pub fn x_of(a: u64, prec: &Precision) -> Interval {
    x_from(a, &prec.ln_int(2 * a + 1), &prec.ln_int(a), &prec.ln_int(a + 1), prec)
}

fn x_from(a: u64, ln_odd: &Interval, ln_a: &Interval, ln_next: &Interval, prec: &Precision) -> Interval {
    let la = ln_a.scale(&BigRational::from_integer(BigInt::from(a)));
    let lb = ln_next.scale(&BigRational::from_integer(BigInt::from(a + 1)));
    ln_odd.sub(prec.ln2()).add(&la).sub(&lb).round(prec.bits())
}

/// `y(n) = (3/2) ln(3/2) + (3/2) ln n + (n - 1/2) ln(n - 1/2) - (n + 1) ln(n + 1)`.
pub fn y_of(n: u64, prec: &Precision) -> Interval {
    let first = y_constant(prec);
    y_from(n, &first, &prec.ln_int(n), &prec.ln_int(2 * n - 1), &prec.ln_int(n + 1), prec)
}

/// `(3/2) ln(3/2)`.
fn y_constant(prec: &Precision) -> Interval {
    let three_halves = BigRational::new(BigInt::from(3), BigInt::from(2));
    prec.ln(&three_halves).scale(&three_halves)
}

fn y_from(n: u64, first: &Interval, ln_n: &Interval, ln_odd: &Interval, ln_next: &Interval, prec: &Precision) -> Interval {
    let three_halves = BigRational::new(BigInt::from(3), BigInt::from(2));
    let second = ln_n.scale(&three_halves);
    let shifted = BigRational::new(BigInt::from(2 * n - 1), BigInt::from(2));
    let third = ln_odd.sub(prec.ln2()).scale(&shifted);
    let fourth = ln_next.scale(&BigRational::from_integer(BigInt::from(n + 1)));
    first.add(&second).add(&third).sub(&fourth).round(prec.bits())
}

/// `(3/2) ln(3/2) - 3/2 = ln C`.
pub fn y_limit(prec: &Precision) -> Interval {
    y_constant(prec).sub(&Interval::from_ratio(3, 2))
}

/// Verifies on integer samples that `x` is strictly decreasing on
/// `1..=n_max` with `x(a) -> -1`, and that `y` is strictly increasing on
/// `2..=n_max` and stays below its limit.
pub fn check_appendix_monotonicity(n_max: u64, bits: u32) -> Result<AppendixReport, BoundsError> {
    let prec = Precision::new(bits);
    let n_max = n_max.max(2);
    let table = prec.ln_table(2 * n_max + 1);
    let ln = |x: u64| &table[x as usize - 1];

    let mut prev = x_from(1, ln(3), ln(1), ln(2), &prec);
    for a in 2..=n_max {
        let cur = x_from(a, ln(2 * a + 1), ln(a), ln(a + 1), &prec);
        if !cur.certainly_lt(&prev) {
            return Err(BoundsError::Violation(format!("x({a}) = {cur} is not below x({}) = {prev}", a - 1)));
        }
        prev = cur;
    }
    let probe = x_of(X_LIMIT_PROBE, &prec).add(&Interval::from_int(1));
    let tolerance = Interval::from_ratio(1, 100_000);
    if !probe.certainly_lt(&tolerance) || !probe.neg().certainly_lt(&tolerance) {
        return Err(BoundsError::Violation(format!("x({X_LIMIT_PROBE}) + 1 = {probe} is not within 1e-5")));
    }

    let limit = y_limit(&prec);
    let first = y_constant(&prec);
    let mut prev: Option<Interval> = None;
    for n in 2..=n_max {
        let cur = y_from(n, &first, ln(n), ln(2 * n - 1), ln(n + 1), &prec);
        if let Some(p) = &prev {
            if !p.certainly_lt(&cur) {
                return Err(BoundsError::Violation(format!("y({n}) = {cur} is not above y({}) = {p}", n - 1)));
            }
        }
        if !cur.certainly_lt(&limit) {
            return Err(BoundsError::Violation(format!("y({n}) = {cur} is not below its limit {limit}")));
        }
        prev = Some(cur);
    }
    Ok(AppendixReport {
        x_checked: n_max,
        y_checked: n_max - 1,
        x_limit_gap: probe.midpoint_f64(),
        y_limit: limit.midpoint_f64(),
        pass: true,
    })
}

/// `f(n, 1)` over `2..=n_max`, exactly squared; used for the monotone
/// approach to `C`.
pub fn f_n1_squares(n_max: u64) -> Vec<BigRational> {
    (2..=n_max).map(|n| f_squared(&BinomialPoint::critical(n, 1).expect("1 < n"))).collect()
}

pub fn is_strictly_increasing(v: &[BigRational]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}
