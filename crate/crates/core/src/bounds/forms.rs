//! Products of linear forms `S = ∏_i (c_{v(i,1)} + … + c_{v(i,k)})` over
//! formal variables `c_0 … c_{r-1}`, and the largest coefficient of their
//! expansion.
//!
//! Assignments are enumerated up to relabeling of the variables. Each class
//! has a representative whose factors are sorted and whose variables are
//! numbered by first appearance, so walking only such sequences covers every
//! class (some more than once).

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use serde::Serialize;

use super::interval::{Interval, Precision};
use super::BoundsError;
use crate::oracle::next_combination;

/// Exponents are packed four bits per variable into a `u128`.
pub const MAX_VARIABLES: usize = 32;
pub const MAX_FACTORS: usize = 15;
pub const DEFAULT_FORM_BUDGET: u64 = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FormAssignment {
    k: usize,
    factors: Vec<Vec<u32>>,
}

impl FormAssignment {
    pub fn new(k: usize, factors: Vec<Vec<u32>>) -> Result<Self, BoundsError> {
        if k == 0 || factors.is_empty() || factors.len() > MAX_FACTORS {
            return Err(BoundsError::InvalidForm(format!("{} factors of width {k}", factors.len())));
        }
        let mut sorted = Vec::with_capacity(factors.len());
        for f in factors {
            let mut f = f;
            f.sort_unstable();
            if f.len() != k || f.windows(2).any(|w| w[0] == w[1]) {
                return Err(BoundsError::InvalidForm(format!("factor {f:?} needs {k} distinct variables")));
            }
            if f.iter().any(|&v| v as usize >= MAX_VARIABLES) {
                return Err(BoundsError::InvalidForm(format!("variable index above {MAX_VARIABLES}")));
            }
            sorted.push(f);
        }
        Ok(FormAssignment { k, factors: sorted })
    }

    /// `n` copies of `c_0 + … + c_{k-1}`.
    pub fn identical(n: usize, k: usize) -> Self {
        Self::new(k, vec![(0..k as u32).collect(); n]).expect("valid shape")
    }

    pub fn n(&self) -> usize {
        self.factors.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn factors(&self) -> &[Vec<u32>] {
        &self.factors
    }

    /// Number of distinct variables.
    pub fn variable_count(&self) -> usize {
        let mut seen: Vec<u32> = self.factors.iter().flatten().copied().collect();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }

    fn co_occur(&self, a: u32, b: u32) -> bool {
        self.factors.iter().any(|f| f.contains(&a) && f.contains(&b))
    }

    /// Relabels variables to `0..r` by first appearance.
    pub fn compacted(&self) -> Self {
        let mut map: Vec<Option<u32>> = vec![None; MAX_VARIABLES];
        let mut next = 0;
        let factors = self
            .factors
            .iter()
            .map(|f| {
                f.iter()
                    .map(|&v| {
                        *map[v as usize].get_or_insert_with(|| {
                            next += 1;
                            next - 1
                        })
                    })
                    .collect()
            })
            .collect();
        Self::new(self.k, factors).expect("relabeling keeps factors valid")
    }

    /// Smallest sorted factor list over all relabelings; exponential in `r`.
    pub fn canonical_by_relabeling(&self) -> Vec<Vec<u32>> {
        let base = self.compacted();
        let r = base.variable_count();
        let mut perm: Vec<u32> = (0..r as u32).collect();
        let mut best: Option<Vec<Vec<u32>>> = None;
        loop {
            let mut image: Vec<Vec<u32>> = base
                .factors
                .iter()
                .map(|f| {
                    let mut g: Vec<u32> = f.iter().map(|&v| perm[v as usize]).collect();
                    g.sort_unstable();
                    g
                })
                .collect();
            image.sort();
            if best.as_ref().is_none_or(|b| image < *b) {
                best = Some(image);
            }
            if !crate::grid::next_permutation(&mut perm) {
                break;
            }
        }
        best.expect("at least one relabeling")
    }
}

impl fmt::Display for FormAssignment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for factor in &self.factors {
            write!(f, "(")?;
            for (i, v) in factor.iter().enumerate() {
                if i > 0 {
                    write!(f, "+")?;
                }
                write!(f, "c{}", v + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

/// Expanded product as sorted `(packed exponents, coefficient)` pairs.
type Expansion = Vec<(u128, u128)>;

fn multiply_factor(poly: &Expansion, factor: &[u32], out: &mut Expansion) {
    out.clear();
    out.reserve(poly.len() * factor.len());
    for &(key, c) in poly {
        for &v in factor {
            out.push((key + (1u128 << (4 * v)), c));
        }
    }
    out.sort_unstable_by_key(|t| t.0);
    let mut w = 0;
    for i in 0..out.len() {
        if w > 0 && out[w - 1].0 == out[i].0 {
            out[w - 1].1 += out[i].1;
        } else {
            out[w] = out[i];
            w += 1;
        }
    }
    out.truncate(w);
}

fn unit() -> Expansion {
    vec![(0, 1)]
}

fn max_of(poly: &Expansion) -> u128 {
    poly.iter().map(|t| t.1).max().unwrap_or(0)
}

/// Largest coefficient of the expanded product.
pub fn max_monomial_coefficient(fa: &FormAssignment) -> BigUint {
    let mut poly = unit();
    let mut scratch = Vec::new();
    for f in &fa.factors {
        multiply_factor(&poly, f, &mut scratch);
        std::mem::swap(&mut poly, &mut scratch);
    }
    BigUint::from(max_of(&poly))
}

/// Replaces one variable by another it never shares a factor with, until
/// every pair of variables co-occurs; returns the compacted result.
pub fn merge_non_cooccurring(fa: &FormAssignment) -> FormAssignment {
    let mut cur = fa.compacted();
    'outer: loop {
        let r = cur.variable_count() as u32;
        for a in 0..r {
            for b in a + 1..r {
                if !cur.co_occur(a, b) {
                    let factors = cur
                        .factors
                        .iter()
                        .map(|f| f.iter().map(|&v| if v == b { a } else { v }).collect())
                        .collect();
                    cur = FormAssignment::new(cur.k, factors).expect("merged variables never share a factor").compacted();
                    continue 'outer;
                }
            }
        }
        return cur;
    }
}

/// Walks every sorted, first-appearance-labeled assignment with `n` factors
/// of width `k` using at most `r_max` variables, handing each leaf its
/// factors and the maximum coefficient.
pub fn for_each_assignment(
    n: usize,
    k: usize,
    r_max: usize,
    budget: u64,
    mut visit: impl FnMut(&[Vec<u32>], u128),
) -> Result<u64, BoundsError> {
    if n == 0 || n > MAX_FACTORS || k == 0 || r_max > MAX_VARIABLES {
        return Err(BoundsError::InvalidForm(format!("n={n}, k={k}, r={r_max} outside the supported range")));
    }
    if r_max < k {
        return Ok(0);
    }
    let mut walker = Walker { n, k, r_max, budget, leaves: 0, stack: Vec::with_capacity(n), polys: vec![unit()] };
    walker.descend(0, &mut visit)?;
    Ok(walker.leaves)
}

struct Walker {
    n: usize,
    k: usize,
    r_max: usize,
    budget: u64,
    leaves: u64,
    stack: Vec<Vec<u32>>,
    polys: Vec<Expansion>,
}

impl Walker {
    fn descend(&mut self, used: usize, visit: &mut impl FnMut(&[Vec<u32>], u128)) -> Result<(), BoundsError> {
        if self.stack.len() == self.n {
            self.leaves += 1;
            if self.leaves > self.budget {
                return Err(BoundsError::Budget { budget: self.budget });
            }
            visit(&self.stack, max_of(self.polys.last().expect("nonempty")));
            return Ok(());
        }
        let k = self.k;
        for old in (0..=k.min(used)).rev() {
            let fresh = k - old;
            if used + fresh > self.r_max {
                continue;
            }
            let mut idx: Vec<usize> = (0..old).collect();
            loop {
                let mut factor: Vec<u32> = idx.iter().map(|&i| i as u32).collect();
                factor.extend((used..used + fresh).map(|v| v as u32));
                if self.stack.last().is_none_or(|prev| *prev <= factor) {
                    let mut next = Vec::new();
                    multiply_factor(self.polys.last().expect("nonempty"), &factor, &mut next);
                    self.polys.push(next);
                    self.stack.push(factor);
                    let res = self.descend(used + fresh, visit);
                    self.stack.pop();
                    self.polys.pop();
                    res?;
                }
                if !next_combination(&mut idx, used) {
                    break;
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FormsReport {
    pub n: usize,
    pub k: usize,
    pub r_max: usize,
    pub checked: u64,
    pub max_observed: u128,
    /// Integer bound, or the lower end of the enclosure of a real bound.
    pub bound: f64,
    pub bound_exact: Option<String>,
    pub maximizers: Vec<String>,
    pub maximizer_count: u64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub merge: Option<MergeSummary>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct MergeSummary {
    pub checked: u64,
    pub max_variables_after_merge: usize,
    pub pairs_bound_holds: bool,
    pub square_bound_holds: bool,
    pub merged_coefficient_dominates: bool,
}

const MAXIMIZERS_KEPT: usize = 16;

fn to_form(k: usize, factors: &[Vec<u32>]) -> FormAssignment {
    FormAssignment::new(k, factors.to_vec()).expect("walker emits valid forms")
}

struct Scan {
    checked: u64,
    max: u128,
    maximizers: Vec<String>,
    count: u64,
    first_over: Option<String>,
}

fn scan(
    n: usize,
    k: usize,
    r_max: usize,
    budget: u64,
    over: impl Fn(u128) -> bool,
    mut per_leaf: impl FnMut(&[Vec<u32>], u128),
) -> Result<Scan, BoundsError> {
    let mut s = Scan { checked: 0, max: 0, maximizers: Vec::new(), count: 0, first_over: None };
    s.checked = for_each_assignment(n, k, r_max, budget, |factors, m| {
        if m > s.max {
            s.max = m;
            s.maximizers.clear();
            s.count = 0;
        }
        if m == s.max {
            s.count += 1;
            if s.maximizers.len() < MAXIMIZERS_KEPT {
                s.maximizers.push(to_form(k, factors).to_string());
            }
        }
        if s.first_over.is_none() && over(m) {
            s.first_over = Some(format!("{} has coefficient {m}", to_form(k, factors)));
        }
        per_leaf(factors, m);
    })?;
    Ok(s)
}

fn central_binomial(n: usize) -> u128 {
    let top = n.div_ceil(2) as u128;
    (0..top).fold(1u128, |acc, i| acc * (n as u128 - i) / (i + 1))
}

/// `k = 2`: every coefficient is at most `C(n, ⌈n/2⌉)`, attained by `n`
/// identical factors.
pub fn check_lemma4(n: usize, r_max: usize, budget: u64) -> Result<FormsReport, BoundsError> {
    let bound = central_binomial(n);
    let s = scan(n, 2, r_max, budget, |m| m > bound, |_, _| {})?;
    if let Some(cx) = s.first_over {
        return Err(BoundsError::Violation(format!("{cx}, above {bound}")));
    }
    Ok(FormsReport {
        n,
        k: 2,
        r_max,
        checked: s.checked,
        max_observed: s.max,
        bound: bound as f64,
        bound_exact: Some(bound.to_string()),
        maximizers: s.maximizers,
        maximizer_count: s.count,
        pass: s.max == bound,
        merge: None,
        counterexample: None,
    })
}

/// Enclosure of `C k^{n+1} / n^{1/4}`.
pub fn lemma6_bound(n: usize, k: usize, prec: &Precision) -> Interval {
    let bits = prec.bits();
    let power = BigRational::from_integer(BigInt::from(k).pow(n as u32 + 1));
    let fourth_root = Interval::from_int(n as i64).sqrt(bits + 8).sqrt(bits + 8);
    prec.c_constant().scale(&power).div(&fourth_root).round(bits)
}

/// `k >= 3`: every coefficient is at most `C k^{n+1} / n^{1/4}`; after
/// merging, `r(r-1) <= n k (k-1)` and `r² < 2 n k²`.
pub fn check_lemma6(n: usize, k: usize, r_max: usize, budget: u64, bits: u32) -> Result<FormsReport, BoundsError> {
    if k < 3 {
        return Err(BoundsError::InvalidForm(format!("k = {k}, expected at least 3")));
    }
    let prec = Precision::new(bits);
    let bound = lemma6_bound(n, k, &prec);
    let bound_lo = bound.lo().clone();
    let over = |m: u128| BigRational::from_integer(BigInt::from(m)) > bound_lo;
    let mut merge = MergeSummary {
        checked: 0,
        max_variables_after_merge: 0,
        pairs_bound_holds: true,
        square_bound_holds: true,
        merged_coefficient_dominates: true,
    };
    let mut merge_failure: Option<String> = None;
    let s = scan(n, k, r_max, budget, over, |factors, m| {
        let merged = merge_non_cooccurring(&to_form(k, factors));
        let r = merged.variable_count();
        merge.checked += 1;
        merge.max_variables_after_merge = merge.max_variables_after_merge.max(r);
        let pairs = r * (r - 1) <= n * k * (k - 1);
        let square = r * r < 2 * n * k * k;
        let dominates = max_monomial_coefficient(&merged) >= BigUint::from(m);
        merge.pairs_bound_holds &= pairs;
        merge.square_bound_holds &= square;
        merge.merged_coefficient_dominates &= dominates;
        if merge_failure.is_none() && !(pairs && square && dominates) {
            merge_failure = Some(format!("{} merges to {merged} with {r} variables", to_form(k, factors)));
        }
    })?;
    if let Some(cx) = s.first_over {
        return Err(BoundsError::Violation(format!("{cx}, above {bound}")));
    }
    if let Some(cx) = merge_failure {
        return Err(BoundsError::Violation(cx));
    }
    Ok(FormsReport {
        n,
        k,
        r_max,
        checked: s.checked,
        max_observed: s.max,
        bound: bound.lo_f64(),
        bound_exact: None,
        maximizers: s.maximizers,
        maximizer_count: s.count,
        pass: true,
        merge: Some(merge),
        counterexample: None,
    })
}

/// `n! / ∏ part!` for the most even split of `n` into `k` parts.
pub fn balanced_multinomial(n: usize, k: usize) -> u128 {
    let (q, rem) = (n / k, n % k);
    let fact = |x: usize| (1..=x as u128).product::<u128>();
    let denom = fact(q + 1).pow(rem as u32) * fact(q).pow((k - rem) as u32);
    fact(n) / denom
}

/// Looks for an assignment whose largest coefficient exceeds the balanced
/// multinomial coefficient. Finding none is reported, not asserted.
pub fn check_multinomial_conjecture(n: usize, k: usize, r_max: usize, budget: u64) -> Result<FormsReport, BoundsError> {
    if k < 3 {
        return Err(BoundsError::InvalidForm(format!("k = {k}, expected at least 3")));
    }
    let bound = balanced_multinomial(n, k);
    let s = scan(n, k, r_max, budget, |m| m > bound, |_, _| {})?;
    Ok(FormsReport {
        n,
        k,
        r_max,
        checked: s.checked,
        max_observed: s.max,
        bound: bound as f64,
        bound_exact: Some(bound.to_string()),
        maximizers: s.maximizers,
        maximizer_count: s.count,
        pass: s.first_over.is_none(),
        merge: None,
        counterexample: s.first_over,
    })
}
