//! The polynomial `F = C · R` on `K_n x K_{n+1}`.
//!
//! `C` is the product over column pairs `i < j` of (sum of column `j`) minus
//! (sum of column `i`); `R` is the product over rows `h < l <= n` of
//! `x_{l,h} - x_{h,h}`. A nonzero value of `F` forces distinct column
//! multisets and separates every pair of rows, so the coloring is
//! distinguishing. The coefficient of the off-diagonal monomial
//! `∏_{i≠j} x_{i,j}` equals `∏_{r=1}^n r!`, and every exponent in that
//! monomial is at most one, so lists of two colors always leave a nonzero
//! value.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{PolyError, SparsePoly};
use crate::grid::{Color, Coloring, GridSpec, ListAssignment};
use crate::oracle;

pub const DEFAULT_TERM_BUDGET: usize = 5_000_000;

/// Variable layout for `F` on `K_n x K_{n+1}`: `x_{i,j}` lives in slot
/// `i·(n+1) + j` (0-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CnInstance {
    n: usize,
}

impl CnInstance {
    pub fn new(n: usize) -> Self {
        assert!(n >= 1, "instance needs at least one row");
        CnInstance { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arity(&self) -> usize {
        self.n * (self.n + 1)
    }

    #[inline]
    pub fn slot(&self, row: usize, col: usize) -> usize {
        row * (self.n + 1) + col
    }

    pub fn grid(&self) -> GridSpec {
        GridSpec::new(self.n, self.n + 1).expect("n < n + 1")
    }

    pub fn degree_c(&self) -> usize {
        self.n * (self.n + 1) / 2
    }

    pub fn degree_r(&self) -> usize {
        self.n * (self.n - 1) / 2
    }

    /// `deg F = C(n+1, 2) + C(n, 2) = n²`, from factor counts alone.
    pub fn degree_f(&self) -> usize {
        self.degree_c() + self.degree_r()
    }

    fn c_factor(&self, i: usize, j: usize) -> SparsePoly {
        let coeffs: Vec<(usize, i64)> =
            (0..self.n).flat_map(|k| [(self.slot(k, j), 1), (self.slot(k, i), -1)]).collect();
        SparsePoly::linear(self.arity(), &coeffs)
    }

    fn r_factor(&self, h: usize, l: usize) -> SparsePoly {
        SparsePoly::linear(self.arity(), &[(self.slot(l, h), 1), (self.slot(h, h), -1)])
    }

    fn c_factors(&self) -> impl Iterator<Item = SparsePoly> + '_ {
        let cols = self.n + 1;
        (0..cols).flat_map(move |j| (0..j).map(move |i| self.c_factor(i, j)))
    }

    fn r_factors(&self) -> impl Iterator<Item = SparsePoly> + '_ {
        (0..self.n).flat_map(move |l| (0..l).map(move |h| self.r_factor(h, l)))
    }
}

fn product(arity: usize, mut factors: impl Iterator<Item = SparsePoly>, max_terms: usize) -> Result<SparsePoly, PolyError> {
    factors.try_fold(SparsePoly::one(arity), |acc, f| acc.mul_budgeted(&f, max_terms))
}

pub fn build_c(n: usize, max_terms: usize) -> Result<SparsePoly, PolyError> {
    let inst = CnInstance::new(n);
    product(inst.arity(), inst.c_factors(), max_terms)
}

pub fn build_r(n: usize, max_terms: usize) -> Result<SparsePoly, PolyError> {
    let inst = CnInstance::new(n);
    product(inst.arity(), inst.r_factors(), max_terms)
}

/// Full expansion of `F`. Feasible for `n <= 3`; at `n = 4` the expansion
/// has on the order of 10⁸ terms.
pub fn build_f(n: usize, max_terms: usize) -> Result<SparsePoly, PolyError> {
    build_c(n, max_terms)?.mul_budgeted(&build_r(n, max_terms)?, max_terms)
}

/// Exponent vector of `∏_{i≠j} x_{i,j}`.
pub fn target_monomial(n: usize) -> Vec<u16> {
    let inst = CnInstance::new(n);
    let mut e = vec![0u16; inst.arity()];
    for i in 0..n {
        for j in 0..=n {
            if i != j {
                e[inst.slot(i, j)] = 1;
            }
        }
    }
    e
}

/// Coefficient of the off-diagonal monomial in `F`, by symbolic expansion
/// of the factor product restricted to divisors of that monomial.
pub fn target_coefficient(n: usize, max_terms: usize) -> Result<BigInt, PolyError> {
    let inst = CnInstance::new(n);
    let target = target_monomial(n);
    let f = inst
        .c_factors()
        .chain(inst.r_factors())
        .try_fold(SparsePoly::one(inst.arity()), |acc, f| acc.mul_bounded(&f, &target, max_terms))?;
    Ok(f.coefficient(&target))
}

/// `∏_{r=1}^n r!`.
pub fn closed_form_coefficient(n: usize) -> BigInt {
    let mut acc = BigInt::one();
    let mut fact = BigInt::one();
    for r in 1..=n {
        fact *= r;
        acc *= &fact;
    }
    acc
}

/// Exact value of `F` at `values` (slot order), evaluated factor by factor.
pub fn evaluate_f(n: usize, values: &[i64]) -> BigInt {
    let inst = CnInstance::new(n);
    assert_eq!(values.len(), inst.arity(), "assignment must cover every variable");
    let col_sum = |j: usize| -> i128 { (0..n).map(|k| values[inst.slot(k, j)] as i128).sum() };
    let sums: Vec<i128> = (0..=n).map(col_sum).collect();
    let mut acc = BigInt::one();
    for j in 0..=n {
        for i in 0..j {
            acc *= sums[j] - sums[i];
        }
    }
    for l in 0..n {
        for h in 0..l {
            acc *= values[inst.slot(l, h)] as i128 - values[inst.slot(h, h)] as i128;
        }
    }
    acc
}

/// `F` evaluated on a coloring of `K_n x K_{n+1}` with color ids as values.
pub fn evaluate_f_on(c: &Coloring) -> Result<BigInt, PolyError> {
    let g = c.grid();
    if g.cols() != g.rows() + 1 {
        return Err(PolyError::NotSquarePlusOne(g));
    }
    let values: Vec<i64> = c.cells().iter().map(|x| x.0 as i64).collect();
    Ok(evaluate_f(g.rows(), &values))
}

/// Finds an L-coloring of `K_n x K_{n+1}` on which `F` does not vanish.
///
/// Lists are cut to their two smallest colors. Cells touched by `R` (the
/// diagonal and below, in columns `1..n-1`) are assigned first so that each
/// `R` factor is tested as soon as both its cells are set; each column-sum
/// factor is tested once its columns are complete. The first solution in
/// that variable order is returned, after certification by the oracle.
pub fn cn_list_coloring(lists: &ListAssignment) -> Result<Coloring, PolyError> {
    let grid = lists.grid();
    let n = grid.rows();
    if grid.cols() != n + 1 {
        return Err(PolyError::NotSquarePlusOne(grid));
    }
    for i in 0..n {
        for j in 0..=n {
            if lists.list(i, j).len() < 2 {
                return Err(PolyError::ShortList { row: i, column: j });
            }
        }
    }
    let lists = lists.truncated(2);

    let mut order: Vec<(usize, usize)> = Vec::with_capacity(n * (n + 1));
    for h in 0..n.saturating_sub(1) {
        order.extend((h..n).map(|l| (l, h)));
    }
    for j in 0..=n {
        for i in 0..n {
            if !order.contains(&(i, j)) {
                order.push((i, j));
            }
        }
    }

    struct Search<'a> {
        n: usize,
        lists: &'a ListAssignment,
        order: Vec<(usize, usize)>,
        value: Vec<Vec<Option<i64>>>,
        filled: Vec<usize>,
    }

    impl Search<'_> {
        fn column_sum(&self, j: usize) -> i64 {
            self.value.iter().map(|row| row[j].expect("complete column")).sum()
        }

        fn consistent(&self, i: usize, j: usize) -> bool {
            // R factors with this cell: (i, j) below the diagonal pairs with (j, j)
            if i > j && j + 1 < self.n {
                if let (Some(a), Some(b)) = (self.value[i][j], self.value[j][j]) {
                    if a == b {
                        return false;
                    }
                }
            }
            if i == j && j + 1 < self.n {
                let d = self.value[j][j].expect("just set");
                if (j + 1..self.n).any(|l| self.value[l][j] == Some(d)) {
                    return false;
                }
            }
            if self.filled[j] == self.n {
                let s = self.column_sum(j);
                for other in 0..=self.n {
                    if other != j && self.filled[other] == self.n && self.column_sum(other) == s {
                        return false;
                    }
                }
            }
            true
        }

        fn assign(&mut self, k: usize) -> bool {
            if k == self.order.len() {
                return true;
            }
            let (i, j) = self.order[k];
            for &c in self.lists.list(i, j) {
                self.value[i][j] = Some(c.0 as i64);
                self.filled[j] += 1;
                if self.consistent(i, j) && self.assign(k + 1) {
                    return true;
                }
                self.filled[j] -= 1;
                self.value[i][j] = None;
            }
            false
        }
    }

    let mut search = Search { n, lists: &lists, order, value: vec![vec![None; n + 1]; n], filled: vec![0; n + 1] };
    if !search.assign(0) {
        return Err(PolyError::NoValuation);
    }
    let cells: Vec<Color> = search.value.iter().flatten().map(|v| Color(v.expect("assigned") as u32)).collect();
    let coloring = Coloring::new(grid, cells)?;
    debug_assert!(!evaluate_f_on(&coloring)?.is_zero());
    let cert = oracle::is_distinguishing(&coloring);
    if !cert.verdict {
        return Err(PolyError::Uncertified(format!("{:?}", cert.witness)));
    }
    Ok(coloring)
}
