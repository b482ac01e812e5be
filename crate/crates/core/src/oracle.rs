//! Brute-force ground truth: decide whether a coloring is distinguishing,
//! compute minimal distinguishing numbers and exhaustive list colorings on
//! small instances.
//!
//! The symmetry group searched is `S_n x S_m` acting on rows and columns.
//! Searches take explicit budgets and refuse work beyond them rather than
//! truncating.

use std::collections::HashMap;
use std::ops::ControlFlow;

use thiserror::Error;

use crate::grid::{Automorphism, Color, ColorVector, Coloring, GridError, GridSpec, ListAssignment, Permutation};

pub const DEFAULT_NAIVE_BUDGET: u128 = 100_000_000;
pub const DEFAULT_SEARCH_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("search needs {needed} steps, budget is {budget}")]
    Budget { needed: u128, budget: u128 },
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistinguishingCertificate {
    pub verdict: bool,
    /// A nontrivial color-preserving automorphism, present iff `verdict` is false.
    pub witness: Option<Automorphism>,
}

impl DistinguishingCertificate {
    fn distinguishing() -> Self {
        DistinguishingCertificate { verdict: true, witness: None }
    }

    fn broken_by(witness: Automorphism) -> Self {
        DistinguishingCertificate { verdict: false, witness: Some(witness) }
    }

    /// Re-checks the certificate against `c`: a witness must be nontrivial and
    /// fix `c`.
    pub fn is_consistent_with(&self, c: &Coloring) -> bool {
        match (&self.verdict, &self.witness) {
            (true, None) => true,
            (false, Some(w)) => !w.is_identity() && w.preserves(c),
            _ => false,
        }
    }
}

pub fn factorial_saturating(k: usize) -> u128 {
    (2..=k as u128).fold(1u128, |acc, x| acc.saturating_mul(x))
}

pub fn binomial_saturating(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        // acc * (n - i) / (i + 1) stays integral at every step
        acc = match acc.checked_mul(n - i) {
            Some(x) => x / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Decides whether `c` is distinguishing.
///
/// For each row permutation σ (lexicographic, identity first) a compatible
/// column permutation exists iff the σ-permuted column vectors are a
/// rearrangement of the original ones, so the work is `O(n! · m log m)`
/// vector comparisons.
pub fn is_distinguishing(c: &Coloring) -> DistinguishingCertificate {
    let grid = c.grid();
    let (n, m) = (grid.rows(), grid.cols());
    let columns = c.column_vectors();

    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| columns[a].cmp(&columns[b]));
    for w in order.windows(2) {
        if columns[w[0]] == columns[w[1]] {
            let mut pair = [w[0], w[1]];
            // report the earliest duplicate pair
            for (a, col) in columns.iter().enumerate() {
                if let Some(b) = (a + 1..m).find(|&b| columns[b] == *col) {
                    pair = [a, b];
                    break;
                }
            }
            let witness = Automorphism::new(Permutation::identity(n), Permutation::transposition(m, pair[0], pair[1]));
            return DistinguishingCertificate::broken_by(witness);
        }
    }

    let mut sigma = Permutation::identity(n);
    let mut permuted: Vec<ColorVector> = columns.clone();
    let mut permuted_order: Vec<usize> = (0..m).collect();
    while sigma.advance() {
        // column k after applying (σ, id): entry σ(i) holds the old entry i
        for (k, col) in columns.iter().enumerate() {
            for i in 0..n {
                permuted[k].0[sigma.image(i)] = col.0[i];
            }
        }
        permuted_order.sort_by(|&a, &b| permuted[a].cmp(&permuted[b]));
        let same = order.iter().zip(&permuted_order).all(|(&a, &b)| columns[a] == permuted[b]);
        if same {
            // pair equal vectors in sorted order: τ sends permuted column b to a
            let mut tau = vec![0; m];
            for (&a, &b) in order.iter().zip(&permuted_order) {
                tau[b] = a;
            }
            let witness = Automorphism::new(sigma.clone(), Permutation::new(tau).expect("pairing is a bijection"));
            debug_assert!(witness.preserves(c));
            return DistinguishingCertificate::broken_by(witness);
        }
    }
    DistinguishingCertificate::distinguishing()
}

/// Independent check by enumerating `S_n x S_m`. Column permutations are
/// enumerated depth-first in lexicographic order with a prefix cut as soon
/// as a mapped column disagrees.
pub fn naive_is_distinguishing(c: &Coloring, budget: u128) -> Result<DistinguishingCertificate, OracleError> {
    let grid = c.grid();
    let (n, m) = (grid.rows(), grid.cols());
    let needed = factorial_saturating(n).saturating_mul(factorial_saturating(m));
    if needed > budget {
        return Err(OracleError::Budget { needed, budget });
    }

    struct Search<'a> {
        c: &'a Coloring,
        sigma: Vec<usize>,
        tau: Vec<usize>,
        used: Vec<bool>,
        sigma_trivial: bool,
    }

    impl Search<'_> {
        // column j maps onto column t under (σ, τ(j) = t)
        fn column_fits(&self, j: usize, t: usize) -> bool {
            (0..self.c.grid().rows()).all(|i| self.c.get(self.sigma[i], t) == self.c.get(i, j))
        }

        fn extend(&mut self, j: usize) -> bool {
            let m = self.c.grid().cols();
            if j == m {
                return !(self.sigma_trivial && self.tau.iter().enumerate().all(|(a, &b)| a == b));
            }
            for t in 0..m {
                if self.used[t] || !self.column_fits(j, t) {
                    continue;
                }
                self.used[t] = true;
                self.tau[j] = t;
                if self.extend(j + 1) {
                    return true;
                }
                self.used[t] = false;
            }
            false
        }
    }

    let mut sigma = Permutation::identity(n);
    loop {
        let mut search = Search {
            c,
            sigma: sigma.images().to_vec(),
            tau: vec![0; m],
            used: vec![false; m],
            sigma_trivial: sigma.is_identity(),
        };
        if search.extend(0) {
            let tau = Permutation::new(search.tau).expect("injective choice");
            return Ok(DistinguishingCertificate::broken_by(Automorphism::new(sigma, tau)));
        }
        if !sigma.advance() {
            break;
        }
    }
    Ok(DistinguishingCertificate::distinguishing())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinDistinguishing {
    pub k: usize,
    pub witness: Coloring,
}

/// All vectors of `{0..k-1}^n` in lexicographic order.
fn all_vectors(n: usize, k: usize) -> Vec<ColorVector> {
    let total = k.pow(n as u32);
    (0..total)
        .map(|mut x| {
            let mut v = vec![Color(0); n];
            for slot in v.iter_mut().rev() {
                *slot = Color((x % k) as u32);
                x /= k;
            }
            ColorVector(v)
        })
        .collect()
}

/// Lexicographic successor of a `len`-subset of `0..universe` held as
/// increasing indices.
pub(crate) fn next_combination(idx: &mut [usize], universe: usize) -> bool {
    let len = idx.len();
    let mut i = len;
    while i > 0 {
        i -= 1;
        if idx[i] < universe - len + i {
            idx[i] += 1;
            for t in i + 1..len {
                idx[t] = idx[t - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// True when some recoloring gives a lexicographically smaller sorted column
/// set, i.e. this set is not its color-renaming orbit's representative.
fn dominated_by_recoloring(set: &[ColorVector], k: usize) -> bool {
    let mut pi: Vec<u32> = (0..k as u32).collect();
    let mut image: Vec<ColorVector> = set.to_vec();
    while crate::grid::next_permutation(&mut pi) {
        for (dst, src) in image.iter_mut().zip(set) {
            for (d, s) in dst.0.iter_mut().zip(&src.0) {
                *d = Color(pi[s.0 as usize]);
            }
        }
        image.sort();
        if image.as_slice() < set {
            return true;
        }
    }
    false
}

/// Largest palette for which recoloring orbits are pruned; beyond it the
/// `k!` check costs more than it saves.
const RECOLOR_PRUNE_MAX_K: usize = 6;

/// Searches for a distinguishing coloring with colors `0..k`.
///
/// Columns of a distinguishing coloring are pairwise distinct and column
/// order is irrelevant, so candidates are `m`-subsets of `[k]^n` taken in
/// sorted order; subsets that are not minimal under color renaming are
/// skipped. The budget bounds the number of subsets, `C(k^n, m)`.
pub fn find_distinguishing_k_coloring(grid: GridSpec, k: usize, budget: u128) -> Result<Option<Coloring>, OracleError> {
    let (n, m) = (grid.rows(), grid.cols());
    let universe = (k as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if universe < m as u128 {
        return Ok(None);
    }
    let needed = binomial_saturating(universe, m as u128);
    if needed > budget || universe > usize::MAX as u128 {
        return Err(OracleError::Budget { needed, budget });
    }
    let vectors = all_vectors(n, k);
    let mut idx: Vec<usize> = (0..m).collect();
    let mut set: Vec<ColorVector> = Vec::with_capacity(m);
    loop {
        set.clear();
        set.extend(idx.iter().map(|&t| vectors[t].clone()));
        if k > RECOLOR_PRUNE_MAX_K || !dominated_by_recoloring(&set, k) {
            let c = Coloring::from_columns(grid, &set)?;
            if is_distinguishing(&c).verdict {
                return Ok(Some(c));
            }
        }
        if !next_combination(&mut idx, vectors.len()) {
            return Ok(None);
        }
    }
}

/// Least `k` admitting a distinguishing `k`-coloring, with a witness.
pub fn min_distinguishing_number(grid: GridSpec, budget: u128) -> Result<MinDistinguishing, OracleError> {
    // k = m always works: all columns get different monochromatic colors
    for k in 1..=grid.cols() {
        if let Some(witness) = find_distinguishing_k_coloring(grid, k, budget)? {
            return Ok(MinDistinguishing { k, witness });
        }
    }
    unreachable!("a coloring with m distinct monochromatic columns is distinguishing")
}

/// All L-colorings of one column, as vectors in lexicographic order.
pub(crate) fn column_candidates(lists: &ListAssignment, col: usize) -> Vec<ColorVector> {
    let n = lists.grid().rows();
    let mut out = vec![ColorVector(Vec::with_capacity(n))];
    for i in 0..n {
        let list = lists.list(i, col);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                list.iter().map(move |&c| {
                    let mut v = prefix.clone();
                    v.0.push(c);
                    v
                })
            })
            .collect();
    }
    out
}

/// Visits every L-coloring with pairwise distinct column vectors in
/// lexicographic order (column 0 most significant). Budget bounds the total
/// number of L-colorings.
pub fn for_each_distinct_column_coloring<F>(lists: &ListAssignment, budget: u128, mut visit: F) -> Result<(), OracleError>
where
    F: FnMut(&[ColorVector]) -> ControlFlow<()>,
{
    let needed = lists.coloring_count();
    if needed > budget {
        return Err(OracleError::Budget { needed, budget });
    }
    let m = lists.grid().cols();
    let candidates: Vec<Vec<ColorVector>> = (0..m).map(|j| column_candidates(lists, j)).collect();

    fn walk<F: FnMut(&[ColorVector]) -> ControlFlow<()>>(
        candidates: &[Vec<ColorVector>],
        chosen: &mut Vec<ColorVector>,
        visit: &mut F,
    ) -> ControlFlow<()> {
        let j = chosen.len();
        if j == candidates.len() {
            return visit(chosen);
        }
        for v in &candidates[j] {
            if chosen.contains(v) {
                continue;
            }
            chosen.push(v.clone());
            walk(candidates, chosen, visit)?;
            chosen.pop();
        }
        ControlFlow::Continue(())
    }

    let mut chosen = Vec::with_capacity(m);
    let _ = walk(&candidates, &mut chosen, &mut visit);
    Ok(())
}

/// First distinguishing L-coloring in lexicographic order, or `None` when no
/// L-coloring is distinguishing.
pub fn list_distinguishing_exhaustive(lists: &ListAssignment, budget: u128) -> Result<Option<Coloring>, OracleError> {
    let grid = lists.grid();
    let mut found = None;
    for_each_distinct_column_coloring(lists, budget, |cols| {
        let c = Coloring::from_columns(grid, cols).expect("column shapes match grid");
        if is_distinguishing(&c).verdict {
            found = Some(c);
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    })?;
    Ok(found)
}

/// Histogram of column vectors; handy for certificate checks.
pub fn column_vector_counts(c: &Coloring) -> HashMap<ColorVector, usize> {
    let mut counts = HashMap::new();
    for v in c.column_vectors() {
        *counts.entry(v).or_default() += 1;
    }
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn coloring(rows: &[&[u32]]) -> Coloring {
        Coloring::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    /// Enumerates every (σ, τ) with no pruning at all.
    fn brute_force_preservers(c: &Coloring) -> Vec<Automorphism> {
        let g = c.grid();
        let mut out = Vec::new();
        let mut sigma = Permutation::identity(g.rows());
        loop {
            let mut tau = Permutation::identity(g.cols());
            loop {
                let a = Automorphism::new(sigma.clone(), tau.clone());
                if crate::grid::apply_automorphism(&a, c).unwrap() == *c {
                    out.push(a);
                }
                if !tau.advance() {
                    break;
                }
            }
            if !sigma.advance() {
                break;
            }
        }
        out
    }

    #[test]
    fn two_by_three_staircase_is_distinguishing() {
        let c = coloring(&[&[1, 1, 2], &[1, 2, 2]]);
        assert_eq!(brute_force_preservers(&c).len(), 1);
        assert!(is_distinguishing(&c).verdict);
        assert!(naive_is_distinguishing(&c, DEFAULT_NAIVE_BUDGET).unwrap().verdict);
    }

    #[test]
    fn all_four_vectors_broken_by_row_swap() {
        // ⟨1,1⟩ ⟨1,2⟩ ⟨2,1⟩ ⟨2,2⟩
        let c = coloring(&[&[1, 1, 2, 2], &[1, 2, 1, 2]]);
        let cert = is_distinguishing(&c);
        assert!(!cert.verdict);
        let w = cert.witness.clone().unwrap();
        assert_eq!(w.sigma.one_based(), vec![2, 1]);
        assert_eq!(w.tau.one_based(), vec![1, 3, 2, 4]);
        assert!(cert.is_consistent_with(&c));
        let naive = naive_is_distinguishing(&c, DEFAULT_NAIVE_BUDGET).unwrap();
        assert!(!naive.verdict);
        assert!(naive.is_consistent_with(&c));
        assert_eq!(brute_force_preservers(&c).len(), 2);
    }

    #[test]
    fn duplicate_columns_give_column_swap() {
        let c = coloring(&[&[1, 2, 1], &[3, 3, 3]]);
        let cert = is_distinguishing(&c);
        let w = cert.witness.unwrap();
        assert!(w.sigma.is_identity());
        assert_eq!(w.tau.one_based(), vec![3, 2, 1]);
        assert!(!naive_is_distinguishing(&c, DEFAULT_NAIVE_BUDGET).unwrap().verdict);
    }

    #[test]
    fn single_row_cases() {
        assert!(naive_is_distinguishing(&coloring(&[&[1, 2]]), 10).unwrap().verdict);
        assert!(!naive_is_distinguishing(&coloring(&[&[1, 1]]), 10).unwrap().verdict);
        assert!(is_distinguishing(&coloring(&[&[1, 2]])).verdict);
        assert!(!is_distinguishing(&coloring(&[&[1, 1]])).verdict);
    }

    #[test]
    fn naive_refuses_over_budget() {
        let c = coloring(&[&[1, 2, 3, 4]]);
        assert_eq!(naive_is_distinguishing(&c, 23), Err(OracleError::Budget { needed: 24, budget: 23 }));
    }

    #[test]
    fn small_minimal_numbers() {
        let g = |n, m| GridSpec::new(n, m).unwrap();
        assert_eq!(min_distinguishing_number(g(2, 3), DEFAULT_SEARCH_BUDGET).unwrap().k, 2);
        assert_eq!(min_distinguishing_number(g(2, 4), DEFAULT_SEARCH_BUDGET).unwrap().k, 3);
        assert_eq!(min_distinguishing_number(g(1, 2), DEFAULT_SEARCH_BUDGET).unwrap().k, 2);
        let r = min_distinguishing_number(g(2, 4), DEFAULT_SEARCH_BUDGET).unwrap();
        assert!(is_distinguishing(&r.witness).verdict);
        assert!(r.witness.distinct_colors() <= 3);
    }

    /// Oracle for the orbit pruning: plain enumeration of all 2-colorings.
    #[test]
    fn no_two_coloring_of_k2_by_k4_is_distinguishing() {
        let g = GridSpec::new(2, 4).unwrap();
        for bits in 0u32..256 {
            let cells = (0..8).map(|b| Color((bits >> b) & 1)).collect();
            let c = Coloring::new(g, cells).unwrap();
            assert!(!is_distinguishing(&c).verdict);
        }
    }

    #[test]
    fn min_search_refuses_over_budget() {
        let g = GridSpec::new(2, 3).unwrap();
        assert!(matches!(find_distinguishing_k_coloring(g, 2, 3), Err(OracleError::Budget { needed: 4, .. })));
    }

    #[test]
    fn exhaustive_lists() {
        let l = ListAssignment::constant(GridSpec::new(2, 3).unwrap(), &[1, 2]).unwrap();
        let c = list_distinguishing_exhaustive(&l, 1 << 20).unwrap().unwrap();
        assert!(l.admits(&c));
        assert!(is_distinguishing(&c).verdict);
        assert_eq!(column_vector_counts(&c).len(), 3);

        let l = ListAssignment::constant(GridSpec::new(1, 2).unwrap(), &[1]).unwrap();
        assert_eq!(list_distinguishing_exhaustive(&l, 10).unwrap(), None);
        let l = ListAssignment::constant(GridSpec::new(2, 4).unwrap(), &[1, 2]).unwrap();
        assert_eq!(list_distinguishing_exhaustive(&l, 1 << 20).unwrap(), None);
        assert!(list_distinguishing_exhaustive(&l, 255).is_err());
    }

    #[test]
    fn combinations_in_order() {
        let mut idx = vec![0, 1];
        let mut all = vec![idx.clone()];
        while next_combination(&mut idx, 4) {
            all.push(idx.clone());
        }
        assert_eq!(all, vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]);
        assert_eq!(binomial_saturating(9, 5), 126);
        assert_eq!(binomial_saturating(3, 5), 0);
    }
}
