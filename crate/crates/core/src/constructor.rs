//! Two-phase list colorer.
//!
//! Phase one picks a column set `A` and colors it so that the sub-grid on
//! `A` is distinguishing, which rules out every nontrivial row permutation.
//! Phase two colors the remaining columns so that none of them repeats a
//! color pattern (multiset) found in `A` and no two of them share a color
//! vector. A symmetry of the result must then map `A` to itself, fix every
//! row, and hence fix every column.
//!
//! Dead ends backtrack through phase two, then through alternative colorings
//! of `A`. When the plan is exhausted, [`solve`] falls back to the exhaustive
//! oracle so that its verdict is always exact.

use std::collections::{BTreeSet, HashSet};
use std::ops::ControlFlow;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::grid::{Color, ColorPattern, ColorVector, Coloring, GridError, GridSpec, ListAssignment};
use crate::oracle::{
    column_candidates, for_each_distinct_column_coloring, is_distinguishing, list_distinguishing_exhaustive,
    DistinguishingCertificate, OracleError,
};
use crate::poly::{cn_list_coloring, PolyError};

pub const DEFAULT_SOLVE_BUDGET: u128 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructorError {
    #[error("work exceeded the budget of {budget} steps")]
    Budget { budget: u128 },
    #[error("no distinguishing coloring of the chosen columns")]
    NoAColoring,
    #[error("every coloring of the chosen columns dead-ends in phase two")]
    PlanExhausted,
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl From<OracleError> for ConstructorError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Budget { budget, .. } => ConstructorError::Budget { budget },
            OracleError::Grid(g) => ConstructorError::Grid(g),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ColumnClass {
    pub index: usize,
    pub list_uniform: bool,
    /// Union of the column's lists.
    pub union: Vec<Color>,
}

pub fn classify_columns(lists: &ListAssignment) -> Vec<ColumnClass> {
    let g = lists.grid();
    (0..g.cols())
        .map(|j| {
            let first = lists.list(0, j);
            let list_uniform = (1..g.rows()).all(|i| lists.list(i, j) == first);
            let union: BTreeSet<Color> = (0..g.rows()).flat_map(|i| lists.list(i, j).iter().copied()).collect();
            let all_two_plus = (0..g.rows()).all(|i| lists.list(i, j).len() >= 2);
            // two different lists of size at least two cover three colors
            assert!(list_uniform || !all_two_plus || union.len() >= 3, "column {j} breaks the union bound");
            ColumnClass { index: j, list_uniform, union: union.into_iter().collect() }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AStrategy {
    CnLemma3,
    FixedDistinguishing2Coloring,
    BacktrackSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum APolicy {
    /// Uniform columns, topped up to `n + 1` with the lowest other indices.
    Lemma,
    /// The first `count` columns, at least `n + 1` of them.
    FirstColumns(usize),
}

/// Smallest `t` with `1.09^t >= n`.
pub fn log109_columns(n: usize) -> usize {
    let (mut lhs, mut rhs) = (num_bigint::BigUint::from(1u32), num_bigint::BigUint::from(n));
    let mut t = 0;
    while lhs < rhs {
        lhs *= 109u32;
        rhs *= 100u32;
        t += 1;
    }
    t
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstructionPlan {
    pub a_columns: Vec<usize>,
    pub strategy: AStrategy,
    pub phase2_order: Vec<usize>,
}

pub fn choose_a(lists: &ListAssignment, classes: &[ColumnClass], policy: APolicy) -> Result<ConstructionPlan, ConstructorError> {
    let g = lists.grid();
    let (n, m) = (g.rows(), g.cols());
    if m <= n {
        return Err(GridError::Unsupported { n, m }.into());
    }
    let uniform: Vec<usize> = classes.iter().filter(|c| c.list_uniform).map(|c| c.index).collect();
    let a_columns: Vec<usize> = match policy {
        APolicy::Lemma if uniform.len() >= n + 1 => uniform.clone(),
        APolicy::Lemma => {
            let mut a = uniform.clone();
            a.extend(classes.iter().filter(|c| !c.list_uniform).map(|c| c.index).take(n + 1 - uniform.len()));
            a
        }
        APolicy::FirstColumns(count) => (0..count.max(n + 1).min(m)).collect(),
    };
    let min_list = a_columns.iter().flat_map(|&j| (0..n).map(move |i| (i, j))).map(|(i, j)| lists.list(i, j).len()).min();
    let two_plus = min_list.unwrap_or(0) >= 2;
    let all_uniform = a_columns.iter().all(|&j| classes[j].list_uniform);
    let strategy = if two_plus && all_uniform && a_columns.len() >= n + 1 {
        AStrategy::FixedDistinguishing2Coloring
    } else if two_plus && a_columns.len() == n + 1 {
        AStrategy::CnLemma3
    } else {
        AStrategy::BacktrackSearch
    };
    let in_a: HashSet<usize> = a_columns.iter().copied().collect();
    let phase2_order = (0..m).filter(|j| !in_a.contains(j)).collect();
    Ok(ConstructionPlan { a_columns, strategy, phase2_order })
}

fn sub_lists(lists: &ListAssignment, plan: &ConstructionPlan) -> Result<ListAssignment, ConstructorError> {
    Ok(lists.restrict_columns(&plan.a_columns)?)
}

/// First distinguishing 0/1 coloring of `K_n x K_t` in lexicographic order,
/// preferring one without monochromatic columns.
pub fn distinguishing_binary_pattern(n: usize, t: usize, budget: u128) -> Result<Option<Vec<ColorVector>>, ConstructorError> {
    let grid = GridSpec::new(n, t)?;
    let binary = ListAssignment::constant(grid, &[0, 1])?;
    for allow_mono in [false, true] {
        let mut found = None;
        for_each_distinct_column_coloring(&binary, budget, |cols| {
            if !allow_mono && cols.iter().any(|v| v.0.iter().all(|&c| c == v.0[0])) {
                return ControlFlow::Continue(());
            }
            let c = Coloring::from_columns(grid, cols).expect("shape matches");
            if is_distinguishing(&c).verdict {
                found = Some(cols.to_vec());
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        })?;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// A distinguishing coloring of the sub-grid on `A`, as column vectors in
/// the order of `plan.a_columns`, together with the strategy that produced it.
pub fn color_a(lists: &ListAssignment, plan: &ConstructionPlan, budget: u128) -> Result<(Vec<ColorVector>, AStrategy), ConstructorError> {
    let sub = sub_lists(lists, plan)?;
    match plan.strategy {
        AStrategy::CnLemma3 => {
            let c = cn_list_coloring(&sub)?;
            return Ok((c.column_vectors(), AStrategy::CnLemma3));
        }
        AStrategy::FixedDistinguishing2Coloring => {
            if let Ok(Some(pattern)) = distinguishing_binary_pattern(sub.grid().rows(), sub.grid().cols(), budget) {
                let cols: Vec<ColorVector> = pattern
                    .iter()
                    .enumerate()
                    .map(|(j, v)| {
                        let list = sub.list(0, j);
                        let (lo, hi) = (list[0], list[list.len() - 1]);
                        ColorVector(v.0.iter().map(|&b| if b.0 == 0 { lo } else { hi }).collect())
                    })
                    .collect();
                let c = Coloring::from_columns(sub.grid(), &cols)?;
                if is_distinguishing(&c).verdict {
                    return Ok((cols, AStrategy::FixedDistinguishing2Coloring));
                }
            }
        }
        AStrategy::BacktrackSearch => {}
    }
    match list_distinguishing_exhaustive(&sub, budget)? {
        Some(c) => Ok((c.column_vectors(), AStrategy::BacktrackSearch)),
        None => Err(ConstructorError::NoAColoring),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AdmissibleCount {
    pub value: u128,
    pub exact: bool,
}

const SAMPLE_DRAWS: u32 = 4096;

/// Number of L-colorings of column `col` whose pattern is not forbidden.
/// Beyond `budget` colorings the count is estimated from a fixed-seed sample.
pub fn admissible_colorings_count(
    lists: &ListAssignment,
    col: usize,
    forbidden: &[ColorPattern],
    budget: u128,
) -> AdmissibleCount {
    let total = lists.column_coloring_count(col);
    let forbidden: HashSet<&ColorPattern> = forbidden.iter().collect();
    if total <= budget {
        let value = column_candidates(lists, col).iter().filter(|v| !forbidden.contains(&v.pattern())).count() as u128;
        return AdmissibleCount { value, exact: true };
    }
    let mut rng = ChaCha8Rng::seed_from_u64(col as u64);
    let n = lists.grid().rows();
    let mut hits = 0u128;
    for _ in 0..SAMPLE_DRAWS {
        let v: Vec<Color> = (0..n)
            .map(|i| {
                let l = lists.list(i, col);
                l[rng.gen_range(0..l.len())]
            })
            .collect();
        if !forbidden.contains(&ColorPattern::from_colors(&v)) {
            hits += 1;
        }
    }
    let value = match total.checked_mul(hits) {
        Some(x) => x / SAMPLE_DRAWS as u128,
        None => total / SAMPLE_DRAWS as u128 * hits,
    };
    AdmissibleCount { value, exact: false }
}

struct Steps {
    used: u128,
    budget: u128,
}

impl Steps {
    fn charge(&mut self, k: u128) -> Result<(), ConstructorError> {
        self.used = self.used.saturating_add(k);
        if self.used > self.budget {
            return Err(ConstructorError::Budget { budget: self.budget });
        }
        Ok(())
    }
}

/// Phase-two candidates for one column: vectors whose pattern avoids `A`,
/// farthest from `A`'s patterns first, then lexicographic.
fn phase2_candidates(lists: &ListAssignment, col: usize, a_patterns: &[ColorPattern]) -> Vec<ColorVector> {
    let mut scored: Vec<(usize, ColorVector)> = column_candidates(lists, col)
        .into_iter()
        .filter_map(|v| {
            let p = v.pattern();
            let dist = a_patterns.iter().map(|q| p.distance(q)).min().unwrap_or(usize::MAX);
            (dist > 0).then_some((dist, v))
        })
        .collect();
    scored.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    scored.into_iter().map(|(_, v)| v).collect()
}

fn phase2_search(
    candidates: &[Vec<ColorVector>],
    chosen: &mut Vec<ColorVector>,
    used: &mut HashSet<ColorVector>,
    steps: &mut Steps,
) -> Result<bool, ConstructorError> {
    let j = chosen.len();
    if j == candidates.len() {
        return Ok(true);
    }
    for v in &candidates[j] {
        steps.charge(1)?;
        if used.contains(v) {
            continue;
        }
        used.insert(v.clone());
        chosen.push(v.clone());
        if phase2_search(candidates, chosen, used, steps)? {
            return Ok(true);
        }
        chosen.pop();
        used.remove(v);
    }
    Ok(false)
}

/// Colors the columns outside `A` in `plan.phase2_order`; `None` when the
/// search space for this coloring of `A` is exhausted.
pub fn greedy_phase2(
    lists: &ListAssignment,
    plan: &ConstructionPlan,
    a_coloring: &[ColorVector],
    budget: u128,
) -> Result<Option<Coloring>, ConstructorError> {
    let mut steps = Steps { used: 0, budget };
    phase2_with(lists, plan, a_coloring, &mut steps)
}

fn phase2_with(
    lists: &ListAssignment,
    plan: &ConstructionPlan,
    a_coloring: &[ColorVector],
    steps: &mut Steps,
) -> Result<Option<Coloring>, ConstructorError> {
    let a_patterns: Vec<ColorPattern> = a_coloring.iter().map(ColorVector::pattern).collect();
    let mut candidates = Vec::with_capacity(plan.phase2_order.len());
    for &j in &plan.phase2_order {
        steps.charge(lists.column_coloring_count(j))?;
        candidates.push(phase2_candidates(lists, j, &a_patterns));
    }
    let mut chosen = Vec::with_capacity(candidates.len());
    if !phase2_search(&candidates, &mut chosen, &mut HashSet::new(), steps)? {
        return Ok(None);
    }
    let g = lists.grid();
    let mut columns = vec![ColorVector(Vec::new()); g.cols()];
    for (v, &j) in a_coloring.iter().zip(&plan.a_columns) {
        columns[j] = v.clone();
    }
    for (v, &j) in chosen.into_iter().zip(&plan.phase2_order) {
        columns[j] = v;
    }
    Ok(Some(Coloring::from_columns(g, &columns)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SolvePath {
    Constructor { strategy: AStrategy, a_attempts: u64 },
    Exhaustive,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveOutcome {
    Found { coloring: Coloring, certificate: DistinguishingCertificate, path: SolvePath, plan: ConstructionPlan },
    Nonexistent { plan: ConstructionPlan },
    Refused { budget: u128, plan: Option<ConstructionPlan> },
}

impl SolveOutcome {
    pub fn status(&self) -> &'static str {
        match self {
            SolveOutcome::Found { .. } => "found",
            SolveOutcome::Nonexistent { .. } => "nonexistent",
            SolveOutcome::Refused { .. } => "refused",
        }
    }

    pub fn coloring(&self) -> Option<&Coloring> {
        match self {
            SolveOutcome::Found { coloring, .. } => Some(coloring),
            _ => None,
        }
    }
}

/// Runs the plan: the strategy's coloring of `A` first, then every other
/// distinguishing coloring of `A` in lexicographic order.
pub fn construct(lists: &ListAssignment, plan: &ConstructionPlan, budget: u128) -> Result<(Coloring, SolvePath), ConstructorError> {
    let mut steps = Steps { used: 0, budget };
    let (first, strategy) = color_a(lists, plan, budget)?;
    if let Some(c) = phase2_with(lists, plan, &first, &mut steps)? {
        return Ok((c, SolvePath::Constructor { strategy, a_attempts: 1 }));
    }
    let sub = sub_lists(lists, plan)?;
    let mut attempts = 1u64;
    let mut result: Result<Option<Coloring>, ConstructorError> = Ok(None);
    for_each_distinct_column_coloring(&sub, budget, |cols| {
        if cols == first.as_slice() {
            return ControlFlow::Continue(());
        }
        if let Err(e) = steps.charge(1) {
            result = Err(e);
            return ControlFlow::Break(());
        }
        let c = Coloring::from_columns(sub.grid(), cols).expect("shape matches");
        if !is_distinguishing(&c).verdict {
            return ControlFlow::Continue(());
        }
        attempts += 1;
        match phase2_with(lists, plan, cols, &mut steps) {
            Ok(None) => ControlFlow::Continue(()),
            Ok(Some(found)) => {
                result = Ok(Some(found));
                ControlFlow::Break(())
            }
            Err(e) => {
                result = Err(e);
                ControlFlow::Break(())
            }
        }
    })?;
    match result? {
        Some(c) => Ok((c, SolvePath::Constructor { strategy, a_attempts: attempts })),
        None => Err(ConstructorError::PlanExhausted),
    }
}

/// Checks the properties every constructor output must have: colors from
/// the lists, phase-two patterns outside `A`'s, pairwise distinct phase-two
/// vectors, and an oracle verdict of distinguishing.
pub fn check_construction(lists: &ListAssignment, plan: &ConstructionPlan, c: &Coloring) -> Result<(), String> {
    if !lists.admits(c) {
        return Err("a cell color is outside its list".into());
    }
    let vectors = c.column_vectors();
    let a_patterns: HashSet<ColorPattern> = plan.a_columns.iter().map(|&j| vectors[j].pattern()).collect();
    let mut seen = HashSet::new();
    for &j in &plan.phase2_order {
        if a_patterns.contains(&vectors[j].pattern()) {
            return Err(format!("column {j} repeats a pattern of A"));
        }
        if !seen.insert(&vectors[j]) {
            return Err(format!("column {j} repeats a phase-two color vector"));
        }
    }
    if !is_distinguishing(c).verdict {
        return Err("oracle rejects the coloring".into());
    }
    Ok(())
}

/// Full pipeline with the lemma policy: classify, choose `A`, color `A`,
/// phase two, certify. If the plan fails, the exhaustive search decides.
pub fn solve(lists: &ListAssignment, budget: u128) -> SolveOutcome {
    solve_with_policy(lists, APolicy::Lemma, budget)
}

pub fn solve_with_policy(lists: &ListAssignment, policy: APolicy, budget: u128) -> SolveOutcome {
    let classes = classify_columns(lists);
    let plan = match choose_a(lists, &classes, policy) {
        Ok(p) => p,
        Err(_) => return SolveOutcome::Refused { budget, plan: None },
    };
    match construct(lists, &plan, budget) {
        Ok((coloring, path)) => {
            let certificate = is_distinguishing(&coloring);
            assert!(certificate.verdict, "constructor output must be distinguishing");
            return SolveOutcome::Found { coloring, certificate, path, plan };
        }
        Err(ConstructorError::Budget { .. }) => return SolveOutcome::Refused { budget, plan: Some(plan) },
        Err(_) => {}
    }
    match list_distinguishing_exhaustive(lists, budget) {
        Ok(Some(coloring)) => {
            let certificate = is_distinguishing(&coloring);
            SolveOutcome::Found { coloring, certificate, path: SolvePath::Exhaustive, plan }
        }
        Ok(None) => SolveOutcome::Nonexistent { plan },
        Err(_) => SolveOutcome::Refused { budget, plan: Some(plan) },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_lists(n: usize, m: usize, list: &[u32]) -> ListAssignment {
        ListAssignment::constant(GridSpec::new(n, m).unwrap(), list).unwrap()
    }

    /// Lists where the columns in `uniform` carry `{1,2}` everywhere and the
    /// rest vary by row.
    fn mixed_lists(n: usize, m: usize, uniform: &[usize]) -> ListAssignment {
        let rows: Vec<Vec<Vec<u32>>> = (0..n)
            .map(|i| (0..m).map(|j| if uniform.contains(&j) { vec![1, 2] } else { vec![1, 2 + i as u32 % 2 + 1] }).collect())
            .collect();
        ListAssignment::from_rows(&rows).unwrap()
    }

    #[test]
    fn classify_examples() {
        let l = ListAssignment::from_rows(&[
            vec![vec![1, 2], vec![1, 2], vec![4]],
            vec![vec![1, 2], vec![1, 3], vec![4]],
        ])
        .unwrap();
        let c = classify_columns(&l);
        assert!(c[2].list_uniform);
        assert!(c[0].list_uniform);
        assert_eq!(c[0].union, vec![Color(1), Color(2)]);
        assert!(!c[1].list_uniform);
        assert_eq!(c[1].union, vec![Color(1), Color(2), Color(3)]);
        assert!(classify_columns(&uniform_lists(2, 4, &[1, 2])).iter().all(|c| c.list_uniform));
    }

    #[test]
    fn choose_a_examples() {
        let l = mixed_lists(2, 4, &[]);
        let p = choose_a(&l, &classify_columns(&l), APolicy::Lemma).unwrap();
        assert_eq!((p.a_columns.clone(), p.strategy), (vec![0, 1, 2], AStrategy::CnLemma3));
        assert_eq!(p.phase2_order, vec![3]);

        let l = uniform_lists(2, 4, &[1, 2]);
        let p = choose_a(&l, &classify_columns(&l), APolicy::Lemma).unwrap();
        assert_eq!((p.a_columns, p.strategy), (vec![0, 1, 2, 3], AStrategy::FixedDistinguishing2Coloring));

        // 1-based columns {2,4} uniform: topped up with 1 and 3 to n + 1 = 4
        let l = mixed_lists(3, 5, &[1, 3]);
        let p = choose_a(&l, &classify_columns(&l), APolicy::Lemma).unwrap();
        assert_eq!((p.a_columns, p.strategy), (vec![1, 3, 0, 2], AStrategy::CnLemma3));
        assert_eq!(p.phase2_order, vec![4]);

        let l = ListAssignment::from_rows(&[vec![vec![1, 2], vec![1], vec![1, 3]], vec![vec![1, 2], vec![1], vec![2, 3]]])
            .unwrap();
        let p = choose_a(&l, &classify_columns(&l), APolicy::Lemma).unwrap();
        assert_eq!((p.a_columns, p.strategy), (vec![0, 1, 2], AStrategy::BacktrackSearch));
    }

    #[test]
    fn first_columns_policy() {
        assert_eq!(log109_columns(1), 0);
        assert_eq!(log109_columns(2), 9);
        assert_eq!(log109_columns(100), 54);
        let l = mixed_lists(2, 12, &[]);
        let p = choose_a(&l, &classify_columns(&l), APolicy::FirstColumns(log109_columns(2))).unwrap();
        assert_eq!(p.a_columns, (0..9).collect::<Vec<_>>());
        assert_eq!(p.strategy, AStrategy::BacktrackSearch);
        let p = choose_a(&l, &classify_columns(&l), APolicy::FirstColumns(1)).unwrap();
        assert_eq!((p.a_columns.len(), p.strategy), (3, AStrategy::CnLemma3));
    }

    #[test]
    fn color_a_examples() {
        let l = uniform_lists(2, 3, &[1, 2]);
        let plan = ConstructionPlan { a_columns: vec![0, 1, 2], strategy: AStrategy::CnLemma3, phase2_order: vec![] };
        let (cols, s) = color_a(&l, &plan, 1000).unwrap();
        assert_eq!(s, AStrategy::CnLemma3);
        assert!(is_distinguishing(&Coloring::from_columns(l.grid(), &cols).unwrap()).verdict);

        let l = ListAssignment::from_rows(&[vec![vec![1, 2], vec![3, 4]]]).unwrap();
        let plan = ConstructionPlan { a_columns: vec![0, 1], strategy: AStrategy::CnLemma3, phase2_order: vec![] };
        let (cols, _) = color_a(&l, &plan, 1000).unwrap();
        assert_ne!(cols[0], cols[1]);

        // no 0/1 pattern on three columns of height two avoids monochromatic columns
        let l = uniform_lists(2, 3, &[5, 9]);
        let plan = ConstructionPlan {
            a_columns: vec![0, 1, 2],
            strategy: AStrategy::FixedDistinguishing2Coloring,
            phase2_order: vec![],
        };
        let (cols, s) = color_a(&l, &plan, 1000).unwrap();
        assert_eq!(s, AStrategy::FixedDistinguishing2Coloring);
        assert!(cols.iter().flat_map(|v| v.0.iter()).all(|c| *c == Color(5) || *c == Color(9)));
        assert!(is_distinguishing(&Coloring::from_columns(l.grid(), &cols).unwrap()).verdict);
    }

    #[test]
    fn binary_pattern_prefers_two_colored_columns() {
        let p = distinguishing_binary_pattern(3, 4, 1 << 20).unwrap().unwrap();
        assert!(p.iter().all(|v| v.0.contains(&Color(0)) && v.0.contains(&Color(1))));
        assert!(distinguishing_binary_pattern(2, 4, 1 << 20).unwrap().is_none());
    }

    #[test]
    fn admissible_count_examples() {
        let l = uniform_lists(2, 3, &[1, 2]);
        let mixed = ColorPattern::from_colors(&[Color(1), Color(2)]);
        assert_eq!(admissible_colorings_count(&l, 0, &[mixed], 100), AdmissibleCount { value: 2, exact: true });
        assert_eq!(admissible_colorings_count(&l, 0, &[], 100).value, 4);
        let all: Vec<ColorPattern> = column_candidates(&l, 0).iter().map(ColorVector::pattern).collect();
        assert_eq!(admissible_colorings_count(&l, 0, &all, 100).value, 0);
        let est = admissible_colorings_count(&uniform_lists(8, 9, &[1, 2]), 0, &[], 10);
        assert!(!est.exact && est.value == 256);
    }

    #[test]
    fn phase2_dead_end_on_two_colors() {
        let l = uniform_lists(2, 4, &[1, 2]);
        let plan = ConstructionPlan { a_columns: vec![0, 1, 2], strategy: AStrategy::CnLemma3, phase2_order: vec![3] };
        let a = vec![ColorVector::from_ids(&[1, 1]), ColorVector::from_ids(&[1, 2]), ColorVector::from_ids(&[2, 2])];
        assert_eq!(greedy_phase2(&l, &plan, &a, 1000).unwrap(), None);
        assert!(matches!(construct(&l, &plan, 1000), Err(ConstructorError::PlanExhausted)));
        assert!(matches!(solve(&l, 1000), SolveOutcome::Nonexistent { .. }));
    }

    #[test]
    fn solve_examples() {
        let l = uniform_lists(2, 3, &[1, 2]);
        let out = solve(&l, 1 << 20);
        let SolveOutcome::Found { coloring, plan, .. } = &out else { panic!("{out:?}") };
        check_construction(&l, plan, coloring).unwrap();

        let l = uniform_lists(2, 4, &[1, 2, 3]);
        let SolveOutcome::Found { coloring, certificate, .. } = solve(&l, 1 << 20) else { panic!() };
        assert!(certificate.verdict && l.admits(&coloring));

        let l = ListAssignment::from_rows(&[vec![vec![1], vec![1]]]).unwrap();
        assert!(matches!(solve(&l, 1000), SolveOutcome::Nonexistent { .. }));
    }

    #[test]
    fn refusal_on_zero_budget() {
        let l = uniform_lists(2, 4, &[1, 2, 3]);
        assert!(matches!(solve(&l, 0), SolveOutcome::Refused { .. }));
    }

    #[test]
    fn deterministic() {
        let l = mixed_lists(3, 6, &[0, 4]);
        assert_eq!(solve(&l, 1 << 20), solve(&l, 1 << 20));
    }
}
