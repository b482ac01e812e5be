//! The eight end-to-end checks, each returning a pass/fail report.

use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use serde::Serialize;

use crate::bounds::{self, BinomConfig, BoundsError, Interval, Precision};
use crate::constructor::{self, AStrategy, SolveOutcome, SolvePath};
pub use crate::corpus::rng_from_seed as rng_seeded;
use crate::corpus::{random_instance, random_ragged_instance, rng_from_seed, Stratum};
use crate::exact::{distinguishing_number, ExactError};
use crate::grid::{Color, Coloring, GridSpec, ListAssignment};
use crate::oracle::{self, factorial_saturating, OracleError};
use crate::poly::{self, PolyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Module {
    ExactDist,
    Polynomial,
    Bounds,
    Oracle,
    Constructor,
}

impl Module {
    pub fn parse(s: &str) -> Option<Module> {
        match s.replace('-', "_").as_str() {
            "exact_dist" | "exact" => Some(Module::ExactDist),
            "polynomial" | "poly" => Some(Module::Polynomial),
            "bounds" => Some(Module::Bounds),
            "oracle" => Some(Module::Oracle),
            "constructor" => Some(Module::Constructor),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Budgets {
    /// Oracle searches: subsets, colorings or permutation pairs.
    pub search: u128,
    /// Constructor steps.
    pub solve: u128,
    /// Polynomial terms.
    pub terms: usize,
    /// Form assignments.
    pub forms: u64,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            search: oracle::DEFAULT_SEARCH_BUDGET,
            solve: constructor::DEFAULT_SOLVE_BUDGET,
            terms: poly::DEFAULT_TERM_BUDGET,
            forms: bounds::DEFAULT_FORM_BUDGET,
        }
    }
}

impl Budgets {
    pub fn uniform(b: u128) -> Self {
        Budgets {
            search: b,
            solve: b,
            terms: usize::try_from(b).unwrap_or(usize::MAX),
            forms: u64::try_from(b).unwrap_or(u64::MAX),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ValidationConfig {
    pub budgets: Budgets,
    pub seed: u64,
    pub jobs: usize,
}

impl Default for ValidationConfig {
    fn default() -> Self {
        ValidationConfig { budgets: Budgets::default(), seed: 1, jobs: 1 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Refused,
}

#[derive(Debug, Clone, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub name: &'static str,
    pub module: Module,
    pub status: Status,
    pub detail: String,
    pub elapsed_ms: u128,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

pub struct Criterion {
    pub id: u8,
    pub name: &'static str,
    pub module: Module,
    run: fn(&ValidationConfig) -> Outcome,
}

enum Outcome {
    Pass(String),
    Fail(String),
    Refused(String),
}

fn refused(e: impl std::fmt::Display) -> Outcome {
    Outcome::Refused(e.to_string())
}

pub const CRITERIA: [Criterion; 8] = [
    Criterion { id: 1, name: "closed-form distinguishing number", module: Module::ExactDist, run: closed_form_agreement },
    Criterion { id: 2, name: "target coefficient identity", module: Module::Polynomial, run: coefficient_identity },
    Criterion { id: 3, name: "2-list solver on K_n x K_(n+1)", module: Module::Polynomial, run: two_list_solver },
    Criterion { id: 4, name: "k = 2 coefficient bound", module: Module::Bounds, run: central_binomial_bound },
    Criterion { id: 5, name: "k = 3 coefficient bound", module: Module::Bounds, run: k3_bound },
    Criterion { id: 6, name: "binomial inequality", module: Module::Bounds, run: binomial_inequality },
    Criterion { id: 7, name: "oracle self-consistency", module: Module::Oracle, run: oracle_consistency },
    Criterion { id: 8, name: "constructor soundness", module: Module::Constructor, run: constructor_soundness },
];

pub fn run_criterion(c: &Criterion, cfg: &ValidationConfig) -> CriterionReport {
    let start = Instant::now();
    let (status, detail) = match (c.run)(cfg) {
        Outcome::Pass(d) => (Status::Pass, d),
        Outcome::Fail(d) => (Status::Fail, d),
        Outcome::Refused(d) => (Status::Refused, d),
    };
    CriterionReport { id: c.id, name: c.name, module: c.module, status, detail, elapsed_ms: start.elapsed().as_millis() }
}

/// Runs the selected criteria on up to `cfg.jobs` threads; reports come back
/// in criterion order.
pub fn run_full_validation(cfg: &ValidationConfig, modules: Option<&[Module]>) -> Vec<CriterionReport> {
    let selected: Vec<&Criterion> =
        CRITERIA.iter().filter(|c| modules.is_none_or(|ms| ms.contains(&c.module))).collect();
    let next = AtomicUsize::new(0);
    let results = Mutex::new(Vec::with_capacity(selected.len()));
    std::thread::scope(|s| {
        for _ in 0..cfg.jobs.clamp(1, selected.len().max(1)) {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(c) = selected.get(i) else { break };
                let report = run_criterion(c, cfg);
                results.lock().expect("no poisoned lock").push(report);
            });
        }
    });
    let mut out = results.into_inner().expect("no poisoned lock");
    out.sort_by_key(|r| r.id);
    out
}

/// Exit status for a batch: 0 all pass, 2 any refusal, 1 otherwise.
pub fn exit_code(reports: &[CriterionReport]) -> i32 {
    if reports.iter().all(CriterionReport::passed) {
        0
    } else if reports.iter().any(|r| r.status == Status::Refused) {
        2
    } else {
        1
    }
}

fn closed_form_agreement(cfg: &ValidationConfig) -> Outcome {
    let mut checked = Vec::new();
    for m in 2..=6usize {
        for n in 1..m {
            let formula = match distinguishing_number(n, m, cfg.budgets.search) {
                Ok(r) => r,
                Err(ExactError::Indeterminate { source, .. }) => return refused(source),
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            let grid = GridSpec::new(n, m).expect("n < m");
            let searched = match oracle::min_distinguishing_number(grid, cfg.budgets.search) {
                Ok(r) => r,
                Err(e) => return refused(e),
            };
            if formula.value != searched.k {
                return Outcome::Fail(format!("D(K_{n} x K_{m}): formula {} vs search {}", formula.value, searched.k));
            }
            checked.push(format!("({n},{m})={}", formula.value));
        }
    }
    Outcome::Pass(checked.join(" "))
}

fn coefficient_identity(cfg: &ValidationConfig) -> Outcome {
    let mut parts = Vec::new();
    for n in 1..=4 {
        let got = match poly::target_coefficient(n, cfg.budgets.terms) {
            Ok(c) => c,
            Err(e @ PolyError::Budget { .. }) => return refused(e),
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        let expected: BigInt = (1..=n).map(|r| BigInt::from(factorial_saturating(r))).product();
        if got != expected {
            return Outcome::Fail(format!("n={n}: coefficient {got}, expected {expected}"));
        }
        if n <= 3 {
            let full = match poly::build_f(n, cfg.budgets.terms) {
                Ok(f) => f,
                Err(e) => return refused(e),
            };
            if full.coefficient(&poly::target_monomial(n)) != got {
                return Outcome::Fail(format!("n={n}: full expansion disagrees"));
            }
        }
        parts.push(format!("n={n}:{got}"));
    }
    Outcome::Pass(parts.join(" "))
}

pub const TWO_LIST_INSTANCES: usize = 1000;

/// Random 2-lists on `K_n x K_(n+1)` from a universe of 2 to `n + 3` colors.
pub fn two_list_instance(rng: &mut impl Rng, n: usize) -> ListAssignment {
    let grid = GridSpec::new(n, n + 1).expect("n < n + 1");
    let universe = rng.gen_range(2..=n + 3);
    let cells = (0..grid.cell_count()).map(|_| crate::corpus::random_list(rng, 2, universe)).collect();
    ListAssignment::new(grid, cells).expect("valid lists")
}

fn two_list_solver(cfg: &ValidationConfig) -> Outcome {
    if cfg.budgets.search == 0 {
        return refused("zero budget");
    }
    for n in 2..=4 {
        let mut rng = rng_from_seed(cfg.seed ^ ((n as u64) << 32));
        for t in 0..TWO_LIST_INSTANCES {
            let lists = two_list_instance(&mut rng, n);
            match poly::cn_list_coloring(&lists) {
                Ok(c) if lists.admits(&c) && oracle::is_distinguishing(&c).verdict => {}
                Ok(_) => return Outcome::Fail(format!("n={n} instance {t}: output not certified")),
                Err(e) => return Outcome::Fail(format!("n={n} instance {t}: {e}")),
            }
        }
    }
    Outcome::Pass(format!("{} instances for each n in 2..=4", TWO_LIST_INSTANCES))
}

fn bounds_outcome(e: BoundsError) -> Outcome {
    match e {
        BoundsError::Budget { .. } => refused(e),
        other => Outcome::Fail(other.to_string()),
    }
}

fn central_binomial_bound(cfg: &ValidationConfig) -> Outcome {
    let mut parts = Vec::new();
    for n in 1..=6 {
        match bounds::check_lemma4(n, 2 * n, cfg.budgets.forms) {
            Ok(r) if r.pass => parts.push(format!("n={n}:{}/{}", r.max_observed, r.checked)),
            Ok(r) => return Outcome::Fail(format!("n={n}: maximum {} does not attain {}", r.max_observed, r.bound)),
            Err(e) => return bounds_outcome(e),
        }
    }
    Outcome::Pass(parts.join(" "))
}

fn k3_bound(cfg: &ValidationConfig) -> Outcome {
    let mut parts = Vec::new();
    for n in 1..=5 {
        match bounds::check_lemma6(n, 3, 3 * n, cfg.budgets.forms, 96) {
            Ok(r) => {
                let merge = r.merge.as_ref().expect("merge summary present");
                if !(merge.pairs_bound_holds && merge.square_bound_holds) {
                    return Outcome::Fail(format!("n={n}: variable-count bound fails after merging"));
                }
                parts.push(format!("n={n}:{}<={:.3}", r.max_observed, r.bound));
            }
            Err(e) => return bounds_outcome(e),
        }
    }
    Outcome::Pass(parts.join(" "))
}

fn binomial_inequality(_cfg: &ValidationConfig) -> Outcome {
    const N_MAX: u64 = 500;
    let bits = 128;
    let report = match bounds::check_binomial_inequality(&BinomConfig { n_max: N_MAX, grid: 16, grid_n_max: 60, bits }) {
        Ok(r) => r,
        Err(e) => return bounds_outcome(e),
    };
    let literal = Interval::from_ratio(409_917, 1_000_000);
    let prec = Precision::new(bits);
    let c = prec.c_constant();
    if !c.certainly_lt(&literal) {
        return Outcome::Fail("C is not below 0.409917".into());
    }
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    let f21 = bounds::f_squared(&bounds::BinomialPoint::critical(2, 1).expect("valid"));
    let f31 = bounds::f_squared(&bounds::BinomialPoint::critical(3, 1).expect("valid"));
    if f21 != q(1, 8) || f31 != q(675 * 675 * 5, 4096 * 4096) {
        return Outcome::Fail("anchor values differ".into());
    }
    let e21 = bounds::f_critical(2, 1, bits).expect("valid");
    let e31 = bounds::f_critical(3, 1, bits).expect("valid");
    let rel = |x: &Interval, v: f64| ((x.midpoint_f64() - v) / v).abs() < 1e-10;
    if !rel(&e21, 2f64.sqrt() / 4.0) || !rel(&e31, 675.0 / 4096.0 * 5f64.sqrt()) {
        return Outcome::Fail("anchor enclosures miss 10 significant digits".into());
    }
    if !e21.certainly_lt(&Interval::from_ratio(35_356, 100_000)) || !e31.certainly_lt(&Interval::from_ratio(36_850, 100_000)) {
        return Outcome::Fail("anchor values exceed their decimal bounds".into());
    }
    if !bounds::is_strictly_increasing(&bounds::f_n1_squares(N_MAX)) {
        return Outcome::Fail("f(n,1) is not strictly increasing".into());
    }
    let f500 = bounds::f_critical(N_MAX, 1, bits).expect("valid");
    let gap = c.sub(&f500);
    if !gap.certainly_lt(&Interval::from_ratio(1, 100)) {
        return Outcome::Fail(format!("C - f(500,1) = {gap} is not below 1e-2"));
    }
    Outcome::Pass(format!(
        "{} critical points, max f({},{}) <= {:.9} < C; f(500,1) within {:.2e} of C",
        report.checked,
        report.argmax.0,
        report.argmax.1,
        report.max_observed,
        gap.hi_f64()
    ))
}

pub const CONSISTENCY_SAMPLES: usize = 10_000;
pub const CONSISTENCY_PERM_LIMIT: u128 = 1_000_000;

/// Grids `n < m` with `n! m! <= limit`.
pub fn small_grids(limit: u128) -> Vec<GridSpec> {
    let mut out = Vec::new();
    for n in 1..=12usize {
        for m in n + 1..=12 {
            if factorial_saturating(n).saturating_mul(factorial_saturating(m)) <= limit {
                out.push(GridSpec::new(n, m).expect("n < m"));
            }
        }
    }
    out
}

/// A random coloring with a random palette; every fourth one copies a column
/// so that duplicate columns are exercised.
pub fn random_coloring(rng: &mut impl Rng, grid: GridSpec) -> Coloring {
    let k = rng.gen_range(2..=4u32);
    let mut cells: Vec<Color> = (0..grid.cell_count()).map(|_| Color(rng.gen_range(0..k))).collect();
    if rng.gen_ratio(1, 4) {
        let (a, b) = (rng.gen_range(0..grid.cols()), rng.gen_range(0..grid.cols()));
        for i in 0..grid.rows() {
            cells[grid.index(i, b)] = cells[grid.index(i, a)];
        }
    }
    Coloring::new(grid, cells).expect("shape matches")
}

fn oracle_consistency(cfg: &ValidationConfig) -> Outcome {
    let grids = small_grids(CONSISTENCY_PERM_LIMIT);
    let mut rng = rng_from_seed(cfg.seed.wrapping_add(7));
    let budget = cfg.budgets.search.min(CONSISTENCY_PERM_LIMIT);
    let mut distinguishing = 0;
    for t in 0..CONSISTENCY_SAMPLES {
        let grid = grids[t % grids.len()];
        let c = random_coloring(&mut rng, grid);
        let fast = oracle::is_distinguishing(&c);
        let slow = match oracle::naive_is_distinguishing(&c, budget) {
            Ok(r) => r,
            Err(e @ OracleError::Budget { .. }) => return refused(e),
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        if fast.verdict != slow.verdict || !fast.is_consistent_with(&c) || !slow.is_consistent_with(&c) {
            return Outcome::Fail(format!("sample {t} on {grid}: verifiers disagree"));
        }
        distinguishing += usize::from(fast.verdict);
    }
    Outcome::Pass(format!(
        "{CONSISTENCY_SAMPLES} colorings over {} grids, {distinguishing} distinguishing",
        grids.len()
    ))
}

pub const CONSTRUCTOR_INSTANCES: usize = 500;
pub const CONSTRUCTOR_COLORING_LIMIT: u128 = 1_000_000;

/// Shapes `(n, m, list size, universe)` for the constructor corpus.
const CONSTRUCTOR_SHAPES: [(usize, usize, usize, usize); 10] = [
    (1, 3, 2, 3),
    (2, 3, 2, 3),
    (2, 4, 2, 3),
    (2, 5, 2, 4),
    (2, 6, 2, 4),
    (3, 4, 2, 4),
    (3, 5, 2, 4),
    (3, 6, 2, 5),
    (2, 4, 3, 4),
    (2, 5, 3, 5),
];

/// Instance `t` of the constructor corpus: cycles through the strata and,
/// every fourth time, ragged lists of sizes 1 to 3 (1 to 2 on larger grids).
pub fn constructor_instance(rng: &mut impl Rng, t: usize) -> ListAssignment {
    let (n, m, size, universe) = CONSTRUCTOR_SHAPES[t % CONSTRUCTOR_SHAPES.len()];
    let grid = GridSpec::new(n, m).expect("n < m");
    let strata = crate::corpus::available_strata(n, size, universe);
    if t % 4 == 3 {
        let cells = grid.cell_count() as u32;
        let max_size = if 3u128.saturating_pow(cells) <= CONSTRUCTOR_COLORING_LIMIT { 3 } else { 2 };
        return random_ragged_instance(rng, grid, max_size, universe);
    }
    let stratum: Stratum = strata[(t / 4) % strata.len()];
    random_instance(rng, grid, stratum, size, universe)
}

fn constructor_soundness(cfg: &ValidationConfig) -> Outcome {
    let mut rng = rng_from_seed(cfg.seed.wrapping_add(8));
    let mut strategies = std::collections::BTreeMap::<&'static str, usize>::new();
    let (mut found, mut none, mut via_constructor) = (0, 0, 0);
    for t in 0..CONSTRUCTOR_INSTANCES {
        let lists = constructor_instance(&mut rng, t);
        if lists.coloring_count() > CONSTRUCTOR_COLORING_LIMIT {
            return Outcome::Fail(format!("instance {t} exceeds the coloring limit"));
        }
        let truth = match oracle::list_distinguishing_exhaustive(&lists, cfg.budgets.search) {
            Ok(t) => t,
            Err(e) => return refused(e),
        };
        match constructor::solve(&lists, cfg.budgets.solve) {
            SolveOutcome::Found { coloring, certificate, path, plan } => {
                if truth.is_none() {
                    return Outcome::Fail(format!("instance {t}: solver found a coloring the oracle rules out"));
                }
                if !certificate.verdict || !oracle::is_distinguishing(&coloring).verdict || !lists.admits(&coloring) {
                    return Outcome::Fail(format!("instance {t}: uncertified output"));
                }
                if let SolvePath::Constructor { strategy, .. } = path {
                    if let Err(e) = constructor::check_construction(&lists, &plan, &coloring) {
                        return Outcome::Fail(format!("instance {t}: {e}"));
                    }
                    via_constructor += 1;
                    *strategies.entry(strategy_name(strategy)).or_default() += 1;
                }
                found += 1;
            }
            SolveOutcome::Nonexistent { .. } => {
                if truth.is_some() {
                    return Outcome::Fail(format!("instance {t}: solver reports nonexistence, oracle finds a coloring"));
                }
                none += 1;
            }
            SolveOutcome::Refused { .. } => return refused(format!("instance {t} refused")),
        }
    }
    if strategies.len() < 3 {
        return Outcome::Fail(format!("only strategies {strategies:?} were exercised"));
    }
    Outcome::Pass(format!(
        "{CONSTRUCTOR_INSTANCES} instances: {found} found ({via_constructor} by construction), {none} nonexistent; strategies {strategies:?}"
    ))
}

fn strategy_name(s: AStrategy) -> &'static str {
    match s {
        AStrategy::CnLemma3 => "cn",
        AStrategy::FixedDistinguishing2Coloring => "fixed",
        AStrategy::BacktrackSearch => "backtrack",
    }
}
