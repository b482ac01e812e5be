use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use rookdist::bounds::{self, BinomConfig, BoundsError};
use rookdist::constructor::{self, SolveOutcome};
use rookdist::corpus;
use rookdist::exact::{self, ExactError};
use rookdist::formats::{self, ColoringFile, WitnessFile};
use rookdist::oracle::{self, OracleError};
use rookdist::poly::{self, PolyError};
use rookdist::validation::{self, Budgets, Module, ValidationConfig};
use rookdist::{Coloring, GridSpec, ListAssignment};

const OK: u8 = 0;
const NEGATIVE: u8 = 1;
const REFUSED: u8 = 2;
const INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "rookdist", version, about = "Distinguishing colorings of rook's graphs K_n x K_m")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a coloring is distinguishing
    Verify {
        #[arg(long)]
        coloring: PathBuf,
        /// Use the permutation-enumeration verifier
        #[arg(long)]
        naive: bool,
        #[arg(long, default_value_t = oracle::DEFAULT_NAIVE_BUDGET)]
        budget: u128,
    },
    /// Least number of colors of a distinguishing coloring, by search
    MinD {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = oracle::DEFAULT_SEARCH_BUDGET)]
        budget: u128,
    },
    /// Distinguishing number from the closed form
    ExactD {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = oracle::DEFAULT_SEARCH_BUDGET)]
        budget: u128,
    },
    /// Coefficient of the target monomial of the nonvanishing polynomial
    CnCoeff {
        #[arg(long)]
        n: usize,
        /// Also expand the whole polynomial and compare
        #[arg(long)]
        full: bool,
        #[arg(long, default_value_t = poly::DEFAULT_TERM_BUDGET)]
        budget: usize,
    },
    /// Distinguishing coloring of K_n x K_(n+1) from lists of size two
    CnSolve {
        #[arg(long)]
        lists: PathBuf,
    },
    /// Two-phase list colorer with exhaustive fallback
    Solve {
        #[arg(long)]
        lists: PathBuf,
        #[arg(long, default_value_t = constructor::DEFAULT_SOLVE_BUDGET)]
        budget: u128,
        #[arg(long)]
        emit_certificate: bool,
    },
    /// First distinguishing list coloring in lexicographic order
    SolveExhaustive {
        #[arg(long)]
        lists: PathBuf,
        #[arg(long, default_value_t = oracle::DEFAULT_SEARCH_BUDGET)]
        budget: u128,
    },
    /// Coefficient-bound and binomial-inequality checks
    Bounds {
        #[command(subcommand)]
        check: BoundsCommand,
    },
    /// Seeded random list assignments, one JSON object per line
    Gen {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, default_value_t = 2)]
        list_size: usize,
        #[arg(long, default_value_t = 4)]
        universe: usize,
        #[arg(long, default_value_t = 100)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance criteria
    Validate {
        /// Restrict to these modules (exact-dist, polynomial, bounds, oracle, constructor)
        #[arg(long = "module")]
        modules: Vec<String>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// One budget for every search
        #[arg(long)]
        budget: Option<u128>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

#[derive(Args)]
struct GridArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
}

#[derive(Subcommand)]
enum BoundsCommand {
    Lemma4 {
        #[arg(long)]
        n: usize,
        /// Largest number of variables; defaults to 2n
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = bounds::DEFAULT_FORM_BUDGET)]
        budget: u64,
    },
    Lemma6 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        /// Largest number of variables; defaults to nk
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = bounds::DEFAULT_FORM_BUDGET)]
        budget: u64,
        #[arg(long, default_value_t = 96)]
        bits: u32,
    },
    Conjecture {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: Option<usize>,
        #[arg(long, default_value_t = bounds::DEFAULT_FORM_BUDGET)]
        budget: u64,
    },
    Binom {
        #[arg(long)]
        nmax: u64,
        /// Denominator of the p-grid
        #[arg(long, default_value_t = 16)]
        grid: u64,
        /// Largest n swept on the p-grid
        #[arg(long, default_value_t = 60)]
        grid_nmax: u64,
        #[arg(long, default_value_t = 128)]
        bits: u32,
    },
    Appendix {
        #[arg(long)]
        nmax: u64,
        #[arg(long, default_value_t = 96)]
        bits: u32,
    },
}

/// A failed command: what to print and the exit status.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn internal(e: impl std::fmt::Display) -> Self {
        Failure { code: INTERNAL, message: e.to_string() }
    }

    fn refused(e: impl std::fmt::Display) -> Self {
        Failure { code: REFUSED, message: e.to_string() }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::Budget { .. } => Failure::refused(e),
            other => Failure::internal(other),
        }
    }
}

impl From<PolyError> for Failure {
    fn from(e: PolyError) -> Self {
        match e {
            PolyError::Budget { .. } => Failure::refused(e),
            other => Failure::internal(other),
        }
    }
}

impl From<BoundsError> for Failure {
    fn from(e: BoundsError) -> Self {
        match e {
            BoundsError::Budget { .. } => Failure::refused(e),
            BoundsError::Violation(_) => Failure { code: NEGATIVE, message: e.to_string() },
            other => Failure::internal(other),
        }
    }
}

impl From<ExactError> for Failure {
    fn from(e: ExactError) -> Self {
        match e {
            ExactError::Indeterminate { .. } => Failure::refused(e),
            other => Failure::internal(other),
        }
    }
}

fn emit(value: &Value) {
    println!("{value}");
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::internal(format!("{}: {e}", path.display())))
}

fn read_coloring(path: &Path) -> Result<Coloring, Failure> {
    formats::parse_coloring(&read(path)?).map_err(Failure::internal)
}

fn read_lists(path: &Path) -> Result<ListAssignment, Failure> {
    formats::parse_lists(&read(path)?).map_err(Failure::internal)
}

fn grid(args: &GridArgs) -> Result<GridSpec, Failure> {
    GridSpec::new(args.n, args.m).map_err(Failure::internal)
}

fn coloring_json(c: &Coloring) -> Value {
    serde_json::to_value(ColoringFile::from(c)).expect("coloring serializes")
}

/// `RD_SEED` wins over the command line.
fn effective_seed(flag: u64) -> Result<u64, Failure> {
    match std::env::var("RD_SEED") {
        Ok(s) => s.trim().parse().map_err(|_| Failure::internal(format!("RD_SEED is not a 64-bit integer: {s}"))),
        Err(_) => Ok(flag),
    }
}

fn verdict(pass: bool) -> u8 {
    if pass {
        OK
    } else {
        NEGATIVE
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Verify { coloring, naive, budget } => {
            let c = read_coloring(&coloring)?;
            let cert = if naive { oracle::naive_is_distinguishing(&c, budget)? } else { oracle::is_distinguishing(&c) };
            let witness = cert.witness.as_ref().map(|w| serde_json::to_value(WitnessFile::from(w)).expect("serializes"));
            emit(&json!({ "distinguishing": cert.verdict, "witness": witness }));
            Ok(verdict(cert.verdict))
        }
        Command::MinD { grid: g, budget } => {
            let r = oracle::min_distinguishing_number(grid(&g)?, budget)?;
            emit(&json!({ "n": g.n, "m": g.m, "k": r.k, "witness": coloring_json(&r.witness) }));
            Ok(OK)
        }
        Command::ExactD { grid: g, budget } => {
            grid(&g)?;
            let r = exact::distinguishing_number(g.n, g.m, budget)?;
            let mut v = serde_json::to_value(&r).expect("serializes");
            v["n"] = json!(g.n);
            v["m"] = json!(g.m);
            emit(&v);
            Ok(OK)
        }
        Command::CnCoeff { n, full, budget } => {
            if n == 0 {
                return Err(Failure::internal("n must be positive"));
            }
            let got = poly::target_coefficient(n, budget)?;
            let closed = poly::closed_form_coefficient(n);
            let mut v = json!({ "n": n, "coefficient": got.to_string(), "closed_form": closed.to_string() });
            let mut pass = got == closed;
            if full {
                let f = poly::build_f(n, budget)?;
                let c = f.coefficient(&poly::target_monomial(n));
                v["full_expansion"] = json!(c.to_string());
                v["terms"] = json!(f.term_count());
                pass &= c == got;
            }
            v["match"] = json!(pass);
            emit(&v);
            Ok(verdict(pass))
        }
        Command::CnSolve { lists } => {
            let l = read_lists(&lists)?;
            let c = poly::cn_list_coloring(&l)?;
            emit(&json!({ "status": "found", "coloring": coloring_json(&c) }));
            Ok(OK)
        }
        Command::Solve { lists, budget, emit_certificate } => {
            let l = read_lists(&lists)?;
            let out = constructor::solve(&l, budget);
            let mut v = json!({ "status": out.status() });
            match &out {
                SolveOutcome::Found { coloring, certificate, path, plan } => {
                    v["coloring"] = coloring_json(coloring);
                    if emit_certificate {
                        v["certificate"] = json!({
                            "distinguishing": certificate.verdict,
                            "path": path,
                            "plan": plan,
                            "construction_checked": matches!(path, constructor::SolvePath::Constructor { .. })
                                && constructor::check_construction(&l, plan, coloring).is_ok(),
                        });
                    }
                }
                SolveOutcome::Nonexistent { plan } if emit_certificate => v["plan"] = json!(plan),
                SolveOutcome::Refused { budget, .. } => v["budget"] = json!(budget.to_string()),
                _ => {}
            }
            emit(&v);
            Ok(match out {
                SolveOutcome::Found { .. } => OK,
                SolveOutcome::Nonexistent { .. } => NEGATIVE,
                SolveOutcome::Refused { .. } => REFUSED,
            })
        }
        Command::SolveExhaustive { lists, budget } => {
            let l = read_lists(&lists)?;
            match oracle::list_distinguishing_exhaustive(&l, budget)? {
                Some(c) => {
                    emit(&json!({ "status": "found", "coloring": coloring_json(&c) }));
                    Ok(OK)
                }
                None => {
                    emit(&json!({ "status": "nonexistent" }));
                    Ok(NEGATIVE)
                }
            }
        }
        Command::Bounds { check } => run_bounds(check),
        Command::Gen { grid: g, list_size, universe, count, seed, out } => {
            let seed = effective_seed(seed)?;
            let entries =
                corpus::generate_corpus(g.n, g.m, list_size, universe, count, seed).map_err(Failure::internal)?;
            let text: String = entries.iter().map(|e| e.to_json_line() + "\n").collect();
            match out {
                Some(path) => fs::write(&path, text).map_err(|e| Failure::internal(format!("{}: {e}", path.display())))?,
                None => std::io::stdout().write_all(text.as_bytes()).map_err(Failure::internal)?,
            }
            Ok(OK)
        }
        Command::Validate { modules, jobs, budget, seed } => {
            let selected = modules
                .iter()
                .map(|m| Module::parse(m).ok_or_else(|| Failure::internal(format!("unknown module {m}"))))
                .collect::<Result<Vec<_>, _>>()?;
            let cfg = ValidationConfig {
                budgets: budget.map_or_else(Budgets::default, Budgets::uniform),
                seed: effective_seed(seed)?,
                jobs,
            };
            let filter = (!selected.is_empty()).then_some(selected.as_slice());
            let reports = validation::run_full_validation(&cfg, filter);
            for r in &reports {
                emit(&serde_json::to_value(r).expect("serializes"));
            }
            Ok(validation::exit_code(&reports) as u8)
        }
    }
}

fn run_bounds(check: BoundsCommand) -> Result<u8, Failure> {
    let value = match check {
        BoundsCommand::Lemma4 { n, r, budget } => to_value(bounds::check_lemma4(n, r.unwrap_or(2 * n), budget)?),
        BoundsCommand::Lemma6 { n, k, r, budget, bits } => {
            to_value(bounds::check_lemma6(n, k, r.unwrap_or(n * k), budget, bits)?)
        }
        BoundsCommand::Conjecture { n, k, r, budget } => {
            to_value(bounds::check_multinomial_conjecture(n, k, r.unwrap_or(n * k), budget)?)
        }
        BoundsCommand::Binom { nmax, grid, grid_nmax, bits } => {
            to_value(bounds::check_binomial_inequality(&BinomConfig { n_max: nmax, grid, grid_n_max: grid_nmax, bits })?)
        }
        BoundsCommand::Appendix { nmax, bits } => to_value(bounds::check_appendix_monotonicity(nmax, bits)?),
    };
    let pass = value["pass"].as_bool().unwrap_or(false);
    emit(&value);
    Ok(verdict(pass))
}

fn to_value<T: serde::Serialize>(x: T) -> Value {
    serde_json::to_value(x).expect("report serializes")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            let status = if f.code == REFUSED { "refused" } else if f.code == NEGATIVE { "fail" } else { "error" };
            emit(&json!({ "status": status, "error": f.message }));
            ExitCode::from(f.code)
        }
    }
}
