//! Rigorous checks of the coefficient bounds for products of linear forms
//! and of the binomial-probability inequality behind them.

pub mod binomial;
pub mod forms;
pub mod interval;

pub use binomial::{
    check_appendix_monotonicity, check_binomial_inequality, critical_p, f_critical, f_n1_squares, f_npa, f_squared,
    is_strictly_increasing, AppendixReport,
    BinomConfig, BinomReport, BinomialPoint,
};
pub use forms::{
    balanced_multinomial, check_lemma4, check_lemma6, check_multinomial_conjecture, for_each_assignment,
    max_monomial_coefficient, merge_non_cooccurring, FormAssignment, FormsReport, MergeSummary, DEFAULT_FORM_BUDGET,
};
pub use interval::{Interval, Precision};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("enumeration exceeded its budget of {budget} assignments")]
    Budget { budget: u64 },
    #[error("bound violated: {0}")]
    Violation(String),
    #[error("invalid binomial point: {0}")]
    InvalidPoint(String),
    #[error("invalid form assignment: {0}")]
    InvalidForm(String),
}
