//! Exact sparse polynomials and the nonvanishing-polynomial construction
//! that yields distinguishing list colorings of `K_n x K_{n+1}` from lists
//! of size two.

mod cn;
mod sparse;

pub use cn::{
    build_c, build_f, build_r, closed_form_coefficient, cn_list_coloring, evaluate_f, evaluate_f_on, target_coefficient,
    target_monomial, CnInstance, DEFAULT_TERM_BUDGET,
};
pub use sparse::{Exponents, SparsePoly};

use thiserror::Error;

use crate::grid::GridError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("arity mismatch: {left} vs {right}")]
    ArityMismatch { left: usize, right: usize },
    #[error("expansion reached {terms} terms, budget is {budget}")]
    Budget { terms: usize, budget: usize },
    #[error("expected a K_n x K_(n+1) instance, got {0}")]
    NotSquarePlusOne(crate::grid::GridSpec),
    #[error("list at row {row}, column {column} has fewer than two colors")]
    ShortList { row: usize, column: usize },
    #[error("no nonvanishing assignment found; this contradicts the nonzero target coefficient")]
    NoValuation,
    #[error("nonvanishing assignment is not distinguishing: {0}")]
    Uncertified(String),
    #[error(transparent)]
    Grid(#[from] GridError),
}
