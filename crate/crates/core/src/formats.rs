//! JSON file formats. All grids are written row-major, `n` rows of `m` entries.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{Automorphism, Coloring, GridError, ListAssignment};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error("header says {n}x{m} but body is {rows}x{cols}")]
    Header { n: usize, m: usize, rows: usize, cols: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ColoringFile {
    pub n: usize,
    pub m: usize,
    pub cells: Vec<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ListFile {
    pub n: usize,
    pub m: usize,
    pub lists: Vec<Vec<Vec<u32>>>,
}

/// A permutation pair in 1-based one-line notation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessFile {
    pub sigma: Vec<usize>,
    pub tau: Vec<usize>,
}

fn check_header<T>(n: usize, m: usize, body: &[Vec<T>]) -> Result<(), FormatError> {
    let rows = body.len();
    let cols = body.first().map_or(0, Vec::len);
    if rows != n || cols != m || body.iter().any(|r| r.len() != m) {
        return Err(FormatError::Header { n, m, rows, cols });
    }
    Ok(())
}

impl From<&Coloring> for ColoringFile {
    fn from(c: &Coloring) -> Self {
        ColoringFile { n: c.grid().rows(), m: c.grid().cols(), cells: c.rows() }
    }
}

impl TryFrom<ColoringFile> for Coloring {
    type Error = FormatError;

    fn try_from(f: ColoringFile) -> Result<Self, FormatError> {
        check_header(f.n, f.m, &f.cells)?;
        Ok(Coloring::from_rows(&f.cells)?)
    }
}

impl From<&ListAssignment> for ListFile {
    fn from(l: &ListAssignment) -> Self {
        ListFile { n: l.grid().rows(), m: l.grid().cols(), lists: l.rows() }
    }
}

impl TryFrom<ListFile> for ListAssignment {
    type Error = FormatError;

    fn try_from(f: ListFile) -> Result<Self, FormatError> {
        check_header(f.n, f.m, &f.lists)?;
        Ok(ListAssignment::from_rows(&f.lists)?)
    }
}

impl From<&Automorphism> for WitnessFile {
    fn from(g: &Automorphism) -> Self {
        WitnessFile { sigma: g.sigma.one_based(), tau: g.tau.one_based() }
    }
}

pub fn parse_coloring(text: &str) -> Result<Coloring, FormatError> {
    serde_json::from_str::<ColoringFile>(text)?.try_into()
}

pub fn parse_lists(text: &str) -> Result<ListAssignment, FormatError> {
    serde_json::from_str::<ListFile>(text)?.try_into()
}

pub fn coloring_to_json(c: &Coloring) -> String {
    serde_json::to_string(&ColoringFile::from(c)).expect("coloring serializes")
}

pub fn lists_to_json(l: &ListAssignment) -> String {
    serde_json::to_string(&ListFile::from(l)).expect("lists serialize")
}
