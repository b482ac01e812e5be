//! Seeded random list assignments.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::grid::{Color, GridError, GridSpec, ListAssignment};
use crate::oracle::binomial_saturating;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("list size {list_size} does not fit a universe of {universe} colors")]
    ListSize { list_size: usize, universe: usize },
    #[error(transparent)]
    Grid(#[from] GridError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stratum {
    AllUniform,
    NoUniform,
    Mixed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorpusEntry {
    pub stratum: Stratum,
    pub lists: ListAssignment,
}

#[derive(Serialize)]
struct EntryLine<'a> {
    stratum: Stratum,
    n: usize,
    m: usize,
    lists: &'a [Vec<Vec<u32>>],
}

impl CorpusEntry {
    pub fn to_json_line(&self) -> String {
        let g = self.lists.grid();
        let rows = self.lists.rows();
        serde_json::to_string(&EntryLine { stratum: self.stratum, n: g.rows(), m: g.cols(), lists: &rows })
            .expect("entry serializes")
    }
}

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A uniformly random `size`-subset of `1..=universe`.
pub fn random_list(rng: &mut impl Rng, size: usize, universe: usize) -> Vec<Color> {
    let mut l: Vec<Color> = sample(rng, universe, size).into_iter().map(|c| Color(c as u32 + 1)).collect();
    l.sort_unstable();
    l
}

fn uniform_column(rng: &mut impl Rng, n: usize, size: usize, universe: usize) -> Vec<Vec<Color>> {
    vec![random_list(rng, size, universe); n]
}

fn varied_column(rng: &mut impl Rng, n: usize, size: usize, universe: usize) -> Vec<Vec<Color>> {
    let mut col: Vec<Vec<Color>> = (0..n).map(|_| random_list(rng, size, universe)).collect();
    while col.iter().all(|l| *l == col[0]) {
        col[n - 1] = random_list(rng, size, universe);
    }
    col
}

fn assemble(grid: GridSpec, columns: Vec<Vec<Vec<Color>>>) -> ListAssignment {
    let mut cells = Vec::with_capacity(grid.cell_count());
    for i in 0..grid.rows() {
        for col in &columns {
            cells.push(col[i].clone());
        }
    }
    ListAssignment::new(grid, cells).expect("generated lists are valid")
}

/// One instance of the given stratum.
pub fn random_instance(
    rng: &mut impl Rng,
    grid: GridSpec,
    stratum: Stratum,
    size: usize,
    universe: usize,
) -> ListAssignment {
    let (n, m) = (grid.rows(), grid.cols());
    let uniform: Vec<bool> = match stratum {
        Stratum::AllUniform => vec![true; m],
        Stratum::NoUniform => vec![false; m],
        Stratum::Mixed => {
            let count = rng.gen_range(1..m);
            let chosen = sample(rng, m, count).into_vec();
            (0..m).map(|j| chosen.contains(&j)).collect()
        }
    };
    let columns = uniform
        .into_iter()
        .map(|u| if u { uniform_column(rng, n, size, universe) } else { varied_column(rng, n, size, universe) })
        .collect();
    assemble(grid, columns)
}

/// Every cell gets an independent list of random size in `1..=max_size`.
pub fn random_ragged_instance(rng: &mut impl Rng, grid: GridSpec, max_size: usize, universe: usize) -> ListAssignment {
    let cells = (0..grid.cell_count())
        .map(|_| {
            let size = rng.gen_range(1..=max_size.min(universe));
            random_list(rng, size, universe)
        })
        .collect();
    ListAssignment::new(grid, cells).expect("generated lists are valid")
}

/// Strata that can be realized: a non-uniform column needs two rows and two
/// distinct lists.
pub fn available_strata(n: usize, list_size: usize, universe: usize) -> Vec<Stratum> {
    if n >= 2 && binomial_saturating(universe as u128, list_size as u128) >= 2 {
        vec![Stratum::AllUniform, Stratum::NoUniform, Stratum::Mixed]
    } else {
        vec![Stratum::AllUniform]
    }
}

/// `count` instances cycling through the available strata.
pub fn generate_corpus(
    n: usize,
    m: usize,
    list_size: usize,
    universe: usize,
    count: usize,
    seed: u64,
) -> Result<Vec<CorpusEntry>, CorpusError> {
    let grid = GridSpec::new(n, m)?;
    if list_size == 0 || list_size > universe {
        return Err(CorpusError::ListSize { list_size, universe });
    }
    let strata = available_strata(n, list_size, universe);
    let mut rng = rng_from_seed(seed);
    Ok((0..count)
        .map(|k| {
            let stratum = strata[k % strata.len()];
            CorpusEntry { stratum, lists: random_instance(&mut rng, grid, stratum, list_size, universe) }
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructor::classify_columns;

    fn lines(entries: &[CorpusEntry]) -> String {
        entries.iter().map(|e| e.to_json_line() + "\n").collect()
    }

    #[test]
    fn reproducible() {
        let a = generate_corpus(2, 3, 2, 5, 100, 1).unwrap();
        let b = generate_corpus(2, 3, 2, 5, 100, 1).unwrap();
        assert_eq!(lines(&a), lines(&b));
        assert_ne!(lines(&a), lines(&generate_corpus(2, 3, 2, 5, 100, 2).unwrap()));
    }

    #[test]
    fn strata_hold() {
        for e in generate_corpus(3, 5, 2, 4, 60, 7).unwrap() {
            let classes = classify_columns(&e.lists);
            let uniform = classes.iter().filter(|c| c.list_uniform).count();
            match e.stratum {
                Stratum::AllUniform => assert_eq!(uniform, 5),
                Stratum::NoUniform => assert_eq!(uniform, 0),
                Stratum::Mixed => assert!(uniform >= 1 && uniform < 5),
            }
            assert_eq!(e.lists.min_list_size(), 2);
        }
    }

    #[test]
    fn single_row_is_all_uniform() {
        let c = generate_corpus(1, 3, 2, 3, 5, 0).unwrap();
        assert!(c.iter().all(|e| e.stratum == Stratum::AllUniform));
    }

    #[test]
    fn rejects_bad_sizes() {
        assert!(generate_corpus(2, 3, 4, 3, 1, 0).is_err());
        assert!(generate_corpus(3, 3, 2, 3, 1, 0).is_err());
    }

    #[test]
    fn line_format() {
        let e = &generate_corpus(1, 2, 1, 1, 1, 0).unwrap()[0];
        assert_eq!(e.to_json_line(), r#"{"stratum":"all-uniform","n":1,"m":2,"lists":[[[1],[1]]]}"#);
    }
}
