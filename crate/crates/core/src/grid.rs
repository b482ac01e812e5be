//! Vertex lattice of K_n x K_m and its symmetry group.
//!
//! Vertices are addressed as `(row, column)` with 0-based indices in the Rust
//! API; the JSON formats and rendered permutations use 1-based indices. Rows
//! are copies of `K_m`, columns are copies of `K_n`. For `n < m` every
//! automorphism is a pair of independent row and column permutations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GridError {
    #[error("grid must satisfy 1 <= n < m, got n={n}, m={m}")]
    Unsupported { n: usize, m: usize },
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: GridSpec, right: GridSpec },
    #[error("column {column} out of range for {grid}")]
    ColumnOutOfRange { column: usize, grid: GridSpec },
    #[error("expected {expected} cells, got {got}")]
    CellCount { expected: usize, got: usize },
    #[error("empty list at row {row}, column {column}")]
    EmptyList { row: usize, column: usize },
    #[error("not a permutation of 0..{len}: {images:?}")]
    NotAPermutation { len: usize, images: Vec<usize> },
}

/// Dimensions of `K_n x K_m`: `n` rows, `m` columns, `1 <= n < m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GridSpec {
    n: usize,
    m: usize,
}

impl GridSpec {
    pub fn new(n: usize, m: usize) -> Result<Self, GridError> {
        if n == 0 || n >= m {
            return Err(GridError::Unsupported { n, m });
        }
        Ok(GridSpec { n, m })
    }

    pub fn rows(&self) -> usize {
        self.n
    }

    pub fn cols(&self) -> usize {
        self.m
    }

    pub fn cell_count(&self) -> usize {
        self.n * self.m
    }

    /// Row-major position of `(row, col)`.
    #[inline]
    pub fn index(&self, row: usize, col: usize) -> usize {
        debug_assert!(row < self.n && col < self.m);
        row * self.m + col
    }

    fn check_column(&self, col: usize) -> Result<(), GridError> {
        if col >= self.m {
            return Err(GridError::ColumnOutOfRange { column: col, grid: *self });
        }
        Ok(())
    }
}

impl fmt::Display for GridSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K_{} x K_{}", self.n, self.m)
    }
}

/// A color identifier. Colors carry no meaning beyond identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Color(pub u32);

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Total coloring of the lattice, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coloring {
    grid: GridSpec,
    cells: Vec<Color>,
}

impl Coloring {
    pub fn new(grid: GridSpec, cells: Vec<Color>) -> Result<Self, GridError> {
        if cells.len() != grid.cell_count() {
            return Err(GridError::CellCount { expected: grid.cell_count(), got: cells.len() });
        }
        Ok(Coloring { grid, cells })
    }

    pub fn from_rows(rows: &[Vec<u32>]) -> Result<Self, GridError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let grid = GridSpec::new(n, m)?;
        let mut cells = Vec::with_capacity(n * m);
        for row in rows {
            if row.len() != m {
                return Err(GridError::CellCount { expected: n * m, got: rows.iter().map(Vec::len).sum() });
            }
            cells.extend(row.iter().map(|&c| Color(c)));
        }
        Ok(Coloring { grid, cells })
    }

    /// Builds a coloring from column vectors, listed left to right.
    pub fn from_columns(grid: GridSpec, columns: &[ColorVector]) -> Result<Self, GridError> {
        if columns.len() != grid.cols() || columns.iter().any(|c| c.len() != grid.rows()) {
            return Err(GridError::CellCount {
                expected: grid.cell_count(),
                got: columns.iter().map(ColorVector::len).sum(),
            });
        }
        let mut cells = vec![Color(0); grid.cell_count()];
        for (j, column) in columns.iter().enumerate() {
            for (i, &c) in column.0.iter().enumerate() {
                cells[grid.index(i, j)] = c;
            }
        }
        Ok(Coloring { grid, cells })
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    pub fn cells(&self) -> &[Color] {
        &self.cells
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> Color {
        self.cells[self.grid.index(row, col)]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.cells.chunks(self.grid.m).map(|r| r.iter().map(|c| c.0).collect()).collect()
    }

    pub fn column_vectors(&self) -> Vec<ColorVector> {
        (0..self.grid.m).map(|j| self.column_vector_unchecked(j)).collect()
    }

    pub(crate) fn column_vector_unchecked(&self, col: usize) -> ColorVector {
        ColorVector((0..self.grid.n).map(|i| self.get(i, col)).collect())
    }

    pub fn distinct_colors(&self) -> usize {
        let mut seen: Vec<Color> = self.cells.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// Per-vertex lists of admissible colors. Lists are sorted, deduplicated and
/// non-empty.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ListAssignment {
    grid: GridSpec,
    lists: Vec<Vec<Color>>,
}

impl ListAssignment {
    pub fn new(grid: GridSpec, lists: Vec<Vec<Color>>) -> Result<Self, GridError> {
        if lists.len() != grid.cell_count() {
            return Err(GridError::CellCount { expected: grid.cell_count(), got: lists.len() });
        }
        let mut lists = lists;
        for (idx, list) in lists.iter_mut().enumerate() {
            list.sort_unstable();
            list.dedup();
            if list.is_empty() {
                return Err(GridError::EmptyList { row: idx / grid.m, column: idx % grid.m });
            }
        }
        Ok(ListAssignment { grid, lists })
    }

    /// Every vertex receives the same list.
    pub fn constant(grid: GridSpec, list: &[u32]) -> Result<Self, GridError> {
        let list: Vec<Color> = list.iter().map(|&c| Color(c)).collect();
        Self::new(grid, vec![list; grid.cell_count()])
    }

    pub fn from_rows(rows: &[Vec<Vec<u32>>]) -> Result<Self, GridError> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        let grid = GridSpec::new(n, m)?;
        let mut lists = Vec::with_capacity(n * m);
        for row in rows {
            if row.len() != m {
                return Err(GridError::CellCount { expected: n * m, got: rows.iter().map(Vec::len).sum() });
            }
            lists.extend(row.iter().map(|l| l.iter().map(|&c| Color(c)).collect::<Vec<_>>()));
        }
        Self::new(grid, lists)
    }

    pub fn grid(&self) -> GridSpec {
        self.grid
    }

    #[inline]
    pub fn list(&self, row: usize, col: usize) -> &[Color] {
        &self.lists[self.grid.index(row, col)]
    }

    pub fn rows(&self) -> Vec<Vec<Vec<u32>>> {
        self.lists
            .chunks(self.grid.m)
            .map(|r| r.iter().map(|l| l.iter().map(|c| c.0).collect()).collect())
            .collect()
    }

    pub fn min_list_size(&self) -> usize {
        self.lists.iter().map(Vec::len).min().unwrap_or(0)
    }

    /// Number of L-colorings, saturating at `u128::MAX`.
    pub fn coloring_count(&self) -> u128 {
        self.lists.iter().fold(1u128, |acc, l| acc.saturating_mul(l.len() as u128))
    }

    /// Number of L-colorings of one column.
    pub fn column_coloring_count(&self, col: usize) -> u128 {
        (0..self.grid.n).fold(1u128, |acc, i| acc.saturating_mul(self.list(i, col).len() as u128))
    }

    pub fn admits(&self, coloring: &Coloring) -> bool {
        coloring.grid == self.grid
            && coloring.cells.iter().zip(&self.lists).all(|(c, l)| l.binary_search(c).is_ok())
    }

    /// Restriction to the given columns, in the given order.
    pub fn restrict_columns(&self, columns: &[usize]) -> Result<Self, GridError> {
        let grid = GridSpec::new(self.grid.n, columns.len())?;
        let mut lists = Vec::with_capacity(grid.cell_count());
        for i in 0..self.grid.n {
            for &j in columns {
                self.grid.check_column(j)?;
                lists.push(self.list(i, j).to_vec());
            }
        }
        Ok(ListAssignment { grid, lists })
    }

    /// Keeps the `size` smallest colors of every list.
    pub fn truncated(&self, size: usize) -> Self {
        let lists = self.lists.iter().map(|l| l[..l.len().min(size)].to_vec()).collect();
        ListAssignment { grid: self.grid, lists }
    }
}

/// A permutation in one-line notation: `images[i]` is the image of `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(len: usize) -> Self {
        Permutation((0..len).collect())
    }

    pub fn new(images: Vec<usize>) -> Result<Self, GridError> {
        let mut seen = vec![false; images.len()];
        for &x in &images {
            if x >= images.len() || std::mem::replace(&mut seen[x], true) {
                return Err(GridError::NotAPermutation { len: images.len(), images });
            }
        }
        Ok(Permutation(images))
    }

    /// Parses 1-based one-line notation.
    pub fn from_one_based(images: &[usize]) -> Result<Self, GridError> {
        let zero: Option<Vec<usize>> = images.iter().map(|&x| x.checked_sub(1)).collect();
        match zero {
            Some(v) => Self::new(v),
            None => Err(GridError::NotAPermutation { len: images.len(), images: images.to_vec() }),
        }
    }

    pub fn transposition(len: usize, a: usize, b: usize) -> Self {
        let mut p = Self::identity(len);
        p.0.swap(a, b);
        p
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn image(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.0.iter().map(|x| x + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x] = i;
        }
        Permutation(inv)
    }

    /// `self ∘ other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len(), other.len(), "composing permutations of different degree");
        Permutation(other.0.iter().map(|&x| self.0[x]).collect())
    }

    /// Advances to the next permutation in lexicographic order; returns false
    /// (leaving the identity) after the last one.
    pub fn advance(&mut self) -> bool {
        next_permutation(&mut self.0)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", x + 1)?;
        }
        write!(f, "]")
    }
}

/// Lexicographic successor; on the last permutation resets to sorted order and
/// returns false.
pub(crate) fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        v.reverse();
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// A row permutation paired with a column permutation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Automorphism {
    pub sigma: Permutation,
    pub tau: Permutation,
}

impl Automorphism {
    pub fn new(sigma: Permutation, tau: Permutation) -> Self {
        Automorphism { sigma, tau }
    }

    pub fn identity(grid: GridSpec) -> Self {
        Automorphism { sigma: Permutation::identity(grid.rows()), tau: Permutation::identity(grid.cols()) }
    }

    pub fn is_identity(&self) -> bool {
        self.sigma.is_identity() && self.tau.is_identity()
    }

    pub fn inverse(&self) -> Self {
        Automorphism { sigma: self.sigma.inverse(), tau: self.tau.inverse() }
    }

    pub fn compose(&self, other: &Automorphism) -> Self {
        Automorphism { sigma: self.sigma.compose(&other.sigma), tau: self.tau.compose(&other.tau) }
    }

    fn fits(&self, grid: GridSpec) -> bool {
        self.sigma.len() == grid.rows() && self.tau.len() == grid.cols()
    }

    /// True when `apply(self, c) == c`, without materializing the image.
    pub fn preserves(&self, c: &Coloring) -> bool {
        if !self.fits(c.grid) {
            return false;
        }
        // apply(g, c)(σ(i), τ(j)) = c(i, j)
        (0..c.grid.n).all(|i| {
            let si = self.sigma.image(i);
            (0..c.grid.m).all(|j| c.get(si, self.tau.image(j)) == c.get(i, j))
        })
    }
}

impl fmt::Display for Automorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(sigma={}, tau={})", self.sigma, self.tau)
    }
}

/// `result(i, j) = c(σ⁻¹(i), τ⁻¹(j))`.
pub fn apply_automorphism(g: &Automorphism, c: &Coloring) -> Result<Coloring, GridError> {
    if !g.fits(c.grid) {
        let left = GridSpec { n: g.sigma.len(), m: g.tau.len() };
        return Err(GridError::DimensionMismatch { left, right: c.grid });
    }
    let mut cells = vec![Color(0); c.cells.len()];
    for i in 0..c.grid.n {
        let si = g.sigma.image(i);
        for j in 0..c.grid.m {
            cells[c.grid.index(si, g.tau.image(j))] = c.get(i, j);
        }
    }
    Ok(Coloring { grid: c.grid, cells })
}

/// Multiset of colors in a column, as sorted `(color, multiplicity)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorPattern(Vec<(Color, usize)>);

impl ColorPattern {
    pub fn from_colors(colors: &[Color]) -> Self {
        let mut counts: BTreeMap<Color, usize> = BTreeMap::new();
        for &c in colors {
            *counts.entry(c).or_default() += 1;
        }
        ColorPattern(counts.into_iter().collect())
    }

    pub fn entries(&self) -> &[(Color, usize)] {
        &self.0
    }

    pub fn total(&self) -> usize {
        self.0.iter().map(|&(_, k)| k).sum()
    }

    pub fn multiplicity(&self, c: Color) -> usize {
        self.0.iter().find(|&&(x, _)| x == c).map_or(0, |&(_, k)| k)
    }

    /// Size of the multiset symmetric difference.
    pub fn distance(&self, other: &ColorPattern) -> usize {
        let (mut a, mut b) = (self.0.iter().peekable(), other.0.iter().peekable());
        let mut d = 0;
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(x, kx)), Some(&&(y, ky))) => {
                    if x == y {
                        d += kx.abs_diff(ky);
                        a.next();
                        b.next();
                    } else if x < y {
                        d += kx;
                        a.next();
                    } else {
                        d += ky;
                        b.next();
                    }
                }
                (Some(&&(_, k)), None) => {
                    d += k;
                    a.next();
                }
                (None, Some(&&(_, k))) => {
                    d += k;
                    b.next();
                }
                (None, None) => return d,
            }
        }
    }
}

/// Column colors read top to bottom.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColorVector(pub Vec<Color>);

impl ColorVector {
    pub fn from_ids(ids: &[u32]) -> Self {
        ColorVector(ids.iter().map(|&c| Color(c)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn pattern(&self) -> ColorPattern {
        ColorPattern::from_colors(&self.0)
    }
}

pub fn column_pattern(c: &Coloring, col: usize) -> Result<ColorPattern, GridError> {
    c.grid.check_column(col)?;
    Ok(c.column_vector_unchecked(col).pattern())
}

pub fn column_vector(c: &Coloring, col: usize) -> Result<ColorVector, GridError> {
    c.grid.check_column(col)?;
    Ok(c.column_vector_unchecked(col))
}

/// Renames colors to `0, 1, 2, ...` in row-major first-occurrence order.
pub fn canonicalize_colors(c: &Coloring) -> Coloring {
    let mut names: HashMap<Color, u32> = HashMap::new();
    let cells = c
        .cells
        .iter()
        .map(|&x| {
            let next = names.len() as u32;
            Color(*names.entry(x).or_insert(next))
        })
        .collect();
    Coloring { grid: c.grid, cells }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::from_one_based(v).unwrap()
    }

    #[test]
    fn grid_rejects_square_and_tall() {
        assert!(GridSpec::new(3, 3).is_err());
        assert!(GridSpec::new(4, 2).is_err());
        assert!(GridSpec::new(0, 2).is_err());
        assert!(GridSpec::new(1, 2).is_ok());
    }

    #[test]
    fn identity_is_neutral() {
        let c = Coloring::from_rows(&[vec![1, 2, 3], vec![3, 3, 1]]).unwrap();
        let id = Automorphism::identity(c.grid());
        assert_eq!(apply_automorphism(&id, &c).unwrap(), c);
    }

    #[test]
    fn row_swap_on_2x3() {
        // columns (1,1), (1,2), (2,2)
        let c = Coloring::from_rows(&[vec![1, 1, 2], vec![1, 2, 2]]).unwrap();
        let g = Automorphism::new(perm(&[2, 1]), Permutation::identity(3));
        let out = apply_automorphism(&g, &c).unwrap();
        let cols: Vec<ColorVector> = out.column_vectors();
        assert_eq!(cols, vec![ColorVector::from_ids(&[1, 1]), ColorVector::from_ids(&[2, 1]), ColorVector::from_ids(&[2, 2])]);
    }

    #[test]
    fn apply_rejects_mismatch() {
        let c = Coloring::from_rows(&[vec![1, 2, 3]]).unwrap();
        let g = Automorphism::new(Permutation::identity(2), Permutation::identity(3));
        assert!(matches!(apply_automorphism(&g, &c), Err(GridError::DimensionMismatch { .. })));
    }

    #[test]
    fn patterns_and_vectors() {
        let c = Coloring::from_rows(&[vec![1, 2, 5], vec![2, 1, 5], vec![1, 1, 5], vec![0, 0, 0]]);
        assert!(c.is_err()); // 4x3 is not n < m
        let c = Coloring::from_rows(&[vec![1, 2, 5, 0], vec![2, 1, 5, 0], vec![1, 1, 5, 0]]).unwrap();
        let expect = ColorPattern(vec![(Color(1), 2), (Color(2), 1)]);
        assert_eq!(column_pattern(&c, 0).unwrap(), expect);
        assert_eq!(column_pattern(&c, 1).unwrap(), expect);
        assert_eq!(column_pattern(&c, 2).unwrap(), ColorPattern(vec![(Color(5), 3)]));
        assert_eq!(column_vector(&c, 0).unwrap(), ColorVector::from_ids(&[1, 2, 1]));
        assert_ne!(column_vector(&c, 0).unwrap(), column_vector(&c, 1).unwrap());
        assert!(column_pattern(&c, 4).is_err());
        assert!(column_vector(&c, 4).is_err());
    }

    #[test]
    fn distinct_columns_give_distinct_vectors() {
        let c = Coloring::from_rows(&[vec![1, 1, 2], vec![1, 2, 2]]).unwrap();
        let mut v = c.column_vectors();
        v.sort();
        v.dedup();
        assert_eq!(v.len(), 3);
    }

    #[test]
    fn canonicalize_examples() {
        let c = Coloring::from_rows(&[vec![7, 3]]).unwrap();
        let k = canonicalize_colors(&c);
        assert_eq!(k.rows(), vec![vec![0, 1]]);
        assert_eq!(canonicalize_colors(&k), k);
    }

    #[test]
    fn pattern_distance() {
        let a = ColorVector::from_ids(&[1, 1, 2]).pattern();
        let b = ColorVector::from_ids(&[1, 2, 3]).pattern();
        assert_eq!(a.distance(&b), 2);
        assert_eq!(a.distance(&a), 0);
    }

    #[test]
    fn lexicographic_permutations() {
        let mut p = Permutation::identity(3);
        let mut seen = vec![p.one_based()];
        while p.advance() {
            seen.push(p.one_based());
        }
        assert_eq!(seen.len(), 6);
        assert_eq!(seen[1], vec![1, 3, 2]);
        assert_eq!(seen[5], vec![3, 2, 1]);
        assert!(p.is_identity());
    }

    #[test]
    fn list_assignment_normalizes() {
        let g = GridSpec::new(1, 2).unwrap();
        let l = ListAssignment::new(g, vec![vec![Color(3), Color(1), Color(3)], vec![Color(2)]]).unwrap();
        assert_eq!(l.list(0, 0), &[Color(1), Color(3)]);
        assert!(ListAssignment::new(g, vec![vec![], vec![Color(2)]]).is_err());
        assert_eq!(l.coloring_count(), 2);
    }
}
