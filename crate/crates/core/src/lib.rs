//! Distinguishing colorings of rook's graphs `K_n x K_m` with `n < m`.

pub mod bounds;
pub mod constructor;
pub mod corpus;
pub mod exact;
pub mod formats;
pub mod grid;
pub mod oracle;
pub mod poly;
pub mod validation;

pub use grid::{
    apply_automorphism, canonicalize_colors, column_pattern, column_vector, Automorphism, Color, ColorPattern,
    ColorVector, Coloring, GridError, GridSpec, ListAssignment, Permutation,
};
