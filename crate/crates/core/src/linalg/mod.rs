//! Exact linear algebra over the rationals.

mod elimination;
mod matrix;
mod pfaffian;
pub mod rat;

pub use elimination::{det, inverse, kernel_basis, pivot_columns, principal_rank_subset, rank};
pub use matrix::RatMatrix;
pub use pfaffian::pfaffian;
pub use rat::{format_rat, parse_rat, rat, rat_frac, Rat};
