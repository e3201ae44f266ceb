//! Orthogonal instanton bundles on projective space through exact linear
//! algebra.
//!
//! A form `A` in `Λ²H_c^∨ ⊗ Λ²V^∨` (given as a sum of tensors `B_t ⊗ C_t` of
//! integer skew matrices) is flattened to a symmetric `c(n+1)` square matrix.
//! From it the crate builds the linear monad
//! `H_c ⊗ O(-1) -> W ⊗ O -> H_c^∨ ⊗ O(1)`, checks the rank, non-degeneracy
//! and symmetric-isomorphism conditions, evaluates the Kronecker module on
//! lines to decide splitting type, computes cohomology tables of the monad's
//! cohomology bundle and reports moduli dimensions.
//!
//! All arithmetic is exact.

#![allow(clippy::needless_range_loop)]

pub mod cli;
pub mod cohomology;
pub mod conditions;
pub mod error;
pub mod generate;
pub mod kronecker;
pub mod linalg;
pub mod linform;
pub mod moduli;
pub mod monad;
pub mod report;
pub mod spec_file;
pub mod tensor;

mod sampling;

pub use error::{Error, Result};
pub use linalg::{Rat, RatMatrix};
pub use tensor::{FlatForm, TensorSpec};
