//! Finite fields `F_{p^k}` and dense linear algebra over them.

mod field;
mod mat;

pub use field::{is_irreducible, Elem, Field};
pub use mat::{enumerate_subspaces, gaussian_binomial, mat_rank, solve_linear, Mat};
