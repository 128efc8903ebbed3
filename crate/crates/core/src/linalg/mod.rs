//! Exact linear algebra: Howell forms over ℤ/n, invariant factors, and
//! fraction-exact elimination over ℚ.

pub mod howell;
pub mod matrix;
pub mod rational;
pub mod smith;
pub mod zn;

pub use howell::{howell_form, kernel, preimage, solve, solve_modulo, HowellBasis};
pub use matrix::ResidueMatrix;
pub use rational::RationalMatrix;
pub use smith::invariant_factors;
