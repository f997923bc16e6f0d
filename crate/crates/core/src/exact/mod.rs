//! Exact scalars, polynomials and dense matrices over the rationals and the
//! Gaussian rationals.

mod field;
mod gaussian;
mod matrix;
mod poly;
pub mod rational;
mod smith;
pub mod vector;

pub use field::Field;
pub use gaussian::GaussianRational;
pub use matrix::Matrix;
pub use poly::Polynomial;
pub use rational::{frac, parse_rational, rat, Rational};
pub use smith::{
    characteristic_matrix, core_restriction, diagonal_smith, invariant_factors, merge_zero_blocks,
    smith_diagonal, smith_invariant_factors, CoreRestriction,
};

pub type RMatrix = Matrix<Rational>;
pub type RPoly = Polynomial<Rational>;
pub type Vector = Vec<Rational>;
