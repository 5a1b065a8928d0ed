//! Exact arithmetic: prime field scalars, monomials, sparse polynomials,
//! polynomial matrices and the multivariate division algorithm.

pub mod field;
pub mod linalg;
pub mod matrix;
pub mod monomial;
pub mod polynomial;

pub use field::{init_prime, prime, Fp};
pub use matrix::{pack, unpack, Matrix};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use polynomial::{divide_with_remainder, Polynomial};
