//! Exact arithmetic over prime fields: elements, polynomials with Hasse
//! derivatives, and dense linear algebra.

mod field;
mod matrix;
mod poly;

pub use field::{find_primitive, is_prime, Fe, Field, MAX_MODULUS};
pub use matrix::{AffineSolution, Matrix};
pub use poly::Poly;
