//! Exact arithmetic over prime fields: scalars, monomials, sparse multivariate
//! polynomials and the grevlex order.

mod field;
mod monomial;
mod polynomial;
mod ring;
mod text;

pub use field::{is_prime, PrimeField, Scalar};
pub use monomial::{Monomial, EXPONENT_LIMIT, MAX_VARS};
pub use polynomial::Polynomial;
pub use ring::PolyRing;
