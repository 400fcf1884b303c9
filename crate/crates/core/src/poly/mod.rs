//! Polynomial rings, monomial orders, polynomials and free-module vectors.

mod monomial;
mod parse;
mod polynomial;
mod ring;
mod vector;

pub use monomial::{order_compare, BlockInner, Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use polynomial::Polynomial;
pub use ring::{OrderJson, Ring, RingJson};
pub use vector::FreeVector;
