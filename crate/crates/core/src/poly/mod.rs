//! Exact polynomial arithmetic over the rationals.

pub mod field;
pub mod monomial;
pub mod order;
pub mod parse;
pub mod polynomial;
pub mod sparse;

pub use field::{Field, Rational, Zp};
pub use monomial::Monomial;
pub use order::{MonomialOrder, OrderKind};
pub use parse::{parse_polynomial, parse_with_vars};
pub use polynomial::{Polynomial, Ring};
