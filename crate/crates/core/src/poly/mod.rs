//! Exact multivariate polynomials over Q with weighted gradings.

mod coeff;
mod context;
mod monomial;
mod parse;
mod polynomial;

pub use coeff::Coeff;
pub use context::{Ring, VariableContext};
pub use monomial::{Exponents, Monomial, MonomialOrder};
pub use parse::parse_polynomial;
pub use polynomial::{Polynomial, Term};
