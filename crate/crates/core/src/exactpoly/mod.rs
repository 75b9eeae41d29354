//! Exact multivariate polynomial arithmetic over the rationals.

mod error;
mod monomial;
mod parse;
mod poly;
mod rat;
mod sym;

pub use error::PolyError;
pub use monomial::Monomial;
pub use parse::{parse_poly, Registry};
pub use poly::{AxfMatch, MPoly};
pub use rat::{common_denominator, fmt_rat, int, parse_rat, rat, Rat};
pub use sym::{syms, Sym, RESERVED_DEGREE};
