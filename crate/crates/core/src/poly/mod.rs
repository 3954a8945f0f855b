//! Exact Laurent polynomials over the rationals in a closed variable registry.

pub mod laurent;
pub mod monomial;
pub mod numeric;
pub mod parse;
pub mod var;

pub use laurent::{rational, Bindings, Coeff, LaurentPoly};
pub use monomial::Monomial;
pub use numeric::{evaluate_numeric, NumericAssignment};
pub use parse::parse;
pub use var::{var, Var};

/// Parses a polynomial literal that is known to be well formed.
pub fn poly(text: &str) -> LaurentPoly {
    parse(text).unwrap_or_else(|e| panic!("bad polynomial literal `{text}`: {e}"))
}
