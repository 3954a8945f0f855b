pub mod angle;
pub mod error;
pub mod invariants;
pub mod matrix;
pub mod model;
pub mod monodromy;
pub mod pipeline;
pub mod poly;
pub mod stokes;

pub use angle::RationalAngle;
pub use error::{Error, Result};
pub use matrix::SymMat3;
pub use model::{case_spec, validate_spec, CaseName, CaseSpec};
pub use pipeline::{derive_case, oracle_verify, CaseReport, CubicSurface};
pub use poly::{evaluate_numeric, poly, var, Bindings, Coeff, LaurentPoly, Monomial, NumericAssignment, Var};
