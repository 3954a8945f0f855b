use std::collections::BTreeMap;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::error::{Error, Result};
use crate::poly::laurent::LaurentPoly;
use crate::poly::var::{var, Var};

const MIN_UNIT_MODULUS: f64 = 1e-6;

/// Complex values for registry variables.
///
/// Unit variables must stay away from zero. Assigning `r` pins `alpha` to
/// `r^2`; an explicit conflicting `alpha` is rejected.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct NumericAssignment {
    values: BTreeMap<Var, Complex64>,
}

impl NumericAssignment {
    pub fn new<I: IntoIterator<Item = (Var, Complex64)>>(values: I) -> Result<Self> {
        let mut values: BTreeMap<Var, Complex64> = values.into_iter().collect();
        for (v, z) in &values {
            if v.is_unit() && z.norm() < MIN_UNIT_MODULUS {
                return Err(Error::InvalidAssignment(format!(
                    "unit `{v}` has modulus {:.3e}",
                    z.norm()
                )));
            }
            if !z.is_finite() {
                return Err(Error::InvalidAssignment(format!("`{v}` is not finite")));
            }
        }
        let (r, alpha) = (var("r"), var("alpha"));
        if let Some(&rv) = values.get(&r) {
            let sq = rv * rv;
            match values.get(&alpha) {
                Some(&a) if (a - sq).norm() > 1e-12 * sq.norm().max(1.0) => {
                    return Err(Error::InvalidAssignment(format!(
                        "alpha = {a} but r^2 = {sq}"
                    )));
                }
                _ => {
                    values.insert(alpha, sq);
                }
            }
        }
        Ok(NumericAssignment { values })
    }

    /// All listed variables set to `1`.
    pub fn ones<I: IntoIterator<Item = Var>>(vars: I) -> Self {
        Self::new(vars.into_iter().map(|v| (v, Complex64::new(1.0, 0.0)))).expect("ones are valid")
    }

    pub fn get(&self, v: Var) -> Option<Complex64> {
        self.values.get(&v).copied()
    }

    pub fn values(&self) -> &BTreeMap<Var, Complex64> {
        &self.values
    }

    /// Returns a copy with `v` set, re-running the construction checks.
    pub fn with(&self, v: Var, z: Complex64) -> Result<Self> {
        let mut values = self.values.clone();
        values.insert(v, z);
        if v == var("alpha") {
            values.remove(&var("r"));
        }
        Self::new(values)
    }
}

/// Direct term-by-term evaluation.
pub fn evaluate_numeric(poly: &LaurentPoly, a: &NumericAssignment) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    for (m, c) in poly.terms() {
        let mut t = Complex64::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
        for &(v, e) in m.factors() {
            let z = a
                .get(v)
                .ok_or_else(|| Error::UnboundVariable(v.name().to_string()))?;
            t *= z.powi(e);
        }
        sum += t;
    }
    Ok(sum)
}
