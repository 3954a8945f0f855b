use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SymMat3;
use crate::model::{CaseSpec, ClosureCondition};
use crate::poly::{Bindings, LaurentPoly};
use crate::stokes;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Provenance {
    Trace,
    TraceSquare,
    Entry { row: usize, col: usize },
    Tautological,
}

/// Equations understood as `= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureSystem {
    pub equations: Vec<LaurentPoly>,
    pub provenance: Vec<Provenance>,
}

impl ClosureSystem {
    pub fn push(&mut self, eq: LaurentPoly, tag: Provenance) {
        self.equations.push(eq);
        self.provenance.push(tag);
    }
}

/// `H · S_m ⋯ S_1`.
pub fn topological_monodromy(spec: &CaseSpec) -> Result<SymMat3> {
    let h = stokes::case_formal_monodromy(spec)?;
    let s = stokes::case_stokes_matrices(spec)?;
    Ok(&h * &SymMat3::ordered_product(&s))
}

/// Both sides of `S_k⋯S_1 = (H·S_m⋯S_{k+1})⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitProduct {
    pub left: SymMat3,
    pub right: SymMat3,
}

pub fn split_product(spec: &CaseSpec, split: usize) -> Result<SplitProduct> {
    let h = stokes::case_formal_monodromy(spec)?;
    let s = stokes::case_stokes_matrices(spec)?;
    let left = SymMat3::ordered_product(&s[..split]);
    let right = (&h * &SymMat3::ordered_product(&s[split..])).inverse()?;
    Ok(SplitProduct { left, right })
}

/// Solves the scheduled entry equations of `left − right` one after another,
/// composing each solution into the earlier ones.
pub fn back_substitutions(spec: &CaseSpec, split: &SplitProduct) -> Result<Bindings> {
    let ClosureCondition::Identity {
        back_substitutions: steps,
        ..
    } = &spec.closure
    else {
        return Ok(Bindings::new());
    };
    let diff = split.left.sub(&split.right);
    let mut bound = Bindings::new();
    for step in steps {
        if bound.contains_key(&step.var) {
            return Err(Error::InconsistentSystem(format!("`{}` is solved twice", step.var)));
        }
        let eq = diff.entry(step.row, step.col).substitute(&bound)?;
        let sol = eq.solve_linear(step.var)?;
        let single = Bindings::from([(step.var, sol.clone())]);
        for image in bound.values_mut() {
            *image = image.substitute(&single)?;
        }
        bound.insert(step.var, sol);
    }
    Ok(bound)
}

/// Closure equations together with the data needed to replay them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureOutcome {
    pub system: ClosureSystem,
    pub split: Option<SplitProduct>,
    pub back_substitutions: Bindings,
    /// The redundant entry equation after back-substitution.
    pub dropped: Option<LaurentPoly>,
}

pub fn closure_equations(spec: &CaseSpec, m: &SymMat3) -> Result<ClosureOutcome> {
    let mut system = ClosureSystem {
        equations: Vec::new(),
        provenance: Vec::new(),
    };
    match &spec.closure {
        ClosureCondition::FixedClass { trace, trace_square } => {
            system.push(&m.trace() - &LaurentPoly::var(*trace), Provenance::Trace);
            system.push(&(m * m).trace() - &LaurentPoly::var(*trace_square), Provenance::TraceSquare);
            Ok(ClosureOutcome {
                system,
                split: None,
                back_substitutions: Bindings::new(),
                dropped: None,
            })
        }
        ClosureCondition::Identity {
            split,
            residuals,
            dropped,
            ..
        } => {
            let sp = split_product(spec, *split)?;
            let bound = back_substitutions(spec, &sp)?;
            let diff = sp.left.sub(&sp.right);
            for r in residuals {
                let eq = &diff.entry(r.row, r.col).substitute(&bound)? * &r.factor;
                system.push(eq, Provenance::Entry { row: r.row, col: r.col });
            }
            let dropped_eq = diff.entry(dropped.0, dropped.1).substitute(&bound)?;
            Ok(ClosureOutcome {
                system,
                split: Some(sp),
                back_substitutions: bound,
                dropped: Some(dropped_eq),
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{case_spec, CaseName};
    use crate::poly::{poly, var};

    #[test]
    fn determinant_is_one_everywhere() {
        for name in CaseName::ALL {
            let m = topological_monodromy(&case_spec(name)).unwrap();
            assert!(m.det().is_one(), "{name}");
        }
    }

    #[test]
    fn maximally_twisted_partial_product() {
        let spec = case_spec(CaseName::JKTI);
        let sp = split_product(&spec, 4).unwrap();
        assert_eq!(sp.left.entry(3, 1), &LaurentPoly::zero());
        assert_eq!(sp.left.entry(3, 2), &LaurentPoly::zero());
        assert_eq!(sp.left.entry(3, 3), &LaurentPoly::one());
        assert_eq!(sp.left.entry(2, 3), &poly("x3 + x2*x4"));
    }

    #[test]
    fn identity_residuals_for_the_last_case() {
        let spec = case_spec(CaseName::JKTI);
        let m = topological_monodromy(&spec).unwrap();
        let out = closure_equations(&spec, &m).unwrap();
        assert_eq!(
            out.system.equations,
            vec![poly("x3 + x2*x4 - 1"), poly("x1*x2*x4 + x2 + 1 - x1")]
        );
        let b = &out.back_substitutions;
        assert_eq!(b[&var("x9")], poly("-x4"));
        assert_eq!(b[&var("x10")], poly("-x1*x4 - 1"));
        assert_eq!(b[&var("x7")], poly("-x2"));
        assert_eq!(b[&var("x8")], poly("x2*x4 - 1"));
        assert_eq!(b[&var("x5")], poly("1 + x1*x4"));
        assert_eq!(b[&var("x6")], poly("-1 - x2*(1 + x1*x4)"));
        // The dropped entry is x4 times the second residual.
        let dropped = out.dropped.unwrap();
        assert_eq!(dropped, &poly("x4") * &out.system.equations[1].scale(&crate::poly::rational(-1, 1)));
    }

    #[test]
    fn fixed_class_traces() {
        let spec = case_spec(CaseName::JKTIVa);
        let m = topological_monodromy(&spec).unwrap();
        assert_eq!(m.trace(), poly("x1 + x3 + x2*x4"));
    }

    #[test]
    fn repeated_target_is_inconsistent() {
        let mut spec = case_spec(CaseName::JKTI);
        if let ClosureCondition::Identity {
            back_substitutions, ..
        } = &mut spec.closure
        {
            let first = back_substitutions[0];
            back_substitutions.push(first);
        }
        let sp = split_product(&spec, 4).unwrap();
        assert!(matches!(
            back_substitutions(&spec, &sp),
            Err(Error::InconsistentSystem(_))
        ));
    }
}
