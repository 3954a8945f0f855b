//! Closure system → invariant rewrite → elimination → change of variables →
//! cubic normal form.

pub mod golden;
pub mod oracle;
pub mod report;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, StageExt};
use crate::invariants;
use crate::matrix::SymMat3;
use crate::model::{case_spec, CaseName, CaseSpec, CoefficientSpec, CovPlan, EliminationPlan, SLOT_MONOMIALS};
use crate::monodromy::{self, ClosureOutcome, ClosureSystem, Provenance};
use crate::poly::{poly, var, Bindings, LaurentPoly, Monomial, Var};
use crate::stokes::{self, DirectionRow};

pub use oracle::{oracle_verify, OracleVerdict, ORACLE_TOLERANCE};

fn is_surface_var(v: Var) -> bool {
    matches!(v.name(), "X" | "Y" | "Z")
}

/// `a·XYZ + b·X² + c·Y² + d·Z² + c1·X + c2·Y + c3·Z + c4`, coefficients in the
/// parameters only.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubicSurface {
    pub xyz_coeff: LaurentPoly,
    pub quad_coeffs: [LaurentPoly; 3],
    pub linear_coeffs: [LaurentPoly; 3],
    pub constant: LaurentPoly,
}

impl CubicSurface {
    /// Splits a polynomial into the eight slots; anything else is a shape error.
    pub fn from_poly(p: &LaurentPoly) -> Result<Self> {
        let slot_monos: Vec<Monomial> = SLOT_MONOMIALS
            .iter()
            .map(|s| poly(s).terms().next().map(|(m, _)| m.clone()).unwrap_or_default())
            .collect();
        let mut slots: [LaurentPoly; 8] = Default::default();
        let mut stray = Vec::new();
        for (m, c) in p.terms() {
            let (surface, rest) = m.split(is_surface_var);
            if rest.factors().iter().any(|(v, _)| !v.is_parameter()) {
                stray.push(m.to_string());
                continue;
            }
            match slot_monos.iter().position(|s| *s == surface) {
                Some(k) => slots[k] += &LaurentPoly::term(c.clone(), rest),
                None => stray.push(m.to_string()),
            }
        }
        if !stray.is_empty() {
            return Err(Error::Shape(stray.join(", ")));
        }
        let [xyz, xx, yy, zz, x, y, z, c] = slots;
        Ok(CubicSurface {
            xyz_coeff: xyz,
            quad_coeffs: [xx, yy, zz],
            linear_coeffs: [x, y, z],
            constant: c,
        })
    }

    /// Slots in the order `XYZ, X², Y², Z², X, Y, Z, 1`.
    pub fn slots(&self) -> [&LaurentPoly; 8] {
        let [a, b, c] = &self.quad_coeffs;
        let [x, y, z] = &self.linear_coeffs;
        [&self.xyz_coeff, a, b, c, x, y, z, &self.constant]
    }

    pub fn to_poly(&self) -> LaurentPoly {
        let mut acc = LaurentPoly::zero();
        for (c, m) in self.slots().into_iter().zip(SLOT_MONOMIALS) {
            acc += &(c * &poly(m));
        }
        acc
    }

    /// `c1…c4`: the linear coefficients and the constant.
    pub fn free_coefficients(&self) -> [&LaurentPoly; 4] {
        let [x, y, z] = &self.linear_coeffs;
        [x, y, z, &self.constant]
    }

    pub fn to_compact_string(&self) -> String {
        render_slots(self, Style::Compact)
    }

    pub fn to_latex(&self) -> String {
        render_slots(self, Style::Latex)
    }

    /// Whether the slots agree with an expected shape: fixed slots exactly,
    /// free slots nonzero, absent slots zero.
    pub fn matches_shape(&self, expected: &crate::model::ExpectedCubic) -> bool {
        self.slots().iter().zip(&expected.slots).all(|(c, e)| match e {
            CoefficientSpec::Fixed(v) => *c == v,
            CoefficientSpec::Free(_) => !c.is_zero(),
            CoefficientSpec::Absent => c.is_zero(),
        })
    }
}

#[derive(Clone, Copy)]
enum Style {
    Compact,
    Latex,
}

const COMPACT_MONOS: [&str; 8] = ["XYZ", "X²", "Y²", "Z²", "X", "Y", "Z", ""];
const LATEX_MONOS: [&str; 8] = ["XYZ", "X^{2}", "Y^{2}", "Z^{2}", "X", "Y", "Z", ""];

fn render_slots(c: &CubicSurface, style: Style) -> String {
    let render = |p: &LaurentPoly| match style {
        Style::Compact => p.to_compact_string(),
        Style::Latex => p.to_latex(),
    };
    let monos = match style {
        Style::Compact => COMPACT_MONOS,
        Style::Latex => LATEX_MONOS,
    };
    let mut parts: Vec<(bool, String)> = Vec::new();
    for (k, coeff) in c.slots().into_iter().enumerate() {
        if coeff.is_zero() {
            continue;
        }
        let mono = monos[k];
        if mono.is_empty() {
            // constant: list its terms individually
            for (m, v) in coeff.terms().rev() {
                let t = LaurentPoly::term(v.clone(), m.clone());
                let text = render(&t);
                match text.strip_prefix('-') {
                    Some(rest) => parts.push((true, rest.to_string())),
                    None => parts.push((false, text)),
                }
            }
            continue;
        }
        let (negative, body) = if coeff.len() == 1 {
            let text = render(coeff);
            let (neg, mag) = match text.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, text),
            };
            let sep = if matches!(style, Style::Latex) && mag != "1" { " " } else { "" };
            (neg, if mag == "1" { mono.to_string() } else { format!("{mag}{sep}{mono}") })
        } else {
            (false, format!("({}){mono}", render(coeff)))
        };
        parts.push((negative, body));
    }
    if parts.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (neg, body)) in parts.into_iter().enumerate() {
        match (k, neg) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for CubicSurface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.to_compact_string())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    /// Solutions of the planned variables, composed.
    pub solutions: Bindings,
    pub residual: LaurentPoly,
}

/// Solves the planned equations in order and substitutes into the target.
pub fn eliminate(system: &ClosureSystem, plan: &EliminationPlan) -> Result<Elimination> {
    let mut solutions = Bindings::new();
    for &(k, v) in &plan.steps {
        let eq = system.equations[k].substitute(&solutions)?;
        let sol = eq.solve_linear(v)?;
        let single = Bindings::from([(v, sol.clone())]);
        for image in solutions.values_mut() {
            *image = image.substitute(&single)?;
        }
        solutions.insert(v, sol);
    }
    let residual = &system.equations[plan.target].substitute(&solutions)? * &plan.factor;
    Ok(Elimination { solutions, residual })
}

/// Intermediate polynomials after each substitution stage, then after the
/// final unit factor.
pub fn apply_cov(residual: &LaurentPoly, cov: &CovPlan) -> Result<Vec<LaurentPoly>> {
    let mut out = Vec::with_capacity(cov.stages.len() + 1);
    let mut current = residual.clone();
    for stage in &cov.stages {
        current = current.substitute(stage)?;
        out.push(current.clone());
    }
    out.push(&current * &cov.factor);
    Ok(out)
}

pub fn to_cubic_normal_form(residual: &LaurentPoly, cov: &CovPlan) -> Result<CubicSurface> {
    let degree = residual.max_degree_in(|v| !v.is_parameter());
    if degree > 3 {
        return Err(Error::Shape(format!("residual has degree {degree}")));
    }
    let stages = apply_cov(residual, cov)?;
    CubicSurface::from_poly(stages.last().expect("factor stage"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Verdicts {
    pub schedule_match: bool,
    pub determinant_one: bool,
    pub shape_match: bool,
    /// Exact equality with a fully printed cubic.
    pub exact_match: Option<bool>,
    pub tautological: Option<bool>,
    pub conjugation_invariant: bool,
    pub remark_match: Option<bool>,
    pub oracle: Option<OracleVerdict>,
}

impl Verdicts {
    pub fn all_passed(&self) -> bool {
        self.schedule_match
            && self.determinant_one
            && self.shape_match
            && self.exact_match != Some(false)
            && self.tautological != Some(false)
            && self.conjugation_invariant
            && self.remark_match != Some(false)
            && self.oracle.as_ref().is_none_or(|o| o.passed)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: CaseName,
    pub spec: CaseSpec,
    pub directions: Vec<DirectionRow>,
    pub stokes_matrices: Vec<SymMat3>,
    pub formal_monodromy: SymMat3,
    pub monodromy: SymMat3,
    pub closure: ClosureOutcome,
    pub invariant_system: ClosureSystem,
    pub elimination: Elimination,
    pub cov_stages: Vec<LaurentPoly>,
    pub cubic: CubicSurface,
    pub verdicts: Verdicts,
}

pub fn derive_spec(spec: &CaseSpec) -> Result<CaseReport> {
    let directions = stokes::direction_table(spec);
    let schedule_match = stokes::match_schedule(spec).is_ok();
    let stokes_matrices = stokes::case_stokes_matrices(spec).stage("stokes matrices")?;
    let formal_monodromy = stokes::case_formal_monodromy(spec).stage("formal monodromy")?;
    let monodromy = monodromy::topological_monodromy(spec).stage("monodromy")?;
    let determinant_one = monodromy.det().is_one();
    let closure = monodromy::closure_equations(spec, &monodromy).stage("closure")?;

    let mut invariant_system = ClosureSystem {
        equations: Vec::new(),
        provenance: Vec::new(),
    };
    for (eq, tag) in closure.system.equations.iter().zip(&closure.system.provenance) {
        let eq = if spec.rewrites_to_invariants() {
            invariants::rewrite_in_invariants(eq, &spec.generator_defs).stage("invariant rewrite")?
        } else {
            eq.clone()
        };
        invariant_system.push(eq, *tag);
    }
    if let Some(rel) = &spec.tautological_relation {
        invariant_system.push(rel.clone(), Provenance::Tautological);
    }
    let tautological = spec
        .tautological_relation
        .as_ref()
        .map(|rel| invariants::tautological_check(&spec.generator_defs, rel));
    let conjugation_invariant =
        invariants::conjugation_invariance(spec, &invariant_system.equations).stage("conjugation invariance")?;

    let elimination = eliminate(&invariant_system, &spec.elimination_plan).stage("elimination")?;
    let cov_stages = apply_cov(&elimination.residual, &spec.cov_plan).stage("change of variables")?;
    let cubic = to_cubic_normal_form(&elimination.residual, &spec.cov_plan).stage("normal form")?;

    let shape_match = cubic.matches_shape(&spec.expected_cubic);
    let exact_match = spec.expected_cubic.polynomial().map(|p| p == cubic.to_poly());
    let remark_match = match &spec.remark {
        Some(r) => Some(cubic.to_poly().substitute(&r.substitution).stage("parameter remark")? == r.form),
        None => None,
    };

    Ok(CaseReport {
        case: spec.name,
        spec: spec.clone(),
        directions,
        stokes_matrices,
        formal_monodromy,
        monodromy,
        closure,
        invariant_system,
        elimination,
        cov_stages,
        cubic,
        verdicts: Verdicts {
            schedule_match,
            determinant_one,
            shape_match,
            exact_match,
            tautological,
            conjugation_invariant,
            remark_match,
            oracle: None,
        },
    })
}

pub fn derive_case(name: CaseName) -> Result<CaseReport> {
    derive_spec(&case_spec(name))
}

/// The JKTVI cubic at `(α, β, γ) = (ε², ε, 1)` with `ε³ = 1`.
pub fn root_of_unity_preset(cubic: &CubicSurface) -> Result<LaurentPoly> {
    let e = var("e");
    let b = Bindings::from([(var("alpha"), poly("e^2")), (var("beta"), poly("e"))]);
    Ok(cubic.to_poly().substitute(&b)?.reduce_cube_root(e))
}
