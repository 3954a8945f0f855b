//! Monte-Carlo consistency check, independent of the symbolic elimination:
//! sample a point on the closure locus numerically, push it through the
//! generator definitions and the inverse change of variables, and evaluate
//! the derived cubic there.

use std::collections::BTreeSet;

use nalgebra::{DMatrix, DVector, Matrix3};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SymMat3;
use crate::model::{CaseName, CaseSpec, ClosureCondition};
use crate::pipeline::CaseReport;
use crate::poly::{evaluate_numeric, LaurentPoly, Monomial, NumericAssignment, Var};

pub const ORACLE_TOLERANCE: f64 = 1e-9;
const UNIT_FLOOR: f64 = 0.1;
const PIVOT_FLOOR: f64 = 0.1;
const MAX_RESAMPLES: usize = 1000;

type C3 = Matrix3<Complex64>;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleVerdict {
    pub trials: usize,
    pub seed: u64,
    /// Largest `|cubic(X, Y, Z)|` over the trials.
    pub max_residual: f64,
    /// Largest violation of the closure condition by the sampled point.
    pub max_closure_residual: f64,
    /// Largest value of the dropped (redundant) entry equation.
    pub max_dropped_residual: Option<f64>,
    pub resamples: usize,
    pub passed: bool,
}

fn case_index(name: CaseName) -> u64 {
    CaseName::ALL.iter().position(|c| *c == name).expect("known case") as u64
}

/// Independent stream per (case, trial).
fn trial_rng(seed: u64, name: CaseName, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream((case_index(name) << 32) | trial as u64);
    rng
}

fn sample(rng: &mut ChaCha8Rng) -> Complex64 {
    Complex64::new(rng.random_range(-1.0..=1.0), rng.random_range(-1.0..=1.0))
}

fn sample_unit(rng: &mut ChaCha8Rng) -> Result<Complex64> {
    for _ in 0..MAX_RESAMPLES {
        let z = sample(rng);
        if z.norm() >= UNIT_FLOOR {
            return Ok(z);
        }
    }
    Err(Error::DegenerateSample {
        retries: MAX_RESAMPLES,
        reason: "unit modulus below floor".into(),
    })
}

fn numeric_matrix(m: &SymMat3, a: &NumericAssignment) -> Result<C3> {
    let mut out = C3::zeros();
    for i in 0..3 {
        for j in 0..3 {
            out[(i, j)] = evaluate_numeric(m.entry(i + 1, j + 1), a)?;
        }
    }
    Ok(out)
}

/// `H · S_m ⋯ S_1` built directly from the layouts.
fn numeric_monodromy(spec: &CaseSpec, h: &SymMat3, a: &NumericAssignment) -> Result<C3> {
    let mut acc = C3::identity();
    for layout in &spec.schedule {
        let mut s = C3::identity();
        for e in &layout.entries {
            s[(e.row - 1, e.col - 1)] = a.get(e.var).ok_or_else(|| Error::UnboundVariable(e.var.to_string()))?;
        }
        acc = s * acc;
    }
    Ok(numeric_matrix(h, a)? * acc)
}

fn eval_monomial(m: &Monomial, a: &NumericAssignment) -> Result<Complex64> {
    evaluate_numeric(&LaurentPoly::monomial(m.clone()), a)
}

/// Runs the change of variables backwards: each stage expresses old
/// variables through new ones, so the new values solve an affine system.
fn invert_cov(spec: &CaseSpec, mut a: NumericAssignment) -> Result<Option<NumericAssignment>> {
    for stage in &spec.cov_plan.stages {
        let bound: BTreeSet<Var> = stage.keys().copied().collect();
        let unknowns: Vec<Var> = stage
            .values()
            .flat_map(|img| img.vars())
            .filter(|v| !v.is_parameter() && (bound.contains(v) || a.get(*v).is_none()))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect();
        let images: Vec<LaurentPoly> = stage.values().cloned().collect();
        let targets: Vec<Complex64> = stage
            .keys()
            .map(|old| a.get(*old).ok_or_else(|| Error::UnboundVariable(old.to_string())))
            .collect::<Result<_>>()?;
        let Some(sol) = affine_solve(&images, &targets, &unknowns, &a)? else {
            return Ok(None);
        };
        for (v, z) in unknowns.iter().zip(sol) {
            a = a.with(*v, z)?;
        }
    }
    Ok(Some(a))
}

/// Solves `images(unknowns) = targets` for images jointly affine in the
/// unknowns. `None` when the linear part is too close to singular.
fn affine_solve(
    images: &[LaurentPoly],
    targets: &[Complex64],
    unknowns: &[Var],
    a: &NumericAssignment,
) -> Result<Option<Vec<Complex64>>> {
    let zero = Complex64::new(0.0, 0.0);
    let at = |point: &[Complex64]| -> Result<Vec<Complex64>> {
        let mut a = a.clone();
        for (v, z) in unknowns.iter().zip(point) {
            a = a.with(*v, *z)?;
        }
        images
            .iter()
            .zip(targets)
            .map(|(e, t)| Ok(evaluate_numeric(e, &a)? - t))
            .collect()
    };
    let n = unknowns.len();
    let b0 = at(&vec![zero; n])?;
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let mut e = vec![zero; n];
        e[k] = Complex64::new(1.0, 0.0);
        let bk = at(&e)?;
        cols.push(bk.iter().zip(&b0).map(|(x, y)| x - y).collect::<Vec<_>>());
    }
    let mat = DMatrix::from_fn(images.len(), n, |i, j| cols[j][i]);
    let rhs = DVector::from_iterator(images.len(), b0.iter().map(|z| -z));
    let lu = mat.lu();
    if lu.determinant().norm() < PIVOT_FLOOR.powi(n as i32) {
        return Ok(None);
    }
    Ok(lu.solve(&rhs).map(|x| x.iter().copied().collect()))
}

struct TrialOutcome {
    residual: f64,
    closure: f64,
    dropped: Option<f64>,
}

fn run_trial(report: &CaseReport, rng: &mut ChaCha8Rng) -> Result<Option<TrialOutcome>> {
    let spec = &report.spec;
    let mut values = Vec::new();
    for u in spec.parameters().into_iter().filter(|v| v.is_unit()) {
        values.push((u, sample_unit(rng)?));
    }
    let (closure, dropped, mut a) = match &spec.closure {
        ClosureCondition::FixedClass { trace, trace_square } => {
            for v in spec.stokes_vars() {
                values.push((v, sample(rng)));
            }
            let a = NumericAssignment::new(values)?;
            let m = numeric_monodromy(spec, &report.formal_monodromy, &a)?;
            let a = a.with(*trace, m.trace())?.with(*trace_square, (m * m).trace())?;
            let closure = report
                .closure
                .system
                .equations
                .iter()
                .map(|e| evaluate_numeric(e, &a).map(|z| z.norm()))
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .fold(0.0, f64::max);
            (closure, None, a)
        }
        ClosureCondition::Identity {
            numeric_unknowns, ..
        } => {
            let bound = &report.closure.back_substitutions;
            for v in spec.stokes_vars() {
                if !bound.contains_key(&v) && !numeric_unknowns.contains(&v) {
                    values.push((v, sample(rng)));
                }
            }
            let mut a = NumericAssignment::new(values)?;
            let eqs = &report.closure.system.equations;
            let zeros = vec![Complex64::new(0.0, 0.0); eqs.len()];
            let Some(sol) = affine_solve(eqs, &zeros, numeric_unknowns, &a)? else {
                return Ok(None);
            };
            for (v, z) in numeric_unknowns.iter().zip(sol) {
                a = a.with(*v, z)?;
            }
            for (v, image) in bound {
                let z = evaluate_numeric(image, &a)?;
                a = a.with(*v, z)?;
            }
            let m = numeric_monodromy(spec, &report.formal_monodromy, &a)?;
            let closure = (m - C3::identity()).iter().map(|z| z.norm()).fold(0.0, f64::max);
            let dropped = match &report.closure.dropped {
                Some(eq) => Some(evaluate_numeric(eq, &a)?.norm()),
                None => None,
            };
            (closure, dropped, a)
        }
    };
    for (g, m) in &spec.generator_defs {
        let z = eval_monomial(m, &a)?;
        a = a.with(*g, z)?;
    }
    let Some(a) = invert_cov(spec, a)? else {
        return Ok(None);
    };
    let residual = evaluate_numeric(&report.cubic.to_poly(), &a)?.norm();
    Ok(Some(TrialOutcome {
        residual,
        closure,
        dropped,
    }))
}

/// Samples `trials` points of the closure locus and reports the largest
/// residual of the derived cubic there.
pub fn oracle_verify(report: &CaseReport, trials: usize, seed: u64) -> Result<OracleVerdict> {
    assert!(trials >= 1, "at least one trial");
    let mut verdict = OracleVerdict {
        trials,
        seed,
        max_residual: 0.0,
        max_closure_residual: 0.0,
        max_dropped_residual: None,
        resamples: 0,
        passed: false,
    };
    for trial in 0..trials {
        let mut rng = trial_rng(seed, report.case, trial);
        let mut attempts = 0;
        let outcome = loop {
            if let Some(o) = run_trial(report, &mut rng)? {
                break o;
            }
            attempts += 1;
            if attempts >= MAX_RESAMPLES {
                return Err(Error::DegenerateSample {
                    retries: attempts,
                    reason: format!("trial {trial} kept hitting near-singular systems"),
                });
            }
        };
        verdict.resamples += attempts;
        verdict.max_residual = verdict.max_residual.max(outcome.residual);
        verdict.max_closure_residual = verdict.max_closure_residual.max(outcome.closure);
        if let Some(d) = outcome.dropped {
            verdict.max_dropped_residual = Some(verdict.max_dropped_residual.unwrap_or(0.0).max(d));
        }
    }
    verdict.passed = verdict.max_residual < ORACLE_TOLERANCE
        && verdict.max_closure_residual < ORACLE_TOLERANCE
        && verdict.max_dropped_residual.is_none_or(|d| d < ORACLE_TOLERANCE);
    Ok(verdict)
}
