//! One PASS/FAIL line per acceptance criterion. Exits nonzero on any FAIL.

mod common;

use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use wcv_core::invariants::{conjugation_invariance, invariant_monomials, tautological_check, torus_weights};
use wcv_core::stokes::{case_formal_monodromy, case_stokes_matrices, is_nilpotent_step};
use wcv_core::{
    case_spec, derive_case, oracle_verify, poly, var, Bindings, CaseName, CaseReport, LaurentPoly, RationalAngle,
    SymMat3,
};

const EXACT_BUDGET: Duration = Duration::from_secs(1);
const SHAPE_BUDGET: Duration = Duration::from_secs(5);
const ORACLE_BUDGET: Duration = Duration::from_secs(30);
const ORACLE_TOL: f64 = 1e-9;
const ORACLE_TRIALS: usize = 100;
const ORACLE_SEED: u64 = 42;
const RING_CASES: u32 = 1000;
const SOLVE_CASES: u32 = 200;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    passed: bool,
    detail: String,
}

fn timed(name: CaseName) -> (CaseReport, Duration) {
    let t = Instant::now();
    let r = derive_case(name).expect("derivation succeeds");
    (r, t.elapsed())
}

fn normalized(name: CaseName, text: &str) -> LaurentPoly {
    poly(text).substitute(&case_spec(name).unit_relation).unwrap()
}

fn exact_cubics() -> Outcome {
    let printed = [
        (CaseName::JKTI, "X*Y*Z + X + Y + 1"),
        (CaseName::JKTII, "X*Y*Z - X - alpha^-1*Y - Z + 1 + alpha^-1"),
        (
            CaseName::JKTIVb,
            "X*Y*Z + Y^2 - gamma^-1*X + (-alpha - gamma^-1 - 1)*Y - alpha*Z + alpha*gamma^-1 + alpha + gamma^-1",
        ),
    ];
    let mut passed = true;
    let mut slowest = Duration::ZERO;
    for (name, text) in printed {
        let (r, dt) = timed(name);
        slowest = slowest.max(dt);
        passed &= r.cubic.to_poly() == normalized(name, text) && dt < EXACT_BUDGET;
    }
    Outcome {
        passed,
        detail: format!("tol 0, slowest {slowest:.2?} (budget {EXACT_BUDGET:?})"),
    }
}

fn shapes() -> Outcome {
    let support = |r: &CaseReport| -> Vec<bool> { r.cubic.slots().iter().map(|c| !c.is_zero()).collect() };
    let cases = [
        // XYZ X² Y² Z² X Y Z 1
        (CaseName::JKTVI, [true; 8], ["gamma", "alpha", "beta", "gamma"]),
        (CaseName::JKTV, [true, true, true, false, true, true, true, true], ["1", "1", "1", "0"]),
        (CaseName::JKTIVa, [true, true, false, false, true, true, true, true], ["1", "1", "0", "0"]),
    ];
    let mut passed = true;
    let mut slowest = Duration::ZERO;
    for (name, want, leading) in cases {
        let (r, dt) = timed(name);
        slowest = slowest.max(dt);
        let lead_ok = r.cubic.slots()[..4].iter().zip(leading).all(|(c, t)| **c == normalized(name, t));
        passed &= support(&r) == want && lead_ok && dt < SHAPE_BUDGET;
    }
    Outcome {
        passed,
        detail: format!("tol 0 on support, slowest {slowest:.2?} (budget {SHAPE_BUDGET:?})"),
    }
}

fn intermediate_formulas() -> Outcome {
    let iva = derive_case(CaseName::JKTIVa).unwrap();
    let ivb = derive_case(CaseName::JKTIVb).unwrap();
    let ii = derive_case(CaseName::JKTII).unwrap();
    let v = derive_case(CaseName::JKTV).unwrap();
    let alpha_r = Bindings::from([(var("alpha"), poly("r^2"))]);
    let partial = SymMat3::parse([
        "1", "x1", "x2",
        "x4", "x1*x4 + 1", "x3 + x2*x4",
        "x4*x6 + x5", "x1*x4*x6 + x6 + x1*x5", "x3*x6 + x2*x4*x6 + x2*x5 + 1",
    ])
    .unwrap();
    let checks = [
        iva.closure.system.equations[0] == poly("x1 + x3 + x2*x4 - p"),
        iva.closure.system.equations[1]
            == poly("2*x4 + x1^2 + 2*x2 + 2*x1*x2*x4 + x3^2 + x2^2*x4^2 + 2*x2*x3*x4 - q"),
        iva.elimination.residual == poly("x2*x3*x4 + x3^2 + x4 - p*x3 + x2 + (1/2)*p^2 - (1/2)*q"),
        ivb.closure.split.as_ref().is_some_and(|s| s.left == partial),
        ii.elimination.residual
            == poly("U*V*W + U*W + V*W - alpha^-1*U - alpha^-1*V + W*(1 - alpha^-1) + alpha^-1*(alpha^-1 - 1)"),
        v.elimination.residual
            == poly(
                "alpha*T*V*W + alpha*V^2 + T^2 + V*W + alpha*T*W + V*(alpha - p) + T*((1/2)*q - (1/2)*p^2 + alpha^-1)",
            )
            .substitute(&alpha_r)
            .unwrap(),
    ];
    let ok = checks.iter().filter(|c| **c).count();
    Outcome {
        passed: ok == checks.len(),
        detail: format!("{ok}/{} formulas exact", checks.len()),
    }
}

fn direction_tables() -> Outcome {
    let kpi = |n: i64, ks: &[i64]| ks.iter().map(|&k| RationalAngle::new(k, n)).collect::<Vec<_>>();
    let expected = [
        (CaseName::JKTVI, kpi(3, &[1, 2, 3, 4, 5, 6])),
        (CaseName::JKTV, kpi(2, &[1, 2, 3])),
        (CaseName::JKTIVa, kpi(2, &[1, 2, 3, 4])),
        (CaseName::JKTIVb, kpi(6, &(1..=12).collect::<Vec<_>>())),
        (CaseName::JKTII, kpi(12, &[3, 4, 9, 12, 15, 20, 21])),
        (CaseName::JKTI, kpi(5, &(1..=10).collect::<Vec<_>>())),
    ];
    let bad: Vec<&str> = expected
        .iter()
        .filter(|(name, want)| case_spec(*name).directions() != *want)
        .map(|(name, _)| name.as_str())
        .collect();
    Outcome {
        passed: bad.is_empty(),
        detail: if bad.is_empty() { "exact rational angles".into() } else { format!("mismatch in {bad:?}") },
    }
}

fn invariant_theory() -> Outcome {
    let six = torus_weights(&case_spec(CaseName::JKTVI));
    let six_gens: Vec<String> = invariant_monomials(&six, 3).iter().map(|m| m.to_string()).collect();
    let six_ok = six_gens == ["x3*x6", "x2*x5", "x1*x4", "x2*x4*x6", "x1*x3*x5"];
    let twelve = invariant_monomials(&torus_weights(&case_spec(CaseName::JKTIVb)), 3);
    let twelve_ok = twelve.len() == 28
        && twelve.iter().all(|m| {
            let base: Vec<usize> = m.factors().iter().map(|(v, _)| (v.x_index().unwrap() - 1) % 6 + 1).collect();
            let mut b = base.clone();
            b.sort();
            [vec![1, 4], vec![2, 5], vec![3, 6], vec![1, 3, 5], vec![2, 4, 6]].contains(&b)
        });
    let mut taut_ok = true;
    let mut conj_ok = true;
    for name in CaseName::ALL {
        let r = derive_case(name).unwrap();
        if let Some(rel) = &r.spec.tautological_relation {
            taut_ok &= tautological_check(&r.spec.generator_defs, rel);
        }
        conj_ok &= conjugation_invariance(&r.spec, &r.invariant_system.equations).unwrap();
    }
    Outcome {
        passed: six_ok && twelve_ok && taut_ok && conj_ok,
        detail: format!(
            "6-var {six_ok}, 12-var ({} gens) {twelve_ok}, relations {taut_ok}, torus {conj_ok}",
            twelve.len()
        ),
    }
}

fn oracle() -> Outcome {
    let t = Instant::now();
    let mut worst: f64 = 0.0;
    let mut passed = true;
    for name in CaseName::ALL {
        let r = derive_case(name).unwrap();
        let v = oracle_verify(&r, ORACLE_TRIALS, ORACLE_SEED).unwrap();
        worst = worst.max(v.max_residual).max(v.max_closure_residual);
        passed &= v.max_residual < ORACLE_TOL && v.max_closure_residual < ORACLE_TOL;
    }
    let dt = t.elapsed();
    Outcome {
        passed: passed && dt < ORACLE_BUDGET,
        detail: format!(
            "{ORACLE_TRIALS} trials/case seed {ORACLE_SEED}, max residual {worst:.1e} (tol {ORACLE_TOL:.0e}), {dt:.2?} (budget {ORACLE_BUDGET:?})"
        ),
    }
}

fn runner_config(cases: u32) -> Config {
    Config {
        failure_persistence: None,
        ..Config::with_cases(cases)
    }
}

fn property_suites() -> Outcome {
    let mut ring = TestRunner::new(runner_config(RING_CASES));
    let ring_ok = ring
        .run(&(common::laurent(4), common::laurent(4), common::laurent(4)), |(a, b, c)| {
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a + &b, &b + &a);
            Ok(())
        })
        .is_ok();
    let mut solve = TestRunner::new(runner_config(SOLVE_CASES));
    let solve_ok = solve
        .run(&(common::unit_monomial(), common::laurent(4)), |(lead, rest)| {
            let v = var("x3");
            let eq = &(&lead * &LaurentPoly::var(v)) + &rest;
            let sol = eq.solve_linear(v).unwrap();
            prop_assert!(eq.substitute(&Bindings::from([(v, sol)])).unwrap().is_zero());
            Ok(())
        })
        .is_ok();
    let mut det_ok = true;
    let mut unipotent_ok = true;
    for name in CaseName::ALL {
        let spec = case_spec(name);
        det_ok &= derive_case(name).unwrap().monodromy.det().is_one();
        det_ok &= case_formal_monodromy(&spec).unwrap().det().is_one();
        for s in case_stokes_matrices(&spec).unwrap() {
            unipotent_ok &= s.det().is_one() && is_nilpotent_step(&s);
        }
    }
    Outcome {
        passed: ring_ok && solve_ok && det_ok && unipotent_ok,
        detail: format!(
            "ring axioms {ring_ok} ({RING_CASES}), det 1 {det_ok}, unipotent {unipotent_ok}, solve_linear {solve_ok} ({SOLVE_CASES})"
        ),
    }
}

fn parameter_remark() -> Outcome {
    let r = derive_case(CaseName::JKTII).unwrap();
    let flipped = r.cubic.to_poly().substitute(&Bindings::from([(var("alpha"), poly("alpha^-1"))])).unwrap();
    let ok = flipped == poly("X*Y*Z - X - alpha*Y - Z + 1 + alpha");
    Outcome {
        passed: ok,
        detail: "alpha -> alpha^-1, tol 0".into(),
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("exact printed cubics", exact_cubics),
        ("cubic shapes", shapes),
        ("intermediate formulas", intermediate_formulas),
        ("direction tables", direction_tables),
        ("invariant theory", invariant_theory),
        ("numeric oracle", oracle),
        ("property suites", property_suites),
        ("parameter remark", parameter_remark),
    ];
    let mut failed = 0;
    for (k, (label, run)) in criteria.iter().enumerate() {
        let o = run();
        let mark = if o.passed { "PASS" } else { "FAIL" };
        println!("{mark} {}. {label}: {}", k + 1, o.detail);
        failed += usize::from(!o.passed);
    }
    println!("acceptance: {}/{} passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
