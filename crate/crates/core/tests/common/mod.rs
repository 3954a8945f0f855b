//! Strategies shared by the property suites and the acceptance harness.
#![allow(dead_code)]

use num_complex::Complex64;
use proptest::prelude::*;
use wcv_core::poly::laurent::rational;
use wcv_core::{evaluate_numeric, var, LaurentPoly, Monomial, NumericAssignment, SymMat3};

pub const VARS: [&str; 5] = ["x1", "x2", "p", "alpha", "beta"];

pub fn monomial() -> impl Strategy<Value = Monomial> {
    prop::collection::vec(-2i32..=3, VARS.len()).prop_map(|exps| {
        let pairs = VARS.iter().zip(exps).map(|(name, e)| {
            let v = var(name);
            (v, if v.is_unit() { e } else { e.abs() })
        });
        Monomial::from_pairs(pairs).unwrap()
    })
}

pub fn coeff() -> impl Strategy<Value = (i64, i64)> {
    (-9i64..=9, 1i64..=5)
}

pub fn laurent(max_terms: usize) -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((monomial(), coeff()), 0..=max_terms)
        .prop_map(|ts| LaurentPoly::from_terms(ts.into_iter().map(|(m, (n, d))| (m, rational(n, d)))))
}

pub fn unit_monomial() -> impl Strategy<Value = LaurentPoly> {
    ((1i64..=9, 1i64..=5, any::<bool>()), -2i32..=2, -2i32..=2).prop_map(|((n, d, neg), a, b)| {
        let m = Monomial::from_pairs([(var("alpha"), a), (var("beta"), b)]).unwrap();
        LaurentPoly::term(rational(if neg { -n } else { n }, d), m)
    })
}

pub fn complex_in_annulus() -> impl Strategy<Value = Complex64> {
    (0.5f64..=2.0, 0.0f64..std::f64::consts::TAU).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

pub fn assignment() -> impl Strategy<Value = NumericAssignment> {
    prop::collection::vec(complex_in_annulus(), VARS.len()).prop_map(|zs| {
        NumericAssignment::new(VARS.iter().map(|n| var(n)).zip(zs)).unwrap()
    })
}

/// Sum of absolute term values: the scale that bounds rounding error.
pub fn magnitude(p: &LaurentPoly, at: &NumericAssignment) -> f64 {
    let abs = NumericAssignment::new(at.values().iter().map(|(v, z)| (*v, Complex64::new(z.norm(), 0.0)))).unwrap();
    let p = p.map_coefficients(num_traits::Signed::abs);
    evaluate_numeric(&p, &abs).unwrap().re
}

pub fn matrix() -> impl Strategy<Value = SymMat3> {
    prop::collection::vec(laurent(2), 9).prop_map(|es| SymMat3::from_fn(|i, j| es[i * 3 + j].clone()))
}
