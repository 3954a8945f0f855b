mod common;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use wcv_core::{evaluate_numeric, var, Bindings, LaurentPoly, Var};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms(a in laurent(4), b in laurent(4), c in laurent(4)) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &LaurentPoly::zero(), a.clone());
        prop_assert_eq!(&a * &LaurentPoly::one(), a.clone());
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn print_parse_round_trip(a in laurent(5)) {
        let back: LaurentPoly = a.to_string().parse().unwrap();
        prop_assert_eq!(back, a);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn solve_linear_round_trip(lead in unit_monomial(), rest in laurent(4)) {
        let v: Var = var("x3");
        let eq = &(&lead * &LaurentPoly::var(v)) + &rest;
        let sol = eq.solve_linear(v).unwrap();
        prop_assert!(!sol.contains(v));
        prop_assert!(eq.substitute(&Bindings::from([(v, sol.clone())])).unwrap().is_zero());
        prop_assert_eq!(&sol * &lead, -&rest);
    }

    #[test]
    fn evaluation_is_a_ring_homomorphism(a in laurent(3), b in laurent(3), at in assignment()) {
        let ea = evaluate_numeric(&a, &at).unwrap();
        let eb = evaluate_numeric(&b, &at).unwrap();
        let (ma, mb) = (magnitude(&a, &at), magnitude(&b, &at));
        let close = |x: Complex64, y: Complex64, scale: f64| (x - y).norm() <= 1e-12 * scale.max(1.0);
        prop_assert!(close(evaluate_numeric(&(&a + &b), &at).unwrap(), ea + eb, ma + mb));
        prop_assert!(close(evaluate_numeric(&(&a * &b), &at).unwrap(), ea * eb, ma * mb));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn matrix_product_is_associative(a in matrix(), b in matrix(), c in matrix()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!((&a * &b).det(), &a.det() * &b.det());
    }
}
