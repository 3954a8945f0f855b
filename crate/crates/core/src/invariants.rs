use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::SymMat3;
use crate::model::{CaseSpec, TwistClass};
use crate::poly::{Bindings, LaurentPoly, Monomial, Var};
use crate::stokes;

pub type WeightVector = Vec<i32>;

/// Character of the torus on basis vector `i` (1-based).
fn basis_character(twist: TwistClass, i: usize) -> WeightVector {
    match twist {
        TwistClass::Untwisted => match i {
            1 => vec![1, 0],
            2 => vec![0, 1],
            _ => vec![0, 0],
        },
        TwistClass::MinimallyTwisted => vec![if i == 3 { -2 } else { 1 }],
        TwistClass::MaximallyTwisted => vec![],
    }
}

/// Weight of every Stokes variable under conjugation by the case torus: the
/// entry at `(i, j)` picks up `t_i / t_j`.
pub fn torus_weights(spec: &CaseSpec) -> BTreeMap<Var, WeightVector> {
    spec.schedule
        .iter()
        .flat_map(|l| &l.entries)
        .map(|e| {
            let a = basis_character(spec.twist, e.row);
            let b = basis_character(spec.twist, e.col);
            (e.var, a.iter().zip(&b).map(|(x, y)| x - y).collect())
        })
        .collect()
}

fn weight_of(m: &Monomial, weights: &BTreeMap<Var, WeightVector>) -> Option<WeightVector> {
    let dim = weights.values().next().map_or(0, Vec::len);
    let mut acc = vec![0; dim];
    for &(v, e) in m.factors() {
        let w = weights.get(&v)?;
        for (a, x) in acc.iter_mut().zip(w) {
            *a += e * x;
        }
    }
    Some(acc)
}

pub fn is_invariant(m: &Monomial, weights: &BTreeMap<Var, WeightVector>) -> bool {
    weight_of(m, weights).is_some_and(|w| w.iter().all(|&x| x == 0))
}

/// Zero-weight monomials of degree `1..=degree_bound` that are minimal under
/// divisibility, in ascending degree then term order.
pub fn invariant_monomials(weights: &BTreeMap<Var, WeightVector>, degree_bound: u32) -> Vec<Monomial> {
    let vars: Vec<Var> = weights.keys().copied().collect();
    let dim = weights.values().next().map_or(0, Vec::len);
    let mut found: Vec<Monomial> = Vec::new();
    for degree in 1..=degree_bound {
        let mut layer = Vec::new();
        let mut stack = Vec::new();
        enumerate(&vars, weights, 0, degree, &mut vec![0; dim], &mut stack, &mut layer);
        layer.retain(|m: &Monomial| !found.iter().any(|g| m.divide(g).is_some()));
        layer.sort();
        found.extend(layer);
    }
    found
}

fn enumerate(
    vars: &[Var],
    weights: &BTreeMap<Var, WeightVector>,
    start: usize,
    remaining: u32,
    acc: &mut Vec<i32>,
    stack: &mut Vec<Var>,
    out: &mut Vec<Monomial>,
) {
    if remaining == 0 {
        if acc.iter().all(|&x| x == 0) {
            out.push(Monomial::from_pairs(stack.iter().map(|&v| (v, 1))).expect("nonnegative"));
        }
        return;
    }
    for k in start..vars.len() {
        let w = &weights[&vars[k]];
        for (a, x) in acc.iter_mut().zip(w) {
            *a += x;
        }
        stack.push(vars[k]);
        enumerate(vars, weights, k, remaining - 1, acc, stack, out);
        stack.pop();
        for (a, x) in acc.iter_mut().zip(w) {
            *a -= x;
        }
    }
}

/// All ways of writing `target` as a product of generators, as ascending
/// index sequences.
fn factorizations(target: &Monomial, gens: &[Monomial], start: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    if target.is_one() {
        out.push(prefix.clone());
        return;
    }
    for (k, g) in gens.iter().enumerate().skip(start) {
        if let Some(rest) = target.divide(g) {
            prefix.push(k);
            factorizations(&rest, gens, k, prefix, out);
            prefix.pop();
        }
    }
}

/// Rewrites the Stokes-variable part of every term as a product of
/// generators. Among several factorizations the shortest wins, ties broken
/// lexicographically in the order the generators are listed.
pub fn rewrite_in_invariants(eq: &LaurentPoly, defs: &BTreeMap<Var, Monomial>) -> Result<LaurentPoly> {
    let names: Vec<Var> = defs.keys().copied().collect();
    let gens: Vec<Monomial> = defs.values().cloned().collect();
    let mut out = LaurentPoly::zero();
    for (m, c) in eq.terms() {
        let (stokes_part, rest) = m.split(Var::is_stokes);
        let mut all = Vec::new();
        factorizations(&stokes_part, &gens, 0, &mut Vec::new(), &mut all);
        let best = all
            .into_iter()
            .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
            .ok_or_else(|| Error::NotInvariant {
                monomial: stokes_part.to_string(),
            })?;
        let product = Monomial::from_pairs(best.iter().map(|&k| (names[k], 1)))?;
        out += &LaurentPoly::term(c.clone(), product.mul(&rest));
    }
    Ok(out)
}

pub fn definition_bindings(defs: &BTreeMap<Var, Monomial>) -> Bindings {
    defs.iter()
        .map(|(g, m)| (*g, LaurentPoly::monomial(m.clone())))
        .collect()
}

/// Whether `relation` vanishes after substituting the generator definitions.
pub fn tautological_check(defs: &BTreeMap<Var, Monomial>, relation: &LaurentPoly) -> bool {
    relation
        .substitute(&definition_bindings(defs))
        .is_ok_and(|p| p.is_zero())
}

/// `x ↦ (t_i/t_j)·x` for each Stokes variable at `(i, j)`.
pub fn scaling_bindings(spec: &CaseSpec) -> Result<Bindings> {
    let d = stokes::torus_matrix(spec);
    let mut out = Bindings::new();
    for e in spec.schedule.iter().flat_map(|l| &l.entries) {
        let scale = d.entry(e.row, e.row) * &d.entry(e.col, e.col).inverse()?;
        out.insert(e.var, &scale * &LaurentPoly::var(e.var));
    }
    Ok(out)
}

/// Checks that conjugating every Stokes matrix by the torus is the same as
/// rescaling its entries, that the formal monodromy commutes with the torus,
/// and that each equation (in invariants or Stokes variables) is unchanged by
/// the rescaling.
pub fn conjugation_invariance(spec: &CaseSpec, equations: &[LaurentPoly]) -> Result<bool> {
    let d = stokes::torus_matrix(spec);
    let scale = scaling_bindings(spec)?;
    for s in stokes::case_stokes_matrices(spec)? {
        if s.conjugate_by(&d)? != s.substitute(&scale)? {
            return Ok(false);
        }
    }
    let h = stokes::case_formal_monodromy(spec)?;
    if h.conjugate_by(&d)? != h {
        return Ok(false);
    }
    let defs = definition_bindings(&spec.generator_defs);
    for eq in equations {
        let expanded = eq.substitute(&defs)?;
        if expanded.substitute(&scale)? != expanded {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Conjugates a whole monodromy matrix by the torus.
pub fn conjugate_by_torus(spec: &CaseSpec, m: &SymMat3) -> Result<SymMat3> {
    m.conjugate_by(&stokes::torus_matrix(spec))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{case_spec, CaseName};
    use crate::poly::{poly, var};

    fn defs(name: CaseName) -> BTreeMap<Var, Monomial> {
        case_spec(name).generator_defs
    }

    fn strings(ms: &[Monomial]) -> Vec<String> {
        ms.iter().map(Monomial::to_string).collect()
    }

    #[test]
    fn untwisted_weights() {
        let w = torus_weights(&case_spec(CaseName::JKTVI));
        assert_eq!(w[&Var::x(1)], vec![1, -1]);
        assert_eq!(w[&Var::x(5)], vec![-1, 0]);
        assert_eq!(w[&Var::x(6)], vec![0, -1]);
    }

    #[test]
    fn twisted_weights() {
        let v = torus_weights(&case_spec(CaseName::JKTV));
        assert_eq!(v[&Var::x(1)], vec![0]);
        assert_eq!(v[&Var::x(2)], vec![3]);
        let iva = torus_weights(&case_spec(CaseName::JKTIVa));
        assert!(iva.values().all(Vec::is_empty));
        assert_eq!(strings(&invariant_monomials(&iva, 1)), ["x4", "x3", "x2", "x1"]);
    }

    #[test]
    fn untwisted_generators() {
        let w = torus_weights(&case_spec(CaseName::JKTVI));
        assert_eq!(
            strings(&invariant_monomials(&w, 3)),
            ["x3*x6", "x2*x5", "x1*x4", "x2*x4*x6", "x1*x3*x5"]
        );
        assert_eq!(strings(&invariant_monomials(&w, 2)), ["x3*x6", "x2*x5", "x1*x4"]);
    }

    #[test]
    fn shortest_factorization_wins() {
        let d = defs(CaseName::JKTVI);
        assert_eq!(rewrite_in_invariants(&poly("x1*x4"), &d).unwrap(), poly("U"));
        assert_eq!(
            rewrite_in_invariants(&poly("x3*x6 + x2*x4*x6 + x2*x5"), &d).unwrap(),
            poly("W + T + V")
        );
        assert_eq!(
            rewrite_in_invariants(&poly("x1*x2*x3*x4*x5*x6"), &d).unwrap(),
            poly("R*T")
        );
        assert_eq!(
            rewrite_in_invariants(&poly("x2*x3*x5*x6"), &defs(CaseName::JKTV)).unwrap(),
            poly("U*V")
        );
        assert!(matches!(
            rewrite_in_invariants(&poly("x1*x2"), &d),
            Err(Error::NotInvariant { .. })
        ));
    }

    #[test]
    fn parameters_ride_along() {
        let d = defs(CaseName::JKTVI);
        assert_eq!(
            rewrite_in_invariants(&poly("2*beta*gamma*x1*x3*x5 - p"), &d).unwrap(),
            poly("2*beta*gamma*R - p")
        );
    }

    #[test]
    fn tautological_relations() {
        assert!(tautological_check(&defs(CaseName::JKTVI), &poly("U*V*W - R*T")));
        assert!(tautological_check(&defs(CaseName::JKTV), &poly("U*V - R*T")));
        assert!(!tautological_check(&defs(CaseName::JKTVI), &poly("U*V*W - R^2")));
    }

    #[test]
    fn scaling_matches_weights() {
        let spec = case_spec(CaseName::JKTVI);
        let b = scaling_bindings(&spec).unwrap();
        assert_eq!(b[&Var::x(1)], poly("lambda*mu^-1*x1"));
        assert_eq!(b[&var("x6")], poly("mu^-1*x6"));
    }
}
