use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::monomial::Monomial;
use crate::poly::var::Var;

pub type Coeff = BigRational;

/// Simultaneous substitution map.
pub type Bindings = BTreeMap<Var, LaurentPoly>;

pub fn rational(num: i64, den: i64) -> Coeff {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact multivariate Laurent polynomial over the rationals.
///
/// Canonical: no zero coefficients are stored, so `==` is mathematical
/// equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Coeff>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Coeff::one())
    }

    pub fn constant(c: Coeff) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(Coeff::from_integer(BigInt::from(n)))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Coeff::one(), Monomial::var(v))
    }

    pub fn term(c: Coeff, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LaurentPoly { terms }
    }

    pub fn monomial(m: Monomial) -> Self {
        Self::term(Coeff::one(), m)
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, Coeff)>>(iter: I) -> Self {
        let mut p = LaurentPoly::zero();
        for (m, c) in iter {
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            Entry::Vacant(slot) => {
                slot.insert(c);
            }
            Entry::Occupied(mut slot) => {
                *slot.get_mut() += c;
                if slot.get().is_zero() {
                    slot.remove();
                }
            }
        }
    }

    /// Terms in ascending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Coeff)> + ExactSizeIterator {
        self.terms.iter()
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.as_constant().is_some_and(|c| c.is_one())
    }

    /// The value of a constant polynomial (zero included).
    pub fn as_constant(&self) -> Option<Coeff> {
        match self.terms.len() {
            0 => Some(Coeff::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn coefficient(&self, m: &Monomial) -> Coeff {
        self.terms.get(m).cloned().unwrap_or_else(Coeff::zero)
    }

    /// A single term whose monomial involves only unit variables.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.keys().all(Monomial::is_unit)
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_unit() {
            return Err(Error::NotUnit {
                expr: self.to_string(),
            });
        }
        let (m, c) = self.terms.iter().next().expect("unit has one term");
        Ok(Self::term(c.recip(), m.inverse()?))
    }

    pub fn pow(&self, k: i32) -> Result<Self> {
        if k < 0 {
            return self.inverse()?.pow(-k);
        }
        let mut acc = LaurentPoly::one();
        let mut base = self.clone();
        let mut k = k as u32;
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn scale(&self, c: &Coeff) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, d)| (m.clone(), d * c)).collect(),
        }
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.terms
            .keys()
            .flat_map(|m| m.factors().iter().map(|&(v, _)| v))
            .collect()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.contains(v))
    }

    /// Smallest and largest exponent of `v` across the terms.
    pub fn degree_range(&self, v: Var) -> Option<(i32, i32)> {
        let mut exps = self.terms.keys().map(|m| m.exponent(v));
        let first = exps.next()?;
        Some(exps.fold((first, first), |(lo, hi), e| (lo.min(e), hi.max(e))))
    }

    pub fn degree(&self, v: Var) -> i32 {
        self.degree_range(v).map_or(0, |(_, hi)| hi)
    }

    /// Largest total degree over the variables accepted by `filter`.
    pub fn max_degree_in<F: Fn(Var) -> bool + Copy>(&self, filter: F) -> i32 {
        self.terms
            .keys()
            .map(|m| m.degree_in(filter))
            .max()
            .unwrap_or(0)
    }

    /// Coefficient of `v^k`, as a polynomial free of `v`.
    pub fn coefficient_of(&self, v: Var, k: i32) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == k)
                .map(|(m, c)| (m.without(v), c.clone()))
                .collect(),
        }
    }

    /// Terms whose degree over the filtered variables equals `degree`.
    pub fn homogeneous_part<F: Fn(Var) -> bool + Copy>(&self, degree: i32, filter: F) -> Self {
        self.filter_terms(|m| m.degree_in(filter) == degree)
    }

    pub fn filter_terms<F: Fn(&Monomial) -> bool>(&self, keep: F) -> Self {
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| keep(m))
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Simultaneous substitution. Unbound variables pass through.
    ///
    /// A negative power of a bound variable needs a unit image; otherwise the
    /// result would leave the Laurent ring and `SubstitutionDomain` is raised.
    pub fn substitute(&self, bindings: &Bindings) -> Result<Self> {
        if bindings.is_empty() {
            return Ok(self.clone());
        }
        let mut powers: BTreeMap<(Var, i32), LaurentPoly> = BTreeMap::new();
        let mut out = LaurentPoly::zero();
        for (m, c) in &self.terms {
            let mut free = Vec::new();
            let mut acc = LaurentPoly::one();
            for &(v, e) in m.factors() {
                match bindings.get(&v) {
                    None => free.push((v, e)),
                    Some(image) => {
                        let factor = match powers.get(&(v, e)) {
                            Some(p) => p.clone(),
                            None => {
                                let p = image.pow(e).map_err(|_| Error::SubstitutionDomain {
                                    var: v.name().to_string(),
                                })?;
                                powers.insert((v, e), p.clone());
                                p
                            }
                        };
                        acc = &acc * &factor;
                    }
                }
            }
            let free = LaurentPoly::term(c.clone(), Monomial::from_pairs(free)?);
            out += &(&acc * &free);
        }
        Ok(out)
    }

    pub fn subs(&self, v: Var, image: &LaurentPoly) -> Result<Self> {
        self.substitute(&Bindings::from([(v, image.clone())]))
    }

    /// Solves `self = 0` for `v`, which must occur to degree exactly one with
    /// an invertible coefficient.
    pub fn solve_linear(&self, v: Var) -> Result<Self> {
        let (lo, hi) = self.degree_range(v).unwrap_or((0, 0));
        if lo < 0 || hi != 1 {
            let degree = if lo < 0 {
                format!("{lo}..{hi}")
            } else {
                hi.to_string()
            };
            return Err(Error::NotLinear {
                var: v.name().to_string(),
                degree,
            });
        }
        let lead = self.coefficient_of(v, 1);
        let rest = self.coefficient_of(v, 0);
        let inv = lead.inverse().map_err(|_| Error::NotInvertible {
            var: v.name().to_string(),
            coefficient: lead.to_string(),
        })?;
        Ok(-(&rest * &inv))
    }

    /// Divides by a unit, e.g. to strip an overall parameter factor.
    pub fn div_unit(&self, unit: &LaurentPoly) -> Result<Self> {
        Ok(self * &unit.inverse()?)
    }

    /// Replaces every coefficient by `f(coefficient)`; zero results are dropped.
    pub fn map_coefficients<F: Fn(&Coeff) -> Coeff>(&self, f: F) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| (m.clone(), f(c))))
    }

    /// Reduces exponents of a formal cube root of unity `e` into `{0, 1, 2}`.
    pub fn reduce_cube_root(&self, e: Var) -> Self {
        LaurentPoly::from_terms(self.terms.iter().map(|(m, c)| {
            let k = m.exponent(e).rem_euclid(3);
            let base = m.without(e);
            let reduced = if k == 0 {
                base
            } else {
                base.mul(&Monomial::from_pairs([(e, k)]).expect("unit"))
            };
            (reduced, c.clone())
        }))
    }

    /// Unicode rendering close to how the formulas are typeset by hand,
    /// e.g. `XYZ - X - α⁻¹Y - Z + 1 + α⁻¹`.
    pub fn to_compact_string(&self) -> String {
        render(self, &CompactStyle)
    }

    pub fn to_latex(&self) -> String {
        render(self, &LatexStyle)
    }
}

trait Style {
    fn factor(&self, v: Var, e: i32) -> String;
    fn join(&self, factors: &[String]) -> String;
    fn coefficient(&self, c: &Coeff) -> String;
    fn scaled(&self, coeff: &str, mono: &str) -> String;
}

struct GrammarStyle;
struct CompactStyle;
struct LatexStyle;

impl Style for GrammarStyle {
    fn factor(&self, v: Var, e: i32) -> String {
        if e == 1 {
            v.name().to_string()
        } else {
            format!("{}^{e}", v.name())
        }
    }
    fn join(&self, factors: &[String]) -> String {
        factors.join("*")
    }
    fn coefficient(&self, c: &Coeff) -> String {
        c.to_string()
    }
    fn scaled(&self, coeff: &str, mono: &str) -> String {
        format!("{coeff}*{mono}")
    }
}

fn superscript(e: i32) -> String {
    e.to_string()
        .chars()
        .map(|ch| match ch {
            '-' => '⁻',
            '0' => '⁰',
            '1' => '¹',
            '2' => '²',
            '3' => '³',
            '4' => '⁴',
            '5' => '⁵',
            '6' => '⁶',
            '7' => '⁷',
            '8' => '⁸',
            _ => '⁹',
        })
        .collect()
}

impl Style for CompactStyle {
    fn factor(&self, v: Var, e: i32) -> String {
        if e == 1 {
            v.compact().to_string()
        } else {
            format!("{}{}", v.compact(), superscript(e))
        }
    }
    fn join(&self, factors: &[String]) -> String {
        factors.concat()
    }
    fn coefficient(&self, c: &Coeff) -> String {
        c.to_string()
    }
    fn scaled(&self, coeff: &str, mono: &str) -> String {
        if coeff.contains('/') {
            format!("({coeff}){mono}")
        } else {
            format!("{coeff}{mono}")
        }
    }
}

impl Style for LatexStyle {
    fn factor(&self, v: Var, e: i32) -> String {
        if e == 1 {
            v.latex().to_string()
        } else {
            format!("{}^{{{e}}}", v.latex())
        }
    }
    fn join(&self, factors: &[String]) -> String {
        factors.join(" ")
    }
    fn coefficient(&self, c: &Coeff) -> String {
        if c.is_integer() {
            c.to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", c.numer(), c.denom())
        }
    }
    fn scaled(&self, coeff: &str, mono: &str) -> String {
        format!("{coeff} {mono}")
    }
}

fn render(p: &LaurentPoly, style: &dyn Style) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (k, (m, c)) in p.terms.iter().rev().enumerate() {
        let negative = c.is_negative();
        let mag = c.abs();
        let body = if m.is_one() {
            style.coefficient(&mag)
        } else {
            let factors: Vec<String> = m.factors().iter().map(|&(v, e)| style.factor(v, e)).collect();
            let mono = style.join(&factors);
            if mag.is_one() {
                mono
            } else {
                style.scaled(&style.coefficient(&mag), &mono)
            }
        };
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(&body);
    }
    out
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(self, &GrammarStyle))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for LaurentPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        crate::poly::parse::parse(s)
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl From<Var> for LaurentPoly {
    fn from(v: Var) -> Self {
        LaurentPoly::var(v)
    }
}

impl From<i64> for LaurentPoly {
    fn from(n: i64) -> Self {
        LaurentPoly::int(n)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), c.clone());
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (m, c) in &rhs.terms {
            self.add_term(m.clone(), -c.clone());
        }
    }
}

impl Add<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Mul<&LaurentPoly> for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&LaurentPoly> for LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: &LaurentPoly) -> LaurentPoly {
                (&self).$method(rhs)
            }
        }
        impl $trait<LaurentPoly> for &LaurentPoly {
            type Output = LaurentPoly;
            fn $method(self, rhs: LaurentPoly) -> LaurentPoly {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
