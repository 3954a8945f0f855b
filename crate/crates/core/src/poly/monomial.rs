use std::cmp::Ordering;
use std::fmt;

use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::poly::laurent::LaurentPoly;
use crate::poly::var::Var;

/// A product of registry variables with integer exponents.
///
/// Stored as a list of `(variable, exponent)` pairs sorted by variable with no
/// zero exponents, so structural equality is monomial equality. Only unit
/// variables may carry negative exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    factors: Vec<(Var, i32)>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    pub fn var(v: Var) -> Self {
        Monomial {
            factors: vec![(v, 1)],
        }
    }

    /// Builds a monomial from arbitrary `(variable, exponent)` pairs, merging
    /// repeated variables and rejecting negative powers of non-unit variables.
    pub fn from_pairs<I: IntoIterator<Item = (Var, i32)>>(pairs: I) -> Result<Self> {
        let mut factors: Vec<(Var, i32)> = pairs.into_iter().collect();
        factors.sort_by_key(|&(v, _)| v);
        let mut merged: Vec<(Var, i32)> = Vec::with_capacity(factors.len());
        for (v, e) in factors {
            match merged.last_mut() {
                Some((last, acc)) if *last == v => *acc += e,
                _ => merged.push((v, e)),
            }
        }
        merged.retain(|&(_, e)| e != 0);
        if let Some(&(v, _)) = merged.iter().find(|&&(v, e)| e < 0 && !v.is_unit()) {
            return Err(Error::SubstitutionDomain {
                var: v.name().to_string(),
            });
        }
        Ok(Monomial { factors: merged })
    }

    pub fn factors(&self) -> &[(Var, i32)] {
        &self.factors
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, v: Var) -> i32 {
        self.factors
            .binary_search_by_key(&v, |&(w, _)| w)
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn contains(&self, v: Var) -> bool {
        self.exponent(v) != 0
    }

    /// Sum of exponents over the variables accepted by `filter`.
    pub fn degree_in<F: Fn(Var) -> bool>(&self, filter: F) -> i32 {
        self.factors
            .iter()
            .filter(|(v, _)| filter(*v))
            .map(|&(_, e)| e)
            .sum()
    }

    pub fn total_degree(&self) -> i32 {
        self.degree_in(|_| true)
    }

    /// True when every variable is a unit, i.e. the monomial is invertible.
    pub fn is_unit(&self) -> bool {
        self.factors.iter().all(|(v, _)| v.is_unit())
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let (a, b) = (&self.factors, &other.factors);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let e = a[i].1 + b[j].1;
                    if e != 0 {
                        out.push((a[i].0, e));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Monomial { factors: out }
    }

    pub fn pow(&self, k: i32) -> Result<Monomial> {
        if k < 0 && !self.is_unit() {
            return Err(Error::NotUnit {
                expr: self.to_string(),
            });
        }
        Ok(Monomial {
            factors: if k == 0 {
                Vec::new()
            } else {
                self.factors.iter().map(|&(v, e)| (v, e * k)).collect()
            },
        })
    }

    /// Inverse of a unit monomial.
    pub fn inverse(&self) -> Result<Monomial> {
        self.pow(-1)
    }

    /// `self / other` when `other` divides `self` with nonnegative quotient
    /// exponents on every non-unit variable.
    pub fn divide(&self, other: &Monomial) -> Option<Monomial> {
        let neg = Monomial {
            factors: other.factors.iter().map(|&(v, e)| (v, -e)).collect(),
        };
        let q = self.mul(&neg);
        q.factors
            .iter()
            .all(|&(v, e)| e >= 0 || v.is_unit())
            .then_some(q)
    }

    /// Splits off the factors accepted by `keep`; returns `(kept, rest)`.
    pub fn split<F: Fn(Var) -> bool>(&self, keep: F) -> (Monomial, Monomial) {
        let (a, b): (Vec<_>, Vec<_>) = self.factors.iter().partition(|(v, _)| keep(*v));
        (Monomial { factors: a }, Monomial { factors: b })
    }

    pub(crate) fn without(&self, v: Var) -> Monomial {
        Monomial {
            factors: self.factors.iter().copied().filter(|&(w, _)| w != v).collect(),
        }
    }
}

/// Lexicographic comparison of exponent vectors in registry order.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let (a, b) = (&self.factors, &other.factors);
        let (mut i, mut j) = (0, 0);
        loop {
            match (a.get(i), b.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(&(_, ea)), None) => return ea.cmp(&0),
                (None, Some(&(_, eb))) => return 0.cmp(&eb),
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(&vb) {
                    Ordering::Less => return ea.cmp(&0),
                    Ordering::Greater => return 0.cmp(&eb),
                    Ordering::Equal => {
                        if ea != eb {
                            return ea.cmp(&eb);
                        }
                        i += 1;
                        j += 1;
                    }
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return f.write_str("1");
        }
        for (k, &(v, e)) in self.factors.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if e == 1 {
                write!(f, "{v}")?;
            } else {
                write!(f, "{v}^{e}")?;
            }
        }
        Ok(())
    }
}

impl Serialize for Monomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Monomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        let p: LaurentPoly = text.parse().map_err(serde::de::Error::custom)?;
        let single = match p.terms().next() {
            Some((m, c)) if p.len() == 1 && c.is_one() => Some(m.clone()),
            _ => None,
        };
        single.ok_or_else(|| serde::de::Error::custom(format!("`{text}` is not a monomial")))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
