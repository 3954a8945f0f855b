use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

struct Entry {
    name: &'static str,
    unit: bool,
    latex: &'static str,
    compact: &'static str,
}

const fn e(name: &'static str, unit: bool, latex: &'static str, compact: &'static str) -> Entry {
    Entry {
        name,
        unit,
        latex,
        compact,
    }
}

// Registry order is the term order: earlier variables dominate lexicographic
// comparison of monomials.
static REGISTRY: [Entry; 33] = [
    e("x1", false, "x_{1}", "x1"),
    e("x2", false, "x_{2}", "x2"),
    e("x3", false, "x_{3}", "x3"),
    e("x4", false, "x_{4}", "x4"),
    e("x5", false, "x_{5}", "x5"),
    e("x6", false, "x_{6}", "x6"),
    e("x7", false, "x_{7}", "x7"),
    e("x8", false, "x_{8}", "x8"),
    e("x9", false, "x_{9}", "x9"),
    e("x10", false, "x_{10}", "x10"),
    e("x11", false, "x_{11}", "x11"),
    e("x12", false, "x_{12}", "x12"),
    e("U", false, "U", "U"),
    e("V", false, "V", "V"),
    e("W", false, "W", "W"),
    e("R", false, "R", "R"),
    e("T", false, "T", "T"),
    e("S", false, "S", "S"),
    e("X", false, "X", "X"),
    e("Y", false, "Y", "Y"),
    e("Z", false, "Z", "Z"),
    e("Xp", false, "X'", "X′"),
    e("Yp", false, "Y'", "Y′"),
    e("Zp", false, "Z'", "Z′"),
    e("alpha", true, "\\alpha", "α"),
    e("beta", true, "\\beta", "β"),
    e("gamma", true, "\\gamma", "γ"),
    e("r", true, "r", "r"),
    e("p", false, "p", "p"),
    e("q", false, "q", "q"),
    e("e", true, "\\varepsilon", "ε"),
    e("lambda", true, "\\lambda", "λ"),
    e("mu", true, "\\mu", "μ"),
];

/// A symbol from the closed variable registry.
///
/// Ordering follows the registry, which is also the lexicographic term order
/// used for canonical printing.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Var(u8);

impl Var {
    pub const COUNT: usize = REGISTRY.len();

    pub fn new(name: &str) -> Result<Self> {
        REGISTRY
            .iter()
            .position(|entry| entry.name == name)
            .map(|i| Var(i as u8))
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    /// Stokes coefficient `x{index}`, `1 <= index <= 12`.
    pub fn x(index: usize) -> Self {
        assert!((1..=12).contains(&index), "no Stokes variable x{index}");
        Var((index - 1) as u8)
    }

    /// Index `i` of a Stokes coefficient `x{i}`.
    pub fn x_index(self) -> Option<usize> {
        (self.0 < 12).then_some(self.0 as usize + 1)
    }

    pub fn is_stokes(self) -> bool {
        self.0 < 12
    }

    pub fn name(self) -> &'static str {
        REGISTRY[self.0 as usize].name
    }

    /// Unit variables are invertible and may carry negative exponents.
    pub fn is_unit(self) -> bool {
        REGISTRY[self.0 as usize].unit
    }

    /// Parameters are the symbols a final cubic may carry in its coefficients.
    pub fn is_parameter(self) -> bool {
        self.is_unit() || matches!(self.name(), "p" | "q")
    }

    pub fn latex(self) -> &'static str {
        REGISTRY[self.0 as usize].latex
    }

    pub fn compact(self) -> &'static str {
        REGISTRY[self.0 as usize].compact
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn all() -> impl Iterator<Item = Var> {
        (0..REGISTRY.len()).map(|i| Var(i as u8))
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Var {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Var::new(s)
    }
}

impl Serialize for Var {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for Var {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let name = String::deserialize(deserializer)?;
        Var::new(&name).map_err(serde::de::Error::custom)
    }
}

/// Shorthand for registry lookups of names that are known to exist.
pub fn var(name: &str) -> Var {
    Var::new(name).unwrap_or_else(|_| panic!("`{name}` is not a registered variable"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_names_are_rejected() {
        assert!(matches!(Var::new("x13"), Err(Error::UnknownVariable(_))));
        assert!(matches!(Var::new("delta"), Err(Error::UnknownVariable(_))));
    }

    #[test]
    fn exactly_the_listed_symbols_are_units() {
        let units: Vec<_> = Var::all().filter(|v| v.is_unit()).map(Var::name).collect();
        assert_eq!(units, ["alpha", "beta", "gamma", "r", "e", "lambda", "mu"]);
    }

    #[test]
    fn stokes_indices_round_trip() {
        for i in 1..=12 {
            assert_eq!(Var::x(i).x_index(), Some(i));
            assert_eq!(Var::x(i).name(), format!("x{i}"));
        }
        assert_eq!(var("U").x_index(), None);
    }
}
