use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// An angle `t·π` with `t` rational, normalized into `(0, 2π]`.
///
/// The window is half-open at zero so that a full turn reads as `2π`, the way
/// direction lists are enumerated `k = 1, ..., n`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RationalAngle(Rational64);

impl RationalAngle {
    pub const PI: RationalAngle = RationalAngle(Rational64::new_raw(1, 1));
    pub const FULL_TURN: RationalAngle = RationalAngle(Rational64::new_raw(2, 1));

    /// `num/den · π`, wrapped into the window.
    pub fn new(num: i64, den: i64) -> Self {
        Self::from_turns(Rational64::new(num, den))
    }

    pub fn from_turns(multiple_of_pi: Rational64) -> Self {
        RationalAngle(wrap(multiple_of_pi, Rational64::from_integer(2)))
    }

    /// Coefficient of `π`, in `(0, 2]`.
    pub fn multiple_of_pi(self) -> Rational64 {
        self.0
    }

    pub fn radians(self) -> f64 {
        *self.0.numer() as f64 / *self.0.denom() as f64 * std::f64::consts::PI
    }

    pub fn denom(self) -> i64 {
        *self.0.denom()
    }

    /// Renders as `k*pi/n` for a given `n` (which must be a multiple of the
    /// reduced denominator).
    pub fn format_over(self, n: i64) -> String {
        assert_eq!(n % self.denom(), 0, "{n} is not a multiple of {}", self.denom());
        let k = *self.0.numer() * (n / self.denom());
        format!("{k}*pi/{n}")
    }

    /// Least common denominator of a set of angles.
    pub fn common_denominator<'a, I: IntoIterator<Item = &'a RationalAngle>>(angles: I) -> i64 {
        angles.into_iter().fold(1, |acc, a| acc.lcm(&a.denom()))
    }
}

/// Reduces `t` into `(0, period]`.
pub(crate) fn wrap(t: Rational64, period: Rational64) -> Rational64 {
    let k = (t / period).ceil() - Rational64::one();
    let r = t - k * period;
    debug_assert!(r > Rational64::zero() && r <= period);
    r
}

impl Add for RationalAngle {
    type Output = RationalAngle;
    fn add(self, rhs: Self) -> Self {
        Self::from_turns(self.0 + rhs.0)
    }
}

impl Sub for RationalAngle {
    type Output = RationalAngle;
    fn sub(self, rhs: Self) -> Self {
        Self::from_turns(self.0 - rhs.0)
    }
}

impl fmt::Display for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = (*self.0.numer(), *self.0.denom());
        match (n, d) {
            (1, 1) => f.write_str("pi"),
            (_, 1) => write!(f, "{n}*pi"),
            (1, _) => write!(f, "pi/{d}"),
            _ => write!(f, "{n}*pi/{d}"),
        }
    }
}

impl fmt::Debug for RationalAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for RationalAngle {
    type Err = Error;

    /// Accepts `pi`, `k*pi`, `pi/n` and `k*pi/n`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::parse(0, format!("`{s}` is not of the form k*pi/n"));
        let (head, den) = match s.split_once('/') {
            Some((h, d)) => (h, d.trim().parse::<i64>().map_err(|_| bad())?),
            None => (s, 1),
        };
        let num = match head.trim() {
            "pi" => 1,
            h => h
                .strip_suffix("*pi")
                .ok_or_else(bad)?
                .trim()
                .parse::<i64>()
                .map_err(|_| bad())?,
        };
        if den <= 0 {
            return Err(bad());
        }
        Ok(RationalAngle::new(num, den))
    }
}

impl Serialize for RationalAngle {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RationalAngle {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(deserializer)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}
