use std::fmt;
use std::ops::Mul;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Result;
use crate::poly::{Bindings, LaurentPoly};

/// 3×3 matrix over `LaurentPoly`. Indices are 0-based internally; the
/// `entry`/`set` accessors take the 1-based `(row, col)` of the printed
/// matrices.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct SymMat3 {
    rows: [[LaurentPoly; 3]; 3],
}

impl SymMat3 {
    pub fn from_fn<F: FnMut(usize, usize) -> LaurentPoly>(mut f: F) -> Self {
        SymMat3 {
            rows: std::array::from_fn(|i| std::array::from_fn(|j| f(i, j))),
        }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn identity() -> Self {
        Self::from_fn(|i, j| if i == j { LaurentPoly::one() } else { LaurentPoly::zero() })
    }

    pub fn diag(d: [LaurentPoly; 3]) -> Self {
        let [a, b, c] = d;
        let mut m = Self::zero();
        m.rows[0][0] = a;
        m.rows[1][1] = b;
        m.rows[2][2] = c;
        m
    }

    /// Parses nine grammar strings in row-major order.
    pub fn parse(entries: [&str; 9]) -> Result<Self> {
        let mut out = Self::zero();
        for (k, text) in entries.iter().enumerate() {
            out.rows[k / 3][k % 3] = text.parse()?;
        }
        Ok(out)
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.rows[row - 1][col - 1]
    }

    pub fn set(&mut self, row: usize, col: usize, value: LaurentPoly) {
        self.rows[row - 1][col - 1] = value;
    }

    pub fn rows(&self) -> &[[LaurentPoly; 3]; 3] {
        &self.rows
    }

    pub fn trace(&self) -> LaurentPoly {
        &(&self.rows[0][0] + &self.rows[1][1]) + &self.rows[2][2]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(|i, j| self.rows[j][i].clone())
    }

    pub fn det(&self) -> LaurentPoly {
        let m = &self.rows;
        let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
        let t0 = &m[0][0] * &minor(1, 2, 2, 1);
        let t1 = &m[0][1] * &minor(0, 2, 2, 0);
        let t2 = &m[0][2] * &minor(0, 1, 1, 0);
        &(&t0 - &t1) + &t2
    }

    pub fn adjugate(&self) -> Self {
        let m = &self.rows;
        Self::from_fn(|i, j| {
            // cofactor of (j, i)
            let r: Vec<usize> = (0..3).filter(|&k| k != j).collect();
            let c: Vec<usize> = (0..3).filter(|&k| k != i).collect();
            let minor = &(&m[r[0]][c[0]] * &m[r[1]][c[1]]) - &(&m[r[0]][c[1]] * &m[r[1]][c[0]]);
            if (i + j) % 2 == 0 {
                minor
            } else {
                -minor
            }
        })
    }

    /// Inverse via the adjugate; the determinant must be a unit.
    pub fn inverse(&self) -> Result<Self> {
        let inv_det = self.det().inverse()?;
        Ok(self.adjugate().scale(&inv_det))
    }

    pub fn scale(&self, s: &LaurentPoly) -> Self {
        self.map(|p| p * s)
    }

    pub fn map<F: FnMut(&LaurentPoly) -> LaurentPoly>(&self, mut f: F) -> Self {
        Self::from_fn(|i, j| f(&self.rows[i][j]))
    }

    pub fn try_map<F: FnMut(&LaurentPoly) -> Result<LaurentPoly>>(&self, mut f: F) -> Result<Self> {
        let mut out = Self::zero();
        for i in 0..3 {
            for j in 0..3 {
                out.rows[i][j] = f(&self.rows[i][j])?;
            }
        }
        Ok(out)
    }

    pub fn substitute(&self, bindings: &Bindings) -> Result<Self> {
        self.try_map(|p| p.substitute(bindings))
    }

    pub fn sub(&self, other: &SymMat3) -> Self {
        Self::from_fn(|i, j| &self.rows[i][j] - &other.rows[i][j])
    }

    /// `g · self · g⁻¹`.
    pub fn conjugate_by(&self, g: &SymMat3) -> Result<Self> {
        Ok(&(g * self) * &g.inverse()?)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity()
    }

    /// Number of nonzero entries.
    pub fn support(&self) -> usize {
        self.rows.iter().flatten().filter(|p| !p.is_zero()).count()
    }

    /// Product of a list given in application order: `[A, B, C]` ↦ `C·B·A`.
    pub fn ordered_product<'a, I>(factors: I) -> Self
    where
        I: IntoIterator<Item = &'a SymMat3>,
    {
        factors
            .into_iter()
            .fold(Self::identity(), |acc, f| f * &acc)
    }

    pub fn to_latex(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(LaurentPoly::to_latex).collect::<Vec<_>>().join(" & "))
            .collect();
        format!("\\begin{{pmatrix}} {} \\end{{pmatrix}}", rows.join(" \\\\ "))
    }

    pub fn to_strings(&self) -> [[String; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.rows[i][j].to_string()))
    }
}

impl Mul<&SymMat3> for &SymMat3 {
    type Output = SymMat3;
    fn mul(self, rhs: &SymMat3) -> SymMat3 {
        SymMat3::from_fn(|i, j| {
            let mut acc = LaurentPoly::zero();
            for k in 0..3 {
                if !self.rows[i][k].is_zero() && !rhs.rows[k][j].is_zero() {
                    acc += &(&self.rows[i][k] * &rhs.rows[k][j]);
                }
            }
            acc
        })
    }
}

impl Mul for SymMat3 {
    type Output = SymMat3;
    fn mul(self, rhs: SymMat3) -> SymMat3 {
        &self * &rhs
    }
}

impl fmt::Display for SymMat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_strings();
        let width = cells.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(1);
        for (k, row) in cells.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, cell) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{cell:>width$}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SymMat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.to_strings())
    }
}

impl Serialize for SymMat3 {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_strings().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for SymMat3 {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let rows = <[[String; 3]; 3]>::deserialize(deserializer)?;
        let mut out = SymMat3::zero();
        for (i, row) in rows.iter().enumerate() {
            for (j, text) in row.iter().enumerate() {
                out.rows[i][j] = text.parse().map_err(serde::de::Error::custom)?;
            }
        }
        Ok(out)
    }
}
