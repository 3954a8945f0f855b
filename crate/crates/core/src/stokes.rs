use std::collections::{BTreeMap, BTreeSet};

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::angle::{wrap, RationalAngle};
use crate::error::{Error, Result};
use crate::matrix::SymMat3;
use crate::model::{CaseSpec, EigenvaluePairSpec, FormalMonodromyKind, StokesEntryLayout};
use crate::poly::{poly, LaurentPoly};

/// Directions `φ ∈ (0, 2π]` where `arg(λ(u_i − u_j)) − (l/N)φ ≡ π/2 (mod 2π)`,
/// i.e. where `e^{q_i − q_j}` passes from growth to decay.
pub fn singular_directions(spec: &EigenvaluePairSpec) -> Vec<RationalAngle> {
    assert!(spec.level_l >= 1, "pole level must be positive");
    let ratio = Rational64::new(spec.ramification_n as i64, spec.level_l as i64);
    let period = ratio * 2;
    let base = wrap(ratio * (spec.arg_offset.multiple_of_pi() - Rational64::new(1, 2)), period);
    let two = Rational64::from_integer(2);
    let mut out = Vec::new();
    let mut phi = base;
    while phi <= two {
        out.push(RationalAngle::from_turns(phi));
        phi += period;
    }
    out
}

/// One row of the direction table: a direction and the roots supported there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectionRow {
    pub direction: RationalAngle,
    /// 1-based matrix positions `(i+1, j+1)` of the roots `q_i − q_j`.
    pub roots: Vec<(usize, usize)>,
}

pub fn direction_table(spec: &CaseSpec) -> Vec<DirectionRow> {
    let mut table: BTreeMap<RationalAngle, BTreeSet<(usize, usize)>> = BTreeMap::new();
    for pair in &spec.pair_specs {
        for d in singular_directions(pair) {
            table.entry(d).or_default().insert(pair.position());
        }
    }
    table
        .into_iter()
        .map(|(direction, roots)| DirectionRow {
            direction,
            roots: roots.into_iter().collect(),
        })
        .collect()
}

/// Compares the computed direction table with the schedule: same directions,
/// and each layout carries exactly the roots supported at its direction.
pub fn match_schedule(spec: &CaseSpec) -> std::result::Result<(), String> {
    let table = direction_table(spec);
    let computed: Vec<_> = table.iter().map(|r| r.direction).collect();
    let scheduled = spec.directions();
    if computed != scheduled {
        return Err(format!("computed directions {computed:?}, schedule has {scheduled:?}"));
    }
    for (row, layout) in table.iter().zip(&spec.schedule) {
        let mut placed: Vec<_> = layout.entries.iter().map(|e| (e.row, e.col)).collect();
        placed.sort();
        if placed != row.roots {
            return Err(format!(
                "at {} the roots are {:?} but the layout places {:?}",
                row.direction, row.roots, placed
            ));
        }
    }
    Ok(())
}

/// For every direction `φ` with roots `R`, `φ + π` is a direction carrying
/// `R` or the opposite roots `−R`.
pub fn opposite_pairing(spec: &CaseSpec) -> bool {
    let table = direction_table(spec);
    let lookup: BTreeMap<_, _> = table.iter().map(|r| (r.direction, &r.roots)).collect();
    table.iter().all(|row| {
        let Some(other) = lookup.get(&(row.direction + RationalAngle::PI)) else {
            return false;
        };
        let mut flipped: Vec<_> = row.roots.iter().map(|&(i, j)| (j, i)).collect();
        flipped.sort();
        **other == row.roots || **other == flipped
    })
}

/// `I` plus the scheduled entries.
pub fn stokes_matrix(layout: &StokesEntryLayout) -> Result<SymMat3> {
    let mut m = SymMat3::identity();
    for e in &layout.entries {
        if e.row == e.col {
            return Err(Error::DiagonalEntry {
                row: e.row,
                col: e.col,
                var: e.var.name().to_string(),
            });
        }
        m.set(e.row, e.col, LaurentPoly::var(e.var));
    }
    Ok(m)
}

pub fn formal_monodromy(kind: FormalMonodromyKind) -> SymMat3 {
    let texts = match kind {
        FormalMonodromyKind::H1 => ["alpha", "0", "0", "0", "beta", "0", "0", "0", "gamma"],
        FormalMonodromyKind::H2 => ["0", "-alpha^-1", "0", "1", "0", "0", "0", "0", "alpha"],
        FormalMonodromyKind::H3 => ["0", "0", "1", "1", "0", "0", "0", "1", "0"],
    };
    SymMat3::parse(texts).expect("static matrix")
}

/// The formal monodromy of a case with its unit relation applied.
pub fn case_formal_monodromy(spec: &CaseSpec) -> Result<SymMat3> {
    formal_monodromy(spec.formal_monodromy_kind).substitute(&spec.unit_relation)
}

pub fn case_stokes_matrices(spec: &CaseSpec) -> Result<Vec<SymMat3>> {
    spec.schedule.iter().map(stokes_matrix).collect()
}

/// `(s − I)²` has fewer nonzero entries than `s − I`, or vanishes.
pub fn is_nilpotent_step(s: &SymMat3) -> bool {
    let n = s.sub(&SymMat3::identity());
    let sq = &n * &n;
    sq.support() == 0 || sq.support() < n.support()
}

/// Torus acting by conjugation: `diag(λ, μ, 1)`, `diag(λ, λ, λ⁻²)` or trivial.
pub fn torus_matrix(spec: &CaseSpec) -> SymMat3 {
    let d = match spec.twist.torus_dim() {
        2 => ["lambda", "mu", "1"],
        1 => ["lambda", "lambda", "lambda^-2"],
        _ => ["1", "1", "1"],
    };
    SymMat3::diag(d.map(poly))
}
