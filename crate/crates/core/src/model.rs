//! Static data for the six rank-three cases.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_rational::Rational64;
use serde::{Deserialize, Serialize};

use crate::angle::RationalAngle;
use crate::error::{Error, Result};
use crate::invariants;
use crate::poly::{poly, var, Bindings, LaurentPoly, Monomial, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CaseName {
    JKTVI,
    JKTV,
    JKTIVa,
    JKTIVb,
    JKTII,
    JKTI,
}

impl CaseName {
    pub const ALL: [CaseName; 6] = [
        CaseName::JKTVI,
        CaseName::JKTV,
        CaseName::JKTIVa,
        CaseName::JKTIVb,
        CaseName::JKTII,
        CaseName::JKTI,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseName::JKTVI => "JKTVI",
            CaseName::JKTV => "JKTV",
            CaseName::JKTIVa => "JKTIVa",
            CaseName::JKTIVb => "JKTIVb",
            CaseName::JKTII => "JKTII",
            CaseName::JKTI => "JKTI",
        }
    }

    pub fn schedule_len(self) -> usize {
        match self {
            CaseName::JKTVI => 6,
            CaseName::JKTV => 3,
            CaseName::JKTIVa => 4,
            CaseName::JKTIVb => 12,
            CaseName::JKTII => 7,
            CaseName::JKTI => 10,
        }
    }

    /// Cases with a single pole of order three close up to the identity.
    pub fn has_identity_closure(self) -> bool {
        matches!(self, CaseName::JKTIVb | CaseName::JKTII | CaseName::JKTI)
    }
}

impl fmt::Display for CaseName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CaseName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseName::ALL
            .into_iter()
            .find(|c| c.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownCase(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistClass {
    Untwisted,
    MinimallyTwisted,
    MaximallyTwisted,
}

impl TwistClass {
    pub fn ramification(self) -> u32 {
        match self {
            TwistClass::Untwisted => 1,
            TwistClass::MinimallyTwisted => 2,
            TwistClass::MaximallyTwisted => 3,
        }
    }

    /// Dimension of the exponential torus acting on the Stokes data.
    pub fn torus_dim(self) -> usize {
        match self {
            TwistClass::Untwisted => 2,
            TwistClass::MinimallyTwisted => 1,
            TwistClass::MaximallyTwisted => 0,
        }
    }
}

/// Leading coefficient of an eigenvalue branch, up to a common negative real
/// factor: a root of unity `e^{iπt}` or zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BranchUnit {
    Root(Rational64),
    Zero,
}

/// Exact argument of `u_i − u_j` for roots of unity or zero, as a multiple of π.
fn difference_arg(ui: BranchUnit, uj: BranchUnit) -> Rational64 {
    let half = Rational64::new(1, 2);
    match (ui, uj) {
        (BranchUnit::Root(a), BranchUnit::Zero) => a,
        (BranchUnit::Zero, BranchUnit::Root(b)) => b + 1,
        // e^{iπa} − e^{iπb} = 2i·sin(π(a−b)/2)·e^{iπ(a+b)/2}
        (BranchUnit::Root(a), BranchUnit::Root(b)) => {
            let flip = if a > b { Rational64::from_integer(0) } else { Rational64::from_integer(1) };
            (a + b) * half + half + flip
        }
        (BranchUnit::Zero, BranchUnit::Zero) => panic!("coincident branches"),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EigenvaluePairSpec {
    pub label: (usize, usize),
    pub level_l: u32,
    pub ramification_n: u32,
    pub arg_offset: RationalAngle,
}

impl EigenvaluePairSpec {
    /// Leading difference `λ(u_i − u_j)w^{-l/N}` with `λ < 0`.
    fn new(label: (usize, usize), level_l: u32, ramification_n: u32, ui: BranchUnit, uj: BranchUnit) -> Self {
        EigenvaluePairSpec {
            label,
            level_l,
            ramification_n,
            arg_offset: RationalAngle::from_turns(difference_arg(ui, uj) + 1),
        }
    }

    /// Matrix position (1-based) of the root.
    pub fn position(&self) -> (usize, usize) {
        (self.label.0 + 1, self.label.1 + 1)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StokesEntry {
    pub row: usize,
    pub col: usize,
    pub var: Var,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StokesEntryLayout {
    pub direction: RationalAngle,
    pub entries: Vec<StokesEntry>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FormalMonodromyKind {
    H1,
    H2,
    H3,
}

/// A matrix-entry equation `(L − R)[row, col] = 0` solved for `var`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryStep {
    pub row: usize,
    pub col: usize,
    pub var: Var,
}

/// A surviving entry equation, multiplied by `factor` (a unit).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualEntry {
    pub row: usize,
    pub col: usize,
    pub factor: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum ClosureCondition {
    /// `Tr M = trace`, `Tr M² = trace_square`.
    FixedClass { trace: Var, trace_square: Var },
    /// `S_split⋯S_1 = (H·S_m⋯S_{split+1})⁻¹`.
    Identity {
        split: usize,
        back_substitutions: Vec<EntryStep>,
        residuals: Vec<ResidualEntry>,
        dropped: (usize, usize),
        /// Variables the numeric oracle solves the residual system for.
        numeric_unknowns: Vec<Var>,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EliminationPlan {
    /// `(equation index, variable)` pairs solved in order.
    pub steps: Vec<(usize, Var)>,
    pub target: usize,
    /// Unit the eliminated equation is multiplied by.
    pub factor: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CovPlan {
    /// Substitutions applied one after another.
    pub stages: Vec<Bindings>,
    /// Unit the final polynomial is multiplied by.
    pub factor: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value")]
pub enum CoefficientSpec {
    Fixed(LaurentPoly),
    /// Present but left symbolic (`c1`…`c4`).
    Free(String),
    Absent,
}

/// Coefficients of `XYZ, X², Y², Z², X, Y, Z, 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedCubic {
    pub slots: [CoefficientSpec; 8],
}

pub const SLOT_MONOMIALS: [&str; 8] = ["X*Y*Z", "X^2", "Y^2", "Z^2", "X", "Y", "Z", "1"];
const SLOT_COMPACT: [&str; 8] = ["XYZ", "X²", "Y²", "Z²", "X", "Y", "Z", ""];

impl ExpectedCubic {
    fn build(slots: [Option<&str>; 8], fixed: &[usize]) -> Self {
        let mut free = 0;
        let slots = std::array::from_fn(|k| match slots[k] {
            None => CoefficientSpec::Absent,
            Some(text) if fixed.contains(&k) || k < 4 => CoefficientSpec::Fixed(poly(text)),
            Some(_) => {
                free += 1;
                CoefficientSpec::Free(format!("c{free}"))
            }
        });
        ExpectedCubic { slots }
    }

    fn fully_fixed(slots: [Option<&str>; 8]) -> Self {
        Self::build(slots, &[0, 1, 2, 3, 4, 5, 6, 7])
    }

    fn fixed_top(slots: [Option<&str>; 4]) -> Self {
        let mut all = [None; 8];
        all[..4].copy_from_slice(&slots);
        for slot in all.iter_mut().skip(4) {
            *slot = Some("1");
        }
        Self::build(all, &[])
    }

    pub fn is_fully_fixed(&self) -> bool {
        self.slots.iter().all(|s| !matches!(s, CoefficientSpec::Free(_)))
    }

    /// The polynomial when every slot is fixed.
    pub fn polynomial(&self) -> Option<LaurentPoly> {
        let mut acc = LaurentPoly::zero();
        for (slot, mono) in self.slots.iter().zip(SLOT_MONOMIALS) {
            match slot {
                CoefficientSpec::Fixed(c) => acc += &(c * &poly(mono)),
                CoefficientSpec::Free(_) => return None,
                CoefficientSpec::Absent => {}
            }
        }
        Some(acc)
    }

    /// Compact rendering with symbolic free coefficients, e.g.
    /// `XYZ + X² + Y² + c1X + c2Y + c3Z + c4`.
    pub fn shape_string(&self) -> String {
        let mut out = String::new();
        for (k, slot) in self.slots.iter().enumerate() {
            let term = match slot {
                CoefficientSpec::Absent => continue,
                CoefficientSpec::Free(name) => format!("{name}{}", SLOT_COMPACT[k]),
                CoefficientSpec::Fixed(c) => (c * &poly(SLOT_MONOMIALS[k])).to_compact_string(),
            };
            if out.is_empty() {
                out = term;
            } else if let Some(rest) = term.strip_prefix('-') {
                out = format!("{out} - {rest}");
            } else {
                out = format!("{out} + {term}");
            }
        }
        out
    }
}

/// An alternative normalization of the final cubic reached by a parameter
/// substitution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParameterRemark {
    pub substitution: Bindings,
    pub form: LaurentPoly,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseSpec {
    pub name: CaseName,
    pub twist: TwistClass,
    pub pair_specs: Vec<EigenvaluePairSpec>,
    pub schedule: Vec<StokesEntryLayout>,
    pub formal_monodromy_kind: FormalMonodromyKind,
    /// Relation among the formal-monodromy units, applied eagerly.
    pub unit_relation: Bindings,
    pub closure: ClosureCondition,
    pub generator_defs: BTreeMap<Var, Monomial>,
    pub tautological_relation: Option<LaurentPoly>,
    pub elimination_plan: EliminationPlan,
    pub cov_plan: CovPlan,
    pub expected_cubic: ExpectedCubic,
    pub remark: Option<ParameterRemark>,
}

impl CaseSpec {
    pub fn rewrites_to_invariants(&self) -> bool {
        !self.generator_defs.is_empty()
    }

    pub fn directions(&self) -> Vec<RationalAngle> {
        self.schedule.iter().map(|l| l.direction).collect()
    }

    /// Every Stokes variable in schedule order.
    pub fn stokes_vars(&self) -> Vec<Var> {
        self.schedule
            .iter()
            .flat_map(|l| l.entries.iter().map(|e| e.var))
            .collect()
    }

    /// Parameters the final equation may depend on.
    pub fn parameters(&self) -> BTreeSet<Var> {
        let mut out: BTreeSet<Var> = match self.formal_monodromy_kind {
            FormalMonodromyKind::H1 => ["alpha", "beta", "gamma"].map(var).into(),
            FormalMonodromyKind::H2 => [var("alpha")].into(),
            FormalMonodromyKind::H3 => BTreeSet::new(),
        };
        for (v, image) in &self.unit_relation {
            out.remove(v);
            out.extend(image.vars());
        }
        if let ClosureCondition::FixedClass { trace, trace_square } = &self.closure {
            out.insert(*trace);
            out.insert(*trace_square);
        }
        out
    }
}

const POSITIONS: [(usize, usize); 6] = [(1, 2), (1, 3), (2, 3), (2, 1), (3, 1), (3, 2)];

fn entry(row: usize, col: usize, index: usize) -> StokesEntry {
    StokesEntry {
        row,
        col,
        var: Var::x(index),
    }
}

/// `count` single-entry layouts at `kπ/den`, positions cycling through the
/// six roots.
fn cyclic_schedule(count: usize, den: i64) -> Vec<StokesEntryLayout> {
    (1..=count)
        .map(|k| {
            let (row, col) = POSITIONS[(k - 1) % 6];
            StokesEntryLayout {
                direction: RationalAngle::new(k as i64, den),
                entries: vec![entry(row, col, k)],
            }
        })
        .collect()
}

fn layout(num: i64, den: i64, entries: &[(usize, usize, usize)]) -> StokesEntryLayout {
    StokesEntryLayout {
        direction: RationalAngle::new(num, den),
        entries: entries.iter().map(|&(r, c, i)| entry(r, c, i)).collect(),
    }
}

fn third_root_pairs(level: u32, ramification: u32) -> Vec<EigenvaluePairSpec> {
    let unit = |i: usize| BranchUnit::Root(Rational64::new(2 * i as i64, 3));
    POSITIONS
        .iter()
        .map(|&(r, c)| EigenvaluePairSpec::new((r - 1, c - 1), level, ramification, unit(r - 1), unit(c - 1)))
        .collect()
}

/// Branches `q₊, q₋` (indices 0, 1) ramified over each other and `q₂`.
fn split_pairs(ramified_level: u32, mixed_level: u32) -> Vec<EigenvaluePairSpec> {
    let plus = BranchUnit::Root(Rational64::from_integer(0));
    let minus = BranchUnit::Root(Rational64::from_integer(1));
    let zero = BranchUnit::Zero;
    vec![
        EigenvaluePairSpec::new((0, 1), ramified_level, 2, plus, minus),
        EigenvaluePairSpec::new((1, 0), ramified_level, 2, minus, plus),
        EigenvaluePairSpec::new((0, 2), mixed_level, 2, plus, zero),
        EigenvaluePairSpec::new((1, 2), mixed_level, 2, plus, zero),
        EigenvaluePairSpec::new((2, 0), mixed_level, 2, zero, plus),
        EigenvaluePairSpec::new((2, 1), mixed_level, 2, zero, plus),
    ]
}

fn bindings(pairs: &[(&str, &str)]) -> Bindings {
    pairs.iter().map(|&(v, image)| (var(v), poly(image))).collect()
}

fn generators(pairs: &[(&str, &str)]) -> BTreeMap<Var, Monomial> {
    pairs
        .iter()
        .map(|&(g, text)| {
            let p = poly(text);
            let (m, _) = p.terms().next().expect("generator monomial");
            (var(g), m.clone())
        })
        .collect()
}

fn steps(list: &[(usize, usize, &str)]) -> Vec<EntryStep> {
    list.iter()
        .map(|&(row, col, v)| EntryStep { row, col, var: var(v) })
        .collect()
}

fn residuals(list: &[(usize, usize, &str)]) -> Vec<ResidualEntry> {
    list.iter()
        .map(|&(row, col, f)| ResidualEntry {
            row,
            col,
            factor: poly(f),
        })
        .collect()
}

fn plan(steps: &[(usize, &str)], target: usize, factor: &str) -> EliminationPlan {
    EliminationPlan {
        steps: steps.iter().map(|&(k, v)| (k, var(v))).collect(),
        target,
        factor: poly(factor),
    }
}

fn cov(stages: &[&[(&str, &str)]], factor: &str) -> CovPlan {
    CovPlan {
        stages: stages.iter().map(|s| bindings(s)).collect(),
        factor: poly(factor),
    }
}

const UNTWISTED_GENERATORS: [(&str, &str); 5] = [
    ("U", "x1*x4"),
    ("V", "x2*x5"),
    ("W", "x3*x6"),
    ("R", "x1*x3*x5"),
    ("T", "x2*x4*x6"),
];

const SPLIT_GENERATORS: [(&str, &str); 5] = [
    ("U", "x2*x5"),
    ("V", "x3*x6"),
    ("W", "x1"),
    ("R", "x2*x6"),
    ("T", "x1*x3*x5"),
];

fn fixed_class() -> ClosureCondition {
    ClosureCondition::FixedClass {
        trace: var("p"),
        trace_square: var("q"),
    }
}

fn raw_spec(name: CaseName) -> CaseSpec {
    match name {
        CaseName::JKTVI => CaseSpec {
            name,
            twist: TwistClass::Untwisted,
            pair_specs: third_root_pairs(1, 1),
            schedule: cyclic_schedule(6, 3),
            formal_monodromy_kind: FormalMonodromyKind::H1,
            unit_relation: bindings(&[("gamma", "alpha^-1*beta^-1")]),
            closure: fixed_class(),
            generator_defs: generators(&UNTWISTED_GENERATORS),
            tautological_relation: Some(poly("U*V*W - R*T")),
            elimination_plan: plan(&[(0, "U"), (1, "R")], 2, "-beta"),
            cov_plan: cov(
                &[
                    &[("T", "S - V - W")],
                    &[
                        ("W", "-X - beta*gamma^-1 - 1"),
                        ("V", "-Y - alpha*gamma^-1 - 1"),
                        ("S", "-Z + p*gamma^-1 - 1"),
                    ],
                ],
                "-1",
            ),
            expected_cubic: ExpectedCubic::fixed_top([Some("gamma"), Some("alpha"), Some("beta"), Some("gamma")]),
            remark: None,
        },
        CaseName::JKTV => CaseSpec {
            name,
            twist: TwistClass::MinimallyTwisted,
            pair_specs: split_pairs(1, 2),
            schedule: vec![
                layout(1, 2, &[(1, 3, 2), (2, 3, 3)]),
                layout(1, 1, &[(1, 2, 1)]),
                layout(3, 2, &[(3, 1, 5), (3, 2, 6)]),
            ],
            formal_monodromy_kind: FormalMonodromyKind::H2,
            unit_relation: bindings(&[("alpha", "r^2")]),
            closure: fixed_class(),
            generator_defs: generators(&[
                ("U", "x2*x5"),
                ("V", "x3*x6"),
                ("W", "x1"),
                ("R", "x2*x6"),
                ("T", "x3*x5"),
            ]),
            tautological_relation: Some(poly("U*V - R*T")),
            elimination_plan: plan(&[(0, "U"), (1, "R")], 2, "-alpha"),
            cov_plan: cov(&[&[("T", "X - r^-2"), ("V", "r^-1*Y - 1"), ("W", "r^-1*Z")]], "1"),
            expected_cubic: ExpectedCubic::fixed_top([Some("1"), Some("1"), Some("1"), None]),
            remark: None,
        },
        CaseName::JKTIVa => CaseSpec {
            name,
            twist: TwistClass::MaximallyTwisted,
            pair_specs: third_root_pairs(2, 3),
            schedule: cyclic_schedule(4, 2),
            formal_monodromy_kind: FormalMonodromyKind::H3,
            unit_relation: Bindings::new(),
            closure: fixed_class(),
            generator_defs: BTreeMap::new(),
            tautological_relation: None,
            elimination_plan: plan(&[(0, "x1")], 1, "1/2"),
            cov_plan: cov(&[&[("x3", "X"), ("x2", "Y"), ("x4", "Z")]], "1"),
            expected_cubic: ExpectedCubic::fixed_top([Some("1"), Some("1"), None, None]),
            remark: None,
        },
        CaseName::JKTIVb => CaseSpec {
            name,
            twist: TwistClass::Untwisted,
            pair_specs: third_root_pairs(2, 1),
            schedule: cyclic_schedule(12, 6),
            formal_monodromy_kind: FormalMonodromyKind::H1,
            unit_relation: bindings(&[("beta", "alpha^-1*gamma^-1")]),
            closure: ClosureCondition::Identity {
                split: 6,
                back_substitutions: steps(&[
                    (2, 3, "x9"),
                    (3, 2, "x12"),
                    (3, 1, "x11"),
                    (2, 1, "x10"),
                    (1, 3, "x8"),
                    (1, 2, "x7"),
                ]),
                residuals: residuals(&[(3, 3, "gamma"), (2, 2, "1")]),
                dropped: (1, 1),
                numeric_unknowns: vec![Var::x(5), Var::x(6)],
            },
            generator_defs: generators(&UNTWISTED_GENERATORS),
            tautological_relation: Some(poly("U*V*W - R*T")),
            elimination_plan: plan(&[(0, "T"), (1, "R")], 2, "1"),
            cov_plan: cov(&[&[("U", "X - 1"), ("V", "Y - 1"), ("W", "Z - 1")]], "1"),
            expected_cubic: ExpectedCubic::fully_fixed([
                Some("1"),
                None,
                Some("1"),
                None,
                Some("-gamma^-1"),
                Some("-alpha - gamma^-1 - 1"),
                Some("-alpha"),
                Some("alpha*gamma^-1 + alpha + gamma^-1"),
            ]),
            remark: None,
        },
        CaseName::JKTII => CaseSpec {
            name,
            twist: TwistClass::MinimallyTwisted,
            pair_specs: split_pairs(3, 4),
            schedule: vec![
                layout(1, 4, &[(1, 3, 2), (2, 3, 3)]),
                layout(1, 3, &[(1, 2, 1)]),
                layout(3, 4, &[(3, 1, 5), (3, 2, 6)]),
                layout(1, 1, &[(2, 1, 4)]),
                layout(5, 4, &[(1, 3, 8), (2, 3, 9)]),
                layout(5, 3, &[(1, 2, 7)]),
                layout(7, 4, &[(3, 1, 11), (3, 2, 12)]),
            ],
            formal_monodromy_kind: FormalMonodromyKind::H2,
            unit_relation: Bindings::new(),
            closure: ClosureCondition::Identity {
                split: 3,
                back_substitutions: steps(&[
                    (3, 2, "x11"),
                    (1, 3, "x8"),
                    (2, 3, "x9"),
                    (2, 2, "x4"),
                    (3, 1, "x12"),
                    (1, 1, "x7"),
                ]),
                residuals: residuals(&[(3, 3, "-1"), (1, 2, "1")]),
                dropped: (2, 1),
                numeric_unknowns: vec![Var::x(5), Var::x(6)],
            },
            generator_defs: generators(&SPLIT_GENERATORS),
            tautological_relation: Some(poly("U*V*W - R*T")),
            elimination_plan: plan(&[(0, "T"), (1, "R")], 2, "1"),
            cov_plan: cov(
                &[&[("U", "X - 1"), ("V", "Yp - 1"), ("W", "Z")], &[("Yp", "alpha^-1*Y")]],
                "alpha",
            ),
            expected_cubic: ExpectedCubic::fully_fixed([
                Some("1"),
                None,
                None,
                None,
                Some("-1"),
                Some("-alpha^-1"),
                Some("-1"),
                Some("1 + alpha^-1"),
            ]),
            remark: Some(ParameterRemark {
                substitution: bindings(&[("alpha", "alpha^-1")]),
                form: poly("X*Y*Z - X - alpha*Y - Z + 1 + alpha"),
            }),
        },
        CaseName::JKTI => CaseSpec {
            name,
            twist: TwistClass::MaximallyTwisted,
            pair_specs: third_root_pairs(5, 3),
            schedule: cyclic_schedule(10, 5),
            formal_monodromy_kind: FormalMonodromyKind::H3,
            unit_relation: Bindings::new(),
            closure: ClosureCondition::Identity {
                split: 4,
                back_substitutions: steps(&[
                    (2, 1, "x9"),
                    (2, 2, "x10"),
                    (1, 3, "x7"),
                    (1, 1, "x8"),
                    (3, 3, "x6"),
                    (3, 2, "x5"),
                ]),
                residuals: residuals(&[(2, 3, "1"), (1, 2, "-1")]),
                dropped: (3, 1),
                numeric_unknowns: vec![Var::x(3), Var::x(1)],
            },
            generator_defs: BTreeMap::new(),
            tautological_relation: None,
            elimination_plan: plan(&[(0, "x3")], 1, "1"),
            cov_plan: cov(&[&[("x1", "-X"), ("x2", "Y"), ("x4", "-Z")]], "1"),
            expected_cubic: ExpectedCubic::fully_fixed([
                Some("1"),
                None,
                None,
                None,
                Some("1"),
                Some("1"),
                None,
                Some("1"),
            ]),
            remark: None,
        },
    }
}

/// Applies the unit relation to every stored polynomial.
fn normalize(mut spec: CaseSpec) -> CaseSpec {
    let rel = spec.unit_relation.clone();
    if rel.is_empty() {
        return spec;
    }
    let fix = |p: &LaurentPoly| p.substitute(&rel).expect("unit relation maps units to units");
    for r in spec.closure_residuals_mut() {
        r.factor = fix(&r.factor);
    }
    spec.elimination_plan.factor = fix(&spec.elimination_plan.factor);
    for stage in &mut spec.cov_plan.stages {
        for image in stage.values_mut() {
            *image = fix(image);
        }
    }
    spec.cov_plan.factor = fix(&spec.cov_plan.factor);
    for slot in &mut spec.expected_cubic.slots {
        if let CoefficientSpec::Fixed(c) = slot {
            *c = fix(c);
        }
    }
    spec
}

impl CaseSpec {
    fn closure_residuals_mut(&mut self) -> impl Iterator<Item = &mut ResidualEntry> {
        match &mut self.closure {
            ClosureCondition::Identity { residuals, .. } => residuals.iter_mut(),
            ClosureCondition::FixedClass { .. } => [].iter_mut(),
        }
    }
}

pub fn case_spec(name: CaseName) -> CaseSpec {
    normalize(raw_spec(name))
}

/// Looks a case up by (case-insensitive) name.
pub fn case_spec_by_name(name: &str) -> Result<CaseSpec> {
    Ok(case_spec(name.parse()?))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "violation")]
pub enum Violation {
    ScheduleLength { expected: usize, found: usize },
    DiagonalEntry { direction: RationalAngle, row: usize, col: usize },
    RepeatedVariable { var: Var },
    DirectionOrder { index: usize },
    DirectionMismatch { detail: String },
    GeneratorMismatch { generator: Var, detail: String },
    RelationNotTautological,
    UncoveredVariable { var: Var },
    ClosureKind { expected_identity: bool },
    PairBounds { label: (usize, usize) },
    EntryCount { direction: RationalAngle, count: usize },
}

/// Checks the structural invariants of a case description.
pub fn validate_spec(spec: &CaseSpec) -> Vec<Violation> {
    let mut out = Vec::new();
    let expected = spec.name.schedule_len();
    if spec.schedule.len() != expected {
        out.push(Violation::ScheduleLength {
            expected,
            found: spec.schedule.len(),
        });
    }
    let max_entries = if spec.twist == TwistClass::MinimallyTwisted { 2 } else { 1 };
    let mut seen = BTreeSet::new();
    for (k, l) in spec.schedule.iter().enumerate() {
        if k > 0 && l.direction <= spec.schedule[k - 1].direction {
            out.push(Violation::DirectionOrder { index: k });
        }
        if l.entries.is_empty() || l.entries.len() > max_entries {
            out.push(Violation::EntryCount {
                direction: l.direction,
                count: l.entries.len(),
            });
        }
        for e in &l.entries {
            if e.row == e.col {
                out.push(Violation::DiagonalEntry {
                    direction: l.direction,
                    row: e.row,
                    col: e.col,
                });
            }
            if !seen.insert(e.var) {
                out.push(Violation::RepeatedVariable { var: e.var });
            }
        }
    }
    for p in &spec.pair_specs {
        if p.level_l < 1 || !(1..=3).contains(&p.ramification_n) || p.label.0 == p.label.1 {
            out.push(Violation::PairBounds { label: p.label });
        }
    }
    if let Err(detail) = crate::stokes::match_schedule(spec) {
        out.push(Violation::DirectionMismatch { detail });
    }

    let weights = invariants::torus_weights(spec);
    for (g, m) in &spec.generator_defs {
        let stray: Vec<_> = m.factors().iter().filter(|(v, _)| !seen.contains(v)).collect();
        if !stray.is_empty() {
            out.push(Violation::GeneratorMismatch {
                generator: *g,
                detail: format!("`{m}` uses variables outside the schedule"),
            });
        } else if !invariants::is_invariant(m, &weights) {
            out.push(Violation::GeneratorMismatch {
                generator: *g,
                detail: format!("`{m}` has nonzero torus weight"),
            });
        } else if spec
            .generator_defs
            .iter()
            .any(|(h, n)| h != g && n == m)
        {
            out.push(Violation::GeneratorMismatch {
                generator: *g,
                detail: format!("`{m}` is listed twice"),
            });
        }
    }
    if let Some(rel) = &spec.tautological_relation {
        if !invariants::tautological_check(&spec.generator_defs, rel) {
            out.push(Violation::RelationNotTautological);
        }
    }

    let identity = matches!(spec.closure, ClosureCondition::Identity { .. });
    if identity != spec.name.has_identity_closure() {
        out.push(Violation::ClosureKind {
            expected_identity: spec.name.has_identity_closure(),
        });
    }
    let eliminated: BTreeSet<Var> = match &spec.closure {
        ClosureCondition::Identity {
            back_substitutions, ..
        } => back_substitutions.iter().map(|s| s.var).collect(),
        ClosureCondition::FixedClass { .. } => BTreeSet::new(),
    };
    if spec.twist != TwistClass::MaximallyTwisted {
        for v in &seen {
            let covered = eliminated.contains(v) || spec.generator_defs.values().any(|m| m.contains(*v));
            if !covered {
                out.push(Violation::UncoveredVariable { var: *v });
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_specs_are_valid_and_stable() {
        for name in CaseName::ALL {
            let spec = case_spec(name);
            assert_eq!(validate_spec(&spec), vec![], "{name}");
            assert_eq!(spec, case_spec(name));
            assert_eq!(spec.schedule.len(), name.schedule_len());
        }
    }

    #[test]
    fn names_parse_case_insensitively() {
        assert_eq!("jktivb".parse::<CaseName>().unwrap(), CaseName::JKTIVb);
        assert!(matches!("JKTIII".parse::<CaseName>(), Err(Error::UnknownCase(_))));
    }

    #[test]
    fn short_schedule_is_reported() {
        let mut spec = case_spec(CaseName::JKTVI);
        spec.schedule.pop();
        let v = validate_spec(&spec);
        assert!(v.contains(&Violation::ScheduleLength { expected: 6, found: 5 }), "{v:?}");
    }

    #[test]
    fn generator_with_repeated_variable_is_reported() {
        let mut spec = case_spec(CaseName::JKTII);
        spec.generator_defs.insert(var("U"), Monomial::from_pairs([(Var::x(2), 2)]).unwrap());
        let v = validate_spec(&spec);
        assert!(
            v.iter().any(|x| matches!(x, Violation::GeneratorMismatch { generator, .. } if *generator == var("U"))),
            "{v:?}"
        );
    }

    #[test]
    fn twist_data() {
        assert_eq!(TwistClass::MinimallyTwisted.ramification(), 2);
        assert_eq!(TwistClass::MaximallyTwisted.torus_dim(), 0);
    }

    #[test]
    fn shape_strings() {
        assert_eq!(
            case_spec(CaseName::JKTV).expected_cubic.shape_string(),
            "XYZ + X² + Y² + c1X + c2Y + c3Z + c4"
        );
        assert_eq!(case_spec(CaseName::JKTI).expected_cubic.shape_string(), "XYZ + X + Y + 1");
    }

    #[test]
    fn spec_json_round_trip() {
        for name in CaseName::ALL {
            let spec = case_spec(name);
            let json = serde_json::to_string(&spec).unwrap();
            assert_eq!(serde_json::from_str::<CaseSpec>(&json).unwrap(), spec);
        }
    }
}
