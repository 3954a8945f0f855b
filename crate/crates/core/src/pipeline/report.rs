use std::fmt::Write;

use crate::angle::RationalAngle;
use crate::model::{ClosureCondition, CoefficientSpec};
use crate::monodromy::Provenance;
use crate::pipeline::{golden, CaseReport};
use crate::poly::LaurentPoly;

pub fn to_json(report: &CaseReport) -> String {
    serde_json::to_string_pretty(report).expect("report serializes")
}

fn tag(p: &Provenance) -> String {
    match p {
        Provenance::Trace => "trace".into(),
        Provenance::TraceSquare => "trace of square".into(),
        Provenance::Entry { row, col } => format!("entry ({row},{col})"),
        Provenance::Tautological => "relation".into(),
    }
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "FAILED"
    }
}

fn bindings_line(b: &crate::poly::Bindings) -> String {
    b.iter()
        .map(|(v, p)| format!("{v} = {p}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Directions as `k*pi/n` over the case's common denominator.
pub fn direction_strings(report: &CaseReport) -> Vec<String> {
    let dirs: Vec<RationalAngle> = report.directions.iter().map(|r| r.direction).collect();
    let n = RationalAngle::common_denominator(&dirs);
    dirs.iter().map(|d| d.format_over(n)).collect()
}

pub fn verdict_summary(report: &CaseReport) -> String {
    let v = &report.verdicts;
    let mut parts = vec![
        format!("schedule {}", mark(v.schedule_match)),
        format!("det {}", mark(v.determinant_one)),
        format!("shape {}", mark(v.shape_match)),
    ];
    if let Some(e) = v.exact_match {
        parts.push(format!("exact {}", mark(e)));
    }
    if let Some(t) = v.tautological {
        parts.push(format!("relation {}", mark(t)));
    }
    parts.push(format!("torus {}", mark(v.conjugation_invariant)));
    if let Some(r) = v.remark_match {
        parts.push(format!("remark {}", mark(r)));
    }
    if let Some(g) = golden::golden_matches(report.case, &report.cubic) {
        parts.push(format!("golden {}", mark(g)));
    }
    if let Some(o) = &v.oracle {
        parts.push(format!("oracle {} (max {:.1e})", mark(o.passed), o.max_residual));
    }
    parts.join(", ")
}

pub fn to_text(report: &CaseReport) -> String {
    let spec = &report.spec;
    let mut out = String::new();
    let closure = match spec.closure {
        ClosureCondition::FixedClass { .. } => "fixed conjugacy class",
        ClosureCondition::Identity { .. } => "identity",
    };
    let _ = writeln!(
        out,
        "case {}: {:?}, formal monodromy {:?}, closure {closure}",
        report.case, spec.twist, spec.formal_monodromy_kind
    );
    let dirs = direction_strings(report);
    let _ = writeln!(out, "directions ({}): {}", dirs.len(), dirs.join(", "));
    let _ = writeln!(out, "Stokes matrices:");
    for (k, l) in spec.schedule.iter().enumerate() {
        let entries: Vec<String> = l.entries.iter().map(|e| format!("{} at ({},{})", e.var, e.row, e.col)).collect();
        let _ = writeln!(out, "  S{} at {}: {}", k + 1, l.direction, entries.join(", "));
    }
    if !report.closure.back_substitutions.is_empty() {
        let _ = writeln!(out, "back-substitutions:");
        for (v, p) in &report.closure.back_substitutions {
            let _ = writeln!(out, "  {v} = {p}");
        }
    }
    let _ = writeln!(out, "closure equations:");
    for (eq, p) in report.closure.system.equations.iter().zip(&report.closure.system.provenance) {
        let _ = writeln!(out, "  [{}] {eq} = 0", tag(p));
    }
    if spec.rewrites_to_invariants() {
        let gens: Vec<String> = spec.generator_defs.iter().map(|(g, m)| format!("{g} = {m}")).collect();
        let _ = writeln!(out, "invariants: {}", gens.join(", "));
        for (eq, p) in report.invariant_system.equations.iter().zip(&report.invariant_system.provenance) {
            let _ = writeln!(out, "  [{}] {eq} = 0", tag(p));
        }
    }
    let _ = writeln!(out, "elimination: {}", bindings_line(&report.elimination.solutions));
    let _ = writeln!(out, "  {} = 0", report.elimination.residual);
    let _ = writeln!(out, "change of variables:");
    for (k, stage) in spec.cov_plan.stages.iter().enumerate() {
        let _ = writeln!(out, "  stage {}: {}", k + 1, bindings_line(stage));
    }
    if !spec.cov_plan.factor.is_one() {
        let _ = writeln!(out, "  multiply by {}", spec.cov_plan.factor);
    }
    let _ = writeln!(out, "cubic:");
    let _ = writeln!(out, "  {}", report.cubic);
    if !spec.expected_cubic.is_fully_fixed() {
        let _ = writeln!(out, "  shape {}", spec.expected_cubic.shape_string());
        for (slot, c) in spec.expected_cubic.slots.iter().skip(4).zip(report.cubic.free_coefficients()) {
            if let CoefficientSpec::Free(name) = slot {
                let _ = writeln!(out, "  {name} = {c}");
            }
        }
    }
    let _ = writeln!(out, "verdicts: {}", verdict_summary(report));
    out
}

fn latex_eq(p: &LaurentPoly) -> String {
    format!("{} &= 0", p.to_latex())
}

pub fn to_latex(report: &CaseReport) -> String {
    let spec = &report.spec;
    let mut out = String::new();
    let _ = writeln!(out, "\\subsection*{{{}}}", report.case);
    let dirs: Vec<String> = report
        .directions
        .iter()
        .map(|r| {
            let m = r.direction.multiple_of_pi();
            match (*m.numer(), *m.denom()) {
                (1, 1) => "\\pi".to_string(),
                (n, 1) => format!("{n}\\pi"),
                (1, d) => format!("\\frac{{\\pi}}{{{d}}}"),
                (n, d) => format!("\\frac{{{n}\\pi}}{{{d}}}"),
            }
        })
        .collect();
    let _ = writeln!(out, "Directions: $\\varphi \\in \\{{{}\\}}$.\n", dirs.join(", "));
    let _ = writeln!(out, "\\[");
    for (k, s) in report.stokes_matrices.iter().enumerate() {
        let sep = if k + 1 < report.stokes_matrices.len() { ",\\quad" } else { "" };
        let _ = writeln!(out, "S_{{{}}} = {}{sep}", k + 1, s.to_latex());
    }
    let _ = writeln!(out, "\\]");
    let _ = writeln!(out, "\\[ H = {} \\]", report.formal_monodromy.to_latex());
    if let Some(sp) = &report.closure.split {
        let _ = writeln!(out, "\\[ L = {} \\]", sp.left.to_latex());
    }
    let _ = writeln!(out, "\\begin{{align*}}");
    let eqs: Vec<String> = report.invariant_system.equations.iter().map(latex_eq).collect();
    let _ = writeln!(out, "{}", eqs.join(" \\\\\n"));
    let _ = writeln!(out, "\\end{{align*}}");
    let _ = writeln!(out, "Eliminated: \\[ {} = 0 \\]", report.elimination.residual.to_latex());
    let _ = writeln!(out, "Cubic: \\[ {} = 0 \\]", report.cubic.to_latex());
    if !spec.expected_cubic.is_fully_fixed() {
        let _ = writeln!(out, "\\begin{{align*}}");
        let lines: Vec<String> = report
            .cubic
            .free_coefficients()
            .iter()
            .enumerate()
            .map(|(k, c)| format!("c_{{{}}} &= {}", k + 1, c.to_latex()))
            .collect();
        let _ = writeln!(out, "{}", lines.join(" \\\\\n"));
        let _ = writeln!(out, "\\end{{align*}}");
    }
    out
}
