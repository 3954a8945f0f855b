use std::fmt::Write as _;
use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use anyhow::{Context, Result};
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use wcv_core::pipeline::golden::golden_matches;
use wcv_core::pipeline::report::{direction_strings, to_json, to_latex, to_text};
use wcv_core::pipeline::{OracleVerdict, Verdicts};
use wcv_core::{case_spec, derive_case, oracle_verify, CaseName, CaseReport, CaseSpec};

#[derive(Parser)]
#[command(name = "wcv", version, about = "Derive the cubic surfaces of the rank-three JKT cases from their Stokes data")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the derivation and print the stage trace.
    Derive(Options),
    /// Print the Stokes directions as `k*pi/n`.
    Directions(Options),
    /// Derive every requested case and run the numeric oracle and golden checks.
    Verify(Options),
    /// Print the static case data.
    DumpSpec(Options),
}

#[derive(Args)]
struct Options {
    /// Case name (case-insensitive) or `all`.
    #[arg(long)]
    case: Option<Selection>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, env = "WCV_SEED", default_value_t = 42)]
    seed: u64,
    #[arg(long, default_value_t = 100, value_parser = clap::value_parser!(u64).range(1..))]
    trials: u64,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
    Latex,
}

#[derive(Clone, Copy)]
enum Selection {
    All,
    One(CaseName),
}

impl FromStr for Selection {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(Selection::All);
        }
        s.parse().map(Selection::One).map_err(|e: wcv_core::Error| e.to_string())
    }
}

impl Selection {
    fn cases(self) -> Vec<CaseName> {
        match self {
            Selection::All => CaseName::ALL.to_vec(),
            Selection::One(c) => vec![c],
        }
    }
}

fn usage_error(kind: ErrorKind, msg: &str) -> ! {
    Cli::command().error(kind, msg).exit()
}

fn require_case(opts: &Options, command: &str) -> Vec<CaseName> {
    match opts.case {
        Some(sel) => sel.cases(),
        None => usage_error(
            ErrorKind::MissingRequiredArgument,
            &format!("`{command}` needs --case <NAME|all>"),
        ),
    }
}

/// A single case prints as one object, several as an array.
fn json_of<T: Serialize>(items: &[T]) -> String {
    let text = match items {
        [one] => serde_json::to_string_pretty(one),
        many => serde_json::to_string_pretty(many),
    };
    text.expect("serializes") + "\n"
}

struct Outcome {
    text: String,
    failed: Vec<String>,
}

fn derive(opts: &Options) -> Outcome {
    let mut reports = Vec::new();
    let mut failed = Vec::new();
    for name in require_case(opts, "derive") {
        match derive_case(name) {
            Ok(r) => {
                if !r.verdicts.all_passed() {
                    failed.push(format!("{name}: verdicts failed: {}", failing(&r.verdicts).join(", ")));
                }
                reports.push(r);
            }
            Err(e) => failed.push(format!("{name}: {e}")),
        }
    }
    let text = match opts.format {
        Format::Text => reports.iter().map(to_text).collect::<Vec<_>>().join("\n"),
        Format::Latex => reports.iter().map(to_latex).collect::<Vec<_>>().join("\n"),
        Format::Json => match reports.as_slice() {
            [one] => to_json(one) + "\n",
            many => json_of(many),
        },
    };
    Outcome { text, failed }
}

fn directions(opts: &Options) -> Outcome {
    let cases = opts.case.unwrap_or(Selection::All).cases();
    let single = cases.len() == 1;
    let mut text = String::new();
    let mut table = Vec::new();
    let mut failed = Vec::new();
    for name in cases {
        let r = match derive_case(name) {
            Ok(r) => r,
            Err(e) => {
                failed.push(format!("{name}: {e}"));
                continue;
            }
        };
        let dirs = direction_strings(&r);
        match opts.format {
            Format::Text => {
                if !single {
                    let _ = writeln!(text, "{name}");
                }
                for d in &dirs {
                    let _ = writeln!(text, "{}{d}", if single { "" } else { "  " });
                }
            }
            Format::Latex => {
                let items: Vec<String> = dirs.iter().map(|d| latex_angle(d)).collect();
                let _ = writeln!(text, "{name}: $\\varphi \\in \\{{{}\\}}$", items.join(", "));
            }
            Format::Json => table.push(DirectionsJson { case: name, directions: dirs }),
        }
    }
    if matches!(opts.format, Format::Json) {
        text = json_of(&table);
    }
    Outcome { text, failed }
}

#[derive(Serialize)]
struct DirectionsJson {
    case: CaseName,
    directions: Vec<String>,
}

/// `k*pi/n` as `\frac{k\pi}{n}`.
fn latex_angle(d: &str) -> String {
    let (k, n) = d.split_once("*pi/").unwrap_or((d, "1"));
    let num = if k == "1" { "\\pi".to_string() } else { format!("{k}\\pi") };
    if n == "1" {
        num
    } else {
        format!("\\frac{{{num}}}{{{n}}}")
    }
}

#[derive(Serialize)]
struct VerifyRow {
    case: CaseName,
    verdicts: Verdicts,
    golden: Option<bool>,
    passed: bool,
    error: Option<String>,
}

fn verify_case(name: CaseName, trials: usize, seed: u64) -> VerifyRow {
    let run = || -> Result<(CaseReport, OracleVerdict)> {
        let r = derive_case(name)?;
        let o = oracle_verify(&r, trials, seed).context("oracle")?;
        Ok((r, o))
    };
    match run() {
        Ok((mut r, o)) => {
            r.verdicts.oracle = Some(o);
            let golden = golden_matches(name, &r.cubic);
            let passed = r.verdicts.all_passed() && golden != Some(false);
            VerifyRow {
                case: name,
                verdicts: r.verdicts,
                golden,
                passed,
                error: None,
            }
        }
        Err(e) => VerifyRow {
            case: name,
            verdicts: Verdicts {
                schedule_match: false,
                determinant_one: false,
                shape_match: false,
                exact_match: None,
                tautological: None,
                conjugation_invariant: false,
                remark_match: None,
                oracle: None,
            },
            golden: None,
            passed: false,
            error: Some(format!("{e:#}")),
        },
    }
}

fn failing(v: &Verdicts) -> Vec<&'static str> {
    let mut out = Vec::new();
    let checks = [
        ("schedule", Some(v.schedule_match)),
        ("determinant", Some(v.determinant_one)),
        ("shape", Some(v.shape_match)),
        ("exact", v.exact_match),
        ("relation", v.tautological),
        ("torus", Some(v.conjugation_invariant)),
        ("remark", v.remark_match),
        ("oracle", v.oracle.as_ref().map(|o| o.passed)),
    ];
    for (label, ok) in checks {
        if ok == Some(false) {
            out.push(label);
        }
    }
    out
}

fn cell(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "ok",
        Some(false) => "FAIL",
        None => "-",
    }
}

const COLUMNS: [&str; 11] = [
    "case", "schedule", "det", "shape", "exact", "relation", "torus", "remark", "golden", "oracle", "max residual",
];

fn verify_cells(row: &VerifyRow) -> [String; 11] {
    let v = &row.verdicts;
    let oracle = v.oracle.as_ref();
    [
        row.case.to_string(),
        cell(Some(v.schedule_match)).into(),
        cell(Some(v.determinant_one)).into(),
        cell(Some(v.shape_match)).into(),
        cell(v.exact_match).into(),
        cell(v.tautological).into(),
        cell(Some(v.conjugation_invariant)).into(),
        cell(v.remark_match).into(),
        cell(row.golden).into(),
        cell(oracle.map(|o| o.passed)).into(),
        oracle.map_or("-".into(), |o| format!("{:.1e}", o.max_residual)),
    ]
}

fn verify(opts: &Options) -> Outcome {
    let cases = opts.case.unwrap_or(Selection::All).cases();
    let trials = opts.trials as usize;
    let rows: Vec<VerifyRow> = std::thread::scope(|s| {
        let handles: Vec<_> = cases
            .iter()
            .map(|&name| s.spawn(move || verify_case(name, trials, opts.seed)))
            .collect();
        handles.into_iter().map(|h| h.join().expect("verify thread")).collect()
    });
    let failed: Vec<String> = rows
        .iter()
        .filter(|r| !r.passed)
        .map(|r| match &r.error {
            Some(e) => format!("{}: {e}", r.case),
            None => {
                let mut labels = failing(&r.verdicts);
                if r.golden == Some(false) {
                    labels.push("golden");
                }
                format!("{}: verification failed: {}", r.case, labels.join(", "))
            }
        })
        .collect();
    let text = match opts.format {
        Format::Json => json_of(&rows),
        Format::Text => {
            let cells: Vec<[String; 11]> = rows.iter().map(verify_cells).collect();
            let widths: Vec<usize> = (0..COLUMNS.len())
                .map(|k| cells.iter().map(|c| c[k].len()).chain([COLUMNS[k].len()]).max().unwrap_or(0))
                .collect();
            let line = |items: Vec<&str>| {
                let padded: Vec<String> = items.iter().zip(&widths).map(|(s, w)| format!("{s:<w$}")).collect();
                padded.join("  ").trim_end().to_string() + "\n"
            };
            let mut out = line(COLUMNS.to_vec());
            for c in &cells {
                out += &line(c.iter().map(String::as_str).collect());
            }
            let _ = writeln!(out, "seed {}, {} trials per case", opts.seed, trials);
            out
        }
        Format::Latex => {
            let mut out = format!("\\begin{{tabular}}{{l{}}}\n", "c".repeat(COLUMNS.len() - 1));
            out += &(COLUMNS.join(" & ") + " \\\\\n\\hline\n");
            for r in &rows {
                out += &(verify_cells(r).join(" & ") + " \\\\\n");
            }
            out + "\\end{tabular}\n"
        }
    };
    Outcome { text, failed }
}

fn spec_text(spec: &CaseSpec) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "case {}: {:?}, formal monodromy {:?}", spec.name, spec.twist, spec.formal_monodromy_kind);
    for (k, l) in spec.schedule.iter().enumerate() {
        let entries: Vec<String> = l.entries.iter().map(|e| format!("{}@({},{})", e.var, e.row, e.col)).collect();
        let _ = writeln!(out, "  S{} {}: {}", k + 1, l.direction, entries.join(" "));
    }
    if !spec.generator_defs.is_empty() {
        let gens: Vec<String> = spec.generator_defs.iter().map(|(g, m)| format!("{g}={m}")).collect();
        let _ = writeln!(out, "  generators: {}", gens.join(", "));
    }
    if let Some(rel) = &spec.tautological_relation {
        let _ = writeln!(out, "  relation: {rel} = 0");
    }
    let _ = writeln!(out, "  expected: {} = 0", spec.expected_cubic.shape_string());
    out
}

fn dump_spec(opts: &Options) -> Outcome {
    let specs: Vec<CaseSpec> = require_case(opts, "dump-spec").into_iter().map(case_spec).collect();
    let text = match opts.format {
        Format::Json => json_of(&specs),
        Format::Text => specs.iter().map(spec_text).collect::<Vec<_>>().join("\n"),
        Format::Latex => usage_error(ErrorKind::InvalidValue, "dump-spec supports --format text or json"),
    };
    Outcome {
        text,
        failed: Vec::new(),
    }
}

fn emit(opts: &Options, text: &str) -> Result<()> {
    match &opts.output {
        Some(path) => std::fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (opts, outcome) = match &cli.command {
        Command::Derive(o) => (o, derive(o)),
        Command::Directions(o) => (o, directions(o)),
        Command::Verify(o) => (o, verify(o)),
        Command::DumpSpec(o) => (o, dump_spec(o)),
    };
    if let Err(e) = emit(opts, &outcome.text) {
        eprintln!("error: {e:#}");
        return ExitCode::FAILURE;
    }
    for f in &outcome.failed {
        eprintln!("error: {f}");
    }
    if outcome.failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
