use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde_json::{json, Value};
use tabinv_core::appendix::{self, APPENDIX_SIZES};
use tabinv_core::bijections::{phi1_general, phi2_general, phi2_rect, BumpTrace};
use tabinv_core::verify::{verify, Claim, Report, Status};
use tabinv_core::{
    betti_numbers, catalan, fiber, inversion_distribution, m_minus_1_count, m_minus_2_count,
    mahonian, mahonian_row, max_inversion_tableau, tail_end_threshold, two_row_count, EnumConfig,
    Error, InvertedTableau, Partition, Tableau, DEFAULT_BUDGET,
};

#[derive(Parser)]
#[command(name = "tabinv", version, about = "Inverted Young tableaux: enumeration, formulas, bijections")]
struct Cli {
    /// Enumeration threads.
    #[arg(long, global = true, env = "TABINV_WORKERS", default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    workers: u64,
    /// Largest number of inverted tableaux an enumeration may visit.
    #[arg(long, global = true, env = "TABINV_BUDGET", default_value_t = DEFAULT_BUDGET, value_parser = clap::value_parser!(u64).range(1..))]
    budget: u64,
    #[arg(long, global = true, env = "TABINV_FORMAT", value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true, env = "TABINV_OUT")]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Standard Young tableaux of a shape, by the hook-length formula.
    Count { shape: String },
    /// All inverted (row-standard) tableaux of a shape.
    Total { shape: String },
    /// Maximum inversion number M of a shape.
    Max { shape: String },
    /// The unique tableau with M inversions.
    Maxtab { shape: String },
    /// Shapes reachable by one stair-step move.
    Stairsteps { shape: String },
    /// Number of inverted tableaux with each inversion count.
    Distribution { shape: String },
    /// Sort every column of an inverted tableau.
    Standardize { tableau: String },
    /// Inversion pairs of an inverted tableau.
    Inversions { tableau: String },
    /// Inverted tableaux whose standardization is the given standard tableau.
    Fiber { tableau: String },
    /// Betti numbers b_k = |S_{M-k}|.
    Betti { shape: String },
    /// Apply a one-inversion bijection.
    Map {
        direction: Direction,
        tableau: String,
        /// Target shape for phi2 when it is not a rectangle's stair-step shape.
        #[arg(long)]
        shape: Option<String>,
    },
    /// Check a counting claim against enumeration.
    Verify {
        #[arg(value_parser = clap::builder::PossibleValuesParser::new(Claim::NAMES))]
        claim: String,
        #[arg(long)]
        shape: Option<String>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        i: Option<usize>,
    },
    /// Regenerate the three-row tables and compare with the golden copies.
    Appendix {
        /// Only the table for (n,n,n); one of 2..=5.
        #[arg(long)]
        table: Option<usize>,
    },
    /// Closed-form counts.
    #[command(subcommand)]
    Formula(FormulaCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum Direction {
    Phi1,
    Phi2,
}

#[derive(Subcommand)]
enum FormulaCommand {
    Catalan { n: usize },
    /// Permutations of m letters with i inversions; all i when omitted.
    Mahonian { m_minus_1: usize, i: Option<usize> },
    /// |S_i(n,n)|; all i when omitted.
    TwoRow { n: usize, i: Option<usize> },
    /// |S_{M-1}| of the m x n rectangle.
    M1 { m: usize, n: usize },
    /// |S_{M-2}| of the m x n rectangle.
    M2 { m: usize, n: usize },
    TailThreshold { m: usize, n: usize },
}

enum Failure {
    Core(Error),
    Usage(String),
    UnsupportedFormat(&'static str),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> &'static str {
        match self {
            Failure::Core(e) => e.code(),
            Failure::Usage(_) => "usage",
            Failure::UnsupportedFormat(_) => "unsupported-format",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Usage(msg) => msg.clone(),
            Failure::UnsupportedFormat(cmd) => format!("{cmd} has no CSV form; use text or json"),
        }
    }
}

/// What a command produced: text to emit and the exit status it implies.
struct Output {
    body: String,
    code: u8,
    /// Printed to stderr, e.g. a diff.
    note: Option<String>,
}

impl From<String> for Output {
    fn from(body: String) -> Self {
        Output {
            body,
            code: 0,
            note: None,
        }
    }
}

fn shape(s: &str) -> Result<Partition, Failure> {
    Ok(s.parse()?)
}

fn tableau(s: &str) -> Result<Tableau, Failure> {
    Ok(s.parse()?)
}

fn json_line(v: Value) -> String {
    format!("{v}\n")
}

fn csv_lines(header: &str, rows: impl IntoIterator<Item = String>) -> String {
    let mut out = format!("{header}\n");
    for row in rows {
        out.push_str(&row);
        out.push('\n');
    }
    out
}

/// JSON number when it fits in u64, decimal string otherwise.
fn big(v: &BigUint) -> Value {
    u64::try_from(v).map_or_else(|_| Value::from(v.to_string()), Value::from)
}

fn scalar(format: Format, key: &str, shape: &Partition, value: Value) -> String {
    match format {
        Format::Text => format!("{}\n", value.as_str().map_or_else(|| value.to_string(), str::to_string)),
        Format::Json => json_line(json!({ "shape": shape, key: value })),
        Format::Csv => csv_lines(&format!("shape,{key}"), [format!("\"{shape}\",{value}")]),
    }
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let config = EnumConfig {
        workers: cli.workers as usize,
        budget: cli.budget,
    };
    let fmt = cli.format;
    let out = match &cli.command {
        Command::Count { shape: s } => {
            let p = shape(s)?;
            scalar(fmt, "standard_count", &p, big(&p.standard_count()))
        }
        Command::Total { shape: s } => {
            let p = shape(s)?;
            scalar(fmt, "total", &p, big(&p.total_inverted_count()))
        }
        Command::Max { shape: s } => {
            let p = shape(s)?;
            scalar(fmt, "max_inversions", &p, json!(p.max_inversions()))
        }
        Command::Maxtab { shape: s } => {
            let p = shape(s)?;
            let t = max_inversion_tableau(&p);
            match fmt {
                Format::Text => format!("{}\ninversions: {}\n", t.to_lines(), t.inversion_count()),
                Format::Json => json_line(json!({
                    "shape": p,
                    "tableau": t,
                    "inversions": t.inversion_count(),
                })),
                Format::Csv => return Err(Failure::UnsupportedFormat("maxtab")),
            }
        }
        Command::Stairsteps { shape: s } => {
            let p = shape(s)?;
            let steps = p.stair_step_shapes();
            match fmt {
                Format::Text => steps
                    .iter()
                    .map(|(mv, q)| {
                        let e: Vec<String> = mv.tuple(p.rows()).iter().map(i8::to_string).collect();
                        format!("E=({}) row {}->{}: ({q})\n", e.join(","), mv.source_row, mv.target_row)
                    })
                    .collect(),
                Format::Json => json_line(json!(steps
                    .iter()
                    .map(|(mv, q)| json!({ "move": mv, "tuple": mv.tuple(p.rows()), "shape": q }))
                    .collect::<Vec<_>>())),
                Format::Csv => csv_lines(
                    "source_row,target_row,shape",
                    steps.iter().map(|(mv, q)| format!("{},{},\"{q}\"", mv.source_row, mv.target_row)),
                ),
            }
        }
        Command::Distribution { shape: s } => {
            let d = inversion_distribution(&shape(s)?, &config)?;
            match fmt {
                Format::Text => d.to_text(),
                Format::Json => format!("{}\n", d.to_json()),
                Format::Csv => d.to_csv(),
            }
        }
        Command::Standardize { tableau: s } => {
            let t = InvertedTableau::new(tableau(s)?)?;
            let st = t.standardize();
            match fmt {
                Format::Text => format!("{}\n", st.to_lines()),
                Format::Json => json_line(json!({ "input": t, "standardized": st })),
                Format::Csv => return Err(Failure::UnsupportedFormat("standardize")),
            }
        }
        Command::Inversions { tableau: s } => {
            let t = InvertedTableau::new(tableau(s)?)?;
            let pairs = t.inversions();
            match fmt {
                Format::Text => {
                    let mut out = format!("{} inversion(s)\n", pairs.len());
                    for p in &pairs {
                        let _ = writeln!(out, "{p}");
                    }
                    out
                }
                Format::Json => json_line(json!({ "count": pairs.len(), "pairs": pairs })),
                Format::Csv => csv_lines(
                    "column,small,large",
                    pairs.iter().map(|p| format!("{},{},{}", p.column, p.small, p.large)),
                ),
            }
        }
        Command::Fiber { tableau: s } => {
            let t = tableau(s)?;
            let members = fiber(&t)?;
            match fmt {
                Format::Text => {
                    let mut out = format!("{} tableaux\n", members.len());
                    for m in &members {
                        let _ = writeln!(out, "{m}  [{} inversions]", m.inversion_count());
                    }
                    out
                }
                Format::Json => json_line(json!({
                    "standard": t,
                    "size": members.len(),
                    "members": members,
                })),
                Format::Csv => csv_lines(
                    "tableau,inversions",
                    members.iter().map(|m| format!("{m},{}", m.inversion_count())),
                ),
            }
        }
        Command::Betti { shape: s } => {
            let p = shape(s)?;
            let b = betti_numbers(&p, &config)?;
            match fmt {
                Format::Text => b.iter().enumerate().map(|(k, v)| format!("b_{k}={v}\n")).collect(),
                Format::Json => json_line(json!({ "shape": p, "dimension": p.max_inversions(), "betti": b })),
                Format::Csv => csv_lines("k,betti", b.iter().enumerate().map(|(k, v)| format!("{k},{v}"))),
            }
        }
        Command::Map {
            direction,
            tableau: s,
            shape: target,
        } => return map(fmt, *direction, s, target.as_deref()).map(Output::from),
        Command::Verify { claim, shape, m, n, i } => {
            let claim = claim_from(claim, shape.as_deref(), *m, *n, *i)?;
            let report = verify(&claim, &config)?;
            return report_output(fmt, &report);
        }
        Command::Appendix { table } => return appendix_output(fmt, *table, &config),
        Command::Formula(f) => formula(fmt, f)?,
    };
    Ok(out.into())
}

fn need<T>(v: Option<T>, flag: &str, claim: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("verify {claim} needs --{flag}")))
}

fn claim_from(
    name: &str,
    s: Option<&str>,
    m: Option<usize>,
    n: Option<usize>,
    i: Option<usize>,
) -> Result<Claim, Failure> {
    let p = || -> Result<Partition, Failure> { shape(need(s, "shape", name)?) };
    Ok(match name {
        "hook" => Claim::Hook(p()?),
        "totals" => Claim::Totals(p()?),
        "two-row" => Claim::TwoRow(need(n, "n", name)?),
        "max-unique" => Claim::MaxUnique(p()?),
        "rect-i1" => Claim::RectI1(p()?),
        "general-i1" => Claim::GeneralI1(p()?),
        "m1" => Claim::M1 {
            m: need(m, "m", name)?,
            n: need(n, "n", name)?,
        },
        "m2" => Claim::M2 {
            m: need(m, "m", name)?,
            n: need(n, "n", name)?,
        },
        "lemma" => Claim::Lemma {
            m: need(m, "m", name)?,
            i,
        },
        "tail" => Claim::Tail {
            m: need(m, "m", name)?,
            n: need(n, "n", name)?,
        },
        other => return Err(Failure::Usage(format!("unknown claim {other}"))),
    })
}

fn report_output(fmt: Format, report: &Report) -> Result<Output, Failure> {
    let body = match fmt {
        Format::Text => report.to_text(),
        Format::Json => format!("{}\n", report.to_json()),
        Format::Csv => return Err(Failure::UnsupportedFormat("verify")),
    };
    let code = match report.status {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::OutOfHypothesis => 2,
    };
    Ok(Output {
        body,
        code,
        note: None,
    })
}

fn appendix_output(fmt: Format, table: Option<usize>, config: &EnumConfig) -> Result<Output, Failure> {
    let sizes: Vec<usize> = match table {
        Some(n) => vec![n],
        None => APPENDIX_SIZES.to_vec(),
    };
    let mut checks = Vec::new();
    for n in sizes {
        checks.push(appendix::check(n, config)?);
    }
    let body = match fmt {
        Format::Text => checks.iter().map(|c| c.rendered.clone()).collect::<Vec<_>>().join("\n"),
        Format::Csv => checks.iter().map(|c| c.generated.to_csv()).collect::<Vec<_>>().join("\n"),
        Format::Json => json_line(json!(checks
            .iter()
            .map(|c| json!({ "table": c.generated, "matches_golden": c.matches() }))
            .collect::<Vec<_>>())),
    };
    let diffs: String = checks
        .iter()
        .filter(|c| !c.matches())
        .map(|c| format!("({}) differs from the golden table:\n{}", c.generated.rectangle, c.diff()))
        .collect();
    Ok(Output {
        body,
        code: if diffs.is_empty() { 0 } else { 1 },
        note: (!diffs.is_empty()).then_some(diffs),
    })
}

fn trace_text(trace: &BumpTrace) -> String {
    let values: Vec<String> = trace.distinguished.iter().map(ToString::to_string).collect();
    let mut out = format!("distinguished: {}\ntrace (0-based cells):\n", values.join(" "));
    for ev in &trace.events {
        let _ = writeln!(out, "  {}", serde_json::to_string(ev).expect("events serialize"));
    }
    out
}

fn map(fmt: Format, direction: Direction, s: &str, target: Option<&str>) -> Result<String, Failure> {
    let input = tableau(s)?;
    let (output, out_inversions, mv, trace, name) = match direction {
        Direction::Phi1 => {
            let t = InvertedTableau::new(input.clone())?;
            let (mv, out, trace) = phi1_general(&t)?;
            (out, Vec::new(), Some(mv), trace, "phi1")
        }
        Direction::Phi2 => {
            let (out, trace, mv) = match target {
                None => {
                    let (out, trace) = phi2_rect(&input)?;
                    (out, trace, None)
                }
                Some(lam) => {
                    let lam = shape(lam)?;
                    let mv = lam
                        .stair_step_shapes()
                        .into_iter()
                        .find(|(_, q)| q == input.shape())
                        .map(|(mv, _)| mv)
                        .ok_or_else(|| {
                            Error::ShapeMismatch(format!(
                                "{} is not a stair-step shape of {lam}",
                                input.shape()
                            ))
                        })?;
                    let (out, trace) = phi2_general(mv, &input, &lam)?;
                    (out, trace, Some(mv))
                }
            };
            let pairs = out.inversions();
            (out.into_inner(), pairs, mv, trace, "phi2")
        }
    };
    Ok(match fmt {
        Format::Text => {
            let mut out = format!("{name}: {input}\n-> {output}\n{}\nshape: ({})\n", output.to_lines(), output.shape());
            if let Some(mv) = mv {
                let _ = writeln!(out, "move: row {} -> row {}", mv.source_row, mv.target_row);
            }
            let pairs: Vec<String> = out_inversions.iter().map(ToString::to_string).collect();
            let _ = writeln!(
                out,
                "inversions: {}",
                if pairs.is_empty() { "none".to_string() } else { pairs.join(", ") }
            );
            out.push_str(&trace_text(&trace));
            out
        }
        Format::Json => json_line(json!({
            "direction": name,
            "input": input,
            "output": output,
            "shape": output.shape(),
            "move": mv,
            "inversions": out_inversions,
            "trace": trace,
        })),
        Format::Csv => return Err(Failure::UnsupportedFormat("map")),
    })
}

fn formula(fmt: Format, f: &FormulaCommand) -> Result<String, Failure> {
    let (name, params, values): (&str, Value, Vec<(Option<usize>, Value)>) = match *f {
        FormulaCommand::Catalan { n } => ("catalan", json!({ "n": n }), vec![(None, big(&catalan(n)))]),
        FormulaCommand::Mahonian { m_minus_1, i } => {
            let vals = match i {
                Some(i) => vec![(Some(i), big(&mahonian(m_minus_1, i)))],
                None => mahonian_row(m_minus_1).iter().enumerate().map(|(i, v)| (Some(i), big(v))).collect(),
            };
            ("mahonian", json!({ "m_minus_1": m_minus_1 }), vals)
        }
        FormulaCommand::TwoRow { n, i } => {
            let range: Vec<usize> = match i {
                Some(i) => vec![i],
                None => (0..=n).collect(),
            };
            let vals = range.into_iter().map(|i| (Some(i), big(&two_row_count(n, i)))).collect();
            ("two-row", json!({ "n": n }), vals)
        }
        FormulaCommand::M1 { m, n } => ("m1", json!({ "m": m, "n": n }), vec![(None, json!(m_minus_1_count(m, n)?))]),
        FormulaCommand::M2 { m, n } => ("m2", json!({ "m": m, "n": n }), vec![(None, json!(m_minus_2_count(m, n)?))]),
        FormulaCommand::TailThreshold { m, n } => (
            "tail-threshold",
            json!({ "m": m, "n": n }),
            vec![(None, json!(tail_end_threshold(m, n)?))],
        ),
    };
    let show = |v: &Value| v.as_str().map_or_else(|| v.to_string(), str::to_string);
    Ok(match fmt {
        Format::Text => values
            .iter()
            .map(|(i, v)| match i {
                Some(i) if values.len() > 1 => format!("i={i} {}\n", show(v)),
                _ => format!("{}\n", show(v)),
            })
            .collect(),
        Format::Json => {
            let value = if values.len() == 1 && values[0].0.is_none() {
                values[0].1.clone()
            } else {
                json!(values.iter().map(|(i, v)| json!({ "i": i, "value": v })).collect::<Vec<_>>())
            };
            json_line(json!({ "formula": name, "params": params, "value": value }))
        }
        Format::Csv => csv_lines(
            "i,value",
            values
                .iter()
                .map(|(i, v)| format!("{},{}", i.map(|i| i.to_string()).unwrap_or_default(), show(v))),
        ),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if let Some(note) = &out.note {
                eprint!("{note}");
            }
            let written = match &cli.out {
                Some(path) => std::fs::write(path, &out.body),
                None => {
                    print!("{}", out.body);
                    Ok(())
                }
            };
            if let Err(e) = written {
                let msg = json!({ "error": "io", "message": e.to_string() });
                eprintln!("{msg}");
                return ExitCode::FAILURE;
            }
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("{}", json!({ "error": f.code(), "message": f.message() }));
            ExitCode::FAILURE
        }
    }
}
