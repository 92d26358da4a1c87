//! The three-row inversion tables: `(n,n,n)` beside `(n+1,n,n−1)` for
//! `n = 2..=5`, regenerated by enumeration and compared with golden copies.

use serde::{Deserialize, Serialize};

use crate::enumeration::{inversion_distribution, EnumConfig, InversionDistribution};
use crate::error::{Error, Result};
use crate::partition::Partition;

pub const APPENDIX_SIZES: [usize; 4] = [2, 3, 4, 5];

pub fn golden_text(n: usize) -> Option<&'static str> {
    match n {
        2 => Some(include_str!("../fixtures/appendix_222.txt")),
        3 => Some(include_str!("../fixtures/appendix_333.txt")),
        4 => Some(include_str!("../fixtures/appendix_444.txt")),
        5 => Some(include_str!("../fixtures/appendix_555.txt")),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub i: usize,
    pub rectangle: u64,
    /// The stair-step entry printed on this row, as `(j, |S_j|)`.
    pub stair_step: Option<(usize, u64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AppendixTable {
    pub rectangle: Partition,
    pub stair_step: Partition,
    pub rows: Vec<Row>,
    pub totals: (u64, u64),
}

/// Row of the rectangle column beside which stair-step entry `j` is shown:
/// one below it up to `j = n − 2`, then `m − 1` below, as in the paper.
fn display_row(j: usize, m: usize, n: usize) -> usize {
    if j + 2 <= n {
        j + 1
    } else {
        j + m - 1
    }
}

impl AppendixTable {
    pub fn from_distributions(rect: &InversionDistribution, step: &InversionDistribution) -> Self {
        let m = rect.shape.rows();
        let n = rect.shape.cols();
        let mut rows: Vec<Row> = rect
            .counts
            .iter()
            .enumerate()
            .map(|(i, &c)| Row {
                i,
                rectangle: c,
                stair_step: None,
            })
            .collect();
        for (j, &c) in step.counts.iter().enumerate() {
            let i = display_row(j, m, n);
            if let Some(row) = rows.get_mut(i) {
                row.stair_step = Some((j, c));
            }
        }
        AppendixTable {
            rectangle: rect.shape.clone(),
            stair_step: step.shape.clone(),
            rows,
            totals: (rect.total(), step.total()),
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:<6}{:>9}{:>9}\n",
            "",
            format!("({})", self.rectangle),
            format!("({})", self.stair_step)
        );
        for row in &self.rows {
            let label = format!("m={}", row.i);
            match row.stair_step {
                Some((j, c)) => {
                    out.push_str(&format!("{label:<6}{:>9}{c:>9}  m={j}\n", row.rectangle))
                }
                None => out.push_str(&format!("{label:<6}{:>9}\n", row.rectangle)),
            }
        }
        out.push_str(&format!(
            "{:<6}{:>9}{:>9}  TOTAL\n",
            "TOTAL", self.totals.0, self.totals.1
        ));
        out
    }

    /// Parses the text layout produced by [`AppendixTable::to_text`].
    pub fn parse(text: &str) -> Result<Self> {
        let bad = |msg: String| Error::Domain(format!("malformed appendix table: {msg}"));
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| bad("empty".into()))?;
        let shapes: Vec<Partition> = header
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<_>>()?;
        let [rectangle, stair_step] = <[Partition; 2]>::try_from(shapes)
            .map_err(|_| bad(format!("header {header:?}")))?;
        let mut rows = Vec::new();
        let mut totals = None;
        let number = |s: &str| s.parse::<u64>().map_err(|_| bad(format!("number {s:?}")));
        let index = |s: &str| {
            s.strip_prefix("m=")
                .and_then(|v| v.parse::<usize>().ok())
                .ok_or_else(|| bad(format!("label {s:?}")))
        };
        for line in lines {
            let fields: Vec<&str> = line.split_whitespace().collect();
            match fields.as_slice() {
                ["TOTAL", a, b, "TOTAL"] => totals = Some((number(a)?, number(b)?)),
                [label, a] => rows.push(Row {
                    i: index(label)?,
                    rectangle: number(a)?,
                    stair_step: None,
                }),
                [label, a, b, right] => rows.push(Row {
                    i: index(label)?,
                    rectangle: number(a)?,
                    stair_step: Some((index(right)?, number(b)?)),
                }),
                _ => return Err(bad(format!("line {line:?}"))),
            }
        }
        Ok(AppendixTable {
            rectangle,
            stair_step,
            rows,
            totals: totals.ok_or_else(|| bad("no TOTAL line".into()))?,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let rect = self.rectangle.to_string();
        let step = self.stair_step.to_string();
        w.write_record(["rectangle", "stair_step", "i", "rectangle_count", "j", "stair_step_count"])
            .expect("in-memory write");
        for row in &self.rows {
            let (j, c) = match row.stair_step {
                Some((j, c)) => (j.to_string(), c.to_string()),
                None => (String::new(), String::new()),
            };
            w.write_record([&rect, &step, &row.i.to_string(), &row.rectangle.to_string(), &j, &c])
                .expect("in-memory write");
        }
        w.write_record([&rect, &step, "TOTAL", &self.totals.0.to_string(), "TOTAL", &self.totals.1.to_string()])
            .expect("in-memory write");
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
    }
}

/// The table for `(n,n,n)` and `(n+1,n,n−1)` by enumeration.
pub fn generate(n: usize, config: &EnumConfig) -> Result<AppendixTable> {
    let rect = Partition::rectangle(3, n)?;
    let step = rect.rectangle_stair_step()?;
    Ok(AppendixTable::from_distributions(
        &inversion_distribution(&rect, config)?,
        &inversion_distribution(&step, config)?,
    ))
}

#[derive(Debug, Clone)]
pub struct AppendixCheck {
    pub generated: AppendixTable,
    pub golden: AppendixTable,
    pub rendered: String,
    pub golden_text: &'static str,
}

impl AppendixCheck {
    pub fn matches(&self) -> bool {
        self.rendered == self.golden_text && self.generated == self.golden
    }

    /// Line-by-line differences, `-` for the golden copy and `+` for the
    /// regenerated table.
    pub fn diff(&self) -> String {
        let want: Vec<&str> = self.golden_text.lines().collect();
        let got: Vec<&str> = self.rendered.lines().collect();
        let mut out = String::new();
        for k in 0..want.len().max(got.len()) {
            let (a, b) = (want.get(k), got.get(k));
            if a != b {
                if let Some(a) = a {
                    out.push_str(&format!("-{a}\n"));
                }
                if let Some(b) = b {
                    out.push_str(&format!("+{b}\n"));
                }
            }
        }
        out
    }
}

pub fn check(n: usize, config: &EnumConfig) -> Result<AppendixCheck> {
    let golden_text = golden_text(n)
        .ok_or_else(|| Error::Domain(format!("no appendix table for n = {n}; choose 2..=5")))?;
    let golden = AppendixTable::parse(golden_text)?;
    let generated = generate(n, config)?;
    Ok(AppendixCheck {
        rendered: generated.to_text(),
        generated,
        golden,
        golden_text,
    })
}
