//! Running conjecture suites and comparing their results.

use std::collections::BTreeMap;
use std::io::{Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::engine::{prove, Config, ProofOutcome};
use crate::syntax::Conjecture;
use crate::theory::Theory;
use crate::trace::TraceLevel;

pub const HEADER: [&str; 8] = [
    "name",
    "result",
    "time_ms",
    "steps",
    "inductions",
    "generalizations",
    "overgeneralizations",
    "failure_reason",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BenchRow {
    pub name: String,
    pub result: String,
    pub time_ms: u64,
    pub steps: usize,
    pub inductions: usize,
    pub generalizations: usize,
    pub overgeneralizations: usize,
    pub failure_reason: String,
}

impl BenchRow {
    pub fn from_outcome(name: &str, o: &ProofOutcome) -> Self {
        BenchRow {
            name: name.to_string(),
            result: o.label().to_string(),
            time_ms: o.metrics.time_ms,
            steps: o.metrics.steps,
            inductions: o.metrics.inductions,
            generalizations: o.metrics.generalizations,
            overgeneralizations: o.metrics.overgeneralizations,
            failure_reason: o.failure_reason(),
        }
    }

    pub fn proved(&self) -> bool {
        self.result == "proved"
    }
}

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("duplicate conjecture name `{0}`")]
    DuplicateName(String),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("unexpected columns {found:?}; expected {expected:?}")]
    Schema {
        found: Vec<String>,
        expected: Vec<String>,
    },
}

#[derive(Clone, Debug)]
pub struct BenchOptions {
    pub jobs: usize,
    /// Write zero instead of wall-clock times so that runs are byte-identical.
    pub record_times: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions {
            jobs: 1,
            record_times: true,
        }
    }
}

/// Prove every conjecture independently; results keep suite order.
pub fn run_suite(
    conjectures: &[Conjecture],
    th: &Theory,
    cfg: &Config,
    opts: &BenchOptions,
) -> Result<Vec<(BenchRow, ProofOutcome)>, BenchError> {
    let mut seen = std::collections::HashSet::new();
    for c in conjectures {
        if !seen.insert(&c.name) {
            return Err(BenchError::DuplicateName(c.name.clone()));
        }
    }
    let cfg = Config {
        trace_level: TraceLevel::Silent,
        ..cfg.clone()
    };
    let one = |c: &Conjecture| {
        let o = prove(&c.goal, th, &cfg);
        let mut row = BenchRow::from_outcome(&c.name, &o);
        if !opts.record_times {
            row.time_ms = 0;
        }
        (row, o)
    };
    Ok(execute(conjectures, opts.jobs, one))
}

#[cfg(feature = "parallel")]
fn execute<F>(items: &[Conjecture], jobs: usize, f: F) -> Vec<(BenchRow, ProofOutcome)>
where
    F: Fn(&Conjecture) -> (BenchRow, ProofOutcome) + Sync,
{
    use rayon::prelude::*;
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
        Ok(pool) => pool.install(|| items.par_iter().map(&f).collect()),
        Err(_) => items.iter().map(f).collect(),
    }
}

#[cfg(not(feature = "parallel"))]
fn execute<F>(items: &[Conjecture], _jobs: usize, f: F) -> Vec<(BenchRow, ProofOutcome)>
where
    F: Fn(&Conjecture) -> (BenchRow, ProofOutcome),
{
    items.iter().map(f).collect()
}

pub fn success_line(rows: &[BenchRow]) -> String {
    let proved = rows.iter().filter(|r| r.proved()).count();
    let pct = if rows.is_empty() {
        0.0
    } else {
        100.0 * proved as f64 / rows.len() as f64
    };
    format!("# success rate: {proved}/{} ({pct:.1}%)", rows.len())
}

/// CSV with a header, one row per conjecture and a trailing
/// `# success rate` comment (omitted for an empty suite).
pub fn write_csv<W: Write>(rows: &[BenchRow], mut out: W) -> Result<(), BenchError> {
    {
        let mut w = csv::WriterBuilder::new()
            .has_headers(false)
            .from_writer(&mut out);
        w.write_record(HEADER)?;
        for r in rows {
            w.serialize(r)?;
        }
        w.flush()?;
    }
    if !rows.is_empty() {
        writeln!(out, "{}", success_line(rows))?;
    }
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<BenchRow>, BenchError> {
    let mut r = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(input);
    let found: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
    if found != HEADER {
        return Err(BenchError::Schema {
            found,
            expected: HEADER.iter().map(|s| s.to_string()).collect(),
        });
    }
    r.deserialize()
        .collect::<Result<Vec<BenchRow>, _>>()
        .map_err(BenchError::from)
}

/// Conjectures whose result differs between runs, with the result in each
/// (`-` when missing).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Comparison {
    pub labels: Vec<String>,
    pub proved: Vec<usize>,
    pub totals: Vec<usize>,
    pub diffs: Vec<(String, Vec<String>)>,
}

pub fn compare(runs: &[(String, Vec<BenchRow>)]) -> Comparison {
    let mut order: Vec<String> = Vec::new();
    let mut table: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (i, (_, rows)) in runs.iter().enumerate() {
        for r in rows {
            let e = table.entry(r.name.clone()).or_insert_with(|| {
                order.push(r.name.clone());
                vec!["-".to_string(); runs.len()]
            });
            e[i] = r.result.clone();
        }
    }
    let diffs = order
        .into_iter()
        .filter_map(|name| {
            let results = table.remove(&name)?;
            results
                .iter()
                .any(|x| *x != results[0])
                .then_some((name, results))
        })
        .collect();
    Comparison {
        labels: runs.iter().map(|(l, _)| l.clone()).collect(),
        proved: runs
            .iter()
            .map(|(_, rows)| rows.iter().filter(|r| r.proved()).count())
            .collect(),
        totals: runs.iter().map(|(_, rows)| rows.len()).collect(),
        diffs,
    }
}

impl Comparison {
    pub fn render(&self) -> String {
        let name_w = self
            .diffs
            .iter()
            .map(|d| d.0.len())
            .max()
            .unwrap_or(4)
            .max(4);
        let col_w: Vec<usize> = self.labels.iter().map(|l| l.len().max(9)).collect();
        let mut out = String::new();
        out.push_str(&format!("{:name_w$}", "name"));
        for (l, w) in self.labels.iter().zip(&col_w) {
            out.push_str(&format!("  {l:w$}"));
        }
        out.push('\n');
        for (name, results) in &self.diffs {
            out.push_str(&format!("{name:name_w$}"));
            for (r, w) in results.iter().zip(&col_w) {
                out.push_str(&format!("  {r:w$}"));
            }
            out.push('\n');
        }
        if self.diffs.is_empty() {
            out.push_str("no differences\n");
        }
        for ((l, p), t) in self.labels.iter().zip(&self.proved).zip(&self.totals) {
            out.push_str(&format!("{l}: {p}/{t} proved\n"));
        }
        out
    }
}
