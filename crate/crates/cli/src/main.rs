use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use waterfall::bench::{
    compare, read_csv, run_suite, success_line, write_csv, BenchOptions, BenchRow,
};
use waterfall::engine::ProofStatus;
use waterfall::syntax::{load, load_theory};
use waterfall::{
    bundled, parse_term, prove, Config, GenAlgo, Heuristic, Preset, Theory, TraceLevel,
};

const EXIT_PROVED: u8 = 0;
const EXIT_FAILED: u8 = 1;
const EXIT_DISPROVED: u8 = 2;
const EXIT_USAGE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "waterfall",
    version,
    about = "Boyer-Moore style waterfall prover"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Prove a single conjecture and print its trace.
    Prove(ProveArgs),
    /// Prove every conjecture of a suite and write a CSV of metrics.
    Bench(BenchArgs),
    /// Report conjectures whose result differs between bench CSVs.
    Compare(CompareArgs),
}

#[derive(Args)]
struct TheoryArgs {
    /// Theory file, or a bundled name (peano, lists); repeatable, loaded in order.
    #[arg(long = "theory", value_name = "FILE")]
    theories: Vec<String>,
}

#[derive(Args)]
struct ProverArgs {
    /// System instance: BM, BME, BMR, BMG, BMG' or BMF.
    #[arg(long, default_value = "BMF")]
    preset: String,
    /// Generalization algorithm: bm, aderhold, aderhold-noeq, optionally with +apart.
    #[arg(long)]
    gen: Option<String>,
    /// Comma-separated heuristic order (taut,cnf,setify,subst,simp,equal,gen,irrel).
    #[arg(long)]
    order: Option<String>,
    /// Maximum variable depth before the proof is cut off; 0 disables the check.
    #[arg(long)]
    max_depth: Option<usize>,
    /// Random instantiations tried per counterexample check.
    #[arg(long)]
    cex_checks: Option<usize>,
    /// Maximum depth of generated counterexample terms.
    #[arg(long)]
    cex_depth: Option<usize>,
    #[arg(long, env = "BM_SEED")]
    seed: Option<u64>,
    /// Per-conjecture timeout in seconds; 0 disables it.
    #[arg(long)]
    timeout: Option<u64>,
}

#[derive(Clone, Copy, ValueEnum)]
enum TraceMode {
    Normal,
    Tree,
    Silent,
    Jsonl,
}

#[derive(Args)]
struct ProveArgs {
    #[command(flatten)]
    theory: TheoryArgs,
    #[arg(long)]
    goal: String,
    #[command(flatten)]
    prover: ProverArgs,
    #[arg(long, value_enum, default_value = "normal")]
    trace: TraceMode,
}

#[derive(Args)]
struct BenchArgs {
    #[command(flatten)]
    theory: TheoryArgs,
    /// File (or bundled name) whose `conjecture` declarations form the suite.
    #[arg(long)]
    suite: String,
    #[command(flatten)]
    prover: ProverArgs,
    /// CSV destination; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Write 0 in the time_ms column so that repeated runs are byte-identical.
    #[arg(long)]
    omit_times: bool,
}

#[derive(Args)]
struct CompareArgs {
    /// Two or more CSV files written by `bench`.
    #[arg(required = true, num_args = 2..)]
    files: Vec<PathBuf>,
}

#[derive(Debug)]
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn read_source(name: &str) -> Result<String, UsageError> {
    let path = Path::new(name);
    if path.exists() {
        return fs::read_to_string(path).map_err(|e| UsageError(format!("{name}: {e}")));
    }
    bundled::source(name)
        .map(str::to_string)
        .ok_or_else(|| UsageError(format!("{name}: no such file or bundled theory")))
}

/// Bundled files other than `peano` build on the natural numbers, which are
/// loaded first when missing.
fn with_prerequisites(th: Theory, name: &str) -> Result<Theory, UsageError> {
    if !Path::new(name).exists() && bundled::source(name).is_some() && !th.has_sort("num") {
        let stem = name.trim_end_matches(".bmt");
        if stem != "peano" {
            return Ok(load_theory(&th, bundled::PEANO)?);
        }
    }
    Ok(th)
}

fn load_theories(names: &[String]) -> Result<Theory, UsageError> {
    if names.is_empty() {
        return Ok(bundled::peano());
    }
    let mut th = Theory::new();
    for name in names {
        th = with_prerequisites(th, name)?;
        th =
            load_theory(&th, &read_source(name)?).map_err(|e| UsageError(format!("{name}:{e}")))?;
    }
    Ok(th)
}

fn config(a: &ProverArgs) -> Result<Config, UsageError> {
    let preset = Preset::parse(&a.preset)
        .ok_or_else(|| UsageError(format!("unknown preset `{}`", a.preset)))?;
    let mut cfg = Config::preset(preset);
    if let Some(g) = &a.gen {
        let (algo, eq) = GenAlgo::parse(g)?;
        cfg.gen_algo = algo;
        if let Some(eq) = eq {
            cfg.eq_criterion = eq;
        }
    }
    if let Some(o) = &a.order {
        cfg.heuristic_order = Heuristic::parse_order(o)?;
    }
    if let Some(d) = a.max_depth {
        cfg.max_depth = (d > 0).then_some(d);
    }
    if let Some(n) = a.cex_checks {
        cfg.disprover.checks_per_call = n;
    }
    if let Some(d) = a.cex_depth {
        cfg.disprover.max_example_depth = d;
    }
    if let Some(s) = a.seed {
        cfg.disprover.rng_seed = s;
    }
    if let Some(t) = a.timeout {
        cfg.timeout = (t > 0).then(|| Duration::from_secs(t));
    }
    Ok(cfg)
}

fn cmd_prove(a: ProveArgs) -> Result<u8, UsageError> {
    let th = load_theories(&a.theory.theories)?;
    let goal = parse_term(&th, &a.goal).map_err(|e| UsageError(format!("goal:{e}")))?;
    let level = match a.trace {
        TraceMode::Normal | TraceMode::Jsonl => TraceLevel::Normal,
        TraceMode::Tree => TraceLevel::Tree,
        TraceMode::Silent => TraceLevel::Silent,
    };
    let cfg = config(&a.prover)?.with_trace(level);
    let outcome = prove(&goal, &th, &cfg);
    let mut out = io::stdout().lock();
    let text = match a.trace {
        TraceMode::Jsonl => outcome.trace.to_jsonl(),
        _ => outcome.trace.render(),
    };
    out.write_all(text.as_bytes())?;
    let m = &outcome.metrics;
    eprintln!(
        "{}: steps {} inductions {} generalizations {} overgeneralizations {} time {} ms",
        outcome.label(),
        m.steps,
        m.inductions,
        m.generalizations,
        m.overgeneralizations,
        m.time_ms
    );
    Ok(match outcome.status {
        ProofStatus::Proved => EXIT_PROVED,
        ProofStatus::Disproved { .. } => EXIT_DISPROVED,
        ProofStatus::Failed(_) | ProofStatus::DepthCutoff { .. } => EXIT_FAILED,
    })
}

fn cmd_bench(a: BenchArgs) -> Result<u8, UsageError> {
    let th = load_theories(&a.theory.theories)?;
    let th = with_prerequisites(th, &a.suite)?;
    let loaded =
        load(&th, &read_source(&a.suite)?).map_err(|e| UsageError(format!("{}:{e}", a.suite)))?;
    let cfg = config(&a.prover)?;
    let opts = BenchOptions {
        jobs: a.jobs.max(1),
        record_times: !a.omit_times,
    };
    let results = run_suite(&loaded.conjectures, &loaded.theory, &cfg, &opts)?;
    let rows: Vec<BenchRow> = results.into_iter().map(|(r, _)| r).collect();
    match &a.out {
        Some(path) => write_csv(&rows, fs::File::create(path)?)?,
        None => write_csv(&rows, io::stdout().lock())?,
    }
    eprintln!("{}", success_line(&rows));
    Ok(EXIT_PROVED)
}

fn cmd_compare(a: CompareArgs) -> Result<u8, UsageError> {
    let mut runs = Vec::new();
    for f in &a.files {
        let file = fs::File::open(f).map_err(|e| UsageError(format!("{}: {e}", f.display())))?;
        let rows = read_csv(file).map_err(|e| UsageError(format!("{}: {e}", f.display())))?;
        let label = f
            .file_stem()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| f.display().to_string());
        runs.push((label, rows));
    }
    print!("{}", compare(&runs).render());
    Ok(EXIT_PROVED)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_PROVED
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Prove(a) => cmd_prove(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Compare(a) => cmd_compare(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
