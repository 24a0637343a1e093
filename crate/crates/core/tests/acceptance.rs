//! One PASS/FAIL line per acceptance criterion. Run with
//! `cargo test --release --test acceptance -- --nocapture` to see the report.

mod common;

use std::time::{Duration, Instant};

use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

use common::{eval, formula, random_env, rng, skeleton, Value};
use waterfall::bench::{run_suite, write_csv, BenchOptions, BenchRow};
use waterfall::engine::ProofStatus;
use waterfall::heuristics::cnf;
use waterfall::syntax::{load, load_theory, print_term_curried};
use waterfall::term::free_vars;
use waterfall::{
    bundled, parse_term, print_term, prove, Clause, Config, Disprover, Preset, ProofOutcome,
    Theory, Verdict,
};

struct Report {
    lines: Vec<(usize, bool, String)>,
}

impl Report {
    fn record(&mut self, id: usize, ok: bool, detail: String) {
        println!(
            "criterion {id}: {} {detail}",
            if ok { "PASS" } else { "FAIL" }
        );
        self.lines.push((id, ok, detail));
    }
}

fn run(th: &Theory, goal: &str, cfg: &Config) -> (ProofOutcome, Duration) {
    let g = parse_term(th, goal).unwrap_or_else(|e| panic!("{goal}: {e}"));
    let start = Instant::now();
    let out = prove(&g, th, cfg);
    (out, start.elapsed())
}

fn successor_trace(r: &mut Report) {
    let th = bundled::peano();
    let (out, t) = run(&th, "SUC(m) = m + SUC(0)", &Config::default());
    let golden = include_str!("golden/successor.txt");
    let ok = out.is_proved() && out.trace.render() == golden && t < Duration::from_secs(1);
    r.record(
        1,
        ok,
        format!(
            "trace matches golden={} time={t:?}",
            out.trace.render() == golden
        ),
    );
}

const BM_LEMMAS: [(&str, usize); 9] = [
    ("m + n = n + m", 3),
    ("m + (n + p) = (m + n) + p", 1),
    ("(m + n = m + p) <=> (n = p)", 1),
    ("m * n = n * m", 7),
    ("m * (n + p) = m * n + m * p", 4),
    ("(SUC m <= n) <=> (m < n)", 2),
    ("(m < SUC n) <=> (m <= n)", 4),
    ("(m <= n) <=> (m < n \\/ m = n)", 4),
    ("(m + n) - (m + p) = n - p", 2),
];

fn bm_lemmas(r: &mut Report) {
    let th = bundled::peano();
    let cfg = Config::preset(Preset::Bm);
    let mut ok = true;
    let mut counts = Vec::new();
    for (goal, expected) in BM_LEMMAS {
        let (out, t) = run(&th, goal, &cfg);
        let ind = out.metrics.inductions;
        counts.push(format!("{ind}/{expected}"));
        ok &= out.is_proved() && t < Duration::from_secs(10) && ind.abs_diff(expected) <= 2;
    }
    r.record(
        2,
        ok,
        format!("inductions (got/expected) {}", counts.join(" ")),
    );
}

fn bmg_lemmas(r: &mut Report) {
    let th = bundled::lists();
    let cfg = Config::preset(Preset::Bmg);
    let goals = [
        "LENGTH (REVERSE x) = LENGTH x",
        "REVERSE (REVERSE x) = x",
        "REVERSE (APPEND (REVERSE x) (REVERSE y)) = APPEND y x",
        "m < n \\/ n < m \\/ m = n",
    ];
    let mut ok = true;
    let mut got = Vec::new();
    for goal in goals {
        let (out, t) = run(&th, goal, &cfg);
        got.push(out.label());
        ok &= out.is_proved() && t < Duration::from_secs(30);
    }
    r.record(3, ok, format!("{got:?}"));
}

fn preset_matrix(r: &mut Report) {
    let th = bundled::peano();
    let presets = [Preset::Bmr, Preset::Bmg, Preset::BmgNoEq];
    let rows: [(&str, [bool; 3]); 6] = [
        ("m * (n + p) = m * n + m * p", [true, false, false]),
        ("m + n <= m + p <=> n <= p", [true, false, false]),
        ("m * n = 0 <=> m = 0 \\/ n = 0", [true, false, true]),
        ("m EXP n = 0 <=> m = 0 /\\ ~(n = 0)", [true, false, true]),
        ("~(m < n /\\ n < m)", [false, true, true]),
        ("m < n \\/ n < m \\/ m = n", [false, true, true]),
    ];
    let mut mismatches = Vec::new();
    for (goal, expect) in rows {
        for (p, want) in presets.iter().zip(expect) {
            let (out, _) = run(&th, goal, &Config::preset(*p));
            if out.is_proved() != want {
                mismatches.push(format!("[{goal}] {}: {}", p.name(), out.label()));
            }
        }
    }
    r.record(
        4,
        mismatches.is_empty(),
        format!("mismatches {mismatches:?}"),
    );
}

const PARITY: [&str; 7] = [
    "~EVEN n <=> ODD n",
    "EVEN n \\/ ODD n",
    "~(EVEN n /\\ ODD n)",
    "EVEN (m + n) <=> (EVEN m <=> EVEN n)",
    "EVEN (m * n) <=> EVEN m \\/ EVEN n",
    "EVEN (m EXP n) <=> EVEN m /\\ ~(n = 0)",
    "ODD (m + n) <=> ~(ODD m <=> ODD n)",
];

fn loops(r: &mut Report) {
    let th = bundled::peano();
    let cfg = Config {
        max_depth: Some(12),
        ..Config::preset(Preset::Bm)
    };
    let mut terminated = true;
    for goal in PARITY {
        let (out, t) = run(&th, goal, &cfg);
        terminated &= !out.is_proved() && out.label() != "timeout" && t < Duration::from_secs(120);
    }
    let helped = load_theory(&th, "rewrite ~ODD n <=> EVEN n;").unwrap();
    let mut after = Vec::new();
    for goal in PARITY {
        let (out, _) = run(&helped, goal, &cfg);
        after.push(out.label());
    }
    let proved = after.iter().filter(|l| **l == "proved").count();
    r.record(
        5,
        terminated && proved == PARITY.len(),
        format!("all terminate unproved={terminated}; with rewrite {proved}/7 {after:?}"),
    );
}

fn vetoes(r: &mut Report) {
    let th = bundled::peano();
    let clause = |s: &str| Clause::unit(parse_term(&th, s).unwrap());
    let over = [clause("n <= n'"), clause("n <= n' * n")];
    let apart = clause("m + n = n' + m");
    let mut vetoed = [0; 2];
    let mut witnessed = 0;
    for seed in 0..10 {
        let dp = Disprover::with_seed(seed);
        for (k, c) in over.iter().enumerate() {
            if dp.check(c, &th).vetoes() {
                vetoed[k] += 1;
            }
        }
        if matches!(dp.check(&apart, &th), Verdict::Disproved(_)) {
            witnessed += 1;
        }
    }
    let ok = vetoed.iter().all(|&v| v >= 9) && witnessed >= 8;
    r.record(
        6,
        ok,
        format!(
            "vetoed n<=n' {}/10, n<=n'*n {}/10; m+n=n'+m witness {witnessed}/10",
            vetoed[0], vetoed[1]
        ),
    );
}

fn csv_bytes(rows: &[BenchRow]) -> Vec<u8> {
    let mut buf = Vec::new();
    write_csv(rows, &mut buf).unwrap();
    buf
}

/// Every free-variable assignment the oracle can judge makes `goal` true.
fn survives(goal: &waterfall::Term, seed: u64) -> bool {
    let mut g = rng(seed);
    let vars = free_vars(goal);
    (0..1000).all(|_| {
        let env = random_env(vars.iter().cloned(), &mut g);
        eval(goal, &env) != Some(Value::Bool(false))
    })
}

fn suite_and_properties(r: &mut Report) {
    let loaded = load(&bundled::peano(), bundled::SUITE_HOL).unwrap();
    let cfg = Config::preset(Preset::Bmf);
    let opts = BenchOptions {
        jobs: 4,
        record_times: false,
    };
    let start = Instant::now();
    let results = run_suite(&loaded.conjectures, &loaded.theory, &cfg, &opts).unwrap();
    let elapsed = start.elapsed();
    let rows: Vec<BenchRow> = results.iter().map(|(row, _)| row.clone()).collect();
    let proved = rows.iter().filter(|row| row.proved()).count();
    let rate = proved as f64 / rows.len() as f64;
    r.record(
        7,
        rows.len() >= 60 && rate >= 0.40 && elapsed < Duration::from_secs(15 * 60),
        format!(
            "{proved}/{} = {:.1}% in {elapsed:?}",
            rows.len(),
            100.0 * rate
        ),
    );

    let mut runner = TestRunner::deterministic();
    let th = bundled::peano();
    let round_trip = (0..1000).all(|_| {
        let t = formula().new_tree(&mut runner).unwrap().current();
        parse_term(&th, &print_term(&t)).ok() == Some(t.clone())
            && parse_term(&th, &print_term_curried(&t)).ok() == Some(t)
    });

    let cnf_ok = (0..2000).all(|_| {
        let t = skeleton().new_tree(&mut runner).unwrap().current();
        let Some(cls) = cnf(&t) else { return true };
        let vars: Vec<_> = free_vars(&t).into_iter().collect();
        (0u32..1 << vars.len()).all(|bits| {
            let env = vars
                .iter()
                .enumerate()
                .map(|(i, v)| (v.clone(), Value::Bool(bits >> i & 1 == 1)))
                .collect();
            let want = eval(&t, &env) == Some(Value::Bool(true));
            let got = cls
                .iter()
                .all(|c| c.iter().any(|l| eval(l, &env) == Some(Value::Bool(true))));
            want == got
        })
    });

    let sound = loaded
        .conjectures
        .iter()
        .zip(&results)
        .filter(|(_, (row, _))| row.proved())
        .all(|(c, _)| survives(&c.goal, 8));

    let records: Vec<_> = results
        .iter()
        .flat_map(|(_, o)| &o.generalizations)
        .collect();
    let recovers = records.iter().all(|g| g.recovers_input());

    let again = run_suite(
        &loaded.conjectures,
        &loaded.theory,
        &cfg,
        &BenchOptions {
            jobs: 1,
            record_times: false,
        },
    )
    .unwrap();
    let again: Vec<BenchRow> = again.into_iter().map(|(row, _)| row).collect();
    let deterministic = csv_bytes(&rows) == csv_bytes(&again);

    r.record(
        8,
        round_trip && cnf_ok && sound && recovers && deterministic,
        format!(
            "(a) round trip {round_trip} (b) cnf {cnf_ok} (c) sampled soundness {sound} \
             (d) {} generalizations recover input {recovers} (e) identical csv {deterministic}",
            records.len()
        ),
    );
}

#[test]
fn acceptance_criteria() {
    let mut r = Report { lines: Vec::new() };
    successor_trace(&mut r);
    bm_lemmas(&mut r);
    bmg_lemmas(&mut r);
    preset_matrix(&mut r);
    loops(&mut r);
    vetoes(&mut r);
    suite_and_properties(&mut r);
    let failed: Vec<_> = r
        .lines
        .iter()
        .filter(|(_, ok, _)| !ok)
        .map(|(id, _, d)| format!("{id}: {d}"))
        .collect();
    assert!(failed.is_empty(), "failed criteria:\n{}", failed.join("\n"));
}

#[test]
fn disproved_goal_reports_witness() {
    let th = bundled::peano();
    let (out, _) = run(&th, "m + n = n + SUC m", &Config::default());
    match out.status {
        ProofStatus::Disproved {
            witness: Some(w), ..
        } => assert!(!w.is_empty()),
        other => panic!("expected a disproof with witness, got {other:?}"),
    }
}
