use waterfall::trace::Event;
use waterfall::{bundled, parse_term, prove, Config, Preset, TraceLevel};

const SUCCESSOR: &str = include_str!("golden/successor.txt");

fn run(goal: &str, level: TraceLevel) -> waterfall::ProofOutcome {
    let th = bundled::peano();
    let g = parse_term(&th, goal).unwrap();
    prove(&g, &th, &Config::preset(Preset::Bmf).with_trace(level))
}

#[test]
fn successor_lemma_matches_golden_trace() {
    let out = run("SUC(m) = m + SUC(0)", TraceLevel::Normal);
    assert!(out.is_proved());
    assert_eq!(out.trace.render(), SUCCESSOR);
    assert_eq!(out.metrics.inductions, 1);
}

#[test]
fn event_sequence_of_successor_lemma() {
    let out = run("SUC(m) = m + SUC(0)", TraceLevel::Normal);
    let names: Vec<&str> = out
        .trace
        .events
        .iter()
        .filter_map(|e| match e {
            Event::InductionOn { variable, .. } => Some(if variable == "m" {
                "induct m"
            } else {
                "induct ?"
            }),
            Event::Applied { heuristic, .. } => Some(heuristic.id()),
            Event::Proven { .. } => Some("proven"),
            _ => None,
        })
        .collect();
    assert_eq!(
        names,
        ["induct m", "simp", "proven", "cnf", "simp", "taut", "proven"]
    );
}

#[test]
fn jsonl_has_one_tagged_object_per_event() {
    let out = run("m + 0 = m", TraceLevel::Normal);
    let text = out.trace.to_jsonl();
    assert_eq!(text.lines().count(), out.trace.events.len());
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert!(v["event"].is_string());
    }
    assert!(text.lines().last().unwrap().contains(r#""event":"proved""#));
}

#[test]
fn tree_level_outlines_each_waterfall() {
    let out = run("m + n = n + m", TraceLevel::Tree);
    let text = out.trace.render();
    assert_eq!(
        text.matches("Waterfall tree:").count(),
        out.metrics.inductions
    );
}

#[test]
fn silent_level_records_nothing() {
    let out = run("m + n = n + m", TraceLevel::Silent);
    assert!(out.is_proved());
    assert!(out.trace.events.is_empty());
}
