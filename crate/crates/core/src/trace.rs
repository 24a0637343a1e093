//! Proof traces: a flat event log with a text rendering in the classic
//! waterfall style and a line-delimited JSON form.
//!
//! JSON schema: one object per line, discriminated by `"event"`:
//!
//! | event          | fields |
//! |----------------|--------|
//! | `goal`         | `clause` |
//! | `poured`       | `clause`, `waterfall`, `level`, `case_start` |
//! | `applied`      | `heuristic`, `name`, `result`, `produced` |
//! | `proven`       | `clause` |
//! | `loop_skipped` | `clause`, `heuristics` |
//! | `pooled`       | `clause` |
//! | `rejected`     | `clause`, `verdict` |
//! | `induction_on` | `clause`, `variable`, `cases` |
//! | `note`         | `message` |
//! | `depth_cutoff` | `clause`, `depth` |
//! | `disproved`    | `clause`, `reason`, `witness` |
//! | `failed`       | `reason` |
//! | `proved`       | `clause` |

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::disprove::Verdict;
use crate::heuristics::Heuristic;
use crate::syntax::{print_clause_curried, print_term_curried};
use crate::term::{Bindings, Clause};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TraceLevel {
    Silent,
    #[default]
    Normal,
    Tree,
}

impl TraceLevel {
    pub fn parse(s: &str) -> Option<TraceLevel> {
        match s {
            "silent" => Some(TraceLevel::Silent),
            "normal" => Some(TraceLevel::Normal),
            "tree" => Some(TraceLevel::Tree),
            _ => None,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "event", rename_all = "snake_case")]
pub enum Event {
    Goal {
        clause: Clause,
    },
    Poured {
        clause: Clause,
        /// Identifies the waterfall instance, and thus its warehouse.
        waterfall: usize,
        level: usize,
        case_start: bool,
    },
    Applied {
        heuristic: Heuristic,
        name: String,
        result: String,
        produced: usize,
    },
    Proven {
        clause: Clause,
    },
    LoopSkipped {
        clause: Clause,
        heuristics: Vec<Heuristic>,
    },
    Pooled {
        clause: Clause,
    },
    Rejected {
        clause: Clause,
        verdict: Verdict,
    },
    InductionOn {
        clause: Clause,
        variable: String,
        cases: usize,
    },
    Note {
        message: String,
    },
    DepthCutoff {
        clause: Clause,
        depth: usize,
    },
    Disproved {
        clause: Clause,
        reason: String,
        witness: Option<Bindings>,
    },
    Failed {
        reason: String,
    },
    Proved {
        clause: Clause,
    },
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Trace {
    pub level: TraceLevel,
    pub events: Vec<Event>,
}

fn cl(c: &Clause) -> String {
    print_clause_curried(c)
}

fn witness_text(b: &Bindings) -> String {
    b.iter()
        .map(|(v, t)| format!("{} = {}", v.name, print_term_curried(t)))
        .collect::<Vec<_>>()
        .join(", ")
}

impl Trace {
    pub fn new(level: TraceLevel) -> Self {
        Trace {
            level,
            events: Vec::new(),
        }
    }

    pub fn push(&mut self, e: Event) {
        if self.level != TraceLevel::Silent {
            self.events.push(e);
        }
    }

    /// Human-readable rendering; empty at the silent level.
    pub fn render(&self) -> String {
        let mut out = String::new();
        if self.level == TraceLevel::Silent {
            return out;
        }
        let mut since_induction = 0;
        for (i, e) in self.events.iter().enumerate() {
            match e {
                Event::Goal { clause } => {
                    let _ = writeln!(out, "{}", cl(clause));
                }
                Event::Poured {
                    clause, case_start, ..
                } => {
                    if *case_start {
                        out.push_str("\n\n");
                    }
                    let _ = writeln!(out, " {}", cl(clause));
                }
                Event::Applied { name, .. } => {
                    let _ = writeln!(out, "-> {name}");
                }
                Event::Proven { clause } => {
                    let _ = writeln!(out, "Proven:|- {}", cl(clause));
                }
                Event::LoopSkipped { .. } | Event::Pooled { .. } => {}
                Event::Rejected { clause, .. } => {
                    let _ = writeln!(out, "Rejected generalization:{}", cl(clause));
                }
                Event::InductionOn { clause, .. } => {
                    if self.level == TraceLevel::Tree {
                        out.push_str(&render_tree(&self.events[since_induction..i]));
                    }
                    since_induction = i + 1;
                    let _ = writeln!(out, "Doing induction on:{}", cl(clause));
                }
                Event::Note { message } => {
                    let _ = writeln!(out, "Note: {message}");
                }
                Event::DepthCutoff { clause, depth } => {
                    let _ = write!(
                        out,
                        "\n\nDepth cutoff: variable depth {depth} in {}\n",
                        cl(clause)
                    );
                }
                Event::Disproved {
                    clause,
                    reason,
                    witness,
                } => {
                    let _ = write!(out, "\n\nDisproved: {} ({reason})", cl(clause));
                    if let Some(w) = witness {
                        let _ = write!(out, " counterexample: {}", witness_text(w));
                    }
                    out.push('\n');
                }
                Event::Failed { reason } => {
                    let _ = write!(out, "\n\nFailed: {reason}\n");
                }
                Event::Proved { clause } => {
                    let _ = write!(out, "\n\n|- {}\n", cl(clause));
                }
            }
        }
        out
    }

    /// One JSON object per event.
    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        for e in &self.events {
            out.push_str(&serde_json::to_string(e).expect("events serialize"));
            out.push('\n');
        }
        out
    }
}

/// Indented outline of the clauses poured since the last induction.
fn render_tree(events: &[Event]) -> String {
    let mut lines: Vec<(usize, String, Vec<String>)> = Vec::new();
    for e in events {
        match e {
            Event::Goal { clause } => lines.push((0, cl(clause), Vec::new())),
            Event::Poured { clause, level, .. } => lines.push((*level, cl(clause), Vec::new())),
            Event::Applied { heuristic, .. } => {
                if let Some(l) = lines.last_mut() {
                    l.2.push(heuristic.id().to_string());
                }
            }
            Event::Proven { .. } => {
                if let Some(l) = lines.last_mut() {
                    l.2.push("proved".into());
                }
            }
            Event::Pooled { .. } => {
                if let Some(l) = lines.last_mut() {
                    l.2.push("pool".into());
                }
            }
            Event::LoopSkipped { heuristics, .. } => {
                if let Some(l) = lines.last_mut() {
                    let ids: Vec<_> = heuristics.iter().map(|h| h.id()).collect();
                    l.2.push(format!("skip {}", ids.join(",")));
                }
            }
            _ => {}
        }
    }
    let mut out = String::from("Waterfall tree:\n");
    for (level, text, notes) in lines {
        let _ = writeln!(
            out,
            "{}{} [{}]",
            "  ".repeat(level + 1),
            text,
            notes.join(" ")
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Term;

    #[test]
    fn silent_renders_nothing() {
        let mut t = Trace::new(TraceLevel::Silent);
        t.push(Event::Failed { reason: "x".into() });
        assert!(t.events.is_empty());
        assert_eq!(t.render(), "");
    }

    #[test]
    fn failure_reason_is_last_line() {
        let mut t = Trace::new(TraceLevel::Normal);
        t.push(Event::Goal {
            clause: Clause::unit(Term::var("p", "bool")),
        });
        t.push(Event::Failed {
            reason: "no induction variable".into(),
        });
        assert!(t
            .render()
            .trim_end()
            .ends_with("Failed: no induction variable"));
        let json = t.to_jsonl();
        assert_eq!(json.lines().count(), 2);
        assert!(json.contains(r#""event":"failed""#));
    }

    #[test]
    fn levels_parse() {
        assert_eq!(TraceLevel::parse("tree"), Some(TraceLevel::Tree));
        assert_eq!(TraceLevel::parse("loud"), None);
    }
}
