//! A Boyer-Moore style inductive theorem prover.
//!
//! Conjectures are clauses poured over a *waterfall* of heuristics
//! (tautology checking, clausal form, duplicate removal, substitution,
//! rewriting, cross-fertilization, generalization and irrelevance
//! elimination). Clauses that survive every heuristic are proved by
//! structural induction over user-declared shells, and the resulting cases
//! are poured over a fresh waterfall.
//!
//! ```
//! use waterfall::{bundled, parse_term, prove, Config, Preset};
//!
//! let th = bundled::peano();
//! let goal = parse_term(&th, "m + 0 = m").unwrap();
//! let outcome = prove(&goal, &th, &Config::preset(Preset::Bmf));
//! assert!(outcome.is_proved());
//! ```

pub mod bench;
pub mod disprove;
pub mod engine;
pub mod generalize;
pub mod heuristics;
pub mod rewrite;
pub mod syntax;
pub mod term;
pub mod theory;
pub mod trace;

pub use disprove::{Disprover, Verdict};
pub use engine::{prove, Config, GenAlgo, Metrics, Preset, ProofOutcome};
pub use heuristics::{Heuristic, HeuristicOutcome};
pub use rewrite::Engine;
pub use syntax::{parse_term, print_clause, print_term, SyntaxError};
pub use term::{Bindings, Clause, Term, Var};
pub use theory::{bundled, Theory, TheoryError};
pub use trace::TraceLevel;
