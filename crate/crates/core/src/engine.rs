//! The waterfall: clauses fall through the heuristics in order; whatever
//! survives is pooled and proved by structural induction, whose cases are
//! poured over a fresh waterfall.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::time::{Duration, Instant};

use serde::Serialize;

use crate::disprove::{Disprover, Verdict};
use crate::generalize::{generalize_heuristic, GenMemory, GenRecord};
use crate::heuristics::{
    clausal_form, equality, irrelevance, setify, simplify_heuristic, substitution, tautology,
    Heuristic, HeuristicOutcome,
};
use crate::rewrite::{Engine, DEFAULT_FUEL};
use crate::term::{apply_bindings, subsumes, variant_name, Bindings, Clause, Origin, Term, Var};
use crate::theory::Theory;
use crate::trace::{Event, Trace, TraceLevel};

pub use crate::generalize::{CommonAlgo, GenAlgo};

/// The six evaluated system instances.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Preset {
    Bm,
    Bme,
    Bmr,
    Bmg,
    BmgNoEq,
    Bmf,
}

impl Preset {
    pub const ALL: [Preset; 6] = [
        Preset::Bm,
        Preset::Bme,
        Preset::Bmr,
        Preset::Bmg,
        Preset::BmgNoEq,
        Preset::Bmf,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Preset::Bm => "BM",
            Preset::Bme => "BME",
            Preset::Bmr => "BMR",
            Preset::Bmg => "BMG",
            Preset::BmgNoEq => "BMG'",
            Preset::Bmf => "BMF",
        }
    }

    /// Case-insensitive; `BMG'` may also be written `BMGP` or `BMG-noeq`.
    pub fn parse(s: &str) -> Option<Preset> {
        match s.to_ascii_uppercase().as_str() {
            "BM" => Some(Preset::Bm),
            "BME" => Some(Preset::Bme),
            "BMR" => Some(Preset::Bmr),
            "BMG" => Some(Preset::Bmg),
            "BMG'" | "BMGP" | "BMG-NOEQ" => Some(Preset::BmgNoEq),
            "BMF" => Some(Preset::Bmf),
            _ => None,
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Config {
    pub heuristic_order: Vec<Heuristic>,
    pub simplify_engine: Engine,
    pub gen_algo: GenAlgo,
    pub eq_criterion: bool,
    /// Abort when a clause has a variable deeper than this.
    pub max_depth: Option<usize>,
    /// Loop elimination: per-waterfall skip records and the repeated
    /// induction check.
    pub warehouse: bool,
    /// Skip a pooled clause when an instance of one already proved from the
    /// same pool covers it.
    pub pool_subsumption: bool,
    pub disprover: Disprover,
    pub fuel: usize,
    pub trace_level: TraceLevel,
    pub preset: Option<Preset>,
    pub timeout: Option<Duration>,
    /// Upper bound on waterfall calls plus inductions.
    pub step_limit: usize,
}

pub const DEFAULT_MAX_DEPTH: usize = 12;
pub const DEFAULT_TIMEOUT: Duration = Duration::from_secs(120);
pub const DEFAULT_STEP_LIMIT: usize = 5000;

impl Default for Config {
    fn default() -> Self {
        Config::preset(Preset::Bmf)
    }
}

/// Which system components a configuration enables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Components {
    pub basic_heuristics: bool,
    pub counterexample_checker: bool,
    pub bm_simplifier: bool,
    pub hol_simplifier: bool,
    pub warehouse_filter: bool,
    pub max_depth: bool,
    pub tautology: bool,
    pub setify: bool,
    pub bm_generalization: bool,
    pub aderhold_generalization: bool,
    pub apart_generalization: bool,
    pub equation_criterion: bool,
}

impl Config {
    pub fn preset(p: Preset) -> Config {
        let full_order = Heuristic::DEFAULT_ORDER.to_vec();
        let (order, engine, gen, eq, extended) = match p {
            Preset::Bm => (
                full_order
                    .iter()
                    .copied()
                    .filter(|h| !matches!(h, Heuristic::Taut | Heuristic::Setify))
                    .collect(),
                Engine::Bm,
                GenAlgo::BM,
                false,
                false,
            ),
            Preset::Bme => (full_order, Engine::Bm, GenAlgo::BM, false, true),
            Preset::Bmr => (full_order, Engine::Full, GenAlgo::BM, false, true),
            Preset::Bmg => (
                full_order,
                Engine::Full,
                GenAlgo::ADERHOLD_APART,
                true,
                true,
            ),
            Preset::BmgNoEq => (
                full_order,
                Engine::Full,
                GenAlgo::ADERHOLD_APART,
                false,
                true,
            ),
            Preset::Bmf => (full_order, Engine::Full, GenAlgo::BM_APART, false, true),
        };
        Config {
            heuristic_order: order,
            simplify_engine: engine,
            gen_algo: gen,
            eq_criterion: eq,
            max_depth: extended.then_some(DEFAULT_MAX_DEPTH),
            warehouse: extended,
            pool_subsumption: extended,
            disprover: Disprover::default(),
            fuel: DEFAULT_FUEL,
            trace_level: TraceLevel::Normal,
            preset: Some(p),
            timeout: Some(DEFAULT_TIMEOUT),
            step_limit: DEFAULT_STEP_LIMIT,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.disprover.rng_seed = seed;
        self
    }

    pub fn with_trace(mut self, level: TraceLevel) -> Self {
        self.trace_level = level;
        self
    }

    pub fn components(&self) -> Components {
        let has = |h| self.heuristic_order.contains(&h);
        let gen = has(Heuristic::Gen);
        let aderhold = gen && self.gen_algo.common == CommonAlgo::Aderhold;
        Components {
            basic_heuristics: [
                Heuristic::Cnf,
                Heuristic::Subst,
                Heuristic::Simp,
                Heuristic::Equal,
                Heuristic::Irrel,
            ]
            .into_iter()
            .all(has),
            counterexample_checker: self.disprover.checks_per_call > 0,
            bm_simplifier: has(Heuristic::Simp) && self.simplify_engine == Engine::Bm,
            hol_simplifier: has(Heuristic::Simp) && self.simplify_engine == Engine::Full,
            warehouse_filter: self.warehouse,
            max_depth: self.max_depth.is_some(),
            tautology: has(Heuristic::Taut),
            setify: has(Heuristic::Setify),
            bm_generalization: gen && self.gen_algo.common == CommonAlgo::Bm,
            aderhold_generalization: aderhold,
            apart_generalization: gen && self.gen_algo.apart,
            equation_criterion: aderhold && self.eq_criterion,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", content = "detail", rename_all = "snake_case")]
pub enum FailReason {
    NoInductionVariable(Clause),
    RepeatedInduction(Clause),
    StepLimit(usize),
    Timeout(u64),
}

impl fmt::Display for FailReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FailReason::NoInductionVariable(c) => write!(f, "no induction variable in {c}"),
            FailReason::RepeatedInduction(c) => write!(f, "induction repeated on {c}"),
            FailReason::StepLimit(n) => write!(f, "step limit of {n} exceeded"),
            FailReason::Timeout(ms) => write!(f, "timeout after {ms} ms"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ProofStatus {
    Proved,
    Disproved {
        clause: Clause,
        reason: String,
        witness: Option<Bindings>,
    },
    Failed(FailReason),
    DepthCutoff {
        clause: Clause,
        depth: usize,
    },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub steps: usize,
    pub inductions: usize,
    pub generalizations: usize,
    pub overgeneralizations: usize,
    pub time_ms: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ProofOutcome {
    pub status: ProofStatus,
    pub metrics: Metrics,
    pub trace: Trace,
    pub generalizations: Vec<GenRecord>,
}

impl ProofOutcome {
    pub fn is_proved(&self) -> bool {
        self.status == ProofStatus::Proved
    }

    /// One of `proved`, `failed`, `cutoff`, `disproved`, `timeout`.
    pub fn label(&self) -> &'static str {
        match &self.status {
            ProofStatus::Proved => "proved",
            ProofStatus::Disproved { .. } => "disproved",
            ProofStatus::Failed(FailReason::Timeout(_)) => "timeout",
            ProofStatus::Failed(_) => "failed",
            ProofStatus::DepthCutoff { .. } => "cutoff",
        }
    }

    pub fn failure_reason(&self) -> String {
        match &self.status {
            ProofStatus::Proved => String::new(),
            ProofStatus::Disproved { reason, .. } => reason.clone(),
            ProofStatus::Failed(r) => r.to_string(),
            ProofStatus::DepthCutoff { depth, .. } => {
                format!("variable depth {depth} exceeds cutoff")
            }
        }
    }
}

/// Heuristic names already successful on each clause of one waterfall.
#[derive(Debug, Default)]
pub struct Warehouse {
    applied: HashMap<u64, BTreeSet<Heuristic>>,
}

impl Warehouse {
    pub fn skipped(&self, c: &Clause) -> BTreeSet<Heuristic> {
        self.applied
            .get(&c.fingerprint())
            .cloned()
            .unwrap_or_default()
    }

    pub fn record(&mut self, c: &Clause, h: Heuristic) {
        self.applied.entry(c.fingerprint()).or_default().insert(h);
    }
}

/// Ways a proof attempt stops early.
enum Stop {
    Status(ProofStatus),
}

type Flow = Result<(), Stop>;

struct Prover<'a> {
    th: &'a Theory,
    cfg: &'a Config,
    trace: Trace,
    metrics: Metrics,
    records: Vec<GenRecord>,
    memory: GenMemory,
    start: Instant,
    waterfalls: usize,
    root: Clause,
}

const RED_ZONE: usize = 128 * 1024;
const STACK_CHUNK: usize = 8 * 1024 * 1024;

impl<'a> Prover<'a> {
    fn tick(&mut self) -> Flow {
        self.metrics.steps += 1;
        if self.metrics.steps > self.cfg.step_limit {
            return Err(Stop::Status(ProofStatus::Failed(FailReason::StepLimit(
                self.cfg.step_limit,
            ))));
        }
        if let Some(t) = self.cfg.timeout {
            if self.start.elapsed() > t {
                return Err(Stop::Status(ProofStatus::Failed(FailReason::Timeout(
                    t.as_millis() as u64,
                ))));
            }
        }
        Ok(())
    }

    fn run(&mut self, h: Heuristic, c: &Clause) -> (HeuristicOutcome, Option<String>) {
        match h {
            Heuristic::Taut => (tautology(c), None),
            Heuristic::Cnf => (clausal_form(c), None),
            Heuristic::Setify => (setify(c), None),
            Heuristic::Subst => (substitution(c), None),
            Heuristic::Simp => {
                let (o, note) =
                    simplify_heuristic(c, self.th, self.cfg.simplify_engine, self.cfg.fuel);
                if let Some(n) = note {
                    self.trace.push(Event::Note { message: n });
                }
                (o, None)
            }
            Heuristic::Equal => (equality(c, self.th), None),
            Heuristic::Gen => {
                let a = generalize_heuristic(
                    c,
                    self.th,
                    self.cfg.gen_algo,
                    self.cfg.eq_criterion,
                    &self.cfg.disprover,
                    &mut self.memory,
                );
                self.metrics.overgeneralizations += a.rejected.len();
                for r in a.rejected {
                    self.trace.push(Event::Rejected {
                        clause: r.clause,
                        verdict: r.verdict,
                    });
                }
                if let Some(rec) = a.record {
                    self.metrics.generalizations += 1;
                    self.records.push(rec);
                }
                (a.outcome, a.label)
            }
            Heuristic::Irrel => (irrelevance(c, self.th), None),
        }
    }

    fn display_name(
        &self,
        h: Heuristic,
        outcome: &HeuristicOutcome,
        label: Option<&str>,
    ) -> String {
        let base = h.display_name(self.cfg.simplify_engine);
        match (h, outcome) {
            (Heuristic::Cnf, HeuristicOutcome::Replaced(cs)) if cs.len() == 1 => {
                format!("{base} (1 clause)")
            }
            (Heuristic::Cnf, HeuristicOutcome::Replaced(cs)) => {
                format!("{base} ({} clauses)", cs.len())
            }
            _ => match label {
                Some(l) => format!("{base} ({l})"),
                None => base.to_string(),
            },
        }
    }

    /// A falsifying assignment for the original goal, when the checker finds
    /// one; a disproved lemma need not refute the goal itself.
    fn goal_witness(&self) -> Option<Bindings> {
        match self.cfg.disprover.check(&self.root, self.th) {
            Verdict::Disproved(b) if !b.is_empty() => Some(b),
            _ => None,
        }
    }

    /// Pour one clause over the waterfall `wf`.
    fn pour(
        &mut self,
        c: Clause,
        wf: usize,
        level: usize,
        case_start: bool,
        wh: &mut Warehouse,
        pool: &mut Vec<Clause>,
    ) -> Flow {
        stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || {
            self.pour_inner(c, wf, level, case_start, wh, pool)
        })
    }

    fn pour_inner(
        &mut self,
        c: Clause,
        wf: usize,
        level: usize,
        case_start: bool,
        wh: &mut Warehouse,
        pool: &mut Vec<Clause>,
    ) -> Flow {
        self.tick()?;
        if c.origin != Origin::Initial || level > 0 {
            self.trace.push(Event::Poured {
                clause: c.clone(),
                waterfall: wf,
                level,
                case_start,
            });
        }
        if let Some(max) = self.cfg.max_depth {
            let depth = c.max_var_depth();
            if depth > max {
                return Err(Stop::Status(ProofStatus::DepthCutoff { clause: c, depth }));
            }
        }
        let skip = if self.cfg.warehouse {
            wh.skipped(&c)
        } else {
            BTreeSet::new()
        };
        if !skip.is_empty() {
            self.trace.push(Event::LoopSkipped {
                clause: c.clone(),
                heuristics: skip.iter().copied().collect(),
            });
        }
        for &h in &self.cfg.heuristic_order {
            if skip.contains(&h) {
                continue;
            }
            let (outcome, label) = self.run(h, &c);
            if matches!(outcome, HeuristicOutcome::Failed) {
                continue;
            }
            let name = self.display_name(h, &outcome, label.as_deref());
            let (result, produced) = match &outcome {
                HeuristicOutcome::Proved => ("proved".to_string(), 0),
                HeuristicOutcome::Replaced(cs) => ("replaced".to_string(), cs.len()),
                HeuristicOutcome::Disproved(r) => (format!("disproved: {r}"), 0),
                HeuristicOutcome::Failed => unreachable!("failures are skipped"),
            };
            self.trace.push(Event::Applied {
                heuristic: h,
                name,
                result,
                produced,
            });
            if self.cfg.warehouse {
                wh.record(&c, h);
            }
            match outcome {
                HeuristicOutcome::Proved => {
                    self.trace.push(Event::Proven { clause: c });
                    return Ok(());
                }
                HeuristicOutcome::Disproved(reason) => {
                    let witness = self.goal_witness();
                    return Err(Stop::Status(ProofStatus::Disproved {
                        clause: c,
                        reason,
                        witness,
                    }));
                }
                HeuristicOutcome::Replaced(cs) => {
                    for next in cs {
                        self.pour(next, wf, level + 1, false, wh, pool)?;
                    }
                    return Ok(());
                }
                HeuristicOutcome::Failed => unreachable!("failures are skipped"),
            }
        }
        self.trace.push(Event::Pooled { clause: c.clone() });
        pool.push(c);
        Ok(())
    }

    fn new_waterfall(&mut self) -> usize {
        self.waterfalls += 1;
        self.waterfalls
    }

    /// Induct on each pooled clause in turn, depth first.
    fn prove_pool(&mut self, pool: Vec<Clause>, branch: &mut Vec<u64>) -> Flow {
        let mut done: Vec<Clause> = Vec::new();
        for c in pool {
            if self.cfg.pool_subsumption {
                if let Some(d) = done.iter().find(|d| subsumes(d, &c, self.th)) {
                    self.trace.push(Event::Note {
                        message: format!("{c} is subsumed by {d}"),
                    });
                    continue;
                }
            }
            self.induct(c.clone(), branch)?;
            done.push(c);
        }
        Ok(())
    }

    fn induct(&mut self, c: Clause, branch: &mut Vec<u64>) -> Flow {
        stacker::maybe_grow(RED_ZONE, STACK_CHUNK, || self.induct_inner(c, branch))
    }

    fn induct_inner(&mut self, c: Clause, branch: &mut Vec<u64>) -> Flow {
        let family = c.family_fingerprint();
        if self.cfg.warehouse && branch.contains(&family) {
            return Err(Stop::Status(ProofStatus::Failed(
                FailReason::RepeatedInduction(c),
            )));
        }
        let Some((v, cases)) = induction_cases(&c, self.th) else {
            return Err(Stop::Status(ProofStatus::Failed(
                FailReason::NoInductionVariable(c),
            )));
        };
        self.tick()?;
        self.metrics.inductions += 1;
        self.trace.push(Event::InductionOn {
            clause: c.clone(),
            variable: v.name.to_string(),
            cases: cases.len(),
        });
        let wf = self.new_waterfall();
        let mut wh = Warehouse::default();
        let mut pool = Vec::new();
        for case in cases {
            self.pour(case, wf, 0, true, &mut wh, &mut pool)?;
        }
        branch.push(family);
        let r = self.prove_pool(pool, branch);
        branch.pop();
        r
    }
}

/// Occurrences of `v` as the recursive argument of defined functions.
fn recursive_occurrences(t: &Term, v: &Var, th: &Theory) -> usize {
    t.subterms()
        .into_iter()
        .filter(|s| match s {
            Term::App(f, args) => th
                .recursive_position(f)
                .is_some_and(|p| args[p].as_var() == Some(v)),
            Term::Var(_) => false,
        })
        .count()
}

/// The variable to induct on: most occurrences in recursive argument
/// positions, then leftmost; otherwise the leftmost variable of a shell sort.
pub fn induction_variable(c: &Clause, th: &Theory) -> Option<Var> {
    let candidates: Vec<Var> = c
        .vars()
        .into_iter()
        .filter(|v| &*v.sort != crate::term::sym::BOOL && th.shell(&v.sort).is_some())
        .collect();
    let mut best: Option<(usize, &Var)> = None;
    for v in &candidates {
        let n: usize = c.lits.iter().map(|l| recursive_occurrences(l, v, th)).sum();
        if n > 0 && best.is_none_or(|(m, _)| n > m) {
            best = Some((n, v));
        }
    }
    best.map(|(_, v)| v.clone())
        .or_else(|| candidates.first().cloned())
}

fn conj(ts: Vec<Term>) -> Term {
    let mut it = ts.into_iter().rev();
    let last = it.next().expect("nonempty");
    it.fold(last, |acc, t| Term::and(t, acc))
}

/// Base cases first, then step cases; `None` if no variable admits
/// induction.
pub fn induction_cases(c: &Clause, th: &Theory) -> Option<(Var, Vec<Clause>)> {
    let v = induction_variable(c, th)?;
    let shell = th.shell(&v.sort)?;
    let mut taken: Vec<String> = c.vars().iter().map(|x| x.name.to_string()).collect();
    let body = c.as_term();
    let mut bases = Vec::new();
    let mut steps = Vec::new();
    for case in &shell.induction_scheme {
        let con = shell.constructor(&case.constructor)?;
        let args: Vec<Term> = con
            .arg_sorts
            .iter()
            .enumerate()
            .map(|(i, s)| {
                let base = if con.arg_sorts.len() == 1 || con.accessors.len() <= i {
                    th.var_base(s)
                } else {
                    con.accessors[i]
                        .chars()
                        .next()
                        .map(|ch| ch.to_lowercase().to_string())
                        .unwrap_or_else(|| th.var_base(s))
                };
                let name = variant_name(&base, &|n| taken.iter().any(|t| t == n));
                taken.push(name.clone());
                Term::var(&name, s)
            })
            .collect();
        let inst = |t: &Term| Bindings::single(v.clone(), t.clone());
        let concl_b = inst(&Term::app(&con.name, args.clone()));
        if case.hypotheses.is_empty() {
            let mut out = Clause::new(c.apply(&concl_b));
            out.origin = Origin::InductionBase;
            bases.push(out);
        } else {
            let hyps: Vec<Term> = case
                .hypotheses
                .iter()
                .map(|&i| apply_bindings(&body, &inst(&args[i])))
                .collect();
            let lit = Term::imp(conj(hyps), apply_bindings(&body, &concl_b));
            let mut out = Clause::new(vec![lit]);
            out.from_induction_step = true;
            out.origin = Origin::InductionStep;
            steps.push(out);
        }
    }
    bases.extend(steps);
    Some((v, bases))
}

/// Attempt to prove `goal` in `th`.
pub fn prove(goal: &Term, th: &Theory, cfg: &Config) -> ProofOutcome {
    let mut p = Prover {
        th,
        cfg,
        trace: Trace::new(cfg.trace_level),
        metrics: Metrics::default(),
        records: Vec::new(),
        memory: GenMemory::default(),
        start: Instant::now(),
        waterfalls: 0,
        root: Clause::unit(goal.clone()),
    };
    let root = p.root.clone();
    p.trace.push(Event::Goal {
        clause: root.clone(),
    });
    let flow = (|| {
        let wf = p.new_waterfall();
        let mut wh = Warehouse::default();
        let mut pool = Vec::new();
        p.pour(root.clone(), wf, 0, false, &mut wh, &mut pool)?;
        p.prove_pool(pool, &mut Vec::new())
    })();
    let status = match flow {
        Ok(()) => ProofStatus::Proved,
        Err(Stop::Status(s)) => s,
    };
    let end = match &status {
        ProofStatus::Proved => Event::Proved { clause: root },
        ProofStatus::Disproved {
            clause,
            reason,
            witness,
        } => Event::Disproved {
            clause: clause.clone(),
            reason: reason.clone(),
            witness: witness.clone(),
        },
        ProofStatus::Failed(r) => Event::Failed {
            reason: r.to_string(),
        },
        ProofStatus::DepthCutoff { clause, depth } => Event::DepthCutoff {
            clause: clause.clone(),
            depth: *depth,
        },
    };
    p.trace.push(end);
    p.metrics.time_ms = p.start.elapsed().as_millis() as u64;
    ProofOutcome {
        status,
        metrics: p.metrics,
        trace: p.trace,
        generalizations: p.records,
    }
}
