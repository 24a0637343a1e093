//! Generalization: replacing terms by fresh variables so that induction has
//! a chance. Three algorithms are provided.
//!
//! * common subterms: every minimal repeated term is replaced, and
//!   generalization lemmas about those terms become hypotheses;
//! * a ranked variant that only considers terms proposed by recursive
//!   positions and equation sides, applying the best one;
//! * generalizing apart: separating occurrences of a variable that sit in
//!   recursive and non-recursive argument positions.
//!
//! Every proposal is screened by the counterexample checker.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::disprove::{Disprover, Verdict};
use crate::heuristics::HeuristicOutcome;
use crate::syntax::print_term_curried;
use crate::term::{
    apply_bindings, free_vars, is_explicit_value_template, match_pattern, sym, variant_name,
    Bindings, Clause, Term, Var,
};
use crate::theory::Theory;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CommonAlgo {
    Bm,
    Aderhold,
}

/// Which generalization algorithms run, common subterms first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenAlgo {
    pub common: CommonAlgo,
    pub apart: bool,
}

impl GenAlgo {
    pub const BM: GenAlgo = GenAlgo {
        common: CommonAlgo::Bm,
        apart: false,
    };
    pub const BM_APART: GenAlgo = GenAlgo {
        common: CommonAlgo::Bm,
        apart: true,
    };
    pub const ADERHOLD: GenAlgo = GenAlgo {
        common: CommonAlgo::Aderhold,
        apart: false,
    };
    pub const ADERHOLD_APART: GenAlgo = GenAlgo {
        common: CommonAlgo::Aderhold,
        apart: true,
    };

    /// Parse a token such as `aderhold-noeq+apart`. The second component
    /// overrides the equation criterion when the token names it.
    pub fn parse(s: &str) -> Result<(GenAlgo, Option<bool>), String> {
        let (base, apart) = match s.strip_suffix("+apart") {
            Some(b) => (b, true),
            None => (s, false),
        };
        let (common, eq) = match base {
            "bm" => (CommonAlgo::Bm, None),
            "aderhold" => (CommonAlgo::Aderhold, Some(true)),
            "aderhold-noeq" => (CommonAlgo::Aderhold, Some(false)),
            _ => {
                return Err(format!(
                    "unknown generalization algorithm `{s}` (expected bm, aderhold or aderhold-noeq, optionally with +apart)"
                ))
            }
        };
        Ok((GenAlgo { common, apart }, eq))
    }

    pub fn token(&self, eq_criterion: bool) -> String {
        let base = match (self.common, eq_criterion) {
            (CommonAlgo::Bm, _) => "bm",
            (CommonAlgo::Aderhold, true) => "aderhold",
            (CommonAlgo::Aderhold, false) => "aderhold-noeq",
        };
        if self.apart {
            format!("{base}+apart")
        } else {
            base.to_string()
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GenKind {
    Common,
    Apart,
}

/// One accepted generalization. Applying `substitution` to the output
/// (without lemma hypotheses) gives back the input.
#[derive(Clone, Debug, Serialize)]
pub struct GenRecord {
    pub input: Clause,
    pub output: Clause,
    pub kind: GenKind,
    pub substitution: Bindings,
    pub hypotheses: usize,
}

impl GenRecord {
    pub fn recovers_input(&self) -> bool {
        let body = if self.hypotheses > 0 {
            match self.output.lits.as_slice() {
                [Term::App(f, args)] if &**f == sym::IMP => args[1].clone(),
                _ => return false,
            }
        } else {
            self.output.as_term()
        };
        apply_bindings(&body, &self.substitution) == self.input.as_term()
    }
}

/// A proposal rejected by the counterexample checker.
#[derive(Clone, Debug, Serialize)]
pub struct Rejection {
    pub clause: Clause,
    pub verdict: Verdict,
}

/// Proposals already made, keyed by clause family, and the families of
/// clauses produced by generalization.
#[derive(Clone, Debug, Default)]
pub struct GenMemory {
    proposed: HashSet<(u64, Term)>,
    outputs: HashSet<u64>,
}

#[derive(Clone, Debug)]
pub struct GenAttempt {
    pub outcome: HeuristicOutcome,
    /// Short description such as `m * n` or `n apart`.
    pub label: Option<String>,
    pub record: Option<GenRecord>,
    pub rejected: Vec<Rejection>,
}

impl GenAttempt {
    fn failed(rejected: Vec<Rejection>) -> Self {
        GenAttempt {
            outcome: HeuristicOutcome::Failed,
            label: None,
            record: None,
            rejected,
        }
    }
}

fn is_logical(f: &str) -> bool {
    sym::RESERVED.contains(&f)
}

/// Candidate for replacement by a variable.
pub fn generalizable(t: &Term, th: &Theory) -> bool {
    match t {
        Term::App(f, args) => {
            !args.is_empty()
                && !is_logical(f)
                && !th.is_accessor(f)
                && !is_explicit_value_template(t, th)
                && !th.is_bool(t)
        }
        Term::Var(_) => false,
    }
}

fn occurrences(c: &Clause, t: &Term) -> usize {
    c.lits.iter().map(|l| l.count_occurrences(t)).sum()
}

fn preorder(c: &Clause) -> Vec<&Term> {
    c.lits.iter().flat_map(|l| l.subterms()).collect()
}

fn taken_names(c: &Clause) -> HashSet<String> {
    c.vars().into_iter().map(|v| v.name.to_string()).collect()
}

/// Minimal generalizable terms occurring at least twice, in order of first
/// occurrence.
pub fn common_candidates(c: &Clause, th: &Theory) -> Vec<Term> {
    let mut all: Vec<Term> = Vec::new();
    for t in preorder(c) {
        if generalizable(t, th) && !all.contains(t) && occurrences(c, t) >= 2 {
            all.push(t.clone());
        }
    }
    all.iter()
        .filter(|t| !all.iter().any(|u| u != *t && t.contains(u)))
        .cloned()
        .collect()
}

fn conj(ts: &[Term]) -> Term {
    let mut it = ts.iter().rev();
    let last = it.next().expect("nonempty").clone();
    it.fold(last, |acc, t| Term::and(t.clone(), acc))
}

fn fresh_vars(c: &Clause, th: &Theory, terms: &[Term]) -> Vec<Var> {
    let mut taken = taken_names(c);
    terms
        .iter()
        .map(|t| {
            let sort = th.sort_of(t).expect("generalizable terms have a sort");
            let name = variant_name(&th.var_base(&sort), &|n| taken.contains(n));
            taken.insert(name.clone());
            Var::new(&name, &sort)
        })
        .collect()
}

fn replace_all(t: &Term, pairs: &[(Term, Term)]) -> Term {
    pairs
        .iter()
        .fold(t.clone(), |acc, (from, to)| acc.replace(from, to))
}

/// Lemma instances about the generalized terms, all of whose variables are
/// fixed by matching one of its subterms against a candidate.
fn lemma_instances(th: &Theory, cands: &[Term]) -> Vec<Term> {
    let mut out: Vec<Term> = Vec::new();
    for lemma in th.generalization_lemmas() {
        let lvars = free_vars(lemma);
        for cand in cands {
            for s in lemma.subterms() {
                if s.is_var() || s.head() != cand.head() {
                    continue;
                }
                let Some(b) = match_pattern(s, cand, th) else {
                    continue;
                };
                if lvars.iter().all(|v| b.get(v).is_some()) {
                    let inst = apply_bindings(lemma, &b);
                    if !out.contains(&inst) {
                        out.push(inst);
                    }
                }
            }
        }
    }
    out
}

fn finish(c: &Clause, lits: Vec<Term>) -> Clause {
    let mut out = c.derive(lits, "gen");
    out.from_induction_step = false;
    out
}

/// Common-subterm generalization with lemma hypotheses.
pub fn common_generalization(
    c: &Clause,
    th: &Theory,
) -> Option<(Clause, Vec<Term>, Bindings, usize)> {
    let cands = common_candidates(c, th);
    if cands.is_empty() {
        return None;
    }
    let vars = fresh_vars(c, th, &cands);
    let pairs: Vec<(Term, Term)> = cands
        .iter()
        .cloned()
        .zip(vars.iter().cloned().map(Term::Var))
        .collect();
    let lits: Vec<Term> = c.lits.iter().map(|l| replace_all(l, &pairs)).collect();
    let hyps: Vec<Term> = lemma_instances(th, &cands)
        .iter()
        .map(|h| replace_all(h, &pairs))
        .collect();
    let mut subst = Bindings::new();
    for (v, t) in vars.into_iter().zip(&cands) {
        subst.insert(v, t.clone());
    }
    let out = if hyps.is_empty() {
        finish(c, lits)
    } else {
        finish(c, vec![Term::imp(conj(&hyps), Term::disj(&lits))])
    };
    Some((out, cands, subst, hyps.len()))
}

#[derive(Debug)]
struct Proposal {
    term: Term,
    times: usize,
    eq_sources: Vec<(Term, Term)>,
}

fn propose(props: &mut Vec<Proposal>, t: &Term, eq: Option<(&Term, &Term)>) {
    let i = match props.iter().position(|p| &p.term == t) {
        Some(i) => i,
        None => {
            props.push(Proposal {
                term: t.clone(),
                times: 0,
                eq_sources: Vec::new(),
            });
            props.len() - 1
        }
    };
    props[i].times += 1;
    if let Some((a, b)) = eq {
        props[i].eq_sources.push((a.clone(), b.clone()));
    }
}

/// `within` is the innermost equation enclosing `t`; a proposal made
/// anywhere inside an equation counts as sourced from it.
fn collect_proposals(
    t: &Term,
    th: &Theory,
    within: Option<(&Term, &Term)>,
    props: &mut Vec<Proposal>,
) {
    let ok = |x: &Term| generalizable(x, th) && !x.any_symbol(&|f| th.is_constructor(f));
    let Term::App(f, args) = t else { return };
    if let Some((a, b)) = t.as_eq() {
        for side in [a, b] {
            if ok(side) {
                propose(props, side, Some((a, b)));
            }
        }
        collect_proposals(a, th, Some((a, b)), props);
        collect_proposals(b, th, Some((a, b)), props);
    } else if is_logical(f) {
        for a in args {
            collect_proposals(a, th, None, props);
        }
    } else if th.is_defined(f) {
        if let Some(p) = th.recursive_position(f) {
            if ok(&args[p]) {
                propose(props, &args[p], within);
            }
        }
        for a in args {
            collect_proposals(a, th, within, props);
        }
    }
}

fn at_recursive_position(t: &Term, v: &Var, th: &Theory) -> bool {
    t.subterms().into_iter().any(|s| match s {
        Term::App(f, args) => th
            .recursive_position(f)
            .is_some_and(|p| args[p].as_var() == Some(v)),
        Term::Var(_) => false,
    })
}

/// Ranked proposals: terms at recursive positions or equation sides that
/// contain no constructors, occur at least twice and, with the equation
/// criterion, occur on both sides (or twice on one side) of every equation
/// proposing them.
pub fn ranked_proposals(c: &Clause, th: &Theory, eq_criterion: bool) -> Vec<Term> {
    let mut props = Vec::new();
    for l in &c.lits {
        collect_proposals(l, th, None, &mut props);
    }
    let order: Vec<&Term> = preorder(c);
    let first = |t: &Term| order.iter().position(|s| *s == t).unwrap_or(usize::MAX);
    let mut scored: Vec<(bool, usize, usize, usize, usize, Term)> = props
        .into_iter()
        .filter(|p| occurrences(c, &p.term) >= 2)
        .filter(|p| {
            !eq_criterion
                || p.eq_sources.iter().all(|(a, b)| {
                    (a.contains(&p.term) && b.contains(&p.term))
                        || a.count_occurrences(&p.term) >= 2
                        || b.count_occurrences(&p.term) >= 2
                })
        })
        .map(|p| {
            let v = fresh_vars(c, th, std::slice::from_ref(&p.term)).remove(0);
            let generalized: Vec<Term> = c
                .lits
                .iter()
                .map(|l| l.replace(&p.term, &Term::Var(v.clone())))
                .collect();
            let test = generalized.iter().any(|l| at_recursive_position(l, &v, th));
            let occ = occurrences(c, &p.term);
            (test, p.times, occ, p.term.size(), first(&p.term), p.term)
        })
        .collect();
    scored.sort_by(|x, y| {
        y.0.cmp(&x.0)
            .then(y.1.cmp(&x.1))
            .then(y.2.cmp(&x.2))
            .then(x.3.cmp(&y.3))
            .then(x.4.cmp(&y.4))
    });
    scored.into_iter().map(|s| s.5).collect()
}

fn substitute_term(c: &Clause, th: &Theory, t: &Term) -> (Clause, Bindings) {
    let v = fresh_vars(c, th, std::slice::from_ref(t)).remove(0);
    let lits = c
        .lits
        .iter()
        .map(|l| l.replace(t, &Term::Var(v.clone())))
        .collect();
    (finish(c, lits), Bindings::single(v, t.clone()))
}

/// Units a literal is split into when renaming: the two sides of a
/// (possibly negated) equation, or the literal itself.
fn split_units(l: &Term) -> (bool, Vec<Term>) {
    let inner = l.as_not().unwrap_or(l);
    match inner.as_eq() {
        Some((a, b)) => (true, vec![a.clone(), b.clone()]),
        None => (false, vec![l.clone()]),
    }
}

fn rebuild(l: &Term, units: Vec<Term>) -> Term {
    if units.len() == 1 {
        return units.into_iter().next().expect("one unit");
    }
    let mut it = units.into_iter();
    let e = Term::eq(it.next().expect("lhs"), it.next().expect("rhs"));
    if l.as_not().is_some() {
        Term::not(e)
    } else {
        e
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Slot {
    Recursive,
    Other,
}

/// Tally of a renaming pass: occurrences renamed, and whether every
/// application touched kept at least one original occurrence of `v`.
#[derive(Clone, Copy)]
struct Tally {
    renamed: usize,
    apps_ok: bool,
}

impl Tally {
    fn new() -> Self {
        Tally {
            renamed: 0,
            apps_ok: true,
        }
    }

    fn app(&mut self, before: &Term, after: &Term, v: &Var) {
        let n = before.count_occurrences(&Term::Var(v.clone()))
            - after.count_occurrences(&Term::Var(v.clone()));
        if n > 0 {
            self.renamed += n;
            self.apps_ok &= after.contains_var(v);
        }
    }
}

/// Rename `v` in the outermost `f`-applications of `t`, at the recursive
/// position or at the direct non-recursive argument positions.
fn rename_in_outer(
    t: &Term,
    f: &str,
    p: usize,
    v: &Var,
    nv: &Term,
    slot: Slot,
    n: &mut Tally,
) -> Term {
    match t {
        Term::Var(_) => t.clone(),
        Term::App(g, args) if &**g == f => {
            let args = args
                .iter()
                .enumerate()
                .map(|(i, a)| {
                    let hit = (i == p) == (slot == Slot::Recursive);
                    if hit && a.as_var() == Some(v) {
                        nv.clone()
                    } else {
                        a.clone()
                    }
                })
                .collect();
            let out = Term::App(g.clone(), args);
            n.app(t, &out, v);
            out
        }
        Term::App(g, args) => Term::App(
            g.clone(),
            args.iter()
                .map(|a| rename_in_outer(a, f, p, v, nv, slot, n))
                .collect(),
        ),
    }
}

/// Follow recursive positions through functions of `group`, starting from
/// the outermost such applications, renaming `v` where the chain ends.
fn rename_chain(
    t: &Term,
    group: &HashSet<&str>,
    th: &Theory,
    v: &Var,
    nv: &Term,
    n: &mut Tally,
) -> Term {
    fn chain(t: &Term, group: &HashSet<&str>, th: &Theory, v: &Var, nv: &Term) -> Term {
        let Term::App(g, args) = t else {
            return t.clone();
        };
        let p = th
            .recursive_position(g)
            .expect("group members are recursive");
        let mut args = args.clone();
        if args[p].as_var() == Some(v) {
            args[p] = nv.clone();
        } else if args[p].head().is_some_and(|h| group.contains(h)) {
            args[p] = chain(&args[p], group, th, v, nv);
        }
        Term::App(g.clone(), args)
    }
    match t {
        Term::Var(_) => t.clone(),
        Term::App(g, _) if group.contains(&**g) => {
            let out = chain(t, group, th, v, nv);
            n.app(t, &out, v);
            out
        }
        Term::App(g, args) => Term::App(
            g.clone(),
            args.iter()
                .map(|a| rename_chain(a, group, th, v, nv, n))
                .collect(),
        ),
    }
}

/// Pairs `(f, v)` where some `f`-application has `v` at its recursive
/// position and some has it elsewhere.
pub fn apart_candidates(c: &Clause, th: &Theory) -> Vec<(String, Var)> {
    let apps: Vec<&Term> = preorder(c).into_iter().filter(|t| !t.is_var()).collect();
    let mut out: Vec<(String, Var)> = Vec::new();
    for t in &apps {
        let Term::App(f, args) = t else { continue };
        let Some(p) = th.recursive_position(f) else {
            continue;
        };
        let Some(v) = args[p].as_var() else { continue };
        let elsewhere = apps.iter().any(|u| {
            u.head() == Some(&**f)
                && u.args()
                    .iter()
                    .enumerate()
                    .any(|(i, a)| i != p && a.as_var() == Some(v))
        });
        let key = (f.to_string(), v.clone());
        if elsewhere && !out.contains(&key) {
            out.push(key);
        }
    }
    out
}

fn side_ok(orig: &Term, new: &Term, v: &Var, nv: &Term) -> bool {
    if new == nv {
        return true;
    }
    let renamed = new.contains(nv) && !orig.contains(nv);
    renamed && new.contains_var(v)
}

/// Apply a renaming to every unit of the clause and judge whether the
/// result is a useful generalization: something was renamed, every renamed
/// application kept an occurrence of `v`, and so did the clause and both
/// sides of each equation mentioning `v`.
fn apart_attempt(
    c: &Clause,
    v: &Var,
    nv: &Term,
    rename: &dyn Fn(&Term, &mut Tally) -> Term,
) -> Option<Clause> {
    let mut total = Tally::new();
    let mut lits = Vec::with_capacity(c.lits.len());
    for l in &c.lits {
        let (is_eq, units) = split_units(l);
        let new_units: Vec<Term> = units
            .iter()
            .map(|u| {
                let mut n = Tally::new();
                let r = rename(u, &mut n);
                total.renamed += n.renamed;
                total.apps_ok &= n.apps_ok;
                r
            })
            .collect();
        if is_eq
            && l.contains_var(v)
            && !units
                .iter()
                .zip(&new_units)
                .all(|(o, n)| side_ok(o, n, v, nv))
        {
            return None;
        }
        lits.push(rebuild(l, new_units));
    }
    if total.renamed == 0 || !total.apps_ok || !lits.iter().any(|l| l.contains_var(v)) {
        return None;
    }
    Some(finish(c, lits))
}

fn apart_proposals(c: &Clause, th: &Theory) -> Vec<(Var, Clause, Bindings)> {
    let mut out: Vec<(Var, Clause, Bindings)> = Vec::new();
    let taken = taken_names(c);
    for (f, v) in apart_candidates(c, th) {
        let p = th.recursive_position(&f).expect("candidate is recursive");
        let name = variant_name(&v.name, &|n| taken.contains(n));
        let nv = Term::var(&name, &v.sort);
        let back = Bindings::single(Var::new(&name, &v.sort), Term::Var(v.clone()));
        let phase1 = |u: &Term, n: &mut Tally| {
            let mut k = Tally::new();
            let r = rename_in_outer(u, &f, p, &v, &nv, Slot::Recursive, &mut k);
            if k.renamed > 0 {
                *n = k;
                return r;
            }
            rename_in_outer(u, &f, p, &v, &nv, Slot::Other, n)
        };
        let group: HashSet<&str> = th
            .fn_defs()
            .filter(|d| th.recursive_position(&d.name) == Some(p))
            .map(|d| &*d.name)
            .chain(std::iter::once(f.as_str()))
            .collect();
        let phase2 = |u: &Term, n: &mut Tally| rename_chain(u, &group, th, &v, &nv, n);
        for attempt in [
            apart_attempt(c, &v, &nv, &phase1),
            apart_attempt(c, &v, &nv, &phase2),
        ]
        .into_iter()
        .flatten()
        {
            if !out.iter().any(|(_, o, _)| *o == attempt) {
                out.push((v.clone(), attempt, back.clone()));
            }
        }
    }
    out
}

/// The generalization heuristic: the configured common-subterm algorithm,
/// then generalizing apart. Proposals refuted (or not confirmed) by the
/// checker are skipped and reported in `rejected`.
pub fn generalize_heuristic(
    c: &Clause,
    th: &Theory,
    algo: GenAlgo,
    eq_criterion: bool,
    dp: &Disprover,
    mem: &mut GenMemory,
) -> GenAttempt {
    let mut rejected = Vec::new();
    let family = c.family_fingerprint();
    let accept = |out: Clause,
                  label: String,
                  kind: GenKind,
                  subst: Bindings,
                  hyps: usize,
                  rejected: Vec<Rejection>,
                  mem: &mut GenMemory| {
        mem.outputs.insert(out.family_fingerprint());
        GenAttempt {
            outcome: HeuristicOutcome::Replaced(vec![out.clone()]),
            label: Some(label),
            record: Some(GenRecord {
                input: c.clone(),
                output: out,
                kind,
                substitution: subst,
                hypotheses: hyps,
            }),
            rejected,
        }
    };
    match algo.common {
        CommonAlgo::Bm => {
            if let Some((out, terms, subst, hyps)) = common_generalization(c, th) {
                let verdict = dp.check(&out, th);
                if verdict.vetoes() {
                    rejected.push(Rejection {
                        clause: out,
                        verdict,
                    });
                } else {
                    let label = terms
                        .iter()
                        .map(print_term_curried)
                        .collect::<Vec<_>>()
                        .join(", ");
                    return accept(out, label, GenKind::Common, subst, hyps, rejected, mem);
                }
            }
        }
        CommonAlgo::Aderhold => {
            if !mem.outputs.contains(&family) {
                for t in ranked_proposals(c, th, eq_criterion) {
                    if !mem.proposed.insert((family, t.clone())) {
                        continue;
                    }
                    let (out, subst) = substitute_term(c, th, &t);
                    let verdict = dp.check(&out, th);
                    if verdict.vetoes() {
                        rejected.push(Rejection {
                            clause: out,
                            verdict,
                        });
                        continue;
                    }
                    return accept(
                        out,
                        print_term_curried(&t),
                        GenKind::Common,
                        subst,
                        0,
                        rejected,
                        mem,
                    );
                }
            }
        }
    }
    if algo.apart {
        for (v, out, subst) in apart_proposals(c, th) {
            let verdict = dp.check(&out, th);
            if verdict.vetoes() {
                rejected.push(Rejection {
                    clause: out,
                    verdict,
                });
                continue;
            }
            return accept(
                out,
                format!("{} apart", v.name),
                GenKind::Apart,
                subst,
                0,
                rejected,
                mem,
            );
        }
    }
    GenAttempt::failed(rejected)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use crate::theory::bundled;

    fn cl(th: &Theory, lits: &[&str]) -> Clause {
        Clause::new(lits.iter().map(|s| parse_term(th, s).unwrap()).collect())
    }

    fn pt(th: &Theory, s: &str) -> Term {
        parse_term(th, s).unwrap()
    }

    #[test]
    fn tokens() {
        assert_eq!(GenAlgo::parse("bm"), Ok((GenAlgo::BM, None)));
        assert_eq!(
            GenAlgo::parse("aderhold-noeq+apart"),
            Ok((GenAlgo::ADERHOLD_APART, Some(false)))
        );
        assert!(GenAlgo::parse("magic").is_err());
        assert_eq!(GenAlgo::ADERHOLD_APART.token(true), "aderhold+apart");
    }

    #[test]
    fn common_subterms() {
        let th = bundled::peano();
        let c = cl(&th, &["(m * n) + n = n + (m * n)"]);
        assert_eq!(common_candidates(&c, &th), vec![pt(&th, "m * n")]);
        let (out, _, subst, hyps) = common_generalization(&c, &th).unwrap();
        assert_eq!(out, cl(&th, &["n' + n = n + n'"]));
        assert_eq!(hyps, 0);
        assert_eq!(subst.get(&Var::new("n'", "num")), Some(&pt(&th, "m * n")));
        assert!(common_candidates(&cl(&th, &["n + 0 = n"]), &th).is_empty());
        let c = cl(&th, &["PRE (SUC (m + n) - m) = (m + n) - m"]);
        assert_eq!(
            common_generalization(&c, &th).unwrap().0,
            cl(&th, &["PRE (SUC n' - m) = n' - m"])
        );
    }

    #[test]
    fn lemma_hypotheses() {
        let th = bundled::peano()
            .add_generalization_lemma(&pt(&bundled::peano(), "m * n >= 0"))
            .unwrap();
        let c = cl(&th, &["(m * n) + n = n + (m * n)"]);
        let (out, _, _, hyps) = common_generalization(&c, &th).unwrap();
        assert_eq!(hyps, 1);
        assert_eq!(out, cl(&th, &["n' >= 0 ==> n' + n = n + n'"]));
    }

    #[test]
    fn equation_criterion() {
        let th = bundled::peano();
        let c = cl(&th, &["n' * n = 0", "~((n' * n) + n = 0)", "n = 0"]);
        assert!(ranked_proposals(&c, &th, true).is_empty());
        assert_eq!(ranked_proposals(&c, &th, false), vec![pt(&th, "n' * n")]);
    }

    #[test]
    fn ranking_prefers_induction_candidates() {
        let th = bundled::peano();
        let c = cl(&th, &["(x + y) + (x + y) = (x + y) * 2"]);
        assert_eq!(ranked_proposals(&c, &th, true), vec![pt(&th, "x + y")]);
    }

    fn apart(th: &Theory, s: &str) -> Vec<Clause> {
        apart_proposals(&cl(th, &[s]), th)
            .into_iter()
            .map(|p| p.1)
            .collect()
    }

    #[test]
    fn generalizing_apart() {
        let th = bundled::peano();
        assert_eq!(
            apart(&th, "x + (x + x) = (x + x) + x")[0],
            cl(&th, &["x' + (x + x) = (x + x) + x'"])
        );
        assert_eq!(
            apart(&th, "SUC (n + n) = n + SUC n")[0],
            cl(&th, &["SUC (n' + n) = n' + SUC n"])
        );
        assert_eq!(apart(&th, "n <= n"), vec![cl(&th, &["n <= n'"])]);
        assert_eq!(apart(&th, "n <= n * n"), vec![cl(&th, &["n <= n' * n"])]);
        let th = bundled::lists();
        let props = apart(&th, "LENGTH (APPEND x x) = LENGTH x + LENGTH x");
        assert!(
            props.contains(&cl(&th, &["LENGTH (APPEND x' x) = LENGTH x' + LENGTH x"])),
            "{props:?}"
        );
    }

    #[test]
    fn veto_and_records() {
        let th = bundled::peano();
        let dp = Disprover::default();
        let mut mem = GenMemory::default();
        let c = cl(&th, &["(m * n) + n = n + (m * n)"]);
        let a = generalize_heuristic(&c, &th, GenAlgo::BM, false, &dp, &mut mem);
        assert!(a.record.as_ref().unwrap().recovers_input());
        assert_eq!(a.label.as_deref(), Some("m * n"));
        let c = cl(&th, &["n <= n"]);
        let a = generalize_heuristic(
            &c,
            &th,
            GenAlgo::ADERHOLD_APART,
            true,
            &Disprover::with_seed(1),
            &mut mem,
        );
        if a.outcome.succeeded() {
            assert!(a.record.unwrap().recovers_input());
        } else {
            assert_eq!(a.rejected.len(), 1);
        }
    }
}
