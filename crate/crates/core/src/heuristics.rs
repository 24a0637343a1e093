//! The waterfall heuristics. Each one maps a clause to a [`HeuristicOutcome`].

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::rewrite::{simplify_clause, Engine};
use crate::term::{
    clause_setify, free_vars, is_explicit_value_template, sym, Bindings, Clause, Term, Var,
};
use crate::theory::Theory;

pub use crate::generalize::generalize_heuristic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Heuristic {
    Taut,
    Cnf,
    Setify,
    Subst,
    Simp,
    Equal,
    Gen,
    Irrel,
}

impl Heuristic {
    pub const ALL: [Heuristic; 8] = [
        Heuristic::Taut,
        Heuristic::Cnf,
        Heuristic::Setify,
        Heuristic::Subst,
        Heuristic::Simp,
        Heuristic::Equal,
        Heuristic::Gen,
        Heuristic::Irrel,
    ];

    pub const DEFAULT_ORDER: [Heuristic; 8] = Heuristic::ALL;

    pub fn id(self) -> &'static str {
        match self {
            Heuristic::Taut => "taut",
            Heuristic::Cnf => "cnf",
            Heuristic::Setify => "setify",
            Heuristic::Subst => "subst",
            Heuristic::Simp => "simp",
            Heuristic::Equal => "equal",
            Heuristic::Gen => "gen",
            Heuristic::Irrel => "irrel",
        }
    }

    pub fn from_id(s: &str) -> Option<Heuristic> {
        Heuristic::ALL.into_iter().find(|h| h.id() == s)
    }

    /// Parse a comma-separated order such as `taut,cnf,simp`.
    pub fn parse_order(s: &str) -> Result<Vec<Heuristic>, String> {
        let mut out = Vec::new();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let h =
                Heuristic::from_id(part).ok_or_else(|| format!("unknown heuristic `{part}`"))?;
            if out.contains(&h) {
                return Err(format!("heuristic `{part}` listed twice"));
            }
            out.push(h);
        }
        if out.is_empty() {
            return Err("empty heuristic order".into());
        }
        Ok(out)
    }

    pub fn display_name(self, engine: Engine) -> &'static str {
        match self {
            Heuristic::Taut => "Tautology Heuristic",
            Heuristic::Cnf => "Clausal Form Heuristic",
            Heuristic::Setify => "Setify Heuristic",
            Heuristic::Subst => "Substitution Heuristic",
            Heuristic::Simp => match engine {
                Engine::Bm => "Simplify Heuristic",
                Engine::Full => "HL Simplify Heuristic",
            },
            Heuristic::Equal => "Equality Heuristic",
            Heuristic::Gen => "Generalization Heuristic",
            Heuristic::Irrel => "Irrelevance Heuristic",
        }
    }
}

impl fmt::Display for Heuristic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum HeuristicOutcome {
    Proved,
    Replaced(Vec<Clause>),
    Disproved(String),
    Failed,
}

impl HeuristicOutcome {
    pub fn succeeded(&self) -> bool {
        !matches!(self, HeuristicOutcome::Failed)
    }
}

// ---------------------------------------------------------------------------
// Propositional structure

fn is_connective_node(t: &Term) -> bool {
    matches!(t, Term::App(f, args)
        if matches!(&**f, sym::NOT | sym::OR | sym::AND | sym::IMP | sym::IFF | sym::ITE)
            && args.len() == sym_arity(f))
}

fn sym_arity(f: &str) -> usize {
    match f {
        sym::NOT => 1,
        sym::ITE => 3,
        _ => 2,
    }
}

/// Constant-fold connectives; reflexive equations count as true.
fn prop_simp(t: &Term) -> Term {
    let Term::App(f, args) = t else {
        return t.clone();
    };
    if !is_connective_node(t) {
        return match t.as_eq() {
            Some((a, b)) if a == b => Term::t(),
            _ => t.clone(),
        };
    }
    let a: Vec<Term> = args.iter().map(prop_simp).collect();
    let (tt, ff) = (Term::is_true, Term::is_false);
    match &**f {
        sym::NOT => {
            if tt(&a[0]) {
                Term::f()
            } else if ff(&a[0]) {
                Term::t()
            } else {
                Term::not(a[0].clone())
            }
        }
        sym::OR => {
            if tt(&a[0]) || tt(&a[1]) {
                Term::t()
            } else if ff(&a[0]) {
                a[1].clone()
            } else if ff(&a[1]) {
                a[0].clone()
            } else {
                Term::or(a[0].clone(), a[1].clone())
            }
        }
        sym::AND => {
            if ff(&a[0]) || ff(&a[1]) {
                Term::f()
            } else if tt(&a[0]) {
                a[1].clone()
            } else if tt(&a[1]) {
                a[0].clone()
            } else {
                Term::and(a[0].clone(), a[1].clone())
            }
        }
        sym::IMP => {
            if ff(&a[0]) || tt(&a[1]) {
                Term::t()
            } else if tt(&a[0]) {
                a[1].clone()
            } else if ff(&a[1]) {
                prop_simp(&Term::not(a[0].clone()))
            } else {
                Term::imp(a[0].clone(), a[1].clone())
            }
        }
        sym::IFF => {
            if a[0] == a[1] {
                Term::t()
            } else if tt(&a[0]) {
                a[1].clone()
            } else if tt(&a[1]) {
                a[0].clone()
            } else if ff(&a[0]) {
                prop_simp(&Term::not(a[1].clone()))
            } else if ff(&a[1]) {
                prop_simp(&Term::not(a[0].clone()))
            } else {
                Term::iff(a[0].clone(), a[1].clone())
            }
        }
        _ => {
            if tt(&a[0]) {
                a[1].clone()
            } else if ff(&a[0]) {
                a[2].clone()
            } else if a[1] == a[2] {
                a[1].clone()
            } else {
                Term::ite(a[0].clone(), a[1].clone(), a[2].clone())
            }
        }
    }
}

fn first_atom(t: &Term) -> Option<&Term> {
    if t.is_true() || t.is_false() {
        return None;
    }
    if is_connective_node(t) {
        return t.args().iter().find_map(first_atom);
    }
    Some(t)
}

fn assign(t: &Term, atom: &Term, val: &Term) -> Term {
    if t == atom {
        return val.clone();
    }
    match t {
        Term::App(f, args) if is_connective_node(t) => Term::App(
            f.clone(),
            args.iter().map(|a| assign(a, atom, val)).collect(),
        ),
        _ => t.clone(),
    }
}

const MAX_ATOMS: usize = 24;

/// Propositional validity by case splitting on atoms.
pub fn is_tautology(t: &Term) -> bool {
    fn go(t: &Term, depth: usize) -> bool {
        let t = prop_simp(t);
        if t.is_true() {
            return true;
        }
        if t.is_false() || depth > MAX_ATOMS {
            return false;
        }
        let Some(atom) = first_atom(&t).cloned() else {
            return false;
        };
        go(&assign(&t, &atom, &Term::t()), depth + 1)
            && go(&assign(&t, &atom, &Term::f()), depth + 1)
    }
    go(t, 0)
}

pub fn tautology(c: &Clause) -> HeuristicOutcome {
    if is_tautology(&c.as_term()) {
        HeuristicOutcome::Proved
    } else {
        HeuristicOutcome::Failed
    }
}

/// Upper bound on the number of clauses produced by distribution.
pub const MAX_CNF_CLAUSES: usize = 512;

/// Conjunctive normal form as a list of disjunctions. `[]` is true and
/// `[[]]` is false. `None` when distribution would exceed
/// [`MAX_CNF_CLAUSES`].
pub fn cnf(t: &Term) -> Option<Vec<Vec<Term>>> {
    cnf_pol(t, true)
}

fn lit(atom: &Term, positive: bool) -> Term {
    if positive {
        atom.clone()
    } else {
        Term::not(atom.clone())
    }
}

fn cnf_or(a: Vec<Vec<Term>>, b: Vec<Vec<Term>>) -> Option<Vec<Vec<Term>>> {
    if a.len().saturating_mul(b.len()) > MAX_CNF_CLAUSES {
        return None;
    }
    let mut out = Vec::with_capacity(a.len() * b.len());
    for x in &a {
        for y in &b {
            let mut c = x.clone();
            c.extend(y.iter().cloned());
            out.push(c);
        }
    }
    Some(out)
}

fn cnf_and(mut a: Vec<Vec<Term>>, b: Vec<Vec<Term>>) -> Option<Vec<Vec<Term>>> {
    a.extend(b);
    (a.len() <= MAX_CNF_CLAUSES).then_some(a)
}

/// CNF of `t` (when `pos`) or of its negation.
fn cnf_pol(t: &Term, pos: bool) -> Option<Vec<Vec<Term>>> {
    if t.is_true() == pos && (t.is_true() || t.is_false()) {
        return Some(vec![]);
    }
    if t.is_true() || t.is_false() {
        return Some(vec![vec![]]);
    }
    if !is_connective_node(t) {
        return Some(vec![vec![lit(t, pos)]]);
    }
    let a = t.args();
    match t.head().expect("connective") {
        sym::NOT => cnf_pol(&a[0], !pos),
        sym::AND if pos => cnf_and(cnf_pol(&a[0], true)?, cnf_pol(&a[1], true)?),
        sym::AND => cnf_or(cnf_pol(&a[0], false)?, cnf_pol(&a[1], false)?),
        sym::OR if pos => cnf_or(cnf_pol(&a[0], true)?, cnf_pol(&a[1], true)?),
        sym::OR => cnf_and(cnf_pol(&a[0], false)?, cnf_pol(&a[1], false)?),
        sym::IMP if pos => cnf_or(cnf_pol(&a[0], false)?, cnf_pol(&a[1], true)?),
        sym::IMP => cnf_and(cnf_pol(&a[0], true)?, cnf_pol(&a[1], false)?),
        sym::IFF => {
            // p <=> q is (~p \/ q) /\ (p \/ ~q); its negation (p \/ q) /\ (~p \/ ~q).
            let l = cnf_or(cnf_pol(&a[0], false)?, cnf_pol(&a[1], pos)?)?;
            let r = cnf_or(cnf_pol(&a[0], true)?, cnf_pol(&a[1], !pos)?)?;
            cnf_and(l, r)
        }
        _ => {
            let l = cnf_or(cnf_pol(&a[0], false)?, cnf_pol(&a[1], pos)?)?;
            let r = cnf_or(cnf_pol(&a[0], true)?, cnf_pol(&a[2], pos)?)?;
            cnf_and(l, r)
        }
    }
}

/// Split a clause into clausal form. Clauses containing `T` vanish and `F`
/// literals are dropped.
pub fn clausal_form(c: &Clause) -> HeuristicOutcome {
    let mut acc: Vec<Vec<Term>> = vec![vec![]];
    for l in &c.lits {
        let Some(part) = cnf(l) else {
            return HeuristicOutcome::Failed;
        };
        let Some(next) = cnf_or(acc, part) else {
            return HeuristicOutcome::Failed;
        };
        acc = next;
    }
    let clauses: Vec<Vec<Term>> = acc
        .into_iter()
        .filter(|cl| !cl.iter().any(Term::is_true))
        .map(|cl| cl.into_iter().filter(|l| !l.is_false()).collect())
        .collect();
    if clauses.is_empty() {
        return HeuristicOutcome::Proved;
    }
    if clauses.len() == 1 && clauses[0] == c.lits {
        return HeuristicOutcome::Failed;
    }
    HeuristicOutcome::Replaced(clauses.into_iter().map(|l| c.derive(l, "cnf")).collect())
}

pub fn setify(c: &Clause) -> HeuristicOutcome {
    match clause_setify(c) {
        Some(r) => HeuristicOutcome::Replaced(vec![r]),
        None => HeuristicOutcome::Failed,
    }
}

/// Eliminate the first literal `~(x = t)` (or `~(t = x)`) whose variable
/// does not occur in `t`, substituting `t` for `x` in the rest.
pub fn substitution(c: &Clause) -> HeuristicOutcome {
    for (i, l) in c.lits.iter().enumerate() {
        let Some((a, b)) = l.as_neg_eq() else {
            continue;
        };
        let pick = |x: &Term, t: &Term| -> Option<(Var, Term)> {
            let v = x.as_var()?;
            (!t.contains_var(v)).then(|| (v.clone(), t.clone()))
        };
        let Some((v, t)) = pick(a, b).or_else(|| pick(b, a)) else {
            continue;
        };
        let s = Bindings::single(v, t);
        let lits = c
            .lits
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, x)| crate::term::apply_bindings(x, &s))
            .collect();
        return HeuristicOutcome::Replaced(vec![c.derive(lits, "subst")]);
    }
    HeuristicOutcome::Failed
}

/// Rewrite the clause. The second component is a warning when the rewriter
/// ran out of fuel.
pub fn simplify_heuristic(
    c: &Clause,
    th: &Theory,
    engine: Engine,
    fuel: usize,
) -> (HeuristicOutcome, Option<String>) {
    match simplify_clause(c, th, engine, fuel) {
        Ok(None) => (HeuristicOutcome::Failed, None),
        Ok(Some(r)) => {
            if r.lits.len() == 1 && r.lits[0].is_true() {
                (HeuristicOutcome::Proved, None)
            } else if r.lits.len() == 1 && r.lits[0].is_false() {
                (HeuristicOutcome::Disproved("simplifies to F".into()), None)
            } else {
                (HeuristicOutcome::Replaced(vec![r]), None)
            }
        }
        Err(e) => (
            HeuristicOutcome::Failed,
            Some(format!(
                "rewriting stopped after {} steps (suspected loop)",
                e.steps_used
            )),
        ),
    }
}

enum Fertilize<'a> {
    /// Replace a compound side everywhere.
    Everywhere(&'a Term, &'a Term),
    /// Replace a variable inside one side of positive equations only.
    Cross {
        var: &'a Term,
        by: &'a Term,
        right: bool,
    },
}

/// Cross-fertilization: use the first negated equation with a side that is
/// not an explicit value template to replace that side in the other
/// literals. A side that is a bare variable is replaced only on the
/// matching side of positive equations (`s = v` rewrites right-hand sides).
/// Induction-step clauses lose the equation.
pub fn equality(c: &Clause, th: &Theory) -> HeuristicOutcome {
    for (i, l) in c.lits.iter().enumerate() {
        let Some((s, t)) = l.as_neg_eq() else {
            continue;
        };
        let mut others = c
            .lits
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, m)| m);
        let compound = |x: &Term| !x.is_var() && !is_explicit_value_template(x, th);
        let in_side = |m: &Term, v: &Term, right: bool| {
            m.as_eq()
                .is_some_and(|(a, b)| if right { b.contains(v) } else { a.contains(v) })
        };
        let plan = if compound(s) && others.clone().any(|m| m.contains(s)) {
            Fertilize::Everywhere(s, t)
        } else if compound(t) && others.clone().any(|m| m.contains(t)) {
            Fertilize::Everywhere(t, s)
        } else if t.is_var() && compound(s) && others.clone().any(|m| in_side(m, t, true)) {
            Fertilize::Cross {
                var: t,
                by: s,
                right: true,
            }
        } else if s.is_var() && compound(t) && others.any(|m| in_side(m, s, false)) {
            Fertilize::Cross {
                var: s,
                by: t,
                right: false,
            }
        } else {
            continue;
        };
        let rewrite = |m: &Term| match plan {
            Fertilize::Everywhere(from, to) => m.replace(from, to),
            Fertilize::Cross { var, by, right } => match m.as_eq() {
                Some((a, b)) if right => Term::eq(a.clone(), b.replace(var, by)),
                Some((a, b)) => Term::eq(a.replace(var, by), b.clone()),
                None => m.clone(),
            },
        };
        let mut lits = Vec::with_capacity(c.lits.len());
        for (j, m) in c.lits.iter().enumerate() {
            if j == i {
                if !c.from_induction_step {
                    lits.push(m.clone());
                }
            } else {
                lits.push(rewrite(m));
            }
        }
        return HeuristicOutcome::Replaced(vec![c.derive(lits, "equal")]);
    }
    HeuristicOutcome::Failed
}

fn mentions_defined(t: &Term, th: &Theory) -> bool {
    t.any_symbol(&|f| th.is_defined(f))
}

/// `f(x1, ..., xn)` with distinct variables and `f` defined, possibly negated.
fn is_bare_call(t: &Term, th: &Theory) -> bool {
    let t = t.as_not().unwrap_or(t);
    match t {
        Term::App(f, args) if th.is_defined(f) && !args.is_empty() => {
            let mut seen = HashSet::new();
            args.iter()
                .all(|a| a.as_var().is_some_and(|v| seen.insert(v.clone())))
        }
        _ => false,
    }
}

/// Partition literal indices by shared variables.
pub fn partitions(c: &Clause) -> Vec<Vec<usize>> {
    let n = c.lits.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(p: &mut [usize], mut i: usize) -> usize {
        while p[i] != i {
            p[i] = p[p[i]];
            i = p[i];
        }
        i
    }
    let vars: Vec<_> = c.lits.iter().map(free_vars).collect();
    for i in 0..n {
        for j in i + 1..n {
            if !vars[i].is_disjoint(&vars[j]) {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[b] = a;
            }
        }
    }
    let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
    for i in 0..n {
        let r = find(&mut parent, i);
        match groups.iter_mut().find(|(root, _)| *root == r) {
            Some((_, g)) => g.push(i),
            None => groups.push((r, vec![i])),
        }
    }
    groups.into_iter().map(|(_, g)| g).collect()
}

/// Drop groups of literals that look falsifiable on their own: those
/// without defined functions, and lone calls of a defined function on
/// distinct variables.
pub fn irrelevance(c: &Clause, th: &Theory) -> HeuristicOutcome {
    let parts = partitions(c);
    let falsifiable = |g: &Vec<usize>| {
        g.iter().all(|&i| !mentions_defined(&c.lits[i], th))
            || (g.len() == 1 && is_bare_call(&c.lits[g[0]], th))
    };
    let keep: Vec<usize> = parts
        .iter()
        .filter(|g| !falsifiable(g))
        .flatten()
        .copied()
        .collect();
    if keep.is_empty() {
        return HeuristicOutcome::Disproved("every literal group is irrelevant".into());
    }
    if keep.len() == c.lits.len() {
        return HeuristicOutcome::Failed;
    }
    let mut keep = keep;
    keep.sort_unstable();
    let lits = keep.into_iter().map(|i| c.lits[i].clone()).collect();
    HeuristicOutcome::Replaced(vec![c.derive(lits, "irrel")])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use crate::theory::bundled;

    fn cl(th: &Theory, lits: &[&str]) -> Clause {
        Clause::new(lits.iter().map(|s| parse_term(th, s).unwrap()).collect())
    }

    fn replaced(o: HeuristicOutcome) -> Vec<Clause> {
        match o {
            HeuristicOutcome::Replaced(v) => v,
            other => panic!("expected replacement, got {other:?}"),
        }
    }

    #[test]
    fn ids_round_trip() {
        for h in Heuristic::ALL {
            assert_eq!(Heuristic::from_id(h.id()), Some(h));
        }
        assert!(Heuristic::parse_order("taut,,simp").is_ok());
        assert!(Heuristic::parse_order("taut,taut").is_err());
        assert!(Heuristic::parse_order("nope").is_err());
        assert_eq!(
            Heuristic::Simp.display_name(Engine::Full),
            "HL Simplify Heuristic"
        );
    }

    #[test]
    fn tautologies() {
        let th = bundled::peano();
        let t = |s: &str| tautology(&cl(&th, &[s]));
        assert_eq!(t("p \\/ ~p"), HeuristicOutcome::Proved);
        assert_eq!(
            tautology(&cl(&th, &["~(SUC n = n + SUC 0)", "SUC n = n + SUC 0"])),
            HeuristicOutcome::Proved
        );
        assert_eq!(t("m = 0 \\/ n = 0"), HeuristicOutcome::Failed);
        assert_eq!(t("x + 1 = x + 1"), HeuristicOutcome::Proved);
        assert_eq!(t("(p ==> q) ==> (~q ==> ~p)"), HeuristicOutcome::Proved);
    }

    #[test]
    fn clausal_form_splits_conjunctions() {
        let th = bundled::peano();
        let out = replaced(clausal_form(&cl(&th, &["m + n = 0 ==> m = 0 /\\ n = 0"])));
        assert_eq!(
            out,
            vec![
                cl(&th, &["~(m + n = 0)", "m = 0"]),
                cl(&th, &["~(m + n = 0)", "n = 0"])
            ]
        );
        let out = replaced(clausal_form(&cl(
            &th,
            &["SUC n = n + SUC 0 ==> SUC (SUC n) = SUC n + SUC 0"],
        )));
        assert_eq!(
            out,
            vec![cl(
                &th,
                &["~(SUC n = n + SUC 0)", "SUC (SUC n) = SUC n + SUC 0"]
            )]
        );
        assert_eq!(
            clausal_form(&cl(&th, &["a", "~b"])),
            HeuristicOutcome::Failed
        );
        assert_eq!(
            clausal_form(&cl(&th, &["a \\/ T"])),
            HeuristicOutcome::Proved
        );
    }

    #[test]
    fn substitution_eliminates_variable_equations() {
        let th = bundled::peano();
        let out = replaced(substitution(&cl(
            &th,
            &["a1", "~(x = SUC y)", "a2", "EVEN x"],
        )));
        assert_eq!(out, vec![cl(&th, &["a1", "a2", "EVEN (SUC y)"])]);
        assert_eq!(
            substitution(&cl(&th, &["~(x = SUC x)", "EVEN x"])),
            HeuristicOutcome::Failed
        );
        assert_eq!(substitution(&cl(&th, &["x = y"])), HeuristicOutcome::Failed);
    }

    #[test]
    fn simplify_outcomes() {
        let th = bundled::peano();
        let (o, _) = simplify_heuristic(&cl(&th, &["SUC 0 = 0 + SUC 0"]), &th, Engine::Full, 1000);
        assert_eq!(o, HeuristicOutcome::Proved);
        let (o, _) = simplify_heuristic(
            &cl(
                &th,
                &["~(SUC n = n + SUC 0)", "SUC (SUC n) = SUC n + SUC 0"],
            ),
            &th,
            Engine::Full,
            1000,
        );
        assert_eq!(
            replaced(o),
            vec![cl(&th, &["~(SUC n = n + SUC 0)", "SUC n = n + SUC 0"])]
        );
        let (o, _) = simplify_heuristic(&cl(&th, &["m + n = n + m"]), &th, Engine::Full, 1000);
        assert_eq!(o, HeuristicOutcome::Failed);
        let (o, _) = simplify_heuristic(&cl(&th, &["SUC 0 = 0"]), &th, Engine::Full, 1000);
        assert!(matches!(o, HeuristicOutcome::Disproved(_)));
    }

    #[test]
    fn cross_fertilization() {
        let th = bundled::peano();
        let mut c = cl(&th, &["~(n * 0 = 0)", "(n * 0) + 0 = 0"]);
        c.from_induction_step = true;
        assert_eq!(replaced(equality(&c, &th)), vec![cl(&th, &["0 + 0 = 0"])]);
        c.from_induction_step = false;
        assert_eq!(
            replaced(equality(&c, &th)),
            vec![cl(&th, &["~(n * 0 = 0)", "0 + 0 = 0"])]
        );
        let templ = cl(&th, &["~(SUC x = 0)", "EVEN (SUC x)"]);
        assert_eq!(equality(&templ, &th), HeuristicOutcome::Failed);
    }

    #[test]
    fn irrelevance_drops_unrelated_parts() {
        let th = bundled::lists();
        let c = cl(
            &th,
            &["p = []", "REVERSE (APPEND l [a]) = CONS a (REVERSE l)"],
        );
        assert_eq!(
            replaced(irrelevance(&c, &th)),
            vec![cl(&th, &["REVERSE (APPEND l [a]) = CONS a (REVERSE l)"])]
        );
        assert!(matches!(
            irrelevance(&cl(&th, &["p = []", "EVEN n"]), &th),
            HeuristicOutcome::Disproved(_)
        ));
        assert_eq!(
            irrelevance(&cl(&th, &["EVEN n", "ODD n"]), &th),
            HeuristicOutcome::Failed
        );
        assert_eq!(
            irrelevance(&cl(&th, &["m + n = n + m"]), &th),
            HeuristicOutcome::Failed
        );
    }
}
