//! First-order terms, clauses and the small toolkit every heuristic is built on:
//! one-way matching, simultaneous substitution, variable measures and
//! clause-level utilities.
//!
//! Logical structure is not a separate AST. Connectives are applications of
//! reserved symbols (see [`sym`]) so that every heuristic is a plain
//! term-to-term transformation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use fnv::FnvHasher;
use serde::{Serialize, Serializer};

use crate::theory::Theory;

/// Interned-ish name used for symbols, variables and sorts.
pub type Name = Arc<str>;

/// Reserved symbol names and the boolean sort.
pub mod sym {
    pub const TRUE: &str = "T";
    pub const FALSE: &str = "F";
    pub const NOT: &str = "not";
    pub const OR: &str = "or";
    pub const AND: &str = "and";
    pub const IMP: &str = "imp";
    pub const IFF: &str = "iff";
    pub const EQ: &str = "eq";
    pub const ITE: &str = "ite";
    pub const BOOL: &str = "bool";

    pub const RESERVED: [&str; 9] = [TRUE, FALSE, NOT, OR, AND, IMP, IFF, EQ, ITE];

    /// Propositional connectives (not `eq`, which builds atoms).
    pub fn is_connective(s: &str) -> bool {
        matches!(s, NOT | OR | AND | IMP | IFF)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Var {
    pub name: Name,
    pub sort: Name,
}

impl Var {
    pub fn new(name: &str, sort: &str) -> Self {
        Var {
            name: name.into(),
            sort: sort.into(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum Term {
    Var(Var),
    App(Name, Vec<Term>),
}

impl Term {
    pub fn var(name: &str, sort: &str) -> Term {
        Term::Var(Var::new(name, sort))
    }

    pub fn app(f: &str, args: Vec<Term>) -> Term {
        Term::App(f.into(), args)
    }

    pub fn constant(c: &str) -> Term {
        Term::App(c.into(), Vec::new())
    }

    pub fn t() -> Term {
        Term::constant(sym::TRUE)
    }

    pub fn f() -> Term {
        Term::constant(sym::FALSE)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: Term) -> Term {
        Term::app(sym::NOT, vec![p])
    }

    pub fn or(p: Term, q: Term) -> Term {
        Term::app(sym::OR, vec![p, q])
    }

    pub fn and(p: Term, q: Term) -> Term {
        Term::app(sym::AND, vec![p, q])
    }

    pub fn imp(p: Term, q: Term) -> Term {
        Term::app(sym::IMP, vec![p, q])
    }

    pub fn iff(p: Term, q: Term) -> Term {
        Term::app(sym::IFF, vec![p, q])
    }

    pub fn eq(a: Term, b: Term) -> Term {
        Term::app(sym::EQ, vec![a, b])
    }

    pub fn ite(c: Term, a: Term, b: Term) -> Term {
        Term::app(sym::ITE, vec![c, a, b])
    }

    /// Right-nested disjunction; `F` for an empty list.
    pub fn disj(lits: &[Term]) -> Term {
        match lits.split_last() {
            None => Term::f(),
            Some((last, rest)) => rest
                .iter()
                .rev()
                .fold(last.clone(), |acc, l| Term::or(l.clone(), acc)),
        }
    }

    pub fn head(&self) -> Option<&str> {
        match self {
            Term::App(f, _) => Some(f),
            Term::Var(_) => None,
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::App(_, args) => args,
            Term::Var(_) => &[],
        }
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn as_var(&self) -> Option<&Var> {
        match self {
            Term::Var(v) => Some(v),
            Term::App(..) => None,
        }
    }

    pub fn is_app_of(&self, f: &str) -> bool {
        self.head() == Some(f)
    }

    pub fn is_true(&self) -> bool {
        self.is_app_of(sym::TRUE)
    }

    pub fn is_false(&self) -> bool {
        self.is_app_of(sym::FALSE)
    }

    /// `(lhs, rhs)` when the term is an equation.
    pub fn as_eq(&self) -> Option<(&Term, &Term)> {
        match self {
            Term::App(f, args) if &**f == sym::EQ => Some((&args[0], &args[1])),
            _ => None,
        }
    }

    /// The argument of a negation.
    pub fn as_not(&self) -> Option<&Term> {
        match self {
            Term::App(f, args) if &**f == sym::NOT => Some(&args[0]),
            _ => None,
        }
    }

    /// `(lhs, rhs)` of a negated equation `~(lhs = rhs)`.
    pub fn as_neg_eq(&self) -> Option<(&Term, &Term)> {
        self.as_not().and_then(Term::as_eq)
    }

    /// Number of nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Height of the tree; a leaf has depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Term::Var(_) => 0,
            Term::App(_, args) => args.iter().map(|a| a.depth() + 1).max().unwrap_or(0),
        }
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    pub fn contains(&self, sub: &Term) -> bool {
        self == sub || self.args().iter().any(|a| a.contains(sub))
    }

    pub fn contains_var(&self, v: &Var) -> bool {
        match self {
            Term::Var(w) => w == v,
            Term::App(_, args) => args.iter().any(|a| a.contains_var(v)),
        }
    }

    pub fn count_occurrences(&self, sub: &Term) -> usize {
        if self == sub {
            return 1;
        }
        self.args().iter().map(|a| a.count_occurrences(sub)).sum()
    }

    /// Replace every occurrence of `from` by `to` (outermost first, no rescanning).
    pub fn replace(&self, from: &Term, to: &Term) -> Term {
        if self == from {
            return to.clone();
        }
        match self {
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(
                f.clone(),
                args.iter().map(|a| a.replace(from, to)).collect(),
            ),
        }
    }

    /// Pre-order walk over all subterms, including `self`.
    pub fn subterms(&self) -> Vec<&Term> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            for a in t.args().iter().rev() {
                stack.push(a);
            }
        }
        out
    }

    pub fn any_symbol(&self, pred: &dyn Fn(&str) -> bool) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(f, args) => pred(f) || args.iter().any(|a| a.any_symbol(pred)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_term(self))
    }
}

impl Serialize for Term {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Variable-to-term map. Substitution through [`apply_bindings`] is
/// simultaneous.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Bindings(BTreeMap<Var, Term>);

impl Bindings {
    pub fn new() -> Self {
        Bindings(BTreeMap::new())
    }

    pub fn single(v: Var, t: Term) -> Self {
        let mut b = Bindings::new();
        b.0.insert(v, t);
        b
    }

    pub fn get(&self, v: &Var) -> Option<&Term> {
        self.0.get(v)
    }

    pub fn insert(&mut self, v: Var, t: Term) -> Option<Term> {
        self.0.insert(v, t)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, &Term)> {
        self.0.iter()
    }

    /// True when no variable is bound to a term containing it.
    pub fn passes_occurs_check(&self) -> bool {
        self.0
            .iter()
            .all(|(v, t)| !t.contains_var(v) || t == &Term::Var(v.clone()))
    }
}

impl fmt::Display for Bindings {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (v, t)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{} := {}", v.name, t)?;
        }
        f.write_str("}")
    }
}

impl Serialize for Bindings {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (v, t) in &self.0 {
            m.serialize_entry(&*v.name, t)?;
        }
        m.end()
    }
}

/// Syntactic one-way matching. Repeated pattern variables must meet identical
/// subterms; variables only match subjects of their own sort.
pub fn match_pattern(pattern: &Term, subject: &Term, th: &Theory) -> Option<Bindings> {
    let mut b = Bindings::new();
    if match_into(pattern, subject, th, &mut b) {
        Some(b)
    } else {
        None
    }
}

pub(crate) fn match_into(pattern: &Term, subject: &Term, th: &Theory, b: &mut Bindings) -> bool {
    match pattern {
        Term::Var(v) => {
            if let Some(bound) = b.get(v) {
                return bound == subject;
            }
            if th.sort_of(subject).as_deref() != Some(&*v.sort) {
                return false;
            }
            b.insert(v.clone(), subject.clone());
            true
        }
        Term::App(f, pargs) => match subject {
            Term::App(g, sargs) if f == g && pargs.len() == sargs.len() => pargs
                .iter()
                .zip(sargs)
                .all(|(p, s)| match_into(p, s, th, b)),
            _ => false,
        },
    }
}

/// Whether some instance of `general` has all its literals among those of
/// `specific`, so that proving `general` proves `specific`.
pub fn subsumes(general: &Clause, specific: &Clause, th: &Theory) -> bool {
    fn go(rest: &[Term], specific: &[Term], th: &Theory, b: &Bindings) -> bool {
        let Some((l, rest)) = rest.split_first() else {
            return true;
        };
        specific.iter().any(|s| {
            let mut b2 = b.clone();
            match_into(l, s, th, &mut b2) && go(rest, specific, th, &b2)
        })
    }
    go(&general.lits, &specific.lits, th, &Bindings::new())
}

/// Simultaneous replacement of bound variables; unbound variables stay.
pub fn apply_bindings(t: &Term, b: &Bindings) -> Term {
    match t {
        Term::Var(v) => b.get(v).cloned().unwrap_or_else(|| t.clone()),
        Term::App(f, args) => Term::App(
            f.clone(),
            args.iter().map(|a| apply_bindings(a, b)).collect(),
        ),
    }
}

pub fn free_vars(t: &Term) -> BTreeSet<Var> {
    let mut out = BTreeSet::new();
    collect_vars(t, &mut |v| {
        out.insert(v.clone());
    });
    out
}

/// Variables in order of first occurrence.
pub fn vars_in_order(t: &Term) -> Vec<Var> {
    let mut out: Vec<Var> = Vec::new();
    collect_vars(t, &mut |v| {
        if !out.contains(v) {
            out.push(v.clone());
        }
    });
    out
}

fn collect_vars(t: &Term, f: &mut dyn FnMut(&Var)) {
    match t {
        Term::Var(v) => f(v),
        Term::App(_, args) => args.iter().for_each(|a| collect_vars(a, f)),
    }
}

/// Deepest variable occurrence, counting application nodes strictly above it
/// (root at depth 0). Ground terms measure 0.
pub fn max_var_depth(t: &Term) -> usize {
    fn go(t: &Term, d: usize) -> Option<usize> {
        match t {
            Term::Var(_) => Some(d),
            Term::App(_, args) => args.iter().filter_map(|a| go(a, d + 1)).max(),
        }
    }
    go(t, 0).unwrap_or(0)
}

/// Non-variable term built from constants, bottom objects and constructor
/// applications whose arguments are variables or (recursively) templates.
pub fn is_explicit_value_template(t: &Term, th: &Theory) -> bool {
    match t {
        Term::Var(_) => false,
        Term::App(f, args) => {
            if args.is_empty() {
                return th.is_constructor(f) || f.as_ref() == sym::TRUE || f.as_ref() == sym::FALSE;
            }
            th.is_constructor(f)
                && args
                    .iter()
                    .all(|a| a.is_var() || is_explicit_value_template(a, th))
        }
    }
}

/// Where a clause came from.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Origin {
    Initial,
    Heuristic(&'static str),
    InductionBase,
    InductionStep,
}

/// A disjunction of literals. Falsity is the single literal `F`, never the
/// empty list.
#[derive(Clone, Debug)]
pub struct Clause {
    pub lits: Vec<Term>,
    pub from_induction_step: bool,
    pub origin: Origin,
}

impl PartialEq for Clause {
    fn eq(&self, other: &Self) -> bool {
        self.lits == other.lits
    }
}

impl Eq for Clause {}

impl Clause {
    pub fn new(lits: Vec<Term>) -> Self {
        let lits = if lits.is_empty() {
            vec![Term::f()]
        } else {
            lits
        };
        Clause {
            lits,
            from_induction_step: false,
            origin: Origin::Initial,
        }
    }

    pub fn unit(t: Term) -> Self {
        Clause::new(vec![t])
    }

    /// A clause derived from `self` by a heuristic; keeps the step flag.
    pub fn derive(&self, lits: Vec<Term>, heuristic: &'static str) -> Clause {
        let lits = if lits.is_empty() {
            vec![Term::f()]
        } else {
            lits
        };
        Clause {
            lits,
            from_induction_step: self.from_induction_step,
            origin: Origin::Heuristic(heuristic),
        }
    }

    pub fn as_term(&self) -> Term {
        Term::disj(&self.lits)
    }

    pub fn vars(&self) -> Vec<Var> {
        let mut out: Vec<Var> = Vec::new();
        for l in &self.lits {
            for v in vars_in_order(l) {
                if !out.contains(&v) {
                    out.push(v);
                }
            }
        }
        out
    }

    pub fn max_var_depth(&self) -> usize {
        self.lits.iter().map(max_var_depth).max().unwrap_or(0)
    }

    pub fn is_ground(&self) -> bool {
        self.lits.iter().all(Term::is_ground)
    }

    pub fn apply(&self, b: &Bindings) -> Vec<Term> {
        self.lits.iter().map(|l| apply_bindings(l, b)).collect()
    }

    /// Exact syntactic fingerprint (variable names matter).
    pub fn fingerprint(&self) -> u64 {
        let mut h = FnvHasher::default();
        self.lits.hash(&mut h);
        h.finish()
    }

    /// Fingerprint modulo consistent renaming of variables.
    pub fn family_fingerprint(&self) -> u64 {
        let mut h = FnvHasher::default();
        let mut seen: Vec<Var> = Vec::new();
        for l in &self.lits {
            hash_canonical(l, &mut seen, &mut h);
            0xffu8.hash(&mut h);
        }
        h.finish()
    }
}

fn hash_canonical(t: &Term, seen: &mut Vec<Var>, h: &mut FnvHasher) {
    match t {
        Term::Var(v) => {
            let idx = match seen.iter().position(|w| w == v) {
                Some(i) => i,
                None => {
                    seen.push(v.clone());
                    seen.len() - 1
                }
            };
            0u8.hash(h);
            idx.hash(h);
            v.sort.hash(h);
        }
        Term::App(f, args) => {
            1u8.hash(h);
            f.hash(h);
            args.len().hash(h);
            for a in args {
                hash_canonical(a, seen, h);
            }
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::print_clause(self))
    }
}

impl Serialize for Clause {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Keep the first copy of each literal. `None` when nothing was removed.
pub fn clause_setify(c: &Clause) -> Option<Clause> {
    let mut out: Vec<Term> = Vec::with_capacity(c.lits.len());
    for l in &c.lits {
        if !out.contains(l) {
            out.push(l.clone());
        }
    }
    if out.len() == c.lits.len() {
        None
    } else {
        Some(c.derive(out, "setify"))
    }
}

/// Name not in `taken`, built from `base` by appending primes.
pub fn variant_name(base: &str, taken: &dyn Fn(&str) -> bool) -> String {
    let mut name = base.to_string();
    while taken(&name) {
        name.push('\'');
    }
    name
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use crate::theory::bundled;

    fn th() -> Theory {
        bundled::peano()
    }

    fn p(th: &Theory, s: &str) -> Term {
        parse_term(th, s).unwrap()
    }

    #[test]
    fn match_instantiates_variable() {
        let th = th();
        let b = match_pattern(&p(&th, "x + 0"), &p(&th, "SUC(0) + 0"), &th).unwrap();
        assert_eq!(b.get(&Var::new("x", "num")), Some(&p(&th, "SUC(0)")));
    }

    #[test]
    fn match_rejects_nonlinear_mismatch() {
        let th = th();
        assert!(match_pattern(&p(&th, "x + x"), &p(&th, "0 + SUC(0)"), &th).is_none());
    }

    #[test]
    fn variable_matches_anything_of_its_sort() {
        let th = bundled::lists();
        let pat = Term::var("x", "list");
        let subj = p(&th, "REVERSE(l)");
        let b = match_pattern(&pat, &subj, &th).unwrap();
        assert_eq!(b.get(&Var::new("x", "list")), Some(&subj));
        assert!(match_pattern(&Term::var("x", "num"), &subj, &th).is_none());
    }

    #[test]
    fn apply_is_simultaneous() {
        let th = th();
        let mut b = Bindings::new();
        b.insert(Var::new("x", "num"), p(&th, "y"));
        b.insert(Var::new("y", "num"), p(&th, "x"));
        assert_eq!(apply_bindings(&p(&th, "x + y"), &b), p(&th, "y + x"));
        let b = Bindings::single(Var::new("x", "num"), p(&th, "0"));
        assert_eq!(apply_bindings(&p(&th, "x + y"), &b), p(&th, "0 + y"));
        let b = Bindings::single(Var::new("x", "num"), p(&th, "SUC(0)"));
        assert_eq!(
            apply_bindings(&p(&th, "x + x"), &b),
            p(&th, "SUC(0) + SUC(0)")
        );
    }

    #[test]
    fn free_vars_examples() {
        let th = th();
        assert!(free_vars(&p(&th, "0")).is_empty());
        let fv: Vec<_> = free_vars(&p(&th, "m + n = n + m"))
            .into_iter()
            .map(|v| v.name.to_string())
            .collect();
        assert_eq!(fv, vec!["m", "n"]);
        assert_eq!(free_vars(&p(&th, "SUC(SUC(x))")).len(), 1);
    }

    #[test]
    fn max_var_depth_examples() {
        let th = th();
        assert_eq!(max_var_depth(&p(&th, "x")), 0);
        assert_eq!(max_var_depth(&p(&th, "SUC(SUC(x))")), 2);
        assert_eq!(max_var_depth(&p(&th, "SUC(x) + y")), 2);
        assert_eq!(max_var_depth(&p(&th, "SUC(SUC(0))")), 0);
    }

    #[test]
    fn explicit_value_templates() {
        let th = th();
        for s in ["0", "SUC(0)", "SUC(SUC(x))"] {
            assert!(is_explicit_value_template(&p(&th, s), &th), "{s}");
        }
        assert!(!is_explicit_value_template(&p(&th, "n * 0"), &th));
        assert!(!is_explicit_value_template(&p(&th, "x"), &th));
        assert!(!is_explicit_value_template(&p(&th, "SUC(x + 0)"), &th));
    }

    #[test]
    fn setify_examples() {
        let th = th();
        let a = p(&th, "EVEN(n)");
        let b = p(&th, "ODD(m)");
        let c = Clause::new(vec![a.clone(), b.clone(), a.clone()]);
        assert_eq!(clause_setify(&c).unwrap().lits, vec![a.clone(), b.clone()]);
        assert!(clause_setify(&Clause::new(vec![a.clone(), b])).is_none());
        let c = Clause::new(vec![a.clone(), a.clone(), a.clone()]);
        assert_eq!(clause_setify(&c).unwrap().lits, vec![a]);
    }

    #[test]
    fn family_fingerprint_ignores_names() {
        let th = th();
        let c1 = Clause::unit(p(&th, "m + n = n + m"));
        let c2 = Clause::unit(p(&th, "a + b = b + a"));
        let c3 = Clause::unit(p(&th, "a + b = a + b"));
        assert_eq!(c1.family_fingerprint(), c2.family_fingerprint());
        assert_ne!(c1.family_fingerprint(), c3.family_fingerprint());
        assert_ne!(c1.fingerprint(), c2.fingerprint());
    }
}
