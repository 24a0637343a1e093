//! Innermost term rewriting with two engines and native ground arithmetic.
//!
//! [`Engine::Bm`] rewrites applications of defined functions with their
//! definitions only, simplifies each literal assuming the others false and
//! removes duplicate literals. [`Engine::Full`] applies every rule at every
//! position and treats literals independently.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::term::{apply_bindings, match_pattern, sym, Bindings, Clause, Name, Term};
use crate::theory::{RewriteRule, SymbolKind, Theory};

pub const DEFAULT_FUEL: usize = 10_000;

/// Largest value that native arithmetic writes back as a constructor numeral.
pub const NUMERAL_CAP: u128 = 512;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    Bm,
    Full,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("rewriting exhausted its fuel of {fuel} steps")]
pub struct FuelExhausted {
    pub fuel: usize,
    pub steps_used: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteOutcome {
    pub result: Term,
    pub changed: bool,
    pub steps_used: usize,
}

/// Total order used to orient permutative rules: size, then head symbol by
/// registration index, then arguments left to right. Variables precede
/// applications of the same size and compare by name.
pub fn term_cmp(a: &Term, b: &Term, th: &Theory) -> Ordering {
    a.size().cmp(&b.size()).then_with(|| match (a, b) {
        (Term::Var(x), Term::Var(y)) => x.name.cmp(&y.name).then_with(|| x.sort.cmp(&y.sort)),
        (Term::Var(_), Term::App(..)) => Ordering::Less,
        (Term::App(..), Term::Var(_)) => Ordering::Greater,
        (Term::App(f, fa), Term::App(g, ga)) => th
            .symbol_index(f)
            .cmp(&th.symbol_index(g))
            .then_with(|| f.cmp(g))
            .then_with(|| {
                for (x, y) in fa.iter().zip(ga) {
                    let o = term_cmp(x, y, th);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                fa.len().cmp(&ga.len())
            }),
    })
}

/// A permutative rule may fire only when it makes the term strictly smaller.
pub fn permutative_ok(rule: &RewriteRule, b: &Bindings, th: &Theory) -> bool {
    let l = apply_bindings(&rule.lhs, b);
    let r = apply_bindings(&rule.rhs, b);
    term_cmp(&r, &l, th) == Ordering::Less
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum NativeOp {
    Plus,
    Mult,
    Exp,
    Sub,
    Pre,
    Le,
    Lt,
    Ge,
    Gt,
    Even,
    Odd,
    Fact,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Value {
    Num(u128),
    Bool(bool),
}

impl NativeOp {
    const ALL: [(&'static str, NativeOp, usize, bool); 12] = [
        ("PLUS", NativeOp::Plus, 2, false),
        ("MULT", NativeOp::Mult, 2, false),
        ("EXP", NativeOp::Exp, 2, false),
        ("SUB", NativeOp::Sub, 2, false),
        ("PRE", NativeOp::Pre, 1, false),
        ("LE", NativeOp::Le, 2, true),
        ("LT", NativeOp::Lt, 2, true),
        ("GE", NativeOp::Ge, 2, true),
        ("GT", NativeOp::Gt, 2, true),
        ("EVEN", NativeOp::Even, 1, true),
        ("ODD", NativeOp::Odd, 1, true),
        ("FACT", NativeOp::Fact, 1, false),
    ];

    fn eval(self, a: &[u128]) -> Option<Value> {
        use NativeOp::*;
        Some(match self {
            Plus => Value::Num(a[0].checked_add(a[1])?),
            Mult => Value::Num(a[0].checked_mul(a[1])?),
            Exp => Value::Num(a[0].checked_pow(u32::try_from(a[1]).ok()?)?),
            Sub => Value::Num(a[0].saturating_sub(a[1])),
            Pre => Value::Num(a[0].saturating_sub(1)),
            Le => Value::Bool(a[0] <= a[1]),
            Lt => Value::Bool(a[0] < a[1]),
            Ge => Value::Bool(a[0] >= a[1]),
            Gt => Value::Bool(a[0] > a[1]),
            Even => Value::Bool(a[0].is_multiple_of(2)),
            Odd => Value::Bool(a[0] % 2 == 1),
            Fact => {
                let mut acc: u128 = 1;
                for k in 2..=a[0] {
                    acc = acc.checked_mul(k)?;
                }
                Value::Num(acc)
            }
        })
    }
}

/// Arithmetic symbols of the theory whose definitions were checked to agree
/// with machine arithmetic on small inputs.
#[derive(Clone, Debug, Default)]
pub struct ArithOps {
    numerals: Option<(Name, Name, Name)>,
    ops: HashMap<Name, NativeOp>,
}

impl ArithOps {
    pub(crate) fn detect(th: &Theory) -> ArithOps {
        let mut out = ArithOps::default();
        let (Some(z), Some(s)) = (th.symbol("0"), th.symbol("SUC")) else {
            return out;
        };
        let sort = z.result.clone();
        let ok_kinds = matches!(z.kind, SymbolKind::Constructor { .. })
            && matches!(s.kind, SymbolKind::Constructor { .. })
            && s.params.len() == 1
            && s.params[0] == sort
            && s.result == sort;
        if !ok_kinds {
            return out;
        }
        out.numerals = Some(("0".into(), "SUC".into(), sort.clone()));
        let probe = ArithOps {
            numerals: out.numerals.clone(),
            ops: HashMap::new(),
        };
        for (name, op, arity, boolean) in NativeOp::ALL {
            let Some(info) = th.symbol(name) else {
                continue;
            };
            let want_result = if boolean { sym::BOOL } else { &*sort };
            if info.params.len() != arity
                || info.params.iter().any(|p| *p != sort)
                || &*info.result != want_result
            {
                continue;
            }
            let mut agrees = true;
            let inputs: Vec<Vec<u128>> = if arity == 1 {
                (0..5).map(|a| vec![a]).collect()
            } else {
                (0..4)
                    .flat_map(|a| (0..4).map(move |b| vec![a, b]))
                    .collect()
            };
            for args in inputs {
                let t = Term::app(name, args.iter().map(|&k| probe.numeral(k)).collect());
                let mut rw = Rewriter::new(th, Engine::Full, DEFAULT_FUEL);
                let got = rw.normalize(&t).ok().and_then(|r| probe.value_of_plain(&r));
                if got != op.eval(&args) {
                    agrees = false;
                    break;
                }
            }
            if agrees {
                out.ops.insert(name.into(), op);
            }
        }
        out
    }

    pub fn is_native(&self, f: &str) -> bool {
        self.ops.contains_key(f)
    }

    fn numeral(&self, k: u128) -> Term {
        let (z, s, _) = self.numerals.as_ref().expect("numeral symbols present");
        let mut t = Term::App(z.clone(), vec![]);
        for _ in 0..k {
            t = Term::App(s.clone(), vec![t]);
        }
        t
    }

    fn as_numeral(&self, t: &Term) -> Option<u128> {
        let (z, s, _) = self.numerals.as_ref()?;
        let mut k = 0u128;
        let mut cur = t;
        loop {
            match cur {
                Term::App(f, args) if f == z && args.is_empty() => return Some(k),
                Term::App(f, args) if f == s && args.len() == 1 => {
                    k += 1;
                    cur = &args[0];
                }
                _ => return None,
            }
        }
    }

    fn value_of_plain(&self, t: &Term) -> Option<Value> {
        if t.is_true() {
            return Some(Value::Bool(true));
        }
        if t.is_false() {
            return Some(Value::Bool(false));
        }
        self.as_numeral(t).map(Value::Num)
    }

    /// Value of a ground term built from numerals and native operations.
    fn value_of(&self, t: &Term) -> Option<Value> {
        if let Some(v) = self.value_of_plain(t) {
            return Some(v);
        }
        let Term::App(f, args) = t else { return None };
        if self.numerals.as_ref().is_some_and(|(_, s, _)| s == f) && args.len() == 1 {
            return match self.value_of(&args[0])? {
                Value::Num(n) => Some(Value::Num(n.checked_add(1)?)),
                Value::Bool(_) => None,
            };
        }
        if &**f == sym::EQ && args.len() == 2 {
            let a = self.value_of(&args[0])?;
            let b = self.value_of(&args[1])?;
            return Some(Value::Bool(a == b));
        }
        let op = self.ops.get(f)?;
        let mut vals = Vec::with_capacity(args.len());
        for a in args {
            match self.value_of(a)? {
                Value::Num(n) => vals.push(n),
                Value::Bool(_) => return None,
            }
        }
        op.eval(&vals)
    }

    fn to_term(&self, v: Value) -> Option<Term> {
        match v {
            Value::Bool(true) => Some(Term::t()),
            Value::Bool(false) => Some(Term::f()),
            Value::Num(n) if n <= NUMERAL_CAP => Some(self.numeral(n)),
            Value::Num(_) => None,
        }
    }
}

/// Replace maximal ground arithmetic subterms by their values. `None` when
/// nothing could be evaluated.
pub fn num_reduce(t: &Term, th: &Theory) -> Option<Term> {
    let ops = th.arith();
    fn go(t: &Term, ops: &ArithOps) -> Term {
        if let Some(v) = ops.value_of(t) {
            if let Some(r) = ops.to_term(v) {
                return r;
            }
        }
        match t {
            Term::Var(_) => t.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| go(a, ops)).collect()),
        }
    }
    let r = go(t, &ops);
    (r != *t).then_some(r)
}

/// Stateful innermost normalizer sharing one fuel budget across calls.
pub struct Rewriter<'a> {
    th: &'a Theory,
    engine: Engine,
    fuel: usize,
    used: usize,
    arith: Option<Arc<ArithOps>>,
    assumptions: Vec<(Term, Term)>,
}

impl<'a> Rewriter<'a> {
    pub fn new(th: &'a Theory, engine: Engine, fuel: usize) -> Self {
        Rewriter {
            th,
            engine,
            fuel,
            used: 0,
            arith: None,
            assumptions: Vec::new(),
        }
    }

    /// Enable native evaluation of ground arithmetic.
    pub fn with_num_reduce(mut self) -> Self {
        self.arith = Some(self.th.arith());
        self
    }

    pub fn steps_used(&self) -> usize {
        self.used
    }

    fn tick(&mut self) -> Result<(), FuelExhausted> {
        if self.used >= self.fuel {
            return Err(FuelExhausted {
                fuel: self.fuel,
                steps_used: self.fuel,
            });
        }
        self.used += 1;
        Ok(())
    }

    pub fn normalize(&mut self, t: &Term) -> Result<Term, FuelExhausted> {
        stacker::maybe_grow(64 * 1024, 4 * 1024 * 1024, || match t {
            Term::Var(_) => Ok(t.clone()),
            Term::App(f, args) => {
                let mut new = Vec::with_capacity(args.len());
                for a in args {
                    new.push(self.normalize(a)?);
                }
                self.reduce_root(Term::App(f.clone(), new))
            }
        })
    }

    /// Instantiate a rule body whose variables are bound to normal forms.
    fn build(&mut self, skel: &Term, b: &Bindings) -> Result<Term, FuelExhausted> {
        stacker::maybe_grow(64 * 1024, 4 * 1024 * 1024, || match skel {
            Term::Var(v) => Ok(b.get(v).cloned().unwrap_or_else(|| skel.clone())),
            Term::App(f, args) => {
                let mut new = Vec::with_capacity(args.len());
                for a in args {
                    new.push(self.build(a, b)?);
                }
                self.reduce_root(Term::App(f.clone(), new))
            }
        })
    }

    fn mk(&mut self, f: &str, args: Vec<Term>) -> Result<Term, FuelExhausted> {
        self.reduce_root(Term::app(f, args))
    }

    /// Rewrite at the root of a term whose arguments are already normal.
    fn reduce_root(&mut self, t: Term) -> Result<Term, FuelExhausted> {
        if let Some(v) = self
            .assumptions
            .iter()
            .find(|(a, _)| *a == t)
            .map(|(_, v)| v.clone())
        {
            self.tick()?;
            return Ok(v);
        }
        let Term::App(f, args) = &t else { return Ok(t) };
        if let Some(ops) = self.arith.clone() {
            if ops.is_native(f) || (&**f == sym::EQ && args.iter().all(Term::is_ground)) {
                if let Some(v) = ops.value_of(&t) {
                    match ops.to_term(v) {
                        Some(r) => {
                            if r != t {
                                self.tick()?;
                            }
                            return Ok(r);
                        }
                        // Too large to write out; keep it compact for the enclosing term.
                        None => return Ok(t),
                    }
                }
                // Ground but beyond machine arithmetic: unfolding would not terminate in practice.
                if ops.is_native(f) && args.iter().all(|a| ops.value_of(a).is_some()) {
                    return Ok(t);
                }
            }
        }
        if let Some(r) = self.builtin(f, args)? {
            return Ok(r);
        }
        if let Some(def) = self.th.fn_def(f) {
            for eq in &def.equations {
                if let Some(b) = match_pattern(&eq.lhs, &t, self.th) {
                    self.tick()?;
                    let rhs = eq.rhs.clone();
                    return self.build(&rhs, &b);
                }
            }
            if self.engine == Engine::Bm {
                return Ok(t);
            }
        }
        let th = self.th;
        for rule in th.rules() {
            let Some(b) = match_pattern(&rule.lhs, &t, th) else {
                continue;
            };
            if rule.permutative && !permutative_ok(rule, &b, th) {
                continue;
            }
            if let Some(c) = &rule.condition {
                let saved = std::mem::take(&mut self.assumptions);
                let cond = self.build(c, &b);
                self.assumptions = saved;
                if !cond?.is_true() {
                    continue;
                }
            }
            self.tick()?;
            return self.build(&rule.rhs, &b);
        }
        Ok(t)
    }

    fn builtin(&mut self, f: &str, args: &[Term]) -> Result<Option<Term>, FuelExhausted> {
        let th = self.th;
        let r = match (f, args) {
            (sym::NOT, [p]) => {
                if p.is_true() {
                    Some(Term::f())
                } else if p.is_false() {
                    Some(Term::t())
                } else {
                    p.as_not().cloned()
                }
            }
            (sym::OR, [p, q]) => {
                if p.is_true() || q.is_true() {
                    Some(Term::t())
                } else if p.is_false() {
                    Some(q.clone())
                } else if q.is_false() || p == q {
                    Some(p.clone())
                } else {
                    None
                }
            }
            (sym::AND, [p, q]) => {
                if p.is_false() || q.is_false() {
                    Some(Term::f())
                } else if p.is_true() {
                    Some(q.clone())
                } else if q.is_true() || p == q {
                    Some(p.clone())
                } else {
                    None
                }
            }
            (sym::IMP, [p, q]) => {
                if p.is_false() || q.is_true() || p == q {
                    Some(Term::t())
                } else if p.is_true() {
                    Some(q.clone())
                } else if q.is_false() {
                    self.tick()?;
                    return self.mk(sym::NOT, vec![p.clone()]).map(Some);
                } else {
                    None
                }
            }
            (sym::IFF, [p, q]) => {
                if p == q {
                    Some(Term::t())
                } else if p.is_true() {
                    Some(q.clone())
                } else if q.is_true() {
                    Some(p.clone())
                } else if p.is_false() || q.is_false() {
                    let other = if p.is_false() { q } else { p };
                    self.tick()?;
                    return self.mk(sym::NOT, vec![other.clone()]).map(Some);
                } else {
                    None
                }
            }
            (sym::ITE, [c, a, b]) => {
                if c.is_true() || a == b {
                    Some(a.clone())
                } else if c.is_false() {
                    Some(b.clone())
                } else {
                    None
                }
            }
            (sym::EQ, [a, b]) => {
                if a == b {
                    Some(Term::t())
                } else {
                    match (a, b) {
                        (Term::App(c1, x), Term::App(c2, y))
                            if th.is_constructor(c1) && th.is_constructor(c2) =>
                        {
                            if c1 != c2 {
                                Some(Term::f())
                            } else {
                                self.tick()?;
                                let mut acc: Option<Term> = None;
                                for (xi, yi) in x.iter().zip(y).rev() {
                                    let e = self.mk(sym::EQ, vec![xi.clone(), yi.clone()])?;
                                    acc = Some(match acc {
                                        None => e,
                                        Some(rest) => self.mk(sym::AND, vec![e, rest])?,
                                    });
                                }
                                return Ok(Some(acc.unwrap_or_else(Term::t)));
                            }
                        }
                        _ => None,
                    }
                }
            }
            (acc, [Term::App(c, cargs)]) => match th.symbol(acc).map(|s| &s.kind) {
                Some(SymbolKind::Accessor { ctor, index, .. }) if ctor == c => {
                    Some(cargs[*index].clone())
                }
                _ => None,
            },
            _ => None,
        };
        if r.is_some() {
            self.tick()?;
        }
        Ok(r)
    }

    fn assume_false(&mut self, lit: &Term) {
        let (atom, val) = match lit.as_not() {
            Some(a) => (a.clone(), Term::t()),
            None => (lit.clone(), Term::f()),
        };
        if atom.is_true() || atom.is_false() {
            return;
        }
        if let Some((a, b)) = atom.as_eq() {
            self.assumptions
                .push((Term::eq(b.clone(), a.clone()), val.clone()));
        }
        self.assumptions.push((atom, val));
    }
}

/// Normalize a single term.
pub fn rewrite_term(
    t: &Term,
    th: &Theory,
    engine: Engine,
    fuel: usize,
) -> Result<RewriteOutcome, FuelExhausted> {
    let mut rw = Rewriter::new(th, engine, fuel);
    let result = rw.normalize(t)?;
    Ok(RewriteOutcome {
        changed: result != *t,
        result,
        steps_used: rw.steps_used(),
    })
}

/// Ground evaluation: full rule set plus native arithmetic.
pub fn evaluate(t: &Term, th: &Theory, fuel: usize) -> Result<Term, FuelExhausted> {
    Rewriter::new(th, Engine::Full, fuel)
        .with_num_reduce()
        .normalize(t)
}

/// Post-process rewritten literals: any `T` proves the clause, `F` literals
/// vanish, and a clause left with nothing is `F`.
fn finish(lits: Vec<Term>) -> Vec<Term> {
    if lits.iter().any(Term::is_true) {
        return vec![Term::t()];
    }
    let kept: Vec<Term> = lits.into_iter().filter(|l| !l.is_false()).collect();
    if kept.is_empty() {
        vec![Term::f()]
    } else {
        kept
    }
}

pub fn simplify_clause(
    c: &Clause,
    th: &Theory,
    engine: Engine,
    fuel: usize,
) -> Result<Option<Clause>, FuelExhausted> {
    let mut rw = Rewriter::new(th, engine, fuel);
    let mut lits = c.lits.clone();
    match engine {
        Engine::Full => {
            for l in lits.iter_mut() {
                *l = rw.normalize(l)?;
            }
        }
        Engine::Bm => {
            for i in 0..lits.len() {
                rw.assumptions.clear();
                for (j, other) in lits.iter().enumerate() {
                    if j != i {
                        rw.assume_false(other);
                    }
                }
                lits[i] = rw.normalize(&lits[i])?;
                if lits[i].is_true() {
                    break;
                }
            }
        }
    }
    let mut lits = finish(lits);
    if engine == Engine::Bm {
        let mut seen: Vec<Term> = Vec::with_capacity(lits.len());
        for l in lits {
            if !seen.contains(&l) {
                seen.push(l);
            }
        }
        lits = seen;
    }
    if lits == c.lits {
        Ok(None)
    } else {
        Ok(Some(c.derive(lits, "simp")))
    }
}

pub fn simplify_bm(c: &Clause, th: &Theory, fuel: usize) -> Result<Option<Clause>, FuelExhausted> {
    simplify_clause(c, th, Engine::Bm, fuel)
}

pub fn simplify_full(
    c: &Clause,
    th: &Theory,
    fuel: usize,
) -> Result<Option<Clause>, FuelExhausted> {
    simplify_clause(c, th, Engine::Full, fuel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_term;
    use crate::theory::bundled;

    fn p(th: &Theory, s: &str) -> Term {
        parse_term(th, s).unwrap()
    }

    fn clause(th: &Theory, lits: &[&str]) -> Clause {
        Clause::new(lits.iter().map(|s| p(th, s)).collect())
    }

    #[test]
    fn base_case_of_running_example_is_proved() {
        let th = bundled::peano();
        for engine in [Engine::Bm, Engine::Full] {
            let r = simplify_clause(
                &clause(&th, &["SUC 0 = 0 + SUC 0"]),
                &th,
                engine,
                DEFAULT_FUEL,
            )
            .unwrap()
            .unwrap();
            assert_eq!(r.lits, vec![Term::t()]);
        }
    }

    #[test]
    fn step_case_rewrites_without_closing() {
        let th = bundled::peano();
        let c = clause(&th, &["~(SUC n = n + SUC 0)", "SUC(SUC n) = SUC n + SUC 0"]);
        let r = simplify_full(&c, &th, DEFAULT_FUEL).unwrap().unwrap();
        assert_eq!(
            r.lits,
            clause(&th, &["~(SUC n = n + SUC 0)", "SUC n = n + SUC 0"]).lits
        );
        // The contextual engine closes it outright.
        let r = simplify_bm(&c, &th, DEFAULT_FUEL).unwrap().unwrap();
        assert_eq!(r.lits, vec![Term::t()]);
    }

    #[test]
    fn builtin_logic() {
        let th = bundled::peano();
        let out = rewrite_term(&p(&th, "ite(p, q, q)"), &th, Engine::Bm, 10).unwrap();
        assert_eq!(out.result, p(&th, "q"));
        assert!(out.changed);
        let acc = rewrite_term(&p(&th, "PRE(SUC 0)"), &th, Engine::Full, 10).unwrap();
        assert_eq!(acc.result, p(&th, "0"));
        let inj = rewrite_term(&p(&th, "SUC m = SUC n"), &th, Engine::Full, 10).unwrap();
        assert_eq!(inj.result, p(&th, "m = n"));
        let dist = rewrite_term(&p(&th, "SUC m = 0"), &th, Engine::Full, 10).unwrap();
        assert_eq!(dist.result, Term::f());
    }

    #[test]
    fn normal_clause_fails() {
        let th = bundled::peano();
        assert_eq!(
            simplify_full(&clause(&th, &["m + n = n + m"]), &th, DEFAULT_FUEL).unwrap(),
            None
        );
        assert_eq!(
            simplify_bm(&clause(&th, &["m = 0", "n = 0"]), &th, DEFAULT_FUEL).unwrap(),
            None
        );
    }

    #[test]
    fn bm_removes_duplicates_full_does_not() {
        let th = bundled::peano();
        let c = clause(&th, &["m = 0", "n + m = m", "m = 0"]);
        assert_eq!(simplify_full(&c, &th, DEFAULT_FUEL).unwrap(), None);
        let r = simplify_bm(&c, &th, DEFAULT_FUEL).unwrap().unwrap();
        assert_eq!(r.lits.len(), 2);
    }

    #[test]
    fn definitions_unfold_after_induction() {
        let th = bundled::lists();
        let t = p(&th, "DBL(SUC n) = SUC n + SUC n");
        let out = rewrite_term(&t, &th, Engine::Full, DEFAULT_FUEL).unwrap();
        assert_eq!(out.result, p(&th, "SUC (DBL n) = n + SUC n"));
    }

    #[test]
    fn permutative_order() {
        let th = bundled::peano();
        let th = th.add_rewrite_rule(&p(&th, "x + y = y + x")).unwrap();
        let rule = th.rules().last().unwrap().clone();
        let b1 = match_pattern(&rule.lhs, &p(&th, "SUC 0 + 0"), &th).unwrap();
        assert!(permutative_ok(&rule, &b1, &th));
        let b2 = match_pattern(&rule.lhs, &p(&th, "0 + SUC 0"), &th).unwrap();
        assert!(!permutative_ok(&rule, &b2, &th));
        let b3 = match_pattern(&rule.lhs, &p(&th, "0 + 0"), &th).unwrap();
        assert!(!permutative_ok(&rule, &b3, &th));
        let r = rewrite_term(&p(&th, "b + a"), &th, Engine::Full, DEFAULT_FUEL).unwrap();
        assert_eq!(r.result, p(&th, "a + b"));
    }

    #[test]
    fn conditional_rules_need_true_condition() {
        let th = crate::syntax::load_theory(
            &bundled::peano(),
            "define G(num, num): num { G(0, y) = y; G(SUC x, y) = G(x, y); }
             rewrite EVEN x ==> G(y, x) = x;",
        )
        .unwrap();
        let fires = rewrite_term(&p(&th, "G(a, 2)"), &th, Engine::Full, DEFAULT_FUEL).unwrap();
        assert_eq!(fires.result, p(&th, "2"));
        let blocked = rewrite_term(&p(&th, "G(a, 1)"), &th, Engine::Full, DEFAULT_FUEL).unwrap();
        assert!(!blocked.changed);
    }

    #[test]
    fn fuel_exhaustion_reports_full_use() {
        let th = bundled::peano();
        let th = th.add_rewrite_rule(&p(&th, "x + y = y + (x + 0)")).unwrap();
        let err = rewrite_term(&p(&th, "a + b"), &th, Engine::Full, 50).unwrap_err();
        assert_eq!(
            err,
            FuelExhausted {
                fuel: 50,
                steps_used: 50
            }
        );
    }

    #[test]
    fn native_arithmetic() {
        let th = bundled::peano();
        let t = p(&th, "SUC 0 + 0 = SUC(SUC(SUC 0)) + SUC 0");
        assert_eq!(num_reduce(&t, &th), Some(Term::f()));
        let big = p(&th, "2 EXP 10 = 1024");
        let mut rw = Rewriter::new(&th, Engine::Full, DEFAULT_FUEL).with_num_reduce();
        assert_eq!(rw.normalize(&big).unwrap(), Term::t());
        assert!(rw.steps_used() <= 2);
        assert_eq!(num_reduce(&p(&th, "m + 0"), &th), None);
        let huge = p(&th, "10 EXP 10 = 0");
        assert_eq!(evaluate(&huge, &th, 100).unwrap(), Term::f());
    }

    #[test]
    fn overflowing_ground_terms_stay_compact() {
        let th = bundled::peano();
        let t = p(&th, "SUC(5 EXP 6) EXP (5 * 6) <= PRE 1");
        let r = evaluate(&t, &th, 100).unwrap();
        assert!(r.size() < 100, "{r:?}");
        let s = p(&th, "SUC(SUC(5 EXP 6) EXP 30) = 0");
        assert_eq!(evaluate(&s, &th, 100).unwrap(), Term::f());
    }

    #[test]
    fn native_ops_only_when_definitions_agree() {
        let th = bundled::peano();
        let ops = th.arith();
        for f in [
            "PLUS", "MULT", "EXP", "SUB", "PRE", "LE", "LT", "EVEN", "ODD",
        ] {
            assert!(ops.is_native(f), "{f}");
        }
        let odd = crate::syntax::load_theory(
            &Theory::new(),
            "shell num { bottom 0; con SUC(num) accessors (PRE); }\n\
             define PLUS(num, num): num { PLUS(0, y) = SUC(y); PLUS(SUC(x), y) = SUC(PLUS(x, y)); }",
        )
        .unwrap();
        assert!(!odd.arith().is_native("PLUS"));
    }
}
