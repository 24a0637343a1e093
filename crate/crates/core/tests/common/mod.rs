//! Shared helpers for the integration tests: an evaluator over native Rust
//! values that knows the bundled definitions by heart, and ground sampling.

#![allow(dead_code)]

use std::collections::HashMap;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use waterfall::term::free_vars;
use waterfall::{Clause, Term, Var};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Value {
    Num(u64),
    List(Vec<u64>),
    Bool(bool),
}

/// Numbers above this are treated as "too big to judge"; evaluation gives up.
const CAP: u64 = 1 << 20;

pub type Env = HashMap<Var, Value>;

fn num(v: Value) -> Option<u64> {
    match v {
        Value::Num(n) if n <= CAP => Some(n),
        _ => None,
    }
}

fn list(v: Value) -> Option<Vec<u64>> {
    match v {
        Value::List(l) => Some(l),
        _ => None,
    }
}

fn boolean(v: Value) -> Option<bool> {
    match v {
        Value::Bool(b) => Some(b),
        _ => None,
    }
}

fn even(n: u64) -> bool {
    n.is_multiple_of(2)
}

/// Value of `t` under `env`; `None` when the term is outside the oracle's
/// reach (accessor of a bottom object, numbers beyond the cap).
pub fn eval(t: &Term, env: &Env) -> Option<Value> {
    let (f, args) = match t {
        Term::Var(v) => return env.get(v).cloned(),
        Term::App(f, args) => (&**f, args.as_slice()),
    };
    let a = |i: usize| eval(&args[i], env);
    let n = |i: usize| a(i).and_then(num);
    let l = |i: usize| a(i).and_then(list);
    let b = |i: usize| a(i).and_then(boolean);
    let out = match f {
        "T" => Value::Bool(true),
        "F" => Value::Bool(false),
        "not" => Value::Bool(!b(0)?),
        "or" => Value::Bool(b(0)? || b(1)?),
        "and" => Value::Bool(b(0)? && b(1)?),
        "imp" => Value::Bool(!b(0)? || b(1)?),
        "iff" => Value::Bool(b(0)? == b(1)?),
        "eq" => Value::Bool(a(0)? == a(1)?),
        "ite" => {
            if b(0)? {
                a(1)?
            } else {
                a(2)?
            }
        }
        "0" => Value::Num(0),
        "SUC" => Value::Num(n(0)? + 1),
        "PRE" => Value::Num(n(0)?.saturating_sub(1)),
        "PLUS" => Value::Num(n(0)? + n(1)?),
        "MULT" => Value::Num(n(0)?.checked_mul(n(1)?)?),
        "EXP" => Value::Num(n(0)?.checked_pow(u32::try_from(n(1)?).ok()?)?),
        "SUB" => Value::Num(n(0)?.saturating_sub(n(1)?)),
        "LE" => Value::Bool(n(0)? <= n(1)?),
        "LT" => Value::Bool(n(0)? < n(1)?),
        "GE" => Value::Bool(n(0)? >= n(1)?),
        "GT" => Value::Bool(n(0)? > n(1)?),
        "EVEN" => Value::Bool(even(n(0)?)),
        "ODD" => Value::Bool(!even(n(0)?)),
        "FACT" => {
            let k = n(0)?;
            if k > 12 {
                return None;
            }
            Value::Num((1..=k).product())
        }
        "DBL" => Value::Num(2 * n(0)?),
        "NIL" => Value::List(Vec::new()),
        "CONS" => {
            let mut t = l(1)?;
            t.insert(0, n(0)?);
            Value::List(t)
        }
        "HD" => Value::Num(*l(0)?.first()?),
        "TL" => {
            let v = l(0)?;
            if v.is_empty() {
                return None;
            }
            Value::List(v[1..].to_vec())
        }
        "APPEND" => {
            let mut x = l(0)?;
            x.extend(l(1)?);
            Value::List(x)
        }
        "REVERSE" => Value::List(l(0)?.into_iter().rev().collect()),
        "QREV" => {
            let mut x: Vec<u64> = l(0)?.into_iter().rev().collect();
            x.extend(l(1)?);
            Value::List(x)
        }
        "LENGTH" => Value::Num(l(0)?.len() as u64),
        "MEM" => Value::Bool(l(1)?.contains(&n(0)?)),
        "SUM" => Value::Num(l(0)?.iter().sum()),
        other => panic!("oracle does not know `{other}`"),
    };
    match out {
        Value::Num(k) if k > CAP => None,
        v => Some(v),
    }
}

pub fn random_value<R: Rng>(sort: &str, rng: &mut R) -> Value {
    match sort {
        "num" => Value::Num(rng.gen_range(0..7)),
        "list" => Value::List(
            (0..rng.gen_range(0..5))
                .map(|_| rng.gen_range(0..4))
                .collect(),
        ),
        "bool" => Value::Bool(rng.gen()),
        other => panic!("no sampler for sort `{other}`"),
    }
}

pub fn random_env<R: Rng>(vars: impl IntoIterator<Item = Var>, rng: &mut R) -> Env {
    vars.into_iter()
        .map(|v| {
            let x = random_value(&v.sort, rng);
            (v, x)
        })
        .collect()
}

/// Truth of a clause (disjunction of its literals) under `env`.
pub fn holds(c: &Clause, env: &Env) -> Option<bool> {
    eval(&c.as_term(), env).and_then(boolean)
}

/// First of `n` seeded instantiations that makes `t` false.
pub fn falsify(t: &Term, n: usize, seed: u64) -> Option<Env> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let vars = free_vars(t);
    (0..n).find_map(|_| {
        let env = random_env(vars.iter().cloned(), &mut rng);
        (eval(t, &env).and_then(boolean) == Some(false)).then_some(env)
    })
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn v(name: &str, sort: &str) -> Term {
    Term::var(name, sort)
}

/// Well-sorted arithmetic terms over `m`, `n`, `p`.
pub fn num_term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(v("m", "num")),
        Just(v("n", "num")),
        Just(v("p", "num")),
        Just(Term::constant("0")),
    ];
    leaf.prop_recursive(4, 24, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(|a| Term::app("SUC", vec![a])),
            inner.clone().prop_map(|a| Term::app("PRE", vec![a])),
            (
                prop::sample::select(vec!["PLUS", "MULT", "SUB", "EXP"]),
                inner.clone(),
                inner
            )
                .prop_map(|(f, a, b)| Term::app(f, vec![a, b])),
        ]
    })
}

/// Boolean formulas whose atoms are arithmetic comparisons.
pub fn formula() -> impl Strategy<Value = Term> {
    let atom = prop_oneof![
        (num_term(), num_term()).prop_map(|(a, b)| Term::eq(a, b)),
        (
            prop::sample::select(vec!["LT", "LE"]),
            num_term(),
            num_term()
        )
            .prop_map(|(f, a, b)| Term::app(f, vec![a, b])),
        num_term().prop_map(|a| Term::app("EVEN", vec![a])),
        Just(Term::t()),
        Just(Term::f()),
    ];
    atom.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::not),
            (
                prop::sample::select(vec!["and", "or", "imp", "iff"]),
                inner.clone(),
                inner
            )
                .prop_map(|(f, a, b)| Term::app(f, vec![a, b])),
        ]
    })
}

/// Propositional skeletons over at most four boolean atoms.
pub fn skeleton() -> impl Strategy<Value = Term> {
    let atom = prop::sample::select(vec!["a", "b", "c", "d"]).prop_map(|n| v(n, "bool"));
    let leaf = prop_oneof![4 => atom, 1 => Just(Term::t()), 1 => Just(Term::f())];
    leaf.prop_recursive(5, 32, 3, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::not),
            (
                prop::sample::select(vec!["and", "or", "imp", "iff"]),
                inner.clone(),
                inner.clone()
            )
                .prop_map(|(f, a, b)| Term::app(f, vec![a, b])),
            (inner.clone(), inner.clone(), inner).prop_map(|(c, a, b)| Term::ite(c, a, b)),
        ]
    })
}
