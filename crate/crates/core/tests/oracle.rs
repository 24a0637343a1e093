mod common;

use proptest::prelude::*;

use common::{eval, formula, random_env, rng, Env, Value};
use waterfall::rewrite::{evaluate, DEFAULT_FUEL};
use waterfall::term::{apply_bindings, free_vars};
use waterfall::{bundled, parse_term, Bindings, Term};

fn to_term(v: &Value) -> Term {
    match v {
        Value::Num(n) => (0..*n).fold(Term::constant("0"), |t, _| Term::app("SUC", vec![t])),
        Value::Bool(true) => Term::t(),
        Value::Bool(false) => Term::f(),
        Value::List(xs) => xs.iter().rev().fold(Term::constant("NIL"), |t, x| {
            Term::app("CONS", vec![to_term(&Value::Num(*x)), t])
        }),
    }
}

fn ground(t: &Term, env: &Env) -> Term {
    let mut b = Bindings::new();
    for (v, x) in env {
        b.insert(v.clone(), to_term(x));
    }
    apply_bindings(t, &b)
}

#[test]
fn oracle_knows_the_bundled_definitions() {
    let th = bundled::lists();
    let env = Env::new();
    let cases = [
        ("3 EXP 2 = 9", true),
        ("5 - 7 = 0", true),
        ("PRE 0 = 0", true),
        ("FACT 4 = 24", true),
        ("REVERSE [1, 2, 3] = [3, 2, 1]", true),
        ("QREV [1, 2] [5] = [2, 1, 5]", true),
        ("MEM 2 [1, 3]", false),
        ("SUM [1, 2, 3] = 6 /\\ LENGTH [4, 4] = 2", true),
        ("EVEN 7 \\/ ODD 8", false),
    ];
    for (src, expect) in cases {
        let t = parse_term(&th, src).unwrap();
        assert_eq!(eval(&t, &env), Some(Value::Bool(expect)), "{src}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn rewriter_agrees_with_oracle_on_ground_formulas(t in formula(), seed in any::<u64>()) {
        let th = bundled::peano();
        let env = random_env(free_vars(&t), &mut rng(seed));
        let Some(expect) = eval(&t, &env) else { return Ok(()) };
        let g = ground(&t, &env);
        if let Ok(r) = evaluate(&g, &th, DEFAULT_FUEL) {
            if r.is_true() || r.is_false() {
                prop_assert_eq!(Value::Bool(r.is_true()), expect, "{}", g);
            }
        }
    }
}

#[test]
fn rewriter_agrees_with_oracle_on_list_terms() {
    let th = bundled::lists();
    let goals = [
        "REVERSE (APPEND x y) = APPEND (REVERSE y) (REVERSE x)",
        "QREV x y = APPEND (REVERSE x) y",
        "LENGTH (APPEND x x) = DBL (LENGTH x)",
        "MEM a (REVERSE x) <=> MEM a x",
        "SUM (APPEND x y) = SUM x + SUM y",
    ];
    let mut r = rng(11);
    for src in goals {
        let t = parse_term(&th, src).unwrap();
        for _ in 0..50 {
            let env = random_env(free_vars(&t), &mut r);
            let expect = eval(&t, &env).unwrap();
            let got = evaluate(&ground(&t, &env), &th, DEFAULT_FUEL).unwrap();
            assert_eq!(Value::Bool(got.is_true()), expect, "{src}");
            assert!(got.is_true() || got.is_false());
        }
    }
}
