mod common;

use proptest::prelude::*;

use common::{eval, formula, holds, random_env, rng, skeleton, Value};
use waterfall::heuristics::{
    clausal_form, cnf, equality, irrelevance, setify, simplify_heuristic, substitution, tautology,
};
use waterfall::rewrite::DEFAULT_FUEL;
use waterfall::syntax::print_term_curried;
use waterfall::term::{clause_setify, free_vars};
use waterfall::{bundled, parse_term, print_term, Clause, Engine, HeuristicOutcome, Term};

fn truth_of_cnf(cls: &[Vec<Term>], env: &common::Env) -> bool {
    cls.iter()
        .all(|c| c.iter().any(|l| eval(l, env) == Some(Value::Bool(true))))
}

/// Sampled soundness: whenever every produced clause holds, so does the input.
fn sound(input: &Clause, outcome: &HeuristicOutcome, seed: u64) -> Result<(), TestCaseError> {
    let mut r = rng(seed);
    let vars = free_vars(&input.as_term());
    for _ in 0..40 {
        let env = random_env(vars.iter().cloned(), &mut r);
        let Some(before) = holds(input, &env) else {
            continue;
        };
        match outcome {
            HeuristicOutcome::Proved => prop_assert!(before, "proved clause false at {env:?}"),
            HeuristicOutcome::Replaced(cs) => {
                let after: Option<Vec<bool>> = cs.iter().map(|c| holds(c, &env)).collect();
                if let Some(after) = after {
                    prop_assert!(
                        before || after.iter().any(|b| !b),
                        "outputs hold but input fails at {env:?}"
                    );
                }
            }
            HeuristicOutcome::Disproved(_) | HeuristicOutcome::Failed => {}
        }
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn print_parse_round_trip(t in formula()) {
        let th = bundled::peano();
        prop_assert_eq!(parse_term(&th, &print_term(&t)).unwrap(), t.clone());
        prop_assert_eq!(parse_term(&th, &print_term_curried(&t)).unwrap(), t);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn cnf_matches_truth_table(t in skeleton()) {
        let Some(cls) = cnf(&t) else { return Ok(()) };
        let vars: Vec<_> = free_vars(&t).into_iter().collect();
        prop_assert!(vars.len() <= 4);
        for bits in 0u32..(1 << vars.len()) {
            let env = vars.iter().enumerate().map(|(i, v)| (v.clone(), Value::Bool(bits >> i & 1 == 1))).collect();
            let expect = eval(&t, &env) == Some(Value::Bool(true));
            prop_assert_eq!(truth_of_cnf(&cls, &env), expect, "{:?}", cls);
        }
    }

    #[test]
    fn setify_is_idempotent(lits in prop::collection::vec(skeleton(), 0..6)) {
        let c = Clause::new(lits);
        let once = clause_setify(&c).unwrap_or_else(|| c.clone());
        prop_assert!(clause_setify(&once).is_none());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn heuristics_are_sound_on_samples(t in formula(), seed in any::<u64>()) {
        let th = bundled::peano();
        let c = Clause::unit(t);
        let mut outcomes = vec![tautology(&c), clausal_form(&c)];
        if let HeuristicOutcome::Replaced(cs) = clausal_form(&c) {
            for d in &cs {
                for o in [setify(d), substitution(d), equality(d, &th), irrelevance(d, &th)] {
                    sound(d, &o, seed)?;
                }
                sound(d, &simplify_heuristic(d, &th, Engine::Full, DEFAULT_FUEL).0, seed)?;
                sound(d, &simplify_heuristic(d, &th, Engine::Bm, DEFAULT_FUEL).0, seed)?;
            }
        }
        outcomes.push(simplify_heuristic(&c, &th, Engine::Full, DEFAULT_FUEL).0);
        for o in &outcomes {
            sound(&c, o, seed)?;
        }
    }
}
