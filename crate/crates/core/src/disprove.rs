//! Random ground counterexample search.
//!
//! Every free variable is replaced by a random constructor term of its sort
//! and the instance is evaluated. Bottom objects become more likely the
//! deeper the generator goes, so samples stay small.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::rewrite::{evaluate, DEFAULT_FUEL};
use crate::term::{Bindings, Clause, Term};
use crate::theory::Theory;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Disprover {
    pub checks_per_call: usize,
    pub max_example_depth: usize,
    pub rng_seed: u64,
    /// Probability of a bottom object at depth 0.
    pub p0: f64,
    /// Increase of that probability per level.
    pub delta: f64,
    pub fuel: usize,
}

impl Default for Disprover {
    fn default() -> Self {
        Disprover {
            checks_per_call: 5,
            max_example_depth: 8,
            rng_seed: 0,
            p0: 0.25,
            delta: 0.25,
            fuel: DEFAULT_FUEL,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", content = "witness", rename_all = "snake_case")]
pub enum Verdict {
    Disproved(Bindings),
    Survived,
    Undecided,
}

impl Verdict {
    /// Whether a generalization checked with this verdict must be rejected.
    pub fn vetoes(&self) -> bool {
        !matches!(self, Verdict::Survived)
    }
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum DisproveError {
    #[error("sort `{0}` has no shell")]
    NoShell(String),
    #[error("sort `{0}` has no bottom object")]
    NoBottom(String),
}

/// A random ground term of `sort` whose depth is at most `max_depth`.
pub fn random_ground<R: Rng>(
    th: &Theory,
    sort: &str,
    max_depth: usize,
    p0: f64,
    delta: f64,
    rng: &mut R,
) -> Result<Term, DisproveError> {
    fn go<R: Rng>(
        th: &Theory,
        sort: &str,
        d: usize,
        max_depth: usize,
        p: (f64, f64),
        rng: &mut R,
    ) -> Result<Term, DisproveError> {
        let shell = th
            .shell(sort)
            .ok_or_else(|| DisproveError::NoShell(sort.into()))?;
        let bottoms: Vec<_> = shell.bottom_objects().collect();
        if bottoms.is_empty() {
            return Err(DisproveError::NoBottom(sort.into()));
        }
        let others: Vec<_> = shell.non_bottom().collect();
        let p_bottom = (p.0 + d as f64 * p.1).min(1.0);
        if d >= max_depth || others.is_empty() || rng.gen_bool(p_bottom) {
            let c = bottoms[rng.gen_range(0..bottoms.len())];
            return Ok(Term::constant(&c.name));
        }
        let c = others[rng.gen_range(0..others.len())];
        let mut args = Vec::with_capacity(c.arg_sorts.len());
        for s in &c.arg_sorts {
            args.push(go(th, s, d + 1, max_depth, p, rng)?);
        }
        Ok(Term::app(&c.name, args))
    }
    go(th, sort, 0, max_depth, (p0, delta), rng)
}

impl Disprover {
    pub fn with_seed(seed: u64) -> Self {
        Disprover {
            rng_seed: seed,
            ..Disprover::default()
        }
    }

    /// Evaluate random instances of `c`; the generator is seeded from the
    /// configured seed and the clause itself.
    pub fn check(&self, c: &Clause, th: &Theory) -> Verdict {
        let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed ^ c.fingerprint());
        let vars = c.vars();
        let body = c.as_term();
        let rounds = if vars.is_empty() {
            1
        } else {
            self.checks_per_call.max(1)
        };
        let mut undecided = false;
        for _ in 0..rounds {
            let mut b = Bindings::new();
            let mut sampled = true;
            for v in &vars {
                match random_ground(
                    th,
                    &v.sort,
                    self.max_example_depth,
                    self.p0,
                    self.delta,
                    &mut rng,
                ) {
                    Ok(t) => {
                        b.insert(v.clone(), t);
                    }
                    Err(_) => sampled = false,
                }
            }
            if !sampled {
                undecided = true;
                continue;
            }
            let inst = crate::term::apply_bindings(&body, &b);
            match evaluate(&inst, th, self.fuel) {
                Ok(r) if r.is_false() => return Verdict::Disproved(b),
                Ok(r) if r.is_true() => {}
                _ => undecided = true,
            }
        }
        if undecided {
            Verdict::Undecided
        } else {
            Verdict::Survived
        }
    }
}
