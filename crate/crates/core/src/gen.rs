//! Random formulae for testing and benchmarking.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::cnf::{Clause, Formula, Lit, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Shape {
    pub vars: usize,
    pub max_clauses: usize,
    pub max_len: usize,
}

pub fn var(i: usize) -> Var {
    Var::new(&format!("v{i}")).expect("valid name")
}

/// A nonempty non-tautological clause over `v0..v{vars-1}` of length at most
/// `max_len`.
pub fn random_clause<R: Rng + ?Sized>(rng: &mut R, vars: usize, max_len: usize) -> Clause {
    let len = rng.gen_range(1..=max_len.min(vars).max(1));
    let mut pool: Vec<usize> = (0..vars).collect();
    pool.shuffle(rng);
    Clause::new(
        pool[..len]
            .iter()
            .map(|&i| Lit::new(var(i), rng.gen_bool(0.5))),
    )
    .expect("distinct variables")
}

/// Between one and `max_clauses` clauses; duplicates collapse.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, shape: Shape) -> Formula {
    let count = rng.gen_range(1..=shape.max_clauses.max(1));
    (0..count)
        .map(|_| random_clause(rng, shape.vars, shape.max_len))
        .collect()
}

/// Like `random_formula`, with every clause Horn.
pub fn random_horn<R: Rng + ?Sized>(rng: &mut R, shape: Shape) -> Formula {
    random_formula(rng, shape)
        .into_iter()
        .map(|c| {
            let mut seen_pos = false;
            Clause::new(c.iter().map(|l| {
                let keep = l.is_positive() && !seen_pos;
                seen_pos |= keep;
                Lit::new(l.var().clone(), keep)
            }))
            .expect("distinct variables")
        })
        .collect()
}
