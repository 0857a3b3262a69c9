//! Proves superirredundancy by simplifying the formula until nothing
//! resolves.
//!
//! Allowed moves, each of which can only turn a superredundant clause
//! superirredundant, never the other way round, so superirredundancy of the
//! residual carries back to the input:
//! - set a variable `x` outside `c` to a value, provided the formula does not
//!   hold `c ∨ ¬x` (for true) or `c ∨ x` (for false);
//! - drop a clause holding a literal `l ∉ c` whose negation occurs nowhere;
//! - drop a satisfiable group of clauses sharing no variable with the rest.
//!
//! Substitutions are searched by iterative deepening, first with component
//! drops only and then with pure-literal drops as well.

use std::collections::HashMap;

use crate::cnf::{Clause, Formula, Lit, Var};
use crate::error::Result;
use crate::resolution::resolve_pair;
use crate::semantics::satisfiable;
use crate::Limits;

use super::{components, no_resolution_terminal, require_member, Certificate, SubstitutionStep};

/// A sound, incomplete search for a substitution-chain certificate. `None`
/// means nothing was found within `max_depth` substitutions (default: the
/// number of variables outside `c`) and the node budget.
pub fn prove_superirredundant_by_substitution(
    f: &Formula,
    c: &Clause,
    max_depth: Option<usize>,
    limits: &Limits,
) -> Result<Option<Certificate>> {
    require_member(f, c)?;
    let outside = f.vars().into_iter().filter(|v| !c.mentions(v)).count();
    let max_depth = max_depth.unwrap_or(outside);
    let mut search = Search {
        c,
        limits,
        pure: false,
        nodes: 0,
        visited: HashMap::new(),
    };
    for pure in [false, true] {
        search.pure = pure;
        for depth in 0..=max_depth {
            search.visited.clear();
            let mut steps = Vec::new();
            if let Some(residual) = search.run(f.clone(), depth, &mut steps) {
                return Ok(Some(Certificate::SubstitutionChain { steps, residual }));
            }
            if search.nodes > limits.prover_nodes {
                return Ok(None);
            }
        }
    }
    Ok(None)
}

struct Search<'a> {
    c: &'a Clause,
    limits: &'a Limits,
    pure: bool,
    nodes: usize,
    visited: HashMap<Vec<Clause>, usize>,
}

impl Search<'_> {
    fn run(
        &mut self,
        g: Formula,
        depth: usize,
        steps: &mut Vec<SubstitutionStep>,
    ) -> Option<Formula> {
        let mark = steps.len();
        let g = self.simplify(g, steps);
        if no_resolution_terminal(&g, self.c) {
            return Some(g);
        }
        let dead = depth == 0 || g.iter().any(|d| d.is_proper_subclause_of(self.c));
        let key = g.sorted_clauses();
        let seen = self.visited.get(&key).is_some_and(|&d| d >= depth);
        self.nodes += 1;
        if dead || seen || self.nodes > self.limits.prover_nodes {
            steps.truncate(mark);
            return None;
        }
        self.visited.insert(key, depth);
        for (var, value) in self.candidates(&g) {
            let blocker = Lit::new(var.clone(), !value);
            if self.c.with(blocker).map(|d| g.contains(&d)).unwrap_or(true) {
                continue;
            }
            let next = g.substitute(&var, value);
            steps.push(SubstitutionStep::Assign { var, value });
            if let Some(r) = self.run(next, depth - 1, steps) {
                return Some(r);
            }
            steps.pop();
        }
        steps.truncate(mark);
        None
    }

    fn simplify(&self, mut g: Formula, steps: &mut Vec<SubstitutionStep>) -> Formula {
        loop {
            if self.pure {
                if let Some((clause, literal)) = self.pure_clause(&g) {
                    g.remove(&clause);
                    steps.push(SubstitutionStep::DropPure { clause, literal });
                    continue;
                }
            }
            let droppable = components(&g).into_iter().find(|part| {
                !part.contains(self.c) && satisfiable(part, self.limits).unwrap_or(false)
            });
            match droppable {
                Some(part) => {
                    g = g.iter().filter(|d| !part.contains(d)).cloned().collect();
                    steps.push(SubstitutionStep::DropComponent { clauses: part });
                }
                None => return g,
            }
        }
    }

    fn pure_clause(&self, g: &Formula) -> Option<(Clause, Lit)> {
        for d in g {
            for l in d {
                if !self.c.contains(l) && !g.occurs(&l.negate()) {
                    return Some((d.clone(), l.clone()));
                }
            }
        }
        None
    }

    /// Variables of clauses resolving with `c` first, then the rest; each
    /// with the value satisfying more of those clauses first.
    fn candidates(&self, g: &Formula) -> Vec<(Var, bool)> {
        let resolving: Vec<&Clause> = g
            .iter()
            .filter(|d| resolve_pair(self.c, d).is_some())
            .collect();
        let mut near: Vec<Var> = Vec::new();
        for d in &resolving {
            for v in d.vars() {
                if !self.c.mentions(v) && !near.contains(v) {
                    near.push(v.clone());
                }
            }
        }
        near.sort();
        let far = g
            .vars()
            .into_iter()
            .filter(|v| !self.c.mentions(v) && !near.contains(v));
        let vars: Vec<Var> = near.iter().cloned().chain(far).collect();

        let score = |v: &Var, value: bool| {
            let lit = Lit::new(v.clone(), value);
            let close = resolving.iter().filter(|d| d.contains(&lit)).count();
            let all = g.iter().filter(|d| d.contains(&lit)).count();
            (close, all, value)
        };
        let mut out = Vec::with_capacity(vars.len() * 2);
        for v in vars {
            let first = score(&v, true) >= score(&v, false);
            out.push((v.clone(), first));
            out.push((v, !first));
        }
        out
    }
}
