use serde::Serialize;

use crate::cnf::{Clause, Formula, Lit, Var};
use crate::error::Result;
use crate::resolution::{resolution_closure, resolve_pair};
use crate::semantics::satisfiable;
use crate::Limits;

use super::{all_derived, entails_set, no_resolution_terminal};

/// Evidence for a verdict. The first three kinds witness superredundancy,
/// a substitution chain witnesses superirredundancy.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Certificate {
    /// A derivable proper subclause of the clause.
    SubsetClause { subclause: Clause },
    /// Two derivable clauses resolving on `pivot` into the clause.
    LastStepPair {
        left: Clause,
        right: Clause,
        pivot: Var,
    },
    /// Derivable clauses, the clause not among them, that entail it.
    EntailingSet { set: Formula },
    /// Steps each preserving superirredundancy backwards, ending in a formula
    /// with no resolving pair and no proper subclause of the clause.
    SubstitutionChain {
        steps: Vec<SubstitutionStep>,
        residual: Formula,
    },
}

impl Certificate {
    pub fn kind(&self) -> &'static str {
        match self {
            Certificate::SubsetClause { .. } => "subset-clause",
            Certificate::LastStepPair { .. } => "last-step-pair",
            Certificate::EntailingSet { .. } => "entailing-set",
            Certificate::SubstitutionChain { .. } => "substitution-chain",
        }
    }

    /// True when the certificate claims superredundancy.
    pub fn proves_superredundant(&self) -> bool {
        !matches!(self, Certificate::SubstitutionChain { .. })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "step", rename_all = "kebab-case")]
pub enum SubstitutionStep {
    /// Replace a variable outside the clause by a constant.
    Assign { var: Var, value: bool },
    /// Delete a clause holding a pure literal not in the clause.
    DropPure { clause: Clause, literal: Lit },
    /// Delete a satisfiable component sharing no variable with the rest.
    DropComponent { clauses: Formula },
}

/// Replays a certificate from scratch against `(f, c)`.
pub fn verify_certificate(
    f: &Formula,
    c: &Clause,
    cert: &Certificate,
    limits: &Limits,
) -> Result<bool> {
    if !f.contains(c) {
        return Ok(false);
    }
    match cert {
        Certificate::SubsetClause { subclause } => {
            let closure = resolution_closure(f, limits.closure_budget)?;
            Ok(subclause.is_proper_subclause_of(c) && closure.complete()?.contains(subclause))
        }
        Certificate::LastStepPair { left, right, pivot } => {
            let closure = resolution_closure(f, limits.closure_budget)?;
            let closure = closure.complete()?;
            Ok(!c.mentions(pivot)
                && closure.contains(left)
                && closure.contains(right)
                && resolve_pair(left, right).as_ref() == Some(c))
        }
        Certificate::EntailingSet { set } => {
            if set.contains(c) {
                return Ok(false);
            }
            let closure = resolution_closure(f, limits.closure_budget)?;
            Ok(all_derived(set, closure.complete()?) && entails_set(set, c, limits)?)
        }
        Certificate::SubstitutionChain { steps, residual } => {
            let mut g = f.clone();
            for step in steps {
                match step {
                    SubstitutionStep::Assign { var, value } => {
                        if c.mentions(var) {
                            return Ok(false);
                        }
                        let blocker = Lit::new(var.clone(), !*value);
                        let blocked = c.with(blocker).map(|d| g.contains(&d)).unwrap_or(false);
                        if blocked {
                            return Ok(false);
                        }
                        g = g.substitute(var, *value);
                    }
                    SubstitutionStep::DropPure { clause, literal } => {
                        if c.contains(literal)
                            || !clause.contains(literal)
                            || !g.contains(clause)
                            || g.occurs(&literal.negate())
                        {
                            return Ok(false);
                        }
                        g.remove(clause);
                    }
                    SubstitutionStep::DropComponent { clauses } => {
                        if clauses.contains(c) || !clauses.is_subset(&g) {
                            return Ok(false);
                        }
                        let rest: Formula =
                            g.iter().filter(|d| !clauses.contains(d)).cloned().collect();
                        let shared = clauses.vars().intersection(&rest.vars()).next().is_some();
                        if shared || !satisfiable(clauses, limits)? {
                            return Ok(false);
                        }
                        g = rest;
                    }
                }
            }
            Ok(&g == residual && no_resolution_terminal(&g, c))
        }
    }
}
