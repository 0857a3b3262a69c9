//! Resolution: single steps, one-step set resolution, the full closure,
//! prime implicates and variable forgetting.

use std::collections::HashSet;

use crate::bits::{Bits, Indexer};
use crate::cnf::{Clause, Formula, Lit, Var};
use crate::error::{Error, Result};
use crate::Limits;

/// Resolves two clauses on their unique complementary pair. Pairs with no
/// clash or with two or more clashes (tautological resolvent) give `None`.
pub fn resolve_pair(c1: &Clause, c2: &Clause) -> Option<Clause> {
    let mut pivot: Option<&Lit> = None;
    for l in c1 {
        if c2.contains(&l.negate()) {
            if pivot.is_some() {
                return None;
            }
            pivot = Some(l);
        }
    }
    let pivot = pivot?;
    let neg = pivot.negate();
    let mut lits: Vec<Lit> = c1
        .iter()
        .filter(|l| *l != pivot)
        .chain(c2.iter().filter(|l| **l != neg))
        .cloned()
        .collect();
    lits.sort();
    lits.dedup();
    Some(Clause::from_sorted_unchecked(lits))
}

/// Every resolvent of a clause of `a` with a clause of `b`.
pub fn resolve_sets(a: &Formula, b: &Formula) -> Formula {
    let mut out = Formula::new();
    for c1 in a {
        for c2 in b {
            if let Some(r) = resolve_pair(c1, c2) {
                out.insert(r);
            }
        }
    }
    out
}

/// `resolve({c}, f)`.
pub fn resolve_with(c: &Clause, f: &Formula) -> Formula {
    f.iter().filter_map(|d| resolve_pair(c, d)).collect()
}

/// True when some two clauses of `f` resolve.
pub fn has_resolving_pair(f: &Formula) -> bool {
    let clauses: Vec<&Clause> = f.iter().collect();
    clauses.iter().enumerate().any(|(i, c)| {
        clauses[i + 1..]
            .iter()
            .any(|d| resolve_pair(c, d).is_some())
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClosureResult {
    /// Input clauses first, then resolvents in discovery order.
    pub clauses: Formula,
    /// Longest chain of resolution steps behind any clause.
    pub generation_count: usize,
    pub truncated: bool,
    pub budget: usize,
}

impl ClosureResult {
    pub fn complete(&self) -> Result<&Formula> {
        if self.truncated {
            Err(Error::TruncatedClosure {
                budget: self.budget,
            })
        } else {
            Ok(&self.clauses)
        }
    }
}

/// Saturates `f` under resolution. Subsumed clauses are kept; only exact
/// duplicates are merged. Stops once `budget` clauses exist.
pub fn resolution_closure(f: &Formula, budget: usize) -> Result<ClosureResult> {
    let ix = Indexer::new([f])?;
    let (list, generation_count, truncated) = saturate(&ix.encode_all(f), budget);
    Ok(ClosureResult {
        clauses: list.into_iter().map(|b| ix.decode(b)).collect(),
        generation_count,
        truncated,
        budget,
    })
}

pub(crate) fn saturate(input: &[Bits], budget: usize) -> (Vec<Bits>, usize, bool) {
    let mut seen: HashSet<Bits> = HashSet::new();
    let mut list: Vec<Bits> = Vec::new();
    let mut level: Vec<usize> = Vec::new();
    for &c in input {
        if seen.insert(c) {
            list.push(c);
            level.push(0);
        }
    }
    if list.len() > budget {
        return (list, 0, true);
    }
    let mut i = 0;
    while i < list.len() {
        let given = list[i];
        for j in 0..i {
            if let Some(r) = list[j].resolve(given) {
                if seen.insert(r) {
                    if list.len() >= budget {
                        let gen = level.iter().copied().max().unwrap_or(0);
                        return (list, gen, true);
                    }
                    list.push(r);
                    level.push(level[i].max(level[j]) + 1);
                }
            }
        }
        i += 1;
    }
    let gen = level.iter().copied().max().unwrap_or(0);
    (list, gen, false)
}

/// Whether `c` is in the resolution closure of `f`.
pub fn derives(f: &Formula, c: &Clause, limits: &Limits) -> Result<bool> {
    let closure = resolution_closure(f, limits.closure_budget)?;
    Ok(closure.complete()?.contains(c))
}

/// Subsumption-minimal clauses of the closure, in canonical order.
pub fn prime_implicates(f: &Formula, limits: &Limits) -> Result<Formula> {
    let closure = resolution_closure(f, limits.closure_budget)?;
    let all: Vec<&Clause> = closure.complete()?.iter().collect();
    let mut primes: Vec<Clause> = all
        .iter()
        .filter(|c| !all.iter().any(|d| d.is_proper_subclause_of(c)))
        .map(|c| (*c).clone())
        .collect();
    primes.sort();
    Ok(primes.into_iter().collect())
}

/// `A ∖ (A∩x) ∖ (A∩¬x) ∪ resolve(A∩x, A∩¬x)`: a formula over the other
/// variables with the same consequences as `a` on them.
pub fn forget_variable(a: &Formula, x: &Var) -> Formula {
    let with_pos = a.clauses_with_literal(&x.pos());
    let with_neg = a.clauses_with_literal(&x.neg());
    let mut out: Formula = a.iter().filter(|c| !c.mentions(x)).cloned().collect();
    out.extend(resolve_sets(&with_pos, &with_neg));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cl(s: &str) -> Clause {
        s.parse().unwrap()
    }

    fn fm(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn closure(s: &str) -> Formula {
        resolution_closure(&fm(s), 100_000).unwrap().clauses
    }

    #[test]
    fn pair_examples() {
        assert_eq!(resolve_pair(&cl("a x"), &cl("b -x")), Some(cl("a b")));
        assert_eq!(resolve_pair(&cl("-a b"), &cl("a -b")), None);
        assert_eq!(resolve_pair(&cl("a b"), &cl("a -b")), Some(cl("a")));
        assert_eq!(resolve_pair(&cl("a"), &cl("b")), None);
        assert_eq!(resolve_pair(&cl("a"), &cl("-a")), Some(Clause::empty()));
    }

    #[test]
    fn set_examples() {
        assert_eq!(resolve_sets(&fm("c1 x"), &fm("c2 -x")), fm("c1 c2"));
        assert_eq!(resolve_sets(&fm("a"), &fm("b")), Formula::new());
        assert_eq!(resolve_sets(&fm("a b e"), &fm("-e c d")), fm("a b c d"));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(closure("a; -a b; -b a"), fm("a; b; -a b; -b a"));
        assert_eq!(closure("a; b"), fm("a; b"));
        let big = closure("a x; -x b c; -a d; -c d; -d a c");
        assert!(big.contains(&cl("a b c")));
    }

    #[test]
    fn closure_budget_truncates() {
        let r = resolution_closure(&fm("a x; -x b c; -a d; -c d; -d a c"), 6).unwrap();
        assert!(r.truncated);
        assert_eq!(r.clauses.len(), 6);
        assert!(r.complete().is_err());
    }

    #[test]
    fn derives_examples() {
        let lim = Limits::default();
        assert!(!derives(&fm("a b"), &cl("a b c"), &lim).unwrap());
        assert!(derives(&fm("a; -a b; -b a"), &cl("b"), &lim).unwrap());
        assert!(derives(&fm("a b; c"), &cl("c"), &lim).unwrap());
    }

    #[test]
    fn prime_examples() {
        let lim = Limits::default();
        assert_eq!(
            prime_implicates(&fm("a; -a b; -b a"), &lim).unwrap(),
            fm("a; b")
        );
        assert_eq!(prime_implicates(&fm("a; b"), &lim).unwrap(), fm("a; b"));
        assert_eq!(prime_implicates(&fm("a b; a -b"), &lim).unwrap(), fm("a"));
    }

    #[test]
    fn forget_examples() {
        let x = Var::new("x").unwrap();
        assert_eq!(forget_variable(&fm("a x; b -x"), &x), fm("a b"));
        assert_eq!(forget_variable(&fm("a b"), &x), fm("a b"));
        assert_eq!(forget_variable(&fm("x; -x b; c"), &x), fm("b; c"));
    }

    #[test]
    fn generations_count_levels() {
        let r = resolution_closure(&fm("a; -a b; -b c"), 100).unwrap();
        assert_eq!(r.generation_count, 2);
    }
}
