//! Redundancy and superredundancy of a clause within a formula.
//!
//! Every checker decides the same property, `ResCn(F) ∖ {c} ⊨ c`, by a
//! different route. `check_super_first_step` needs no closure and is the
//! default; the others exist for cross-checking.

mod certificate;
mod prover;

use std::collections::HashSet;

use serde::Serialize;

use crate::bits::{Bits, Indexer};
use crate::cnf::{Clause, Formula, Lit};
use crate::error::{Error, Result};
use crate::resolution::{resolution_closure, resolve_with};
use crate::semantics::{entails, entails_clause, entails_with, satisfiable, Strategy};
use crate::Limits;

pub use certificate::{verify_certificate, Certificate, SubstitutionStep};
pub use prover::prove_superirredundant_by_substitution;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Definition,
    FirstStep,
    LastStep,
    Unit,
    PureUnit,
    HornKrom,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Definition => "definition",
            Method::FirstStep => "first-step",
            Method::LastStep => "last-step",
            Method::Unit => "unit",
            Method::PureUnit => "pure-unit",
            Method::HornKrom => "horn-krom",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub clause: Clause,
    pub superredundant: bool,
    pub methods_used: Vec<Method>,
    pub certificate: Option<Certificate>,
    /// The formula contains the empty clause.
    pub degenerate: bool,
}

fn verdict(
    f: &Formula,
    c: &Clause,
    method: Method,
    yes: bool,
    cert: Option<Certificate>,
) -> Verdict {
    Verdict {
        clause: c.clone(),
        superredundant: yes,
        methods_used: vec![method],
        certificate: cert,
        degenerate: f.has_empty_clause(),
    }
}

pub(crate) fn require_member(f: &Formula, c: &Clause) -> Result<()> {
    if f.contains(c) {
        Ok(())
    } else {
        Err(Error::ClauseNotInFormula(c.to_string()))
    }
}

/// `f ∖ {c} ⊨ c`.
pub fn is_redundant(f: &Formula, c: &Clause, limits: &Limits) -> Result<bool> {
    require_member(f, c)?;
    entails_clause(&f.without(c), c, limits)
}

pub fn check_super_definition(f: &Formula, c: &Clause, limits: &Limits) -> Result<Verdict> {
    require_member(f, c)?;
    let closure = resolution_closure(f, limits.closure_budget)?;
    let rest = closure.complete()?.without(c);
    let yes = entails_clause(&rest, c, limits)?;
    let cert = yes.then(|| Certificate::EntailingSet { set: rest });
    Ok(verdict(f, c, Method::Definition, yes, cert))
}

/// `F ∖ {c} ∪ resolve(c, F)`.
pub fn first_step_set(f: &Formula, c: &Clause) -> Formula {
    let mut g = f.without(c);
    g.extend(resolve_with(c, f));
    g.remove(c);
    g
}

pub fn check_super_first_step(f: &Formula, c: &Clause, limits: &Limits) -> Result<Verdict> {
    require_member(f, c)?;
    let g = first_step_set(f, c);
    let yes = entails_clause(&g, c, limits)?;
    let cert = yes.then(|| Certificate::EntailingSet { set: g });
    Ok(verdict(f, c, Method::FirstStep, yes, cert))
}

/// Looks in the closure for a proper subclause of `c`, or for a pair
/// `c1 ∨ a`, `c2 ∨ ¬a` with `c = c1 ∨ c2` and `a ∉ c`.
pub fn check_super_last_step(f: &Formula, c: &Clause, limits: &Limits) -> Result<Verdict> {
    require_member(f, c)?;
    let closure = resolution_closure(f, limits.closure_budget)?;
    let closure = closure.complete()?;
    let ix = Indexer::new([closure])?;
    let target = ix.encode(c);
    let bits = ix.encode_all(closure);

    if let Some(&sub) = bits.iter().find(|&&d| d != target && d.subsumes(target)) {
        let cert = Certificate::SubsetClause {
            subclause: ix.decode(sub),
        };
        return Ok(verdict(f, c, Method::LastStep, true, Some(cert)));
    }

    // clauses made of part of c plus one literal on a variable outside c
    let near: Vec<(Bits, Bits)> = bits
        .iter()
        .filter_map(|&d| {
            let outside = Bits {
                pos: d.pos & !target.pos,
                neg: d.neg & !target.neg,
            };
            (outside.len() == 1 && outside.vars() & target.vars() == 0).then_some((d, outside))
        })
        .collect();
    for (i, &(d1, a1)) in near.iter().enumerate() {
        for &(d2, a2) in &near[i + 1..] {
            let complementary = a1.pos == a2.neg && a1.neg == a2.pos;
            let covers = (d1.pos | d2.pos) & !a1.pos & !a2.pos == target.pos
                && (d1.neg | d2.neg) & !a1.neg & !a2.neg == target.neg;
            if complementary && covers {
                let pivot = ix.var((a1.vars().trailing_zeros()) as usize).clone();
                let cert = Certificate::LastStepPair {
                    left: ix.decode(d1),
                    right: ix.decode(d2),
                    pivot,
                };
                return Ok(verdict(f, c, Method::LastStep, true, Some(cert)));
            }
        }
    }
    Ok(verdict(f, c, Method::LastStep, false, None))
}

/// `{c ∈ F | ¬l ∉ c, c ≠ l} ∪ {c | c ∨ ¬l ∈ F}`.
pub fn unit_residual(f: &Formula, l: &Lit) -> Formula {
    let unit = Clause::unit(l.clone());
    let neg = l.negate();
    f.iter()
        .filter(|d| **d != unit)
        .map(|d| {
            if d.contains(&neg) {
                d.without(&neg)
            } else {
                d.clone()
            }
        })
        .collect()
}

pub fn check_super_unit(f: &Formula, l: &Lit, limits: &Limits) -> Result<Verdict> {
    let unit = Clause::unit(l.clone());
    require_member(f, &unit)?;
    let g = unit_residual(f, l);
    let yes = entails_clause(&g, &unit, limits)?;
    Ok(verdict(f, &unit, Method::Unit, yes, None))
}

pub fn check_super_pure_unit(f: &Formula, l: &Lit, limits: &Limits) -> Result<Verdict> {
    let unit = Clause::unit(l.clone());
    require_member(f, &unit)?;
    if f.occurs(&l.negate()) {
        return Err(Error::Precondition(format!(
            "literal `{}` is not pure: `{}` occurs",
            l,
            l.negate()
        )));
    }
    let g = f.without(&unit);
    let yes = entails_clause(&g, &unit, limits)?;
    let cert = yes.then(|| Certificate::EntailingSet { set: g });
    Ok(verdict(f, &unit, Method::PureUnit, yes, cert))
}

/// The first-step check with polynomial entailment; never enumerates
/// assignments.
pub fn check_super_horn_krom(f: &Formula, c: &Clause, limits: &Limits) -> Result<Verdict> {
    require_member(f, c)?;
    let strategy = if f.is_horn() {
        Strategy::Horn
    } else if f.is_krom() {
        Strategy::Krom
    } else {
        return Err(Error::NotHornOrKrom);
    };
    let g = first_step_set(f, c);
    let yes = entails_with(&g, &Formula::from_iter([c.clone()]), strategy, limits)?;
    let cert = yes.then(|| Certificate::EntailingSet { set: g });
    Ok(verdict(f, c, Method::HornKrom, yes, cert))
}

/// The checkers that apply to `(f, c)`.
pub fn applicable_methods(f: &Formula, c: &Clause) -> Vec<Method> {
    let mut out = vec![Method::Definition, Method::FirstStep, Method::LastStep];
    if c.len() == 1 {
        out.push(Method::Unit);
        if !f.occurs(&c.literals()[0].negate()) {
            out.push(Method::PureUnit);
        }
    }
    if f.is_horn() || f.is_krom() {
        out.push(Method::HornKrom);
    }
    out
}

pub fn check_with(f: &Formula, c: &Clause, method: Method, limits: &Limits) -> Result<Verdict> {
    let unit = || match c.literals() {
        [l] => Ok(l.clone()),
        _ => Err(Error::Precondition(format!("`{c}` is not a unit clause"))),
    };
    match method {
        Method::Definition => check_super_definition(f, c, limits),
        Method::FirstStep => check_super_first_step(f, c, limits),
        Method::LastStep => check_super_last_step(f, c, limits),
        Method::Unit => check_super_unit(f, &unit()?, limits),
        Method::PureUnit => check_super_pure_unit(f, &unit()?, limits),
        Method::HornKrom => check_super_horn_krom(f, c, limits),
    }
}

/// Runs every applicable checker; fails with `Disagreement` unless all agree.
/// The merged verdict keeps the first certificate offered.
pub fn cross_check(f: &Formula, c: &Clause, limits: &Limits) -> Result<Verdict> {
    let mut merged: Option<Verdict> = None;
    for m in applicable_methods(f, c) {
        let v = check_with(f, c, m, limits)?;
        match merged.as_mut() {
            None => merged = Some(v),
            Some(acc) => {
                if acc.superredundant != v.superredundant {
                    return Err(Error::Disagreement(format!(
                        "{} says {} but {} says {} for `{c}`",
                        acc.methods_used[0].name(),
                        acc.superredundant,
                        m.name(),
                        v.superredundant
                    )));
                }
                acc.methods_used.push(m);
                if acc.certificate.is_none() {
                    acc.certificate = v.certificate;
                }
            }
        }
    }
    Ok(merged.expect("at least one method applies"))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoPositiveOutcome {
    Superirredundant,
    Inapplicable,
}

/// The unit `l` is superirredundant in `f ∪ {l}` when `l` occurs nowhere in
/// `f` and `f ∪ {l}` is satisfiable.
pub fn check_unit_no_positive(f: &Formula, l: &Lit, limits: &Limits) -> Result<NoPositiveOutcome> {
    if f.occurs(l) {
        return Err(Error::Precondition(format!(
            "literal `{l}` occurs in the formula"
        )));
    }
    let unit = Clause::unit(l.clone());
    let g = f.with(unit.clone());
    if !satisfiable(&g, limits)? {
        return Ok(NoPositiveOutcome::Inapplicable);
    }
    let check = check_super_definition(&g, &unit, limits)?;
    if check.superredundant {
        return Err(Error::Disagreement(format!(
            "`{l}` satisfies the no-positive condition yet is superredundant"
        )));
    }
    Ok(NoPositiveOutcome::Superirredundant)
}

/// Re-checks a superredundant `c` after adding `extra`; the answer must be
/// true.
pub fn check_monotone_superset(
    f: &Formula,
    c: &Clause,
    extra: &Clause,
    limits: &Limits,
) -> Result<bool> {
    if !check_super_first_step(f, c, limits)?.superredundant {
        return Err(Error::Precondition(format!("`{c}` is not superredundant")));
    }
    Ok(check_super_first_step(&f.with(extra.clone()), c, limits)?.superredundant)
}

/// True when `f` has no two resolving clauses and no proper subclause of
/// `c`: then `c` is superirredundant in `f`.
pub(crate) fn no_resolution_terminal(f: &Formula, c: &Clause) -> bool {
    f.contains(c)
        && !f.iter().any(|d| d.is_proper_subclause_of(c))
        && !crate::resolution::has_resolving_pair(f)
}

/// Variables split into components by co-occurrence; each component as the
/// set of its clauses.
pub(crate) fn components(f: &Formula) -> Vec<Formula> {
    let clauses: Vec<&Clause> = f.iter().collect();
    let mut parent: Vec<usize> = (0..clauses.len()).collect();
    fn find(p: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while p[r] != r {
            r = p[r];
        }
        let mut i = i;
        while p[i] != r {
            let n = p[i];
            p[i] = r;
            i = n;
        }
        r
    }
    let mut owner: std::collections::HashMap<&crate::cnf::Var, usize> = Default::default();
    for (i, c) in clauses.iter().enumerate() {
        for v in c.vars() {
            match owner.get(v) {
                Some(&j) => {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a] = b;
                }
                None => {
                    owner.insert(v, i);
                }
            }
        }
    }
    let mut order: Vec<usize> = Vec::new();
    let mut groups: std::collections::HashMap<usize, Formula> = Default::default();
    for (i, c) in clauses.iter().enumerate() {
        let r = find(&mut parent, i);
        if !groups.contains_key(&r) {
            order.push(r);
        }
        groups.entry(r).or_default().insert((*c).clone());
    }
    order
        .into_iter()
        .map(|r| groups.remove(&r).unwrap())
        .collect()
}

/// Quick subset check used by certificates.
pub(crate) fn all_derived(set: &Formula, closure: &Formula) -> bool {
    let closure: HashSet<&Clause> = closure.iter().collect();
    set.iter().all(|d| closure.contains(d))
}

pub(crate) fn entails_set(g: &Formula, c: &Clause, limits: &Limits) -> Result<bool> {
    entails(g, &Formula::from_iter([c.clone()]), limits)
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

    fn lit(s: &str) -> Lit {
        s.parse().unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn redundancy_examples() {
        assert!(!is_redundant(&fm("a; -a b; -b a"), &cl("a"), &lim()).unwrap());
        assert!(is_redundant(&fm("a; a b"), &cl("a b"), &lim()).unwrap());
        assert!(!is_redundant(&fm("a; b"), &cl("a"), &lim()).unwrap());
        assert!(is_redundant(&fm("a; b"), &cl("c"), &lim()).is_err());
    }

    #[test]
    fn definition_examples() {
        assert!(
            check_super_definition(&fm("a; -a b; -b a"), &cl("a"), &lim())
                .unwrap()
                .superredundant
        );
        assert!(
            !check_super_definition(&fm("a; b"), &cl("a"), &lim())
                .unwrap()
                .superredundant
        );
        assert!(
            check_super_definition(&fm("a; -a b; a -b"), &cl("a"), &lim())
                .unwrap()
                .superredundant
        );
    }

    #[test]
    fn first_step_examples() {
        assert!(
            check_super_first_step(&fm("a; -a b; -b a"), &cl("a"), &lim())
                .unwrap()
                .superredundant
        );
        assert!(
            check_super_first_step(&fm("-a b; -b c; -c a"), &cl("-a b"), &lim())
                .unwrap()
                .superredundant
        );
        assert!(
            !check_super_first_step(&fm("a b c"), &cl("a b c"), &lim())
                .unwrap()
                .superredundant
        );
    }

    #[test]
    fn last_step_examples() {
        let v = check_super_last_step(&fm("a; -a b; -b a"), &cl("a"), &lim()).unwrap();
        assert!(v.superredundant);
        assert_eq!(
            v.certificate,
            Some(Certificate::LastStepPair {
                left: cl("a -b"),
                right: cl("b"),
                pivot: "b".parse().unwrap()
            })
        );
        assert!(
            !check_super_last_step(&fm("a; b"), &cl("a"), &lim())
                .unwrap()
                .superredundant
        );
        let v = check_super_last_step(&fm("a b; a"), &cl("a b"), &lim()).unwrap();
        assert_eq!(
            v.certificate,
            Some(Certificate::SubsetClause { subclause: cl("a") })
        );
    }

    #[test]
    fn unit_examples() {
        assert!(
            check_super_unit(&fm("a; -a b; -b a"), &lit("a"), &lim())
                .unwrap()
                .superredundant
        );
        assert!(
            !check_super_unit(&fm("a; b"), &lit("a"), &lim())
                .unwrap()
                .superredundant
        );
        assert!(
            !check_super_unit(&fm("l"), &lit("l"), &lim())
                .unwrap()
                .superredundant
        );
    }

    #[test]
    fn pure_unit_examples() {
        assert!(
            !check_super_pure_unit(&fm("a b; a"), &lit("a"), &lim())
                .unwrap()
                .superredundant
        );
        assert!(matches!(
            check_super_pure_unit(&fm("b; a -b; -a c"), &lit("b"), &lim()),
            Err(Error::Precondition(_))
        ));
        assert!(
            !check_super_pure_unit(&fm("a b; b; a"), &lit("a"), &lim())
                .unwrap()
                .superredundant
        );
    }

    #[test]
    fn horn_krom_examples() {
        assert!(
            check_super_horn_krom(&fm("a; -a b; -b a"), &cl("a"), &lim())
                .unwrap()
                .superredundant
        );
        assert!(
            check_super_horn_krom(&fm("-a b; -b c; -c a"), &cl("-b c"), &lim())
                .unwrap()
                .superredundant
        );
        assert!(
            !check_super_horn_krom(&fm("a; b"), &cl("b"), &lim())
                .unwrap()
                .superredundant
        );
        assert_eq!(
            check_super_horn_krom(&fm("a b c; -a -b -c"), &cl("a b c"), &lim()),
            Err(Error::NotHornOrKrom)
        );
    }

    #[test]
    fn syntax_dependence() {
        assert!(
            cross_check(&fm("a; -a b; a -b"), &cl("a"), &lim())
                .unwrap()
                .superredundant
        );
        assert!(
            !cross_check(&fm("a; b"), &cl("a"), &lim())
                .unwrap()
                .superredundant
        );
    }

    #[test]
    fn no_positive_examples() {
        assert_eq!(
            check_unit_no_positive(&fm("-l a"), &lit("l"), &lim()).unwrap(),
            NoPositiveOutcome::Superirredundant
        );
        assert_eq!(
            check_unit_no_positive(&fm("-l"), &lit("l"), &lim()).unwrap(),
            NoPositiveOutcome::Inapplicable
        );
        assert_eq!(
            check_unit_no_positive(&fm("a; -l b"), &lit("l"), &lim()).unwrap(),
            NoPositiveOutcome::Superirredundant
        );
    }

    #[test]
    fn superset_examples() {
        let f = fm("a; -a b; -b a");
        for extra in ["c d", "-b", "b"] {
            assert!(check_monotone_superset(&f, &cl("a"), &cl(extra), &lim()).unwrap());
        }
        assert!(check_monotone_superset(&fm("a; b"), &cl("a"), &cl("c"), &lim()).is_err());
    }

    #[test]
    fn component_split() {
        let parts = components(&fm("a b; c; -b d; c -e"));
        assert_eq!(parts, vec![fm("a b; -b d"), fm("c; c -e")]);
    }
}
