//! Splitting `c1 ∨ c2` into `c1 ∨ x`, `c2 ∨ ¬x` on a fresh variable `x`.
//!
//! The split formula says the same as the original once `x` is forgotten.
//! Each half is superirredundant after the split unless `ci` alone is
//! superredundant in `F ∪ {ci}`, and only clauses resolving with both halves
//! can lose their superirredundancy.

use std::collections::{BTreeSet, VecDeque};

use serde::Serialize;

use crate::cnf::{Clause, Formula, Lit, Var};
use crate::error::{Error, Result};
use crate::redundancy::{check_super_first_step, require_member};
use crate::resolution::{forget_variable, resolve_pair};
use crate::Limits;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SplitPlan {
    pub original: Clause,
    pub half_a: Clause,
    pub half_b: Clause,
    pub fresh: Var,
    pub collateral: Formula,
}

/// Generates `<prefix>0`, `<prefix>1`, ..., skipping names already in use.
#[derive(Clone, Debug)]
pub struct FreshNamer {
    prefix: String,
    next: usize,
}

impl Default for FreshNamer {
    fn default() -> Self {
        FreshNamer::new("_s")
    }
}

impl FreshNamer {
    pub fn new(prefix: &str) -> Self {
        FreshNamer {
            prefix: prefix.to_string(),
            next: 0,
        }
    }

    pub fn fresh(&mut self, avoid: &Formula) -> Result<Var> {
        loop {
            let var = Var::new(&format!("{}{}", self.prefix, self.next))?;
            self.next += 1;
            if !avoid.mentions(&var) {
                return Ok(var);
            }
        }
    }
}

fn check_partition(c: &Clause, c1: &Clause, c2: &Clause) -> Result<()> {
    if c1.is_empty() || c2.is_empty() {
        return Err(Error::Precondition(format!(
            "partition of `{c}` has an empty half"
        )));
    }
    let disjoint = c1.iter().all(|l| !c2.contains(l));
    if !disjoint || c1.union(c2).ok().as_ref() != Some(c) {
        return Err(Error::Precondition(format!(
            "`{c1}` and `{c2}` do not partition `{c}`"
        )));
    }
    Ok(())
}

/// Replaces `c` in place by `c1 ∨ x` and `c2 ∨ ¬x`.
pub fn split_clause(
    f: &Formula,
    c: &Clause,
    partition: (&Clause, &Clause),
    namer: &mut FreshNamer,
) -> Result<(Formula, SplitPlan)> {
    require_member(f, c)?;
    let (c1, c2) = partition;
    check_partition(c, c1, c2)?;
    let x = namer.fresh(f)?;
    let half_a = c1.with(x.pos())?;
    let half_b = c2.with(x.neg())?;
    let mut out = Formula::new();
    for d in f {
        if d == c {
            out.insert(half_a.clone());
            out.insert(half_b.clone());
        } else {
            out.insert(d.clone());
        }
    }
    if &forget_variable(&out, &x) != f {
        return Err(Error::Disagreement(format!(
            "forgetting `{x}` does not restore the formula split at `{c}`"
        )));
    }
    let plan = SplitPlan {
        original: c.clone(),
        half_a,
        half_b,
        fresh: x,
        collateral: collateral_risk(f, (c1, c2))?,
    };
    Ok((out, plan))
}

/// For each half `ci`, whether `ci` is superredundant in `f ∪ {ci}`. A false
/// entry guarantees the corresponding split half is superirredundant.
pub fn precheck_make_irredundant(
    f: &Formula,
    partition: (&Clause, &Clause),
    limits: &Limits,
) -> Result<(bool, bool)> {
    let (c1, c2) = partition;
    let c = c1.union(c2)?;
    if !f.contains(&c) {
        return Err(Error::Precondition(format!("`{c}` is not in the formula")));
    }
    for half in [c1, c2] {
        if f.contains(half) {
            return Err(Error::Precondition(format!(
                "half `{half}` is already in the formula"
            )));
        }
    }
    let a = check_super_first_step(&f.with(c1.clone()), c1, limits)?.superredundant;
    let b = check_super_first_step(&f.with(c2.clone()), c2, limits)?.superredundant;
    Ok((a, b))
}

/// The clauses of `f ∖ {c1 ∨ c2}` resolving with both `c1` and `c2`.
pub fn collateral_risk(f: &Formula, partition: (&Clause, &Clause)) -> Result<Formula> {
    let (c1, c2) = partition;
    let c = c1.union(c2)?;
    Ok(f.iter()
        .filter(|d| **d != c && resolve_pair(d, c1).is_some() && resolve_pair(d, c2).is_some())
        .cloned()
        .collect())
}

/// All bipartitions of `c`, the first literal always in the first half:
/// first the first literal alone, then the rest in mask order.
pub fn bipartitions(c: &Clause) -> Vec<(Clause, Clause)> {
    let lits = c.literals();
    if lits.len() < 2 {
        return Vec::new();
    }
    let k = lits.len() - 1;
    let full = (1u64 << k) - 1;
    (0..full)
        .map(|mask| {
            let (mut a, mut b): (Vec<Lit>, Vec<Lit>) = (vec![lits[0].clone()], Vec::new());
            for (i, l) in lits[1..].iter().enumerate() {
                if mask & (1 << i) != 0 {
                    a.push(l.clone());
                } else {
                    b.push(l.clone());
                }
            }
            (
                Clause::new(a).expect("subclause"),
                Clause::new(b).expect("subclause"),
            )
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixResult {
    pub formula: Formula,
    pub plans: Vec<SplitPlan>,
}

/// Splits superredundant targets until every target, or what it was split
/// into, is superirredundant.
pub fn make_superirredundant(
    f: &Formula,
    targets: &Formula,
    namer: &mut FreshNamer,
    limits: &Limits,
) -> Result<FixResult> {
    if let Some(t) = targets.iter().find(|t| !f.contains(t)) {
        return Err(Error::ClauseNotInFormula(t.to_string()));
    }
    let cap = limits.fix_iteration_factor * targets.len().max(1);
    let mut current = f.clone();
    let mut plans: Vec<SplitPlan> = Vec::new();
    let mut tracked: BTreeSet<Clause> = targets.iter().cloned().collect();
    let mut queue: VecDeque<Clause> = targets.iter().cloned().collect();
    let mut iterations = 0;

    loop {
        while let Some(t) = queue.pop_front() {
            if !current.contains(&t) {
                continue;
            }
            iterations += 1;
            if iterations > cap {
                return Err(Error::IterationCap { cap });
            }
            if !check_super_first_step(&current, &t, limits)?.superredundant {
                continue;
            }
            let mut chosen = None;
            for (c1, c2) in bipartitions(&t) {
                if current.contains(&c1) || current.contains(&c2) {
                    continue;
                }
                if precheck_make_irredundant(&current, (&c1, &c2), limits)? == (false, false) {
                    chosen = Some((c1, c2));
                    break;
                }
            }
            let Some((c1, c2)) = chosen else {
                return Err(Error::NoViablePartition {
                    clause: t.to_string(),
                });
            };
            let (next, plan) = split_clause(&current, &t, (&c1, &c2), namer)?;
            current = next;
            tracked.insert(plan.half_a.clone());
            tracked.insert(plan.half_b.clone());
            for d in &plan.collateral {
                if tracked.contains(d)
                    && !queue.contains(d)
                    && check_super_first_step(&current, d, limits)?.superredundant
                {
                    queue.push_back(d.clone());
                }
            }
            plans.push(plan);
        }
        let mut pending = Vec::new();
        for t in current.iter().filter(|t| tracked.contains(*t)) {
            if check_super_first_step(&current, t, limits)?.superredundant {
                pending.push(t.clone());
            }
        }
        if pending.is_empty() {
            break;
        }
        queue.extend(pending);
    }

    let mut restored = current.clone();
    for plan in plans.iter().rev() {
        restored = forget_variable(&restored, &plan.fresh);
    }
    if &restored != f {
        return Err(Error::Disagreement(
            "forgetting the fresh variables does not restore the input".into(),
        ));
    }
    Ok(FixResult {
        formula: current,
        plans,
    })
}
