//! Exhaustive search for the minimum-size formulae equivalent to a small
//! formula. Every minimum is a subset of the resolution closure, so subsets
//! of the closure are tried in order of increasing size.

use serde::Serialize;

use crate::bits::{submasks, Indexer};
use crate::cnf::{Clause, Formula};
use crate::error::{Error, Result};
use crate::redundancy::check_super_first_step;
use crate::resolution::resolution_closure;
use crate::semantics::satisfiable;
use crate::{CancelToken, Limits};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinimizationResult {
    pub min_size: usize,
    /// Every minimum, each and the list itself in canonical order.
    pub minimal_formulas: Vec<Formula>,
    /// Closure subsets tested for equivalence.
    pub search_space: u64,
    /// The input is unsatisfiable.
    pub degenerate: bool,
}

/// Falsifying assignments of a clause, as a bitset over all assignments.
struct Table {
    words: usize,
}

impl Table {
    fn falsifiers(&self, ix: &Indexer, c: &Clause) -> Vec<u64> {
        let b = ix.encode(c);
        let mut set = vec![0u64; self.words];
        for extra in submasks(ix.all_mask() & !b.vars()) {
            let a = (b.neg | extra) as usize;
            set[a / 64] |= 1 << (a % 64);
        }
        set
    }
}

pub fn minimal_equivalent_formulas(
    f: &Formula,
    limits: &Limits,
    cancel: &CancelToken,
) -> Result<MinimizationResult> {
    let closure = resolution_closure(f, limits.closure_budget)?;
    let closure: Vec<Clause> = closure.complete()?.sorted_clauses();
    if closure.len() > limits.oracle_clauses {
        return Err(Error::OracleCap {
            clauses: closure.len(),
            cap: limits.oracle_clauses,
        });
    }
    let ix = Indexer::new([f])?;
    if ix.len() > limits.max_vars {
        return Err(Error::VariableCap {
            count: ix.len(),
            cap: limits.max_vars,
        });
    }
    let table = Table {
        words: (1usize << ix.len()).div_ceil(64),
    };
    let falsify: Vec<Vec<u64>> = closure.iter().map(|c| table.falsifiers(&ix, c)).collect();
    let mut goal = vec![0u64; table.words];
    for c in f {
        for (g, w) in goal.iter_mut().zip(table.falsifiers(&ix, c)) {
            *g |= w;
        }
    }

    let n = closure.len();
    let sizes: Vec<usize> = closure.iter().map(Clause::len).collect();
    let mut by_size: Vec<(usize, u32)> = (0..(1u32 << n))
        .map(|mask| {
            let size = (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| sizes[i])
                .sum();
            (size, mask)
        })
        .collect();
    by_size.sort();

    let mut search_space = 0u64;
    let mut found: Vec<u32> = Vec::new();
    let mut min_size = None;
    let mut union = vec![0u64; table.words];
    for &(size, mask) in &by_size {
        if min_size.is_some_and(|m| size > m) {
            break;
        }
        if search_space.is_multiple_of(4096) {
            cancel.check()?;
        }
        search_space += 1;
        union.iter_mut().for_each(|w| *w = 0);
        for i in (0..n).filter(|i| mask & (1 << i) != 0) {
            for (u, w) in union.iter_mut().zip(&falsify[i]) {
                *u |= w;
            }
        }
        if goal.iter().zip(&union).all(|(g, u)| g & !u == 0) {
            min_size = Some(size);
            found.push(mask);
        }
    }

    let mut minimal_formulas: Vec<Formula> = found
        .into_iter()
        .map(|mask| {
            (0..n)
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| closure[i].clone())
                .collect()
        })
        .collect();
    minimal_formulas.sort_by_key(|m: &Formula| m.sorted_clauses());
    Ok(MinimizationResult {
        min_size: min_size.expect("the closure itself is equivalent"),
        minimal_formulas,
        search_space,
        degenerate: !satisfiable(f, limits)?,
    })
}

/// Whether `c` belongs to every minimum-size equivalent of `f`.
pub fn in_all_minimal(
    f: &Formula,
    c: &Clause,
    limits: &Limits,
    cancel: &CancelToken,
) -> Result<bool> {
    let r = minimal_equivalent_formulas(f, limits, cancel)?;
    Ok(r.minimal_formulas.iter().all(|m| m.contains(c)))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certification {
    /// Every clause is superirredundant, so the formula is minimal.
    Certified,
    /// Some clause is superredundant; the formula may or may not be minimal.
    Unknown,
}

pub fn certify_minimal(f: &Formula, limits: &Limits) -> Result<Certification> {
    for c in f {
        if check_super_first_step(f, c, limits)?.superredundant {
            return Ok(Certification::Unknown);
        }
    }
    Ok(Certification::Certified)
}
