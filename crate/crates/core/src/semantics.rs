//! Semantic oracle: entailment, equivalence, satisfiability and models.
//!
//! `entails` dispatches on the shape of the premise: Horn premises go through
//! unit propagation, Krom premises through implication-graph SCCs, and anything
//! else through assignment enumeration bounded by `Limits::max_vars`.

use std::collections::BTreeSet;

use crate::bits::{submasks, Bits, Indexer};
use crate::cnf::{Assignment, Clause, Formula, Var};
use crate::error::{Error, Result};
use crate::Limits;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    Auto,
    TruthTable,
    Horn,
    Krom,
}

/// `f ⊨ g`.
pub fn entails(f: &Formula, g: &Formula, limits: &Limits) -> Result<bool> {
    entails_with(f, g, Strategy::Auto, limits)
}

pub fn entails_clause(f: &Formula, c: &Clause, limits: &Limits) -> Result<bool> {
    entails_with(f, &Formula::from_iter([c.clone()]), Strategy::Auto, limits)
}

pub fn equivalent(f: &Formula, g: &Formula, limits: &Limits) -> Result<bool> {
    Ok(entails(f, g, limits)? && entails(g, f, limits)?)
}

pub fn satisfiable(f: &Formula, limits: &Limits) -> Result<bool> {
    Ok(!entails_clause(f, &Clause::empty(), limits)?)
}

pub fn entails_with(f: &Formula, g: &Formula, strategy: Strategy, limits: &Limits) -> Result<bool> {
    let strategy = match strategy {
        Strategy::Auto if f.is_horn() => Strategy::Horn,
        Strategy::Auto if f.is_krom() => Strategy::Krom,
        Strategy::Auto => Strategy::TruthTable,
        s => s,
    };
    let ix = Indexer::new([f, g])?;
    let premise = ix.encode_all(f);
    let goals = ix.encode_all(g);
    match strategy {
        Strategy::Horn => {
            if !f.is_horn() {
                return Err(Error::Precondition("premise is not Horn".into()));
            }
            Ok(goals.iter().all(|&c| horn_refutes(&premise, c)))
        }
        Strategy::Krom => {
            if !f.is_krom() {
                return Err(Error::Precondition("premise is not Krom".into()));
            }
            Ok(goals.iter().all(|&c| krom_refutes(&premise, c, ix.len())))
        }
        Strategy::TruthTable | Strategy::Auto => {
            if ix.len() > limits.max_vars {
                return Err(Error::VariableCap {
                    count: ix.len(),
                    cap: limits.max_vars,
                });
            }
            Ok(goals
                .iter()
                .all(|&c| table_entails(&premise, c, ix.all_mask())))
        }
    }
}

/// Enumerates every assignment falsifying `goal` and checks none satisfies
/// the premise.
pub(crate) fn table_entails(premise: &[Bits], goal: Bits, universe: u128) -> bool {
    if premise.iter().any(|p| p.subsumes(goal)) {
        return true;
    }
    let base = goal.neg;
    let free = universe & !goal.vars();
    submasks(free).all(|extra| {
        let model = base | extra;
        !premise.iter().all(|c| c.satisfied_by(model))
    })
}

/// Unit propagation on `premise ∧ ¬goal`; true when a conflict is reached.
/// Complete for Horn premises.
pub(crate) fn horn_refutes(premise: &[Bits], goal: Bits) -> bool {
    let mut t = goal.neg;
    let mut fls = goal.pos;
    loop {
        let mut changed = false;
        for c in premise {
            if c.pos & t != 0 || c.neg & fls != 0 {
                continue;
            }
            let open_pos = c.pos & !fls;
            let open_neg = c.neg & !t;
            match open_pos.count_ones() + open_neg.count_ones() {
                0 => return true,
                1 => {
                    t |= open_pos;
                    fls |= open_neg;
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            return false;
        }
    }
}

/// 2-SAT on `premise ∧ ¬goal` via strongly connected components of the
/// implication graph; true when unsatisfiable.
pub(crate) fn krom_refutes(premise: &[Bits], goal: Bits, nvars: usize) -> bool {
    let n = 2 * nvars;
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    let lits = |b: Bits| -> Vec<usize> {
        (0..nvars)
            .filter_map(|i| {
                let bit = 1u128 << i;
                if b.pos & bit != 0 {
                    Some(2 * i + 1)
                } else if b.neg & bit != 0 {
                    Some(2 * i)
                } else {
                    None
                }
            })
            .collect()
    };
    for &c in premise {
        match lits(c).as_slice() {
            [] => return true,
            [a] => adj[a ^ 1].push(*a),
            [a, b] => {
                adj[a ^ 1].push(*b);
                adj[b ^ 1].push(*a);
            }
            _ => unreachable!("krom premise"),
        }
    }
    for l in lits(goal) {
        // unit ¬l
        adj[l].push(l ^ 1);
    }
    let comp = tarjan_scc(&adj);
    (0..nvars).any(|i| comp[2 * i] == comp[2 * i + 1])
}

fn tarjan_scc(adj: &[Vec<usize>]) -> Vec<usize> {
    struct State<'a> {
        adj: &'a [Vec<usize>],
        index: Vec<Option<usize>>,
        low: Vec<usize>,
        on_stack: Vec<bool>,
        stack: Vec<usize>,
        comp: Vec<usize>,
        next_index: usize,
        next_comp: usize,
    }
    fn visit(s: &mut State<'_>, v: usize) {
        s.index[v] = Some(s.next_index);
        s.low[v] = s.next_index;
        s.next_index += 1;
        s.stack.push(v);
        s.on_stack[v] = true;
        for i in 0..s.adj[v].len() {
            let w = s.adj[v][i];
            match s.index[w] {
                None => {
                    visit(s, w);
                    s.low[v] = s.low[v].min(s.low[w]);
                }
                Some(iw) if s.on_stack[w] => s.low[v] = s.low[v].min(iw),
                _ => {}
            }
        }
        if Some(s.low[v]) == s.index[v] {
            while let Some(w) = s.stack.pop() {
                s.on_stack[w] = false;
                s.comp[w] = s.next_comp;
                if w == v {
                    break;
                }
            }
            s.next_comp += 1;
        }
    }
    let n = adj.len();
    let mut s = State {
        adj,
        index: vec![None; n],
        low: vec![0; n],
        on_stack: vec![false; n],
        stack: Vec::new(),
        comp: vec![0; n],
        next_index: 0,
        next_comp: 0,
    };
    for v in 0..n {
        if s.index[v].is_none() {
            visit(&mut s, v);
        }
    }
    s.comp
}

/// All models of `f` over `universe` (which must cover `vars(f)`), in
/// binary counting order of the name-sorted universe.
pub fn models(f: &Formula, universe: &BTreeSet<Var>, limits: &Limits) -> Result<Vec<Assignment>> {
    if let Some(v) = f.vars().difference(universe).next() {
        return Err(Error::Precondition(format!(
            "universe does not cover variable `{v}`"
        )));
    }
    if universe.len() > limits.max_vars {
        return Err(Error::VariableCap {
            count: universe.len(),
            cap: limits.max_vars,
        });
    }
    let ix = Indexer::from_vars(universe.clone())?;
    let clauses = ix.encode_all(f);
    Ok(submasks(ix.all_mask())
        .filter(|&m| clauses.iter().all(|c| c.satisfied_by(m)))
        .map(|m| {
            (0..ix.len())
                .map(|i| (ix.var(i).clone(), m & (1u128 << i) != 0))
                .collect()
        })
        .collect())
}
