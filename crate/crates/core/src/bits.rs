//! Fixed-width bitset encoding of clauses over an indexed variable universe.
//! Every set-heavy routine (closure, truth tables, propagation) runs here.

use std::collections::{BTreeSet, HashMap};

use crate::cnf::{Clause, Formula, Lit, Var};
use crate::error::{Error, Result};

pub(crate) const MAX_BITS: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub(crate) struct Bits {
    pub pos: u128,
    pub neg: u128,
}

impl Bits {
    pub fn len(self) -> u32 {
        self.pos.count_ones() + self.neg.count_ones()
    }

    pub fn vars(self) -> u128 {
        self.pos | self.neg
    }

    pub fn subsumes(self, other: Bits) -> bool {
        self.pos & !other.pos == 0 && self.neg & !other.neg == 0
    }

    /// Resolvent when exactly one complementary pair exists.
    pub fn resolve(self, other: Bits) -> Option<Bits> {
        let clash = (self.pos & other.neg) | (self.neg & other.pos);
        if clash.count_ones() != 1 {
            return None;
        }
        Some(Bits {
            pos: (self.pos | other.pos) & !clash,
            neg: (self.neg | other.neg) & !clash,
        })
    }

    /// True under the assignment whose true variables are `model`.
    pub fn satisfied_by(self, model: u128) -> bool {
        self.pos & model != 0 || self.neg & !model != 0
    }
}

/// Maps variables to bit positions, in name order.
#[derive(Clone, Debug)]
pub(crate) struct Indexer {
    vars: Vec<Var>,
    index: HashMap<Var, usize>,
}

impl Indexer {
    pub fn new<'a, I>(formulas: I) -> Result<Self>
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        let mut set = BTreeSet::new();
        for f in formulas {
            set.extend(f.vars());
        }
        Self::from_vars(set)
    }

    pub fn from_vars(vars: BTreeSet<Var>) -> Result<Self> {
        if vars.len() > MAX_BITS {
            return Err(Error::BitWidth { count: vars.len() });
        }
        let vars: Vec<Var> = vars.into_iter().collect();
        let index = vars
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        Ok(Indexer { vars, index })
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn all_mask(&self) -> u128 {
        if self.vars.len() == MAX_BITS {
            u128::MAX
        } else {
            (1u128 << self.vars.len()) - 1
        }
    }

    pub fn var(&self, i: usize) -> &Var {
        &self.vars[i]
    }

    pub fn encode(&self, clause: &Clause) -> Bits {
        let mut b = Bits::default();
        for l in clause {
            let bit = 1u128 << self.index[l.var()];
            if l.is_positive() {
                b.pos |= bit;
            } else {
                b.neg |= bit;
            }
        }
        b
    }

    pub fn encode_all(&self, formula: &Formula) -> Vec<Bits> {
        formula.iter().map(|c| self.encode(c)).collect()
    }

    pub fn decode(&self, bits: Bits) -> Clause {
        let mut lits = Vec::with_capacity(bits.len() as usize);
        for (i, v) in self.vars.iter().enumerate() {
            let bit = 1u128 << i;
            if bits.neg & bit != 0 {
                lits.push(Lit::new(v.clone(), false));
            } else if bits.pos & bit != 0 {
                lits.push(Lit::new(v.clone(), true));
            }
        }
        // name order equals bit order
        Clause::from_sorted_unchecked(lits)
    }
}

/// Iterates all submasks of `mask`, starting with 0.
pub(crate) fn submasks(mask: u128) -> impl Iterator<Item = u128> {
    let mut next = Some(0u128);
    std::iter::from_fn(move || {
        let cur = next?;
        let succ = cur.wrapping_sub(mask) & mask;
        next = if succ == 0 { None } else { Some(succ) };
        Some(cur)
    })
}
