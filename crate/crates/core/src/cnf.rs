//! Propositional data model: variables, literals, clauses and CNF formulae.
//!
//! Clauses are literal sets kept in canonical order (by variable name, negative
//! before positive), so structural equality is set equality. Formulae keep
//! their clauses in first-insertion order with exact duplicates collapsed;
//! equality between formulae ignores that order.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use indexmap::IndexSet;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Token used for the empty clause in the named text format.
pub const EMPTY_CLAUSE_TOKEN: &str = "[]";

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Var(Arc<str>);

impl Var {
    pub fn new(name: &str) -> Result<Self> {
        let bad = name.is_empty()
            || name.starts_with('-')
            || name.starts_with('!')
            || name.contains('#')
            || name == EMPTY_CLAUSE_TOKEN
            || name.chars().any(char::is_whitespace);
        if bad {
            return Err(Error::InvalidName(name.to_string()));
        }
        Ok(Var(Arc::from(name)))
    }

    pub fn name(&self) -> &str {
        &self.0
    }

    pub fn pos(&self) -> Lit {
        Lit::new(self.clone(), true)
    }

    pub fn neg(&self) -> Lit {
        Lit::new(self.clone(), false)
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Debug for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for Var {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Var::new(s)
    }
}

impl Serialize for Var {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.0)
    }
}

/// A variable with a polarity. Ordering puts `¬x` right before `x`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit {
    var: Var,
    positive: bool,
}

impl Lit {
    pub fn new(var: Var, positive: bool) -> Self {
        Lit { var, positive }
    }

    pub fn var(&self) -> &Var {
        &self.var
    }

    pub fn is_positive(&self) -> bool {
        self.positive
    }

    pub fn negate(&self) -> Lit {
        Lit::new(self.var.clone(), !self.positive)
    }
}

impl fmt::Display for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.positive {
            write!(f, "{}", self.var)
        } else {
            write!(f, "-{}", self.var)
        }
    }
}

impl fmt::Debug for Lit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Lit {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.strip_prefix('-').or_else(|| s.strip_prefix('!')) {
            Some(name) => Ok(Lit::new(Var::new(name)?, false)),
            None => Ok(Lit::new(Var::new(s)?, true)),
        }
    }
}

impl Serialize for Lit {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A non-tautological disjunction of literals, stored as a sorted literal set.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Clause {
    lits: Vec<Lit>,
}

impl Clause {
    /// Builds a clause, collapsing repeated literals. Fails on `l ∨ ¬l`.
    pub fn new<I: IntoIterator<Item = Lit>>(lits: I) -> Result<Self> {
        let mut lits: Vec<Lit> = lits.into_iter().collect();
        lits.sort();
        lits.dedup();
        if lits.windows(2).any(|w| w[0].var == w[1].var) {
            return Err(Error::Tautology {
                clause: lits
                    .iter()
                    .map(Lit::to_string)
                    .collect::<Vec<_>>()
                    .join(" "),
                line: None,
            });
        }
        Ok(Clause { lits })
    }

    pub fn empty() -> Self {
        Clause::default()
    }

    pub fn unit(lit: Lit) -> Self {
        Clause { lits: vec![lit] }
    }

    pub(crate) fn from_sorted_unchecked(lits: Vec<Lit>) -> Self {
        debug_assert!(lits.windows(2).all(|w| w[0].var < w[1].var));
        Clause { lits }
    }

    pub fn literals(&self) -> &[Lit] {
        &self.lits
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Lit> {
        self.lits.iter()
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn contains(&self, lit: &Lit) -> bool {
        self.lits.binary_search(lit).is_ok()
    }

    pub fn mentions(&self, var: &Var) -> bool {
        self.lits.iter().any(|l| &l.var == var)
    }

    pub fn vars(&self) -> impl Iterator<Item = &Var> {
        self.lits.iter().map(|l| &l.var)
    }

    pub fn positive_count(&self) -> usize {
        self.lits.iter().filter(|l| l.positive).count()
    }

    /// At most one positive literal.
    pub fn is_horn(&self) -> bool {
        self.positive_count() <= 1
    }

    /// At most two literals.
    pub fn is_krom(&self) -> bool {
        self.lits.len() <= 2
    }

    /// `self ⊆ other` as literal sets.
    pub fn subsumes(&self, other: &Clause) -> bool {
        if self.lits.len() > other.lits.len() {
            return false;
        }
        let mut it = other.lits.iter();
        'outer: for l in &self.lits {
            for m in it.by_ref() {
                match m.cmp(l) {
                    std::cmp::Ordering::Less => continue,
                    std::cmp::Ordering::Equal => continue 'outer,
                    std::cmp::Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_proper_subclause_of(&self, other: &Clause) -> bool {
        self.lits.len() < other.lits.len() && self.subsumes(other)
    }

    pub fn without(&self, lit: &Lit) -> Clause {
        Clause {
            lits: self.lits.iter().filter(|l| *l != lit).cloned().collect(),
        }
    }

    pub fn with(&self, lit: Lit) -> Result<Clause> {
        Clause::new(self.lits.iter().cloned().chain(std::iter::once(lit)))
    }

    pub fn union(&self, other: &Clause) -> Result<Clause> {
        Clause::new(self.lits.iter().chain(other.lits.iter()).cloned())
    }

    /// Literals of `self` not in `other`.
    pub fn difference(&self, other: &Clause) -> Clause {
        Clause {
            lits: self
                .lits
                .iter()
                .filter(|l| !other.contains(l))
                .cloned()
                .collect(),
        }
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lits.is_empty() {
            return f.write_str(EMPTY_CLAUSE_TOKEN);
        }
        for (i, l) in self.lits.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Clause {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == EMPTY_CLAUSE_TOKEN {
            return Ok(Clause::empty());
        }
        let lits = s
            .split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Lit>>>()?;
        Clause::new(lits)
    }
}

impl Serialize for Clause {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'a> IntoIterator for &'a Clause {
    type Item = &'a Lit;
    type IntoIter = std::slice::Iter<'a, Lit>;
    fn into_iter(self) -> Self::IntoIter {
        self.lits.iter()
    }
}

/// A duplicate-free set of clauses, read conjunctively.
#[derive(Clone, Default, PartialEq, Eq)]
pub struct Formula {
    clauses: IndexSet<Clause>,
}

impl Formula {
    pub fn new() -> Self {
        Formula::default()
    }

    /// Inserts a clause; returns false if it was already present.
    pub fn insert(&mut self, clause: Clause) -> bool {
        self.clauses.insert(clause)
    }

    /// Removes a clause, keeping the order of the others.
    pub fn remove(&mut self, clause: &Clause) -> bool {
        self.clauses.shift_remove(clause)
    }

    pub fn contains(&self, clause: &Clause) -> bool {
        self.clauses.contains(clause)
    }

    pub fn get(&self, index: usize) -> Option<&Clause> {
        self.clauses.get_index(index)
    }

    pub fn index_of(&self, clause: &Clause) -> Option<usize> {
        self.clauses.get_index_of(clause)
    }

    pub fn iter(&self) -> indexmap::set::Iter<'_, Clause> {
        self.clauses.iter()
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    /// Number of literal occurrences.
    pub fn size(&self) -> usize {
        self.clauses.iter().map(Clause::len).sum()
    }

    pub fn vars(&self) -> BTreeSet<Var> {
        self.clauses
            .iter()
            .flat_map(|c| c.vars().cloned())
            .collect()
    }

    pub fn mentions(&self, var: &Var) -> bool {
        self.clauses.iter().any(|c| c.mentions(var))
    }

    pub fn occurs(&self, lit: &Lit) -> bool {
        self.clauses.iter().any(|c| c.contains(lit))
    }

    pub fn is_horn(&self) -> bool {
        self.clauses.iter().all(Clause::is_horn)
    }

    pub fn is_krom(&self) -> bool {
        self.clauses.iter().all(Clause::is_krom)
    }

    pub fn has_empty_clause(&self) -> bool {
        self.clauses.iter().any(Clause::is_empty)
    }

    /// The clauses containing `lit`.
    pub fn clauses_with_literal(&self, lit: &Lit) -> Formula {
        self.clauses
            .iter()
            .filter(|c| c.contains(lit))
            .cloned()
            .collect()
    }

    /// `self ∖ {clause}` as a new formula.
    pub fn without(&self, clause: &Clause) -> Formula {
        let mut out = self.clone();
        out.remove(clause);
        out
    }

    /// `self ∪ {clause}` as a new formula.
    pub fn with(&self, clause: Clause) -> Formula {
        let mut out = self.clone();
        out.insert(clause);
        out
    }

    pub fn union(&self, other: &Formula) -> Formula {
        let mut out = self.clone();
        out.extend(other.iter().cloned());
        out
    }

    pub fn is_subset(&self, other: &Formula) -> bool {
        self.clauses.iter().all(|c| other.contains(c))
    }

    /// Replaces `var` by `value` and simplifies: satisfied clauses go away,
    /// the falsified literal is deleted from the others.
    pub fn substitute(&self, var: &Var, value: bool) -> Formula {
        let satisfied = Lit::new(var.clone(), value);
        let falsified = satisfied.negate();
        self.clauses
            .iter()
            .filter(|c| !c.contains(&satisfied))
            .map(|c| {
                if c.contains(&falsified) {
                    c.without(&falsified)
                } else {
                    c.clone()
                }
            })
            .collect()
    }

    /// Clauses sorted by their canonical clause order.
    pub fn canonical(&self) -> Formula {
        let mut v: Vec<Clause> = self.clauses.iter().cloned().collect();
        v.sort();
        v.into_iter().collect()
    }

    pub fn sorted_clauses(&self) -> Vec<Clause> {
        let mut v: Vec<Clause> = self.clauses.iter().cloned().collect();
        v.sort();
        v
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromIterator<Clause> for Formula {
    fn from_iter<T: IntoIterator<Item = Clause>>(iter: T) -> Self {
        Formula {
            clauses: iter.into_iter().collect(),
        }
    }
}

impl Extend<Clause> for Formula {
    fn extend<T: IntoIterator<Item = Clause>>(&mut self, iter: T) {
        self.clauses.extend(iter)
    }
}

impl<'a> IntoIterator for &'a Formula {
    type Item = &'a Clause;
    type IntoIter = indexmap::set::Iter<'a, Clause>;
    fn into_iter(self) -> Self::IntoIter {
        self.clauses.iter()
    }
}

impl IntoIterator for Formula {
    type Item = Clause;
    type IntoIter = indexmap::set::IntoIter<Clause>;
    fn into_iter(self) -> Self::IntoIter {
        self.clauses.into_iter()
    }
}

/// Parses `;`-separated clauses, e.g. `"a; -a b; -b a"`. Handy in tests and
/// on the command line; files use [`crate::format`].
impl FromStr for Formula {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.split(';')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect()
    }
}

impl Serialize for Formula {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.clauses.iter())
    }
}

/// Truth values for a set of variables.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Assignment {
    values: BTreeMap<Var, bool>,
}

impl Assignment {
    pub fn new() -> Self {
        Assignment::default()
    }

    pub fn set(&mut self, var: Var, value: bool) {
        self.values.insert(var, value);
    }

    pub fn get(&self, var: &Var) -> Option<bool> {
        self.values.get(var).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Var, bool)> {
        self.values.iter().map(|(k, v)| (k, *v))
    }

    pub fn lit_value(&self, lit: &Lit) -> Option<bool> {
        self.get(lit.var()).map(|v| v == lit.is_positive())
    }

    pub fn satisfies_clause(&self, clause: &Clause) -> Result<bool> {
        let mut sat = false;
        for l in clause {
            match self.lit_value(l) {
                Some(v) => sat |= v,
                None => return Err(Error::PartialAssignment(l.var().to_string())),
            }
        }
        Ok(sat)
    }

    pub fn satisfies(&self, formula: &Formula) -> Result<bool> {
        for c in formula {
            if !self.satisfies_clause(c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl FromIterator<(Var, bool)> for Assignment {
    fn from_iter<T: IntoIterator<Item = (Var, bool)>>(iter: T) -> Self {
        Assignment {
            values: iter.into_iter().collect(),
        }
    }
}
