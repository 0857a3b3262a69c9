//! Text formats: DIMACS CNF and a named one-clause-per-line format.
//!
//! DIMACS numerals become variables `x<k>`. When writing, variables are
//! numbered in lexicographic name order; unless every name already is the
//! `x<k>` its number would produce, a `c map <k> <name>` comment per variable
//! records the numbering, and the reader honours those comments, so writing
//! and reading back yields the same formula.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::cnf::{Clause, Formula, Lit, Var, EMPTY_CLAUSE_TOKEN};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Format {
    Dimacs,
    Named,
}

impl Format {
    /// DIMACS if some line starts with a `p cnf` header, named otherwise.
    pub fn detect(text: &str) -> Format {
        let dimacs = text.lines().any(|l| {
            let mut t = l.split_whitespace();
            t.next() == Some("p") && t.next() == Some("cnf")
        });
        if dimacs {
            Format::Dimacs
        } else {
            Format::Named
        }
    }
}

impl std::str::FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "dimacs" | "cnf" => Ok(Format::Dimacs),
            "named" => Ok(Format::Named),
            other => Err(Error::Malformed(format!("unknown format `{other}`"))),
        }
    }
}

pub fn parse(text: &str, format: Format) -> Result<Formula> {
    match format {
        Format::Dimacs => parse_dimacs(text),
        Format::Named => parse_named(text),
    }
}

pub fn serialize(formula: &Formula, format: Format) -> String {
    match format {
        Format::Dimacs => write_dimacs(formula),
        Format::Named => write_named(formula),
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokens(line: &str) -> impl Iterator<Item = (usize, &str)> {
    line.split_whitespace().map(move |tok| {
        let offset = tok.as_ptr() as usize - line.as_ptr() as usize;
        (line[..offset].chars().count() + 1, tok)
    })
}

fn with_line(err: Error, line: usize) -> Error {
    match err {
        Error::Tautology { clause, .. } => Error::Tautology {
            clause,
            line: Some(line),
        },
        other => other,
    }
}

fn parse_named(text: &str) -> Result<Formula> {
    let mut formula = Formula::new();
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.split('#').next().unwrap_or("");
        if line.trim().is_empty() {
            continue;
        }
        let mut lits = Vec::new();
        let mut empty_marker = false;
        for (col, tok) in tokens(line) {
            if tok == EMPTY_CLAUSE_TOKEN {
                empty_marker = true;
                continue;
            }
            let lit: Lit = tok
                .parse()
                .map_err(|_| syntax(lineno, col, format!("invalid literal `{tok}`")))?;
            lits.push(lit);
        }
        if empty_marker && !lits.is_empty() {
            return Err(syntax(lineno, 1, "`[]` must stand alone on its line"));
        }
        formula.insert(Clause::new(lits).map_err(|e| with_line(e, lineno))?);
    }
    Ok(formula)
}

fn write_named(formula: &Formula) -> String {
    let mut out = String::new();
    for c in formula {
        let _ = writeln!(out, "{c}");
    }
    out
}

fn parse_dimacs(text: &str) -> Result<Formula> {
    let mut names: BTreeMap<u64, Var> = BTreeMap::new();
    let mut header: Option<u64> = None;
    let mut formula = Formula::new();
    let mut pending: Vec<Lit> = Vec::new();
    let mut pending_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let trimmed = raw.trim_start();
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.is_empty() {
            continue;
        }
        if trimmed.starts_with('c') {
            let mut t = tokens(raw);
            t.next();
            if let Some((_, "map")) = t.next() {
                let (col, num) = t
                    .next()
                    .ok_or_else(|| syntax(lineno, 1, "`c map` needs a number and a name"))?;
                let num: u64 = num
                    .parse()
                    .map_err(|_| syntax(lineno, col, format!("bad variable number `{num}`")))?;
                let (col, name) = t
                    .next()
                    .ok_or_else(|| syntax(lineno, col, "`c map` needs a name"))?;
                let var = Var::new(name)
                    .map_err(|_| syntax(lineno, col, format!("bad variable name `{name}`")))?;
                names.insert(num, var);
            }
            continue;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(syntax(lineno, 1, "duplicate problem line"));
            }
            let t: Vec<(usize, &str)> = tokens(raw).collect();
            if t.len() != 4 || t[1].1 != "cnf" {
                return Err(syntax(lineno, 1, "expected `p cnf <vars> <clauses>`"));
            }
            let vars: u64 = t[2]
                .1
                .parse()
                .map_err(|_| syntax(lineno, t[2].0, "bad variable count"))?;
            t[3].1
                .parse::<u64>()
                .map_err(|_| syntax(lineno, t[3].0, "bad clause count"))?;
            header = Some(vars);
            continue;
        }
        let Some(max_var) = header else {
            return Err(syntax(lineno, 1, "clause before `p cnf` header"));
        };
        for (col, tok) in tokens(raw) {
            let value: i64 = tok
                .parse()
                .map_err(|_| syntax(lineno, col, format!("invalid literal `{tok}`")))?;
            if pending.is_empty() {
                pending_line = lineno;
            }
            if value == 0 {
                let clause =
                    Clause::new(pending.drain(..)).map_err(|e| with_line(e, pending_line))?;
                formula.insert(clause);
                continue;
            }
            let index = value.unsigned_abs();
            if index > max_var {
                return Err(syntax(
                    lineno,
                    col,
                    format!("variable {index} exceeds header count {max_var}"),
                ));
            }
            let var = match names.get(&index) {
                Some(v) => v.clone(),
                None => Var::new(&format!("x{index}")).expect("generated name is valid"),
            };
            pending.push(Lit::new(var, value > 0));
        }
    }
    if header.is_none() {
        return Err(syntax(1, 1, "missing `p cnf` header"));
    }
    if !pending.is_empty() {
        let clause = Clause::new(pending).map_err(|e| with_line(e, pending_line))?;
        formula.insert(clause);
    }
    Ok(formula)
}

/// The variable numbering used by the DIMACS writer.
pub fn dimacs_numbering(formula: &Formula) -> Vec<(usize, Var)> {
    formula
        .vars()
        .into_iter()
        .enumerate()
        .map(|(i, v)| (i + 1, v))
        .collect()
}

fn write_dimacs(formula: &Formula) -> String {
    let numbering = dimacs_numbering(formula);
    let index: BTreeMap<&Var, usize> = numbering.iter().map(|(i, v)| (v, *i)).collect();
    let identity = numbering.iter().all(|(i, v)| v.name() == format!("x{i}"));
    let mut out = String::new();
    if !identity {
        for (i, v) in &numbering {
            let _ = writeln!(out, "c map {i} {v}");
        }
    }
    let _ = writeln!(out, "p cnf {} {}", numbering.len(), formula.len());
    for c in formula {
        for l in c {
            let i = index[l.var()];
            let _ = write!(out, "{}{} ", if l.is_positive() { "" } else { "-" }, i);
        }
        out.push_str("0\n");
    }
    out
}
