//! Superredundancy analysis of CNF clauses.
//!
//! A clause `c` of `F` is *superredundant* when the resolution closure of `F`
//! minus `c` still entails `c`; otherwise it is *superirredundant*, and then it
//! belongs to every minimum-size CNF equivalent to `F`. This crate decides the
//! property by several independent routes, proves superirredundancy with value
//! substitutions, splits clauses on fresh variables to make them
//! superirredundant, brute-forces minimal equivalent formulae at desk scale,
//! and generates the SAT to Horn-minimization reduction with a verifier.

mod bits;
pub mod cnf;
pub mod error;
pub mod format;
pub mod gen;
pub mod minimality;
pub mod reduction;
pub mod redundancy;
pub mod resolution;
pub mod semantics;
pub mod splitting;

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;

pub use cnf::{Assignment, Clause, Formula, Lit, Var};
pub use error::{Error, Result};
pub use format::Format;

/// Resource caps shared by every operation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest variable count for assignment enumeration.
    pub max_vars: usize,
    /// Largest resolution closure computed before reporting truncation.
    pub closure_budget: usize,
    /// Largest closure the minimal-formula oracle enumerates subsets of.
    pub oracle_clauses: usize,
    /// Iteration cap of clause splitting, as a multiple of the target count.
    pub fix_iteration_factor: usize,
    /// Residual formulae the substitution prover may visit.
    pub prover_nodes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_vars: 24,
            closure_budget: 100_000,
            oracle_clauses: 18,
            fix_iteration_factor: 4,
            prover_nodes: 20_000,
        }
    }
}

/// Cooperative cancellation flag for long enumerations.
#[derive(Clone, Debug, Default)]
pub struct CancelToken(Arc<AtomicBool>);

impl CancelToken {
    pub fn new() -> Self {
        CancelToken::default()
    }

    pub fn cancel(&self) {
        self.0.store(true, Ordering::Relaxed);
    }

    pub fn is_cancelled(&self) -> bool {
        self.0.load(Ordering::Relaxed)
    }

    pub(crate) fn check(&self) -> Result<()> {
        if self.is_cancelled() {
            Err(Error::Cancelled)
        } else {
            Ok(())
        }
    }
}
