//! The reduction from satisfiability of a CNF `F` to the existence of a Horn
//! formula of size at most `k` equivalent to a Horn formula `A`, and a
//! verifier that checks it end to end on small inputs.
//!
//! Over `x_i, e_i, t_i, c_j, r_i, s_i, q`:
//! - `A_F = {x_i ∨ ¬q, e_i ∨ ¬q}`
//! - `A_T = {¬x_i ∨ t_i, ¬e_i ∨ t_i}`
//! - `A_C = {¬x_i ∨ c_j | x_i ∈ f_j} ∪ {¬e_i ∨ c_j | ¬x_i ∈ f_j}`
//! - `A_B′ = {¬T ∨ ¬C ∨ x_i ∨ ¬r_i, r_i ∨ ¬q, ¬T ∨ ¬C ∨ e_i ∨ ¬s_i, s_i ∨ ¬q}`
//!
//! with `¬T = ¬t_1 ∨ … ∨ ¬t_n`, `¬C = ¬c_1 ∨ … ∨ ¬c_m` and
//! `k = 2n + ||A_T|| + ||A_C|| + ||A_B′||`.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cnf::{Assignment, Clause, Formula, Lit, Var};
use crate::error::{Error, Result};
use crate::minimality::minimal_equivalent_formulas;
use crate::redundancy::{check_super_horn_krom, verify_certificate, Certificate, SubstitutionStep};
use crate::semantics::equivalent;
use crate::{CancelToken, Limits};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionInstance {
    /// The input with its variables renamed `x1..xn` by first occurrence.
    pub input_cnf: Formula,
    /// Original name to `x<i>`.
    pub var_map: Vec<(Var, Var)>,
    pub a_f: Formula,
    pub a_t: Formula,
    pub a_c: Formula,
    pub a_b_prime: Formula,
    pub k: usize,
    pub n: usize,
    pub m: usize,
}

fn v(family: &str, i: usize) -> Var {
    Var::new(&format!("{family}{i}")).expect("family names are valid")
}

fn q() -> Var {
    Var::new("q").expect("valid")
}

fn clause<I: IntoIterator<Item = Lit>>(lits: I) -> Clause {
    Clause::new(lits).expect("construction never builds tautologies")
}

impl ReductionInstance {
    /// `A_F ∪ A_T ∪ A_C ∪ A_B′`.
    pub fn formula(&self) -> Formula {
        self.a_f
            .union(&self.a_t)
            .union(&self.a_c)
            .union(&self.a_b_prime)
    }

    /// `A_T ∪ A_C ∪ A_B′`.
    pub fn fixed(&self) -> Formula {
        self.a_t.union(&self.a_c).union(&self.a_b_prime)
    }

    pub fn x_vars(&self) -> Vec<Var> {
        (1..=self.n).map(|i| v("x", i)).collect()
    }

    /// The unsplit blocking clauses `¬T ∨ ¬C ∨ x_i ∨ ¬q`, `¬T ∨ ¬C ∨ e_i ∨ ¬q`.
    pub fn unsplit_blocking(&self) -> Formula {
        let mut out = Formula::new();
        for i in 1..=self.n {
            for family in ["x", "e"] {
                out.insert(clause(
                    self.blocking_prefix()
                        .chain([v(family, i).pos(), q().neg()]),
                ));
            }
        }
        out
    }

    fn blocking_prefix(&self) -> impl Iterator<Item = Lit> {
        let t = (1..=self.n).map(|i| v("t", i).neg());
        let c = (1..=self.m).map(|j| v("c", j).neg());
        t.chain(c).collect::<Vec<_>>().into_iter()
    }
}

/// Builds the instance for `f`.
pub fn build_reduction(f: &Formula) -> Result<ReductionInstance> {
    if f.is_empty() {
        return Err(Error::Malformed("the input formula has no clauses".into()));
    }
    if f.has_empty_clause() {
        return Err(Error::Malformed(
            "the input formula contains the empty clause".into(),
        ));
    }
    let mut rename: BTreeMap<Var, Var> = BTreeMap::new();
    let mut var_map = Vec::new();
    for c in f {
        for l in c {
            if !rename.contains_key(l.var()) {
                let x = v("x", rename.len() + 1);
                rename.insert(l.var().clone(), x.clone());
                var_map.push((l.var().clone(), x));
            }
        }
    }
    let input_cnf: Formula = f
        .iter()
        .map(|c| {
            clause(
                c.iter()
                    .map(|l| Lit::new(rename[l.var()].clone(), l.is_positive())),
            )
        })
        .collect();
    let n = rename.len();
    let m = input_cnf.len();

    let mut a_f = Formula::new();
    let mut a_t = Formula::new();
    for i in 1..=n {
        a_f.insert(clause([v("x", i).pos(), q().neg()]));
        a_f.insert(clause([v("e", i).pos(), q().neg()]));
        a_t.insert(clause([v("x", i).neg(), v("t", i).pos()]));
        a_t.insert(clause([v("e", i).neg(), v("t", i).pos()]));
    }
    let mut a_c = Formula::new();
    for (j, fj) in input_cnf.iter().enumerate() {
        for l in fj {
            let index: usize = l.var().name()[1..].parse().expect("renamed");
            let family = if l.is_positive() { "x" } else { "e" };
            a_c.insert(clause([v(family, index).neg(), v("c", j + 1).pos()]));
        }
    }
    let mut inst = ReductionInstance {
        input_cnf,
        var_map,
        a_f,
        a_t,
        a_c,
        a_b_prime: Formula::new(),
        k: 0,
        n,
        m,
    };
    let mut a_b_prime = Formula::new();
    for i in 1..=n {
        a_b_prime.insert(clause(
            inst.blocking_prefix()
                .chain([v("x", i).pos(), v("r", i).neg()]),
        ));
        a_b_prime.insert(clause([v("r", i).pos(), q().neg()]));
        a_b_prime.insert(clause(
            inst.blocking_prefix()
                .chain([v("e", i).pos(), v("s", i).neg()]),
        ));
        a_b_prime.insert(clause([v("s", i).pos(), q().neg()]));
    }
    inst.a_b_prime = a_b_prime;
    inst.k = 2 * n + inst.a_t.size() + inst.a_c.size() + inst.a_b_prime.size();
    Ok(inst)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedClauseProof {
    pub clause: Clause,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FixedReport {
    pub certified: Vec<FixedClauseProof>,
    /// Fixed clauses with no valid substitution chain or found superredundant.
    pub failures: Vec<Clause>,
}

impl FixedReport {
    pub fn all_certified(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Variables assigned by each of the three substitutions, in order.
fn substitution(inst: &ReductionInstance, target: &Clause) -> Option<Vec<(Var, bool)>> {
    let n = inst.n;
    let m = inst.m;
    let pairs = |i: usize, family: &str| clause([v(family, i).pos(), q().neg()]);
    let blocking = |i: usize, family: &str, split: &str| {
        clause(
            inst.blocking_prefix()
                .chain([v(family, i).pos(), v(split, i).neg()]),
        )
    };
    if (1..=n).any(|i| *target == pairs(i, "r") || *target == pairs(i, "s")) {
        let mut out = Vec::new();
        for i in 1..=n {
            out.extend(["x", "e", "t"].map(|fam| (v(fam, i), true)));
        }
        out.extend((1..=m).map(|j| (v("c", j), true)));
        return Some(out);
    }
    if inst.a_t.contains(target) || inst.a_c.contains(target) {
        let mut out = vec![(q(), false)];
        for i in 1..=n {
            out.push((v("r", i), false));
            out.push((v("s", i), false));
        }
        return Some(out);
    }
    for h in 1..=n {
        for (family, split) in [("x", "r"), ("e", "s")] {
            if *target == blocking(h, family, split) {
                let mut out = vec![(q(), false)];
                for i in 1..=n {
                    for fam in ["x", "e", "r", "s"] {
                        let kept = i == h && (fam == family || fam == split);
                        if !kept {
                            out.push((v(fam, i), false));
                        }
                    }
                }
                return Some(out);
            }
        }
    }
    None
}

/// Proves every clause of `A_T ∪ A_C ∪ A_B′` superirredundant in the whole
/// instance by its substitution chain, and cross-checks each verdict with the
/// polynomial Horn checker.
pub fn verify_fixed_superirredundant(
    inst: &ReductionInstance,
    limits: &Limits,
) -> Result<FixedReport> {
    let full = inst.formula();
    let mut report = FixedReport {
        certified: Vec::new(),
        failures: Vec::new(),
    };
    for c in &inst.fixed() {
        let Some(assign) = substitution(inst, c) else {
            report.failures.push(c.clone());
            continue;
        };
        let mut residual = full.clone();
        for (var, value) in &assign {
            residual = residual.substitute(var, *value);
        }
        let certificate = Certificate::SubstitutionChain {
            steps: assign
                .into_iter()
                .map(|(var, value)| SubstitutionStep::Assign { var, value })
                .collect(),
            residual,
        };
        let proved = verify_certificate(&full, c, &certificate, limits)?;
        let horn = check_super_horn_krom(&full, c, limits)?.superredundant;
        if proved && horn {
            return Err(Error::Disagreement(format!(
                "`{c}` has a superirredundancy chain yet the Horn check finds it superredundant"
            )));
        }
        if proved {
            report.certified.push(FixedClauseProof {
                clause: c.clone(),
                certificate,
            });
        } else {
            report.failures.push(c.clone());
        }
    }
    Ok(report)
}

/// `A_R′ ∪ A_T ∪ A_C ∪ A_B′` for a model `m` of the input, picking
/// `x_i ∨ ¬q` when `m ⊨ x_i` and `e_i ∨ ¬q` otherwise.
pub fn witness_formula(inst: &ReductionInstance, m: &Assignment) -> Result<Option<Formula>> {
    for x in inst.x_vars() {
        if m.get(&x).is_none() {
            return Err(Error::PartialAssignment(x.to_string()));
        }
    }
    if !m.satisfies(&inst.input_cnf)? {
        return Ok(None);
    }
    let mut out = Formula::new();
    for (i, x) in inst.x_vars().into_iter().enumerate() {
        let family = if m.get(&x) == Some(true) { "x" } else { "e" };
        out.insert(clause([v(family, i + 1).pos(), q().neg()]));
    }
    Ok(Some(out.union(&inst.fixed())))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "branch", rename_all = "kebab-case")]
pub enum ReductionCheck {
    /// Every model of the input gave a witness of size `k` equivalent to the
    /// instance.
    Satisfiable {
        models: usize,
        first_model: Assignment,
    },
    /// No choice of one clause among `x_h ∨ ¬q`, `e_h ∨ ¬q`, `t_h ∨ ¬q` per
    /// index, added to the fixed part, is equivalent to the instance.
    Unsatisfiable { candidates_refuted: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub consistent: bool,
    pub check: Option<ReductionCheck>,
    pub violation: Option<String>,
    /// Outcome of full minimization of the instance when its closure fits
    /// the oracle cap: whether "minimum ≤ k" matches satisfiability.
    pub oracle_spot_check: Option<bool>,
}

pub const MAX_VERIFY_VARS: usize = 3;
pub const MAX_VERIFY_CLAUSES: usize = 3;

pub fn verify_reduction(
    inst: &ReductionInstance,
    limits: &Limits,
    cancel: &CancelToken,
) -> Result<ReductionReport> {
    if inst.n > MAX_VERIFY_VARS || inst.m > MAX_VERIFY_CLAUSES {
        return Err(Error::Precondition(format!(
            "verification handles at most {MAX_VERIFY_VARS} variables and {MAX_VERIFY_CLAUSES} clauses, got n={} m={}",
            inst.n, inst.m
        )));
    }
    let full = inst.formula();
    let violation = |msg: String| ReductionReport {
        consistent: false,
        check: None,
        violation: Some(msg),
        oracle_spot_check: None,
    };
    let xs = inst.x_vars();
    let mut models = Vec::new();
    for bits in 0u32..(1 << inst.n) {
        let m: Assignment = xs
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), bits & (1 << i) != 0))
            .collect();
        if m.satisfies(&inst.input_cnf)? {
            models.push(m);
        }
    }

    let check = if let Some(first) = models.first().cloned() {
        for m in &models {
            cancel.check()?;
            let w = witness_formula(inst, m)?.expect("m is a model");
            if w.size() != inst.k {
                return Ok(violation(format!(
                    "witness for {m:?} has size {} not {}",
                    w.size(),
                    inst.k
                )));
            }
            if !equivalent(&w, &full, limits)? {
                return Ok(violation(format!(
                    "witness for {m:?} is not equivalent to the instance"
                )));
            }
        }
        ReductionCheck::Satisfiable {
            models: models.len(),
            first_model: first,
        }
    } else {
        let fixed = inst.fixed();
        let choices = ["x", "e", "t"];
        let total = 3usize.pow(inst.n as u32);
        for code in 0..total {
            cancel.check()?;
            let mut cand = fixed.clone();
            let mut rest = code;
            for h in 1..=inst.n {
                cand.insert(clause([v(choices[rest % 3], h).pos(), q().neg()]));
                rest /= 3;
            }
            if equivalent(&cand, &full, limits)? {
                return Ok(violation(format!(
                    "unsatisfiable input, yet the size-{} candidate {cand} is equivalent",
                    cand.size()
                )));
            }
        }
        ReductionCheck::Unsatisfiable {
            candidates_refuted: total,
        }
    };

    let oracle_spot_check = if inst.n == 1 {
        match minimal_equivalent_formulas(&full, limits, cancel) {
            Ok(r) => Some((r.min_size <= inst.k) == !models.is_empty()),
            Err(Error::OracleCap { .. }) | Err(Error::TruncatedClosure { .. }) => None,
            Err(e) => return Err(e),
        }
    } else {
        None
    };
    if oracle_spot_check == Some(false) {
        return Ok(violation(
            "full minimization contradicts the reduction".into(),
        ));
    }
    Ok(ReductionReport {
        consistent: true,
        check: Some(check),
        violation: None,
        oracle_spot_check,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resolution::forget_variable;

    fn fm(s: &str) -> Formula {
        s.parse().unwrap()
    }

    fn assign(pairs: &[(&str, bool)]) -> Assignment {
        pairs
            .iter()
            .map(|(n, b)| (Var::new(n).unwrap(), *b))
            .collect()
    }

    #[test]
    fn construction_examples() {
        let inst = build_reduction(&fm("x1 x2; -x1 -x2")).unwrap();
        assert_eq!(inst.a_c, fm("-x1 c1; -x2 c1; -e1 c2; -e2 c2"));
        assert_eq!(inst.fixed().len(), 16);

        let inst = build_reduction(&fm("x1")).unwrap();
        assert_eq!((inst.n, inst.m), (1, 1));
        assert_eq!(inst.a_f, fm("x1 -q; e1 -q"));
        assert_eq!(inst.a_t, fm("-x1 t1; -e1 t1"));
        assert_eq!(inst.a_c, fm("-x1 c1"));
        assert_eq!(
            inst.a_b_prime,
            fm("-t1 -c1 x1 -r1; r1 -q; -t1 -c1 e1 -s1; s1 -q")
        );
        assert_eq!(inst.k, 20);

        assert!(build_reduction(&fm("a b; c")).unwrap().formula().is_horn());
        assert!(build_reduction(&Formula::new()).is_err());
    }

    #[test]
    fn renaming_by_first_occurrence() {
        let inst = build_reduction(&fm("p q; -q")).unwrap();
        assert_eq!(inst.input_cnf, fm("x1 x2; -x2"));
        assert_eq!(inst.var_map[1].0.name(), "q");
    }

    #[test]
    fn fixed_clauses_certified() {
        let lim = Limits::default();
        for f in ["x1 x2; -x1 -x2", "x1"] {
            let inst = build_reduction(&fm(f)).unwrap();
            let report = verify_fixed_superirredundant(&inst, &lim).unwrap();
            assert!(report.all_certified(), "{f}: {:?}", report.failures);
            assert_eq!(report.certified.len(), inst.fixed().len());
        }
    }

    #[test]
    fn tampering_is_detected() {
        let mut inst = build_reduction(&fm("x1 x2; -x1 -x2")).unwrap();
        inst.a_b_prime.insert(fm("x1 -r1").get(0).unwrap().clone());
        let report = verify_fixed_superirredundant(&inst, &Limits::default()).unwrap();
        assert!(!report.all_certified());
    }

    #[test]
    fn witnesses() {
        let lim = Limits::default();
        let inst = build_reduction(&fm("x1 x2; -x1 -x2")).unwrap();
        let w = witness_formula(&inst, &assign(&[("x1", true), ("x2", false)]))
            .unwrap()
            .unwrap();
        assert!(w.contains(&"x1 -q".parse().unwrap()));
        assert!(w.contains(&"e2 -q".parse().unwrap()));
        assert_eq!(w.size(), inst.k);
        assert!(equivalent(&w, &inst.formula(), &lim).unwrap());
        assert_eq!(
            witness_formula(&inst, &assign(&[("x1", true), ("x2", true)])).unwrap(),
            None
        );
        assert!(witness_formula(&inst, &assign(&[("x1", true)])).is_err());

        let inst = build_reduction(&fm("x1")).unwrap();
        let w = witness_formula(&inst, &assign(&[("x1", true)]))
            .unwrap()
            .unwrap();
        assert_eq!(w.size(), inst.k);
        assert!(equivalent(&w, &inst.formula(), &lim).unwrap());
    }

    #[test]
    fn verification_branches() {
        let lim = Limits::default();
        let tok = CancelToken::new();
        let r =
            verify_reduction(&build_reduction(&fm("x1 x2; -x1 -x2")).unwrap(), &lim, &tok).unwrap();
        assert!(r.consistent);
        assert!(matches!(
            r.check,
            Some(ReductionCheck::Satisfiable { models: 2, .. })
        ));

        let r = verify_reduction(&build_reduction(&fm("x1; -x1")).unwrap(), &lim, &tok).unwrap();
        assert!(r.consistent);
        assert_eq!(
            r.check,
            Some(ReductionCheck::Unsatisfiable {
                candidates_refuted: 3
            })
        );

        let r = verify_reduction(&build_reduction(&fm("x1")).unwrap(), &lim, &tok).unwrap();
        assert!(r.consistent);
    }

    #[test]
    fn split_blocking_clauses_forget_to_unsplit() {
        let inst = build_reduction(&fm("x1 -x2; x2 x3")).unwrap();
        let mut g = inst.a_b_prime.clone();
        for i in 1..=inst.n {
            g = forget_variable(&g, &v("r", i));
            g = forget_variable(&g, &v("s", i));
        }
        assert_eq!(g, inst.unsplit_blocking());
    }
}
