#![allow(dead_code)]

use std::path::{Path, PathBuf};

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden")
}

pub struct Case {
    pub name: &'static str,
    /// Commands run first, e.g. to produce an intermediate file.
    pub setup: &'static [&'static str],
    pub command: &'static str,
}

const fn case(name: &'static str, command: &'static str) -> Case {
    Case {
        name,
        setup: &[],
        command,
    }
}

/// Every command over the golden corpus. `{g}` is the corpus directory and
/// `{t}` a scratch directory.
pub const CASES: &[Case] = &[
    case("closure_ex1", "closure {g}/ex1.cnf --json"),
    case("closure_ex1_text", "closure {g}/ex1.cnf"),
    case("closure_two", "closure {g}/two.cnf --json"),
    case("closure_two_text", "closure {g}/two.cnf"),
    case(
        "closure_big_truncated",
        "closure {g}/big.cnf --budget 10 --json",
    ),
    case("closure_dimacs", "closure {g}/dimacs.cnf --json"),
    case("closure_dimacs_text", "closure {g}/dimacs.cnf"),
    case(
        "closure_dimacs_as_named",
        "closure {g}/dimacs.cnf --format named",
    ),
    case(
        "check_ex1_cross",
        "check {g}/ex1.cnf --clause 0 --method cross --json",
    ),
    case(
        "check_ex1_all_cross",
        "check {g}/ex1.cnf --all --method cross --json",
    ),
    case(
        "check_ex1_last_step",
        "check {g}/ex1.cnf --all --method last-step --json",
    ),
    case(
        "check_ex1_definition",
        "check {g}/ex1.cnf --all --method definition --json",
    ),
    case(
        "check_ex1_unit",
        "check {g}/ex1.cnf --clause 0 --method unit --json",
    ),
    case("check_pair", "check {g}/pair.cnf --all --json"),
    case(
        "check_pair_text",
        "check {g}/pair.cnf --all --method cross --prove",
    ),
    case("check_cycle", "check {g}/cycle.cnf --all --json"),
    case(
        "check_cycle_horn_krom",
        "check {g}/cycle.cnf --all --method horn-krom --json",
    ),
    case("check_cex", "check {g}/cex.cnf --all --method cross --json"),
    case(
        "check_subst1_prove",
        "check {g}/subst1.cnf --clause 0 --prove --json",
    ),
    case(
        "check_subst2_prove",
        "check {g}/subst2.cnf --clause 0 --prove --json",
    ),
    case(
        "check_split1",
        "check {g}/split1.cnf --all --method cross --json",
    ),
    case(
        "check_double",
        "check {g}/double.cnf --all --method cross --json",
    ),
    case("check_out_of_range", "check {g}/pair.cnf --clause 7 --json"),
    case(
        "check_unit_precondition",
        "check {g}/split1.cnf --clause 0 --method unit --json",
    ),
    case("fix_split1", "fix {g}/split1.cnf --targets 0 --json"),
    case("fix_split1_text", "fix {g}/split1.cnf --targets 0"),
    case("fix_blocked", "fix {g}/blocked.cnf --targets 0 --json"),
    case("fix_double", "fix {g}/double.cnf --all --json"),
    case("fix_cycle", "fix {g}/cycle.cnf --all --json"),
    case("minimize_ex1", "minimize {g}/ex1.cnf --json"),
    case("minimize_cex", "minimize {g}/cex.cnf --json"),
    case("minimize_cex_text", "minimize {g}/cex.cnf"),
    case("minimize_cycle", "minimize {g}/cycle.cnf --json"),
    case("minimize_unsat", "minimize {g}/unsat.cnf --json"),
    case("minimize_oracle_cap", "minimize {g}/big.cnf --json"),
    Case {
        name: "forget_split",
        setup: &["fix {g}/split1.cnf --targets 0 --out {t}/split.cnf"],
        command: "forget {t}/split.cnf --var _s0 --json",
    },
    case("forget_ex1", "forget {g}/ex1.cnf --var b --json"),
    case("reduce_sat", "reduce {g}/sat.cnf --json"),
    case("reduce_unsat_text", "reduce {g}/unsat.cnf"),
    Case {
        name: "verify_sat",
        setup: &["reduce {g}/sat.cnf --out {t}/sat.inst"],
        command: "verify-reduction {t}/sat.inst --json",
    },
    Case {
        name: "verify_unsat",
        setup: &["reduce {g}/unsat.cnf --out {t}/unsat.inst"],
        command: "verify-reduction {t}/unsat.inst --json",
    },
    case("parse_error", "closure {g}/bad.cnf --json"),
    case("tautology_error", "check {g}/taut.cnf --all --json"),
];

pub fn expand(template: &str, tmp: &Path) -> Vec<String> {
    let g = golden_dir();
    template
        .split_whitespace()
        .map(|w| {
            w.replace("{g}", g.to_str().unwrap())
                .replace("{t}", tmp.to_str().unwrap())
        })
        .collect()
}

/// Golden file body: the exit code line followed by stdout.
pub fn render(code: i32, stdout: &str) -> String {
    format!("exit {code}\n{stdout}")
}
