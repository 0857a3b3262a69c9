//! Command-line front end. `run` does all the work and returns the exit code
//! and the text for stdout/stderr, so tests can drive it in-process.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

use superclause::format::{self, Format};
use superclause::minimality::{certify_minimal, minimal_equivalent_formulas, Certification};
use superclause::reduction::{
    build_reduction, verify_fixed_superirredundant, verify_reduction, ReductionInstance,
    ReductionReport,
};
use superclause::redundancy::{self, prove_superirredundant_by_substitution, Certificate, Method};
use superclause::resolution::{forget_variable, resolution_closure};
use superclause::splitting::{make_superirredundant, FreshNamer, SplitPlan};
use superclause::{CancelToken, Clause, Error, Formula, Limits, Var};

pub const EXIT_OK: i32 = 0;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;
pub const EXIT_DISAGREEMENT: i32 = 4;
pub const EXIT_FIX_FAILED: i32 = 5;

pub const MAX_VARS_ENV: &str = "SUPERCLAUSE_MAX_VARS";

#[derive(Parser, Debug)]
#[command(
    name = "superclause",
    version,
    about = "Superredundancy analysis of CNF clauses"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Input file, or `-` for stdin.
    input: String,
    /// Print a JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Input format; detected from a `p cnf` line when omitted.
    #[arg(long, value_enum)]
    input_format: Option<FormatArg>,
    /// Format of formula output; defaults to the input format.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Variable cap for assignment enumeration (overrides SUPERCLAUSE_MAX_VARS).
    #[arg(long)]
    max_vars: Option<usize>,
    /// Clause budget of the resolution closure.
    #[arg(long, default_value_t = Limits::default().closure_budget)]
    budget: usize,
    /// Closure size cap of the minimization oracle.
    #[arg(long, default_value_t = Limits::default().oracle_clauses)]
    oracle_cap: usize,
    /// Split iteration cap as a multiple of the number of targets.
    #[arg(long, default_value_t = Limits::default().fix_iteration_factor)]
    fix_factor: usize,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Dimacs,
    Named,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Format {
        match f {
            FormatArg::Dimacs => Format::Dimacs,
            FormatArg::Named => Format::Named,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Definition,
    FirstStep,
    LastStep,
    Unit,
    PureUnit,
    HornKrom,
    Cross,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Resolution closure of the input.
    Closure {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Superredundancy verdicts for selected clauses.
    Check {
        #[command(flatten)]
        common: Common,
        /// Zero-based clause index in input order.
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        clause: Option<usize>,
        #[arg(long)]
        all: bool,
        #[arg(long, value_enum, default_value = "auto")]
        method: MethodArg,
        /// Also search a substitution proof for superirredundant clauses.
        #[arg(long)]
        prove: bool,
    },
    /// Split clauses until the targets are superirredundant.
    Fix {
        #[command(flatten)]
        common: Common,
        /// Comma-separated zero-based clause indices.
        #[arg(
            long,
            value_delimiter = ',',
            conflicts_with = "all",
            required_unless_present = "all"
        )]
        targets: Vec<usize>,
        #[arg(long)]
        all: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// All minimum-size equivalent formulae.
    Minimize {
        #[command(flatten)]
        common: Common,
    },
    /// Forget a variable by resolving it out.
    Forget {
        #[command(flatten)]
        common: Common,
        #[arg(long = "var")]
        var: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build the Horn minimization instance of a CNF.
    Reduce {
        #[command(flatten)]
        common: Common,
        /// Instance file; its metadata goes to `<out>.meta.json`.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an instance written by `reduce`.
    VerifyReduction {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    command: &'static str,
    input_digest: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    results: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<ErrorInfo>,
    warnings: Vec<String>,
}

#[derive(Serialize)]
struct ErrorInfo {
    code: i32,
    kind: &'static str,
    message: String,
}

struct Failure {
    code: i32,
    kind: &'static str,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        let (code, kind) = match &e {
            Error::Syntax { .. } => (EXIT_PARSE, "syntax"),
            Error::Tautology { .. } => (EXIT_PARSE, "tautology"),
            Error::InvalidName(_) => (EXIT_PARSE, "invalid-name"),
            Error::Malformed(_) => (EXIT_PARSE, "malformed"),
            Error::PartialAssignment(_) => (EXIT_PARSE, "partial-assignment"),
            Error::ClauseNotInFormula(_) => (EXIT_PARSE, "clause-not-in-formula"),
            Error::Precondition(_) => (EXIT_PARSE, "precondition"),
            Error::NotHornOrKrom => (EXIT_PARSE, "not-horn-or-krom"),
            Error::VariableCap { .. } => (EXIT_RESOURCE, "variable-cap"),
            Error::BitWidth { .. } => (EXIT_RESOURCE, "bit-width"),
            Error::TruncatedClosure { .. } => (EXIT_RESOURCE, "truncated-closure"),
            Error::OracleCap { .. } => (EXIT_RESOURCE, "oracle-cap"),
            Error::Cancelled => (EXIT_RESOURCE, "cancelled"),
            Error::Disagreement(_) => (EXIT_DISAGREEMENT, "disagreement"),
            Error::NoViablePartition { .. } => (EXIT_FIX_FAILED, "no-viable-partition"),
            Error::IterationCap { .. } => (EXIT_FIX_FAILED, "iteration-cap"),
        };
        Failure {
            code,
            kind,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_PARSE,
        kind: "usage",
        message: message.into(),
    }
}

fn io_failure(path: &Path, e: std::io::Error) -> Failure {
    Failure {
        code: EXIT_PARSE,
        kind: "io",
        message: format!("{}: {e}", path.display()),
    }
}

struct Input {
    formula: Formula,
    format: Format,
}

struct Ctx<'a> {
    common: &'a Common,
    limits: Limits,
    output: Format,
    warnings: Vec<String>,
}

impl Ctx<'_> {
    fn comment(&self, text: &str) -> String {
        match self.output {
            Format::Named => format!("# {text}\n"),
            Format::Dimacs => format!("c {text}\n"),
        }
    }
}

/// Result of a subcommand: its JSON payload, the text output, and the exit
/// code when the command finished but flagged a problem.
struct Done<T> {
    results: T,
    text: String,
    code: i32,
}

fn done<T>(results: T, text: String) -> Done<T> {
    Done {
        results,
        text,
        code: EXIT_OK,
    }
}

fn read_bytes(common: &Common, stdin: &mut dyn Read) -> Result<Vec<u8>, Failure> {
    if common.input == "-" {
        let mut bytes = Vec::new();
        stdin
            .read_to_end(&mut bytes)
            .map_err(|e| io_failure(Path::new("-"), e))?;
        Ok(bytes)
    } else {
        let path = Path::new(&common.input);
        fs::read(path).map_err(|e| io_failure(path, e))
    }
}

fn parse_input(common: &Common, bytes: Vec<u8>) -> Result<Input, Failure> {
    let text = String::from_utf8(bytes).map_err(|_| usage("input is not UTF-8"))?;
    let format = common
        .input_format
        .map(Format::from)
        .unwrap_or_else(|| Format::detect(&text));
    let formula = format::parse(&text, format)?;
    Ok(Input { formula, format })
}

fn limits(common: &Common) -> Result<Limits, Failure> {
    let max_vars = match common.max_vars {
        Some(v) => v,
        None => match std::env::var(MAX_VARS_ENV) {
            Ok(s) => s
                .trim()
                .parse()
                .map_err(|_| usage(format!("{MAX_VARS_ENV} must be a number, got `{s}`")))?,
            Err(_) => Limits::default().max_vars,
        },
    };
    Ok(Limits {
        max_vars,
        closure_budget: common.budget,
        oracle_clauses: common.oracle_cap,
        fix_iteration_factor: common.fix_factor,
        ..Limits::default()
    })
}

fn write_out(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| io_failure(path, e))
}

/// Parses `args` (program name first) and runs one command.
pub fn run<I, S>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_PARSE,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match cli.command {
        Command::Closure {
            ref common,
            ref out,
        } => execute("closure", common, stdin, |ctx, input| {
            cmd_closure(ctx, input, out.as_deref())
        }),
        Command::Check {
            ref common,
            clause,
            all,
            method,
            prove,
        } => execute("check", common, stdin, |ctx, input| {
            cmd_check(ctx, input, clause, all, method, prove)
        }),
        Command::Fix {
            ref common,
            ref targets,
            all,
            ref out,
        } => execute("fix", common, stdin, |ctx, input| {
            cmd_fix(ctx, input, targets, all, out.as_deref())
        }),
        Command::Minimize { ref common } => execute("minimize", common, stdin, cmd_minimize),
        Command::Forget {
            ref common,
            ref var,
            ref out,
        } => execute("forget", common, stdin, |ctx, input| {
            cmd_forget(ctx, input, var, out.as_deref())
        }),
        Command::Reduce {
            ref common,
            ref out,
        } => execute("reduce", common, stdin, |ctx, input| {
            cmd_reduce(ctx, input, out.as_deref())
        }),
        Command::VerifyReduction { ref common } => {
            execute("verify-reduction", common, stdin, cmd_verify_reduction)
        }
    }
}

fn execute<T, F>(name: &'static str, common: &Common, stdin: &mut dyn Read, body: F) -> Outcome
where
    T: Serialize,
    F: FnOnce(&mut Ctx<'_>, &Input) -> Result<Done<T>, Failure>,
{
    let mut digest = String::new();
    let mut warnings = Vec::new();
    let result = (|| {
        let bytes = read_bytes(common, stdin)?;
        digest = format!("sha256:{}", hex::encode(Sha256::digest(&bytes)));
        let input = parse_input(common, bytes)?;
        let mut ctx = Ctx {
            common,
            limits: limits(common)?,
            output: common.format.map(Format::from).unwrap_or(input.format),
            warnings: Vec::new(),
        };
        if input.formula.has_empty_clause() {
            ctx.warnings
                .push("degenerate input: the formula contains the empty clause".into());
        }
        let r = body(&mut ctx, &input);
        warnings = std::mem::take(&mut ctx.warnings);
        r
    })();

    match result {
        Ok(d) => {
            let stdout = if common.json {
                to_json(&Report {
                    command: name,
                    input_digest: digest,
                    results: Some(d.results),
                    error: None,
                    warnings: warnings.clone(),
                })
            } else {
                d.text
            };
            let stderr = if common.json {
                String::new()
            } else {
                warnings.iter().map(|w| format!("warning: {w}\n")).collect()
            };
            Outcome {
                code: d.code,
                stdout,
                stderr,
            }
        }
        Err(f) => {
            let stdout = if common.json {
                to_json(&Report::<()> {
                    command: name,
                    input_digest: digest,
                    results: None,
                    error: Some(ErrorInfo {
                        code: f.code,
                        kind: f.kind,
                        message: f.message.clone(),
                    }),
                    warnings,
                })
            } else {
                String::new()
            };
            Outcome {
                code: f.code,
                stdout,
                stderr: format!("error: {}\n", f.message),
            }
        }
    }
}

fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

#[derive(Serialize)]
struct ClosureResults {
    input_clauses: usize,
    clause_count: usize,
    generation_count: usize,
    truncated: bool,
    budget: usize,
    closure: Formula,
}

fn cmd_closure(
    ctx: &mut Ctx<'_>,
    input: &Input,
    out: Option<&Path>,
) -> Result<Done<ClosureResults>, Failure> {
    let r = resolution_closure(&input.formula, ctx.limits.closure_budget)?;
    let mut text = format::serialize(&r.clauses, ctx.output);
    let mut code = EXIT_OK;
    if r.truncated {
        ctx.warnings.push(format!(
            "closure truncated at the budget of {} clauses",
            r.budget
        ));
        text = ctx.comment("truncated") + &text;
        code = EXIT_RESOURCE;
    }
    if let Some(path) = out {
        write_out(path, &text)?;
        text = String::new();
    }
    Ok(Done {
        results: ClosureResults {
            input_clauses: input.formula.len(),
            clause_count: r.clauses.len(),
            generation_count: r.generation_count,
            truncated: r.truncated,
            budget: r.budget,
            closure: r.clauses,
        },
        text,
        code,
    })
}

#[derive(Serialize)]
struct ClauseVerdict {
    index: usize,
    clause: Clause,
    superredundant: bool,
    methods_used: Vec<Method>,
    #[serde(skip_serializing_if = "Option::is_none")]
    certificate: Option<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    proof: Option<Certificate>,
}

#[derive(Serialize)]
struct CheckResults {
    method: &'static str,
    verdicts: Vec<ClauseVerdict>,
}

fn cmd_check(
    ctx: &mut Ctx<'_>,
    input: &Input,
    clause: Option<usize>,
    all: bool,
    method: MethodArg,
    prove: bool,
) -> Result<Done<CheckResults>, Failure> {
    let f = &input.formula;
    let indices: Vec<usize> = if all {
        (0..f.len()).collect()
    } else {
        let i = clause.expect("clap requires --clause or --all");
        if i >= f.len() {
            return Err(usage(format!(
                "clause index {i} out of range: the formula has {} clauses",
                f.len()
            )));
        }
        vec![i]
    };
    let (name, method) = match method {
        MethodArg::Auto => ("first-step", Some(Method::FirstStep)),
        MethodArg::Definition => ("definition", Some(Method::Definition)),
        MethodArg::FirstStep => ("first-step", Some(Method::FirstStep)),
        MethodArg::LastStep => ("last-step", Some(Method::LastStep)),
        MethodArg::Unit => ("unit", Some(Method::Unit)),
        MethodArg::PureUnit => ("pure-unit", Some(Method::PureUnit)),
        MethodArg::HornKrom => ("horn-krom", Some(Method::HornKrom)),
        MethodArg::Cross => ("cross", None),
    };
    let mut verdicts = Vec::new();
    let mut text = String::new();
    for i in indices {
        let c = f.get(i).expect("index checked").clone();
        let v = match method {
            Some(m) => redundancy::check_with(f, &c, m, &ctx.limits)?,
            None => redundancy::cross_check(f, &c, &ctx.limits)?,
        };
        let proof = if prove && !v.superredundant {
            prove_superirredundant_by_substitution(f, &c, None, &ctx.limits)?
        } else {
            None
        };
        let label = if v.superredundant {
            "superredundant"
        } else {
            "superirredundant"
        };
        let methods: Vec<&str> = v.methods_used.iter().map(|m| m.name()).collect();
        text.push_str(&format!("{i}: {c}  {label} [{}]", methods.join(", ")));
        if let Some(p) = &proof {
            text.push_str(&format!(" proof: {}", p.kind()));
        }
        text.push('\n');
        verdicts.push(ClauseVerdict {
            index: i,
            clause: c,
            superredundant: v.superredundant,
            methods_used: v.methods_used,
            certificate: v.certificate,
            proof,
        });
    }
    Ok(done(
        CheckResults {
            method: name,
            verdicts,
        },
        text,
    ))
}

#[derive(Serialize)]
struct FixResults {
    targets: Vec<Clause>,
    plans: Vec<SplitPlan>,
    formula: Formula,
}

fn cmd_fix(
    ctx: &mut Ctx<'_>,
    input: &Input,
    targets: &[usize],
    all: bool,
    out: Option<&Path>,
) -> Result<Done<FixResults>, Failure> {
    let f = &input.formula;
    let chosen: Formula = if all {
        f.clone()
    } else {
        let mut t = Formula::new();
        for &i in targets {
            t.insert(
                f.get(i)
                    .ok_or_else(|| usage(format!("target index {i} out of range")))?
                    .clone(),
            );
        }
        t
    };
    let r = make_superirredundant(f, &chosen, &mut FreshNamer::default(), &ctx.limits)?;
    let mut text = String::new();
    for p in &r.plans {
        text.push_str(&ctx.comment(&format!(
            "split {} into {} | {}",
            p.original, p.half_a, p.half_b
        )));
    }
    text.push_str(&format::serialize(&r.formula, ctx.output));
    if let Some(path) = out {
        write_out(path, &text)?;
        text = String::new();
    }
    Ok(done(
        FixResults {
            targets: chosen.into_iter().collect(),
            plans: r.plans,
            formula: r.formula,
        },
        text,
    ))
}

#[derive(Serialize)]
struct MinimizeResults {
    input_size: usize,
    min_size: usize,
    minimal_formulas: Vec<Formula>,
    search_space: u64,
    certification: Certification,
}

fn cmd_minimize(ctx: &mut Ctx<'_>, input: &Input) -> Result<Done<MinimizeResults>, Failure> {
    let f = &input.formula;
    let r = minimal_equivalent_formulas(f, &ctx.limits, &CancelToken::new())?;
    if r.degenerate {
        ctx.warnings
            .push("degenerate input: the formula is unsatisfiable".into());
    }
    let certification = certify_minimal(f, &ctx.limits)?;
    let mut text = format!("min_size {}\n", r.min_size);
    for m in &r.minimal_formulas {
        text.push_str(&format!("{m}\n"));
    }
    Ok(done(
        MinimizeResults {
            input_size: f.size(),
            min_size: r.min_size,
            minimal_formulas: r.minimal_formulas,
            search_space: r.search_space,
            certification,
        },
        text,
    ))
}

#[derive(Serialize)]
struct ForgetResults {
    variable: Var,
    formula: Formula,
}

fn cmd_forget(
    ctx: &mut Ctx<'_>,
    input: &Input,
    var: &str,
    out: Option<&Path>,
) -> Result<Done<ForgetResults>, Failure> {
    let x = Var::new(var)?;
    if !input.formula.mentions(&x) {
        ctx.warnings
            .push(format!("variable `{x}` does not occur in the formula"));
    }
    let g = forget_variable(&input.formula, &x);
    let mut text = format::serialize(&g, ctx.output);
    if let Some(path) = out {
        write_out(path, &text)?;
        text = String::new();
    }
    Ok(done(
        ForgetResults {
            variable: x,
            formula: g,
        },
        text,
    ))
}

/// Companion record of an instance file.
#[derive(Serialize, serde::Deserialize, Debug, PartialEq, Eq)]
pub struct InstanceMeta {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    /// The input with variables renamed to `x<i>`.
    pub input: Vec<String>,
    /// Pairs of original and renamed variable names.
    pub var_map: Vec<(String, String)>,
}

pub fn meta_path(instance: &Path) -> PathBuf {
    let mut s = instance.as_os_str().to_owned();
    s.push(".meta.json");
    PathBuf::from(s)
}

fn meta_of(inst: &ReductionInstance) -> InstanceMeta {
    InstanceMeta {
        n: inst.n,
        m: inst.m,
        k: inst.k,
        input: inst.input_cnf.iter().map(Clause::to_string).collect(),
        var_map: inst
            .var_map
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect(),
    }
}

/// Sizes summing to k; the blocking part is counted after splitting.
#[derive(Serialize)]
struct KTerms {
    two_n: usize,
    a_t: usize,
    a_c: usize,
    a_b_prime: usize,
}

#[derive(Serialize)]
struct ReduceResults {
    meta: InstanceMeta,
    horn: bool,
    k_terms: KTerms,
    a_f: Formula,
    a_t: Formula,
    a_c: Formula,
    a_b_prime: Formula,
}

fn cmd_reduce(
    ctx: &mut Ctx<'_>,
    input: &Input,
    out: Option<&Path>,
) -> Result<Done<ReduceResults>, Failure> {
    let inst = build_reduction(&input.formula)?;
    let meta = meta_of(&inst);
    let formula_text = format::serialize(&inst.formula(), ctx.output);
    let text = match out {
        Some(path) => {
            write_out(path, &formula_text)?;
            let meta_text = serde_json::to_string_pretty(&meta).expect("meta serializes") + "\n";
            write_out(&meta_path(path), &meta_text)?;
            format!("n {} m {} k {}\n", inst.n, inst.m, inst.k)
        }
        None => ctx.comment(&format!("k {}", inst.k)) + &formula_text,
    };
    Ok(done(
        ReduceResults {
            meta,
            horn: inst.formula().is_horn(),
            k_terms: KTerms {
                two_n: 2 * inst.n,
                a_t: inst.a_t.size(),
                a_c: inst.a_c.size(),
                a_b_prime: inst.a_b_prime.size(),
            },
            a_f: inst.a_f,
            a_t: inst.a_t,
            a_c: inst.a_c,
            a_b_prime: inst.a_b_prime,
        },
        text,
    ))
}

#[derive(Serialize)]
struct VerifyResults {
    n: usize,
    m: usize,
    k: usize,
    matches_construction: bool,
    fixed_certified: usize,
    fixed_failures: Vec<Clause>,
    reduction: Option<ReductionReport>,
    consistent: bool,
}

fn cmd_verify_reduction(ctx: &mut Ctx<'_>, input: &Input) -> Result<Done<VerifyResults>, Failure> {
    if ctx.common.input == "-" {
        return Err(usage(
            "verify-reduction needs an instance path with its .meta.json companion",
        ));
    }
    let meta_file = meta_path(Path::new(&ctx.common.input));
    let meta_text = fs::read_to_string(&meta_file).map_err(|e| io_failure(&meta_file, e))?;
    let meta: InstanceMeta = serde_json::from_str(&meta_text)
        .map_err(|e| Failure::from(Error::Malformed(format!("{}: {e}", meta_file.display()))))?;
    let source: Formula = meta
        .input
        .iter()
        .map(|s| s.parse::<Clause>())
        .collect::<superclause::Result<_>>()?;
    let inst = build_reduction(&source)?;
    let matches_construction = inst.formula() == input.formula && inst.k == meta.k;

    let (fixed, reduction) = if matches_construction {
        let fixed = verify_fixed_superirredundant(&inst, &ctx.limits)?;
        let reduction = verify_reduction(&inst, &ctx.limits, &CancelToken::new())?;
        (Some(fixed), Some(reduction))
    } else {
        ctx.warnings
            .push("instance does not match the construction for its recorded input".into());
        (None, None)
    };
    let fixed_certified = fixed.as_ref().map_or(0, |f| f.certified.len());
    let fixed_failures = fixed.map(|f| f.failures).unwrap_or_default();
    let consistent = matches_construction
        && fixed_failures.is_empty()
        && reduction.as_ref().is_some_and(|r| r.consistent);
    let text = if consistent {
        format!(
            "consistent: {fixed_certified} fixed clauses certified, k {}\n",
            inst.k
        )
    } else {
        let why = reduction
            .as_ref()
            .and_then(|r| r.violation.clone())
            .unwrap_or_else(|| "fixed clauses or construction mismatch".into());
        format!("violation: {why}\n")
    };
    Ok(Done {
        results: VerifyResults {
            n: inst.n,
            m: inst.m,
            k: inst.k,
            matches_construction,
            fixed_certified,
            fixed_failures,
            reduction,
            consistent,
        },
        text,
        code: if consistent {
            EXIT_OK
        } else {
            EXIT_DISAGREEMENT
        },
    })
}
