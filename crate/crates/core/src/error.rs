use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("tautological clause `{clause}`{}", line.map(|l| format!(" at line {l}")).unwrap_or_default())]
    Tautology { clause: String, line: Option<usize> },

    #[error("invalid variable name `{0}`")]
    InvalidName(String),

    #[error("entailment over {count} variables exceeds the cap of {cap}")]
    VariableCap { count: usize, cap: usize },

    #[error("formula mentions {count} variables; the bit engine handles at most 128")]
    BitWidth { count: usize },

    #[error("resolution closure truncated at the budget of {budget} clauses")]
    TruncatedClosure { budget: usize },

    #[error("closure has {clauses} clauses, above the oracle cap of {cap}")]
    OracleCap { clauses: usize, cap: usize },

    #[error("clause `{0}` is not in the formula")]
    ClauseNotInFormula(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("formula is neither Horn nor Krom")]
    NotHornOrKrom,

    #[error("no viable partition for clause `{clause}`")]
    NoViablePartition { clause: String },

    #[error("iteration cap of {cap} exceeded")]
    IterationCap { cap: usize },

    #[error("assignment does not cover variable `{0}`")]
    PartialAssignment(String),

    #[error("malformed input: {0}")]
    Malformed(String),

    #[error("cross-check disagreement: {0}")]
    Disagreement(String),

    #[error("operation cancelled")]
    Cancelled,
}
