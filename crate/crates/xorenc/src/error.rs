use thiserror::Error;

/// Errors produced by the library's operations.
#[derive(Debug, Error)]
pub enum Error {
    #[error("arity {n} out of range (expected 1..={max})")]
    ArityOutOfRange { n: usize, max: usize },

    #[error("arity mismatch: expected {expected}, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("assignment index {index} out of range for {n} variables")]
    IndexOutOfRange { index: u64, n: usize },

    #[error("variable {var} out of range (formula has {limit} variables)")]
    VarOutOfRange { var: u32, limit: usize },

    #[error("clause contains complementary literals on variable {var}")]
    ComplementaryPair { var: u32 },

    #[error("invalid block partition: {reason}")]
    InvalidPartition { reason: String },

    #[error("variable {var} is not a non-deterministic variable of this encoding")]
    NotNondeterministic { var: u32 },

    #[error("variable {var} is not a deterministic variable of this encoding")]
    NotDeterministic { var: u32 },

    #[error("malformed circuit: {reason}")]
    MalformedCircuit { reason: String },

    #[error("gate {gate} constraint arity {arity} exceeds cap {max}")]
    GateArityTooLarge { gate: usize, arity: usize, max: usize },

    #[error("malformed depth-3 structure: {reason}")]
    MalformedSigma3 { reason: String },

    #[error("expansion would materialize 2^{s} branches; cap is s <= {max}")]
    ExpansionTooLarge { s: usize, max: usize },

    #[error("no critical clause for variable {var}: assignment is not isolated in that direction")]
    NoCriticalClause { var: u32 },

    #[error("assignment is not accepted by the encoded function")]
    NotAccepted,

    #[error("clause of width {width} exceeds the declared bound k={k}")]
    WidthExceedsBound { width: usize, k: usize },

    #[error("function is not fully sensitive, analysis precondition violated")]
    NotFullySensitive,

    #[error("formula does not encode the given function, analysis precondition violated")]
    DoesNotEncode,

    #[error("log-domain comparison inconclusive: |{lhs} - {rhs}| falls inside the 2^-40 guard band")]
    GuardBand { lhs: f64, rhs: f64 },

    #[error("invalid search configuration: {reason}")]
    InvalidSearch { reason: String },

    #[error("search inconclusive: {reason}")]
    Inconclusive { reason: String },

    #[error("found candidate failed independent re-verification; this is a bug")]
    VerificationMismatch,

    #[error("no SAT solver configured: pass --solver or set XORENC_SAT_SOLVER")]
    SolverNotConfigured,

    #[error(transparent)]
    Parse(#[from] ParseError),

    #[error(transparent)]
    Solver(#[from] SolverError),
}

/// Text-format parse failure, tagged with the 1-based input line.
#[derive(Debug, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error)]
pub enum ParseErrorKind {
    #[error("malformed header: {0}")]
    Header(String),

    #[error("declared {declared} {what}, found {found}")]
    CountMismatch {
        what: &'static str,
        declared: usize,
        found: usize,
    },

    #[error("literal {lit} out of range for {max_var} variables")]
    LiteralOutOfRange { lit: i64, max_var: usize },

    #[error("clause contains complementary literals on variable {var}")]
    ComplementaryPair { var: u32 },

    #[error("unexpected token {0:?}")]
    Token(String),

    #[error("unexpected end of input: {0}")]
    Eof(String),

    #[error("malformed annotation: {0}")]
    Annotation(String),
}

/// External solver integration failure.
#[derive(Debug, Error)]
pub enum SolverError {
    #[error("failed to launch solver {path:?}: {source}")]
    Launch {
        path: String,
        source: std::io::Error,
    },

    #[error("could not write solver input: {0}")]
    Input(std::io::Error),

    #[error("solver produced no s-line verdict")]
    NoVerdict,

    #[error("unparseable solver output: {0}")]
    Output(String),

    #[error("solver reported SAT but returned no complete model")]
    IncompleteModel,

    #[error("solver model does not satisfy the formula")]
    ModelMismatch,

    #[error("solver verdict {verdict} disagrees with internal brute force")]
    Disagreement { verdict: &'static str },
}
