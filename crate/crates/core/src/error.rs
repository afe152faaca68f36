use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("monomials belong to different variable contexts")]
    ContextMismatch,

    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),

    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),

    #[error("a variable context needs at least one variable")]
    EmptyContext,

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("exponent {0} exceeds the supported maximum 2147483647")]
    ExponentTooLarge(u64),

    #[error("expected {expected} exponents, got {got}")]
    ExponentLength { expected: usize, got: usize },

    #[error("the monomial 1 cannot be a generator (the ideal would be the unit ideal)")]
    UnitGenerator,

    #[error("generators are not minimal: {0}")]
    NotMinimal(String),

    #[error("ideal has {n} generators, above the cap of {cap}")]
    TooManyGenerators { n: usize, cap: usize },

    #[error("cell {0:#b} is not a cell of the complex")]
    InvalidCell(u32),

    #[error("{target} is not a facet of {cell}")]
    NotAFacet { cell: String, target: String },

    #[error("homological degree {degree} out of range 1..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },

    #[error("cell family is not closed under removing the smallest bridge of {0}")]
    FamilyNotClosed(String),

    #[error("v_L is -infinity for {0}; m_L is undefined")]
    LyubeznikUndefined(String),

    #[error("invalid matching: {0}")]
    InvalidMatching(String),

    #[error("matching is not acyclic (gradient path revisits {0})")]
    NotAcyclic(String),

    #[error("invalid order: {0}")]
    InvalidOrder(String),

    #[error("integer overflow while accumulating differential coefficients")]
    Overflow,

    #[error("search over {n}! orders exceeds the guard n <= {guard}; pass --force to run anyway")]
    SearchGuard { n: usize, guard: usize },

    #[error("invalid graph: {0}")]
    InvalidGraph(String),

    #[error("{0}")]
    Invalid(String),
}
