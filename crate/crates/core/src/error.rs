use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Basis triple (1-based) for which `(e_i e_j) e_k != e_i (e_j e_k)`.
    #[error("structure constants are not associative at basis triple ({i}, {j}, {k})")]
    NonAssociative { i: usize, j: usize, k: usize },

    #[error("declared unity does not act as identity on basis element {index}")]
    BadUnity { index: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("bad parameter: {0}")]
    BadParameter(String),

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("beta must be nonzero")]
    ZeroBeta,

    #[error("beta {beta} is not a unit modulo {modulus}")]
    NonUnitBeta { beta: String, modulus: u64 },

    #[error("{what}: {needed} exceeds budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },

    #[error("saturation did not stabilize after {rounds} rounds (last rank delta {last_delta}); this is an internal error")]
    SaturationBudget { rounds: usize, last_delta: isize },

    #[error("operation needs finite scalars but the ring is over Z")]
    InfiniteScalar,

    #[error("subgroup is not a free Z/{modulus}-module, so it cannot carry structure constants")]
    NotFree { modulus: u64 },

    #[error("element is not in the subgroup")]
    NotMember,

    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("cannot parse element `{input}`: {message}")]
    ElementSyntax { input: String, message: String },

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("unknown builtin ring `{0}`")]
    UnknownBuiltin(String),
}
