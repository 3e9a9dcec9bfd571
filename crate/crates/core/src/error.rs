use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("`{0}` is reserved and cannot be used as an atom name")]
    ReservedName(String),

    #[error("register of {requested} qubits exceeds the capacity of {limit}")]
    CapacityExceeded { requested: usize, limit: usize },

    #[error("arity mismatch: expected {expected} qubits, found {found}")]
    ArityMismatch { expected: usize, found: usize },

    #[error("invalid quregister: {0}")]
    InvalidState(String),

    #[error("atom `{0}` is not bound in the model")]
    UnboundAtom(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("model sampler gave up after {attempts} rejected draws")]
    SamplerStuck { attempts: u64 },

    #[error("invalid sentence tree: {0}")]
    InvalidAst(String),

    #[error("invalid circuit: {0}")]
    InvalidCircuit(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
