//! Qubit semantics for quantum computational logic.
//!
//! Sentences built from atoms, `f`, `¬`, `√¬` and the ternary conjunction are
//! interpreted as quregisters. The crate parses sentences ([`lang`]), builds
//! their syntactical trees ([`syntree`]), compiles those into layered circuits
//! ([`qtree`]), simulates quregisters ([`register`], [`gates`]) and checks
//! semantic properties such as truth and consequence ([`semantics`]).

pub mod error;
pub mod gates;
pub mod lang;
pub mod oracle;
pub mod qtree;
pub mod random;
pub mod register;
pub mod semantics;
pub mod syntree;

pub use error::{Error, Result};
pub use gates::{and_op, apply_gate, apply_not, apply_sqrt_not, apply_toffoli, or_op, GateTag};
pub use lang::{parse, Leaf, Sentence};
pub use qtree::{compile, input_state, Layer, QuantumTree};
pub use register::{Capacity, QRegister, EPS_NORM, EPS_PROB, EPS_VEC};
pub use semantics::{
    check_no_boolean_sqrt_not, consequence_in_model, eval, is_true, sample_model,
    search_countermodel, Countermodel, ModelSampler, QubModel,
};
pub use syntree::{build_tree, SyntacticTree};
