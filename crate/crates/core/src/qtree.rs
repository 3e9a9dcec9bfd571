//! Quantum trees: the layer operators `(U_1, ..., U_{Height-1})` induced by a
//! syntactical tree, and their execution on quregisters.
//!
//! Layers are stored with `U_1` first. Execution runs right to left: the input
//! register (the tensor product of the atomic qubits) lives at the last level,
//! `U_{Height-1}` is applied first and `U_1` produces the sentence's register.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{apply_block, GateTag};
use crate::lang::Sentence;
use crate::register::{Capacity, QRegister};
use crate::semantics::QubModel;
use crate::syntree::SyntacticTree;

/// `U_i = Op_i^1 ⊗ ... ⊗ Op_i^k`, one gate per node of level `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layer {
    ops: Vec<GateTag>,
}

impl Layer {
    pub fn new(ops: Vec<GateTag>) -> Result<Self> {
        if ops.is_empty() {
            return Err(Error::InvalidCircuit("empty layer".into()));
        }
        for op in &ops {
            op.validate()?;
        }
        Ok(Layer { ops })
    }

    pub fn ops(&self) -> &[GateTag] {
        &self.ops
    }

    pub fn arity(&self) -> usize {
        self.ops.iter().map(|g| g.arity()).sum()
    }

    /// Applies every gate to its own block of consecutive qubits.
    pub fn apply(&self, psi: &QRegister) -> Result<QRegister> {
        if self.arity() != psi.n() {
            return Err(Error::ArityMismatch {
                expected: self.arity(),
                found: psi.n(),
            });
        }
        let mut out = psi.clone();
        self.apply_in_place(&mut out);
        Ok(out)
    }

    fn apply_in_place(&self, psi: &mut QRegister) {
        let n = psi.n();
        let mut offset = 0;
        for &op in &self.ops {
            apply_block(psi.amps_mut(), n, offset, op);
            offset += op.arity();
        }
    }
}

impl fmt::Display for Layer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, op) in self.ops.iter().enumerate() {
            if k > 0 {
                f.write_str(" ⊗ ")?;
            }
            write!(f, "{op}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "CircuitJson", try_from = "CircuitJson")]
pub struct QuantumTree {
    n: usize,
    layers: Vec<Layer>,
}

impl QuantumTree {
    pub fn new(n: usize, layers: Vec<Layer>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidCircuit("a circuit needs at least one qubit".into()));
        }
        for (i, layer) in layers.iter().enumerate() {
            if layer.arity() != n {
                return Err(Error::InvalidCircuit(format!(
                    "layer U{} acts on {} qubits, circuit has {n}",
                    i + 1,
                    layer.arity()
                )));
            }
        }
        Ok(QuantumTree { n, layers })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Layers in listing order, `U_1` first.
    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }

    /// `U_i`, 1-based.
    pub fn layer(&self, i: usize) -> Option<&Layer> {
        i.checked_sub(1).and_then(|k| self.layers.get(k))
    }

    fn check_input(&self, input: &QRegister) -> Result<()> {
        if input.n() != self.n {
            Err(Error::ArityMismatch {
                expected: self.n,
                found: input.n(),
            })
        } else {
            Ok(())
        }
    }

    /// Applies `U_{Height-1}`, ..., `U_1` to the input.
    pub fn run(&self, input: &QRegister) -> Result<QRegister> {
        self.check_input(input)?;
        let mut psi = input.clone();
        for layer in self.layers.iter().rev() {
            layer.apply_in_place(&mut psi);
        }
        Ok(psi)
    }

    /// Every intermediate register, input first:
    /// `(psi_Height, ..., psi_1)`.
    pub fn run_with_trace(&self, input: &QRegister) -> Result<Vec<QRegister>> {
        self.check_input(input)?;
        let mut trace = Vec::with_capacity(self.layers.len() + 1);
        trace.push(input.clone());
        for layer in self.layers.iter().rev() {
            let mut next = trace.last().expect("non-empty").clone();
            layer.apply_in_place(&mut next);
            trace.push(next);
        }
        Ok(trace)
    }
}

impl fmt::Display for QuantumTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n = {}", self.n)?;
        if self.layers.is_empty() {
            return writeln!(f, "(no layers)");
        }
        for (i, layer) in self.layers.iter().enumerate() {
            writeln!(f, "U{}: {layer}", i + 1)?;
        }
        Ok(())
    }
}

fn operator_for(node: &Sentence) -> GateTag {
    match node {
        Sentence::Atom(_) | Sentence::Falsity => GateTag::Identity1,
        Sentence::Neg(b) => GateTag::Not(b.atomic_complexity()),
        Sentence::SqrtNeg(b) => GateTag::SqrtNot(b.atomic_complexity()),
        Sentence::Conj(b, c) => GateTag::Toffoli(b.atomic_complexity(), c.atomic_complexity()),
    }
}

/// Builds the quantum tree from the syntactical tree alone; no model is
/// involved.
pub fn compile(t: &SyntacticTree) -> QuantumTree {
    let layers = t.levels()[..t.height() - 1]
        .iter()
        .map(|level| Layer {
            ops: level.iter().map(operator_for).collect(),
        })
        .collect();
    QuantumTree {
        n: t.width(),
        layers,
    }
}

/// The input register: model qubits of the last level's occurrences, with
/// `f` bound to `|0>`.
pub fn input_state(t: &SyntacticTree, m: &QubModel) -> Result<QRegister> {
    input_state_within(t, m, Capacity::default())
}

pub fn input_state_within(t: &SyntacticTree, m: &QubModel, cap: Capacity) -> Result<QRegister> {
    cap.check(t.width())?;
    let qubits = t
        .leaves()
        .iter()
        .map(|leaf| m.qub_atomic(leaf))
        .collect::<Result<Vec<_>>>()?;
    QRegister::tensor_all(&qubits, cap)
}

// ---------------------------------------------------------------------------
// JSON form: {"n": 3, "layers": [[{"gate": "T", "r": 1, "s": 1}], ...]}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GateJson {
    gate: String,
    r: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    s: Option<usize>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CircuitJson {
    n: usize,
    layers: Vec<Vec<GateJson>>,
}

impl From<GateTag> for GateJson {
    fn from(tag: GateTag) -> Self {
        let (gate, r, s) = match tag {
            GateTag::Identity1 => ("I", 1, None),
            GateTag::Not(r) => ("NOT", r, None),
            GateTag::SqrtNot(r) => ("SNOT", r, None),
            GateTag::Toffoli(r, s) => ("T", r, Some(s)),
        };
        GateJson {
            gate: gate.to_string(),
            r,
            s,
        }
    }
}

impl TryFrom<GateJson> for GateTag {
    type Error = Error;

    fn try_from(g: GateJson) -> Result<Self> {
        let tag = match (g.gate.as_str(), g.r, g.s) {
            ("I", 1, None) => GateTag::Identity1,
            ("NOT", r, None) => GateTag::Not(r),
            ("SNOT", r, None) => GateTag::SqrtNot(r),
            ("T", r, Some(s)) => GateTag::Toffoli(r, s),
            _ => {
                return Err(Error::InvalidCircuit(format!(
                    "malformed gate {:?} (r={}, s={:?})",
                    g.gate, g.r, g.s
                )))
            }
        };
        tag.validate()?;
        Ok(tag)
    }
}

impl From<QuantumTree> for CircuitJson {
    fn from(qt: QuantumTree) -> Self {
        CircuitJson {
            n: qt.n,
            layers: qt
                .layers
                .into_iter()
                .map(|l| l.ops.into_iter().map(GateJson::from).collect())
                .collect(),
        }
    }
}

impl TryFrom<CircuitJson> for QuantumTree {
    type Error = Error;

    fn try_from(c: CircuitJson) -> Result<Self> {
        let layers = c
            .layers
            .into_iter()
            .map(|ops| {
                let ops = ops
                    .into_iter()
                    .map(GateTag::try_from)
                    .collect::<Result<Vec<_>>>()?;
                Layer::new(ops)
            })
            .collect::<Result<Vec<_>>>()?;
        QuantumTree::new(c.n, layers)
    }
}
