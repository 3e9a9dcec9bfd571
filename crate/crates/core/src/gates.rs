//! The three gate families (negation, square root of negation, Petri-Toffoli)
//! plus the identity, applied structurally by index arithmetic.
//!
//! Every gate acts on a contiguous block of qubits and targets the block's last
//! qubit. Positions are counted from the left, 0-based; position `p` of an
//! `n`-qubit register is bit `n - 1 - p` of the amplitude index.

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::register::{Capacity, QRegister};

/// (1 + i) / 2
pub(crate) const HALF_ONE_PLUS_I: Complex64 = Complex64::new(0.5, 0.5);
/// (1 - i) / 2
pub(crate) const HALF_ONE_MINUS_I: Complex64 = Complex64::new(0.5, -0.5);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GateTag {
    /// Identity on a single qubit.
    Identity1,
    /// Negation of the last of `r` qubits.
    Not(usize),
    /// Square root of negation on the last of `r` qubits.
    SqrtNot(usize),
    /// Petri-Toffoli gate on `r + s + 1` qubits: the last qubit is XORed with
    /// the conjunction of the last qubit of the `r` block and the last qubit of
    /// the `s` block.
    Toffoli(usize, usize),
}

impl GateTag {
    pub fn arity(self) -> usize {
        match self {
            GateTag::Identity1 => 1,
            GateTag::Not(r) | GateTag::SqrtNot(r) => r,
            GateTag::Toffoli(r, s) => r + s + 1,
        }
    }

    pub fn validate(self) -> Result<()> {
        let ok = match self {
            GateTag::Identity1 => true,
            GateTag::Not(r) | GateTag::SqrtNot(r) => r >= 1,
            GateTag::Toffoli(r, s) => r >= 1 && s >= 1,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidCircuit(format!("gate {self} has a zero block size")))
        }
    }
}

impl fmt::Display for GateTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GateTag::Identity1 => write!(f, "I"),
            GateTag::Not(r) => write!(f, "NOT({r})"),
            GateTag::SqrtNot(r) => write!(f, "SNOT({r})"),
            GateTag::Toffoli(r, s) => write!(f, "T({r},{s})"),
        }
    }
}

fn bit(n: usize, pos: usize) -> usize {
    1 << (n - 1 - pos)
}

fn flip(amps: &mut [Complex64], target: usize) {
    let len = amps.len();
    for base in (0..len).step_by(2 * target) {
        for k in base..base + target {
            amps.swap(k, k + target);
        }
    }
}

fn sqrt_flip(amps: &mut [Complex64], target: usize) {
    let len = amps.len();
    for base in (0..len).step_by(2 * target) {
        for k in base..base + target {
            let c0 = amps[k];
            let c1 = amps[k + target];
            amps[k] = HALF_ONE_PLUS_I * c0 + HALF_ONE_MINUS_I * c1;
            amps[k + target] = HALF_ONE_MINUS_I * c0 + HALF_ONE_PLUS_I * c1;
        }
    }
}

fn controlled_flip(amps: &mut [Complex64], c1: usize, c2: usize, target: usize) {
    let controls = c1 | c2;
    for k in 0..amps.len() {
        if k & controls == controls && k & target == 0 {
            amps.swap(k, k | target);
        }
    }
}

/// Applies `tag` in place to the block starting at left position `offset`.
///
/// Takes exclusive access to the amplitude buffer; callers hand in a fresh copy.
pub(crate) fn apply_block(amps: &mut [Complex64], n: usize, offset: usize, tag: GateTag) {
    debug_assert!(offset + tag.arity() <= n);
    let last = offset + tag.arity() - 1;
    match tag {
        GateTag::Identity1 => {}
        GateTag::Not(_) => flip(amps, bit(n, last)),
        GateTag::SqrtNot(_) => sqrt_flip(amps, bit(n, last)),
        GateTag::Toffoli(r, s) => controlled_flip(
            amps,
            bit(n, offset + r - 1),
            bit(n, offset + r + s - 1),
            bit(n, last),
        ),
    }
}

/// Applies a gate whose arity must match the register size.
pub fn apply_gate(psi: &QRegister, tag: GateTag) -> Result<QRegister> {
    tag.validate()?;
    if tag.arity() != psi.n() {
        return Err(Error::ArityMismatch {
            expected: tag.arity(),
            found: psi.n(),
        });
    }
    let mut out = psi.clone();
    let n = out.n();
    apply_block(out.amps_mut(), n, 0, tag);
    Ok(out)
}

pub fn apply_not(psi: &QRegister) -> QRegister {
    let mut out = psi.clone();
    flip(out.amps_mut(), 1);
    out
}

pub fn apply_sqrt_not(psi: &QRegister) -> QRegister {
    let mut out = psi.clone();
    sqrt_flip(out.amps_mut(), 1);
    out
}

pub fn apply_toffoli(psi: &QRegister, r: usize, s: usize) -> Result<QRegister> {
    apply_gate(psi, GateTag::Toffoli(r, s))
}

/// `T(psi ⊗ phi ⊗ |0>)`, the conjunction with a fresh ancilla.
pub fn and_op(psi: &QRegister, phi: &QRegister) -> Result<QRegister> {
    and_op_within(psi, phi, Capacity::default())
}

pub fn and_op_within(psi: &QRegister, phi: &QRegister, cap: Capacity) -> Result<QRegister> {
    cap.check(psi.n() + phi.n() + 1)?;
    let joined = psi
        .tensor_within(phi, cap)?
        .tensor_within(&QRegister::zero(), cap)?;
    apply_toffoli(&joined, psi.n(), phi.n())
}

/// `NOT(AND(NOT psi, NOT phi))`.
pub fn or_op(psi: &QRegister, phi: &QRegister) -> Result<QRegister> {
    or_op_within(psi, phi, Capacity::default())
}

pub fn or_op_within(psi: &QRegister, phi: &QRegister, cap: Capacity) -> Result<QRegister> {
    let conj = and_op_within(&apply_not(psi), &apply_not(phi), cap)?;
    Ok(apply_not(&conj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::register::EPS_VEC;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn cfg(bits: &[u8]) -> QRegister {
        QRegister::configuration(bits).unwrap()
    }

    fn plus() -> QRegister {
        QRegister::qubit(c(FRAC_1_SQRT_2, 0.0), c(FRAC_1_SQRT_2, 0.0)).unwrap()
    }

    #[test]
    fn not_flips_last_bit() {
        assert_eq!(apply_not(&QRegister::zero()), QRegister::one());
        assert_eq!(apply_not(&cfg(&[1, 0])), cfg(&[1, 1]));

        let h = FRAC_1_SQRT_2;
        let bell = QRegister::from_amplitudes(vec![c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)])
            .unwrap();
        let flipped = apply_not(&bell);
        let want = [c(0.0, 0.0), c(h, 0.0), c(h, 0.0), c(0.0, 0.0)];
        assert_eq!(flipped.amplitudes(), &want);
    }

    #[test]
    fn sqrt_not_on_basis() {
        let out = apply_sqrt_not(&QRegister::zero());
        assert_eq!(out.amplitudes(), &[c(0.5, 0.5), c(0.5, -0.5)]);

        let back = apply_sqrt_not(&out);
        assert!(back.approx_eq(&QRegister::one(), 1e-15));
    }

    #[test]
    fn sqrt_not_squared_is_not() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=6 {
            let psi = QRegister::random(n, &mut rng).unwrap();
            let twice = apply_sqrt_not(&apply_sqrt_not(&psi));
            assert!(twice.approx_eq(&apply_not(&psi), EPS_VEC));
        }
    }

    #[test]
    fn toffoli_truth_table() {
        assert_eq!(apply_toffoli(&cfg(&[1, 1, 0]), 1, 1).unwrap(), cfg(&[1, 1, 1]));
        assert_eq!(apply_toffoli(&cfg(&[1, 0, 1]), 1, 1).unwrap(), cfg(&[1, 0, 1]));
        assert_eq!(apply_toffoli(&cfg(&[1, 1, 1]), 1, 1).unwrap(), cfg(&[1, 1, 0]));
        // controls are the last bits of each block, not the first
        assert_eq!(
            apply_toffoli(&cfg(&[0, 1, 1, 0, 0]), 2, 2).unwrap(),
            cfg(&[0, 1, 1, 0, 0])
        );
        assert_eq!(
            apply_toffoli(&cfg(&[0, 1, 0, 1, 0]), 2, 2).unwrap(),
            cfg(&[0, 1, 0, 1, 1])
        );
    }

    #[test]
    fn toffoli_on_superposition() {
        let input = plus().tensor(&QRegister::one()).unwrap().tensor(&QRegister::zero()).unwrap();
        let out = apply_toffoli(&input, 1, 1).unwrap();
        let mut want = vec![c(0.0, 0.0); 8];
        want[0b010] = c(FRAC_1_SQRT_2, 0.0);
        want[0b111] = c(FRAC_1_SQRT_2, 0.0);
        assert_eq!(out.amplitudes(), want.as_slice());
    }

    #[test]
    fn toffoli_arity_mismatch() {
        let err = apply_toffoli(&cfg(&[1, 1]), 1, 1).unwrap_err();
        assert_eq!(err, Error::ArityMismatch { expected: 3, found: 2 });
        assert!(apply_gate(&QRegister::one(), GateTag::Not(0)).is_err());
    }

    #[test]
    fn and_or_on_classical_bits() {
        let one = QRegister::one();
        let zero = QRegister::zero();
        let a = and_op(&one, &one).unwrap();
        assert_eq!(a, cfg(&[1, 1, 1]));
        assert_eq!(a.prob(), 1.0);
        let a = and_op(&one, &zero).unwrap();
        assert_eq!(a, cfg(&[1, 0, 0]));
        assert_eq!(a.prob(), 0.0);

        assert_eq!(or_op(&zero, &zero).unwrap().prob(), 0.0);
        assert_eq!(or_op(&one, &zero).unwrap().prob(), 1.0);
        assert_eq!(or_op(&zero, &one).unwrap().prob(), 1.0);
        assert_eq!(or_op(&one, &one).unwrap().prob(), 1.0);
    }

    #[test]
    fn and_of_two_plus_states() {
        let p = and_op(&plus(), &plus()).unwrap().prob();
        assert!((p - 0.25).abs() < 1e-12);
    }

    #[test]
    fn and_respects_capacity() {
        let cap = Capacity::new(4).unwrap();
        let two = cfg(&[0, 0]);
        assert!(matches!(
            and_op_within(&two, &two, cap),
            Err(Error::CapacityExceeded { requested: 5, limit: 4 })
        ));
        assert!(and_op_within(&two, &QRegister::one(), cap).is_ok());
    }

    #[test]
    fn display_tags() {
        assert_eq!(GateTag::Toffoli(1, 3).to_string(), "T(1,3)");
        assert_eq!(GateTag::Identity1.to_string(), "I");
        assert_eq!(GateTag::SqrtNot(2).to_string(), "SNOT(2)");
    }
}
