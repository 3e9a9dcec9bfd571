//! Dense-matrix reference implementation of the gates.
//!
//! Matrices are assembled column by column from the action of each gate on the
//! computational basis and multiplied against the full state vector. This is
//! O(4^n) and only meant for cross-checking the structured kernels in
//! [`crate::gates`] on small registers.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::gates::{GateTag, HALF_ONE_MINUS_I, HALF_ONE_PLUS_I};
use crate::register::QRegister;

/// Largest register the oracle will build a matrix for.
pub const ORACLE_N_MAX: usize = 10;

pub type DenseMatrix = DMatrix<Complex64>;

fn check_size(n: usize) -> Result<()> {
    if n > ORACLE_N_MAX {
        Err(Error::CapacityExceeded {
            requested: n,
            limit: ORACLE_N_MAX,
        })
    } else {
        Ok(())
    }
}

/// The `2^k x 2^k` matrix of a gate of arity `k`.
pub fn gate_matrix(tag: GateTag) -> Result<DenseMatrix> {
    tag.validate()?;
    let k = tag.arity();
    check_size(k)?;
    let dim = 1usize << k;
    let one = Complex64::new(1.0, 0.0);
    let mut m = DenseMatrix::zeros(dim, dim);
    for col in 0..dim {
        match tag {
            GateTag::Identity1 => m[(col, col)] = one,
            GateTag::Not(_) => m[(col ^ 1, col)] = one,
            GateTag::SqrtNot(_) => {
                m[(col, col)] = HALF_ONE_PLUS_I;
                m[(col ^ 1, col)] = HALF_ONE_MINUS_I;
            }
            GateTag::Toffoli(_, s) => {
                // split |x>|y>|z> and read the last bit of x and of y
                let z = col & 1;
                let y = (col >> 1) & ((1 << s) - 1);
                let x = col >> (s + 1);
                let out = (col & !1) | ((x & 1 & y) ^ z);
                m[(out, col)] = one;
            }
        }
    }
    Ok(m)
}

/// Kronecker product of the gate matrices, first gate as the leftmost factor.
pub fn layer_matrix(tags: &[GateTag]) -> Result<DenseMatrix> {
    check_size(tags.iter().map(|t| t.arity()).sum())?;
    let mut acc = DenseMatrix::identity(1, 1);
    for &tag in tags {
        acc = acc.kronecker(&gate_matrix(tag)?);
    }
    Ok(acc)
}

pub fn apply_matrix(m: &DenseMatrix, psi: &QRegister) -> Result<QRegister> {
    let dim = psi.amplitudes().len();
    if m.ncols() != dim || m.nrows() != dim {
        return Err(Error::ArityMismatch {
            expected: m.ncols().trailing_zeros() as usize,
            found: psi.n(),
        });
    }
    let v = DVector::from_column_slice(psi.amplitudes());
    let out = m * v;
    Ok(QRegister::from_raw(psi.n(), out.as_slice().to_vec()))
}

pub fn dense_oracle_apply(psi: &QRegister, tag: GateTag) -> Result<QRegister> {
    check_size(psi.n())?;
    if tag.arity() != psi.n() {
        return Err(Error::ArityMismatch {
            expected: tag.arity(),
            found: psi.n(),
        });
    }
    apply_matrix(&gate_matrix(tag)?, psi)
}

/// Max-abs deviation of `M^† M` from the identity.
pub fn unitarity_defect(m: &DenseMatrix) -> f64 {
    let prod = m.adjoint() * m;
    let id = DenseMatrix::identity(m.nrows(), m.ncols());
    (prod - id).iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Every gate tag acting on at most `max_arity` qubits.
pub fn all_tags(max_arity: usize) -> Vec<GateTag> {
    let mut tags = Vec::new();
    if max_arity >= 1 {
        tags.push(GateTag::Identity1);
    }
    for r in 1..=max_arity {
        tags.push(GateTag::Not(r));
        tags.push(GateTag::SqrtNot(r));
    }
    for r in 1..max_arity {
        for s in 1..max_arity - r {
            tags.push(GateTag::Toffoli(r, s));
        }
    }
    tags
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::apply_gate;
    use crate::register::EPS_VEC;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn not_on_zero() {
        let out = dense_oracle_apply(&QRegister::zero(), GateTag::Not(1)).unwrap();
        assert_eq!(out, QRegister::one());
    }

    #[test]
    fn sqrt_not_matrix_squares_to_not() {
        for r in 1..=3 {
            let s = gate_matrix(GateTag::SqrtNot(r)).unwrap();
            let n = gate_matrix(GateTag::Not(r)).unwrap();
            let diff = (&s * &s - n).iter().map(|c| c.norm()).fold(0.0, f64::max);
            assert!(diff < 1e-15);
        }
    }

    #[test]
    fn toffoli_matrix_swaps_six_and_seven() {
        let m = gate_matrix(GateTag::Toffoli(1, 1)).unwrap();
        for col in 0..8 {
            let row = match col {
                6 => 7,
                7 => 6,
                c => c,
            };
            for r in 0..8 {
                let want = if r == row { 1.0 } else { 0.0 };
                assert_eq!(m[(r, col)], Complex64::new(want, 0.0));
            }
        }
    }

    #[test]
    fn all_tags_counts() {
        // I, 3 NOTs, 3 SNOTs, T(1,1)
        assert_eq!(all_tags(3).len(), 8);
        assert!(all_tags(8).iter().all(|t| t.arity() <= 8));
        assert!(all_tags(8).contains(&GateTag::Toffoli(1, 6)));
        assert!(all_tags(8).contains(&GateTag::Toffoli(6, 1)));
    }

    #[test]
    fn matrices_are_unitary() {
        for tag in all_tags(6) {
            let m = gate_matrix(tag).unwrap();
            assert!(unitarity_defect(&m) < EPS_VEC, "{tag}");
        }
    }

    #[test]
    fn structured_matches_dense_small() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for tag in all_tags(6) {
            let psi = QRegister::random(tag.arity(), &mut rng).unwrap();
            let fast = apply_gate(&psi, tag).unwrap();
            let slow = dense_oracle_apply(&psi, tag).unwrap();
            assert!(fast.approx_eq(&slow, EPS_VEC), "{tag}");
        }
    }

    #[test]
    fn refuses_large_registers() {
        assert!(gate_matrix(GateTag::Not(11)).is_err());
        assert!(layer_matrix(&[GateTag::Not(6), GateTag::Not(6)]).is_err());
    }
}
