//! Quregisters: unit vectors of the n-fold tensor product of qubit spaces.
//!
//! Amplitudes are indexed big-endian: the basis string `x1 x2 ... xn` sits at
//! index `2^(n-1) x1 + ... + xn`, so the last qubit of a register is the
//! least-significant bit of the index and the "true" components are exactly
//! the odd indices.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};

/// Tolerance on the squared norm of a quregister.
pub const EPS_NORM: f64 = 1e-9;
/// Tolerance on the max-abs difference between two amplitude vectors.
pub const EPS_VEC: f64 = 1e-9;
/// Tolerance for comparisons between probability values.
pub const EPS_PROB: f64 = 1e-9;

/// Default register capacity.
pub const DEFAULT_N_MAX: usize = 24;
/// No capacity setting may exceed this.
pub const HARD_N_MAX: usize = 28;

/// Upper bound on the number of qubits an operation is allowed to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Capacity(usize);

impl Capacity {
    pub fn new(n_max: usize) -> Result<Self> {
        if n_max == 0 || n_max > HARD_N_MAX {
            return Err(Error::InvalidConfig(format!(
                "qubit capacity must be in 1..={HARD_N_MAX}, got {n_max}"
            )));
        }
        Ok(Capacity(n_max))
    }

    pub fn get(self) -> usize {
        self.0
    }

    pub fn check(self, requested: usize) -> Result<()> {
        if requested > self.0 {
            Err(Error::CapacityExceeded {
                requested,
                limit: self.0,
            })
        } else {
            Ok(())
        }
    }
}

impl Default for Capacity {
    fn default() -> Self {
        Capacity(DEFAULT_N_MAX)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct QRegister {
    n: usize,
    amps: Vec<Complex64>,
}

impl QRegister {
    /// Builds a register from `2^n` amplitudes, checking length and unit norm.
    pub fn from_amplitudes(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::InvalidState(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        let n = len.trailing_zeros() as usize;
        if n > HARD_N_MAX {
            return Err(Error::CapacityExceeded {
                requested: n,
                limit: HARD_N_MAX,
            });
        }
        let reg = QRegister { n, amps };
        let norm = reg.norm_sqr();
        if (norm - 1.0).abs() > EPS_NORM {
            return Err(Error::InvalidState(format!(
                "squared norm is {norm}, expected 1"
            )));
        }
        Ok(reg)
    }

    /// Like [`QRegister::from_amplitudes`] but rescales to unit norm first.
    pub fn normalized(mut amps: Vec<Complex64>) -> Result<Self> {
        let norm = amps.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        for c in &mut amps {
            *c /= norm;
        }
        Self::from_amplitudes(amps)
    }

    pub(crate) fn from_raw(n: usize, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1 << n);
        QRegister { n, amps }
    }

    /// The computational basis vector with index `j` in a register of `n` qubits.
    pub fn basis(n: usize, j: usize) -> Result<Self> {
        if n == 0 || n > HARD_N_MAX {
            return Err(Error::InvalidState(format!("bad qubit count {n}")));
        }
        if j >= 1 << n {
            return Err(Error::InvalidState(format!(
                "basis index {j} out of range for {n} qubits"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1 << n];
        amps[j] = Complex64::new(1.0, 0.0);
        Ok(QRegister { n, amps })
    }

    /// The n-configuration `|x1, ..., xn>`; every entry must be 0 or 1.
    pub fn configuration(bits: &[u8]) -> Result<Self> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::InvalidState("bits must be 0 or 1".into()));
        }
        let j = bits.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        Self::basis(bits.len(), j)
    }

    pub fn zero() -> Self {
        QRegister {
            n: 1,
            amps: vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
        }
    }

    pub fn one() -> Self {
        QRegister {
            n: 1,
            amps: vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        }
    }

    /// The single qubit `c0|0> + c1|1>`.
    pub fn qubit(c0: Complex64, c1: Complex64) -> Result<Self> {
        Self::from_amplitudes(vec![c0, c1])
    }

    /// Draws a state uniformly from the unit sphere of `2^n` complex dimensions.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        if n == 0 || n > HARD_N_MAX {
            return Err(Error::InvalidState(format!("bad qubit count {n}")));
        }
        let amps = (0..1usize << n)
            .map(|_| Complex64::new(rng.sample(StandardNormal), rng.sample(StandardNormal)))
            .collect();
        Self::normalized(amps)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    pub(crate) fn amps_mut(&mut self) -> &mut [Complex64] {
        &mut self.amps
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|c| c.norm_sqr()).sum()
    }

    /// Kronecker product `self ⊗ other` under the default capacity.
    pub fn tensor(&self, other: &QRegister) -> Result<QRegister> {
        self.tensor_within(other, Capacity::default())
    }

    pub fn tensor_within(&self, other: &QRegister, cap: Capacity) -> Result<QRegister> {
        let n = self.n + other.n;
        cap.check(n)?;
        let mut amps = Vec::with_capacity(1 << n);
        for a in &self.amps {
            amps.extend(other.amps.iter().map(|b| a * b));
        }
        Ok(QRegister { n, amps })
    }

    /// Tensor product of a non-empty sequence of registers, left to right.
    pub fn tensor_all<'a, I>(parts: I, cap: Capacity) -> Result<QRegister>
    where
        I: IntoIterator<Item = &'a QRegister>,
    {
        let mut iter = parts.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::InvalidState("empty tensor product".into()))?;
        iter.try_fold(first.clone(), |acc, r| acc.tensor_within(r, cap))
    }

    /// Probability value: total weight on basis states whose last bit is 1.
    pub fn prob(&self) -> f64 {
        let p: f64 = self.amps.iter().skip(1).step_by(2).map(|c| c.norm_sqr()).sum();
        p.clamp(0.0, 1.0)
    }

    /// Max-abs amplitude difference; infinite when the dimensions differ.
    pub fn max_abs_diff(&self, other: &QRegister) -> f64 {
        if self.n != other.n {
            return f64::INFINITY;
        }
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn approx_eq(&self, other: &QRegister, eps: f64) -> bool {
        self.max_abs_diff(other) <= eps
    }
}
