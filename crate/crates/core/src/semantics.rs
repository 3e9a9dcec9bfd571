//! Quantum computational models and the semantic notions built on them.
//!
//! A model assigns a qubit to every atom; the falsity constant is always `|0>`.
//! Sentences are interpreted compositionally: `¬` is NOT, `√¬` is √NOT and
//! `⋀(β, γ, f)` is the Petri-Toffoli gate on `Qub(β) ⊗ Qub(γ) ⊗ |0>`.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gates::{and_op_within, apply_not, apply_sqrt_not};
use crate::lang::{validate_atom_name, Sentence};
use crate::register::{Capacity, QRegister, EPS_NORM, EPS_PROB};

/// Rejection draws allowed per atom before the sampler gives up.
pub const SAMPLER_MAX_ATTEMPTS: u64 = 1_000_000;

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(into = "ModelJson", try_from = "ModelJson")]
pub struct QubModel {
    atoms: BTreeMap<String, QRegister>,
}

impl QubModel {
    pub fn new() -> Self {
        Self::default()
    }

    /// Binds `name` to a single qubit. `f` cannot be rebound.
    pub fn insert(&mut self, name: &str, qubit: QRegister) -> Result<()> {
        validate_atom_name(name)?;
        if qubit.n() != 1 {
            return Err(Error::InvalidModel(format!(
                "atom `{name}` must be bound to a single qubit, got {} qubits",
                qubit.n()
            )));
        }
        self.atoms.insert(name.to_string(), qubit);
        Ok(())
    }

    pub fn with(mut self, name: &str, qubit: QRegister) -> Result<Self> {
        self.insert(name, qubit)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Option<&QRegister> {
        self.atoms.get(name)
    }

    pub fn atoms(&self) -> impl Iterator<Item = (&str, &QRegister)> {
        self.atoms.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// The qubit of an atomic occurrence.
    pub fn qub_atomic(&self, leaf: &Sentence) -> Result<QRegister> {
        match leaf {
            Sentence::Falsity => Ok(QRegister::zero()),
            Sentence::Atom(name) => self
                .atoms
                .get(name)
                .cloned()
                .ok_or_else(|| Error::UnboundAtom(name.clone())),
            other => Err(Error::InvalidAst(format!("`{other}` is not atomic"))),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelJson {
    atoms: BTreeMap<String, [[f64; 2]; 2]>,
}

impl From<QubModel> for ModelJson {
    fn from(m: QubModel) -> Self {
        let atoms = m
            .atoms
            .into_iter()
            .map(|(name, q)| {
                let a = q.amplitudes();
                (name, [[a[0].re, a[0].im], [a[1].re, a[1].im]])
            })
            .collect();
        ModelJson { atoms }
    }
}

impl TryFrom<ModelJson> for QubModel {
    type Error = Error;

    fn try_from(j: ModelJson) -> Result<Self> {
        let mut m = QubModel::new();
        for (name, [[r0, i0], [r1, i1]]) in j.atoms {
            let qubit = QRegister::qubit(Complex64::new(r0, i0), Complex64::new(r1, i1))
                .map_err(|e| Error::InvalidModel(format!("atom `{name}`: {e}")))?;
            m.insert(&name, qubit)?;
        }
        Ok(m)
    }
}

/// Compositional interpretation of `s` in `m`.
pub fn eval(s: &Sentence, m: &QubModel) -> Result<QRegister> {
    eval_within(s, m, Capacity::default())
}

pub fn eval_within(s: &Sentence, m: &QubModel, cap: Capacity) -> Result<QRegister> {
    cap.check(s.atomic_complexity())?;
    eval_rec(s, m, cap)
}

fn eval_rec(s: &Sentence, m: &QubModel, cap: Capacity) -> Result<QRegister> {
    match s {
        Sentence::Atom(_) | Sentence::Falsity => m.qub_atomic(s),
        Sentence::Neg(b) => Ok(apply_not(&eval_rec(b, m, cap)?)),
        Sentence::SqrtNeg(b) => Ok(apply_sqrt_not(&eval_rec(b, m, cap)?)),
        Sentence::Conj(b, c) => and_op_within(&eval_rec(b, m, cap)?, &eval_rec(c, m, cap)?, cap),
    }
}

/// `Prob(Qub(s))`.
pub fn prob_of(s: &Sentence, m: &QubModel) -> Result<f64> {
    Ok(eval(s, m)?.prob())
}

/// Truth in a model: probability value 1, up to [`EPS_PROB`].
pub fn is_true(s: &Sentence, m: &QubModel) -> Result<bool> {
    Ok((prob_of(s, m)? - 1.0).abs() <= EPS_PROB)
}

/// `a ⊨_m b`: `Prob(Qub(a)) <= Prob(Qub(b))`, up to [`EPS_PROB`].
pub fn consequence_in_model(a: &Sentence, b: &Sentence, m: &QubModel) -> Result<bool> {
    Ok(prob_of(a, m)? <= prob_of(b, m)? + EPS_PROB)
}

/// Seeded source of random models.
///
/// With `delta > 0` every sampled qubit keeps its probability value more than
/// `delta` away from 0, 1/2 and 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ModelSampler {
    seed: u64,
    delta: f64,
}

impl ModelSampler {
    pub fn new(seed: u64, delta: f64) -> Result<Self> {
        if !(0.0..0.25).contains(&delta) {
            return Err(Error::InvalidConfig(format!(
                "delta must lie in [0, 0.25), got {delta}"
            )));
        }
        Ok(ModelSampler { seed, delta })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn delta(&self) -> f64 {
        self.delta
    }

    /// Independent stream for trial `index`; the same `(seed, index)` always
    /// yields the same stream.
    pub fn rng_for_trial(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

fn avoids_special_values(p: f64, delta: f64) -> bool {
    [0.0, 0.5, 1.0].iter().all(|v| (p - v).abs() > delta)
}

/// Haar-random qubit, optionally rejection-sampled away from the special values.
pub fn sample_qubit<R: Rng + ?Sized>(rng: &mut R, delta: f64) -> Result<QRegister> {
    for _ in 0..SAMPLER_MAX_ATTEMPTS {
        let q = QRegister::random(1, rng)?;
        if delta == 0.0 || avoids_special_values(q.prob(), delta) {
            return Ok(q);
        }
    }
    Err(Error::SamplerStuck {
        attempts: SAMPLER_MAX_ATTEMPTS,
    })
}

pub fn sample_model_with<R: Rng + ?Sized>(
    atoms: &BTreeSet<String>,
    delta: f64,
    rng: &mut R,
) -> Result<QubModel> {
    let mut m = QubModel::new();
    for name in atoms {
        m.insert(name, sample_qubit(rng, delta)?)?;
    }
    Ok(m)
}

/// One model per sampler: draws from the trial-0 stream.
pub fn sample_model(atoms: &BTreeSet<String>, sampler: &ModelSampler) -> Result<QubModel> {
    sample_model_with(atoms, sampler.delta, &mut sampler.rng_for_trial(0))
}

#[derive(Debug, Clone, PartialEq)]
pub struct Countermodel {
    pub model: QubModel,
    /// 0-based index of the successful trial.
    pub trial: u64,
    pub prob_antecedent: f64,
    /// Absent when refuting logical truth.
    pub prob_consequent: Option<f64>,
}

/// Looks for a model refuting `a ⊨ b`, or refuting `⊨ a` when `b` is `None`.
///
/// Trial `k` draws its model from [`ModelSampler::rng_for_trial`]`(k)`, so the
/// outcome depends only on the sampler and the trial budget. Returning `None`
/// never establishes validity.
pub fn search_countermodel(
    a: &Sentence,
    b: Option<&Sentence>,
    trials: u64,
    sampler: &ModelSampler,
) -> Result<Option<Countermodel>> {
    search_countermodel_within(a, b, trials, sampler, Capacity::default())
}

pub fn search_countermodel_within(
    a: &Sentence,
    b: Option<&Sentence>,
    trials: u64,
    sampler: &ModelSampler,
    cap: Capacity,
) -> Result<Option<Countermodel>> {
    if trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    cap.check(a.atomic_complexity())?;
    let mut atoms = a.atom_names();
    if let Some(b) = b {
        cap.check(b.atomic_complexity())?;
        atoms.extend(b.atom_names());
    }
    for trial in 0..trials {
        let model = sample_model_with(&atoms, sampler.delta, &mut sampler.rng_for_trial(trial))?;
        let pa = eval_within(a, &model, cap)?.prob();
        let (refuted, pb) = match b {
            Some(b) => {
                let pb = eval_within(b, &model, cap)?.prob();
                (pa > pb + EPS_PROB, Some(pb))
            }
            None => (pa < 1.0 - EPS_PROB, None),
        };
        if refuted {
            return Ok(Some(Countermodel {
                model,
                trial,
                prob_antecedent: pa,
                prob_consequent: pb,
            }));
        }
    }
    Ok(None)
}

/// One unary Boolean function `x ↦ table[x]` and where it fails `g(g(x)) = 1 - x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BooleanCandidate {
    pub table: [u8; 2],
    /// Smallest `x` with `g(g(x)) != 1 - x`, if any.
    pub witness: Option<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BooleanSqrtReport {
    pub candidates: Vec<BooleanCandidate>,
}

impl BooleanSqrtReport {
    /// Number of functions that square to negation.
    pub fn satisfying(&self) -> usize {
        self.candidates.iter().filter(|c| c.witness.is_none()).count()
    }
}

/// Enumerates all four maps `{0,1} -> {0,1}` and checks whether any of them
/// composed with itself is negation.
pub fn check_no_boolean_sqrt_not() -> BooleanSqrtReport {
    let candidates = (0u8..4)
        .map(|code| {
            let table = [code >> 1, code & 1];
            let g = |x: u8| table[x as usize];
            let witness = (0u8..2).find(|&x| g(g(x)) != 1 - x);
            BooleanCandidate { table, witness }
        })
        .collect();
    BooleanSqrtReport { candidates }
}

/// Unit-norm check for externally supplied qubits.
pub fn is_unit(q: &QRegister) -> bool {
    (q.norm_sqr() - 1.0).abs() <= EPS_NORM
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse;
    use std::f64::consts::FRAC_1_SQRT_2;

    fn plus() -> QRegister {
        QRegister::qubit(
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            Complex64::new(FRAC_1_SQRT_2, 0.0),
        )
        .unwrap()
    }

    fn model_p(q: QRegister) -> QubModel {
        QubModel::new().with("p", q).unwrap()
    }

    fn s(text: &str) -> Sentence {
        parse(text).unwrap()
    }

    #[test]
    fn eval_contradiction_classical() {
        let out = eval(&s("p and not p"), &model_p(QRegister::one())).unwrap();
        assert_eq!(out, QRegister::configuration(&[1, 0, 0]).unwrap());
        assert_eq!(out.prob(), 0.0);
    }

    #[test]
    fn idempotence_numbers() {
        let m = model_p(plus());
        assert!((prob_of(&s("p"), &m).unwrap() - 0.5).abs() < 1e-12);
        assert!((prob_of(&s("p and p"), &m).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn non_contradiction_fails() {
        let m = model_p(plus());
        let p = prob_of(&s("not (p and not p)"), &m).unwrap();
        assert!((p - 0.75).abs() < 1e-12);
        assert!(!is_true(&s("not (p and not p)"), &m).unwrap());
    }

    #[test]
    fn truth_examples() {
        assert!(is_true(&s("not f"), &QubModel::new()).unwrap());
        assert!(is_true(&s("p"), &model_p(QRegister::one())).unwrap());
        assert!(!is_true(&s("p"), &model_p(QRegister::zero())).unwrap());
    }

    #[test]
    fn consequence_examples() {
        let m = model_p(plus());
        assert!(consequence_in_model(&s("f"), &s("p and not p"), &m).unwrap());
        assert!(consequence_in_model(&s("p and p"), &s("p"), &m).unwrap());
        assert!(!consequence_in_model(&s("p"), &s("p and p"), &m).unwrap());
    }

    #[test]
    fn eval_errors() {
        assert_eq!(
            eval(&s("p and q"), &model_p(plus())).unwrap_err(),
            Error::UnboundAtom("q".into())
        );
        let cap = Capacity::new(4).unwrap();
        assert!(matches!(
            eval_within(&s("p and p and p"), &model_p(plus()), cap),
            Err(Error::CapacityExceeded { requested: 5, limit: 4 })
        ));
    }

    #[test]
    fn eval_dimension_is_atomic_complexity() {
        let m = QubModel::new()
            .with("p", plus())
            .unwrap()
            .with("q", QRegister::one())
            .unwrap();
        for text in ["p", "not p and (q and snot p)", "p or q", "snot snot f"] {
            let st = s(text);
            assert_eq!(eval(&st, &m).unwrap().n(), st.atomic_complexity());
        }
    }

    #[test]
    fn model_rejects_bad_bindings() {
        let mut m = QubModel::new();
        assert_eq!(
            m.insert("f", QRegister::one()).unwrap_err(),
            Error::ReservedName("f".into())
        );
        assert!(m
            .insert("p", QRegister::configuration(&[0, 1]).unwrap())
            .is_err());
    }

    #[test]
    fn model_json() {
        let m = QubModel::new().with("p", QRegister::one()).unwrap();
        let json = serde_json::to_string(&m).unwrap();
        assert_eq!(json, r#"{"atoms":{"p":[[0.0,0.0],[1.0,0.0]]}}"#);
        assert_eq!(serde_json::from_str::<QubModel>(&json).unwrap(), m);

        let not_unit = r#"{"atoms":{"p":[[1.0,0.0],[1.0,0.0]]}}"#;
        assert!(serde_json::from_str::<QubModel>(not_unit).is_err());
        let reserved = r#"{"atoms":{"f":[[1.0,0.0],[0.0,0.0]]}}"#;
        assert!(serde_json::from_str::<QubModel>(reserved).is_err());
        let h = FRAC_1_SQRT_2;
        let ok = format!(r#"{{"atoms":{{"p":[[{h},0.0],[0.0,{h}]]}}}}"#);
        assert!(serde_json::from_str::<QubModel>(&ok).is_ok());
    }

    #[test]
    fn sampler_is_deterministic() {
        let atoms: BTreeSet<String> = ["p", "q", "r"].iter().map(|s| s.to_string()).collect();
        let sampler = ModelSampler::new(42, 0.0).unwrap();
        let a = sample_model(&atoms, &sampler).unwrap();
        let b = sample_model(&atoms, &sampler).unwrap();
        assert_eq!(a, b);
        let other = sample_model(&atoms, &ModelSampler::new(43, 0.0).unwrap()).unwrap();
        assert_ne!(a, other);
    }

    #[test]
    fn sampler_respects_margin() {
        let atoms: BTreeSet<String> = ["p", "q", "r", "s"].iter().map(|s| s.to_string()).collect();
        for seed in 0..200 {
            let m = sample_model(&atoms, &ModelSampler::new(seed, 0.05).unwrap()).unwrap();
            for (_, q) in m.atoms() {
                let p = q.prob();
                assert!((0.05 < p && p < 0.45) || (0.55 < p && p < 0.95), "{p}");
                assert!(is_unit(q));
            }
        }
    }

    #[test]
    fn sampler_mean_probability() {
        let sampler = ModelSampler::new(0, 0.0).unwrap();
        let mut rng = sampler.rng_for_trial(0);
        let n = 10_000;
        let mean = (0..n)
            .map(|_| sample_qubit(&mut rng, 0.0).unwrap().prob())
            .sum::<f64>()
            / n as f64;
        assert!((mean - 0.5).abs() < 0.02, "{mean}");
    }

    #[test]
    fn sampler_rejects_bad_delta() {
        assert!(ModelSampler::new(0, 0.25).is_err());
        assert!(ModelSampler::new(0, -0.1).is_err());
        assert!(ModelSampler::new(0, f64::NAN).is_err());
    }

    #[test]
    fn countermodel_for_idempotence() {
        let sampler = ModelSampler::new(0, 0.0).unwrap();
        let found = search_countermodel(&s("p"), Some(&s("p and p")), 100, &sampler)
            .unwrap()
            .expect("idempotence fails");
        let pa = found.prob_antecedent;
        let pb = found.prob_consequent.unwrap();
        assert!(pa > pb);
        assert!((pb - pa * pa).abs() < 1e-12);
    }

    #[test]
    fn no_countermodel_for_conjunction_elimination() {
        let sampler = ModelSampler::new(0, 0.0).unwrap();
        let found = search_countermodel(&s("p and q"), Some(&s("p")), 1000, &sampler).unwrap();
        assert!(found.is_none());
    }

    #[test]
    fn refutes_negated_contradiction() {
        let sampler = ModelSampler::new(0, 0.05).unwrap();
        let found = search_countermodel(&s("not (p and not p)"), None, 100, &sampler)
            .unwrap()
            .expect("no logical truths");
        assert_eq!(found.trial, 0);
        assert!(found.prob_antecedent < 1.0 - EPS_PROB);
        assert!(found.prob_consequent.is_none());
    }

    #[test]
    fn search_is_reproducible() {
        let sampler = ModelSampler::new(17, 0.0).unwrap();
        let a = search_countermodel(&s("p or q"), None, 10, &sampler).unwrap();
        let b = search_countermodel(&s("p or q"), None, 10, &sampler).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn search_rejects_zero_trials() {
        let sampler = ModelSampler::new(0, 0.0).unwrap();
        assert!(search_countermodel(&s("p"), None, 0, &sampler).is_err());
    }

    #[test]
    fn boolean_sqrt_not_does_not_exist() {
        let report = check_no_boolean_sqrt_not();
        assert_eq!(report.candidates.len(), 4);
        assert_eq!(report.satisfying(), 0);
        let find = |table: [u8; 2]| {
            report
                .candidates
                .iter()
                .find(|c| c.table == table)
                .unwrap()
                .witness
        };
        // identity fails at 0, constant 1 fails at 1
        assert_eq!(find([0, 1]), Some(0));
        assert_eq!(find([1, 1]), Some(1));
    }
}
