//! Random sentence generation for property tests and experiments.

use rand::seq::IndexedRandom;
use rand::Rng;

use crate::lang::Sentence;

#[derive(Debug, Clone)]
pub struct GenConfig {
    pub max_depth: usize,
    pub atoms: Vec<String>,
    /// Chance that an inner position becomes a leaf before `max_depth`.
    pub leaf_prob: f64,
    /// Allow the falsity constant as a leaf.
    pub falsity: bool,
    pub sqrt_neg: bool,
    /// Allow `or` (desugared on construction).
    pub or: bool,
}

impl Default for GenConfig {
    fn default() -> Self {
        GenConfig {
            max_depth: 6,
            atoms: ["p", "q", "r", "s"].iter().map(|s| s.to_string()).collect(),
            leaf_prob: 0.35,
            falsity: true,
            sqrt_neg: true,
            or: true,
        }
    }
}

#[derive(Clone, Copy)]
enum Connective {
    Not,
    SqrtNot,
    And,
    Or,
}

pub fn random_sentence<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig) -> Sentence {
    gen(rng, cfg, 0)
}

/// Draws until the sentence has at most `max_atcompl` atomic occurrences.
pub fn random_sentence_bounded<R: Rng + ?Sized>(
    rng: &mut R,
    cfg: &GenConfig,
    max_atcompl: usize,
) -> Sentence {
    loop {
        let s = random_sentence(rng, cfg);
        if s.atomic_complexity() <= max_atcompl {
            return s;
        }
    }
}

fn leaf<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig) -> Sentence {
    let pool = cfg.atoms.len() + usize::from(cfg.falsity);
    assert!(pool > 0, "generator needs at least one leaf kind");
    let k = rng.random_range(0..pool);
    match cfg.atoms.get(k) {
        Some(name) => Sentence::Atom(name.clone()),
        None => Sentence::Falsity,
    }
}

fn gen<R: Rng + ?Sized>(rng: &mut R, cfg: &GenConfig, depth: usize) -> Sentence {
    if depth >= cfg.max_depth || rng.random_bool(cfg.leaf_prob) {
        return leaf(rng, cfg);
    }
    let mut choices = vec![Connective::Not, Connective::And];
    if cfg.sqrt_neg {
        choices.push(Connective::SqrtNot);
    }
    if cfg.or {
        choices.push(Connective::Or);
    }
    match *choices.choose(rng).expect("non-empty") {
        Connective::Not => Sentence::neg(gen(rng, cfg, depth + 1)),
        Connective::SqrtNot => Sentence::sqrt_neg(gen(rng, cfg, depth + 1)),
        Connective::And => Sentence::and(gen(rng, cfg, depth + 1), gen(rng, cfg, depth + 1)),
        Connective::Or => Sentence::or(gen(rng, cfg, depth + 1), gen(rng, cfg, depth + 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_switches() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let cfg = GenConfig {
            falsity: false,
            sqrt_neg: false,
            ..GenConfig::default()
        };
        for _ in 0..300 {
            let s = random_sentence(&mut rng, &cfg);
            assert!(!s.contains_sqrt_neg());
            // every f comes from a conjunction
            let explicit_f = count_explicit_falsity(&s);
            assert_eq!(explicit_f, 0, "{s}");
        }
    }

    fn count_explicit_falsity(s: &Sentence) -> usize {
        match s {
            Sentence::Falsity => 1,
            Sentence::Atom(_) => 0,
            Sentence::Neg(b) | Sentence::SqrtNeg(b) => count_explicit_falsity(b),
            Sentence::Conj(b, c) => count_explicit_falsity(b) + count_explicit_falsity(c),
        }
    }

    #[test]
    fn bounded_generation() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let cfg = GenConfig::default();
        for _ in 0..200 {
            let s = random_sentence_bounded(&mut rng, &cfg, 12);
            assert!(s.atomic_complexity() <= 12);
            // AST depth counts each desugared `or` as three levels
            assert!(s.depth() <= 3 * cfg.max_depth);
        }
    }

    #[test]
    fn deterministic_for_seed() {
        let cfg = GenConfig::default();
        let a = random_sentence(&mut ChaCha8Rng::seed_from_u64(9), &cfg);
        let b = random_sentence(&mut ChaCha8Rng::seed_from_u64(9), &cfg);
        assert_eq!(a, b);
    }
}
