//! Syntactical trees: the leveled decomposition of a sentence.
//!
//! Level 1 holds the sentence itself. Each following level is obtained by
//! replacing every node of the previous one, left to right, with its
//! branches: an atomic node is carried down unchanged, `¬β` and `√¬β` branch
//! to `β`, and `⋀(β, γ, f)` branches to `β, γ, f`. Construction stops at the
//! first level made of atomic occurrences only.

use std::fmt;

use crate::lang::Sentence;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntacticTree {
    levels: Vec<Vec<Sentence>>,
}

fn branch(node: &Sentence, out: &mut Vec<Sentence>) {
    match node {
        Sentence::Atom(_) | Sentence::Falsity => out.push(node.clone()),
        Sentence::Neg(b) | Sentence::SqrtNeg(b) => out.push((**b).clone()),
        Sentence::Conj(b, c) => {
            out.push((**b).clone());
            out.push((**c).clone());
            out.push(Sentence::Falsity);
        }
    }
}

pub fn build_tree(s: &Sentence) -> SyntacticTree {
    let mut levels = vec![vec![s.clone()]];
    loop {
        let last = levels.last().expect("at least the root level");
        if last.iter().all(Sentence::is_atomic) {
            break;
        }
        let mut next = Vec::with_capacity(last.len() + 2);
        for node in last {
            branch(node, &mut next);
        }
        levels.push(next);
    }
    SyntacticTree { levels }
}

impl SyntacticTree {
    pub fn root(&self) -> &Sentence {
        &self.levels[0][0]
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    /// Levels root first; `levels()[0]` is Level 1.
    pub fn levels(&self) -> &[Vec<Sentence>] {
        &self.levels
    }

    /// Level `i`, 1-based.
    pub fn level(&self, i: usize) -> Option<&[Sentence]> {
        i.checked_sub(1)
            .and_then(|k| self.levels.get(k))
            .map(Vec::as_slice)
    }

    /// The last level: every atomic occurrence of the root, in order.
    pub fn leaves(&self) -> &[Sentence] {
        self.levels.last().expect("non-empty")
    }

    /// Qubit count shared by every level.
    pub fn width(&self) -> usize {
        self.root().atomic_complexity()
    }
}

impl fmt::Display for SyntacticTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for level in &self.levels {
            let nodes: Vec<String> = level.iter().map(ToString::to_string).collect();
            writeln!(f, "({})", nodes.join(", "))?;
        }
        Ok(())
    }
}
