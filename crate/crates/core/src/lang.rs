//! The sentential language: atoms, the falsity constant `f`, negation, square
//! root of negation, and the ternary conjunction `⋀(β, γ, f)`.
//!
//! Binary `and` and `or` only exist in the concrete syntax. The parser lowers
//! `a and b` to `⋀(a, b, f)` and `a or b` to `¬⋀(¬a, ¬b, f)`.
//!
//! Concrete grammar:
//!
//! ```text
//! sentence := or_expr ;
//! or_expr  := and_expr { "or" and_expr } ;
//! and_expr := unary { "and" unary } ;
//! unary    := "not" unary | "snot" unary | atom | "f" | "(" sentence ")" ;
//! atom     := [a-z][a-z0-9_]*   (minus the keywords)
//! ```

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const FALSITY_TOKEN: &str = "f";
const KEYWORDS: [&str; 5] = ["not", "snot", "and", "or", FALSITY_TOKEN];

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "AstNode", try_from = "AstNode")]
pub enum Sentence {
    Atom(String),
    /// The privileged atomic sentence `f`, always interpreted as `|0>`.
    Falsity,
    Neg(Box<Sentence>),
    SqrtNeg(Box<Sentence>),
    /// Ternary conjunction `⋀(β, γ, f)`. The third component is always the
    /// falsity constant, so it is not stored.
    Conj(Box<Sentence>, Box<Sentence>),
}

/// One atomic occurrence in a sentence.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Leaf {
    Atom(String),
    Falsity,
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf::Atom(name) => f.write_str(name),
            Leaf::Falsity => f.write_str(FALSITY_TOKEN),
        }
    }
}

pub fn is_reserved(name: &str) -> bool {
    KEYWORDS.contains(&name)
}

/// Checks that `name` is a legal atom identifier.
pub fn validate_atom_name(name: &str) -> Result<()> {
    if is_reserved(name) {
        return Err(Error::ReservedName(name.to_string()));
    }
    let mut chars = name.chars();
    let head_ok = chars.next().is_some_and(|c| c.is_ascii_lowercase());
    let tail_ok = chars.all(|c| c.is_ascii_lowercase() || c.is_ascii_digit() || c == '_');
    if head_ok && tail_ok {
        Ok(())
    } else {
        Err(Error::Syntax {
            offset: 0,
            message: format!("`{name}` is not a valid atom name"),
        })
    }
}

impl Sentence {
    pub fn atom(name: &str) -> Result<Sentence> {
        validate_atom_name(name)?;
        Ok(Sentence::Atom(name.to_string()))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(s: Sentence) -> Sentence {
        Sentence::Neg(Box::new(s))
    }

    pub fn sqrt_neg(s: Sentence) -> Sentence {
        Sentence::SqrtNeg(Box::new(s))
    }

    /// `a ∧ b`, i.e. `⋀(a, b, f)`.
    pub fn and(a: Sentence, b: Sentence) -> Sentence {
        Sentence::Conj(Box::new(a), Box::new(b))
    }

    /// `a ∨ b`, i.e. `¬⋀(¬a, ¬b, f)`.
    pub fn or(a: Sentence, b: Sentence) -> Sentence {
        Sentence::neg(Sentence::and(Sentence::neg(a), Sentence::neg(b)))
    }

    pub fn is_atomic(&self) -> bool {
        matches!(self, Sentence::Atom(_) | Sentence::Falsity)
    }

    /// Number of atomic occurrences, counting the implicit `f` of every
    /// conjunction. This is the qubit count of the sentence's quregister.
    pub fn atomic_complexity(&self) -> usize {
        match self {
            Sentence::Atom(_) | Sentence::Falsity => 1,
            Sentence::Neg(b) | Sentence::SqrtNeg(b) => b.atomic_complexity(),
            Sentence::Conj(b, c) => b.atomic_complexity() + c.atomic_complexity() + 1,
        }
    }

    /// Atomic occurrences in left-to-right order.
    pub fn atoms_of(&self) -> Vec<Leaf> {
        let mut out = Vec::with_capacity(self.atomic_complexity());
        self.collect_leaves(&mut out);
        out
    }

    fn collect_leaves(&self, out: &mut Vec<Leaf>) {
        match self {
            Sentence::Atom(name) => out.push(Leaf::Atom(name.clone())),
            Sentence::Falsity => out.push(Leaf::Falsity),
            Sentence::Neg(b) | Sentence::SqrtNeg(b) => b.collect_leaves(out),
            Sentence::Conj(b, c) => {
                b.collect_leaves(out);
                c.collect_leaves(out);
                out.push(Leaf::Falsity);
            }
        }
    }

    /// Distinct atom names (the falsity constant excluded).
    pub fn atom_names(&self) -> BTreeSet<String> {
        self.atoms_of()
            .into_iter()
            .filter_map(|l| match l {
                Leaf::Atom(name) => Some(name),
                Leaf::Falsity => None,
            })
            .collect()
    }

    /// Height of the AST; atoms have depth 0.
    pub fn depth(&self) -> usize {
        match self {
            Sentence::Atom(_) | Sentence::Falsity => 0,
            Sentence::Neg(b) | Sentence::SqrtNeg(b) => 1 + b.depth(),
            Sentence::Conj(b, c) => 1 + b.depth().max(c.depth()),
        }
    }

    pub fn contains_sqrt_neg(&self) -> bool {
        match self {
            Sentence::Atom(_) | Sentence::Falsity => false,
            Sentence::SqrtNeg(_) => true,
            Sentence::Neg(b) => b.contains_sqrt_neg(),
            Sentence::Conj(b, c) => b.contains_sqrt_neg() || c.contains_sqrt_neg(),
        }
    }

    /// Constructor-style rendering, e.g. `Conj3(p, Neg p, f)`.
    pub fn structural(&self) -> String {
        let mut out = String::new();
        self.write_structural(&mut out);
        out
    }

    fn write_structural(&self, out: &mut String) {
        let unary = |out: &mut String, name: &str, b: &Sentence| {
            out.push_str(name);
            if b.is_atomic() {
                out.push(' ');
                b.write_structural(out);
            } else {
                out.push('(');
                b.write_structural(out);
                out.push(')');
            }
        };
        match self {
            Sentence::Atom(name) => out.push_str(name),
            Sentence::Falsity => out.push_str(FALSITY_TOKEN),
            Sentence::Neg(b) => unary(out, "Neg", b),
            Sentence::SqrtNeg(b) => unary(out, "SqrtNeg", b),
            Sentence::Conj(b, c) => {
                out.push_str("Conj3(");
                b.write_structural(out);
                out.push_str(", ");
                c.write_structural(out);
                out.push_str(", f)");
            }
        }
    }
}

impl fmt::Display for Sentence {
    /// Concrete syntax with minimal parentheses; parses back to the same AST.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sentence::Atom(name) => f.write_str(name),
            Sentence::Falsity => f.write_str(FALSITY_TOKEN),
            Sentence::Neg(b) => {
                f.write_str("not ")?;
                write_operand(f, b)
            }
            Sentence::SqrtNeg(b) => {
                f.write_str("snot ")?;
                write_operand(f, b)
            }
            Sentence::Conj(b, c) => {
                // `and` is left-associative: only a conjunction on the right
                // needs parentheses.
                write!(f, "{b} and ")?;
                write_operand(f, c)
            }
        }
    }
}

fn write_operand(f: &mut fmt::Formatter<'_>, s: &Sentence) -> fmt::Result {
    if matches!(s, Sentence::Conj(..)) {
        write!(f, "({s})")
    } else {
        write!(f, "{s}")
    }
}

// ---------------------------------------------------------------------------
// JSON form

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
enum AstNode {
    Atom { name: String },
    Falsity,
    Neg { arg: Box<AstNode> },
    SqrtNeg { arg: Box<AstNode> },
    Conj3 { args: Vec<AstNode> },
}

impl From<Sentence> for AstNode {
    fn from(s: Sentence) -> Self {
        match s {
            Sentence::Atom(name) => AstNode::Atom { name },
            Sentence::Falsity => AstNode::Falsity,
            Sentence::Neg(b) => AstNode::Neg {
                arg: Box::new((*b).into()),
            },
            Sentence::SqrtNeg(b) => AstNode::SqrtNeg {
                arg: Box::new((*b).into()),
            },
            Sentence::Conj(b, c) => AstNode::Conj3 {
                args: vec![(*b).into(), (*c).into(), AstNode::Falsity],
            },
        }
    }
}

impl TryFrom<AstNode> for Sentence {
    type Error = Error;

    fn try_from(node: AstNode) -> Result<Self> {
        Ok(match node {
            AstNode::Atom { name } => Sentence::atom(&name)?,
            AstNode::Falsity => Sentence::Falsity,
            AstNode::Neg { arg } => Sentence::neg((*arg).try_into()?),
            AstNode::SqrtNeg { arg } => Sentence::sqrt_neg((*arg).try_into()?),
            AstNode::Conj3 { args } => {
                let [b, c, last]: [AstNode; 3] = args.try_into().map_err(|v: Vec<_>| {
                    Error::InvalidAst(format!("conj3 takes 3 arguments, got {}", v.len()))
                })?;
                if !matches!(last, AstNode::Falsity) {
                    return Err(Error::InvalidAst(
                        "third argument of conj3 must be the falsity constant".into(),
                    ));
                }
                Sentence::and(b.try_into()?, c.try_into()?)
            }
        })
    }
}

// ---------------------------------------------------------------------------
// Parser

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Ident(String),
    Not,
    Snot,
    And,
    Or,
    Falsity,
    LParen,
    RParen,
    End,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(name) => write!(f, "atom `{name}`"),
            Tok::Not => f.write_str("`not`"),
            Tok::Snot => f.write_str("`snot`"),
            Tok::And => f.write_str("`and`"),
            Tok::Or => f.write_str("`or`"),
            Tok::Falsity => f.write_str("`f`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::End => f.write_str("end of input"),
        }
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>> {
    let bytes = text.as_bytes();
    let mut toks = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'(' {
            toks.push((i, Tok::LParen));
            i += 1;
        } else if c == b')' {
            toks.push((i, Tok::RParen));
            i += 1;
        } else if c.is_ascii_lowercase() {
            let start = i;
            while i < bytes.len()
                && (bytes[i].is_ascii_lowercase() || bytes[i].is_ascii_digit() || bytes[i] == b'_')
            {
                i += 1;
            }
            let tok = match &text[start..i] {
                "not" => Tok::Not,
                "snot" => Tok::Snot,
                "and" => Tok::And,
                "or" => Tok::Or,
                FALSITY_TOKEN => Tok::Falsity,
                word => Tok::Ident(word.to_string()),
            };
            toks.push((start, tok));
        } else {
            let ch = text[i..].chars().next().unwrap_or('?');
            return Err(Error::Syntax {
                offset: i,
                message: format!("unexpected character `{ch}`"),
            });
        }
    }
    toks.push((text.len(), Tok::End));
    Ok(toks)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].1
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].0
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.pos].1.clone();
        if tok != Tok::End {
            self.pos += 1;
        }
        tok
    }

    fn error(&self, expected: &str) -> Error {
        Error::Syntax {
            offset: self.offset(),
            message: format!("expected {expected}, found {}", self.peek()),
        }
    }

    fn sentence(&mut self) -> Result<Sentence> {
        let mut lhs = self.and_expr()?;
        while *self.peek() == Tok::Or {
            self.bump();
            let rhs = self.and_expr()?;
            lhs = Sentence::or(lhs, rhs);
        }
        Ok(lhs)
    }

    fn and_expr(&mut self) -> Result<Sentence> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::And {
            self.bump();
            let rhs = self.unary()?;
            lhs = Sentence::and(lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Sentence> {
        match self.peek() {
            Tok::Not => {
                self.bump();
                Ok(Sentence::neg(self.unary()?))
            }
            Tok::Snot => {
                self.bump();
                Ok(Sentence::sqrt_neg(self.unary()?))
            }
            Tok::Falsity => {
                self.bump();
                Ok(Sentence::Falsity)
            }
            Tok::Ident(_) => match self.bump() {
                Tok::Ident(name) => Ok(Sentence::Atom(name)),
                _ => unreachable!(),
            },
            Tok::LParen => {
                self.bump();
                let inner = self.sentence()?;
                if *self.peek() != Tok::RParen {
                    return Err(self.error("`)`"));
                }
                self.bump();
                Ok(inner)
            }
            _ => Err(self.error("a sentence")),
        }
    }
}

/// Parses concrete syntax into the desugared AST.
pub fn parse(text: &str) -> Result<Sentence> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
    };
    let s = p.sentence()?;
    if *p.peek() != Tok::End {
        return Err(p.error("`and`, `or` or end of input"));
    }
    Ok(s)
}

impl std::str::FromStr for Sentence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse(s)
    }
}
