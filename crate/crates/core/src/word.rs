//! Words in the free monoid on `Σ ∪ Σ⁻¹`.
//!
//! Words are stored fully expanded, one letter per generator occurrence, and
//! are never freely reduced behind the caller's back: `σ_s σ_s⁻¹` has length 2.
//!
//! Text syntax: whitespace-separated tokens `v`, `v^k`, `v^-k`, parenthesised
//! groups `(…)^k`, and `1` for the empty word.

use std::fmt;

use thiserror::Error;

use crate::coxeter::CoxeterGroup;
use crate::graph::{DefiningGraph, VertexId, VertexSet};

/// Upper bound on the number of letters in an expanded word.
pub const MAX_WORD_LEN: usize = 1_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("zero exponent on `{0}`")]
    ZeroExponent(String),
    #[error("malformed word near `{0}`")]
    Malformed(String),
    #[error("word exceeds {MAX_WORD_LEN} letters")]
    TooLong,
    #[error("rotation index {index} out of range for a word of length {len}")]
    IndexOutOfRange { index: usize, len: usize },
}

/// `σ_v` or `σ_v⁻¹`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub vertex: VertexId,
    pub inverse: bool,
}

impl Letter {
    pub fn pos(vertex: VertexId) -> Letter {
        Letter {
            vertex,
            inverse: false,
        }
    }

    pub fn neg(vertex: VertexId) -> Letter {
        Letter {
            vertex,
            inverse: true,
        }
    }

    /// `+1` or `-1`.
    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inverted(self) -> Letter {
        Letter {
            vertex: self.vertex,
            inverse: !self.inverse,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ArtinWord {
    letters: Vec<Letter>,
}

impl ArtinWord {
    pub fn empty() -> ArtinWord {
        ArtinWord::default()
    }

    pub fn from_letters(letters: Vec<Letter>) -> ArtinWord {
        ArtinWord { letters }
    }

    /// The positive word spelling the given vertices.
    pub fn positive(vertices: &[VertexId]) -> ArtinWord {
        ArtinWord {
            letters: vertices.iter().map(|&v| Letter::pos(v)).collect(),
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: Letter) {
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &ArtinWord) -> ArtinWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        ArtinWord { letters }
    }

    /// The formal inverse: reversed, every exponent flipped.
    pub fn inverse(&self) -> ArtinWord {
        ArtinWord {
            letters: self.letters.iter().rev().map(|l| l.inverted()).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> ArtinWord {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        ArtinWord { letters }
    }

    /// True iff every exponent is `+1`; the empty word is positive.
    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    pub fn support(&self) -> VertexSet {
        self.letters.iter().map(|l| l.vertex).collect()
    }

    /// Exponent sum per generator, indexed by vertex.
    pub fn abelianize(&self, n: usize) -> Vec<i64> {
        let mut sums = vec![0; n];
        for l in &self.letters {
            sums[l.vertex] += l.exponent();
        }
        sums
    }

    /// Exponent sum over each class, e.g. from [`DefiningGraph::odd_classes`].
    pub fn class_sums(&self, classes: &[VertexSet]) -> Vec<i64> {
        classes
            .iter()
            .map(|c| {
                self.letters
                    .iter()
                    .filter(|l| c.contains(l.vertex))
                    .map(|l| l.exponent())
                    .sum()
            })
            .collect()
    }

    /// Rotation starting at `start`: `w[start..] · w[..start]`.
    pub fn cyclic_permutation(&self, start: usize) -> Result<ArtinWord, WordError> {
        if start > 0 && start >= self.len() {
            return Err(WordError::IndexOutOfRange {
                index: start,
                len: self.len(),
            });
        }
        let mut letters = self.letters[start..].to_vec();
        letters.extend_from_slice(&self.letters[..start]);
        Ok(ArtinWord { letters })
    }

    /// Exponent signs of the θ-image are ignored: `θ(w)` is the identity.
    pub fn is_pure(&self, group: &CoxeterGroup) -> bool {
        group.theta(self).is_identity()
    }

    /// Renders the word with the graph's vertex names, compressing runs.
    pub fn display<'a>(&'a self, graph: &'a DefiningGraph) -> WordDisplay<'a> {
        WordDisplay {
            word: self,
            names: graph.names(),
        }
    }

    pub fn to_string_with(&self, graph: &DefiningGraph) -> String {
        self.display(graph).to_string()
    }

    /// Parses `text` against the vertex names of `graph`.
    pub fn parse(text: &str, graph: &DefiningGraph) -> Result<ArtinWord, WordError> {
        let tokens = tokenize(text)?;
        let mut parser = Parser {
            tokens: &tokens,
            pos: 0,
            graph,
        };
        let word = parser.sequence()?;
        if parser.pos != tokens.len() {
            return Err(WordError::Malformed(tokens[parser.pos].to_string()));
        }
        Ok(word)
    }
}

pub struct WordDisplay<'a> {
    word: &'a ArtinWord,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return f.write_str("1");
        }
        let letters = self.word.letters();
        let mut i = 0;
        let mut first = true;
        while i < letters.len() {
            let mut j = i + 1;
            while j < letters.len() && letters[j] == letters[i] {
                j += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let name = &self.names[letters[i].vertex];
            let run = (j - i) as i64 * letters[i].exponent();
            if run == 1 {
                f.write_str(name)?;
            } else {
                write!(f, "{name}^{run}")?;
            }
            i = j;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Name(String),
    Int(i64),
    Caret,
    Open,
    Close,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Name(s) => f.write_str(s),
            Token::Int(k) => write!(f, "{k}"),
            Token::Caret => f.write_str("^"),
            Token::Open => f.write_str("("),
            Token::Close => f.write_str(")"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<Token>, WordError> {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() || c == '*' || c == '.' {
            i += 1;
        } else if c == '^' {
            tokens.push(Token::Caret);
            i += 1;
        } else if c == '(' {
            tokens.push(Token::Open);
            i += 1;
        } else if c == ')' {
            tokens.push(Token::Close);
            i += 1;
        } else if c == '-' || c.is_ascii_digit() {
            let start = i;
            i += 1;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            let k = s.parse::<i64>().map_err(|_| WordError::Malformed(s.clone()))?;
            tokens.push(Token::Int(k));
        } else if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len()
                && (chars[i].is_alphanumeric() || chars[i] == '_' || chars[i] == '\'')
            {
                i += 1;
            }
            tokens.push(Token::Name(chars[start..i].iter().collect()));
        } else {
            return Err(WordError::Malformed(c.to_string()));
        }
    }
    Ok(tokens)
}

struct Parser<'a> {
    tokens: &'a [Token],
    pos: usize,
    graph: &'a DefiningGraph,
}

impl Parser<'_> {
    fn sequence(&mut self) -> Result<ArtinWord, WordError> {
        let mut word = ArtinWord::empty();
        while let Some(tok) = self.tokens.get(self.pos) {
            let (atom, label) = match tok {
                Token::Close => break,
                Token::Int(1) => {
                    self.pos += 1;
                    (ArtinWord::empty(), "1".to_string())
                }
                Token::Name(name) => {
                    self.pos += 1;
                    let v = self
                        .graph
                        .index_of(name)
                        .ok_or_else(|| WordError::UnknownGenerator(name.clone()))?;
                    (ArtinWord::positive(&[v]), name.clone())
                }
                Token::Open => {
                    self.pos += 1;
                    let inner = self.sequence()?;
                    if self.tokens.get(self.pos) != Some(&Token::Close) {
                        return Err(WordError::Malformed("(".into()));
                    }
                    self.pos += 1;
                    (inner, "(…)".to_string())
                }
                other => return Err(WordError::Malformed(other.to_string())),
            };
            let mut exponent = 1;
            if self.tokens.get(self.pos) == Some(&Token::Caret) {
                self.pos += 1;
                match self.tokens.get(self.pos) {
                    Some(Token::Int(k)) => {
                        exponent = *k;
                        self.pos += 1;
                    }
                    _ => return Err(WordError::Malformed(format!("{label}^"))),
                }
                if exponent == 0 {
                    return Err(WordError::ZeroExponent(label));
                }
            }
            let added = atom.len().saturating_mul(exponent.unsigned_abs() as usize);
            if word.len().saturating_add(added) > MAX_WORD_LEN {
                return Err(WordError::TooLong);
            }
            word = word.concat(&atom.pow(exponent));
        }
        Ok(word)
    }
}
