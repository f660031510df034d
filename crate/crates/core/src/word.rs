//! Pigmented words and the clone structure on them.

use std::fmt;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{parse_err, Error, Result};
use crate::monoid::{MonoidElement, MonoidMorphism, MonoidSpec};

/// A letter `i^α`. Letters compare by value first, then by pigment.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Letter {
    pub value: usize,
    pub pigment: MonoidElement,
}

impl Letter {
    pub fn new(value: usize, pigment: MonoidElement) -> Self {
        Letter { value, pigment }
    }
}

/// A pigmented word with an explicit arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word {
    letters: Vec<Letter>,
    arity: usize,
}

impl Word {
    /// Build a word, checking that every value lies in `1..=arity`.
    pub fn new(letters: Vec<Letter>, arity: usize) -> Result<Self> {
        if let Some(l) = letters.iter().find(|l| l.value == 0 || l.value > arity) {
            return Err(Error::OutOfRange {
                value: l.value,
                arity,
            });
        }
        Ok(Word { letters, arity })
    }

    pub(crate) fn from_parts(letters: Vec<Letter>, arity: usize) -> Self {
        debug_assert!(letters.iter().all(|l| l.value >= 1 && l.value <= arity));
        Word { letters, arity }
    }

    pub fn empty(arity: usize) -> Self {
        Word {
            letters: Vec::new(),
            arity,
        }
    }

    /// A word over the trivial monoid given by its values.
    pub fn trivial(values: &[usize], arity: usize) -> Result<Self> {
        Word::new(
            values.iter().map(|&v| Letter::new(v, MonoidElement::Trivial)).collect(),
            arity,
        )
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = usize> + '_ {
        self.letters.iter().map(|l| l.value)
    }

    /// Same letters, different arity.
    pub fn with_arity(&self, arity: usize) -> Result<Self> {
        Word::new(self.letters.clone(), arity)
    }

    /// Concatenation of two words of the same arity.
    pub fn concat(&self, other: &Word) -> Result<Word> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: other.arity,
            });
        }
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        Ok(Word::from_parts(letters, self.arity))
    }

    /// Check every pigment against `m`.
    pub fn check_monoid(&self, m: &MonoidSpec) -> Result<()> {
        self.letters.iter().try_for_each(|l| m.check(&l.pigment))
    }

    /// Shortlex comparison used to list classes canonically.
    pub fn shortlex_cmp(&self, other: &Word) -> std::cmp::Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.letters.cmp(&other.letters))
    }

    /// Render with the grammar `_ | INT^PIGMENT ( INT^PIGMENT)*`.
    pub fn display<'a>(&'a self, m: &'a MonoidSpec) -> WordDisplay<'a> {
        WordDisplay { word: self, monoid: m }
    }

    pub fn render(&self, m: &MonoidSpec) -> String {
        self.display(m).to_string()
    }

    /// Parse a word. With `arity = None` the arity is the largest value,
    /// and `_` is rejected since it has no values to infer from.
    pub fn parse(text: &str, m: &MonoidSpec, arity: Option<usize>) -> Result<Word> {
        let trimmed = text.trim();
        if trimmed == "_" {
            return match arity {
                Some(n) => Ok(Word::empty(n)),
                None => parse_err(text.find('_').unwrap_or(0), "the empty word `_` needs an explicit arity"),
            };
        }
        if trimmed.is_empty() {
            return parse_err(0, "expected a word, use `_` for the empty word");
        }
        let mut letters = Vec::new();
        let base = text.as_ptr() as usize;
        for token in text.split_whitespace() {
            let pos = token.as_ptr() as usize - base;
            let Some((v, p)) = token.split_once('^') else {
                return parse_err(pos, format!("expected INT^PIGMENT, got {token:?}"));
            };
            let value = match v.parse::<usize>() {
                Ok(v) if v >= 1 => v,
                _ => return parse_err(pos, format!("expected a positive value, got {v:?}")),
            };
            let pigment = m.parse_element(p, pos + v.len() + 1)?;
            letters.push(Letter::new(value, pigment));
        }
        let max = letters.iter().map(|l| l.value).max().unwrap_or(0);
        Word::new(letters, arity.unwrap_or(max))
    }

    /// A random word of the given arity and length.
    pub fn random<R: Rng + ?Sized>(rng: &mut R, m: &MonoidSpec, arity: usize, len: usize) -> Word {
        if arity == 0 {
            return Word::empty(0);
        }
        let letters = (0..len)
            .map(|_| Letter::new(rng.gen_range(1..=arity), m.random_element(rng)))
            .collect();
        Word::from_parts(letters, arity)
    }

    /// Every word of the given arity and length at most `max_len` with
    /// pigments drawn from `pigments`, shortest first.
    pub fn all(arity: usize, max_len: usize, pigments: &[MonoidElement]) -> Vec<Word> {
        let alphabet: Vec<Letter> = (1..=arity)
            .flat_map(|v| pigments.iter().map(move |p| Letter::new(v, p.clone())))
            .collect();
        let mut out = vec![Word::empty(arity)];
        let mut layer = vec![Vec::new()];
        for _ in 0..max_len {
            if alphabet.is_empty() {
                break;
            }
            let mut next = Vec::with_capacity(layer.len() * alphabet.len());
            for w in &layer {
                for l in &alphabet {
                    let mut v: Vec<Letter> = Vec::clone(w);
                    v.push(l.clone());
                    next.push(v);
                }
            }
            out.extend(next.iter().map(|ls| Word::from_parts(ls.clone(), arity)));
            layer = next;
        }
        out
    }
}

pub struct WordDisplay<'a> {
    word: &'a Word,
    monoid: &'a MonoidSpec,
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "_");
        }
        for (i, l) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}^{}", l.value, self.monoid.format_element(&l.pigment))?;
        }
        Ok(())
    }
}

/// Left-multiply every pigment of `p` by `alpha`.
pub fn act(m: &MonoidSpec, alpha: &MonoidElement, p: &Word) -> Result<Word> {
    m.check(alpha)?;
    let letters = p
        .letters
        .iter()
        .map(|l| Ok(Letter::new(l.value, m.mul(alpha, &l.pigment)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Word::from_parts(letters, p.arity))
}

/// The superposition `p⟨args⟩`. With no arguments the result arity is 0;
/// use [`superpose_with_arity`] to pick another one.
pub fn superpose(m: &MonoidSpec, p: &Word, args: &[Word]) -> Result<Word> {
    let arity = args.first().map_or(0, |a| a.arity);
    superpose_with_arity(m, p, args, arity)
}

/// The superposition `p⟨args⟩` into words of arity `arity`.
pub fn superpose_with_arity(m: &MonoidSpec, p: &Word, args: &[Word], arity: usize) -> Result<Word> {
    if args.len() != p.arity {
        return Err(Error::ArityMismatch {
            expected: p.arity,
            found: args.len(),
        });
    }
    if let Some(a) = args.iter().find(|a| a.arity != arity) {
        return Err(Error::ArityMismatch {
            expected: arity,
            found: a.arity,
        });
    }
    p.check_monoid(m)?;
    let mut letters = Vec::new();
    for l in &p.letters {
        for q in &args[l.value - 1].letters {
            letters.push(Letter::new(q.value, m.mul(&l.pigment, &q.pigment)?));
        }
    }
    Ok(Word::from_parts(letters, arity))
}

/// The projection `i^e` of arity `n`.
pub fn projection(m: &MonoidSpec, i: usize, n: usize) -> Result<Word> {
    if i == 0 || i > n {
        return Err(Error::OutOfRange { value: i, arity: n });
    }
    Ok(Word::from_parts(vec![Letter::new(i, m.unit())], n))
}

pub fn reverse(p: &Word) -> Word {
    let mut letters = p.letters.clone();
    letters.reverse();
    Word::from_parts(letters, p.arity)
}

/// Apply a monoid morphism to every pigment.
pub fn map_pigments(phi: &MonoidMorphism, p: &Word) -> Result<Word> {
    let letters = p
        .letters
        .iter()
        .map(|l| Ok(Letter::new(l.value, phi.apply(&l.pigment)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Word::from_parts(letters, p.arity))
}

/// An expression over the generators `ε̄` (empty word of arity 0), `1^α`,
/// and `1^e 2^e`, built from superpositions and projections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenExpr {
    /// The nullary empty word, superposed into arity `n`.
    Empty(usize),
    /// The projection `i^e` of arity `n`.
    Proj(usize, usize),
    /// `1^α⟨child⟩`.
    Pigment(MonoidElement, Box<GenExpr>),
    /// `1^e 2^e⟨left, right⟩`.
    Concat(Box<GenExpr>, Box<GenExpr>),
}

/// Decompose `p` as `1^e 2^e⟨p', 1^α⟨i^e⟩⟩` where `p = p' · i^α`.
pub fn decompose(p: &Word) -> GenExpr {
    match p.letters.split_last() {
        None => GenExpr::Empty(p.arity),
        Some((last, init)) => GenExpr::Concat(
            Box::new(decompose(&Word::from_parts(init.to_vec(), p.arity))),
            Box::new(GenExpr::Pigment(
                last.pigment.clone(),
                Box::new(GenExpr::Proj(last.value, p.arity)),
            )),
        ),
    }
}

/// Evaluate a generator expression using only superposition and projections.
pub fn evaluate(m: &MonoidSpec, e: &GenExpr) -> Result<Word> {
    match e {
        GenExpr::Empty(n) => superpose_with_arity(m, &Word::empty(0), &[], *n),
        GenExpr::Proj(i, n) => projection(m, *i, *n),
        GenExpr::Pigment(alpha, child) => {
            let gen = Word::new(vec![Letter::new(1, alpha.clone())], 1)?;
            superpose(m, &gen, &[evaluate(m, child)?])
        }
        GenExpr::Concat(l, r) => {
            let gen = Word::new(vec![Letter::new(1, m.unit()), Letter::new(2, m.unit())], 2)?;
            superpose(m, &gen, &[evaluate(m, l)?, evaluate(m, r)?])
        }
    }
}
