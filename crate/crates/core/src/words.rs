//! Involutive alphabet, words over it, and the deg-lex order.
//!
//! A generator set `X` is declared up front as an [`Alphabet`]. Letters of
//! `Y = X ∪ X⁻¹` are [`Letter`] values that refer to generators by index, so
//! every algebraic operation works without touching generator names. Names
//! only matter when words are parsed or printed.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Deref, Index};
use std::slice::SliceIndex;

use thiserror::Error;

/// A letter of `Y`: a generator, or its formal inverse.
///
/// The derived ordering is `x₁ < x₁⁻¹ < x₂ < x₂⁻¹ < …`, which is also the
/// default [`OrderSpec`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    generator: u16,
    inverted: bool,
}

impl Letter {
    pub const fn new(generator: u16, inverted: bool) -> Self {
        Letter { generator, inverted }
    }

    pub const fn positive(generator: u16) -> Self {
        Letter::new(generator, false)
    }

    pub const fn negative(generator: u16) -> Self {
        Letter::new(generator, true)
    }

    pub const fn generator(self) -> u16 {
        self.generator
    }

    pub const fn is_inverse(self) -> bool {
        self.inverted
    }

    pub const fn inverse(self) -> Self {
        Letter::new(self.generator, !self.inverted)
    }

    /// Dense index `2·generator + inverted`, used for rank tables.
    pub const fn code(self) -> usize {
        2 * self.generator as usize + self.inverted as usize
    }

    pub const fn from_code(code: usize) -> Self {
        Letter::new((code / 2) as u16, code % 2 == 1)
    }
}

/// A finite word over `Y`. The empty word is the identity.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<Letter>);

impl Word {
    pub const fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    /// Concatenation `self · other`.
    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(self.len() + other.len());
        out.extend_from_slice(&self.0);
        out.extend_from_slice(other);
        Word(out)
    }

    /// Formal inverse: reverse the word and invert every letter.
    pub fn invert(&self) -> Word {
        invert(&self.0)
    }

    pub fn free_reduce(&self) -> Word {
        free_reduce(&self.0)
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Largest generator index used plus one (0 for the empty word).
    pub fn generator_span(&self) -> usize {
        self.0.iter().map(|l| l.generator() as usize + 1).max().unwrap_or(0)
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl<I: SliceIndex<[Letter]>> Index<I> for Word {
    type Output = I::Output;

    fn index(&self, i: I) -> &I::Output {
        &self.0[i]
    }
}

impl From<Vec<Letter>> for Word {
    fn from(letters: Vec<Letter>) -> Self {
        Word(letters)
    }
}

impl From<&[Letter]> for Word {
    fn from(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl<'a> IntoIterator for &'a Word {
    type Item = &'a Letter;
    type IntoIter = std::slice::Iter<'a, Letter>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// `(y₁⋯yₙ)⁻¹ = yₙ⁻¹⋯y₁⁻¹`.
pub fn invert(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| l.inverse()).collect()
}

/// Free-group reduction: cancel adjacent `y·y⁻¹` pairs until none remain.
pub fn free_reduce(w: &[Letter]) -> Word {
    let mut stack: Vec<Letter> = Vec::with_capacity(w.len());
    for &l in w {
        if stack.last() == Some(&l.inverse()) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    Word(stack)
}

/// Compare two words in deg-lex order under `ord`: length first, then
/// letter by letter.
pub fn deg_lex_cmp(u: &[Letter], v: &[Letter], ord: &OrderSpec) -> Result<Ordering, OrderError> {
    for &l in u.iter().chain(v) {
        if ord.try_rank(l).is_none() {
            return Err(OrderError::UnknownLetter(l));
        }
    }
    Ok(ord.cmp_words(u, v))
}

/// Every word over `ngen` generators of length at most `max_len`, in
/// deg-lex order under the default letter order.
pub fn enumerate_words(ngen: usize, max_len: usize) -> impl Iterator<Item = Word> {
    let base = 2 * ngen;
    (0..=max_len).flat_map(move |len| {
        let count = if base == 0 {
            usize::from(len == 0)
        } else {
            base.pow(len as u32)
        };
        (0..count).map(move |mut n| {
            let mut letters = vec![Letter::from_code(0); len];
            for slot in letters.iter_mut().rev() {
                *slot = Letter::from_code(n % base);
                n /= base;
            }
            Word(letters)
        })
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("letter {0:?} is not ranked by the order")]
    UnknownLetter(Letter),
    #[error("letter {0:?} is ranked twice")]
    Duplicate(Letter),
    #[error("letter {0:?} is missing from the order")]
    Missing(Letter),
}

/// A total order on `Y`, extended to words by deg-lex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderSpec {
    ranking: Vec<Letter>,
    rank: Vec<u32>,
}

impl OrderSpec {
    /// `x₁ < x₁⁻¹ < x₂ < x₂⁻¹ < …` over `ngen` generators.
    pub fn default_for(ngen: usize) -> Self {
        let ranking: Vec<Letter> = (0..2 * ngen).map(Letter::from_code).collect();
        let rank = (0..2 * ngen as u32).collect();
        OrderSpec { ranking, rank }
    }

    /// Build an order from a ranking (earlier = smaller) that must list every
    /// letter over `ngen` generators exactly once.
    pub fn new(ranking: Vec<Letter>, ngen: usize) -> Result<Self, OrderError> {
        let mut rank = vec![u32::MAX; 2 * ngen];
        for (i, &l) in ranking.iter().enumerate() {
            let slot = rank.get_mut(l.code()).ok_or(OrderError::UnknownLetter(l))?;
            if *slot != u32::MAX {
                return Err(OrderError::Duplicate(l));
            }
            *slot = i as u32;
        }
        if let Some(code) = rank.iter().position(|&r| r == u32::MAX) {
            return Err(OrderError::Missing(Letter::from_code(code)));
        }
        Ok(OrderSpec { ranking, rank })
    }

    pub fn generators(&self) -> usize {
        self.rank.len() / 2
    }

    pub fn ranking(&self) -> &[Letter] {
        &self.ranking
    }

    pub fn try_rank(&self, l: Letter) -> Option<u32> {
        self.rank.get(l.code()).copied()
    }

    /// Rank of `l`.
    ///
    /// Panics if `l` lies outside the ordered alphabet; use
    /// [`deg_lex_cmp`] for unchecked input.
    pub fn rank(&self, l: Letter) -> u32 {
        match self.try_rank(l) {
            Some(r) => r,
            None => panic!("letter {l:?} outside an alphabet of {} generators", self.generators()),
        }
    }

    pub fn cmp_letters(&self, a: Letter, b: Letter) -> Ordering {
        self.rank(a).cmp(&self.rank(b))
    }

    /// Deg-lex comparison for words already known to lie in the alphabet.
    pub fn cmp_words(&self, u: &[Letter], v: &[Letter]) -> Ordering {
        u.len().cmp(&v.len()).then_with(|| {
            u.iter()
                .zip(v)
                .map(|(&a, &b)| self.cmp_letters(a, b))
                .find(|o| o.is_ne())
                .unwrap_or(Ordering::Equal)
        })
    }

    pub fn less(&self, u: &[Letter], v: &[Letter]) -> bool {
        self.cmp_words(u, v) == Ordering::Less
    }
}

/// How words are written as text.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SyntaxMode {
    /// Single lowercase letters; uppercase (or a trailing `'`) is the inverse.
    #[default]
    Compact,
    /// Whitespace-separated generator names, each optionally followed by `'`.
    Verbose,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("malformed token `{0}`")]
    Malformed(String),
    #[error("`{0}` is not a declared generator")]
    UnknownGenerator(String),
    #[error("invalid generator name `{0}`")]
    InvalidName(String),
    #[error("generator `{0}` declared twice")]
    DuplicateGenerator(String),
    #[error("too many generators")]
    TooManyGenerators,
}

/// The declared generator set `X`, in declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, ParseError> {
        let mut out: Vec<String> = Vec::new();
        for name in names {
            let name = name.into();
            if !is_valid_name(&name) {
                return Err(ParseError::InvalidName(name));
            }
            if out.contains(&name) {
                return Err(ParseError::DuplicateGenerator(name));
            }
            out.push(name);
        }
        if out.len() > u16::MAX as usize {
            return Err(ParseError::TooManyGenerators);
        }
        Ok(Alphabet { names: out })
    }

    /// `a, b, c, …` for up to 26 generators, `x27, x28, …` beyond that.
    pub fn standard(ngen: usize) -> Self {
        let names = (0..ngen)
            .map(|i| {
                if i < 26 {
                    ((b'a' + i as u8) as char).to_string()
                } else {
                    format!("x{}", i + 1)
                }
            })
            .collect();
        Alphabet { names }
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, generator: u16) -> &str {
        &self.names[generator as usize]
    }

    pub fn generator(&self, name: &str) -> Option<u16> {
        self.names.iter().position(|n| n == name).map(|i| i as u16)
    }

    /// True when every name is a single ASCII lowercase letter.
    pub fn supports_compact(&self) -> bool {
        self.names
            .iter()
            .all(|n| n.len() == 1 && n.as_bytes()[0].is_ascii_lowercase())
    }

    pub fn default_order(&self) -> OrderSpec {
        OrderSpec::default_for(self.len())
    }

    pub fn contains(&self, l: Letter) -> bool {
        (l.generator() as usize) < self.len()
    }

    pub fn format_letter(&self, l: Letter, mode: SyntaxMode) -> String {
        let name = self.name(l.generator());
        match mode {
            SyntaxMode::Compact if self.supports_compact() => {
                if l.is_inverse() {
                    name.to_ascii_uppercase()
                } else {
                    name.to_string()
                }
            }
            _ => {
                if l.is_inverse() {
                    format!("{name}'")
                } else {
                    name.to_string()
                }
            }
        }
    }
}

fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Parse `text` into a word over `alphabet`.
pub fn parse_word(text: &str, alphabet: &Alphabet, mode: SyntaxMode) -> Result<Word, ParseError> {
    match mode {
        SyntaxMode::Compact => parse_compact(text, alphabet),
        SyntaxMode::Verbose => text
            .split_whitespace()
            .map(|tok| parse_verbose_token(tok, alphabet))
            .collect(),
    }
}

fn parse_compact(text: &str, alphabet: &Alphabet) -> Result<Word, ParseError> {
    let mut letters = Vec::with_capacity(text.len());
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        let primed = chars.next_if_eq(&'\'').is_some();
        let token = || {
            if primed {
                format!("{c}'")
            } else {
                c.to_string()
            }
        };
        let (name, inverted) = if c.is_ascii_lowercase() {
            (c, primed)
        } else if c.is_ascii_uppercase() && !primed {
            (c.to_ascii_lowercase(), true)
        } else {
            return Err(ParseError::Malformed(token()));
        };
        let mut buf = [0u8; 4];
        let generator = alphabet
            .generator(name.encode_utf8(&mut buf))
            .ok_or_else(|| ParseError::UnknownGenerator(token()))?;
        letters.push(Letter::new(generator, inverted));
    }
    Ok(Word(letters))
}

fn parse_verbose_token(tok: &str, alphabet: &Alphabet) -> Result<Letter, ParseError> {
    let (name, inverted) = match tok.strip_suffix('\'') {
        Some(stem) => (stem, true),
        None => (tok, false),
    };
    if !is_valid_name(name) {
        return Err(ParseError::Malformed(tok.to_string()));
    }
    let generator = alphabet
        .generator(name)
        .ok_or_else(|| ParseError::UnknownGenerator(tok.to_string()))?;
    Ok(Letter::new(generator, inverted))
}

/// Canonical rendering of `w`. Compact mode falls back to verbose when the
/// alphabet has multi-character names.
pub fn format_word(w: &[Letter], alphabet: &Alphabet, mode: SyntaxMode) -> String {
    let sep = if mode == SyntaxMode::Compact && alphabet.supports_compact() {
        ""
    } else {
        " "
    };
    w.iter()
        .map(|&l| alphabet.format_letter(l, mode))
        .collect::<Vec<_>>()
        .join(sep)
}

/// Display adapter pairing a word with its alphabet.
pub struct Show<'a> {
    pub word: &'a [Letter],
    pub alphabet: &'a Alphabet,
    pub mode: SyntaxMode,
}

impl fmt::Display for Show<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self.word, self.alphabet, self.mode))
    }
}
