//! Idempotents of the free inverse monoid and their factor structure.
//!
//! Formal idempotents are exactly the words whose free-group walk is closed.
//! Splitting a closed walk at every return to its base vertex gives the prime
//! factors `x⁻¹·h·x`; recursing into each `h` gives an [`IdempotentTree`].
//! In this decomposition no factor of `h` can start with `x` (that would step
//! back to the base), so a word is a canonical idempotent exactly when
//! sibling factors have pairwise distinct first letters at every level, and
//! an ordered one when those first letters strictly increase.

use thiserror::Error;

use crate::rewrite;
use crate::words::{Letter, OrderSpec, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdempotentError {
    #[error("word is not an idempotent")]
    NotIdempotent,
    #[error("empty word has no first letter")]
    EmptyWord,
}

/// Factor tree of an idempotent: a product of prime factors.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IdempotentTree {
    factors: Vec<PrimeFactor>,
}

/// A prime factor `x⁻¹·h·x`, stored as the closing letter `x` and the inner
/// idempotent `h`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeFactor {
    bracket: Letter,
    inner: IdempotentTree,
}

impl PrimeFactor {
    pub fn bracket(&self) -> Letter {
        self.bracket
    }

    pub fn inner(&self) -> &IdempotentTree {
        &self.inner
    }

    /// `fir(x⁻¹hx) = x⁻¹`.
    pub fn first_letter(&self) -> Letter {
        self.bracket.inverse()
    }

    pub fn last_letter(&self) -> Letter {
        self.bracket
    }

    pub fn flatten(&self) -> Word {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        Word::from_letters(out)
    }

    fn flatten_into(&self, out: &mut Vec<Letter>) {
        out.push(self.bracket.inverse());
        self.inner.flatten_into(out);
        out.push(self.bracket);
    }
}

impl IdempotentTree {
    pub fn factors(&self) -> &[PrimeFactor] {
        &self.factors
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn first_letters(&self) -> impl Iterator<Item = Letter> + '_ {
        self.factors.iter().map(PrimeFactor::first_letter)
    }

    pub fn flatten(&self) -> Word {
        let mut out = Vec::new();
        self.flatten_into(&mut out);
        Word::from_letters(out)
    }

    fn flatten_into(&self, out: &mut Vec<Letter>) {
        for f in &self.factors {
            f.flatten_into(out);
        }
    }

    pub fn is_canonical(&self) -> bool {
        let firsts: Vec<Letter> = self.first_letters().collect();
        firsts.iter().enumerate().all(|(i, l)| !firsts[..i].contains(l))
            && self.factors.iter().all(|f| f.inner.is_canonical())
    }

    pub fn is_ordered(&self, ord: &OrderSpec) -> bool {
        let firsts: Vec<Letter> = self.first_letters().collect();
        firsts.windows(2).all(|p| ord.rank(p[0]) < ord.rank(p[1]))
            && self.factors.iter().all(|f| f.inner.is_ordered(ord))
    }
}

/// Flags reported by [`classify`]. `prime` and `ordered` are only set for
/// canonical idempotents.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, serde::Serialize)]
pub struct Classification {
    pub idempotent: bool,
    pub canonical: bool,
    pub prime: bool,
    pub ordered: bool,
}

struct Frame {
    opening: Option<Letter>,
    firsts: Vec<Letter>,
}

/// Single pass over the walk. Returns `None` if `w` is not closed.
fn scan(w: &[Letter], ord: Option<&OrderSpec>) -> Option<Classification> {
    let mut stack = vec![Frame {
        opening: None,
        firsts: Vec::new(),
    }];
    let mut canonical = true;
    let mut ordered = true;
    for &l in w {
        let top = stack.last_mut().expect("root frame");
        if top.opening == Some(l.inverse()) {
            stack.pop();
            continue;
        }
        if top.firsts.contains(&l) {
            canonical = false;
        }
        if let (Some(ord), Some(&prev)) = (ord, top.firsts.last()) {
            if ord.rank(prev) >= ord.rank(l) {
                ordered = false;
            }
        }
        top.firsts.push(l);
        stack.push(Frame {
            opening: Some(l),
            firsts: Vec::new(),
        });
    }
    if stack.len() != 1 {
        return None;
    }
    let ordered = canonical && ordered && ord.is_some();
    Some(Classification {
        idempotent: true,
        canonical,
        prime: canonical && stack[0].firsts.len() == 1,
        ordered,
    })
}

pub fn is_idempotent(w: &[Letter]) -> bool {
    crate::words::free_reduce(w).is_empty()
}

pub fn is_canonical(w: &[Letter]) -> bool {
    scan(w, None).is_some_and(|c| c.canonical)
}

pub fn is_prime_canonical(w: &[Letter]) -> bool {
    scan(w, None).is_some_and(|c| c.prime)
}

pub fn is_ordered_canonical(w: &[Letter], ord: &OrderSpec) -> bool {
    scan(w, Some(ord)).is_some_and(|c| c.ordered)
}

pub fn is_ordered_prime_canonical(w: &[Letter], ord: &OrderSpec) -> bool {
    scan(w, Some(ord)).is_some_and(|c| c.ordered && c.prime)
}

/// All four flags at once; every flag is false for a non-idempotent.
pub fn classify(w: &[Letter], ord: &OrderSpec) -> Classification {
    scan(w, Some(ord)).unwrap_or_default()
}

pub fn fir(w: &[Letter]) -> Result<Letter, IdempotentError> {
    w.first().copied().ok_or(IdempotentError::EmptyWord)
}

/// Decompose an idempotent into its prime-factor tree.
pub fn parse_idempotent(w: &[Letter]) -> Result<IdempotentTree, IdempotentError> {
    let mut stack: Vec<(Option<Letter>, Vec<PrimeFactor>)> = vec![(None, Vec::new())];
    for &l in w {
        if stack.last().and_then(|t| t.0) == Some(l.inverse()) {
            let (_, factors) = stack.pop().expect("open frame");
            let factor = PrimeFactor {
                bracket: l,
                inner: IdempotentTree { factors },
            };
            stack.last_mut().expect("parent frame").1.push(factor);
        } else {
            stack.push((Some(l), Vec::new()));
        }
    }
    if stack.len() != 1 {
        return Err(IdempotentError::NotIdempotent);
    }
    let (_, factors) = stack.pop().expect("root frame");
    Ok(IdempotentTree { factors })
}

/// The ordered canonical idempotent equal to `e`, obtained by rewriting `e`
/// to its normal form.
pub fn canonicalize_idempotent(e: &[Letter], ord: &OrderSpec) -> Result<Word, IdempotentError> {
    if !is_idempotent(e) {
        return Err(IdempotentError::NotIdempotent);
    }
    let nf = rewrite::normal_form(e, ord);
    assert!(
        is_ordered_canonical(&nf, ord),
        "normal form of an idempotent must be an ordered canonical idempotent"
    );
    Ok(nf)
}
