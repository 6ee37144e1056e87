//! Exhaustive agreement check between the rewriting system and the Munn tree
//! oracle over every word up to a length bound.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::munn::{munn_tree, OracleKey};
use crate::rewrite::normal_form;
use crate::words::{enumerate_words, OrderSpec, Word};

/// Largest universe a sweep will enumerate.
pub const MAX_SWEEP_WORDS: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SweepError {
    #[error("universe of {words} words exceeds the limit of {limit}")]
    TooLarge { words: u64, limit: u64 },
}

/// Number of words over `ngen` generators of length at most `max_len`,
/// saturating on overflow.
pub fn universe_size(ngen: usize, max_len: usize) -> u64 {
    let letters = 2 * ngen as u64;
    let mut total: u64 = 0;
    let mut layer: u64 = 1;
    for _ in 0..=max_len {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(letters);
        if letters == 0 {
            layer = 0;
        }
    }
    total
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub generators: usize,
    pub max_len: usize,
    pub words: usize,
    pub classes: usize,
    /// Classes whose members received more than one normal form.
    pub split_classes: usize,
    /// Normal forms shared by more than one class.
    pub merged_classes: usize,
    /// Words whose normal form lies in a different oracle class.
    pub foreign_normal_forms: usize,
    /// Classes whose normal form is not of minimal length among members.
    pub length_exceptions: usize,
    /// Classes whose normal form is not the deg-lex least shortest member.
    pub not_least: usize,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl OracleReport {
    pub fn passed(&self) -> bool {
        self.words > 0
            && self.split_classes == 0
            && self.merged_classes == 0
            && self.foreign_normal_forms == 0
            && self.length_exceptions == 0
            && self.not_least == 0
    }
}

/// Normalize every word over `ngen` generators of length at most `max_len`
/// and compare the induced partition with the oracle's.
pub fn oracle_sweep(ngen: usize, max_len: usize, ord: &OrderSpec) -> Result<OracleReport, SweepError> {
    let size = universe_size(ngen, max_len);
    if size > MAX_SWEEP_WORDS {
        return Err(SweepError::TooLarge {
            words: size,
            limit: MAX_SWEEP_WORDS,
        });
    }
    let started = Instant::now();
    let mut classes: BTreeMap<OracleKey, Vec<(Word, Word)>> = BTreeMap::new();
    let mut foreign = 0;
    let mut words = 0;
    for w in enumerate_words(ngen, max_len) {
        let key = munn_tree(&w).key();
        let nf = normal_form(&w, ord);
        if munn_tree(&nf).key() != key {
            foreign += 1;
        }
        words += 1;
        classes.entry(key).or_default().push((w, nf));
    }

    let mut owners: BTreeMap<Word, usize> = BTreeMap::new();
    let (mut split, mut length_exceptions, mut not_least) = (0, 0, 0);
    for members in classes.values() {
        let nf = &members[0].1;
        if members.iter().any(|(_, m)| m != nf) {
            split += 1;
        }
        *owners.entry(nf.clone()).or_default() += 1;
        let least = members
            .iter()
            .map(|(w, _)| w)
            .min_by(|u, v| ord.cmp_words(u, v))
            .expect("nonempty class");
        if least.len() != nf.len() {
            length_exceptions += 1;
        }
        if least != nf {
            not_least += 1;
        }
    }
    let merged = owners.values().filter(|&&n| n > 1).count();

    Ok(OracleReport {
        generators: ngen,
        max_len,
        words,
        classes: classes.len(),
        split_classes: split,
        merged_classes: merged,
        foreign_normal_forms: foreign,
        length_exceptions,
        not_least,
        elapsed: started.elapsed(),
    })
}
