//! Munn birooted trees: an independent solution of the word problem.
//!
//! The tree of a word is the set of free-group reductions of its prefixes,
//! a finite subtree of the Cayley graph of `F(X)` containing the identity.
//! Two words are equal in the free inverse monoid iff their trees and end
//! vertices coincide. Nothing here depends on the rewriting system.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::words::{enumerate_words, Letter, Word};

/// Vertices are sorted by length, then letter by letter under the default
/// letter order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MunnTree {
    vertices: Vec<Word>,
    end: Word,
}

fn shortlex(u: &Word, v: &Word) -> Ordering {
    u.len().cmp(&v.len()).then_with(|| u.letters().cmp(v.letters()))
}

impl MunnTree {
    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    /// Always the empty word.
    pub fn start(&self) -> Word {
        Word::empty()
    }

    pub fn end(&self) -> &Word {
        &self.end
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// `(parent, letter)` for each non-root vertex, in vertex order; the
    /// child is `parent · letter`.
    pub fn edges(&self) -> Vec<(Word, Letter)> {
        self.vertices
            .iter()
            .skip(1)
            .map(|v| {
                let (&last, parent) = v.split_last().expect("non-root vertex");
                (Word::from(parent), last)
            })
            .collect()
    }

    pub fn key(&self) -> OracleKey {
        let render = |w: &Word| {
            w.iter()
                .map(|l| {
                    if l.is_inverse() {
                        format!("{}'", l.generator())
                    } else {
                        l.generator().to_string()
                    }
                })
                .collect::<Vec<_>>()
                .join(".")
        };
        let vertices: Vec<String> = self.vertices.iter().map(render).collect();
        OracleKey(format!("{};{}", vertices.join("|"), render(&self.end)))
    }

    /// Length of the shortest walk from start to end covering every edge:
    /// each edge twice, except those on the start–end path.
    pub fn minimal_length(&self) -> usize {
        2 * self.edge_count() - self.end.len()
    }
}

/// Canonical string form of a Munn tree: sorted vertices joined by `|`, then
/// `;` and the end vertex. Letters are generator indices, `'` marks an
/// inverse, and `.` separates letters within a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OracleKey(String);

impl OracleKey {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for OracleKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

pub fn munn_tree(w: &[Letter]) -> MunnTree {
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    let mut prefix: Vec<Letter> = Vec::with_capacity(w.len());
    seen.insert(Word::empty());
    // reduced prefix maintained incrementally; equals free_reduce(w[..k])
    for &l in w {
        if prefix.last() == Some(&l.inverse()) {
            prefix.pop();
        } else {
            prefix.push(l);
            seen.insert(Word::from(prefix.as_slice()));
        }
    }
    let mut vertices: Vec<Word> = seen.into_iter().collect();
    vertices.sort_by(shortlex);
    MunnTree {
        vertices,
        end: prefix.into(),
    }
}

pub fn munn_equal(u: &[Letter], v: &[Letter]) -> bool {
    munn_tree(u) == munn_tree(v)
}

pub fn munn_minimal_length(w: &[Letter]) -> usize {
    munn_tree(w).minimal_length()
}

/// Partition every word over `ngen` generators of length at most `max_len`
/// by oracle key. Words within a class appear in deg-lex order (default
/// letter order).
pub fn class_representatives(ngen: usize, max_len: usize) -> BTreeMap<OracleKey, Vec<Word>> {
    let mut classes: BTreeMap<OracleKey, Vec<Word>> = BTreeMap::new();
    for w in enumerate_words(ngen, max_len) {
        classes.entry(munn_tree(&w).key()).or_default().push(w);
    }
    classes
}
