//! Test-side reference implementations. Nothing here calls into the
//! library's classifiers or rewriting engine.

#![allow(dead_code)]

pub mod grammar;
pub mod props;

use std::cmp::Ordering;

use freeinv::{Letter, Word};
use rand::Rng;

/// Parse compact syntax over `a..z` without the library parser.
pub fn w(text: &str) -> Word {
    text.chars()
        .map(|c| {
            let g = (c.to_ascii_lowercase() as u8 - b'a') as u16;
            Letter::new(g, c.is_ascii_uppercase())
        })
        .collect()
}

pub fn show(word: &[Letter]) -> String {
    word.iter()
        .map(|l| {
            let c = (b'a' + l.generator() as u8) as char;
            if l.is_inverse() {
                c.to_ascii_uppercase()
            } else {
                c
            }
        })
        .collect()
}

/// Rank under `a < A < b < B < …`.
pub fn rank(l: Letter) -> u32 {
    2 * l.generator() as u32 + l.is_inverse() as u32
}

pub fn deg_lex(u: &[Letter], v: &[Letter]) -> Ordering {
    u.len()
        .cmp(&v.len())
        .then_with(|| u.iter().map(|&l| rank(l)).cmp(v.iter().map(|&l| rank(l))))
}

pub fn inverse(l: Letter) -> Letter {
    Letter::new(l.generator(), !l.is_inverse())
}

/// Free-group reduction by repeated leftmost cancellation.
pub fn reduce(word: &[Letter]) -> Vec<Letter> {
    let mut v = word.to_vec();
    loop {
        match v.windows(2).position(|p| p[1] == inverse(p[0])) {
            Some(i) => {
                v.drain(i..i + 2);
            }
            None => return v,
        }
    }
}

pub fn closed(word: &[Letter]) -> bool {
    reduce(word).is_empty()
}

pub fn cat(parts: &[&[Letter]]) -> Word {
    parts.iter().flat_map(|p| p.iter().copied()).collect()
}

/// All words over `ngen` generators of length exactly `len`.
pub fn words_of_len(ngen: usize, len: usize) -> Vec<Word> {
    let letters: Vec<Letter> = (0..ngen as u16)
        .flat_map(|g| [Letter::new(g, false), Letter::new(g, true)])
        .collect();
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|p: Vec<Letter>| {
                letters.iter().map(move |&l| {
                    let mut q = p.clone();
                    q.push(l);
                    q
                })
            })
            .collect();
    }
    out.into_iter().map(Word::from).collect()
}

pub fn words_up_to(ngen: usize, max_len: usize) -> Vec<Word> {
    (0..=max_len).flat_map(|n| words_of_len(ngen, n)).collect()
}

/// All closed walks (idempotents) over `ngen` generators of length at most
/// `max_len`, found by depth-first search on the free-group stack.
pub fn idempotents_up_to(ngen: usize, max_len: usize) -> Vec<Word> {
    fn go(ngen: usize, max_len: usize, word: &mut Vec<Letter>, stack: &mut Vec<Letter>, out: &mut Vec<Word>) {
        if stack.is_empty() {
            out.push(Word::from(word.clone()));
        }
        for g in 0..ngen as u16 {
            for inv in [false, true] {
                let l = Letter::new(g, inv);
                let popped = stack.last() == Some(&inverse(l));
                let depth = if popped { stack.len() - 1 } else { stack.len() + 1 };
                // must still be able to walk back to the root
                if word.len() + 1 + depth > max_len {
                    continue;
                }
                if popped {
                    stack.pop();
                } else {
                    stack.push(l);
                }
                word.push(l);
                go(ngen, max_len, word, stack, out);
                word.pop();
                if popped {
                    stack.push(inverse(l));
                } else {
                    stack.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    go(ngen, max_len, &mut Vec::new(), &mut Vec::new(), &mut out);
    out
}

pub fn random_word<R: Rng>(rng: &mut R, ngen: usize, max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    (0..len)
        .map(|_| Letter::new(rng.gen_range(0..ngen as u16), rng.gen_bool(0.5)))
        .collect()
}

/// A random closed walk of length at most `max_len`.
pub fn random_idempotent<R: Rng>(rng: &mut R, ngen: usize, max_len: usize) -> Word {
    let half = rng.gen_range(0..=max_len / 2);
    let mut word = Vec::new();
    let mut stack: Vec<Letter> = Vec::new();
    let mut budget = 2 * half;
    while budget > 0 {
        let must_close = stack.len() == budget;
        if !stack.is_empty() && (must_close || rng.gen_bool(0.5)) {
            let top = stack.pop().unwrap();
            word.push(inverse(top));
        } else {
            let l = loop {
                let l = Letter::new(rng.gen_range(0..ngen as u16), rng.gen_bool(0.5));
                if stack.last() != Some(&inverse(l)) {
                    break l;
                }
            };
            stack.push(l);
            word.push(l);
        }
        budget -= 1;
    }
    Word::from(word)
}

/// A word of length at most `max_len` assembled from random idempotents and
/// single letters, so that it tends to contain many redexes.
pub fn random_rich_word<R: Rng>(rng: &mut R, ngen: usize, max_len: usize) -> Word {
    let mut word: Vec<Letter> = Vec::new();
    loop {
        let piece = if rng.gen_bool(0.7) {
            random_idempotent(rng, ngen, 6).into_letters()
        } else {
            vec![Letter::new(rng.gen_range(0..ngen as u16), rng.gen_bool(0.5))]
        };
        if word.len() + piece.len() > max_len {
            return Word::from(word);
        }
        word.extend(piece);
    }
}
