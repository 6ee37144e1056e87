//! Exhaustive structural checks on idempotents. Each returns
//! `(checked, failures)` with failing words rendered in compact syntax.

use freeinv::{is_canonical, is_idempotent, Word};

use super::grammar::{has_forbidden_subword, Grammar};
use super::{cat, closed, deg_lex, idempotents_up_to, show, words_up_to};

pub type Outcome = (usize, Vec<String>);

/// The recursive definition and the closed-walk criterion pick out the same
/// words.
pub fn grammar_matches_walk(ngen: usize, max_len: usize) -> Outcome {
    let mut failures = Vec::new();
    let words = words_up_to(ngen, max_len);
    for w in &words {
        let g = Grammar::new(w).is_idempotent();
        if g != closed(w) || g != is_idempotent(w) {
            failures.push(show(w));
        }
    }
    (words.len(), failures)
}

/// An idempotent is canonical iff it has no subword x⁻¹exfx⁻¹ with both
/// brackets prime canonical.
pub fn forbidden_subword_equivalence(ngen: usize, max_len: usize) -> Outcome {
    let mut failures = Vec::new();
    let words = idempotents_up_to(ngen, max_len);
    for w in &words {
        let canonical = Grammar::new(w).is_canonical();
        if canonical == has_forbidden_subword(w) || canonical != is_canonical(w) {
            failures.push(show(w));
        }
    }
    (words.len(), failures)
}

/// For e = a·b idempotent, a·e'·b is idempotent; conversely a·e'·b
/// idempotent forces a·b idempotent.
pub fn insertion_property(ngen: usize, max_e: usize, max_inserted: usize) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    let inserted = idempotents_up_to(ngen, max_inserted);
    for e in idempotents_up_to(ngen, max_e) {
        for cut in 0..=e.len() {
            let (a, b) = e.split_at(cut);
            for f in &inserted {
                checked += 1;
                if !closed(&cat(&[a, f, b])) {
                    failures.push(format!("{}|{}|{}", show(a), show(f), show(b)));
                }
            }
        }
    }
    for ab in words_up_to(ngen, max_e) {
        for cut in 0..=ab.len() {
            let (a, b) = ab.split_at(cut);
            for f in &inserted {
                checked += 1;
                if closed(&cat(&[a, f, b])) && !closed(&ab) {
                    failures.push(format!("{}|{}|{}", show(a), show(f), show(b)));
                }
            }
        }
    }
    (checked, failures)
}

/// Inside an ordered canonical idempotent, every adjacent pair of nonempty
/// ordered canonical idempotents e·f satisfies ef < fe.
pub fn ordered_adjacent_pairs(ngen: usize, max_len: usize) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for w in idempotents_up_to(ngen, max_len) {
        let g = Grammar::new(&w);
        if !g.is_ordered() {
            continue;
        }
        let n = w.len();
        for i in 0..n {
            for k in (i + 2..=n).step_by(2) {
                if !g.ordered_at(i, k) {
                    continue;
                }
                for j in (k + 2..=n).step_by(2) {
                    if !g.ordered_at(k, j) {
                        continue;
                    }
                    checked += 1;
                    let fe = cat(&[&w[k..j], &w[i..k]]);
                    if !deg_lex(&w[i..j], &fe).is_lt() {
                        failures.push(format!("{} at {i}..{k}..{j}", show(&w)));
                    }
                }
            }
        }
    }
    (checked, failures)
}

/// Splitting a factor e_t = uv (u, v nonempty) leaves neither
/// e_1⋯e_{t-1}u nor v e_{t+1}⋯e_n canonical.
pub fn split_factor_property(ngen: usize, max_len: usize) -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for w in idempotents_up_to(ngen, max_len) {
        let g = Grammar::new(&w);
        if !g.is_canonical() || w.is_empty() {
            continue;
        }
        let cuts = g.factor_cuts();
        if cuts.len() != 1 {
            failures.push(format!("{} has {} factorizations", show(&w), cuts.len()));
            continue;
        }
        let cut = &cuts[0];
        for t in cut.windows(2) {
            for s in t[0] + 1..t[1] {
                checked += 1;
                let left = Word::from(&w[..s]);
                let right = Word::from(&w[s..]);
                if Grammar::new(&left).is_canonical() || Grammar::new(&right).is_canonical() {
                    failures.push(format!("{} split at {s}", show(&w)));
                }
            }
        }
    }
    (checked, failures)
}
