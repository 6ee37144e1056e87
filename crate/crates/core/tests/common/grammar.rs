//! Direct evaluation of the inductive definitions of idempotent, canonical,
//! prime and ordered words. Every decomposition permitted by the
//! definitions is explored; ordering is decided by comparing the word with
//! every permutation of its factors rather than by first letters.

use std::collections::BTreeSet;

use freeinv::Letter;

use super::{deg_lex, inverse};

type Firsts = BTreeSet<Vec<Letter>>;

pub struct Grammar {
    w: Vec<Letter>,
    idem: Vec<Vec<bool>>,
    /// Possible first-letter sequences of canonical factorizations of w[i..j].
    canon: Vec<Vec<Firsts>>,
    /// Same for ordered canonical factorizations.
    ordered: Vec<Vec<Firsts>>,
}

impl Grammar {
    pub fn new(w: &[Letter]) -> Self {
        let n = w.len();
        let mut g = Grammar {
            w: w.to_vec(),
            idem: vec![vec![false; n + 1]; n + 1],
            canon: vec![vec![Firsts::new(); n + 1]; n + 1],
            ordered: vec![vec![Firsts::new(); n + 1]; n + 1],
        };
        for i in 0..=n {
            // (i): the empty word
            g.idem[i][i] = true;
            g.canon[i][i].insert(Vec::new());
            g.ordered[i][i].insert(Vec::new());
        }
        for len in (2..=n).step_by(2) {
            for i in 0..=n - len {
                let j = i + len;
                g.fill(i, j);
            }
        }
        g
    }

    /// x⁻¹·h·x shape: returns x.
    fn bracket(&self, i: usize, j: usize) -> Option<Letter> {
        (j >= i + 2 && self.w[i] == inverse(self.w[j - 1])).then(|| self.w[j - 1])
    }

    pub fn prime_idempotent(&self, i: usize, j: usize) -> bool {
        self.bracket(i, j).is_some() && self.idem[i + 1][j - 1]
    }

    pub fn prime_canonical(&self, i: usize, j: usize) -> bool {
        match self.bracket(i, j) {
            Some(x) => self.canon[i + 1][j - 1].iter().any(|s| !s.contains(&x)),
            None => false,
        }
    }

    pub fn ordered_prime(&self, i: usize, j: usize) -> bool {
        match self.bracket(i, j) {
            Some(x) => self.ordered[i + 1][j - 1].iter().any(|s| !s.contains(&x)),
            None => false,
        }
    }

    /// Every way of cutting w[i..j] into consecutive pieces accepted by `piece`.
    fn cuts(&self, i: usize, j: usize, piece: &dyn Fn(usize, usize) -> bool) -> Vec<Vec<usize>> {
        if i == j {
            return vec![vec![i]];
        }
        let mut out = Vec::new();
        for k in (i + 2..=j).step_by(2) {
            if piece(i, k) {
                for mut rest in self.cuts(k, j, piece) {
                    rest.insert(0, i);
                    out.push(rest);
                }
            }
        }
        out
    }

    fn fill(&mut self, i: usize, j: usize) {
        // (ii) and (iii): one or more prime idempotents
        self.idem[i][j] = (i + 2..=j)
            .step_by(2)
            .any(|k| self.prime_idempotent(i, k) && self.idem[k][j]);

        let mut canon = Firsts::new();
        for cut in self.cuts(i, j, &|a, b| self.prime_canonical(a, b)) {
            let firsts: Vec<Letter> = cut[..cut.len() - 1].iter().map(|&a| self.w[a]).collect();
            let distinct: BTreeSet<Letter> = firsts.iter().copied().collect();
            if distinct.len() == firsts.len() {
                canon.insert(firsts);
            }
        }

        let mut ordered = Firsts::new();
        for cut in self.cuts(i, j, &|a, b| self.ordered_prime(a, b)) {
            let firsts: Vec<Letter> = cut[..cut.len() - 1].iter().map(|&a| self.w[a]).collect();
            let distinct: BTreeSet<Letter> = firsts.iter().copied().collect();
            if distinct.len() != firsts.len() {
                continue;
            }
            let pieces: Vec<&[Letter]> = cut.windows(2).map(|p| &self.w[p[0]..p[1]]).collect();
            if least_among_permutations(&self.w[i..j], &pieces) {
                ordered.insert(firsts);
            }
        }
        self.canon[i][j] = canon;
        self.ordered[i][j] = ordered;
    }

    pub fn is_idempotent(&self) -> bool {
        self.idem[0][self.w.len()]
    }

    pub fn is_canonical(&self) -> bool {
        !self.canon[0][self.w.len()].is_empty()
    }

    pub fn is_prime_canonical(&self) -> bool {
        self.prime_canonical(0, self.w.len())
    }

    pub fn is_ordered(&self) -> bool {
        !self.ordered[0][self.w.len()].is_empty()
    }

    pub fn is_ordered_prime(&self) -> bool {
        self.ordered_prime(0, self.w.len())
    }

    pub fn canonical_at(&self, i: usize, j: usize) -> bool {
        !self.canon[i][j].is_empty()
    }

    pub fn ordered_at(&self, i: usize, j: usize) -> bool {
        !self.ordered[i][j].is_empty()
    }

    /// Boundaries of the factors of a canonical idempotent.
    pub fn factor_cuts(&self) -> Vec<Vec<usize>> {
        let n = self.w.len();
        self.cuts(0, n, &|a, b| self.prime_canonical(a, b))
            .into_iter()
            .filter(|cut| {
                let firsts: BTreeSet<Letter> = cut[..cut.len() - 1].iter().map(|&a| self.w[a]).collect();
                firsts.len() == cut.len() - 1
            })
            .collect()
    }
}

fn least_among_permutations(word: &[Letter], pieces: &[&[Letter]]) -> bool {
    let mut idx: Vec<usize> = (0..pieces.len()).collect();
    loop {
        let product: Vec<Letter> = idx.iter().flat_map(|&k| pieces[k].iter().copied()).collect();
        if deg_lex(word, &product).is_gt() {
            return false;
        }
        if !next_permutation(&mut idx) {
            return true;
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// True when `w` contains a subword x⁻¹·e·x·f·x⁻¹ with x⁻¹ex and xfx⁻¹ both
/// prime canonical.
pub fn has_forbidden_subword(w: &[Letter]) -> bool {
    let g = Grammar::new(w);
    let n = w.len();
    for i in 0..n {
        for m in (i + 2..=n).step_by(2) {
            if !g.prime_canonical(i, m) {
                continue;
            }
            for j in (m + 1..=n).step_by(2) {
                if g.prime_canonical(m - 1, j) {
                    return true;
                }
            }
        }
    }
    false
}
