//! The free-group walk of a word through the Cayley tree of `F(X)`.
//!
//! Prefix `k` of the word sits at vertex `vertex[k]`. A subword `w[i..j]` is
//! a closed walk (an idempotent) iff `vertex[i] == vertex[j]`, and the first
//! return after `i` delimits a single excursion, i.e. a prime factor.

use crate::words::Letter;

const NONE: usize = usize::MAX;

struct Node {
    parent: u32,
    via: Option<Letter>,
    children: Vec<(Letter, u32)>,
}

pub(crate) struct Walk {
    vertex: Vec<u32>,
    next_return: Vec<usize>,
}

impl Walk {
    pub fn new(w: &[Letter]) -> Self {
        let mut nodes = vec![Node {
            parent: 0,
            via: None,
            children: Vec::new(),
        }];
        let mut vertex = Vec::with_capacity(w.len() + 1);
        let mut at = 0u32;
        vertex.push(at);
        for &l in w {
            let node = &nodes[at as usize];
            at = if node.via == Some(l.inverse()) {
                node.parent
            } else if let Some(&(_, child)) = node.children.iter().find(|(c, _)| *c == l) {
                child
            } else {
                let child = nodes.len() as u32;
                nodes[at as usize].children.push((l, child));
                nodes.push(Node {
                    parent: at,
                    via: Some(l),
                    children: Vec::new(),
                });
                child
            };
            vertex.push(at);
        }

        let mut next_return = vec![NONE; vertex.len()];
        let mut last_seen = vec![NONE; nodes.len()];
        for k in (0..vertex.len()).rev() {
            let v = vertex[k] as usize;
            next_return[k] = last_seen[v];
            last_seen[v] = k;
        }
        Walk { vertex, next_return }
    }

    /// End (exclusive) of the excursion starting at letter `i`, if the walk
    /// ever comes back.
    pub fn excursion_end(&self, i: usize) -> Option<usize> {
        match self.next_return.get(i) {
            Some(&j) if j != NONE => Some(j),
            _ => None,
        }
    }

    pub fn is_closed(&self, i: usize, j: usize) -> bool {
        self.vertex[i] == self.vertex[j]
    }

    /// Split the closed range `[i, j)` into consecutive excursions.
    pub fn excursions(&self, i: usize, j: usize) -> Excursions<'_> {
        debug_assert!(self.is_closed(i, j));
        Excursions {
            walk: self,
            at: i,
            end: j,
        }
    }
}

pub(crate) struct Excursions<'a> {
    walk: &'a Walk,
    at: usize,
    end: usize,
}

impl Iterator for Excursions<'_> {
    type Item = (usize, usize);

    fn next(&mut self) -> Option<(usize, usize)> {
        if self.at >= self.end {
            return None;
        }
        let start = self.at;
        let stop = self.walk.excursion_end(start)?;
        self.at = stop;
        Some((start, stop))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::testing::w;

    #[test]
    fn excursions_of_closed_word() {
        let word = w("AabBaA");
        let walk = Walk::new(&word);
        assert!(walk.is_closed(0, 6));
        let parts: Vec<_> = walk.excursions(0, 6).collect();
        assert_eq!(parts, vec![(0, 2), (2, 4), (4, 6)]);
        assert_eq!(walk.excursion_end(1), None);
        assert_eq!(walk.excursion_end(2), Some(4));
    }

    #[test]
    fn open_walk_has_no_return() {
        let word = w("abBa");
        let walk = Walk::new(&word);
        assert_eq!(walk.excursion_end(0), None);
        assert_eq!(walk.excursion_end(1), Some(3));
        assert!(!walk.is_closed(0, 4));
    }
}
