//! The rewriting system for the free inverse monoid and its normal forms.
//!
//! Two relation schemas, both oriented to strictly decrease deg-lex:
//!
//! * (a) `ef → fe` where `e`, `f` are ordered prime canonical idempotents,
//!   `fir(e) ≠ fir(f)` and `fe < ef`;
//! * (b) `x⁻¹e'x·f'x⁻¹ → f'x⁻¹e'` where `x⁻¹e'x` and `xf'x⁻¹` are ordered
//!   prime canonical idempotents.
//!
//! The schemas are infinite, so instead of a rule table the engine matches
//! them structurally. An ordered prime canonical idempotent starting at a
//! given position is unique if it exists (it is the excursion ending at the
//! walk's first return), so each position carries at most one redex of each
//! kind.

use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

use crate::idempotent::{self, is_ordered_prime_canonical};
use crate::walk::Walk;
use crate::words::{Letter, OrderSpec, Word};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize)]
pub enum RuleKind {
    /// `(ef, fe)`
    #[serde(rename = "a")]
    A,
    /// `(x⁻¹e'xf'x⁻¹, f'x⁻¹e')`
    #[serde(rename = "b")]
    B,
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleKind::A => "a",
            RuleKind::B => "b",
        })
    }
}

/// The parameters a rule instance was built from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RuleSite {
    Commute {
        e: Word,
        f: Word,
    },
    /// `x` is the middle letter; `e` and `f` are the inner idempotents `e'`, `f'`.
    Collapse {
        x: Letter,
        e: Word,
        f: Word,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("letter outside the ordered alphabet")]
    OutsideOrder,
    #[error("not an ordered prime canonical idempotent")]
    NotOrderedPrime,
    #[error("factors share their first letter")]
    SharedFirstLetter,
    #[error("rule would not decrease deg-lex")]
    NotDecreasing,
}

/// A concrete instance of schema (a) or (b).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RuleInstance {
    site: RuleSite,
    lhs: Word,
    rhs: Word,
}

impl RuleInstance {
    /// Schema (a) instance `ef → fe`, checked against its side conditions.
    pub fn commute(e: Word, f: Word, ord: &OrderSpec) -> Result<Self, RuleError> {
        check_in_order(&[&e, &f], ord)?;
        if !is_ordered_prime_canonical(&e, ord) || !is_ordered_prime_canonical(&f, ord) {
            return Err(RuleError::NotOrderedPrime);
        }
        if e[0] == f[0] {
            return Err(RuleError::SharedFirstLetter);
        }
        let rule = Self::commute_unchecked(e, f);
        if !ord.less(&rule.rhs, &rule.lhs) {
            return Err(RuleError::NotDecreasing);
        }
        Ok(rule)
    }

    /// Schema (b) instance `x⁻¹e'x·f'x⁻¹ → f'x⁻¹e'`, checked against its side
    /// conditions.
    pub fn collapse(x: Letter, e: Word, f: Word, ord: &OrderSpec) -> Result<Self, RuleError> {
        check_in_order(&[&e, &f, &Word::from_letters(vec![x])], ord)?;
        let left: Word = std::iter::once(x.inverse())
            .chain(e.iter().copied())
            .chain([x])
            .collect();
        let right: Word = std::iter::once(x)
            .chain(f.iter().copied())
            .chain([x.inverse()])
            .collect();
        if !is_ordered_prime_canonical(&left, ord) || !is_ordered_prime_canonical(&right, ord) {
            return Err(RuleError::NotOrderedPrime);
        }
        Ok(Self::collapse_unchecked(x, e, f))
    }

    fn commute_unchecked(e: Word, f: Word) -> Self {
        let lhs = e.concat(&f);
        let rhs = f.concat(&e);
        RuleInstance {
            site: RuleSite::Commute { e, f },
            lhs,
            rhs,
        }
    }

    fn collapse_unchecked(x: Letter, e: Word, f: Word) -> Self {
        let xi = x.inverse();
        let mut lhs = Vec::with_capacity(e.len() + f.len() + 3);
        lhs.push(xi);
        lhs.extend_from_slice(&e);
        lhs.push(x);
        lhs.extend_from_slice(&f);
        lhs.push(xi);
        let mut rhs = Vec::with_capacity(e.len() + f.len() + 1);
        rhs.extend_from_slice(&f);
        rhs.push(xi);
        rhs.extend_from_slice(&e);
        RuleInstance {
            site: RuleSite::Collapse { x, e, f },
            lhs: lhs.into(),
            rhs: rhs.into(),
        }
    }

    pub fn kind(&self) -> RuleKind {
        match self.site {
            RuleSite::Commute { .. } => RuleKind::A,
            RuleSite::Collapse { .. } => RuleKind::B,
        }
    }

    pub fn site(&self) -> &RuleSite {
        &self.site
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Word {
        &self.rhs
    }

    /// Length of the leading prime of the left-hand side: `e` for (a),
    /// `x⁻¹e'x` for (b).
    pub fn head_len(&self) -> usize {
        match &self.site {
            RuleSite::Commute { e, .. } => e.len(),
            RuleSite::Collapse { e, .. } => e.len() + 2,
        }
    }
}

fn check_in_order(words: &[&Word], ord: &OrderSpec) -> Result<(), RuleError> {
    let ok = words.iter().flat_map(|w| w.iter()).all(|&l| ord.try_rank(l).is_some());
    if ok {
        Ok(())
    } else {
        Err(RuleError::OutsideOrder)
    }
}

/// A rule instance whose left-hand side occurs at `position`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Redex {
    pub position: usize,
    pub rule: RuleInstance,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteStep {
    pub position: usize,
    pub rule: RuleInstance,
    pub before: Word,
    pub after: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizationTrace {
    pub input: Word,
    pub steps: Vec<RewriteStep>,
    pub output: Word,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("left-hand side does not occur at position {0}")]
    LhsMismatch(usize),
}

#[derive(Clone, Copy, Debug)]
enum Site {
    /// `(start, split, end)`: `e = w[start..split]`, `f = w[split..end]`.
    Commute(usize, usize, usize),
    /// `(start, mid, end)`: `x = w[mid]`.
    Collapse(usize, usize, usize),
}

impl Site {
    fn start(self) -> usize {
        match self {
            Site::Commute(s, ..) | Site::Collapse(s, ..) => s,
        }
    }

    fn end(self) -> usize {
        match self {
            Site::Commute(.., e) | Site::Collapse(.., e) => e,
        }
    }

    fn instance(self, w: &[Letter]) -> RuleInstance {
        match self {
            Site::Commute(s, m, e) => RuleInstance::commute_unchecked(w[s..m].into(), w[m..e].into()),
            Site::Collapse(s, m, e) => {
                RuleInstance::collapse_unchecked(w[m], w[s + 1..m].into(), w[m + 1..e - 1].into())
            }
        }
    }

    fn rewrite(self, w: &[Letter]) -> Vec<Letter> {
        let mut out = Vec::with_capacity(w.len());
        out.extend_from_slice(&w[..self.start()]);
        match self {
            Site::Commute(s, m, e) => {
                out.extend_from_slice(&w[m..e]);
                out.extend_from_slice(&w[s..m]);
            }
            Site::Collapse(s, m, e) => {
                out.extend_from_slice(&w[m + 1..e - 1]);
                out.push(w[s]);
                out.extend_from_slice(&w[s + 1..m]);
            }
        }
        out.extend_from_slice(&w[self.end()..]);
        out
    }
}

/// Per-word index of ordered prime canonical idempotent subwords.
struct Scanner<'a> {
    w: &'a [Letter],
    ord: &'a OrderSpec,
    prime_end: Vec<Option<usize>>,
}

impl<'a> Scanner<'a> {
    fn new(w: &'a [Letter], ord: &'a OrderSpec) -> Self {
        let walk = Walk::new(w);
        let mut prime_end: Vec<Option<usize>> = vec![None; w.len()];
        // inner primes sit at larger positions, so fill right to left
        for i in (0..w.len()).rev() {
            let Some(end) = walk.excursion_end(i) else {
                continue;
            };
            let mut prev: Option<u32> = None;
            let ok = walk.excursions(i + 1, end - 1).all(|(s, _)| {
                let r = ord.rank(w[s]);
                let increasing = prev.is_none_or(|p| p < r);
                prev = Some(r);
                increasing && prime_end[s].is_some()
            });
            if ok {
                prime_end[i] = Some(end);
            }
        }
        Scanner { w, ord, prime_end }
    }

    fn prime(&self, i: usize) -> Option<usize> {
        self.prime_end.get(i).copied().flatten()
    }

    fn collapse_at(&self, i: usize) -> Option<Site> {
        let mid = self.prime(i)? - 1;
        let end = self.prime(mid)?;
        Some(Site::Collapse(i, mid, end))
    }

    fn commute_at(&self, i: usize) -> Option<Site> {
        let split = self.prime(i)?;
        let end = self.prime(split)?;
        (self.ord.rank(self.w[split]) < self.ord.rank(self.w[i])).then_some(Site::Commute(i, split, end))
    }

    /// Redexes in left-to-right order, (b) before (a) at the same position.
    fn sites(&self) -> impl Iterator<Item = Site> + '_ {
        (0..self.w.len()).flat_map(move |i| self.collapse_at(i).into_iter().chain(self.commute_at(i)))
    }
}

/// Every redex in `w`, in position order with (b) before (a) at a tie.
///
/// Letters of `w` must be ranked by `ord`.
pub fn find_redexes(w: &[Letter], ord: &OrderSpec) -> Vec<Redex> {
    Scanner::new(w, ord)
        .sites()
        .map(|site| Redex {
            position: site.start(),
            rule: site.instance(w),
        })
        .collect()
}

pub fn is_irreducible(w: &[Letter], ord: &OrderSpec) -> bool {
    Scanner::new(w, ord).sites().next().is_none()
}

/// Replace the occurrence of `rule.lhs` at `position` by `rule.rhs`.
pub fn apply_step(w: &[Letter], position: usize, rule: &RuleInstance) -> Result<Word, RewriteError> {
    let end = position + rule.lhs.len();
    if w.get(position..end) != Some(rule.lhs.letters()) {
        return Err(RewriteError::LhsMismatch(position));
    }
    let mut out = Vec::with_capacity(w.len());
    out.extend_from_slice(&w[..position]);
    out.extend_from_slice(&rule.rhs);
    out.extend_from_slice(&w[end..]);
    Ok(out.into())
}

/// The unique irreducible word equal to `w`; also the deg-lex least word of
/// its class.
pub fn normal_form(w: &[Letter], ord: &OrderSpec) -> Word {
    let mut current = w.to_vec();
    loop {
        let Some(site) = Scanner::new(&current, ord).sites().next() else {
            return current.into();
        };
        let next = site.rewrite(&current);
        debug_assert!(ord.less(&next, &current));
        current = next;
    }
}

/// [`normal_form`] with the full leftmost-redex step sequence.
pub fn normal_form_traced(w: &[Letter], ord: &OrderSpec) -> NormalizationTrace {
    let mut steps = Vec::new();
    let mut current = w.to_vec();
    loop {
        let Some(site) = Scanner::new(&current, ord).sites().next() else {
            break;
        };
        let next = site.rewrite(&current);
        steps.push(RewriteStep {
            position: site.start(),
            rule: site.instance(&current),
            before: current.into(),
            after: next.clone().into(),
        });
        current = next;
    }
    NormalizationTrace {
        input: w.into(),
        steps,
        output: current.into(),
    }
}

/// Normalize with a caller-chosen strategy: `choose` receives every redex of
/// the current word and returns the index of the one to contract.
///
/// Panics if `choose` returns an out-of-range index, or if a step fails to
/// decrease deg-lex.
pub fn normal_form_with<F>(w: &[Letter], ord: &OrderSpec, mut choose: F) -> NormalizationTrace
where
    F: FnMut(&[Redex]) -> usize,
{
    let mut steps: Vec<RewriteStep> = Vec::new();
    let mut current: Word = w.into();
    loop {
        let redexes = find_redexes(&current, ord);
        if redexes.is_empty() {
            break;
        }
        let Redex { position, rule } = redexes[choose(&redexes)].clone();
        let next = apply_step(&current, position, &rule).expect("redex lhs occurs at its position");
        assert!(ord.less(&next, &current), "rewrite step must decrease deg-lex");
        steps.push(RewriteStep {
            position,
            rule,
            before: current,
            after: next.clone(),
        });
        current = next;
    }
    NormalizationTrace {
        input: w.into(),
        steps,
        output: current,
    }
}

/// Decide equality in the free inverse monoid by comparing normal forms.
pub fn equal(u: &[Letter], v: &[Letter], ord: &OrderSpec) -> bool {
    normal_form(u, ord) == normal_form(v, ord)
}

/// Check that `w` has the shape `u₀e₁u₁⋯eₘuₘ` of an irreducible word:
///
/// * each `eᵢ` is a nonempty ordered canonical idempotent;
/// * `u₁, …, uₘ₋₁` are nonempty;
/// * `u₀u₁⋯uₘ` contains no `yy⁻¹`;
/// * no factor of `eᵢ` starts with the first letter of `uᵢ`, and none ends
///   with the last letter of `uᵢ₋₁`.
///
/// This searches decompositions directly and does not use the redex matcher.
pub fn validate_irr_structure(w: &[Letter], ord: &OrderSpec) -> bool {
    let mut search = IrrSearch {
        w,
        ord,
        walk: Walk::new(w),
        failed: HashSet::new(),
    };
    search.accepts(IrrState {
        pos: 0,
        concat_last: None,
        u_last: None,
        after_e: None,
    })
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct IrrState {
    pos: usize,
    /// Last letter of `u₀⋯uᵢ` so far.
    concat_last: Option<Letter>,
    /// Last letter of the current `uᵢ`, if it is nonempty.
    u_last: Option<Letter>,
    /// First letters of the factors of the `e` that just ended here.
    after_e: Option<Vec<Letter>>,
}

struct IrrSearch<'a> {
    w: &'a [Letter],
    ord: &'a OrderSpec,
    walk: Walk,
    failed: HashSet<IrrState>,
}

impl IrrSearch<'_> {
    fn accepts(&mut self, state: IrrState) -> bool {
        if state.pos == self.w.len() {
            return true;
        }
        if self.failed.contains(&state) {
            return false;
        }
        let c = self.w[state.pos];
        let extends =
            state.concat_last != Some(c.inverse()) && state.after_e.as_ref().is_none_or(|firsts| !firsts.contains(&c));
        if extends
            && self.accepts(IrrState {
                pos: state.pos + 1,
                concat_last: Some(c),
                u_last: Some(c),
                after_e: None,
            })
        {
            return true;
        }
        if state.after_e.is_none() {
            for end in (state.pos + 2..=self.w.len()).step_by(2) {
                if !self.walk.is_closed(state.pos, end) {
                    continue;
                }
                let seg = &self.w[state.pos..end];
                if !idempotent::is_ordered_canonical(seg, self.ord) {
                    continue;
                }
                let tree = idempotent::parse_idempotent(seg).expect("closed walk");
                if let Some(u) = state.u_last {
                    if tree.factors().iter().any(|f| f.last_letter() == u) {
                        continue;
                    }
                }
                if self.accepts(IrrState {
                    pos: end,
                    concat_last: state.concat_last,
                    u_last: None,
                    after_e: Some(tree.first_letters().collect()),
                }) {
                    return true;
                }
            }
        }
        self.failed.insert(state);
        false
    }
}
