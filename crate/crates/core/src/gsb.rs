//! Bounded verification that every composition of the rewriting system is
//! trivial.
//!
//! Compositions are the usual critical pairs of a string rewriting system,
//! specialised to semigroup relations `(u, v)` with `v < u`:
//!
//! * intersection: `w = u·b = a·u'` with `a, b` nonempty gives `(v·b, a·v')`;
//! * inclusion: `w = u = a·u'·b` gives `(v, a·v'·b)`.
//!
//! A composition is trivial when both sides rewrite to a common word through
//! words strictly below `w`. Because the relation schemas are infinite, a run
//! only covers rule instances and ambiguities up to the given lengths.

use std::collections::BTreeMap;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use serde::Serialize;
use thiserror::Error;

use crate::rewrite::{normal_form_traced, NormalizationTrace, RuleInstance, RuleKind};
use crate::words::{Letter, OrderSpec, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("relation does not decrease deg-lex")]
pub struct RelationError;

/// A semigroup relation `lhs → rhs` with `rhs < lhs` in deg-lex.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    lhs: Word,
    rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word, ord: &OrderSpec) -> Result<Self, RelationError> {
        if ord.less(&rhs, &lhs) {
            Ok(Relation { lhs, rhs })
        } else {
            Err(RelationError)
        }
    }

    pub fn lhs(&self) -> &Word {
        &self.lhs
    }

    pub fn rhs(&self) -> &Word {
        &self.rhs
    }
}

impl From<&RuleInstance> for Relation {
    fn from(rule: &RuleInstance) -> Self {
        Relation {
            lhs: rule.lhs().clone(),
            rhs: rule.rhs().clone(),
        }
    }
}

/// Ordered prime canonical idempotents grouped by length: index `k` holds
/// words of length `2k`.
struct CanonicalTable {
    primes: Vec<Vec<Word>>,
}

impl CanonicalTable {
    fn build(ngen: usize, max_len: usize, ord: &OrderSpec) -> Self {
        let levels = max_len / 2;
        let mut primes: Vec<Vec<Word>> = vec![Vec::new()];
        let mut canonicals: Vec<Vec<(Word, Vec<Letter>)>> = vec![vec![(Word::empty(), Vec::new())]];
        let letters: Vec<Letter> = ord
            .ranking()
            .iter()
            .copied()
            .filter(|l| (l.generator() as usize) < ngen)
            .collect();
        for k in 1..=levels {
            let mut level_primes = Vec::new();
            for &y in &letters {
                // y·h·y⁻¹ where no factor of h steps back along y⁻¹
                for (h, firsts) in &canonicals[k - 1] {
                    if firsts.contains(&y.inverse()) {
                        continue;
                    }
                    let mut p = Vec::with_capacity(2 * k);
                    p.push(y);
                    p.extend_from_slice(h);
                    p.push(y.inverse());
                    level_primes.push(Word::from(p));
                }
            }
            primes.push(level_primes);

            let mut level = Vec::new();
            for j in 1..=k {
                for p in &primes[j] {
                    for (rest, firsts) in &canonicals[k - j] {
                        if firsts.first().is_some_and(|&f| ord.rank(p[0]) >= ord.rank(f)) {
                            continue;
                        }
                        let mut fs = Vec::with_capacity(firsts.len() + 1);
                        fs.push(p[0]);
                        fs.extend_from_slice(firsts);
                        level.push((p.concat(rest), fs));
                    }
                }
            }
            canonicals.push(level);
        }
        CanonicalTable { primes }
    }

    fn primes(&self) -> impl Iterator<Item = &Word> {
        self.primes.iter().flatten()
    }
}

/// Every ordered prime canonical idempotent over `ngen` generators of length
/// at most `max_len`, shortest first.
#[cfg(test)]
fn ordered_prime_canonicals(ngen: usize, max_len: usize, ord: &OrderSpec) -> Vec<Word> {
    CanonicalTable::build(ngen, max_len, ord).primes().cloned().collect()
}

/// Every instance of schemas (a) and (b) over `ngen` generators whose
/// left-hand side has length at most `max_lhs`, sorted by left-hand side.
pub fn enumerate_rule_instances(ngen: usize, max_lhs: usize, ord: &OrderSpec) -> Vec<RuleInstance> {
    let table = CanonicalTable::build(ngen, max_lhs, ord);
    let primes: Vec<&Word> = table.primes().collect();
    let mut rules = Vec::new();
    for &e in &primes {
        for &f in &primes {
            if e.len() + f.len() <= max_lhs && ord.rank(f[0]) < ord.rank(e[0]) {
                rules.push(RuleInstance::commute(e.clone(), f.clone(), ord).expect("schema (a) instance"));
            }
        }
    }
    for &p in &primes {
        let x = p[p.len() - 1];
        for &q in &primes {
            if q[0] == x && p.len() + q.len() - 1 <= max_lhs {
                let e = Word::from(&p[1..p.len() - 1]);
                let f = Word::from(&q[1..q.len() - 1]);
                rules.push(RuleInstance::collapse(x, e, f, ord).expect("schema (b) instance"));
            }
        }
    }
    rules.sort_by(|r, s| ord.cmp_words(r.lhs(), s.lhs()));
    rules
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CompositionKind {
    Intersection,
    Inclusion,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Composition {
    pub kind: CompositionKind,
    /// Index of the left (outer, for inclusions) relation.
    pub left: usize,
    /// Index of the right (inner, for inclusions) relation.
    pub right: usize,
    /// Where the right relation's left-hand side starts inside the ambiguity.
    pub offset: usize,
    pub ambiguity: Word,
    pub pair: (Word, Word),
}

fn for_each_composition<F>(rules: &[Relation], max_ambiguity: usize, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(Composition) -> ControlFlow<()>,
{
    for (i, left) in rules.iter().enumerate() {
        let u = left.lhs();
        for (j, right) in rules.iter().enumerate() {
            let u2 = right.lhs();
            // intersection: a proper suffix of u equals a proper prefix of u2
            for k in 1..u.len().min(u2.len()) {
                let len = u.len() + u2.len() - k;
                if len > max_ambiguity {
                    continue;
                }
                if u[u.len() - k..] != u2[..k] {
                    continue;
                }
                let offset = u.len() - k;
                let ambiguity = u.concat(&u2[k..]);
                let p = left.rhs().concat(&u2[k..]);
                let q = Word::from(&u[..offset]).concat(right.rhs());
                visit(Composition {
                    kind: CompositionKind::Intersection,
                    left: i,
                    right: j,
                    offset,
                    ambiguity,
                    pair: (p, q),
                })?;
            }
            // inclusion: u2 occurs inside u
            if u2.len() <= u.len() && u.len() <= max_ambiguity {
                for offset in 0..=u.len() - u2.len() {
                    if i == j && offset == 0 {
                        continue;
                    }
                    if u[offset..offset + u2.len()] != u2[..] {
                        continue;
                    }
                    let q = Word::from(&u[..offset])
                        .concat(right.rhs())
                        .concat(&u[offset + u2.len()..]);
                    visit(Composition {
                        kind: CompositionKind::Inclusion,
                        left: i,
                        right: j,
                        offset,
                        ambiguity: u.clone(),
                        pair: (left.rhs().clone(), q),
                    })?;
                }
            }
        }
    }
    ControlFlow::Continue(())
}

/// All intersection and inclusion compositions between ordered pairs of
/// `rules` (a rule with itself included) with ambiguity length at most
/// `max_ambiguity`.
pub fn find_compositions(rules: &[Relation], max_ambiguity: usize) -> Vec<Composition> {
    let mut out = Vec::new();
    let _ = for_each_composition(rules, max_ambiguity, |c| {
        out.push(c);
        ControlFlow::Continue(())
    });
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrivialityReport {
    pub composition: Composition,
    pub trivial: bool,
    /// Every word on both rewrite paths is strictly below the ambiguity.
    pub below_ambiguity: bool,
    pub witness: (NormalizationTrace, NormalizationTrace),
}

/// Rewrite both sides of `c` to normal form with the full schema matcher and
/// compare.
pub fn check_triviality(c: &Composition, ord: &OrderSpec) -> TrivialityReport {
    let left = normal_form_traced(&c.pair.0, ord);
    let right = normal_form_traced(&c.pair.1, ord);
    let below = |t: &NormalizationTrace| {
        ord.less(&t.input, &c.ambiguity) && t.steps.iter().all(|s| ord.less(&s.after, &c.ambiguity))
    };
    TrivialityReport {
        composition: c.clone(),
        trivial: left.output == right.output,
        below_ambiguity: below(&left) && below(&right),
        witness: (left, right),
    }
}

/// Where a composition's second left-hand side begins inside the first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Region {
    /// Leading `x⁻¹` of a (b) left-hand side.
    Open,
    /// Inside `e` (or `e'` for (b)).
    E,
    /// The middle `x` of a (b) left-hand side.
    Middle,
    /// Inside `f` (or `f'` for (b)).
    F,
    /// Trailing `x⁻¹` of a (b) left-hand side.
    Close,
}

/// How far the second relation's leading prime idempotent reaches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum HeadExtent {
    /// Ends within the region it starts in.
    Inside,
    /// Ends at or beyond the end of the first left-hand side.
    ReachesEnd,
    /// Ends strictly inside a later region.
    Straddles,
}

/// Structural class of an intersection composition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct OverlapCase {
    pub kinds: (RuleKind, RuleKind),
    pub region: Region,
    pub head: HeadExtent,
}

impl OverlapCase {
    /// Number of this configuration in the case analysis of the completeness
    /// proof (cases 1–5 when the left rule is (a), 1–6 when it is (b)).
    /// `None` for configurations that the structure of canonical idempotents
    /// rules out.
    pub fn case_number(&self) -> Option<u8> {
        use HeadExtent::*;
        use Region::*;
        match (self.kinds.0, self.region, self.head) {
            (RuleKind::A, E, Inside) => Some(1),
            (RuleKind::A, E, Straddles) => None,
            (RuleKind::A, E, ReachesEnd) => Some(3),
            (RuleKind::A, F, Inside) => Some(4),
            (RuleKind::A, F, ReachesEnd) => Some(5),
            (RuleKind::B, E, Inside) => Some(1),
            (RuleKind::B, Middle, ReachesEnd) => Some(2),
            (RuleKind::B, E, ReachesEnd) => Some(3),
            (RuleKind::B, F, Inside) => Some(4),
            (RuleKind::B, F, ReachesEnd) => Some(5),
            (RuleKind::B, Close, ReachesEnd) => Some(6),
            _ => None,
        }
    }

    pub fn label(&self) -> String {
        let pair = format!("{}-{}", self.kinds.0, self.kinds.1);
        match self.case_number() {
            Some(n) => format!("{pair}/{n}"),
            None => format!("{pair}/unlisted:{:?}:{:?}", self.region, self.head),
        }
    }
}

/// Classify an intersection composition between `left` and `right`.
pub fn classify_overlap(c: &Composition, left: &RuleInstance, right: &RuleInstance) -> OverlapCase {
    let lhs_len = left.lhs().len();
    // (start, end) of each region of the left rule's lhs
    let regions: Vec<(Region, usize, usize)> = match left.kind() {
        RuleKind::A => {
            let e = left.head_len();
            vec![(Region::E, 0, e), (Region::F, e, lhs_len)]
        }
        RuleKind::B => {
            let mid = left.head_len() - 1;
            vec![
                (Region::Open, 0, 1),
                (Region::E, 1, mid),
                (Region::Middle, mid, mid + 1),
                (Region::F, mid + 1, lhs_len - 1),
                (Region::Close, lhs_len - 1, lhs_len),
            ]
        }
    };
    let (region, _, region_end) = regions
        .into_iter()
        .find(|&(_, s, e)| s <= c.offset && c.offset < e)
        .expect("second lhs starts inside the first");
    let head_end = c.offset + right.head_len();
    let head = if head_end <= region_end {
        HeadExtent::Inside
    } else if head_end >= lhs_len {
        HeadExtent::ReachesEnd
    } else {
        HeadExtent::Straddles
    };
    OverlapCase {
        kinds: (left.kind(), right.kind()),
        region,
        head,
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct PairCounts {
    pub intersection: usize,
    pub inclusion: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub generators: usize,
    pub max_lhs: usize,
    pub max_ambiguity: usize,
    pub rules: usize,
    pub rules_a: usize,
    pub rules_b: usize,
    pub compositions: usize,
    pub intersections: usize,
    pub inclusions: usize,
    /// Keyed `"a-a"`, `"a-b"`, `"b-a"`, `"b-b"` (left kind, right kind).
    pub by_kind: BTreeMap<String, PairCounts>,
    /// Intersection compositions by [`OverlapCase::label`].
    pub cases: BTreeMap<String, usize>,
    pub trivial: usize,
    pub non_trivial: usize,
    /// Compositions whose resolution left the region below the ambiguity.
    pub escaped_bound: usize,
    pub complete: bool,
    pub vacuous: bool,
    #[serde(skip)]
    pub failures: Vec<TrivialityReport>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.complete && !self.vacuous && self.non_trivial == 0 && self.escaped_bound == 0
    }

    pub fn pair(&self, left: RuleKind, right: RuleKind) -> PairCounts {
        self.by_kind
            .get(&format!("{left}-{right}"))
            .copied()
            .unwrap_or_default()
    }
}

/// Upper bound on the compositions a run will examine.
pub const DEFAULT_COMPOSITION_BUDGET: usize = 2_000_000;

/// Check every composition among rule instances with `|lhs| ≤ max_lhs` and
/// ambiguity length `≤ max_ambiguity`.
pub fn verify_bounded(ngen: usize, max_lhs: usize, max_ambiguity: usize, ord: &OrderSpec) -> VerifyReport {
    verify_bounded_with_budget(ngen, max_lhs, max_ambiguity, ord, DEFAULT_COMPOSITION_BUDGET)
}

/// [`verify_bounded`] that stops after `budget` compositions and marks the
/// report incomplete.
pub fn verify_bounded_with_budget(
    ngen: usize,
    max_lhs: usize,
    max_ambiguity: usize,
    ord: &OrderSpec,
    budget: usize,
) -> VerifyReport {
    let started = Instant::now();
    let rules = enumerate_rule_instances(ngen, max_lhs, ord);
    let relations: Vec<Relation> = rules.iter().map(Relation::from).collect();
    let rules_a = rules.iter().filter(|r| r.kind() == RuleKind::A).count();

    let mut report = VerifyReport {
        generators: ngen,
        max_lhs,
        max_ambiguity,
        rules: rules.len(),
        rules_a,
        rules_b: rules.len() - rules_a,
        compositions: 0,
        intersections: 0,
        inclusions: 0,
        by_kind: BTreeMap::new(),
        cases: BTreeMap::new(),
        trivial: 0,
        non_trivial: 0,
        escaped_bound: 0,
        complete: true,
        vacuous: false,
        failures: Vec::new(),
        elapsed: Duration::ZERO,
    };

    let flow = for_each_composition(&relations, max_ambiguity, |c| {
        if report.compositions == budget {
            return ControlFlow::Break(());
        }
        report.compositions += 1;
        let (left, right) = (&rules[c.left], &rules[c.right]);
        let counts = report
            .by_kind
            .entry(format!("{}-{}", left.kind(), right.kind()))
            .or_default();
        match c.kind {
            CompositionKind::Intersection => {
                report.intersections += 1;
                counts.intersection += 1;
                let case = classify_overlap(&c, left, right);
                *report.cases.entry(case.label()).or_default() += 1;
            }
            CompositionKind::Inclusion => {
                report.inclusions += 1;
                counts.inclusion += 1;
            }
        }
        let check = check_triviality(&c, ord);
        if !check.below_ambiguity {
            report.escaped_bound += 1;
        }
        if check.trivial {
            report.trivial += 1;
        } else {
            report.non_trivial += 1;
            report.failures.push(check);
        }
        ControlFlow::Continue(())
    });
    report.complete = flow.is_continue();
    report.vacuous = report.compositions == 0;
    report.elapsed = started.elapsed();
    report
}
