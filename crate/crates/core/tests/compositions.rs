mod common;

use std::collections::BTreeSet;

use common::grammar::Grammar;
use common::{cat, deg_lex, inverse, show, words_up_to};
use freeinv::gsb::{classify_overlap, HeadExtent, Region};
use freeinv::{
    check_triviality, enumerate_rule_instances, find_compositions, verify_bounded, CompositionKind, OrderSpec,
    Relation, RuleKind,
};

/// Rule set rebuilt from the grammar: every pair of ordered primes.
fn brute_force_rules(ngen: usize, max_lhs: usize) -> BTreeSet<(String, String)> {
    let primes: Vec<_> = words_up_to(ngen, max_lhs)
        .into_iter()
        .filter(|p| !p.is_empty() && Grammar::new(p).is_ordered_prime())
        .collect();
    let mut out = BTreeSet::new();
    for e in &primes {
        for f in &primes {
            let (ef, fe) = (cat(&[e, f]), cat(&[f, e]));
            if ef.len() <= max_lhs && e[0] != f[0] && deg_lex(&fe, &ef).is_lt() {
                out.insert((show(&ef), show(&fe)));
            }
            // x⁻¹e'x · xf'x⁻¹ sharing the middle x
            let x = e[e.len() - 1];
            if f[0] == x && e.len() + f.len() - 1 <= max_lhs {
                let lhs = cat(&[e, &f[1..]]);
                let rhs = cat(&[&f[1..f.len() - 1], &[inverse(x)], &e[1..e.len() - 1]]);
                out.insert((show(&lhs), show(&rhs)));
            }
        }
    }
    out
}

#[test]
fn rule_enumeration_matches_brute_force() {
    for (ngen, max_lhs) in [(1, 8), (2, 6), (3, 4)] {
        let ord = OrderSpec::default_for(ngen);
        let rules: BTreeSet<(String, String)> = enumerate_rule_instances(ngen, max_lhs, &ord)
            .iter()
            .map(|r| (show(r.lhs()), show(r.rhs())))
            .collect();
        assert_eq!(rules, brute_force_rules(ngen, max_lhs), "ngen={ngen} max_lhs={max_lhs}");
    }
}

#[test]
fn relations_decrease_and_pairs_lie_below_ambiguity() {
    let ord = OrderSpec::default_for(2);
    let rules = enumerate_rule_instances(2, 6, &ord);
    let relations: Vec<Relation> = rules.iter().map(Relation::from).collect();
    for r in &relations {
        assert!(deg_lex(r.rhs(), r.lhs()).is_lt());
    }
    let comps = find_compositions(&relations, 8);
    assert!(!comps.is_empty());
    for c in &comps {
        assert!(deg_lex(&c.pair.0, &c.ambiguity).is_lt(), "{}", show(&c.ambiguity));
        assert!(deg_lex(&c.pair.1, &c.ambiguity).is_lt(), "{}", show(&c.ambiguity));
        let (u, u2) = (relations[c.left].lhs(), relations[c.right].lhs());
        assert_eq!(&c.ambiguity[..u.len()], &u[..]);
        assert_eq!(&c.ambiguity[c.offset..c.offset + u2.len()], &u2[..]);
        let report = check_triviality(c, &ord);
        assert!(report.trivial && report.below_ambiguity, "{}", show(&c.ambiguity));
    }
}

#[test]
fn every_intersection_falls_into_a_listed_case() {
    for (ngen, max_lhs, max_amb) in [(1, 8, 10), (2, 6, 8), (3, 4, 6)] {
        let ord = OrderSpec::default_for(ngen);
        let rules = enumerate_rule_instances(ngen, max_lhs, &ord);
        let relations: Vec<Relation> = rules.iter().map(Relation::from).collect();
        let mut seen = BTreeSet::new();
        for c in find_compositions(&relations, max_amb) {
            if c.kind != CompositionKind::Intersection {
                continue;
            }
            let case = classify_overlap(&c, &rules[c.left], &rules[c.right]);
            assert!(case.case_number().is_some(), "{} {:?}", show(&c.ambiguity), case);
            assert!(
                !(case.kinds.0 == RuleKind::A && case.region == Region::E && case.head == HeadExtent::Straddles),
                "straddling overlap {}",
                show(&c.ambiguity)
            );
            seen.insert(case.label());
        }
        assert!(!seen.is_empty());
    }
}

#[test]
fn no_inclusions_of_the_excluded_kinds() {
    for (ngen, max_lhs, max_amb) in [(1, 8, 10), (2, 6, 8), (2, 8, 8)] {
        let r = verify_bounded(ngen, max_lhs, max_amb, &OrderSpec::default_for(ngen));
        assert!(r.passed());
        for (left, right) in [
            (RuleKind::A, RuleKind::A),
            (RuleKind::A, RuleKind::B),
            (RuleKind::B, RuleKind::B),
        ] {
            assert_eq!(
                r.pair(left, right).inclusion,
                0,
                "{left}-{right} at {ngen},{max_lhs},{max_amb}"
            );
        }
    }
}

#[test]
fn verification_grid() {
    for (ngen, max_lhs, max_amb) in [(1, 4, 6), (1, 8, 10), (2, 6, 8), (2, 8, 10), (3, 4, 6)] {
        let r = verify_bounded(ngen, max_lhs, max_amb, &OrderSpec::default_for(ngen));
        assert!(r.compositions > 0);
        assert_eq!(r.non_trivial, 0, "{ngen},{max_lhs},{max_amb}");
        assert!(r.passed());
    }
    let r = verify_bounded(1, 2, 2, &OrderSpec::default_for(1));
    assert!(r.vacuous && r.rules == 0 && r.compositions == 0);
}

#[test]
fn verification_under_a_custom_order() {
    let ord = OrderSpec::new(common::w("BAba").into_letters(), 2).unwrap();
    let r = verify_bounded(2, 6, 8, &ord);
    assert!(r.passed(), "{r:?}");
}
