//! Betti tables fixed by the brute-force oracle, then frozen.

#[path = "common/oracle.rs"]
mod oracle;
#[path = "common/strategies.rs"]
mod strategies;

use std::collections::BTreeMap;

use hyperbetti::splitting::betti_recursive;
use hyperbetti::taylor::betti_via_taylor;
use hyperbetti::{hochster, named, BettiTable, FieldChoice, Hypergraph};
use proptest::prelude::*;

type Frozen = &'static [((usize, usize), usize)];

const P3: Frozen = &[((0, 0), 1), ((1, 2), 2), ((2, 3), 1)];
const P4: Frozen = &[((0, 0), 1), ((1, 2), 3), ((2, 3), 2)];
const C3: Frozen = &[((0, 0), 1), ((1, 2), 3), ((2, 3), 2)];
const C4: Frozen = &[((0, 0), 1), ((1, 2), 4), ((2, 3), 4), ((3, 4), 1)];
const P6: Frozen = &[((0, 0), 1), ((1, 2), 5), ((2, 3), 4), ((2, 4), 3), ((3, 5), 4), ((4, 6), 1)];
const SIX: Frozen = &[((0, 0), 1), ((1, 3), 3), ((2, 4), 1), ((2, 5), 2), ((3, 6), 1)];

fn cases() -> Vec<(&'static str, Hypergraph, Frozen)> {
    vec![
        ("P3", named::path(3), P3),
        ("P4", named::path(4), P4),
        ("C3", named::cycle(3), C3),
        ("C4", named::cycle(4), C4),
        ("P6", named::path(6), P6),
        ("six", named::semi_disjoint_example(), SIX),
    ]
}

fn as_map(t: &BettiTable) -> BTreeMap<(usize, usize), usize> {
    t.entries().map(|(k, v)| (k, v as usize)).collect()
}

fn oracle_table(h: &Hypergraph) -> BTreeMap<(usize, usize), usize> {
    oracle::betti(h.n(), &h.edge_lists())
}

#[test]
fn oracle_reproduces_frozen_tables() {
    for (name, h, frozen) in cases() {
        assert_eq!(oracle_table(&h), frozen.iter().copied().collect(), "{name}");
    }
}

#[test]
fn engines_reproduce_frozen_tables() {
    for (name, h, frozen) in cases() {
        let frozen: BTreeMap<_, _> = frozen.iter().copied().collect();
        for field in [FieldChoice::Rational, FieldChoice::Prime(2), FieldChoice::Prime(3)] {
            assert_eq!(as_map(&hochster::betti_table(&h, field).unwrap()), frozen, "{name} hochster {field}");
            assert_eq!(as_map(&betti_via_taylor(&h, field).unwrap()), frozen, "{name} taylor {field}");
        }
    }
    for (name, h, frozen) in cases() {
        if let Ok(t) = betti_recursive(&h, FieldChoice::Rational) {
            assert_eq!(as_map(&t), frozen.iter().copied().collect(), "{name} recursive");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn hochster_and_taylor_match_the_oracle(h in strategies::hypergraph(6, 3, 6)) {
        let expected = oracle_table(&h);
        prop_assert_eq!(as_map(&hochster::betti_table(&h, FieldChoice::Rational).unwrap()), expected.clone());
        prop_assert_eq!(as_map(&betti_via_taylor(&h, FieldChoice::Rational).unwrap()), expected);
    }
}
