//! A small corpus of named presentations, traces and tasks used by tests,
//! the guide and the CLI.

use std::sync::Arc;

use crate::calculus::step::TietzeStep;
use crate::calculus::trace::{SegmentDirection, TietzeTrace, TietzeZigzag};
use crate::core::presentation::{Presentation, Relation};
use crate::core::word::Word;

/// The free monoid on one generator.
pub fn naturals() -> Presentation {
    Presentation::build(&["a"], &[], true).expect("fixture")
}

/// The free commutative monoid on two generators.
pub fn naturals_squared() -> Presentation {
    Presentation::build(&["a", "b"], &[("a b", "b a")], true).expect("fixture")
}

/// The two-element cyclic monoid.
pub fn mod_two() -> Presentation {
    Presentation::build(&["a"], &[("a a", "1")], true).expect("fixture")
}

/// The integers: two mutually inverse generators.
pub fn integers() -> Presentation {
    Presentation::build(&["a", "b"], &[("a b", "1"), ("b a", "1")], true).expect("fixture")
}

/// The two presentations of the free monoid on one generator connected by
/// the textbook six-step equivalence, plus that zig-zag (four forward
/// steps, then two read backward).
pub struct NPair {
    pub small: Arc<Presentation>,
    pub big: Arc<Presentation>,
    pub zigzag: TietzeZigzag,
}

pub fn n_pair() -> NPair {
    let small = Arc::new(naturals());
    let big = Arc::new(
        Presentation::build(&["a", "b"], &[("b", "b b"), ("1", "b b")], true).expect("fixture"),
    );
    let b = |p: &Presentation, s: &str| p.parse_word(s).expect("fixture word");
    // Forward from ⟨a⟩: define b by the empty word, wrap, compose, flip.
    let fwd_steps = vec![
        TietzeStep::Tgen {
            word: Word::empty(),
            fresh: "b".into(),
        },
        TietzeStep::Tctxt {
            relation: Relation::new(Word::empty(), b(&big, "b")),
            left: b(&big, "b"),
            right: Word::empty(),
        },
        TietzeStep::Ttrans {
            first: Relation::new(Word::empty(), b(&big, "b")),
            second: Relation::new(b(&big, "b"), b(&big, "b b")),
        },
        TietzeStep::Tsym {
            relation: Relation::new(b(&big, "b"), b(&big, "b b")),
        },
    ];
    let forward = TietzeTrace::new(small.clone(), fwd_steps).expect("fixture trace");
    // Backward segment, read from the second presentation: flip b -> bb,
    // then compose to recover 1 -> b.
    let bwd_steps = vec![
        TietzeStep::Tsym {
            relation: Relation::new(b(&big, "b"), b(&big, "b b")),
        },
        TietzeStep::Ttrans {
            first: Relation::new(Word::empty(), b(&big, "b b")),
            second: Relation::new(b(&big, "b b"), b(&big, "b")),
        },
    ];
    let backward = TietzeTrace::new(big.clone(), bwd_steps).expect("fixture trace");
    let zigzag = TietzeZigzag::new(
        (*small).clone(),
        vec![
            (SegmentDirection::Forward, forward),
            (SegmentDirection::Backward, backward),
        ],
    )
    .expect("fixture zig-zag");
    NPair {
        small,
        big,
        zigzag,
    }
}

/// The truncation of the chain family with the defining relations
/// `a -> b_i`: presents the free monoid on one generator.
pub fn chain_with_definitions(depth: usize) -> Presentation {
    let mut gens: Vec<String> = vec!["a".into()];
    gens.extend((0..depth).map(|i| format!("b{i}")));
    let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
    let mut rels: Vec<(String, String)> = Vec::new();
    for i in 0..depth {
        rels.push(("a".into(), format!("b{i}")));
    }
    for i in 0..depth.saturating_sub(1) {
        rels.push((format!("b{i}"), format!("b{}", i + 1)));
    }
    let rel_refs: Vec<(&str, &str)> = rels.iter().map(|(l, r)| (l.as_str(), r.as_str())).collect();
    Presentation::build(&refs, &rel_refs, true).expect("fixture")
}

/// The truncation of the same chain without the defining relations: the
/// generators `a` and `b0` become independent, so the presented monoid is
/// a free product and no longer commutative.
pub fn chain_without_definitions(depth: usize) -> Presentation {
    let mut gens: Vec<String> = vec!["a".into()];
    gens.extend((0..depth).map(|i| format!("b{i}")));
    let refs: Vec<&str> = gens.iter().map(|s| s.as_str()).collect();
    let mut rels: Vec<(String, String)> = Vec::new();
    for i in 0..depth.saturating_sub(1) {
        rels.push((format!("b{i}"), format!("b{}", i + 1)));
    }
    let rel_refs: Vec<(&str, &str)> = rels.iter().map(|(l, r)| (l.as_str(), r.as_str())).collect();
    Presentation::build(&refs, &rel_refs, true).expect("fixture")
}

/// Every named fixture, for the CLI listing.
pub fn all() -> Vec<(&'static str, Presentation)> {
    vec![
        ("nat", naturals()),
        ("natxnat", naturals_squared()),
        ("mod2", mod_two()),
        ("int", integers()),
        ("npair-small", (*n_pair().small).clone()),
        ("npair-big", (*n_pair().big).clone()),
        ("chain3", chain_with_definitions(3)),
        ("chain3-cut", chain_without_definitions(3)),
    ]
}
