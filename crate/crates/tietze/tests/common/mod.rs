//! Shared deterministic generators for the integration suites.

#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use tietze::calculus::{apply_step, TietzeStep, TietzeTrace};
use tietze::core::morphism::Morphism;
use tietze::core::presentation::{Presentation, RelSet, Relation};
use tietze::core::word::{GenId, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut ChaCha8Rng, gens: usize, max_len: usize) -> Word {
    if gens == 0 {
        return Word::empty();
    }
    let len = rng.gen_range(0..=max_len);
    Word::from_ids((0..len).map(|_| rng.gen_range(0..gens) as u32))
}

pub fn random_presentation(
    rng: &mut ChaCha8Rng,
    max_gens: usize,
    max_rels: usize,
    max_side: usize,
) -> Arc<Presentation> {
    let gens = rng.gen_range(1..=max_gens);
    let names: Vec<String> = (0..gens).map(|i| format!("g{i}")).collect();
    let rels = rng.gen_range(0..=max_rels);
    let mut set = BTreeSet::new();
    for _ in 0..rels {
        set.insert(Relation::new(
            random_word(rng, gens, max_side),
            random_word(rng, gens, max_side),
        ));
    }
    Arc::new(
        Presentation::new(names, RelSet::Explicit(set), true).expect("generated presentation"),
    )
}

/// A valid morphism built constructively: the target and generator map are
/// random, and every source relation is either a letterwise preimage of a
/// target relation or a pair with equal images.
pub fn random_valid_morphism(
    rng: &mut ChaCha8Rng,
    max_gens: usize,
    max_rels: usize,
    max_side: usize,
) -> Morphism {
    let tgt = random_presentation(rng, max_gens, max_rels, max_side);
    let src_gens = rng.gen_range(1..=max_gens);
    let names: Vec<String> = (0..src_gens).map(|i| format!("h{i}")).collect();
    let map: Vec<GenId> = (0..src_gens)
        .map(|_| GenId(rng.gen_range(0..tgt.gen_count()) as u32))
        .collect();
    let mut fibers: Vec<Vec<GenId>> = vec![Vec::new(); tgt.gen_count()];
    for (i, g) in map.iter().enumerate() {
        fibers[g.index()].push(GenId(i as u32));
    }
    let tgt_rels: Vec<Relation> = tgt.require_explicit().unwrap().into_iter().collect();
    let mut set = BTreeSet::new();
    for _ in 0..rng.gen_range(0..=max_rels) {
        if !tgt_rels.is_empty() && rng.gen_bool(0.5) {
            // Letterwise preimage of a target relation, when one exists.
            let rel = &tgt_rels[rng.gen_range(0..tgt_rels.len())];
            let lift = |w: &Word, rng: &mut ChaCha8Rng| -> Option<Word> {
                w.letters()
                    .map(|g| {
                        let fiber = &fibers[g.index()];
                        if fiber.is_empty() {
                            None
                        } else {
                            Some(fiber[rng.gen_range(0..fiber.len())])
                        }
                    })
                    .collect::<Option<Vec<_>>>()
                    .map(Word)
            };
            if let (Some(lhs), Some(rhs)) = (lift(&rel.lhs, rng), lift(&rel.rhs, rng)) {
                set.insert(Relation::new(lhs, rhs));
                continue;
            }
        }
        // A pair with equal images: fiber-shuffle a random word.
        let u = random_word(rng, src_gens, max_side);
        let v = Word(
            u.letters()
                .map(|a| {
                    let fiber = &fibers[map[a.index()].index()];
                    fiber[rng.gen_range(0..fiber.len())]
                })
                .collect(),
        );
        set.insert(Relation::new(u, v));
    }
    let src = Arc::new(
        Presentation::new(names, RelSet::Explicit(set), true).expect("generated presentation"),
    );
    let m = Morphism::new(src, tgt, map).expect("generated morphism");
    debug_assert!(m.validate(2 * max_side).is_ok());
    m
}

/// A random atomic step valid at `p`, avoiding no-ops where easy.
pub fn random_step(rng: &mut ChaCha8Rng, p: &Presentation, max_side: usize) -> TietzeStep {
    let rels: Vec<Relation> = p.require_explicit().unwrap().into_iter().collect();
    for _ in 0..16 {
        match rng.gen_range(0..4) {
            0 => {
                let fresh = format!("t{}", p.gen_count() + rng.gen_range(0..100));
                if p.gen_id(&fresh).is_none() {
                    return TietzeStep::Tgen {
                        word: random_word(rng, p.gen_count(), max_side),
                        fresh,
                    };
                }
            }
            1 if !rels.is_empty() => {
                let rel = rels[rng.gen_range(0..rels.len())].clone();
                return TietzeStep::Tsym { relation: rel };
            }
            2 if !rels.is_empty() => {
                // Transitivity through a shared middle, the middle taken
                // from the diagonal if no explicit partner exists.
                let first = rels[rng.gen_range(0..rels.len())].clone();
                let second = rels
                    .iter()
                    .find(|r| r.lhs == first.rhs)
                    .cloned()
                    .unwrap_or_else(|| Relation::new(first.rhs.clone(), first.rhs.clone()));
                return TietzeStep::Ttrans { first, second };
            }
            3 if !rels.is_empty() => {
                let rel = rels[rng.gen_range(0..rels.len())].clone();
                return TietzeStep::Tctxt {
                    relation: rel,
                    left: random_word(rng, p.gen_count(), 1),
                    right: random_word(rng, p.gen_count(), 1),
                };
            }
            _ => {}
        }
    }
    TietzeStep::Tgen {
        word: Word::empty(),
        fresh: format!("t{}", p.gen_count()),
    }
}

/// A random trace of valid atomic steps from `p`, together with the
/// inclusion of `p` into its end (a weak equivalence by construction).
pub fn random_trace_extension(
    rng: &mut ChaCha8Rng,
    p: &Arc<Presentation>,
    steps: usize,
    max_side: usize,
) -> (TietzeTrace, Morphism) {
    let mut list = Vec::new();
    let mut state = (**p).clone();
    for _ in 0..steps {
        let step = random_step(rng, &state, max_side);
        state = apply_step(&state, &step).expect("generated step applies");
        list.push(step);
    }
    let trace = TietzeTrace::new(p.clone(), list).expect("generated trace");
    let end = Arc::new(trace.end().clone());
    let inclusion = Morphism::new(p.clone(), end, p.gen_ids().collect()).expect("inclusion");
    (trace, inclusion)
}
