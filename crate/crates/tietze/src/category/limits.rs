//! Finite limits: binary products (against a materialization bound) and
//! equalizers.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::core::morphism::Morphism;
use crate::core::presentation::{Presentation, RelSet, Relation};
use crate::core::word::{GenId, Word};
use crate::error::{Error, Result};

/// A binary product with its projections. `truncated_at` is set when
/// implicit-diagonal members of a factor had to be materialized: pairing
/// an explicit relation of one factor against the other factor's diagonal
/// only involves diagonal members of the matching length, so the result is
/// exact whenever every such relation has sides of length at most the
/// bound; longer ones are dropped and flagged.
#[derive(Debug, Clone)]
pub struct Product {
    pub presentation: Arc<Presentation>,
    pub left: Morphism,
    pub right: Morphism,
    pub truncated_at: Option<usize>,
}

/// Zips two equal-length words of paired generators.
fn zip_words(u: &Word, v: &Word, width: usize) -> Word {
    debug_assert_eq!(u.len(), v.len());
    Word(
        u.letters()
            .zip(v.letters())
            .map(|(a, b)| GenId(a.0 * width as u32 + b.0))
            .collect(),
    )
}

/// The product `P × Q`: generators are pairs, and a relation is a pair of
/// relations with matching side lengths, zipped letterwise.
pub fn product(
    p: &Arc<Presentation>,
    q: &Arc<Presentation>,
    max_len: usize,
) -> Result<Product> {
    let p_rels: Vec<Relation> = p.require_explicit()?.into_iter().collect();
    let q_rels: Vec<Relation> = q.require_explicit()?.into_iter().collect();
    let width = q.gen_count();
    let mut names = Vec::with_capacity(p.gen_count() * width);
    for a in p.gen_names() {
        for b in q.gen_names() {
            names.push(format!("{a},{b}"));
        }
    }
    let mut rels: BTreeSet<Relation> = BTreeSet::new();
    let mut materialized = false;
    // Explicit against explicit.
    for rp in &p_rels {
        for rq in &q_rels {
            if rp.lhs.len() == rq.lhs.len() && rp.rhs.len() == rq.rhs.len() {
                rels.insert(Relation::new(
                    zip_words(&rp.lhs, &rq.lhs, width),
                    zip_words(&rp.rhs, &rq.rhs, width),
                ));
            }
        }
    }
    // Explicit against the other factor's implicit diagonal: only
    // length-preserving relations can pair, and only with diagonal members
    // of exactly that length.
    if q.is_reflexive() {
        for rp in p_rels.iter().filter(|r| r.lhs.len() == r.rhs.len()) {
            materialized = true;
            if rp.lhs.len() > max_len {
                continue;
            }
            for w in crate::core::word::words_up_to(width, rp.lhs.len()) {
                if w.len() == rp.lhs.len() {
                    rels.insert(Relation::new(
                        zip_words(&rp.lhs, &w, width),
                        zip_words(&rp.rhs, &w, width),
                    ));
                }
            }
        }
    }
    if p.is_reflexive() {
        for rq in q_rels.iter().filter(|r| r.lhs.len() == r.rhs.len()) {
            materialized = true;
            if rq.lhs.len() > max_len {
                continue;
            }
            for w in crate::core::word::words_up_to(p.gen_count(), rq.lhs.len()) {
                if w.len() == rq.lhs.len() {
                    rels.insert(Relation::new(
                        zip_words(&w, &rq.lhs, width),
                        zip_words(&w, &rq.rhs, width),
                    ));
                }
            }
        }
    }
    let pres = Arc::new(Presentation::new(
        names,
        RelSet::Explicit(rels),
        p.is_reflexive() && q.is_reflexive(),
    )?);
    let left_map: Vec<GenId> = (0..p.gen_count() as u32)
        .flat_map(|a| std::iter::repeat(GenId(a)).take(width))
        .collect();
    let right_map: Vec<GenId> = (0..p.gen_count())
        .flat_map(|_| (0..width as u32).map(GenId))
        .collect();
    let left = Morphism::new(pres.clone(), p.clone(), left_map)?;
    let right = Morphism::new(pres.clone(), q.clone(), right_map)?;
    Ok(Product {
        presentation: pres,
        left,
        right,
        truncated_at: materialized.then_some(max_len),
    })
}

/// An equalizer's presentation and inclusion.
#[derive(Debug, Clone)]
pub struct Equalizer {
    pub presentation: Arc<Presentation>,
    pub inclusion: Morphism,
}

/// Equalizer of a parallel pair: the generators on which the maps agree,
/// with the source relations whose sides map equally.
pub fn equalizer(f: &Morphism, g: &Morphism) -> Result<Equalizer> {
    if f.src() != g.src() || f.tgt() != g.tgt() {
        return Err(Error::Precondition("equalizer needs a parallel pair".into()));
    }
    let p = f.src();
    let p_rels = p.require_explicit()?;
    let kept: Vec<GenId> = p
        .gen_ids()
        .filter(|&a| f.apply_gen(a) == g.apply_gen(a))
        .collect();
    let names: Vec<String> = kept
        .iter()
        .map(|&a| p.gen_name(a).to_string())
        .collect();
    let mut embed = vec![None; p.gen_count()];
    for (new, &old) in kept.iter().enumerate() {
        embed[old.index()] = Some(GenId(new as u32));
    }
    let restrict = |w: &Word| -> Option<Word> {
        w.letters()
            .map(|gid| embed[gid.index()])
            .collect::<Option<Vec<_>>>()
            .map(Word)
    };
    let mut rels: BTreeSet<Relation> = BTreeSet::new();
    for rel in &p_rels {
        let eq_l = f.apply(&rel.lhs)? == g.apply(&rel.lhs)?;
        let eq_r = f.apply(&rel.rhs)? == g.apply(&rel.rhs)?;
        if eq_l && eq_r {
            // Sides whose images agree letterwise live over the kept
            // generators.
            let lhs = restrict(&rel.lhs).expect("letters agree under both maps");
            let rhs = restrict(&rel.rhs).expect("letters agree under both maps");
            rels.insert(Relation::new(lhs, rhs));
        }
    }
    let pres = Arc::new(Presentation::new(
        names,
        RelSet::Explicit(rels),
        p.is_reflexive(),
    )?);
    let inclusion = Morphism::new(pres.clone(), p.clone(), kept)?;
    Ok(Equalizer {
        presentation: pres,
        inclusion,
    })
}
