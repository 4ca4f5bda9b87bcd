//! Fibration predicates.
//!
//! Trivial fibrations reflect relations literally; pseudo-fibrations lift
//! against the pseudo-generating family. Both conditions quantify over all
//! words, but for explicit relation sets every quantifier collapses to a
//! finite enumeration over the relations and their letterwise preimages,
//! so the predicates are exact there.

use crate::core::morphism::{word_preimages, Morphism};
use crate::core::presentation::{Presentation, Relation, RelSet};
use crate::core::word::Word;
use crate::error::{Error, Result};

/// Why a morphism fails to be a trivial fibration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TfibFailure {
    /// Some target generator has an empty fiber.
    NotSurjective { generator: String },
    /// A preimage pair of a target relation is not a source relation.
    MissingPreimage { target: Relation, pair: Relation },
    /// Two generators share a fiber: reflecting the target's diagonal
    /// would take infinitely many relations, impossible in a finite
    /// explicit set.
    SharedFiber { first: String, second: String },
    /// The target is reflexive but the source is not, so diagonal
    /// preimages cannot all be present.
    SourceNotReflexive,
    /// Over the empty alphabet the diagonal is just `1 -> 1`, and it is
    /// missing.
    UnitRelationMissing,
}

impl std::fmt::Display for TfibFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TfibFailure::NotSurjective { generator } => {
                write!(f, "not surjective on generators ({generator} is missed)")
            }
            TfibFailure::MissingPreimage { .. } => {
                write!(f, "a preimage pair of a target relation is missing")
            }
            TfibFailure::SharedFiber { first, second } => {
                write!(f, "generators {first} and {second} share a fiber")
            }
            TfibFailure::SourceNotReflexive => write!(f, "source is not reflexive"),
            TfibFailure::UnitRelationMissing => write!(f, "unit relation 1 -> 1 is missing"),
        }
    }
}

/// Exact trivial-fibration test.
///
/// Exact for explicit (plus diagonal) sources; a source whose relations
/// are the pullback of the target along this very map is a trivial
/// fibration by construction, which is recognized structurally. Other
/// intensional representations are rejected.
pub fn trivial_fibration_failure(f: &Morphism) -> Result<Option<TfibFailure>> {
    // Surjectivity first: common to every representation.
    let fibers = f.fibers();
    if let Some(missed) = fibers.iter().position(|fl| fl.is_empty()) {
        return Ok(Some(TfibFailure::NotSurjective {
            generator: f.tgt().gen_names()[missed].clone(),
        }));
    }
    // By-construction case: the source's relations are the full preimage
    // of the target's under this morphism.
    if let RelSet::Pullback { map, target } = f.src().rels() {
        if map == f.map() && **target == **f.tgt() {
            return Ok(None);
        }
        return Err(Error::UnsupportedRepresentation);
    }
    let src = f.src();
    let tgt = f.tgt();
    let tgt_rels = tgt.require_explicit()?;
    src.require_explicit()?;

    // Every preimage pair of every explicit target relation must be a
    // source relation.
    for rel in &tgt_rels {
        for u in word_preimages(&fibers, &rel.lhs) {
            for v in word_preimages(&fibers, &rel.rhs) {
                let pair = Relation::new(u.clone(), v.clone());
                if !src.has_relation(&pair) {
                    return Ok(Some(TfibFailure::MissingPreimage {
                        target: rel.clone(),
                        pair,
                    }));
                }
            }
        }
    }
    // Diagonal preimages when the target is reflexive.
    if tgt.is_reflexive() {
        if tgt.gen_count() == 0 {
            if !src.has_relation(&Relation::new(Word::empty(), Word::empty())) {
                return Ok(Some(TfibFailure::UnitRelationMissing));
            }
        } else {
            for fiber in &fibers {
                if fiber.len() > 1 {
                    return Ok(Some(TfibFailure::SharedFiber {
                        first: src.gen_name(fiber[0]).to_string(),
                        second: src.gen_name(fiber[1]).to_string(),
                    }));
                }
            }
            if !src.is_reflexive() {
                return Ok(Some(TfibFailure::SourceNotReflexive));
            }
        }
    }
    Ok(None)
}

pub fn is_trivial_fibration(f: &Morphism) -> Result<bool> {
    Ok(trivial_fibration_failure(f)?.is_none())
}

/// Cofibrations are exactly monomorphisms.
pub fn is_cofibration(f: &Morphism) -> bool {
    f.is_mono()
}

/// Exact pseudo-fibration test for explicit (plus diagonal) relation sets
/// on both sides; intensional representations must use
/// [`is_pseudo_fibration_bounded`].
pub fn is_pseudo_fibration(f: &Morphism) -> Result<bool> {
    let src = f.src();
    let tgt = f.tgt();
    let src_rels = src.require_explicit()?;
    let tgt_rels = tgt.require_explicit()?;
    let fibers = f.fibers();

    // Condition 1: relations into a single target generator lift. The
    // explicit ones are enumerated; the diagonal contributes one instance
    // per target generator.
    for rel in &tgt_rels {
        if rel.rhs.len() != 1 {
            continue;
        }
        let b = rel.rhs.0[0];
        for u in word_preimages(&fibers, &rel.lhs) {
            let liftable = fibers[b.index()]
                .iter()
                .any(|&a| src.has_relation(&Relation::new(u.clone(), Word::single(a))));
            if !liftable {
                return Ok(false);
            }
        }
    }
    if tgt.is_reflexive() {
        for b in tgt.gen_ids() {
            for &u in &fibers[b.index()] {
                let liftable = fibers[b.index()].iter().any(|&a| {
                    src.has_relation(&Relation::new(Word::single(u), Word::single(a)))
                });
                if !liftable {
                    return Ok(false);
                }
            }
        }
    }

    // Condition 2: reflexivity relations lift. Over a reflexive target
    // this forces the source to be reflexive (a finite explicit set cannot
    // cover the diagonal), except over the empty alphabet.
    if tgt.is_reflexive() {
        if src.gen_count() == 0 {
            if !src.has_relation(&Relation::new(Word::empty(), Word::empty())) {
                return Ok(false);
            }
        } else if !src.is_reflexive() {
            return Ok(false);
        }
    } else {
        for rel in tgt_rels.iter().filter(|r| r.is_diagonal()) {
            for u in word_preimages(&fibers, &rel.lhs) {
                if !src.has_relation(&Relation::new(u.clone(), u.clone())) {
                    return Ok(false);
                }
            }
        }
    }

    // Condition 3: symmetry. Only explicit non-diagonal source relations
    // matter; diagonal premises are their own conclusions.
    for rel in src_rels.iter().filter(|r| !r.is_diagonal()) {
        let image_rev = Relation::new(f.apply(&rel.rhs)?, f.apply(&rel.lhs)?);
        if tgt.has_relation(&image_rev) && !src.has_relation(&rel.reversed()) {
            return Ok(false);
        }
    }

    // Condition 4: transitivity along shared middles.
    for r1 in src_rels.iter().filter(|r| !r.is_diagonal()) {
        for r2 in src_rels.iter().filter(|r| !r.is_diagonal()) {
            if r1.rhs != r2.lhs {
                continue;
            }
            let image = Relation::new(f.apply(&r1.lhs)?, f.apply(&r2.rhs)?);
            if tgt.has_relation(&image)
                && !src.has_relation(&Relation::new(r1.lhs.clone(), r2.rhs.clone()))
            {
                return Ok(false);
            }
        }
    }

    // Condition 5: context closure. A diagonal image (possible only when
    // the two sides have equal images) would demand the relation in every
    // context, impossible explicitly; explicit images bound the context
    // lengths.
    for rel in src_rels.iter().filter(|r| !r.is_diagonal()) {
        let fu = f.apply(&rel.lhs)?;
        let fv = f.apply(&rel.rhs)?;
        if tgt.is_reflexive() && fu == fv {
            return Ok(false);
        }
        for target in &tgt_rels {
            if target.lhs.len() < fu.len() || target.rhs.len() < fv.len() {
                continue;
            }
            let spare = target.lhs.len() - fu.len();
            if target.rhs.len() - fv.len() != spare {
                continue;
            }
            for left_len in 0..=spare {
                let right_len = spare - left_len;
                let x = &target.lhs;
                let y = &target.rhs;
                if x.slice(left_len, left_len + fu.len()) != fu
                    || y.slice(left_len, left_len + fv.len()) != fv
                    || x.slice(0, left_len) != y.slice(0, left_len)
                    || x.slice(x.len() - right_len, x.len()) != y.slice(y.len() - right_len, y.len())
                {
                    continue;
                }
                let prefix = x.slice(0, left_len);
                let suffix = x.slice(x.len() - right_len, x.len());
                for w in word_preimages(&fibers, &prefix) {
                    for wp in word_preimages(&fibers, &suffix) {
                        let wrapped = Relation::new(
                            w.concat(&rel.lhs).concat(&wp),
                            w.concat(&rel.rhs).concat(&wp),
                        );
                        if !src.has_relation(&wrapped) {
                            return Ok(false);
                        }
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Outcome of a bounded check: holds for everything within the bound, or
/// fails with a rendered witness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bounded {
    HoldsUpTo(usize),
    Fails { witness: String },
}

impl Bounded {
    pub fn holds(&self) -> bool {
        matches!(self, Bounded::HoldsUpTo(_))
    }
}

/// Three-valued pseudo-fibration check for intensional representations:
/// the five conditions with every quantifier truncated at `max_len`.
pub fn is_pseudo_fibration_bounded(f: &Morphism, max_len: usize) -> Result<Bounded> {
    let src = f.src();
    let tgt = f.tgt();
    let fibers = f.fibers();
    let src_rels = src.enumerate_relations(max_len);
    // Condition 1.
    for rel in tgt.enumerate_relations(max_len) {
        if rel.rhs.len() != 1 {
            continue;
        }
        let b = rel.rhs.0[0];
        for u in word_preimages(&fibers, &rel.lhs) {
            let liftable = fibers[b.index()]
                .iter()
                .any(|&a| src.has_relation(&Relation::new(u.clone(), Word::single(a))));
            if !liftable {
                return Ok(Bounded::Fails {
                    witness: format!("no lift for {} -> {}", src.render_word(&u), tgt.gen_name(b)),
                });
            }
        }
    }
    // Conditions 2-4 over the truncated enumeration.
    for u in src.words_up_to(max_len) {
        let fu = f.apply(&u)?;
        if tgt.has_relation(&Relation::new(fu.clone(), fu.clone()))
            && !src.has_relation(&Relation::new(u.clone(), u.clone()))
        {
            return Ok(Bounded::Fails {
                witness: format!("reflexivity fails at {}", src.render_word(&u)),
            });
        }
    }
    for rel in &src_rels {
        let image_rev = Relation::new(f.apply(&rel.rhs)?, f.apply(&rel.lhs)?);
        if tgt.has_relation(&image_rev) && !src.has_relation(&rel.reversed()) {
            return Ok(Bounded::Fails {
                witness: format!(
                    "symmetry fails at {} -> {}",
                    src.render_word(&rel.lhs),
                    src.render_word(&rel.rhs)
                ),
            });
        }
    }
    for r1 in &src_rels {
        for r2 in &src_rels {
            if r1.rhs != r2.lhs {
                continue;
            }
            let image = Relation::new(f.apply(&r1.lhs)?, f.apply(&r2.rhs)?);
            if tgt.has_relation(&image)
                && !src.has_relation(&Relation::new(r1.lhs.clone(), r2.rhs.clone()))
            {
                return Ok(Bounded::Fails {
                    witness: format!(
                        "transitivity fails at {} -> {}",
                        src.render_word(&r1.lhs),
                        src.render_word(&r2.rhs)
                    ),
                });
            }
        }
    }
    // Condition 5, contexts truncated so the wrapped sides stay within the
    // bound.
    for rel in &src_rels {
        let max_side = rel.lhs.len().max(rel.rhs.len());
        if max_side > max_len {
            continue;
        }
        let room = max_len - max_side;
        for w in src.words_up_to(room) {
            for wp in src.words_up_to(room.saturating_sub(w.len())) {
                let wrapped = Relation::new(
                    w.concat(&rel.lhs).concat(&wp),
                    w.concat(&rel.rhs).concat(&wp),
                );
                let image = Relation::new(f.apply(&wrapped.lhs)?, f.apply(&wrapped.rhs)?);
                if tgt.has_relation(&image) && !src.has_relation(&wrapped) {
                    return Ok(Bounded::Fails {
                        witness: format!(
                            "context fails at {} -> {}",
                            src.render_word(&wrapped.lhs),
                            src.render_word(&wrapped.rhs)
                        ),
                    });
                }
            }
        }
    }
    Ok(Bounded::HoldsUpTo(max_len))
}

/// Bounded pseudo-fibrancy of an object: every word of length at most
/// `max_len` has a generator representative, and the relations restricted
/// to sides within the bound are congruence-closed.
pub fn is_pseudo_fibrant(p: &Presentation, max_len: usize) -> Bounded {
    // Generator representatives.
    for u in p.words_up_to(max_len) {
        let has_rep = p
            .gen_ids()
            .any(|a| p.has_relation(&Relation::new(u.clone(), Word::single(a))));
        if !has_rep {
            return Bounded::Fails {
                witness: format!("word {} has no generator representative", p.render_word(&u)),
            };
        }
    }
    // Reflexivity.
    for u in p.words_up_to(max_len) {
        if !p.has_relation(&Relation::new(u.clone(), u.clone())) {
            return Bounded::Fails {
                witness: format!("missing reflexivity at {}", p.render_word(&u)),
            };
        }
    }
    let members = p.enumerate_relations(max_len);
    for rel in &members {
        if !p.has_relation(&rel.reversed()) {
            return Bounded::Fails {
                witness: format!(
                    "missing symmetry for {} -> {}",
                    p.render_word(&rel.lhs),
                    p.render_word(&rel.rhs)
                ),
            };
        }
    }
    for r1 in &members {
        for r2 in &members {
            if r1.rhs == r2.lhs && !p.has_relation(&Relation::new(r1.lhs.clone(), r2.rhs.clone())) {
                return Bounded::Fails {
                    witness: format!(
                        "missing transitivity for {} -> {}",
                        p.render_word(&r1.lhs),
                        p.render_word(&r2.rhs)
                    ),
                };
            }
        }
    }
    for rel in &members {
        let max_side = rel.lhs.len().max(rel.rhs.len());
        let room = max_len - max_side;
        for w in p.words_up_to(room) {
            for wp in p.words_up_to(room.saturating_sub(w.len())) {
                let wrapped = Relation::new(
                    w.concat(&rel.lhs).concat(&wp),
                    w.concat(&rel.rhs).concat(&wp),
                );
                if !p.has_relation(&wrapped) {
                    return Bounded::Fails {
                        witness: format!(
                            "missing context closure for {} -> {}",
                            p.render_word(&wrapped.lhs),
                            p.render_word(&wrapped.rhs)
                        ),
                    };
                }
            }
        }
    }
    Bounded::HoldsUpTo(max_len)
}
