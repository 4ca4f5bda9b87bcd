//! Morphisms of presentations.
//!
//! A morphism is a total generator map. The law it must satisfy is the
//! reflexive-category one: every source relation maps to a target relation
//! or to a pair of equal words. The law quantifies over all enumerable
//! source relations, so it is checked up to a caller-supplied length bound
//! (exactly, for explicit sources).

use std::sync::Arc;

use crate::core::presentation::{Presentation, Relation};
use crate::core::word::{GenId, Word};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Morphism {
    src: Arc<Presentation>,
    tgt: Arc<Presentation>,
    map: Vec<GenId>,
}

/// A source relation whose image is neither a target relation nor a pair of
/// equal words.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub relation: Relation,
    pub image: Relation,
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "relation image is neither present nor equal-sided")
    }
}

impl Morphism {
    pub fn new(src: Arc<Presentation>, tgt: Arc<Presentation>, map: Vec<GenId>) -> Result<Self> {
        if map.len() != src.gen_count() {
            return Err(Error::MapArity {
                got: map.len(),
                want: src.gen_count(),
            });
        }
        for g in &map {
            if g.index() >= tgt.gen_count() {
                return Err(Error::GeneratorOutOfRange(g.index(), tgt.gen_count()));
            }
        }
        Ok(Morphism { src, tgt, map })
    }

    /// Builds a morphism from generator names, `pairs` listing
    /// `(source, target)` names.
    pub fn by_names(
        src: &Arc<Presentation>,
        tgt: &Arc<Presentation>,
        pairs: &[(&str, &str)],
    ) -> Result<Self> {
        let mut map = Vec::with_capacity(src.gen_count());
        for name in src.gen_names() {
            let (_, to) = pairs
                .iter()
                .find(|(from, _)| from == name)
                .ok_or_else(|| Error::UnknownLetter(name.clone()))?;
            let id = tgt
                .gen_id(to)
                .ok_or_else(|| Error::UnknownLetter(to.to_string()))?;
            map.push(id);
        }
        Morphism::new(src.clone(), tgt.clone(), map)
    }

    pub fn identity(p: &Arc<Presentation>) -> Self {
        Morphism {
            src: p.clone(),
            tgt: p.clone(),
            map: p.gen_ids().collect(),
        }
    }

    pub fn src(&self) -> &Arc<Presentation> {
        &self.src
    }

    pub fn tgt(&self) -> &Arc<Presentation> {
        &self.tgt
    }

    pub fn map(&self) -> &[GenId] {
        &self.map
    }

    pub fn apply_gen(&self, g: GenId) -> GenId {
        self.map[g.index()]
    }

    /// The letterwise extension `f*` to words.
    pub fn apply(&self, u: &Word) -> Result<Word> {
        self.src.check_word(u)?;
        Ok(Word(u.letters().map(|g| self.apply_gen(g)).collect()))
    }

    pub fn apply_relation(&self, rel: &Relation) -> Result<Relation> {
        Ok(Relation::new(self.apply(&rel.lhs)?, self.apply(&rel.rhs)?))
    }

    /// `other` after `self` (so `self.then(g) = g ∘ self`).
    pub fn then(&self, other: &Morphism) -> Result<Morphism> {
        if self.tgt != other.src {
            return Err(Error::ComposeMismatch);
        }
        Ok(Morphism {
            src: self.src.clone(),
            tgt: other.tgt.clone(),
            map: self.map.iter().map(|g| other.apply_gen(*g)).collect(),
        })
    }

    /// Checks the morphism law on all source relations with sides of length
    /// at most `max_side`, reporting the first violation in relation order.
    pub fn validate(&self, max_side: usize) -> std::result::Result<(), Violation> {
        for rel in self.src.enumerate_relations(max_side) {
            let image = Relation::new(
                self.apply(&rel.lhs).expect("relation over source alphabet"),
                self.apply(&rel.rhs).expect("relation over source alphabet"),
            );
            if image.lhs != image.rhs && !self.tgt.has_relation(&image) {
                return Err(Violation {
                    relation: rel,
                    image,
                });
            }
        }
        Ok(())
    }

    /// Validates explicit sources exactly; intensional parts are checked up
    /// to `fallback_bound`.
    pub fn validate_exact_or(&self, fallback_bound: usize) -> std::result::Result<(), Violation> {
        let bound = match self.src.require_explicit() {
            Ok(set) => set.iter().map(|r| r.max_side_len()).max().unwrap_or(0),
            Err(_) => fallback_bound,
        };
        self.validate(bound)
    }

    pub fn is_mono(&self) -> bool {
        for i in 0..self.map.len() {
            for j in (i + 1)..self.map.len() {
                if self.map[i] == self.map[j] {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_epi(&self) -> bool {
        let mut hit = vec![false; self.tgt.gen_count()];
        for g in &self.map {
            hit[g.index()] = true;
        }
        hit.into_iter().all(|b| b)
    }

    /// Letterwise preimages of each target generator.
    pub fn fibers(&self) -> Vec<Vec<GenId>> {
        let mut fibers = vec![Vec::new(); self.tgt.gen_count()];
        for (i, g) in self.map.iter().enumerate() {
            fibers[g.index()].push(GenId(i as u32));
        }
        fibers
    }
}

/// All letterwise preimages of `w` under the fiber decomposition, in
/// lexicographic order. Empty when some letter has an empty fiber.
pub fn word_preimages(fibers: &[Vec<GenId>], w: &Word) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for g in w.letters() {
        let fiber = &fibers[g.index()];
        if fiber.is_empty() {
            return Vec::new();
        }
        let mut next = Vec::with_capacity(out.len() * fiber.len());
        for prefix in &out {
            for pre in fiber {
                next.push(prefix.concat(&Word::single(*pre)));
            }
        }
        out = next;
    }
    out
}
