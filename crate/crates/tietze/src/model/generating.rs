//! Generating families of inclusions.
//!
//! The cofibration generators are the inclusion of a generator and the
//! boundary inclusion of a single relation. The pseudo-generating family
//! consists of five shapes of inclusions, parameterized by word lengths
//! only; their pushouts are exactly the elementary transformation steps.

use std::sync::Arc;

use crate::category::shapes::{g, g_n, r_mn};
use crate::core::morphism::Morphism;
use crate::core::presentation::{Presentation, Relation};
use crate::core::word::{GenId, Word};

/// A generating cofibration: `∅ → G` or `G^{m+n} → R^{m,n}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GenCofibration {
    GenInclusion,
    RelInclusion { m: usize, n: usize },
}

impl GenCofibration {
    pub fn domain(&self) -> Presentation {
        match self {
            GenCofibration::GenInclusion => Presentation::empty(),
            GenCofibration::RelInclusion { m, n } => g_n(m + n),
        }
    }

    pub fn codomain(&self) -> Presentation {
        match self {
            GenCofibration::GenInclusion => g(),
            GenCofibration::RelInclusion { m, n } => r_mn(*m, *n),
        }
    }

    pub fn inclusion(&self) -> Morphism {
        let dom = Arc::new(self.domain());
        let cod = Arc::new(self.codomain());
        let map = dom.gen_ids().collect();
        Morphism::new(dom, cod, map).expect("inclusion of a standard shape")
    }
}

/// All generating cofibrations with `m, n ≤ bound`.
pub fn generating_cofibrations(bound: usize) -> Vec<GenCofibration> {
    let mut out = vec![GenCofibration::GenInclusion];
    for m in 0..=bound {
        for n in 0..=bound {
            out.push(GenCofibration::RelInclusion { m, n });
        }
    }
    out
}

/// One of the five families of pseudo-generating trivial cofibrations,
/// parameterized by the lengths of the words involved. In each codomain
/// `u, v, w, w'` are consecutive blocks of the standard generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum JMorphism {
    /// `G^m ↪ ⟨a1…a(m+1) | u -> a(m+1)⟩`.
    AddGenerator { m: usize },
    /// `G^m ↪ ⟨a1…am | u -> u⟩`; the identity among reflexive
    /// presentations, where the diagonal is implicit.
    AddReflexivity { m: usize },
    /// `⟨… | u -> v⟩ ↪ ⟨… | u -> v, v -> u⟩`.
    AddSymmetry { m: usize, n: usize },
    /// `⟨… | u -> v, v -> w⟩ ↪ ⟨… | u -> v, v -> w, u -> w⟩`.
    AddTransitivity { m: usize, n: usize, p: usize },
    /// `⟨… | u -> v⟩ ↪ ⟨… | u -> v, w u w' -> w v w'⟩`.
    AddContext {
        m: usize,
        n: usize,
        p: usize,
        q: usize,
    },
}

fn block(from: usize, len: usize) -> Word {
    Word::from_ids((from as u32)..(from + len) as u32)
}

impl JMorphism {
    /// Total number of generators in the domain.
    pub fn domain_size(&self) -> usize {
        match self {
            JMorphism::AddGenerator { m } => *m,
            JMorphism::AddReflexivity { m } => *m,
            JMorphism::AddSymmetry { m, n } => m + n,
            JMorphism::AddTransitivity { m, n, p } => m + n + p,
            JMorphism::AddContext { m, n, p, q } => m + n + p + q,
        }
    }

    /// The blocks `(u, v, w, w')` of the domain's standard generators, as
    /// far as the family uses them.
    pub fn blocks(&self) -> (Word, Option<Word>, Option<Word>, Option<Word>) {
        match self {
            JMorphism::AddGenerator { m } | JMorphism::AddReflexivity { m } => {
                (block(0, *m), None, None, None)
            }
            JMorphism::AddSymmetry { m, n } => (block(0, *m), Some(block(*m, *n)), None, None),
            JMorphism::AddTransitivity { m, n, p } => (
                block(0, *m),
                Some(block(*m, *n)),
                Some(block(m + n, *p)),
                None,
            ),
            JMorphism::AddContext { m, n, p, q } => (
                block(0, *m),
                Some(block(*m, *n)),
                Some(block(m + n, *p)),
                Some(block(m + n + p, *q)),
            ),
        }
    }

    pub fn domain(&self) -> Presentation {
        let size = self.domain_size();
        let base = g_n(size);
        match self {
            JMorphism::AddGenerator { .. } | JMorphism::AddReflexivity { .. } => base,
            JMorphism::AddSymmetry { .. } | JMorphism::AddContext { .. } => {
                let (u, v, _, _) = self.blocks();
                base.with_added_relation(Relation::new(u, v.expect("symmetry has v")))
                    .expect("standard relation")
            }
            JMorphism::AddTransitivity { .. } => {
                let (u, v, w, _) = self.blocks();
                let v = v.expect("transitivity has v");
                let w = w.expect("transitivity has w");
                base.with_added_relation(Relation::new(u, v.clone()))
                    .and_then(|p| p.with_added_relation(Relation::new(v, w)))
                    .expect("standard relations")
            }
        }
    }

    pub fn codomain(&self) -> Presentation {
        let dom = self.domain();
        let (u, v, w, wp) = self.blocks();
        match self {
            JMorphism::AddGenerator { m } => {
                let ext = dom
                    .with_added_gen(&format!("a{}", m + 1))
                    .expect("fresh standard name");
                ext.with_added_relation(Relation::new(u, Word::single(GenId(*m as u32))))
                    .expect("added relation")
            }
            JMorphism::AddReflexivity { .. } => dom
                .with_added_relation(Relation::new(u.clone(), u))
                .expect("added relation"),
            JMorphism::AddSymmetry { .. } => dom
                .with_added_relation(Relation::new(v.expect("has v"), u))
                .expect("added relation"),
            JMorphism::AddTransitivity { .. } => dom
                .with_added_relation(Relation::new(u, w.expect("has w")))
                .expect("added relation"),
            JMorphism::AddContext { .. } => {
                let v = v.expect("has v");
                let w = w.expect("has w");
                let wp = wp.expect("has w'");
                dom.with_added_relation(Relation::new(
                    w.concat(&u).concat(&wp),
                    w.concat(&v).concat(&wp),
                ))
                .expect("added relation")
            }
        }
    }

    pub fn inclusion(&self) -> Morphism {
        let dom = Arc::new(self.domain());
        let cod = Arc::new(self.codomain());
        let map = dom.gen_ids().collect();
        Morphism::new(dom, cod, map).expect("inclusion of a standard shape")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generating_cofibrations_are_monos() {
        for i in generating_cofibrations(2) {
            let f = i.inclusion();
            assert!(f.is_mono());
            assert!(f.validate(4).is_ok());
        }
    }

    #[test]
    fn j_families_are_monic_inclusions() {
        let families = [
            JMorphism::AddGenerator { m: 2 },
            JMorphism::AddReflexivity { m: 2 },
            JMorphism::AddSymmetry { m: 1, n: 2 },
            JMorphism::AddTransitivity { m: 1, n: 1, p: 2 },
            JMorphism::AddContext {
                m: 1,
                n: 1,
                p: 1,
                q: 1,
            },
        ];
        for j in families {
            let f = j.inclusion();
            assert!(f.is_mono(), "{j:?}");
            assert!(f.validate(6).is_ok(), "{j:?}");
        }
    }

    #[test]
    fn add_generator_shape() {
        let j = JMorphism::AddGenerator { m: 2 };
        let cod = j.codomain();
        assert_eq!(cod.gen_count(), 3);
        let rel = Relation::new(Word::from_ids([0, 1]), Word::from_ids([2]));
        assert!(cod.has_relation(&rel));
    }

    #[test]
    fn add_context_keeps_the_base_relation() {
        let j = JMorphism::AddContext {
            m: 1,
            n: 1,
            p: 1,
            q: 0,
        };
        let cod = j.codomain();
        // u -> v survives next to w u -> w v, otherwise the inclusion
        // would not be a morphism.
        assert!(cod.has_relation(&Relation::new(Word::from_ids([0]), Word::from_ids([1]))));
        assert!(cod.has_relation(&Relation::new(Word::from_ids([2, 0]), Word::from_ids([2, 1]))));
    }
}
