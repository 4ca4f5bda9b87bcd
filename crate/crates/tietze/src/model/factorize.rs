//! The mono / trivial-fibration factorization and the cospan it induces.
//!
//! Every morphism `f : P → Q` factors through the presentation on
//! `P₁ ⊔ Q₁` whose relations are the full preimage of `Q`'s: the inclusion
//! of the `P`-part is a monomorphism and the projection reflects relations
//! by construction. The preimage relation set is infinite, which is
//! exactly what the pullback representation is for — the factorization is
//! exact, not truncated.

use std::sync::Arc;

use crate::category::colimits::{copair, coproduct};
use crate::core::morphism::Morphism;
use crate::core::presentation::{Presentation, RelSet};
use crate::core::word::GenId;
use crate::error::Result;

/// `f = fibration ∘ cofibration` through `mid`.
#[derive(Debug, Clone)]
pub struct Factorization {
    pub mid: Arc<Presentation>,
    pub cofibration: Morphism,
    pub fibration: Morphism,
}

pub fn factor_mono_tfib(f: &Morphism) -> Result<Factorization> {
    let p = f.src();
    let q = f.tgt();
    let mut names = Vec::with_capacity(p.gen_count() + q.gen_count());
    for name in p.gen_names() {
        if q.gen_names().contains(name) {
            names.push(format!("{name}'0"));
        } else {
            names.push(name.clone());
        }
    }
    for name in q.gen_names() {
        if p.gen_names().contains(name) {
            names.push(format!("{name}'1"));
        } else {
            names.push(name.clone());
        }
    }
    let mut projection: Vec<GenId> = Vec::with_capacity(names.len());
    projection.extend(f.map().iter().copied());
    projection.extend(q.gen_ids());
    let mid = Arc::new(Presentation::new(
        names,
        RelSet::Pullback {
            map: projection.clone(),
            target: q.clone(),
        },
        q.is_reflexive(),
    )?);
    let cofibration = Morphism::new(p.clone(), mid.clone(), p.gen_ids().collect())?;
    let fibration = Morphism::new(mid.clone(), q.clone(), projection)?;
    debug_assert_eq!(&cofibration.then(&fibration)?, f);
    Ok(Factorization {
        mid,
        cofibration,
        fibration,
    })
}

/// A weak equivalence factored as a cospan: `section_left` from the
/// source, `section_right` a section of the fibration from the target.
#[derive(Debug, Clone)]
pub struct KenBrownCospan {
    pub mid: Arc<Presentation>,
    pub section_left: Morphism,
    pub section_right: Morphism,
    pub fibration: Morphism,
}

/// Factors `(w, id) : P ⊔ Q → Q` through the mono / trivial-fibration
/// factorization. The contracts hold exactly: `fibration ∘ section_left =
/// w`, `fibration ∘ section_right = id`, both sections are monomorphisms
/// and the projection is a trivial fibration by construction. When `w` is
/// a certified weak equivalence, both sections are trivial cofibrations by
/// two-out-of-three.
pub fn ken_brown_cospan(w: &Morphism) -> Result<KenBrownCospan> {
    let q = w.tgt();
    let sum = coproduct(w.src(), q)?;
    let fold = copair(&sum, w, &Morphism::identity(q))?;
    let factored = factor_mono_tfib(&fold)?;
    let section_left = sum.left.then(&factored.cofibration)?;
    let section_right = sum.right.then(&factored.cofibration)?;
    debug_assert_eq!(&section_left.then(&factored.fibration)?, w);
    debug_assert_eq!(
        section_right.then(&factored.fibration)?,
        Morphism::identity(q)
    );
    Ok(KenBrownCospan {
        mid: factored.mid,
        section_left,
        section_right,
        fibration: factored.fibration,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::presentation::Relation;
    use crate::model::fibrations::is_trivial_fibration;

    fn arc(p: Presentation) -> Arc<Presentation> {
        Arc::new(p)
    }

    #[test]
    fn identity_factorization() {
        let p = arc(Presentation::build(&["a"], &[], true).unwrap());
        let f = Morphism::identity(&p);
        let fact = factor_mono_tfib(&f).unwrap();
        assert_eq!(fact.mid.gen_names(), &["a'0".to_string(), "a'1".to_string()]);
        assert!(fact.cofibration.is_mono());
        assert!(is_trivial_fibration(&fact.fibration).unwrap());
        assert_eq!(
            fact.cofibration.then(&fact.fibration).unwrap(),
            f
        );
    }

    #[test]
    fn pullback_membership_through_the_factorization() {
        // f: ⟨a⟩ → ⟨b | bb→b⟩: (a b, a') ∈ mid since (bb, b) ∈ target.
        let p = arc(Presentation::build(&["a"], &[], true).unwrap());
        let q = arc(Presentation::build(&["b"], &[("b b", "b")], true).unwrap());
        let f = Morphism::by_names(&p, &q, &[("a", "b")]).unwrap();
        let fact = factor_mono_tfib(&f).unwrap();
        assert_eq!(fact.mid.gen_count(), 2);
        let rel = Relation::new(
            fact.mid.parse_word("a b").unwrap(),
            fact.mid.parse_word("a").unwrap(),
        );
        assert!(fact.mid.has_relation(&rel));
        assert!(is_trivial_fibration(&fact.fibration).unwrap());
    }

    #[test]
    fn ken_brown_contracts_on_identity() {
        let p = arc(Presentation::build(&["a"], &[("a a", "1")], true).unwrap());
        let w = Morphism::identity(&p);
        let kb = ken_brown_cospan(&w).unwrap();
        assert_eq!(kb.section_left.then(&kb.fibration).unwrap(), w);
        assert_eq!(
            kb.section_right.then(&kb.fibration).unwrap(),
            Morphism::identity(&p)
        );
        assert!(kb.section_left.is_mono());
        assert!(kb.section_right.is_mono());
        assert!(is_trivial_fibration(&kb.fibration).unwrap());
    }
}
