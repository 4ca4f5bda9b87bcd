//! Factorization characterizations of surjectivity and injectivity.
//!
//! The induced map on presented monoids is surjective exactly when every
//! generator-picking square factors through an equivalence presentation
//! `E^{1,n}`, and injective exactly when every square over a canonical
//! inclusion `G^{m,n} → E^{m,n}` factors through a source-side equivalence
//! presentation pushed out along the boundary. Both searches are budgeted;
//! absence at a budget is not a refutation.

use std::sync::Arc;

use crate::calculus::equiv_pres::{make_equivalence_presentation, EquivalencePresentation};
use crate::category::colimits::{pushout, Pushout};
use crate::category::shapes::g;
use crate::core::morphism::Morphism;
use crate::core::word::{GenId, Word};
use crate::error::{Error, Result};
use crate::rewriting::derivation::Derivation;
use crate::rewriting::search::search_derivation;
use crate::rewriting::verdict::SearchBudget;

/// A factored generator-picking square.
#[derive(Debug, Clone)]
pub struct SurjFactorization {
    /// The source word whose image presents the generator.
    pub witness: Word,
    /// Target derivation `b ~ w*(witness)`.
    pub derivation: Derivation,
    /// The equivalence presentation encoding the derivation.
    pub eq: EquivalencePresentation,
    /// `G → E^{1,n}` picking the left boundary.
    pub generator_leg: Morphism,
    /// `Gⁿ → E^{1,n}` picking the right boundary.
    pub through: Morphism,
    /// `E^{1,n} → Q` realizing the derivation.
    pub onto: Morphism,
    /// `Gⁿ → P` picking the witness word.
    pub word_leg: Morphism,
}

/// Searches a word `v` with `w*(v) ~ b` and packages the factorization.
pub fn surj_factor(
    w: &Morphism,
    generator: GenId,
    budget: &SearchBudget,
) -> Result<Option<SurjFactorization>> {
    let tgt = w.tgt();
    if generator.index() >= tgt.gen_count() {
        return Err(Error::GeneratorOutOfRange(
            generator.index(),
            tgt.gen_count(),
        ));
    }
    let fibers = w.fibers();
    let rules = tgt.congruence_rules();
    // Breadth-first over the target congruence from the generator until a
    // word in the image of w* appears (see the weak-equivalence search).
    let found = crate::model::weq::image_word_search(&rules, &fibers, generator, budget);
    let Some((witness, to_generator)) = found else {
        return Ok(None);
    };
    // to_generator: w*(witness) ~ b; store b ~ w*(witness).
    let derivation = to_generator.reversed();
    let (eq, onto) = make_equivalence_presentation(tgt, &derivation)?;
    let generator_leg = Morphism::new(
        Arc::new(g()),
        eq.carrier.clone(),
        eq.boundary_left.letters().collect(),
    )?;
    let through = Morphism::new(
        Arc::new(crate::category::shapes::g_n(eq.n)),
        eq.carrier.clone(),
        eq.boundary_right.letters().collect(),
    )?;
    let word_leg = crate::category::repr::word_as_morphism(&witness, w.src())?;
    Ok(Some(SurjFactorization {
        witness,
        derivation,
        eq,
        generator_leg,
        through,
        onto,
        word_leg,
    }))
}

/// A factored injectivity square.
#[derive(Debug, Clone)]
pub struct InjFactorization {
    /// Source derivation `u ~ v`.
    pub derivation: Derivation,
    /// Source-side equivalence presentation of the derivation.
    pub eq_source: EquivalencePresentation,
    /// Target-side equivalence presentation of the given image proof.
    pub eq_target: EquivalencePresentation,
    /// The pushout of the two equivalence presentations over `G^{m,n}`.
    pub pushout: Pushout,
    /// The mediating morphism from the pushout into the target.
    pub mediating: Morphism,
}

/// Given words `u, v` in the source and a target derivation
/// `w*(u) ~ w*(v)`, searches a source derivation `u ~ v` and factors the
/// square through the pushout of the two equivalence presentations.
pub fn inj_factor(
    w: &Morphism,
    u: &Word,
    v: &Word,
    image_proof: &Derivation,
    budget: &SearchBudget,
) -> Result<Option<InjFactorization>> {
    let src = w.src();
    let tgt = w.tgt();
    if image_proof.start != w.apply(u)? || image_proof.end != w.apply(v)? {
        return Err(Error::Precondition(
            "image proof does not connect the image words".into(),
        ));
    }
    let derivation = match search_derivation(src, u, v, budget) {
        Ok(d) => d,
        Err(_) => return Ok(None),
    };
    let (eq_source, realize_source) = make_equivalence_presentation(src, &derivation)?;
    let (eq_target, realize_target) = make_equivalence_presentation(tgt, image_proof)?;
    // Both inclusions start at G^{m,n} with m = ℓ(u), n = ℓ(v).
    let po = pushout(&eq_target.inclusion(), &eq_source.inclusion())?;
    // Mediating map: target letters realize directly, source letters
    // through w; the boundary identifications agree because both realize
    // the same image words.
    let mut mediating = vec![None; po.presentation.gen_count()];
    for e in eq_target.carrier.gen_ids() {
        mediating[po.left.apply_gen(e).index()] = Some(realize_target.apply_gen(e));
    }
    for e in eq_source.carrier.gen_ids() {
        let through_w = w.apply_gen(realize_source.apply_gen(e));
        let slot = &mut mediating[po.right.apply_gen(e).index()];
        if let Some(existing) = slot {
            if *existing != through_w {
                return Err(Error::Precondition(
                    "boundary realizations disagree".into(),
                ));
            }
        } else {
            *slot = Some(through_w);
        }
    }
    let mediating = Morphism::new(
        po.presentation.clone(),
        tgt.clone(),
        mediating
            .into_iter()
            .map(|m| m.expect("pushout class realized"))
            .collect(),
    )?;
    Ok(Some(InjFactorization {
        derivation,
        eq_source,
        eq_target,
        pushout: po,
        mediating,
    }))
}
