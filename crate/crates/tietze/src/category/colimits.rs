//! Finite colimits: coproducts, pushouts, coequalizers.
//!
//! The generator-level functor to sets preserves all of these, so carriers
//! are computed as set colimits and relations as images. Textbook accounts
//! assume disjoint generator names; here collisions are renamed
//! deterministically.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::core::morphism::Morphism;
use crate::core::presentation::{Presentation, RelSet, Relation};
use crate::core::word::{GenId, Word};
use crate::error::{Error, Result};
use crate::util::{freshen, UnionFind};

/// A coproduct together with its injections.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub presentation: Arc<Presentation>,
    pub left: Morphism,
    pub right: Morphism,
}

/// Disjoint union of generators and relations. Colliding names get a side
/// suffix: `a` becomes `a'0` on the left and `a'1` on the right.
pub fn coproduct(p: &Arc<Presentation>, q: &Arc<Presentation>) -> Result<Coproduct> {
    let p_rels = p.require_explicit()?;
    let q_rels = q.require_explicit()?;
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
    let offset = p.gen_count() as u32;
    let shift = |w: &Word| Word(w.letters().map(|g| GenId(g.0 + offset)).collect());
    let mut rels: BTreeSet<Relation> = p_rels;
    for rel in q_rels {
        rels.insert(Relation::new(shift(&rel.lhs), shift(&rel.rhs)));
    }
    let sum = Arc::new(Presentation::new(
        names,
        RelSet::Explicit(rels),
        p.is_reflexive() && q.is_reflexive(),
    )?);
    let left = Morphism::new(p.clone(), sum.clone(), p.gen_ids().collect())?;
    let right = Morphism::new(
        q.clone(),
        sum.clone(),
        q.gen_ids().map(|g| GenId(g.0 + offset)).collect(),
    )?;
    Ok(Coproduct {
        presentation: sum,
        left,
        right,
    })
}

/// The canonical copairing `[f, g]` out of a coproduct.
pub fn copair(sum: &Coproduct, f: &Morphism, g: &Morphism) -> Result<Morphism> {
    if f.tgt() != g.tgt() || f.src() != sum.left.src() || g.src() != sum.right.src() {
        return Err(Error::ComposeMismatch);
    }
    let mut map = Vec::with_capacity(sum.presentation.gen_count());
    map.extend(f.map().iter().copied());
    map.extend(g.map().iter().copied());
    Morphism::new(sum.presentation.clone(), f.tgt().clone(), map)
}

/// A pushout square's apex and cocone.
#[derive(Debug, Clone)]
pub struct Pushout {
    pub presentation: Arc<Presentation>,
    /// Cocone leg from `f`'s target.
    pub left: Morphism,
    /// Cocone leg from `g`'s target.
    pub right: Morphism,
}

/// Pushout of `Q¹ ←f– P –g→ Q²`: generators are the set pushout (the
/// disjoint union quotiented by `f(a) ~ g(a)`), relations are the cocone
/// images of both explicit relation sets.
///
/// Classes containing left-side generators are named after their least
/// left-side member, so the left leg is the identity on names whenever `f`
/// merges nothing; purely right-side classes keep their name, freshened
/// against the names already taken.
pub fn pushout(f: &Morphism, g: &Morphism) -> Result<Pushout> {
    if f.src() != g.src() {
        return Err(Error::Precondition("pushout legs share a source".into()));
    }
    f.validate_exact_or(8)
        .map_err(|_| Error::Precondition("left leg is not a morphism".into()))?;
    g.validate_exact_or(8)
        .map_err(|_| Error::Precondition("right leg is not a morphism".into()))?;
    let q1 = f.tgt();
    let q2 = g.tgt();
    let q1_rels = q1.require_explicit()?;
    let q2_rels = q2.require_explicit()?;

    let n1 = q1.gen_count();
    let n2 = q2.gen_count();
    let mut uf = UnionFind::new(n1 + n2);
    for a in f.src().gen_ids() {
        uf.union(f.apply_gen(a).index(), n1 + g.apply_gen(a).index());
    }
    // Canonical class order: by least member index (left block first).
    let mut roots: Vec<usize> = (0..n1 + n2).filter(|&i| uf.find(i) == i).collect();
    roots.sort();
    let mut class_of = vec![0usize; n1 + n2];
    for i in 0..n1 + n2 {
        let r = uf.find(i);
        class_of[i] = roots.binary_search(&r).expect("root present");
    }
    let mut names: Vec<String> = Vec::with_capacity(roots.len());
    for (c, &root) in roots.iter().enumerate() {
        let members_left: Vec<&String> = (0..n1)
            .filter(|&i| class_of[i] == c)
            .map(|i| &q1.gen_names()[i])
            .collect();
        let base = if let Some(least) = members_left.iter().min() {
            (*least).clone()
        } else {
            q2.gen_names()[root - n1].clone()
        };
        names.push(freshen(&base, &names));
    }
    let map_left: Vec<GenId> = (0..n1).map(|i| GenId(class_of[i] as u32)).collect();
    let map_right: Vec<GenId> = (0..n2).map(|i| GenId(class_of[n1 + i] as u32)).collect();
    let push_word = |w: &Word, map: &[GenId]| Word(w.letters().map(|g| map[g.index()]).collect());

    let mut rels: BTreeSet<Relation> = BTreeSet::new();
    for rel in &q1_rels {
        rels.insert(Relation::new(
            push_word(&rel.lhs, &map_left),
            push_word(&rel.rhs, &map_left),
        ));
    }
    for rel in &q2_rels {
        rels.insert(Relation::new(
            push_word(&rel.lhs, &map_right),
            push_word(&rel.rhs, &map_right),
        ));
    }
    let apex = Arc::new(Presentation::new(
        names,
        RelSet::Explicit(rels),
        q1.is_reflexive() && q2.is_reflexive(),
    )?);
    let left = Morphism::new(q1.clone(), apex.clone(), map_left)?;
    let right = Morphism::new(q2.clone(), apex.clone(), map_right)?;
    Ok(Pushout {
        presentation: apex,
        left,
        right,
    })
}

/// A coequalizer's quotient presentation and projection.
#[derive(Debug, Clone)]
pub struct Coequalizer {
    pub presentation: Arc<Presentation>,
    pub projection: Morphism,
}

/// Coequalizer of a parallel pair: the target's generators quotiented by
/// `f(a) ~ g(a)`, classes named after their least member, relations pushed
/// through the quotient.
pub fn coequalizer(f: &Morphism, g: &Morphism) -> Result<Coequalizer> {
    if f.src() != g.src() || f.tgt() != g.tgt() {
        return Err(Error::Precondition(
            "coequalizer needs a parallel pair".into(),
        ));
    }
    f.validate_exact_or(8)
        .map_err(|_| Error::Precondition("left leg is not a morphism".into()))?;
    g.validate_exact_or(8)
        .map_err(|_| Error::Precondition("right leg is not a morphism".into()))?;
    let q = f.tgt();
    let q_rels = q.require_explicit()?;
    let n = q.gen_count();
    let mut uf = UnionFind::new(n);
    for a in f.src().gen_ids() {
        uf.union(f.apply_gen(a).index(), g.apply_gen(a).index());
    }
    let mut roots: Vec<usize> = (0..n).filter(|&i| uf.find(i) == i).collect();
    roots.sort();
    let mut class_of = vec![0usize; n];
    for i in 0..n {
        class_of[i] = roots
            .binary_search(&uf.find(i))
            .expect("root present");
    }
    let names: Vec<String> = roots
        .iter()
        .enumerate()
        .map(|(c, _)| {
            (0..n)
                .filter(|&i| class_of[i] == c)
                .map(|i| q.gen_names()[i].clone())
                .min()
                .expect("class nonempty")
        })
        .collect();
    let map: Vec<GenId> = (0..n).map(|i| GenId(class_of[i] as u32)).collect();
    let push_word = |w: &Word| Word(w.letters().map(|g| map[g.index()]).collect());
    let rels: BTreeSet<Relation> = q_rels
        .iter()
        .map(|rel| Relation::new(push_word(&rel.lhs), push_word(&rel.rhs)))
        .collect();
    let quotient = Arc::new(Presentation::new(
        names,
        RelSet::Explicit(rels),
        q.is_reflexive(),
    )?);
    let projection = Morphism::new(q.clone(), quotient.clone(), map)?;
    Ok(Coequalizer {
        presentation: quotient,
        projection,
    })
}
