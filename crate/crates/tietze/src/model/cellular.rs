//! Cellular decompositions: composites of pushouts of generating cells.
//!
//! A cell stores the generating inclusion, the letters of its attaching
//! map into the presentation built so far, and the names of any generators
//! it adds. Replay folds the pushouts from the source; the attaching
//! morphism of each cell can be realized against the state it applies to.

use std::sync::Arc;

use crate::calculus::correspond::j_to_step;
use crate::calculus::step::apply_step;
use crate::category::shapes::g_pair;
use crate::core::morphism::Morphism;
use crate::core::presentation::{Presentation, Relation};
use crate::core::word::{GenId, Word};
use crate::error::{Error, Result};
use crate::model::generating::{GenCofibration, JMorphism};
use crate::util::freshen;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CellKind {
    Cofibration(GenCofibration),
    Pseudo(JMorphism),
}

/// One pushout cell: the generating inclusion, the attaching letters (a
/// generator map out of the inclusion's domain), and fresh names for the
/// generators the cell adds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    pub kind: CellKind,
    pub attach: Vec<GenId>,
    pub fresh: Vec<String>,
}

impl Cell {
    /// The attaching morphism realized against the state the cell applies
    /// to.
    pub fn attaching_morphism(&self, state: &Arc<Presentation>) -> Result<Morphism> {
        let dom = Arc::new(match &self.kind {
            CellKind::Cofibration(c) => c.domain(),
            CellKind::Pseudo(j) => j.domain(),
        });
        Morphism::new(dom, state.clone(), self.attach.clone())
    }

    fn apply(&self, state: &Presentation) -> Result<Presentation> {
        match &self.kind {
            CellKind::Cofibration(GenCofibration::GenInclusion) => {
                let name = self
                    .fresh
                    .first()
                    .ok_or_else(|| Error::BadStep("generator cell needs a name".into()))?;
                state.with_added_gen(name)
            }
            CellKind::Cofibration(GenCofibration::RelInclusion { m, n }) => {
                if self.attach.len() != m + n {
                    return Err(Error::MapArity {
                        got: self.attach.len(),
                        want: m + n,
                    });
                }
                let lhs = Word(self.attach[..*m].to_vec());
                let rhs = Word(self.attach[*m..].to_vec());
                state.check_word(&lhs)?;
                state.check_word(&rhs)?;
                state.with_added_relation(Relation::new(lhs, rhs))
            }
            CellKind::Pseudo(j) => {
                let arc = Arc::new(state.clone());
                let attach = self.attaching_morphism(&arc)?;
                let step = j_to_step(j, &attach, self.fresh.first().map(|s| s.as_str()))?;
                apply_step(state, &step)
            }
        }
    }
}

/// An ordered list of cells from a source, with the replay target pinned.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellularDecomposition {
    pub source: Arc<Presentation>,
    pub cells: Vec<Cell>,
    pub target: Presentation,
}

impl CellularDecomposition {
    pub fn build(source: Arc<Presentation>, cells: Vec<Cell>) -> Result<Self> {
        let mut state = (*source).clone();
        for cell in &cells {
            state = cell.apply(&state)?;
        }
        Ok(CellularDecomposition {
            source,
            cells,
            target: state,
        })
    }

    /// Replays the pushouts from the source and checks the result against
    /// the stored target.
    pub fn replay(&self) -> Result<Presentation> {
        let mut state = (*self.source).clone();
        for cell in &self.cells {
            state = cell.apply(&state)?;
        }
        if state != self.target {
            return Err(Error::BadStep(
                "cellular replay does not reach the target".into(),
            ));
        }
        Ok(state)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Decomposes a monomorphism into generating-cofibration cells: first one
/// generator cell per target generator outside the image, then one
/// relation cell per explicit target relation not already present. When
/// `f` preserves names the replay target equals its codomain up to the
/// canonical renaming.
pub fn cellular_decomposition(f: &Morphism) -> Result<CellularDecomposition> {
    if !f.is_mono() {
        return Err(Error::Precondition(
            "cellular decomposition needs a monomorphism".into(),
        ));
    }
    let p = f.src();
    let q = f.tgt();
    if p.is_reflexive() != q.is_reflexive() {
        return Err(Error::Precondition(
            "source and target must agree on reflexivity".into(),
        ));
    }
    let p_rels = p.require_explicit()?;
    let q_rels = q.require_explicit()?;

    // Translation from target generators into the replayed alphabet:
    // image generators come from the source, new ones are appended in
    // target order.
    let mut translate: Vec<Option<GenId>> = vec![None; q.gen_count()];
    for a in p.gen_ids() {
        translate[f.apply_gen(a).index()] = Some(a);
    }
    let mut cells = Vec::new();
    let mut names: Vec<String> = p.gen_names().to_vec();
    for b in q.gen_ids() {
        if translate[b.index()].is_none() {
            let name = freshen(q.gen_name(b), &names);
            translate[b.index()] = Some(GenId(names.len() as u32));
            names.push(name.clone());
            cells.push(Cell {
                kind: CellKind::Cofibration(GenCofibration::GenInclusion),
                attach: Vec::new(),
                fresh: vec![name],
            });
        }
    }
    let translate_word = |w: &Word| -> Word {
        Word(
            w.letters()
                .map(|b| translate[b.index()].expect("every target generator translated"))
                .collect(),
        )
    };
    let image: std::collections::BTreeSet<Relation> = p_rels
        .iter()
        .map(|rel| {
            Ok(Relation::new(f.apply(&rel.lhs)?, f.apply(&rel.rhs)?))
        })
        .collect::<Result<_>>()?;
    for rel in &q_rels {
        if image.contains(rel) {
            continue;
        }
        let lhs = translate_word(&rel.lhs);
        let rhs = translate_word(&rel.rhs);
        cells.push(Cell {
            kind: CellKind::Cofibration(GenCofibration::RelInclusion {
                m: lhs.len(),
                n: rhs.len(),
            }),
            attach: lhs.letters().chain(rhs.letters()).collect(),
            fresh: Vec::new(),
        });
    }
    CellularDecomposition::build(p.clone(), cells)
}

/// The attaching morphism of a relation cell, for callers that want the
/// full pushout square spelled out.
pub fn relation_attachment(
    state: &Arc<Presentation>,
    lhs: &Word,
    rhs: &Word,
) -> Result<Morphism> {
    let dom = Arc::new(g_pair(lhs.len(), rhs.len()));
    Morphism::new(
        dom,
        state.clone(),
        lhs.letters().chain(rhs.letters()).collect(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::canon::canonically_equal;

    #[test]
    fn decomposes_from_the_empty_presentation() {
        let empty = Arc::new(Presentation::empty());
        let q = Arc::new(Presentation::build(&["a"], &[("a a", "1")], true).unwrap());
        let f = Morphism::new(empty, q.clone(), vec![]).unwrap();
        let cd = cellular_decomposition(&f).unwrap();
        // One generator cell, then one relation cell with m = 2, n = 0.
        assert_eq!(cd.len(), 2);
        assert!(matches!(
            cd.cells[1].kind,
            CellKind::Cofibration(GenCofibration::RelInclusion { m: 2, n: 0 })
        ));
        let replayed = cd.replay().unwrap();
        assert!(canonically_equal(&replayed, &q).unwrap());
    }

    #[test]
    fn identity_has_empty_decomposition() {
        let p = Arc::new(Presentation::build(&["a", "b"], &[("a b", "b a")], true).unwrap());
        let cd = cellular_decomposition(&Morphism::identity(&p)).unwrap();
        assert!(cd.is_empty());
        assert_eq!(cd.replay().unwrap(), *p);
    }

    #[test]
    fn non_mono_is_rejected() {
        let p = Arc::new(Presentation::build(&["a", "b"], &[], true).unwrap());
        let q = Arc::new(Presentation::build(&["c"], &[], true).unwrap());
        let f = Morphism::by_names(&p, &q, &[("a", "c"), ("b", "c")]).unwrap();
        assert!(cellular_decomposition(&f).is_err());
    }
}
