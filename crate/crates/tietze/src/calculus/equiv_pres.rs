//! Equivalence presentations: a derivation packaged as a presentation.
//!
//! A derivation between words of lengths `m` and `n` is encoded as a
//! presentation whose generators are abstract letter positions — the
//! boundary words play the roles of the `a`- and `b`-blocks, shared
//! letters and all — and whose relations are the rewrites performed, each
//! oriented like the presentation relation it came from. No normalization
//! (disjointness, non-repetition) is imposed.

use std::sync::Arc;

use crate::category::shapes::g_pair;
use crate::core::morphism::Morphism;
use crate::core::presentation::{Presentation, RelSet, Relation};
use crate::core::word::{GenId, Word};
use crate::error::{Error, Result};
use crate::rewriting::derivation::{Derivation, DerivationStep, Direction};

/// One abstract rewrite inside the carrier: contexts, the pre- and
/// post-words of the redex, and the direction the stored relation is read.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqStep {
    pub left: Word,
    pub pre: Word,
    pub post: Word,
    pub direction: Direction,
    pub right_context: Word,
}

impl EqStep {
    /// The oriented carrier relation this step references.
    pub fn relation(&self) -> Relation {
        match self.direction {
            Direction::Forward => Relation::new(self.pre.clone(), self.post.clone()),
            Direction::Backward => Relation::new(self.post.clone(), self.pre.clone()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EquivalencePresentation {
    pub m: usize,
    pub n: usize,
    pub carrier: Arc<Presentation>,
    /// The abstract word of length `m` standing for the left endpoint.
    pub boundary_left: Word,
    /// The abstract word of length `n` standing for the right endpoint.
    pub boundary_right: Word,
    pub steps: Vec<EqStep>,
}

impl EquivalencePresentation {
    /// The canonical inclusion `G^{m,n} → E^{m,n}` picking the boundary
    /// letters.
    pub fn inclusion(&self) -> Morphism {
        let dom = Arc::new(g_pair(self.m, self.n));
        let map = self
            .boundary_left
            .letters()
            .chain(self.boundary_right.letters())
            .collect();
        Morphism::new(dom, self.carrier.clone(), map).expect("boundary letters in carrier")
    }

    /// The boundary gluing equations: each step's context-wrapped pre-word
    /// is the previous step's context-wrapped post-word, starting at the
    /// left boundary and ending at the right one.
    pub fn check_gluing(&self) -> Result<()> {
        let mut current = self.boundary_left.clone();
        for (i, step) in self.steps.iter().enumerate() {
            let before = step.left.concat(&step.pre).concat(&step.right_context);
            if before != current {
                return Err(Error::BadDerivation {
                    step: i,
                    reason: "gluing equation fails".into(),
                });
            }
            current = step.left.concat(&step.post).concat(&step.right_context);
        }
        if current != self.boundary_right {
            return Err(Error::BadDerivation {
                step: self.steps.len(),
                reason: "gluing does not reach the right boundary".into(),
            });
        }
        Ok(())
    }
}

/// Builds the equivalence presentation of a derivation in `p`, together
/// with the realizing morphism back into `p`. Empty derivations are padded
/// with one reflexivity step.
pub fn make_equivalence_presentation(
    p: &Arc<Presentation>,
    d: &Derivation,
) -> Result<(EquivalencePresentation, Morphism)> {
    let padded: Derivation = if d.is_empty() {
        Derivation {
            start: d.start.clone(),
            steps: vec![DerivationStep {
                left: Word::empty(),
                relation: Relation::new(d.start.clone(), d.start.clone()),
                direction: Direction::Forward,
                right: Word::empty(),
            }],
            end: d.end.clone(),
        }
    } else {
        d.clone()
    };
    // Abstract letters: one per position of the start word, then one per
    // rewritten-in position, each remembering the concrete letter it
    // realizes.
    let mut names: Vec<String> = (1..=padded.start.len()).map(|i| format!("a{i}")).collect();
    let mut realize: Vec<GenId> = padded.start.letters().collect();
    let mut fresh = 0usize;
    let mut current = Word::from_ids(0..padded.start.len() as u32);
    let mut steps = Vec::new();
    let mut rels = std::collections::BTreeSet::new();
    for (i, step) in padded.steps.iter().enumerate() {
        let (pre_concrete, post_concrete) = match step.direction {
            Direction::Forward => (&step.relation.lhs, &step.relation.rhs),
            Direction::Backward => (&step.relation.rhs, &step.relation.lhs),
        };
        let ll = step.left.len();
        if ll + pre_concrete.len() > current.len() {
            return Err(Error::BadDerivation {
                step: i,
                reason: "step does not fit the current word".into(),
            });
        }
        let pre_abs = current.slice(ll, ll + pre_concrete.len());
        let post_abs = Word(
            post_concrete
                .letters()
                .map(|concrete| {
                    fresh += 1;
                    names.push(format!("c{fresh}"));
                    realize.push(concrete);
                    GenId((names.len() - 1) as u32)
                })
                .collect(),
        );
        let eq_step = EqStep {
            left: current.slice(0, ll),
            pre: pre_abs,
            post: post_abs.clone(),
            direction: step.direction,
            right_context: current.slice(ll + pre_concrete.len(), current.len()),
        };
        rels.insert(eq_step.relation());
        current = eq_step
            .left
            .concat(&post_abs)
            .concat(&eq_step.right_context);
        steps.push(eq_step);
    }
    let carrier = Arc::new(Presentation::new(
        names,
        RelSet::Explicit(rels),
        true,
    )?);
    let eq = EquivalencePresentation {
        m: padded.start.len(),
        n: current.len(),
        carrier: carrier.clone(),
        boundary_left: Word::from_ids(0..padded.start.len() as u32),
        boundary_right: current,
        steps,
    };
    let realize = Morphism::new(carrier, p.clone(), realize)?;
    Ok((eq, realize))
}

/// Reads a derivation back out of a factorization `g : E^{m,n} → P`: every
/// abstract step maps to a concrete one.
pub fn derivation_from_factorization(
    eq: &EquivalencePresentation,
    g: &Morphism,
) -> Result<Derivation> {
    if g.src() != &eq.carrier {
        return Err(Error::ComposeMismatch);
    }
    let start = g.apply(&eq.boundary_left)?;
    let mut steps = Vec::new();
    for step in &eq.steps {
        steps.push(DerivationStep {
            left: g.apply(&step.left)?,
            relation: Relation::new(
                g.apply(&step.relation().lhs)?,
                g.apply(&step.relation().rhs)?,
            ),
            direction: step.direction,
            right: g.apply(&step.right_context)?,
        });
    }
    Ok(Derivation {
        start,
        steps,
        end: g.apply(&eq.boundary_right)?,
    })
}
