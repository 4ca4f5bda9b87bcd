//! Compiling derivable-relation steps into atomic ones.
//!
//! Each witnessed `Trel` becomes: per derivation step a context step
//! (preceded by a symmetry step when the rewrite runs backward), then a
//! transitivity chain collapsing the word trail. The expansion may add
//! intermediate relations beyond the original end presentation, so the
//! result records whether it stayed exact.

use std::sync::Arc;

use crate::calculus::step::TietzeStep;
use crate::calculus::trace::TietzeTrace;
use crate::core::presentation::Relation;
use crate::error::Result;
use crate::rewriting::derivation::{Derivation, Direction};

/// The expanded trace, and whether its end equals the input's exactly
/// (rather than a superset of relations).
#[derive(Debug, Clone)]
pub struct ExpandedTrace {
    pub trace: TietzeTrace,
    pub exact: bool,
}

fn expand_one(witness: &Derivation, out: &mut Vec<TietzeStep>) {
    if witness.is_empty() {
        out.push(TietzeStep::Trefl {
            word: witness.start.clone(),
        });
        return;
    }
    for step in &witness.steps {
        let rel = &step.relation;
        let applied = match step.direction {
            Direction::Forward => rel.clone(),
            Direction::Backward => {
                out.push(TietzeStep::Tsym {
                    relation: rel.clone(),
                });
                rel.reversed()
            }
        };
        // A trivial context re-adds the relation itself; the transitivity
        // chain below can reference it directly.
        if !step.left.is_empty() || !step.right.is_empty() {
            out.push(TietzeStep::Tctxt {
                relation: applied,
                left: step.left.clone(),
                right: step.right.clone(),
            });
        }
    }
    // Collapse the trail w0 -> w1 -> … -> wk by transitivity.
    let trail = witness.word_trail();
    for i in 2..trail.len() {
        out.push(TietzeStep::Ttrans {
            first: Relation::new(trail[0].clone(), trail[i - 1].clone()),
            second: Relation::new(trail[i - 1].clone(), trail[i].clone()),
        });
    }
}

/// Rewrites a trace to use only the five atomic step kinds.
pub fn expand_trel(trace: &TietzeTrace) -> Result<ExpandedTrace> {
    let mut steps = Vec::new();
    for step in trace.steps() {
        match step {
            TietzeStep::Trel { witness, .. } => expand_one(witness, &mut steps),
            other => steps.push(other.clone()),
        }
    }
    let expanded = TietzeTrace::new(Arc::new(trace.start().clone()), steps)?;
    let exact = expanded.end() == trace.end();
    Ok(ExpandedTrace {
        trace: expanded,
        exact,
    })
}
