//! Bounded equivalence search: meet-in-the-middle over elementary steps.
//!
//! Both endpoints grow forward closures over atomic steps (derivable
//! relations are compilable into these, so nothing is lost); a zig-zag is
//! found when a literally equal presentation appears on both sides. States
//! are deduplicated by canonical form, fresh generators prefer the other
//! endpoint's names so the two sides meet on the nose in the common case.
//! Absence at a budget is not inequivalence.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::calculus::correspond::fresh_gen_name;
use crate::calculus::step::{apply_step, TietzeStep};
use crate::calculus::trace::{SegmentDirection, TietzeTrace, TietzeZigzag};
use crate::core::canon::canonical_form;
use crate::core::presentation::{Presentation, Relation};
use crate::error::Result;
use crate::rewriting::verdict::SearchBudget;
use crate::text::render_presentation_block;

/// Budget for the zig-zag search; `max_word_len` bounds the relation sides
/// a candidate step may create.
pub type ZigzagBudget = SearchBudget;

struct Side {
    /// Node index -> (state, parent, step from parent).
    nodes: Vec<(Presentation, Option<(usize, TietzeStep)>)>,
    queue: VecDeque<usize>,
    /// Canonical rendering -> node index, for deduplication and meets.
    seen: HashMap<String, usize>,
}

impl Side {
    fn new(root: Presentation, key: String) -> Self {
        let mut seen = HashMap::new();
        seen.insert(key, 0);
        Side {
            nodes: vec![(root, None)],
            queue: [0].into_iter().collect(),
            seen,
        }
    }

    fn steps_to(&self, mut index: usize) -> Vec<TietzeStep> {
        let mut steps = Vec::new();
        while let (_, Some((parent, step))) = &self.nodes[index] {
            steps.push(step.clone());
            index = *parent;
        }
        steps.reverse();
        steps
    }
}

fn canon_key(p: &Presentation) -> Result<String> {
    Ok(render_presentation_block("s", &canonical_form(p)?))
}

/// Candidate steps from a state, sorted deterministically.
fn candidate_steps(
    state: &Presentation,
    budget: &SearchBudget,
    gen_cap: usize,
    preferred_names: &[String],
) -> Result<Vec<TietzeStep>> {
    let mut out = Vec::new();
    let rels: Vec<Relation> = state.require_explicit()?.into_iter().collect();
    // Generator additions, defined by any short word.
    if state.gen_count() < gen_cap {
        let fresh = fresh_gen_name(state, preferred_names);
        for u in state.words_up_to(budget.max_word_len) {
            out.push(TietzeStep::Tgen {
                word: u,
                fresh: fresh.clone(),
            });
        }
    }
    // Reflexivity only matters without the implicit diagonal.
    if !state.is_reflexive() {
        for u in state.words_up_to(budget.max_word_len) {
            if !state.has_relation(&Relation::new(u.clone(), u.clone())) {
                out.push(TietzeStep::Trefl { word: u });
            }
        }
    }
    for rel in &rels {
        if !state.has_relation(&rel.reversed()) {
            out.push(TietzeStep::Tsym {
                relation: rel.clone(),
            });
        }
    }
    for r1 in &rels {
        for r2 in &rels {
            if r1.rhs == r2.lhs
                && !state.has_relation(&Relation::new(r1.lhs.clone(), r2.rhs.clone()))
            {
                out.push(TietzeStep::Ttrans {
                    first: r1.clone(),
                    second: r2.clone(),
                });
            }
        }
    }
    for rel in &rels {
        let max_side = rel.max_side_len();
        if max_side > budget.max_word_len {
            continue;
        }
        let room = budget.max_word_len - max_side;
        for w in state.words_up_to(room) {
            for wp in state.words_up_to(room - w.len()) {
                if w.is_empty() && wp.is_empty() {
                    continue;
                }
                let wrapped = Relation::new(
                    w.concat(&rel.lhs).concat(&wp),
                    w.concat(&rel.rhs).concat(&wp),
                );
                if !state.has_relation(&wrapped) {
                    out.push(TietzeStep::Tctxt {
                        relation: rel.clone(),
                        left: w.clone(),
                        right: wp.clone(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Searches for a zig-zag of elementary transformations between two
/// presentations. Found zig-zags always validate; `None` at a budget says
/// nothing.
pub fn search_equivalence(
    p: &Arc<Presentation>,
    q: &Arc<Presentation>,
    budget: &SearchBudget,
) -> Result<Option<TietzeZigzag>> {
    p.require_explicit()?;
    q.require_explicit()?;
    if **p == **q {
        return Ok(Some(TietzeZigzag::empty((**p).clone())));
    }
    let gen_cap = p.gen_count().max(q.gen_count());
    let key_p = canon_key(p)?;
    let key_q = canon_key(q)?;
    let mut left = Side::new((**p).clone(), key_p.clone());
    let mut right = Side::new((**q).clone(), key_q.clone());
    // Roots might already match canonically but not literally; only a
    // literal meet yields a zig-zag.
    if key_p == key_q && **p == **q {
        return Ok(Some(TietzeZigzag::empty((**p).clone())));
    }
    let mut expansions = 0usize;

    while expansions < budget.max_expansions
        && (!left.queue.is_empty() || !right.queue.is_empty())
    {
        let expand_left = right.queue.is_empty()
            || (!left.queue.is_empty() && left.queue.len() <= right.queue.len());
        let (this, other, this_is_left) = if expand_left {
            (&mut left, &mut right, true)
        } else {
            (&mut right, &mut left, false)
        };
        let Some(index) = this.queue.pop_front() else {
            continue;
        };
        expansions += 1;
        let state = this.nodes[index].0.clone();
        let preferred: Vec<String> = if this_is_left {
            q.gen_names().to_vec()
        } else {
            p.gen_names().to_vec()
        };
        for step in candidate_steps(&state, budget, gen_cap, &preferred)? {
            let next = match apply_step(&state, &step) {
                Ok(next) => next,
                Err(_) => continue,
            };
            if next == state {
                continue;
            }
            let key = canon_key(&next)?;
            if this.seen.contains_key(&key) {
                continue;
            }
            let node = this.nodes.len();
            this.nodes.push((next.clone(), Some((index, step))));
            this.seen.insert(key.clone(), node);
            this.queue.push_back(node);
            if let Some(&other_node) = other.seen.get(&key) {
                if other.nodes[other_node].0 == next {
                    let (left_node, right_node) = if this_is_left {
                        (node, other_node)
                    } else {
                        (other_node, node)
                    };
                    let forward = TietzeTrace::new(p.clone(), left.steps_to(left_node))?;
                    let backward = TietzeTrace::new(q.clone(), right.steps_to(right_node))?;
                    let mut segments = Vec::new();
                    if !forward.is_empty() {
                        segments.push((SegmentDirection::Forward, forward));
                    }
                    if !backward.is_empty() {
                        segments.push((SegmentDirection::Backward, backward));
                    }
                    return Ok(Some(TietzeZigzag::new((**p).clone(), segments)?));
                }
            }
        }
    }
    Ok(None)
}
