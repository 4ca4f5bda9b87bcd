//! Truncated pseudo-fibrant replacement.
//!
//! The untruncated replacement is an infinite cellular extension, so the
//! construction takes two mandatory bounds that are echoed in the result:
//! every word over the original alphabet up to `max_word_len` gets a fresh
//! generator naming it, and the four closure rules are iterated to a fixed
//! point on relations with sides up to `max_close_len`.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::core::presentation::{Presentation, Relation};
use crate::error::Result;
use crate::model::cellular::{Cell, CellKind, CellularDecomposition};
use crate::model::generating::JMorphism;
use crate::util::freshen;

/// The replacement, its cell trace, and the truncation parameters it was
/// built with.
#[derive(Debug, Clone)]
pub struct Replacement {
    pub presentation: Presentation,
    pub trace: CellularDecomposition,
    pub max_word_len: usize,
    pub max_close_len: usize,
}

/// Builds the replacement of `p`. Fresh generators are named after the
/// word they represent (`a_` followed by the letters, `a_1` for the unit).
pub fn pseudo_fibrant_replacement(
    p: &Arc<Presentation>,
    max_word_len: usize,
    max_close_len: usize,
) -> Result<Replacement> {
    p.require_explicit()?;
    let mut cells: Vec<Cell> = Vec::new();
    let mut state = (**p).clone();

    // Witness generators for every word over the original alphabet.
    for u in p.words_up_to(max_word_len) {
        let base = if u.is_empty() {
            "a_1".to_string()
        } else {
            format!(
                "a_{}",
                u.letters()
                    .map(|g| p.gen_name(g).to_string())
                    .collect::<Vec<_>>()
                    .join("")
            )
        };
        let name = freshen(&base, state.gen_names());
        let cell = Cell {
            kind: CellKind::Pseudo(JMorphism::AddGenerator { m: u.len() }),
            attach: u.letters().collect(),
            fresh: vec![name],
        };
        state = apply_cell(&state, &cell)?;
        cells.push(cell);
    }

    // Closure rounds: symmetry, transitivity and context on relations with
    // sides within the bound, until nothing new appears.
    loop {
        let rels: Vec<Relation> = state
            .require_explicit()?
            .into_iter()
            .filter(|r| r.max_side_len() <= max_close_len)
            .collect();
        let present: BTreeSet<Relation> = rels.iter().cloned().collect();
        let mut batch: Vec<(Relation, Cell)> = Vec::new();
        let mut scheduled: BTreeSet<Relation> = BTreeSet::new();
        let mut schedule = |rel: Relation, cell: Cell| {
            if rel.is_diagonal() && state.is_reflexive() {
                return;
            }
            if !present.contains(&rel) && !scheduled.contains(&rel) {
                scheduled.insert(rel.clone());
                batch.push((rel, cell));
            }
        };
        for rel in &rels {
            schedule(
                rel.reversed(),
                Cell {
                    kind: CellKind::Pseudo(JMorphism::AddSymmetry {
                        m: rel.lhs.len(),
                        n: rel.rhs.len(),
                    }),
                    attach: rel.lhs.letters().chain(rel.rhs.letters()).collect(),
                    fresh: Vec::new(),
                },
            );
        }
        for r1 in &rels {
            for r2 in &rels {
                if r1.rhs != r2.lhs {
                    continue;
                }
                schedule(
                    Relation::new(r1.lhs.clone(), r2.rhs.clone()),
                    Cell {
                        kind: CellKind::Pseudo(JMorphism::AddTransitivity {
                            m: r1.lhs.len(),
                            n: r1.rhs.len(),
                            p: r2.rhs.len(),
                        }),
                        attach: r1
                            .lhs
                            .letters()
                            .chain(r1.rhs.letters())
                            .chain(r2.rhs.letters())
                            .collect(),
                        fresh: Vec::new(),
                    },
                );
            }
        }
        for rel in &rels {
            let room = max_close_len - rel.max_side_len();
            for w in state.words_up_to(room) {
                for wp in state.words_up_to(room - w.len()) {
                    if w.is_empty() && wp.is_empty() {
                        continue;
                    }
                    schedule(
                        Relation::new(
                            w.concat(&rel.lhs).concat(&wp),
                            w.concat(&rel.rhs).concat(&wp),
                        ),
                        Cell {
                            kind: CellKind::Pseudo(JMorphism::AddContext {
                                m: rel.lhs.len(),
                                n: rel.rhs.len(),
                                p: w.len(),
                                q: wp.len(),
                            }),
                            attach: rel
                                .lhs
                                .letters()
                                .chain(rel.rhs.letters())
                                .chain(w.letters())
                                .chain(wp.letters())
                                .collect(),
                            fresh: Vec::new(),
                        },
                    );
                }
            }
        }
        if batch.is_empty() {
            break;
        }
        for (_, cell) in batch {
            state = apply_cell(&state, &cell)?;
            cells.push(cell);
        }
    }

    let trace = CellularDecomposition::build(p.clone(), cells)?;
    debug_assert_eq!(trace.target, state);
    Ok(Replacement {
        presentation: state,
        trace,
        max_word_len,
        max_close_len,
    })
}

fn apply_cell(state: &Presentation, cell: &Cell) -> Result<Presentation> {
    // Reuses the decomposition machinery one cell at a time.
    let one = CellularDecomposition::build(Arc::new(state.clone()), vec![cell.clone()])?;
    Ok(one.target)
}
