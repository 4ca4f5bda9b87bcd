//! Canonical forms for "equal up to renaming" comparisons.

use std::collections::BTreeSet;

use crate::core::presentation::{Presentation, RelSet};
use crate::core::word::{GenId, Word};
use crate::error::{Error, Result};

/// Renames generators `g0, g1, …` following the lexicographic order of the
/// original names, sorts the explicit relations, and folds any diagonal
/// part into the reflexive flag. Deterministic and idempotent; two
/// presentations differing by an order-preserving renaming map to the same
/// value.
///
/// Requires explicit relations (plus at most a diagonal part).
pub fn canonical_form(p: &Presentation) -> Result<Presentation> {
    let explicit = p
        .rels()
        .explicit_part()
        .ok_or(Error::UnsupportedRepresentation)?;
    let reflexive = p.is_reflexive() || p.rels().has_diagonal_part();

    let mut order: Vec<usize> = (0..p.gen_count()).collect();
    order.sort_by(|&i, &j| p.gen_names()[i].cmp(&p.gen_names()[j]));
    // rename[old] = new
    let mut rename = vec![0u32; p.gen_count()];
    for (new, &old) in order.iter().enumerate() {
        rename[old] = new as u32;
    }
    let map_word = |w: &Word| Word(w.letters().map(|g| GenId(rename[g.index()])).collect());

    let gens: Vec<String> = (0..p.gen_count()).map(|i| format!("g{i}")).collect();
    let rels: BTreeSet<_> = explicit
        .iter()
        .map(|r| crate::core::presentation::Relation::new(map_word(&r.lhs), map_word(&r.rhs)))
        .collect();
    Presentation::new(gens, RelSet::Explicit(rels), reflexive)
}

/// Whether two presentations agree up to the canonical renaming.
pub fn canonically_equal(p: &Presentation, q: &Presentation) -> Result<bool> {
    Ok(canonical_form(p)? == canonical_form(q)?)
}
