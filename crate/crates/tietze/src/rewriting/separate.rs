//! Negative certificates for the word problem.
//!
//! A sound refutation of `u ~_P v` is a homomorphism into a finite monoid
//! that satisfies every relation of `P` but sends `u` and `v` to different
//! elements. The search walks the built-in table library (every monoid of
//! size at most three plus the transformation monoid on two points), then
//! any user-supplied tables, and all generator assignments, in a fixed
//! order.

use crate::core::monoid::{builtin_monoids, MonoidTable};
use crate::core::presentation::Presentation;
use crate::core::word::Word;
use crate::error::Result;
use crate::rewriting::verdict::HomCertificate;

/// Searches for a separating homomorphism certificate using the built-in
/// library only.
pub fn separate(
    p: &Presentation,
    u: &Word,
    v: &Word,
    max_size: usize,
) -> Result<Option<HomCertificate>> {
    separate_with(p, u, v, max_size, &[])
}

/// As [`separate`], with extra user-supplied tables tried after the
/// library. Requires explicit relations (plus at most the diagonal);
/// absence of a certificate at a given size is not a refutation.
pub fn separate_with(
    p: &Presentation,
    u: &Word,
    v: &Word,
    max_size: usize,
    extra: &[MonoidTable],
) -> Result<Option<HomCertificate>> {
    let rels = p.require_explicit()?;
    p.check_word(u)?;
    p.check_word(v)?;
    let rels: Vec<_> = rels.into_iter().collect();
    let builtin = builtin_monoids(max_size);
    let user: Vec<&MonoidTable> = extra.iter().filter(|m| m.size <= max_size).collect();
    for table in builtin.into_iter().chain(user) {
        let mut assignment = vec![0usize; p.gen_count()];
        loop {
            let satisfies = rels
                .iter()
                .all(|r| table.eval(&assignment, &r.lhs) == table.eval(&assignment, &r.rhs));
            if satisfies && table.eval(&assignment, u) != table.eval(&assignment, v) {
                return Ok(Some(HomCertificate {
                    table: table.clone(),
                    assignment,
                    left: u.clone(),
                    right: v.clone(),
                }));
            }
            // Next assignment in lexicographic order.
            let mut pos = assignment.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                assignment[pos] += 1;
                if assignment[pos] < table.size {
                    break;
                }
                assignment[pos] = 0;
            }
            // A full wrap back to all zeros means every assignment for
            // this table has been tried.
            if assignment.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    Ok(None)
}
