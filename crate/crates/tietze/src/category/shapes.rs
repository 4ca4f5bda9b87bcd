//! Standard small presentations: the building blocks of the generating
//! families and the word representation bijections.

use std::collections::BTreeSet;

use crate::core::presentation::{Presentation, RelSet, Relation};
use crate::core::word::{GenId, Word};

/// `G`: one generator, no relation.
pub fn g() -> Presentation {
    Presentation::build(&["a"], &[], true).expect("static shape")
}

/// `Gⁿ`: generators `a1 … an`, no relation.
pub fn g_n(n: usize) -> Presentation {
    let names: Vec<String> = (1..=n).map(|i| format!("a{i}")).collect();
    Presentation::new(names, RelSet::empty(), true).expect("static shape")
}

/// `G^{m,n}` is an alias of `G^{m+n}`: a pair of words presented as one
/// discrete block.
pub fn g_pair(m: usize, n: usize) -> Presentation {
    g_n(m + n)
}

/// `R^{m,n}`: one relation `a1…am -> a(m+1)…a(m+n)` on `m+n` generators.
pub fn r_mn(m: usize, n: usize) -> Presentation {
    let base = g_n(m + n);
    let lhs = Word::from_ids(0..m as u32);
    let rhs = Word::from_ids(m as u32..(m + n) as u32);
    base.with_added_relation(Relation::new(lhs, rhs))
        .expect("static shape")
}

/// The terminal presentation truncated at `max_len`: one generator and
/// every relation `a^m -> a^n` with `m, n ≤ max_len`. The untruncated
/// object is infinite.
pub fn terminal_truncated(max_len: usize) -> Presentation {
    let mut rels = BTreeSet::new();
    for m in 0..=max_len {
        for n in 0..=max_len {
            if m != n {
                rels.insert(Relation::new(power(m), power(n)));
            }
        }
    }
    Presentation::new(vec!["a"], RelSet::Explicit(rels), true).expect("static shape")
}

fn power(n: usize) -> Word {
    Word(std::iter::repeat(GenId(0)).take(n).collect())
}

/// The unique morphism into the truncated terminal object.
pub fn terminal_morphism(
    p: &std::sync::Arc<Presentation>,
    max_len: usize,
) -> crate::core::morphism::Morphism {
    let t = std::sync::Arc::new(terminal_truncated(max_len));
    crate::core::morphism::Morphism::new(p.clone(), t, vec![GenId(0); p.gen_count()])
        .expect("collapse map")
}
