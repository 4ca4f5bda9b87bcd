//! Brute-force lifting: searching fillers for commuting squares.

use crate::core::morphism::Morphism;
use crate::core::word::GenId;
use crate::error::{Error, Result};

/// Solves the lifting problem for a square `p ∘ f = g ∘ i`: finds
/// `h : B → X` with `h ∘ i = f` and `p ∘ h = g`.
///
/// Enumerates all generator maps `B₁ → X₁` in lexicographic order and
/// returns the first valid filler; `B` and `X` must be finite, which every
/// presentation here is. Candidate morphisms are validated exactly on
/// explicit sources and up to `max_side` on intensional ones.
pub fn solve_lifting(
    i: &Morphism,
    p: &Morphism,
    f: &Morphism,
    g: &Morphism,
    max_side: usize,
) -> Result<Option<Morphism>> {
    if i.src() != f.src() || i.tgt() != g.src() || f.tgt() != p.src() || g.tgt() != p.tgt() {
        return Err(Error::ComposeMismatch);
    }
    if f.then(p)? != i.then(g)? {
        return Err(Error::NonCommutingSquare);
    }
    let b = i.tgt();
    let x = p.src();
    if x.gen_count() == 0 && b.gen_count() > 0 {
        return Ok(None);
    }
    let mut candidate = vec![GenId(0); b.gen_count()];
    loop {
        let h = Morphism::new(b.clone(), x.clone(), candidate.clone())?;
        let commutes = i.then(&h)? == *f && h.then(p)? == *g;
        if commutes && h.validate_exact_or(max_side).is_ok() {
            return Ok(Some(h));
        }
        // Advance to the next candidate map.
        let mut pos = candidate.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            candidate[pos].0 += 1;
            if (candidate[pos].index()) < x.gen_count() {
                break;
            }
            candidate[pos] = GenId(0);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::category::shapes::{g_pair, r_mn};
    use crate::core::presentation::Presentation;
    use std::sync::Arc;

    #[test]
    fn filler_through_a_collapse() {
        // i = r^{1,1}, p the collapse ⟨x,y | x→y⟩ → ⟨z | z→z⟩-as-reflexive:
        // a filler picks (x, y).
        let dom = Arc::new(g_pair(1, 1));
        let r11 = Arc::new(r_mn(1, 1));
        let i = Morphism::new(dom.clone(), r11.clone(), vec![GenId(0), GenId(1)]).unwrap();
        let x = Arc::new(Presentation::build(&["x", "y"], &[("x", "y")], true).unwrap());
        let y = Arc::new(Presentation::build(&["z"], &[], true).unwrap());
        let p = Morphism::by_names(&x, &y, &[("x", "z"), ("y", "z")]).unwrap();
        let f = Morphism::new(dom.clone(), x.clone(), vec![GenId(0), GenId(1)]).unwrap();
        let g = Morphism::new(r11.clone(), y.clone(), vec![GenId(0), GenId(0)]).unwrap();
        let h = solve_lifting(&i, &p, &f, &g, 4).unwrap().expect("filler");
        assert_eq!(h.map(), &[GenId(0), GenId(1)]);
    }

    #[test]
    fn identity_lifts_by_f() {
        let p1 = Arc::new(Presentation::build(&["a"], &[], true).unwrap());
        let q1 = Arc::new(Presentation::build(&["b", "c"], &[], true).unwrap());
        let i = Morphism::identity(&p1);
        let p = Morphism::by_names(&q1, &q1, &[("b", "b"), ("c", "c")]).unwrap();
        let f = Morphism::by_names(&p1, &q1, &[("a", "c")]).unwrap();
        let g = f.clone();
        let h = solve_lifting(&i, &p, &f, &g, 4).unwrap().expect("filler");
        assert_eq!(h, f);
    }

    #[test]
    fn missing_generator_has_no_filler() {
        // i = ∅ → G against a non-surjective p, with g picking the missed
        // generator.
        use crate::category::shapes::g;
        let empty = Arc::new(Presentation::empty());
        let point = Arc::new(g());
        let i = Morphism::new(empty.clone(), point.clone(), vec![]).unwrap();
        let x = Arc::new(Presentation::build(&["u"], &[], true).unwrap());
        let y = Arc::new(Presentation::build(&["u", "v"], &[], true).unwrap());
        let p = Morphism::by_names(&x, &y, &[("u", "u")]).unwrap();
        let f = Morphism::new(empty, x, vec![]).unwrap();
        let g = Morphism::by_names(&point, &y, &[("a", "v")]).unwrap();
        assert!(solve_lifting(&i, &p, &f, &g, 4).unwrap().is_none());
    }

    #[test]
    fn rejects_non_commuting_squares() {
        let p1 = Arc::new(Presentation::build(&["a"], &[], true).unwrap());
        let q1 = Arc::new(Presentation::build(&["b", "c"], &[], true).unwrap());
        let i = Morphism::identity(&p1);
        let p = Morphism::identity(&q1);
        let f = Morphism::by_names(&p1, &q1, &[("a", "b")]).unwrap();
        let g = Morphism::by_names(&p1, &q1, &[("a", "c")]).unwrap();
        assert_eq!(
            solve_lifting(&i, &p, &f, &g, 4).unwrap_err(),
            Error::NonCommutingSquare
        );
    }
}
