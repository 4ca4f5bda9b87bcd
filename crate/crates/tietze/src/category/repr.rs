//! Words and word pairs as morphisms out of discrete presentations.
//!
//! A word of length `n` in `P` is the same thing as a morphism `Gⁿ → P`,
//! and a pair of words of lengths `(m, n)` the same as a morphism
//! `G^{m,n} → P`. These bijections let word-level statements be phrased as
//! factorization properties of squares.

use std::sync::Arc;

use crate::category::shapes::{g_n, g_pair};
use crate::core::morphism::Morphism;
use crate::core::presentation::Presentation;
use crate::core::word::Word;
use crate::error::{Error, Result};

/// The morphism `G^{ℓ(u)} → P` picking the letters of `u`.
pub fn word_as_morphism(u: &Word, p: &Arc<Presentation>) -> Result<Morphism> {
    p.check_word(u)?;
    let dom = Arc::new(g_n(u.len()));
    Morphism::new(dom, p.clone(), u.letters().collect())
}

/// The word read off a morphism from a discrete presentation.
pub fn morphism_as_word(f: &Morphism) -> Word {
    Word(f.map().to_vec())
}

/// The morphism `G^{m,n} → P` picking the letters of `u` then `v`.
pub fn pair_as_morphism(u: &Word, v: &Word, p: &Arc<Presentation>) -> Result<Morphism> {
    p.check_word(u)?;
    p.check_word(v)?;
    let dom = Arc::new(g_pair(u.len(), v.len()));
    let map = u.letters().chain(v.letters()).collect();
    Morphism::new(dom, p.clone(), map)
}

/// Splits a morphism from `G^{m,n}` back into its word pair; `m` must be
/// the length of the first block.
pub fn morphism_as_pair(f: &Morphism, m: usize) -> Result<(Word, Word)> {
    if m > f.map().len() {
        return Err(Error::LengthMismatch {
            got: f.map().len(),
            want: m,
        });
    }
    let w = morphism_as_word(f);
    Ok((w.slice(0, m), w.slice(m, w.len())))
}
