//! Words over an interned alphabet.
//!
//! Generators are interned as indices into the owning presentation's
//! alphabet; names are kept for IO only. The empty word is the unit of the
//! free monoid and renders as the literal `1`.

use std::cmp::Ordering;

/// Index of a generator in a presentation's alphabet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub u32);

impl GenId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite sequence of generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<GenId>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn single(g: GenId) -> Self {
        Word(vec![g])
    }

    pub fn from_ids<I: IntoIterator<Item = u32>>(ids: I) -> Self {
        Word(ids.into_iter().map(GenId).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> impl Iterator<Item = GenId> + '_ {
        self.0.iter().copied()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// `self` with `replacement` substituted for the range `[at, at+len)`.
    pub fn splice(&self, at: usize, len: usize, replacement: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() - len + replacement.len());
        v.extend_from_slice(&self.0[..at]);
        v.extend_from_slice(&replacement.0);
        v.extend_from_slice(&self.0[at + len..]);
        Word(v)
    }

    /// Positions at which `pat` occurs as a factor. The empty pattern occurs
    /// at every boundary position `0..=len`.
    pub fn occurrences(&self, pat: &Word) -> Vec<usize> {
        if pat.is_empty() {
            return (0..=self.len()).collect();
        }
        if pat.len() > self.len() {
            return Vec::new();
        }
        (0..=self.len() - pat.len())
            .filter(|&i| self.0[i..i + pat.len()] == pat.0[..])
            .collect()
    }

    pub fn max_letter(&self) -> Option<GenId> {
        self.letters().max()
    }
}

/// Shortlex: words are compared by length first, then position-wise by
/// generator index (the alphabet order of the owning presentation).
impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Enumerates all words over an alphabet of `n` generators with length at
/// most `max_len`, in shortlex order.
pub fn words_up_to(n: usize, max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::with_capacity(layer.len() * n);
        for w in &layer {
            for g in 0..n {
                next.push(w.concat(&Word::single(GenId(g as u32))));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
        if layer.is_empty() {
            break;
        }
    }
    out
}
