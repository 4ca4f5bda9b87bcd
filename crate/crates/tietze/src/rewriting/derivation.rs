//! Rewrite certificates: a derivation is a replayable step-by-step proof
//! that two words are congruent.

use crate::core::presentation::Relation;
use crate::core::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// One rewrite: inside contexts `left · _ · right`, the relation is applied
/// forward (`lhs` becomes `rhs`) or backward. Contexts are stored
/// explicitly so replay needs no re-parsing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DerivationStep {
    pub left: Word,
    pub relation: Relation,
    pub direction: Direction,
    pub right: Word,
}

impl DerivationStep {
    /// The word this step consumes.
    pub fn before(&self) -> Word {
        let mid = match self.direction {
            Direction::Forward => &self.relation.lhs,
            Direction::Backward => &self.relation.rhs,
        };
        self.left.concat(mid).concat(&self.right)
    }

    /// The word this step produces.
    pub fn after(&self) -> Word {
        let mid = match self.direction {
            Direction::Forward => &self.relation.rhs,
            Direction::Backward => &self.relation.lhs,
        };
        self.left.concat(mid).concat(&self.right)
    }

    /// The same rewrite read in the opposite direction.
    pub fn reversed(&self) -> DerivationStep {
        DerivationStep {
            left: self.left.clone(),
            relation: self.relation.clone(),
            direction: self.direction.flip(),
            right: self.right.clone(),
        }
    }

    /// The step wrapped in extra context on both sides.
    pub fn in_context(&self, left: &Word, right: &Word) -> DerivationStep {
        DerivationStep {
            left: left.concat(&self.left),
            relation: self.relation.clone(),
            direction: self.direction,
            right: self.right.concat(right),
        }
    }
}

/// A chain of rewrites from `start` to `end`. An empty chain asserts
/// `start = end`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Derivation {
    pub start: Word,
    pub steps: Vec<DerivationStep>,
    pub end: Word,
}

impl Derivation {
    pub fn trivial(word: Word) -> Self {
        Derivation {
            start: word.clone(),
            steps: Vec::new(),
            end: word,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Derivation of `end ~ start` obtained by reversing every step.
    pub fn reversed(&self) -> Derivation {
        Derivation {
            start: self.end.clone(),
            steps: self.steps.iter().rev().map(|s| s.reversed()).collect(),
            end: self.start.clone(),
        }
    }

    /// Concatenation along a shared middle word: `(u ~ v) + (v ~ w)` is
    /// `u ~ w`. Returns `None` when the endpoints do not meet.
    pub fn then(&self, other: &Derivation) -> Option<Derivation> {
        if self.end != other.start {
            return None;
        }
        let mut steps = self.steps.clone();
        steps.extend(other.steps.iter().cloned());
        Some(Derivation {
            start: self.start.clone(),
            steps,
            end: other.end.clone(),
        })
    }

    /// The derivation lifted to `left · u · right ~ left · v · right`.
    pub fn in_context(&self, left: &Word, right: &Word) -> Derivation {
        Derivation {
            start: left.concat(&self.start).concat(right),
            steps: self
                .steps
                .iter()
                .map(|s| s.in_context(left, right))
                .collect(),
            end: left.concat(&self.end).concat(right),
        }
    }

    /// The word sequence visited by replay, starting at `start`. This does
    /// not check validity; see [`crate::rewriting::validate`].
    pub fn word_trail(&self) -> Vec<Word> {
        let mut out = vec![self.start.clone()];
        for step in &self.steps {
            out.push(step.after());
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::word::Word;

    fn step(left: &[u32], lhs: &[u32], rhs: &[u32], dir: Direction, right: &[u32]) -> DerivationStep {
        DerivationStep {
            left: Word::from_ids(left.iter().copied()),
            relation: Relation::new(
                Word::from_ids(lhs.iter().copied()),
                Word::from_ids(rhs.iter().copied()),
            ),
            direction: dir,
            right: Word::from_ids(right.iter().copied()),
        }
    }

    #[test]
    fn before_after_respect_direction() {
        // a · (ab -> 1) · ε forward: aab => a
        let s = step(&[0], &[0, 1], &[], Direction::Forward, &[]);
        assert_eq!(s.before(), Word::from_ids([0, 0, 1]));
        assert_eq!(s.after(), Word::from_ids([0]));
        let r = s.reversed();
        assert_eq!(r.before(), Word::from_ids([0]));
        assert_eq!(r.after(), Word::from_ids([0, 0, 1]));
    }

    #[test]
    fn context_lifting_and_concatenation() {
        let s = step(&[], &[0], &[1], Direction::Forward, &[]);
        let d = Derivation {
            start: s.before(),
            steps: vec![s],
            end: Word::from_ids([1]),
        };
        let lifted = d.in_context(&Word::from_ids([1]), &Word::from_ids([0]));
        assert_eq!(lifted.start, Word::from_ids([1, 0, 0]));
        assert_eq!(lifted.end, Word::from_ids([1, 1, 0]));
        let back = lifted.reversed();
        let round = lifted.then(&back).unwrap();
        assert_eq!(round.start, round.end);
        assert_eq!(round.len(), 2);
    }
}
