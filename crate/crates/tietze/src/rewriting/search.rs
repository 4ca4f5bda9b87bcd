//! Budgeted word-problem search.
//!
//! The congruence is symmetric, so we run a bidirectional breadth-first
//! search from both words over single-step rewrites (every congruence rule,
//! both directions, every position) and meet in the middle. For a fixed
//! budget the result is deterministic: frontiers expand in insertion order
//! and neighbor lists are sorted.

use std::collections::{HashMap, VecDeque};

use crate::core::presentation::{Presentation, Relation};
use crate::core::word::Word;
use crate::error::Result;
use crate::rewriting::derivation::{Derivation, DerivationStep, Direction};
use crate::rewriting::separate::separate_with;
use crate::rewriting::verdict::{BudgetReport, Exhausted, SearchBudget, Verdict};

/// All words one rewrite away from `w`, each with the step that produces
/// it, sorted for determinism.
pub fn rewrite_neighbors(
    rules: &[Relation],
    w: &Word,
    max_len: usize,
) -> Vec<(Word, DerivationStep)> {
    let mut out = Vec::new();
    for rule in rules {
        for (pat, dir) in [
            (&rule.lhs, Direction::Forward),
            (&rule.rhs, Direction::Backward),
        ] {
            for pos in w.occurrences(pat) {
                let produced_len = w.len() - pat.len()
                    + match dir {
                        Direction::Forward => rule.rhs.len(),
                        Direction::Backward => rule.lhs.len(),
                    };
                if produced_len > max_len {
                    continue;
                }
                let step = DerivationStep {
                    left: w.slice(0, pos),
                    relation: rule.clone(),
                    direction: dir,
                    right: w.slice(pos + pat.len(), w.len()),
                };
                out.push((step.after(), step));
            }
        }
    }
    out.sort_by(|a, b| {
        a.0.cmp(&b.0)
            .then_with(|| a.1.left.cmp(&b.1.left))
            .then_with(|| a.1.relation.cmp(&b.1.relation))
    });
    out
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Side {
    Left,
    Right,
}

struct Frontier {
    queue: VecDeque<Word>,
    /// Word -> step that produced it from its parent (roots map to None).
    parents: HashMap<Word, Option<DerivationStep>>,
}

impl Frontier {
    fn new(root: Word) -> Self {
        let mut parents = HashMap::new();
        parents.insert(root.clone(), None);
        let mut queue = VecDeque::new();
        queue.push_back(root);
        Frontier { queue, parents }
    }

    /// Path from the root to `word` as a derivation.
    fn path_to(&self, word: &Word) -> Derivation {
        let mut steps = Vec::new();
        let mut cur = word.clone();
        while let Some(Some(step)) = self.parents.get(&cur) {
            cur = step.before();
            steps.push(step.clone());
        }
        steps.reverse();
        Derivation {
            start: cur,
            steps,
            end: word.clone(),
        }
    }
}

/// Searches for a derivation `u ~ v`. Returns the derivation, or the
/// budget report of the failed search.
pub fn search_derivation(
    p: &Presentation,
    u: &Word,
    v: &Word,
    budget: &SearchBudget,
) -> std::result::Result<Derivation, BudgetReport> {
    let rules = p.congruence_rules();
    let max_len = budget.max_word_len.max(u.len()).max(v.len());
    let mut left = Frontier::new(u.clone());
    let mut right = Frontier::new(v.clone());
    if u == v {
        return Ok(Derivation::trivial(u.clone()));
    }
    let mut expansions = 0usize;
    let mut max_reached = u.len().max(v.len());

    loop {
        if left.queue.is_empty() && right.queue.is_empty() {
            return Err(BudgetReport {
                expansions_used: expansions,
                max_len_reached: max_reached,
                exhausted: Exhausted::WordLength,
            });
        }
        if expansions >= budget.max_expansions {
            return Err(BudgetReport {
                expansions_used: expansions,
                max_len_reached: max_reached,
                exhausted: Exhausted::Expansions,
            });
        }
        // Expand the smaller live frontier; ties go left.
        let side = if right.queue.is_empty()
            || (!left.queue.is_empty() && left.queue.len() <= right.queue.len())
        {
            Side::Left
        } else {
            Side::Right
        };
        let (this, other) = match side {
            Side::Left => (&mut left, &mut right),
            Side::Right => (&mut right, &mut left),
        };
        let word = this.queue.pop_front().expect("side chosen nonempty");
        expansions += 1;
        for (next, step) in rewrite_neighbors(&rules, &word, max_len) {
            if this.parents.contains_key(&next) {
                continue;
            }
            max_reached = max_reached.max(next.len());
            this.parents.insert(next.clone(), Some(step));
            if other.parents.contains_key(&next) {
                // Orient the answer from u to v regardless of which
                // frontier completed the meet.
                let (upath, vpath) = match side {
                    Side::Left => (this.path_to(&next), other.path_to(&next)),
                    Side::Right => (other.path_to(&next), this.path_to(&next)),
                };
                let d = upath
                    .then(&vpath.reversed())
                    .expect("paths meet at the shared word");
                return Ok(d);
            }
            this.queue.push_back(next);
        }
    }
}

/// Decides `u ~_P v` within a budget.
///
/// `Proved` carries a replayable derivation found by bidirectional search;
/// `Refuted` carries a homomorphism certificate found by the separation
/// fallback (explicit presentations only); otherwise the exhausted budget
/// is reported.
pub fn equivalent(p: &Presentation, u: &Word, v: &Word, budget: &SearchBudget) -> Result<Verdict> {
    p.check_word(u)?;
    p.check_word(v)?;
    let report = match search_derivation(p, u, v, budget) {
        Ok(d) => return Ok(Verdict::Proved(d)),
        Err(report) => report,
    };
    if budget.max_table_size > 0 && p.is_explicit() {
        if let Some(cert) = separate_with(p, u, v, budget.max_table_size, &[])? {
            return Ok(Verdict::Refuted(cert));
        }
    }
    Ok(Verdict::Unknown(report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rewriting::validate::replay_derivation;

    #[test]
    fn one_step_proof() {
        // ⟨a,b | ab→1, ba→1⟩: aab ~ a in one forward step with contexts
        // (a, 1).
        let p = Presentation::build(&["a", "b"], &[("a b", "1"), ("b a", "1")], false).unwrap();
        let u = p.parse_word("a a b").unwrap();
        let v = p.parse_word("a").unwrap();
        let verdict = equivalent(&p, &u, &v, &SearchBudget::new(100, 6)).unwrap();
        let d = verdict.proof().expect("proved");
        assert_eq!(d.len(), 1);
        assert_eq!(p.render_word(&d.steps[0].left), "a");
        assert_eq!(p.render_word(&d.steps[0].right), "1");
        replay_derivation(&p, d).unwrap();
    }

    #[test]
    fn reflexive_pair_is_proved_empty() {
        let p = Presentation::build(&["a", "b"], &[("a b", "b a")], false).unwrap();
        let u = p.parse_word("b a b").unwrap();
        let verdict = equivalent(&p, &u, &u, &SearchBudget::default()).unwrap();
        assert_eq!(verdict.proof().unwrap().len(), 0);
    }

    #[test]
    fn free_generators_are_refuted() {
        let p = Presentation::build(&["a", "b"], &[], false).unwrap();
        let u = p.parse_word("a").unwrap();
        let v = p.parse_word("b").unwrap();
        match equivalent(&p, &u, &v, &SearchBudget::new(100, 4)).unwrap() {
            Verdict::Refuted(cert) => {
                assert_ne!(
                    cert.table.eval(&cert.assignment, &u),
                    cert.table.eval(&cert.assignment, &v)
                );
            }
            other => panic!("expected refutation, got {other:?}"),
        }
    }

    #[test]
    fn foreign_letters_error() {
        let p = Presentation::build(&["a"], &[], false).unwrap();
        let bad = Word::from_ids([3]);
        assert!(equivalent(&p, &bad, &Word::empty(), &SearchBudget::default()).is_err());
    }

    #[test]
    fn empty_lhs_rules_insert() {
        // ⟨a,b | 1→b⟩: a ~ b a b is derivable by two insertions.
        let p = Presentation::build(&["a", "b"], &[("1", "b")], false).unwrap();
        let u = p.parse_word("a").unwrap();
        let v = p.parse_word("b a b").unwrap();
        let verdict = equivalent(&p, &u, &v, &SearchBudget::new(1000, 5)).unwrap();
        let d = verdict.proof().expect("proved");
        replay_derivation(&p, d).unwrap();
    }
}
