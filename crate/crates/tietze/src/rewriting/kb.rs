//! Knuth–Bendix completion for string rewriting.
//!
//! Relations are oriented under the shortlex order induced by the
//! generator order. Every change to the rule set is logged as an addition
//! or a removal event carrying a witness derivation valid at that point;
//! the events assemble into a zig-zag of transformations connecting the
//! input presentation to the completed one (removals become backward
//! segments).

use std::collections::VecDeque;
use std::sync::Arc;

use crate::calculus::step::TietzeStep;
use crate::calculus::trace::{SegmentDirection, TietzeTrace, TietzeZigzag};
use crate::core::presentation::{Presentation, Relation};
use crate::core::word::Word;
use crate::error::{Error, Result};
use crate::rewriting::derivation::{Derivation, DerivationStep, Direction};

/// Oriented rules with a confluence flag. The flag is set only after the
/// critical-pair check has validated it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RewriteSystem {
    rules: Vec<Relation>,
    convergent: bool,
}

impl RewriteSystem {
    /// Wraps a rule list, checking shortlex orientation and computing the
    /// convergence flag by critical-pair enumeration.
    pub fn new(rules: Vec<Relation>) -> Result<Self> {
        for rule in &rules {
            if rule.lhs <= rule.rhs {
                return Err(Error::Precondition(
                    "rule is not oriented under shortlex".into(),
                ));
            }
        }
        let convergent = all_critical_pairs_join(&rules);
        Ok(RewriteSystem { rules, convergent })
    }

    pub fn rules(&self) -> &[Relation] {
        &self.rules
    }

    pub fn is_convergent(&self) -> bool {
        self.convergent
    }
}

/// Budget for the completion loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KbBudget {
    pub max_rules: usize,
    pub max_iterations: usize,
}

impl Default for KbBudget {
    fn default() -> Self {
        KbBudget {
            max_rules: 200,
            max_iterations: 10_000,
        }
    }
}

impl KbBudget {
    pub fn new(max_rules: usize, max_iterations: usize) -> Self {
        KbBudget {
            max_rules,
            max_iterations,
        }
    }
}

/// A successful completion: the convergent system, the presentation whose
/// relations are exactly its rules, and the zig-zag connecting the input
/// to it.
#[derive(Debug, Clone)]
pub struct Completion {
    pub system: RewriteSystem,
    pub completed: Presentation,
    pub zigzag: TietzeZigzag,
}

/// One reduction step at the leftmost position, shortest matching rule
/// first, rule index breaking ties.
fn find_redex(rules: &[Relation], w: &Word) -> Option<(usize, usize)> {
    for pos in 0..=w.len() {
        let mut best: Option<(usize, usize)> = None;
        for (idx, rule) in rules.iter().enumerate() {
            let l = rule.lhs.len();
            if l == 0 || pos + l > w.len() {
                continue;
            }
            if w.0[pos..pos + l] == rule.lhs.0[..] {
                let candidate = (l, idx);
                if best.map_or(true, |b| candidate < b) {
                    best = Some(candidate);
                }
            }
        }
        if let Some((_, idx)) = best {
            return Some((pos, idx));
        }
    }
    None
}

/// Reduces `w` to an irreducible word, recording the reduction as a
/// derivation. Terminates because every rule is shortlex-decreasing.
pub fn reduce(rules: &[Relation], w: &Word) -> (Word, Derivation) {
    let mut current = w.clone();
    let mut steps = Vec::new();
    while let Some((pos, idx)) = find_redex(rules, &current) {
        let rule = &rules[idx];
        let step = DerivationStep {
            left: current.slice(0, pos),
            relation: rule.clone(),
            direction: Direction::Forward,
            right: current.slice(pos + rule.lhs.len(), current.len()),
        };
        current = step.after();
        steps.push(step);
    }
    let d = Derivation {
        start: w.clone(),
        steps,
        end: current.clone(),
    };
    (current, d)
}

/// Irreducibility test.
pub fn is_irreducible(rules: &[Relation], w: &Word) -> bool {
    find_redex(rules, w).is_none()
}

/// The fully deterministic normal form of a word under a convergent
/// system.
pub fn normal_form(system: &RewriteSystem, w: &Word) -> Result<Word> {
    if !system.is_convergent() {
        return Err(Error::Precondition("rewrite system is not convergent".into()));
    }
    Ok(reduce(&system.rules, w).0)
}

/// Number of irreducible words of length at most `max_len` over an
/// alphabet of `alphabet` generators.
pub fn count_elements(system: &RewriteSystem, alphabet: usize, max_len: usize) -> Result<usize> {
    if !system.is_convergent() {
        return Err(Error::Precondition("rewrite system is not convergent".into()));
    }
    Ok(crate::core::word::words_up_to(alphabet, max_len)
        .into_iter()
        .filter(|w| is_irreducible(&system.rules, w))
        .count())
}

/// A critical pair: one word, two one-step reductions.
struct CriticalPair {
    peak: Word,
    left: DerivationStep,
    right: DerivationStep,
}

fn critical_pairs(rules: &[Relation]) -> Vec<CriticalPair> {
    let mut out = Vec::new();
    for (i, r1) in rules.iter().enumerate() {
        for (j, r2) in rules.iter().enumerate() {
            // Proper overlaps: a suffix of r1.lhs equals a prefix of r2.lhs.
            let l1 = r1.lhs.len();
            let l2 = r2.lhs.len();
            for k in 1..l1.min(l2) {
                if r1.lhs.0[l1 - k..] == r2.lhs.0[..k] {
                    let peak = r1.lhs.concat(&r2.lhs.slice(k, l2));
                    out.push(CriticalPair {
                        peak: peak.clone(),
                        left: DerivationStep {
                            left: Word::empty(),
                            relation: r1.clone(),
                            direction: Direction::Forward,
                            right: peak.slice(l1, peak.len()),
                        },
                        right: DerivationStep {
                            left: peak.slice(0, l1 - k),
                            relation: r2.clone(),
                            direction: Direction::Forward,
                            right: Word::empty(),
                        },
                    });
                }
            }
            // Inclusions: r2.lhs occurs inside r1.lhs.
            if l2 <= l1 {
                for pos in r1.lhs.occurrences(&r2.lhs) {
                    if i == j && pos == 0 && l1 == l2 {
                        continue;
                    }
                    out.push(CriticalPair {
                        peak: r1.lhs.clone(),
                        left: DerivationStep {
                            left: Word::empty(),
                            relation: r1.clone(),
                            direction: Direction::Forward,
                            right: Word::empty(),
                        },
                        right: DerivationStep {
                            left: r1.lhs.slice(0, pos),
                            relation: r2.clone(),
                            direction: Direction::Forward,
                            right: r1.lhs.slice(pos + l2, l1),
                        },
                    });
                }
            }
        }
    }
    out
}

fn all_critical_pairs_join(rules: &[Relation]) -> bool {
    critical_pairs(rules).into_iter().all(|cp| {
        let (x, _) = reduce(rules, &cp.left.after());
        let (y, _) = reduce(rules, &cp.right.after());
        x == y
    })
}

enum KbEvent {
    Added(Relation, Derivation),
    Removed(Relation, Derivation),
}

/// An equation to process: a pair with a witness derivation valid in the
/// current presentation, and optionally the presentation relation it is
/// meant to replace.
struct Equation {
    pair: Relation,
    witness: Derivation,
    replaces: Option<Relation>,
}

/// Runs completion. On success the returned presentation's relations are
/// exactly the convergent rules and the zig-zag connects the input to it;
/// `None` when the budget runs out first.
pub fn knuth_bendix(p: &Presentation, budget: &KbBudget) -> Result<Option<Completion>> {
    let initial = p.require_explicit()?;
    let mut rules: Vec<Relation> = Vec::new();
    let mut current: std::collections::BTreeSet<Relation> = initial.clone();
    let mut events: Vec<KbEvent> = Vec::new();
    let mut queue: VecDeque<Equation> = initial
        .iter()
        .map(|rel| Equation {
            pair: rel.clone(),
            witness: Derivation {
                start: rel.lhs.clone(),
                steps: vec![DerivationStep {
                    left: Word::empty(),
                    relation: rel.clone(),
                    direction: Direction::Forward,
                    right: Word::empty(),
                }],
                end: rel.rhs.clone(),
            },
            replaces: Some(rel.clone()),
        })
        .collect();
    let mut iterations = 0usize;

    loop {
        while let Some(eq) = queue.pop_front() {
            iterations += 1;
            if iterations > budget.max_iterations || rules.len() > budget.max_rules {
                return Ok(None);
            }
            let (x, dx) = reduce(&rules, &eq.pair.lhs);
            let (y, dy) = reduce(&rules, &eq.pair.rhs);
            // Witness x ~ y through the equation, valid in `current` and
            // free of `eq.replaces` (reductions use active rules only).
            let joined = if x == y {
                None
            } else {
                let (l, r) = if x > y {
                    (x.clone(), y.clone())
                } else {
                    (y.clone(), x.clone())
                };
                Some(Relation::new(l, r))
            };
            match &joined {
                None => {
                    // Both sides join; the originating relation, if any and
                    // not itself an active rule, is redundant.
                    if let Some(rel) = &eq.replaces {
                        if current.contains(rel) && !rules.contains(rel) {
                            let witness = dx
                                .then(&dy.reversed())
                                .expect("reductions meet at the joined word");
                            current.remove(rel);
                            events.push(KbEvent::Removed(rel.clone(), witness));
                        }
                    }
                }
                Some(rule) => {
                    if !rules.contains(rule) {
                        if !current.contains(rule) {
                            // Witness for the addition may freely use the
                            // replaced relation, it is still present.
                            let through = dx
                                .reversed()
                                .then(&eq.witness)
                                .and_then(|d| d.then(&dy))
                                .expect("witness endpoints chain");
                            let witness = if through.start == rule.lhs {
                                through
                            } else {
                                through.reversed()
                            };
                            current.insert(rule.clone());
                            events.push(KbEvent::Added(rule.clone(), witness));
                        }
                        rules.push(rule.clone());
                    }
                    // Remove the replaced relation, with a witness routed
                    // through the new rule so it avoids the removed one.
                    if let Some(rel) = &eq.replaces {
                        if rel != rule && current.contains(rel) && !rules.contains(rel) {
                            let step = if x == rule.lhs {
                                DerivationStep {
                                    left: Word::empty(),
                                    relation: rule.clone(),
                                    direction: Direction::Forward,
                                    right: Word::empty(),
                                }
                            } else {
                                DerivationStep {
                                    left: Word::empty(),
                                    relation: rule.clone(),
                                    direction: Direction::Backward,
                                    right: Word::empty(),
                                }
                            };
                            let mid = Derivation {
                                start: x.clone(),
                                steps: vec![step],
                                end: y.clone(),
                            };
                            let witness = dx
                                .then(&mid)
                                .and_then(|d| d.then(&dy.reversed()))
                                .expect("removal witness chains");
                            current.remove(rel);
                            events.push(KbEvent::Removed(rel.clone(), witness));
                        }
                    }
                    // Interreduce: older rules whose sides the new rule
                    // rewrites are deactivated and revisited as equations.
                    let new_rule = rule.clone();
                    let mut idx = 0;
                    while idx < rules.len() {
                        let old = rules[idx].clone();
                        if old == new_rule {
                            idx += 1;
                            continue;
                        }
                        let touches = !old.lhs.occurrences(&new_rule.lhs).is_empty()
                            || !old.rhs.occurrences(&new_rule.lhs).is_empty();
                        if !touches {
                            idx += 1;
                            continue;
                        }
                        rules.remove(idx);
                        queue.push_back(Equation {
                            pair: old.clone(),
                            witness: Derivation {
                                start: old.lhs.clone(),
                                steps: vec![DerivationStep {
                                    left: Word::empty(),
                                    relation: old.clone(),
                                    direction: Direction::Forward,
                                    right: Word::empty(),
                                }],
                                end: old.rhs.clone(),
                            },
                            replaces: Some(old),
                        });
                    }
                }
            }
        }
        // Saturation: enqueue every critical pair that fails to join.
        let mut progressed = false;
        for cp in critical_pairs(&rules) {
            iterations += 1;
            if iterations > budget.max_iterations {
                return Ok(None);
            }
            let s = cp.left.after();
            let t = cp.right.after();
            let (x, _) = reduce(&rules, &s);
            let (y, _) = reduce(&rules, &t);
            if x == y {
                continue;
            }
            // Witness s ~ t through the peak.
            let down_left = Derivation {
                start: cp.peak.clone(),
                steps: vec![cp.left.clone()],
                end: s.clone(),
            };
            let down_right = Derivation {
                start: cp.peak.clone(),
                steps: vec![cp.right.clone()],
                end: t.clone(),
            };
            let witness = down_left
                .reversed()
                .then(&down_right)
                .expect("both descend from the peak");
            queue.push_back(Equation {
                pair: Relation::new(s, t),
                witness,
                replaces: None,
            });
            progressed = true;
        }
        if !progressed {
            break;
        }
    }

    // The evolving relation set must now be exactly the active rules.
    debug_assert_eq!(current, rules.iter().cloned().collect());
    if !all_critical_pairs_join(&rules) {
        return Ok(None);
    }
    let completed = p.with_rels(crate::core::presentation::RelSet::Explicit(
        rules.iter().cloned().collect(),
    ))?;
    let zigzag = assemble_zigzag(p, &events)?;
    Ok(Some(Completion {
        system: RewriteSystem {
            rules,
            convergent: true,
        },
        completed,
        zigzag,
    }))
}

/// Groups consecutive same-kind events into trace segments: additions are
/// forward, removals become backward segments read from the smaller
/// presentation.
fn assemble_zigzag(start: &Presentation, events: &[KbEvent]) -> Result<TietzeZigzag> {
    let mut segments = Vec::new();
    let mut cursor = start.clone();
    let mut i = 0;
    while i < events.len() {
        match &events[i] {
            KbEvent::Added(..) => {
                let from = Arc::new(cursor.clone());
                let mut steps = Vec::new();
                while let Some(KbEvent::Added(rel, witness)) = events.get(i) {
                    steps.push(TietzeStep::Trel {
                        lhs: rel.lhs.clone(),
                        rhs: rel.rhs.clone(),
                        witness: witness.clone(),
                    });
                    i += 1;
                }
                let trace = TietzeTrace::new(from, steps)?;
                cursor = trace.end().clone();
                segments.push((SegmentDirection::Forward, trace));
            }
            KbEvent::Removed(..) => {
                // Collect the run, then read it as additions from its far
                // end back to the current presentation.
                let mut run = Vec::new();
                while let Some(KbEvent::Removed(rel, witness)) = events.get(i) {
                    run.push((rel.clone(), witness.clone()));
                    i += 1;
                }
                let mut smaller = cursor.clone();
                for (rel, _) in &run {
                    smaller = smaller.with_removed_relation(rel)?;
                }
                let steps = run
                    .iter()
                    .rev()
                    .map(|(rel, witness)| TietzeStep::Trel {
                        lhs: rel.lhs.clone(),
                        rhs: rel.rhs.clone(),
                        witness: witness.clone(),
                    })
                    .collect();
                let trace = TietzeTrace::new(Arc::new(smaller.clone()), steps)?;
                if trace.end() != &cursor {
                    return Err(Error::BadStep(
                        "removal segment does not reach the previous presentation".into(),
                    ));
                }
                segments.push((SegmentDirection::Backward, trace));
                cursor = smaller;
            }
        }
    }
    TietzeZigzag::new(start.clone(), segments)
}
