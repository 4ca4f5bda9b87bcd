//! Elementary transformation steps.
//!
//! A step never removes anything: removals are representable only as the
//! backward segments of a zig-zag. The generator-adding step orients its
//! relation `u -> a`; the reversed orientation needs an extra symmetry
//! step.

use std::sync::Arc;

use crate::core::presentation::{Presentation, Relation};
use crate::core::word::Word;
use crate::error::{Error, Result};
use crate::rewriting::derivation::Derivation;
use crate::rewriting::validate::replay_derivation;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TietzeStep {
    /// Adds a fresh generator `a` together with the relation `u -> a`.
    Tgen { word: Word, fresh: String },
    /// Adds a derivable relation `u -> v`, certified by a derivation.
    Trel {
        lhs: Word,
        rhs: Word,
        witness: Derivation,
    },
    /// Adds `u -> u`.
    Trefl { word: Word },
    /// Adds `v -> u` for a present relation `u -> v`.
    Tsym { relation: Relation },
    /// Adds `u -> w` for present relations `u -> v` and `v -> w`.
    Ttrans { first: Relation, second: Relation },
    /// Adds `w u w' -> w v w'` for a present relation `u -> v`.
    Tctxt {
        relation: Relation,
        left: Word,
        right: Word,
    },
}

impl TietzeStep {
    pub fn kind(&self) -> &'static str {
        match self {
            TietzeStep::Tgen { .. } => "tgen",
            TietzeStep::Trel { .. } => "trel",
            TietzeStep::Trefl { .. } => "trefl",
            TietzeStep::Tsym { .. } => "tsym",
            TietzeStep::Ttrans { .. } => "ttrans",
            TietzeStep::Tctxt { .. } => "tctxt",
        }
    }

    pub fn is_atomic(&self) -> bool {
        !matches!(self, TietzeStep::Trel { .. })
    }

    /// The relation this step adds when applied to `p`.
    pub fn added_relation(&self, p: &Presentation) -> Result<Relation> {
        Ok(match self {
            TietzeStep::Tgen { word, .. } => {
                // The fresh generator is appended, so its id is the current
                // alphabet size.
                let fresh = crate::core::word::GenId(p.gen_count() as u32);
                Relation::new(word.clone(), Word::single(fresh))
            }
            TietzeStep::Trel { lhs, rhs, .. } => Relation::new(lhs.clone(), rhs.clone()),
            TietzeStep::Trefl { word } => Relation::new(word.clone(), word.clone()),
            TietzeStep::Tsym { relation } => relation.reversed(),
            TietzeStep::Ttrans { first, second } => {
                Relation::new(first.lhs.clone(), second.rhs.clone())
            }
            TietzeStep::Tctxt {
                relation,
                left,
                right,
            } => Relation::new(
                left.concat(&relation.lhs).concat(right),
                left.concat(&relation.rhs).concat(right),
            ),
        })
    }
}

/// Applies one step, checking its validity at `p`: witnesses must replay,
/// referenced relations must be present (explicitly or through the
/// implicit diagonal), and added generators must be fresh.
pub fn apply_step(p: &Presentation, step: &TietzeStep) -> Result<Presentation> {
    match step {
        TietzeStep::Tgen { word, fresh } => {
            p.check_word(word)?;
            let extended = p.with_added_gen(fresh)?;
            let rel = step.added_relation(p)?;
            extended.with_added_relation(rel)
        }
        TietzeStep::Trel { lhs, rhs, witness } => {
            if &witness.start != lhs || &witness.end != rhs {
                return Err(Error::BadStep(
                    "witness endpoints do not match the added relation".into(),
                ));
            }
            replay_derivation(p, witness)?;
            p.with_added_relation(Relation::new(lhs.clone(), rhs.clone()))
        }
        TietzeStep::Trefl { word } => {
            p.check_word(word)?;
            p.with_added_relation(Relation::new(word.clone(), word.clone()))
        }
        TietzeStep::Tsym { relation } => {
            if !p.has_relation(relation) {
                return Err(Error::BadStep("symmetry of an absent relation".into()));
            }
            p.with_added_relation(relation.reversed())
        }
        TietzeStep::Ttrans { first, second } => {
            if first.rhs != second.lhs {
                return Err(Error::BadStep(
                    "transitivity needs a shared middle word".into(),
                ));
            }
            if !p.has_relation(first) || !p.has_relation(second) {
                return Err(Error::BadStep("transitivity of an absent relation".into()));
            }
            p.with_added_relation(Relation::new(first.lhs.clone(), second.rhs.clone()))
        }
        TietzeStep::Tctxt {
            relation,
            left,
            right,
        } => {
            if !p.has_relation(relation) {
                return Err(Error::BadStep("context of an absent relation".into()));
            }
            p.check_word(left)?;
            p.check_word(right)?;
            p.with_added_relation(step.added_relation(p)?)
        }
    }
}

/// Applies a sequence of steps, returning every intermediate presentation
/// (the start included).
pub fn apply_steps(start: &Arc<Presentation>, steps: &[TietzeStep]) -> Result<Vec<Presentation>> {
    let mut out = vec![(**start).clone()];
    for step in steps {
        let next = apply_step(out.last().expect("nonempty"), step)?;
        out.push(next);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tgen_adds_generator_and_oriented_relation() {
        let p = Presentation::build(&["a"], &[], true).unwrap();
        let step = TietzeStep::Tgen {
            word: Word::empty(),
            fresh: "b".into(),
        };
        let q = apply_step(&p, &step).unwrap();
        assert_eq!(q.gen_names(), &["a".to_string(), "b".to_string()]);
        let rel = Relation::new(Word::empty(), q.parse_word("b").unwrap());
        assert!(q.has_relation(&rel));
        // Orientation matters: b -> 1 was not added.
        assert!(!q.has_relation(&rel.reversed()));
        // Freshness is enforced.
        let clash = TietzeStep::Tgen {
            word: Word::empty(),
            fresh: "a".into(),
        };
        assert!(apply_step(&p, &clash).is_err());
    }

    #[test]
    fn trefl_is_a_no_op_on_reflexive_presentations() {
        let p = Presentation::build(&["a"], &[], true).unwrap();
        let step = TietzeStep::Trefl {
            word: p.parse_word("a a").unwrap(),
        };
        assert_eq!(apply_step(&p, &step).unwrap(), p);
        let plain = Presentation::build(&["a"], &[], false).unwrap();
        let q = apply_step(&plain, &step).unwrap();
        assert!(q.has_relation(&Relation::new(
            plain.parse_word("a a").unwrap(),
            plain.parse_word("a a").unwrap()
        )));
    }

    #[test]
    fn ttrans_follows_shared_middles() {
        let p = Presentation::build(&["a", "b"], &[("1", "b"), ("b", "b b")], true).unwrap();
        let first = Relation::new(Word::empty(), p.parse_word("b").unwrap());
        let second = Relation::new(p.parse_word("b").unwrap(), p.parse_word("b b").unwrap());
        let q = apply_step(
            &p,
            &TietzeStep::Ttrans {
                first: first.clone(),
                second: second.clone(),
            },
        )
        .unwrap();
        assert!(q.has_relation(&Relation::new(Word::empty(), p.parse_word("b b").unwrap())));
        // Mismatched middles are rejected.
        assert!(apply_step(
            &p,
            &TietzeStep::Ttrans {
                first: second,
                second: first
            }
        )
        .is_err());
    }

    #[test]
    fn trel_requires_a_replaying_witness() {
        let p = Presentation::build(&["a"], &[("a a", "1")], true).unwrap();
        let bogus = TietzeStep::Trel {
            lhs: p.parse_word("a").unwrap(),
            rhs: Word::empty(),
            witness: Derivation::trivial(p.parse_word("a").unwrap()),
        };
        assert!(apply_step(&p, &bogus).is_err());
    }
}
