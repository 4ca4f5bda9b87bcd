//! Independent certificate checkers.
//!
//! These replay certificates against the presentation's membership
//! predicate only; they share no code with the searchers that produce
//! them, so a bug in a searcher cannot silently validate its own output.

use crate::core::presentation::Presentation;
use crate::error::{Error, Result};
use crate::rewriting::derivation::Derivation;
use crate::rewriting::verdict::HomCertificate;

/// Replays a derivation: every step's relation must be a member of the
/// presentation's relation set (the implicit diagonal included), each step
/// must consume the word the previous one produced, and the endpoints must
/// match.
pub fn replay_derivation(p: &Presentation, d: &Derivation) -> Result<()> {
    p.check_word(&d.start)
        .map_err(|e| Error::BadDerivation {
            step: 0,
            reason: e.to_string(),
        })?;
    let mut current = d.start.clone();
    for (i, step) in d.steps.iter().enumerate() {
        let fail = |reason: &str| Error::BadDerivation {
            step: i,
            reason: reason.to_string(),
        };
        p.check_word(&step.left).map_err(|e| fail(&e.to_string()))?;
        p.check_word(&step.right).map_err(|e| fail(&e.to_string()))?;
        p.check_word(&step.relation.lhs)
            .map_err(|e| fail(&e.to_string()))?;
        p.check_word(&step.relation.rhs)
            .map_err(|e| fail(&e.to_string()))?;
        if !p.has_relation(&step.relation) {
            return Err(fail("relation is not a member of the presentation"));
        }
        if step.before() != current {
            return Err(fail("step does not apply to the current word"));
        }
        current = step.after();
    }
    if current != d.end {
        return Err(Error::BadDerivation {
            step: d.steps.len(),
            reason: "replay does not reach the stated end word".to_string(),
        });
    }
    Ok(())
}

/// Checks a homomorphism refutation: the table is a monoid, the assignment
/// satisfies every explicit relation, and the witness images differ.
pub fn check_hom_certificate(p: &Presentation, cert: &HomCertificate) -> Result<()> {
    cert.table.validate()?;
    if cert.assignment.len() != p.gen_count() {
        return Err(Error::BadCertificate(format!(
            "assignment covers {} generators, presentation has {}",
            cert.assignment.len(),
            p.gen_count()
        )));
    }
    if cert.assignment.iter().any(|&x| x >= cert.table.size) {
        return Err(Error::BadCertificate(
            "assignment element out of range".into(),
        ));
    }
    let rels = p
        .require_explicit()
        .map_err(|_| Error::BadCertificate("presentation is not explicit".into()))?;
    for rel in &rels {
        if cert.table.eval(&cert.assignment, &rel.lhs)
            != cert.table.eval(&cert.assignment, &rel.rhs)
        {
            return Err(Error::BadCertificate(
                "assignment does not satisfy a relation".into(),
            ));
        }
    }
    p.check_word(&cert.left)
        .map_err(|e| Error::BadCertificate(e.to_string()))?;
    p.check_word(&cert.right)
        .map_err(|e| Error::BadCertificate(e.to_string()))?;
    if cert.table.eval(&cert.assignment, &cert.left)
        == cert.table.eval(&cert.assignment, &cert.right)
    {
        return Err(Error::BadCertificate(
            "witness words have equal images".into(),
        ));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::presentation::Relation;
    use crate::core::word::Word;
    use crate::rewriting::derivation::{DerivationStep, Direction};

    #[test]
    fn rejects_foreign_relation() {
        let p = Presentation::build(&["a"], &[("a a", "1")], false).unwrap();
        let step = DerivationStep {
            left: Word::empty(),
            relation: Relation::new(Word::from_ids([0]), Word::empty()),
            direction: Direction::Forward,
            right: Word::empty(),
        };
        let d = Derivation {
            start: Word::from_ids([0]),
            steps: vec![step],
            end: Word::empty(),
        };
        assert!(matches!(
            replay_derivation(&p, &d),
            Err(Error::BadDerivation { step: 0, .. })
        ));
    }

    #[test]
    fn rejects_mismatched_endpoints() {
        let p = Presentation::build(&["a"], &[("a a", "1")], false).unwrap();
        let d = Derivation {
            start: Word::from_ids([0]),
            steps: vec![],
            end: Word::empty(),
        };
        assert!(replay_derivation(&p, &d).is_err());
    }

    #[test]
    fn diagonal_steps_need_the_flag() {
        let refl = Presentation::build(&["a"], &[], true).unwrap();
        let plain = Presentation::build(&["a"], &[], false).unwrap();
        let step = DerivationStep {
            left: Word::empty(),
            relation: Relation::new(Word::from_ids([0]), Word::from_ids([0])),
            direction: Direction::Forward,
            right: Word::empty(),
        };
        let d = Derivation {
            start: Word::from_ids([0]),
            steps: vec![step],
            end: Word::from_ids([0]),
        };
        assert!(replay_derivation(&refl, &d).is_ok());
        assert!(replay_derivation(&plain, &d).is_err());
    }
}
