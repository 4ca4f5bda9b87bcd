//! Pushouts of the pseudo-generating family are exactly the elementary
//! transformation steps, and every step arises that way.

use std::sync::Arc;

use crate::calculus::step::TietzeStep;
use crate::category::colimits::pushout;
use crate::category::shapes::g_n;
use crate::core::morphism::Morphism;
use crate::core::presentation::{Presentation, Relation};
use crate::error::{Error, Result};
use crate::model::generating::JMorphism;
use crate::util::freshen;

/// The step corresponding to attaching `j` along `attach`; `fresh` names
/// the added generator for the generator-adding family.
pub fn j_to_step(j: &JMorphism, attach: &Morphism, fresh: Option<&str>) -> Result<TietzeStep> {
    if attach.src().gen_count() != j.domain_size() {
        return Err(Error::MapArity {
            got: attach.src().gen_count(),
            want: j.domain_size(),
        });
    }
    let (u, v, w, wp) = j.blocks();
    let au = attach.apply(&u)?;
    Ok(match j {
        JMorphism::AddGenerator { .. } => TietzeStep::Tgen {
            word: au,
            fresh: fresh
                .ok_or_else(|| Error::BadStep("generator cell needs a fresh name".into()))?
                .to_string(),
        },
        JMorphism::AddReflexivity { .. } => TietzeStep::Trefl { word: au },
        JMorphism::AddSymmetry { .. } => TietzeStep::Tsym {
            relation: Relation::new(au, attach.apply(&v.expect("symmetry has v"))?),
        },
        JMorphism::AddTransitivity { .. } => {
            let av = attach.apply(&v.expect("transitivity has v"))?;
            let aw = attach.apply(&w.expect("transitivity has w"))?;
            TietzeStep::Ttrans {
                first: Relation::new(au, av.clone()),
                second: Relation::new(av, aw),
            }
        }
        JMorphism::AddContext { .. } => TietzeStep::Tctxt {
            relation: Relation::new(au, attach.apply(&v.expect("context has v"))?),
            left: attach.apply(&w.expect("context has w"))?,
            right: attach.apply(&wp.expect("context has w'"))?,
        },
    })
}

/// Pushes `j` out along `attach`, computed through the generic pushout,
/// and returns the elementary step it corresponds to. The step's fresh
/// generator is named after the pushout's, so applying the step yields the
/// same presentation.
pub fn j_pushout(j: &JMorphism, attach: &Morphism) -> Result<(Presentation, TietzeStep)> {
    let incl = j.inclusion();
    if attach.src() != incl.src() {
        return Err(Error::Precondition(
            "attaching map must start at the family's domain".into(),
        ));
    }
    let po = pushout(attach, &incl)?;
    let fresh = match j {
        JMorphism::AddGenerator { .. } => Some(
            po.presentation
                .gen_names()
                .last()
                .expect("pushout adds a generator")
                .clone(),
        ),
        _ => None,
    };
    let step = j_to_step(j, attach, fresh.as_deref())?;
    Ok(((*po.presentation).clone(), step))
}

/// Reads an elementary step back as a `J`-pushout: the family member and
/// the attaching map it arises from.
pub fn step_as_j_pushout(
    p: &Arc<Presentation>,
    step: &TietzeStep,
) -> Result<(JMorphism, Morphism)> {
    let attach_from = |letters: Vec<crate::core::word::GenId>| -> Result<Morphism> {
        let dom = Arc::new(g_n(letters.len()));
        Morphism::new(dom, p.clone(), letters)
    };
    match step {
        TietzeStep::Tgen { word, .. } => Ok((
            JMorphism::AddGenerator { m: word.len() },
            attach_from(word.letters().collect())?,
        )),
        TietzeStep::Trefl { word } => Ok((
            JMorphism::AddReflexivity { m: word.len() },
            attach_from(word.letters().collect())?,
        )),
        TietzeStep::Tsym { relation } => {
            let j = JMorphism::AddSymmetry {
                m: relation.lhs.len(),
                n: relation.rhs.len(),
            };
            let letters = relation.lhs.letters().chain(relation.rhs.letters()).collect();
            let dom = Arc::new(j.domain());
            Ok((j, Morphism::new(dom, p.clone(), letters)?))
        }
        TietzeStep::Ttrans { first, second } => {
            if first.rhs != second.lhs {
                return Err(Error::BadStep(
                    "transitivity needs a shared middle word".into(),
                ));
            }
            let j = JMorphism::AddTransitivity {
                m: first.lhs.len(),
                n: first.rhs.len(),
                p: second.rhs.len(),
            };
            let letters = first
                .lhs
                .letters()
                .chain(first.rhs.letters())
                .chain(second.rhs.letters())
                .collect();
            let dom = Arc::new(j.domain());
            Ok((j, Morphism::new(dom, p.clone(), letters)?))
        }
        TietzeStep::Tctxt {
            relation,
            left,
            right,
        } => {
            let j = JMorphism::AddContext {
                m: relation.lhs.len(),
                n: relation.rhs.len(),
                p: left.len(),
                q: right.len(),
            };
            let letters = relation
                .lhs
                .letters()
                .chain(relation.rhs.letters())
                .chain(left.letters())
                .chain(right.letters())
                .collect();
            let dom = Arc::new(j.domain());
            Ok((j, Morphism::new(dom, p.clone(), letters)?))
        }
        TietzeStep::Trel { .. } => Err(Error::BadStep(
            "a derivable-relation step is not an elementary pushout".into(),
        )),
    }
}

/// A canonical fresh generator name for search-produced steps.
pub fn fresh_gen_name(p: &Presentation, preferred: &[String]) -> String {
    for name in preferred {
        if p.gen_id(name).is_none() {
            return name.clone();
        }
    }
    let taken: Vec<String> = p.gen_names().to_vec();
    let mut k = 0usize;
    loop {
        let candidate = freshen(&format!("g{k}"), &taken);
        if p.gen_id(&candidate).is_none() {
            return candidate;
        }
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::step::apply_step;
    use crate::core::canon::canonically_equal;
    use crate::core::word::Word;

    #[test]
    fn first_family_pushout_is_tgen() {
        // Attaching along u = 1 into ⟨a⟩ adds a generator defined by the
        // empty word.
        let p = Arc::new(Presentation::build(&["a"], &[], true).unwrap());
        let j = JMorphism::AddGenerator { m: 0 };
        let attach = Morphism::new(Arc::new(g_n(0)), p.clone(), vec![]).unwrap();
        let (po, step) = j_pushout(&j, &attach).unwrap();
        let applied = apply_step(&p, &step).unwrap();
        assert_eq!(po, applied);
        assert_eq!(po.gen_count(), 2);
        assert!(po.has_relation(&Relation::new(Word::empty(), po.parse_word("a1").unwrap())));
    }

    #[test]
    fn empty_context_readds_the_relation() {
        let p = Arc::new(Presentation::build(&["a", "b"], &[("a", "b")], true).unwrap());
        let rel = Relation::new(p.parse_word("a").unwrap(), p.parse_word("b").unwrap());
        let step = TietzeStep::Tctxt {
            relation: rel,
            left: Word::empty(),
            right: Word::empty(),
        };
        let (j, attach) = step_as_j_pushout(&p, &step).unwrap();
        let (po, step2) = j_pushout(&j, &attach).unwrap();
        assert_eq!(po, **(&p));
        assert_eq!(step2, step);
    }

    #[test]
    fn round_trip_recovers_the_attachment() {
        let p = Arc::new(
            Presentation::build(&["a", "b"], &[("a b", "b a"), ("1", "b")], true).unwrap(),
        );
        let steps = [
            TietzeStep::Tsym {
                relation: Relation::new(p.parse_word("a b").unwrap(), p.parse_word("b a").unwrap()),
            },
            TietzeStep::Ttrans {
                first: Relation::new(Word::empty(), p.parse_word("b").unwrap()),
                second: Relation::new(p.parse_word("b").unwrap(), p.parse_word("b").unwrap()),
            },
        ];
        for step in steps {
            let (j, attach) = step_as_j_pushout(&p, &step).unwrap();
            let (po, step2) = j_pushout(&j, &attach).unwrap();
            let (j2, attach2) = step_as_j_pushout(&p, &step2).unwrap();
            assert_eq!(j, j2);
            assert_eq!(attach, attach2);
            assert!(canonically_equal(&po, &apply_step(&p, &step).unwrap()).unwrap());
        }
    }
}
