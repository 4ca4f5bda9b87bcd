//! The completeness cospan: two presentations of the same monoid both
//! transform into a common apex.
//!
//! The apex joins both alphabets and relation sets together with one
//! defining relation per borrowed generator in each direction, chosen by a
//! two-sided dictionary. The left trace adds the target's generators (each
//! defined by its dictionary word), then the borrowed defining relations,
//! then the target's relations — all derivable, with witnesses assembled
//! from a weak-equivalence certificate when one is available and searched
//! otherwise. Both traces use only the generator-adding and
//! derivable-relation steps.

use std::sync::Arc;

use crate::calculus::step::TietzeStep;
use crate::calculus::trace::TietzeTrace;
use crate::core::morphism::Morphism;
use crate::core::presentation::{Presentation, Relation};
use crate::core::word::{GenId, Word};
use crate::error::{Error, Result};
use crate::model::weq::{certify_weak_equivalence, WeqCertificate, WeqVerdict};
use crate::rewriting::derivation::{Derivation, DerivationStep, Direction};
use crate::rewriting::search::search_derivation;
use crate::rewriting::verdict::SearchBudget;

/// A two-sided dictionary: for every source generator a target word
/// presenting the same element, and vice versa.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dictionary {
    pub src_to_tgt: Vec<Word>,
    pub tgt_to_src: Vec<Word>,
}

#[derive(Debug, Clone)]
pub struct Cospan {
    pub apex: Presentation,
    pub trace_left: TietzeTrace,
    pub trace_right: TietzeTrace,
    pub leg_left: Morphism,
    pub leg_right: Morphism,
    pub dictionary: Dictionary,
}

#[derive(Debug, Clone)]
pub enum CospanOutcome {
    Built(Box<Cospan>),
    /// Dictionary or witness search exhausted; carries what failed.
    Unknown { reason: String },
}

impl CospanOutcome {
    pub fn built(self) -> Option<Cospan> {
        match self {
            CospanOutcome::Built(c) => Some(*c),
            CospanOutcome::Unknown { .. } => None,
        }
    }
}

/// How phase witnesses are produced: constructively from a certificate for
/// a morphism `P → Q`, or by bounded search.
enum Witnesses {
    Certificate(WeqCertificate, Morphism),
    Search(SearchBudget),
}

pub fn theorem1_cospan(
    p: &Arc<Presentation>,
    q: &Arc<Presentation>,
    dictionary: Option<Dictionary>,
    budget: &SearchBudget,
) -> Result<CospanOutcome> {
    p.require_explicit()?;
    q.require_explicit()?;
    if p.is_reflexive() != q.is_reflexive() {
        return Err(Error::Precondition(
            "endpoints must agree on reflexivity".into(),
        ));
    }
    if let Some(dict) = dictionary {
        validate_dictionary(p, q, &dict)?;
        return build_cospan(p, q, dict, Witnesses::Search(budget.clone()));
    }
    // No dictionary given: look for a certified weak equivalence between
    // the endpoints, in either direction, among all generator maps.
    if let Some((f, cert)) = find_certified_morphism(p, q, budget)? {
        let dict = Dictionary {
            src_to_tgt: f.map().iter().map(|&b| Word::single(b)).collect(),
            tgt_to_src: cert.dictionary.clone(),
        };
        return build_cospan(p, q, dict, Witnesses::Certificate(cert, f));
    }
    if let Some((f, cert)) = find_certified_morphism(q, p, budget)? {
        let dict = Dictionary {
            src_to_tgt: cert.dictionary.clone(),
            tgt_to_src: f.map().iter().map(|&b| Word::single(b)).collect(),
        };
        let swapped = build_cospan(q, p, dict, Witnesses::Certificate(cert, f))?;
        return Ok(match swapped {
            CospanOutcome::Built(c) => CospanOutcome::Built(Box::new(Cospan {
                apex: c.apex,
                trace_left: c.trace_right,
                trace_right: c.trace_left,
                leg_left: c.leg_right,
                leg_right: c.leg_left,
                dictionary: Dictionary {
                    src_to_tgt: c.dictionary.tgt_to_src,
                    tgt_to_src: c.dictionary.src_to_tgt,
                },
            })),
            unknown => unknown,
        });
    }
    Ok(CospanOutcome::Unknown {
        reason: "no certified weak equivalence between the endpoints was found".into(),
    })
}

fn validate_dictionary(p: &Presentation, q: &Presentation, dict: &Dictionary) -> Result<()> {
    if dict.src_to_tgt.len() != p.gen_count() || dict.tgt_to_src.len() != q.gen_count() {
        return Err(Error::MapArity {
            got: dict.src_to_tgt.len(),
            want: p.gen_count(),
        });
    }
    for w in &dict.src_to_tgt {
        q.check_word(w)?;
    }
    for w in &dict.tgt_to_src {
        p.check_word(w)?;
    }
    Ok(())
}

/// Enumerates generator maps `p → q` in lexicographic order, keeping the
/// first valid morphism that certifies as a weak equivalence.
fn find_certified_morphism(
    p: &Arc<Presentation>,
    q: &Arc<Presentation>,
    budget: &SearchBudget,
) -> Result<Option<(Morphism, WeqCertificate)>> {
    if q.gen_count() == 0 && p.gen_count() > 0 {
        return Ok(None);
    }
    let candidate_cap = 4096usize;
    let mut map = vec![GenId(0); p.gen_count()];
    let mut tried = 0usize;
    loop {
        tried += 1;
        if tried > candidate_cap {
            return Ok(None);
        }
        let f = Morphism::new(p.clone(), q.clone(), map.clone())?;
        if f.validate_exact_or(8).is_ok() {
            if let WeqVerdict::Proved(cert) = certify_weak_equivalence(&f, budget)? {
                return Ok(Some((f, cert)));
            }
        }
        let mut pos = map.len();
        loop {
            if pos == 0 {
                return Ok(None);
            }
            pos -= 1;
            map[pos].0 += 1;
            if map[pos].index() < q.gen_count() {
                break;
            }
            map[pos] = GenId(0);
        }
    }
}

/// Shifts a word over `q`'s alphabet into the joined alphabet.
fn shift(w: &Word, offset: u32) -> Word {
    Word(w.letters().map(|g| GenId(g.0 + offset)).collect())
}

fn build_cospan(
    p: &Arc<Presentation>,
    q: &Arc<Presentation>,
    dict: Dictionary,
    witnesses: Witnesses,
) -> Result<CospanOutcome> {
    let offset = p.gen_count() as u32;
    // Joined alphabet, collision-renamed like a coproduct.
    let mut names = Vec::with_capacity(p.gen_count() + q.gen_count());
    for name in p.gen_names() {
        if q.gen_names().contains(name) {
            names.push(format!("{name}'0"));
        } else {
            names.push(name.clone());
        }
    }
    for name in q.gen_names() {
        if p.gen_names().contains(name) {
            names.push(format!("{name}'1"));
        } else {
            names.push(name.clone());
        }
    }

    // Left trace: P gains Q's generators, the borrowed definitions, and
    // Q's relations.
    let mut steps_left: Vec<TietzeStep> = Vec::new();
    for b in q.gen_ids() {
        steps_left.push(TietzeStep::Tgen {
            word: dict.tgt_to_src[b.index()].clone(),
            fresh: names[offset as usize + b.index()].clone(),
        });
    }
    // Helper: derivation converting a Q-part word to its dictionary image
    // over P, one letter at a time, inside the presentation that contains
    // the defining relations b^P -> b.
    let convert_left = |w: &Word| -> Derivation {
        let shifted = shift(w, offset);
        let mut d = Derivation::trivial(shifted);
        let mut converted = Word::empty();
        for (i, b) in w.letters().enumerate() {
            let mut right = Word::empty();
            for c in w.letters().skip(i + 1) {
                right = right.concat(&Word::single(GenId(c.0 + offset)));
            }
            let step = DerivationStep {
                left: converted.clone(),
                relation: Relation::new(
                    dict.tgt_to_src[b.index()].clone(),
                    Word::single(GenId(b.0 + offset)),
                ),
                direction: Direction::Backward,
                right,
            };
            converted = converted.concat(&dict.tgt_to_src[b.index()]);
            d = d.then(&Derivation {
                start: d.end.clone(),
                steps: vec![step.clone()],
                end: step.after(),
            })
            .expect("conversion chains");
        }
        d
    };
    let p_arc_for_left = p.clone();
    let after_gens_left = TietzeTrace::new(p_arc_for_left.clone(), steps_left.clone())?;
    let mut current_left = after_gens_left.end().clone();
    // Borrowed definitions a^Q -> a.
    for a in p.gen_ids() {
        let lhs = shift(&dict.src_to_tgt[a.index()], offset);
        let rhs = Word::single(a);
        let witness = match &witnesses {
            Witnesses::Certificate(cert, _) => {
                // a^Q converts letterwise to (a^Q)^P = g*(f(a)); the
                // certificate's source derivation finishes the job.
                let conv = convert_left(&dict.src_to_tgt[a.index()]);
                conv.then(&cert.source_derivations[a.index()])
                    .ok_or_else(|| Error::BadCertificate("cospan witness does not chain".into()))?
            }
            Witnesses::Search(budget) => match search_derivation(&current_left, &lhs, &rhs, budget)
            {
                Ok(d) => d,
                Err(_) => {
                    return Ok(CospanOutcome::Unknown {
                        reason: format!(
                            "witness search exhausted for {} -> {}",
                            current_left.render_word(&lhs),
                            current_left.render_word(&rhs)
                        ),
                    })
                }
            },
        };
        let step = TietzeStep::Trel {
            lhs,
            rhs,
            witness,
        };
        current_left = crate::calculus::step::apply_step(&current_left, &step)?;
        steps_left.push(step);
    }
    // Q's own relations.
    for rel in q.require_explicit()? {
        let lhs = shift(&rel.lhs, offset);
        let rhs = shift(&rel.rhs, offset);
        let witness = match &witnesses {
            Witnesses::Certificate(cert, _) => {
                let conv_l = convert_left(&rel.lhs);
                let conv_r = convert_left(&rel.rhs);
                // Diagonal relations have equal dictionary images and need
                // no stored witness.
                let middle = if rel.is_diagonal() {
                    Derivation::trivial(conv_l.end.clone())
                } else {
                    cert.relation_derivations
                        .iter()
                        .find(|(r, _)| r == &rel)
                        .map(|(_, d)| d.clone())
                        .ok_or_else(|| {
                            Error::BadCertificate("certificate misses a relation witness".into())
                        })?
                };
                conv_l
                    .then(&middle)
                    .and_then(|d| d.then(&conv_r.reversed()))
                    .ok_or_else(|| Error::BadCertificate("cospan witness does not chain".into()))?
            }
            Witnesses::Search(budget) => match search_derivation(&current_left, &lhs, &rhs, budget)
            {
                Ok(d) => d,
                Err(_) => {
                    return Ok(CospanOutcome::Unknown {
                        reason: format!(
                            "witness search exhausted for {} -> {}",
                            current_left.render_word(&lhs),
                            current_left.render_word(&rhs)
                        ),
                    })
                }
            },
        };
        let step = TietzeStep::Trel {
            lhs,
            rhs,
            witness,
        };
        current_left = crate::calculus::step::apply_step(&current_left, &step)?;
        steps_left.push(step);
    }
    let trace_left = TietzeTrace::new(p_arc_for_left, steps_left)?;
    let apex = trace_left.end().clone();

    // Right trace: symmetric, starting from Q. Its own intermediate
    // alphabet puts Q first, so its end equals the apex up to the
    // canonical renaming.
    let trace_right = build_right_trace(p, q, &names, &dict, &witnesses)?;
    let trace_right = match trace_right {
        Ok(t) => t,
        Err(reason) => return Ok(CospanOutcome::Unknown { reason }),
    };

    let apex_arc = Arc::new(apex.clone());
    let leg_left = Morphism::new(p.clone(), apex_arc.clone(), p.gen_ids().collect())?;
    let leg_right = Morphism::new(
        q.clone(),
        apex_arc,
        q.gen_ids().map(|g| GenId(g.0 + offset)).collect(),
    )?;
    Ok(CospanOutcome::Built(Box::new(Cospan {
        apex,
        trace_left,
        trace_right,
        leg_left,
        leg_right,
        dictionary: dict,
    })))
}

/// Builds the trace from `q`: adds `p`'s generators defined by their
/// dictionary words, then `a^Q -> a`-style definitions for the borrowed
/// side, then `p`'s relations.
fn build_right_trace(
    p: &Arc<Presentation>,
    q: &Arc<Presentation>,
    joined_names: &[String],
    dict: &Dictionary,
    witnesses: &Witnesses,
) -> Result<std::result::Result<TietzeTrace, String>> {
    let offset = q.gen_count() as u32;
    let mut steps: Vec<TietzeStep> = Vec::new();
    // P-generators, each defined by its target-side dictionary word.
    for a in p.gen_ids() {
        steps.push(TietzeStep::Tgen {
            word: dict.src_to_tgt[a.index()].clone(),
            fresh: joined_names[a.index()].clone(),
        });
    }
    let shift_p = |w: &Word| Word(w.letters().map(|g| GenId(g.0 + offset)).collect());
    let convert_right = |w: &Word| -> Derivation {
        // Converts a P-part word (shifted ids) back to its q-side
        // dictionary image using the defining relations a^Q -> a.
        let shifted = shift_p(w);
        let mut d = Derivation::trivial(shifted);
        let mut converted = Word::empty();
        for (i, a) in w.letters().enumerate() {
            let mut right = Word::empty();
            for c in w.letters().skip(i + 1) {
                right = right.concat(&Word::single(GenId(c.0 + offset)));
            }
            let step = DerivationStep {
                left: converted.clone(),
                relation: Relation::new(
                    dict.src_to_tgt[a.index()].clone(),
                    Word::single(GenId(a.0 + offset)),
                ),
                direction: Direction::Backward,
                right,
            };
            converted = converted.concat(&dict.src_to_tgt[a.index()]);
            d = d.then(&Derivation {
                start: d.end.clone(),
                steps: vec![step.clone()],
                end: step.after(),
            })
            .expect("conversion chains");
        }
        d
    };
    let q_arc = q.clone();
    let after_gens = TietzeTrace::new(q_arc.clone(), steps.clone())?;
    let mut current = after_gens.end().clone();
    // Borrowed definitions b^P -> b.
    for b in q.gen_ids() {
        let lhs = shift_p(&dict.tgt_to_src[b.index()]);
        let rhs = Word::single(b);
        let witness = match witnesses {
            Witnesses::Certificate(cert, _) => {
                // b^P converts letterwise to (b^P)^Q = f*(g(b)); the
                // certificate's target derivation finishes the job.
                let conv = convert_right(&dict.tgt_to_src[b.index()]);
                match conv.then(&cert.target_derivations[b.index()]) {
                    Some(d) => d,
                    None => {
                        return Ok(Err("right-trace witness does not chain".into()));
                    }
                }
            }
            Witnesses::Search(budget) => match search_derivation(&current, &lhs, &rhs, budget) {
                Ok(d) => d,
                Err(_) => {
                    return Ok(Err(format!(
                        "witness search exhausted for {} -> {}",
                        current.render_word(&lhs),
                        current.render_word(&rhs)
                    )));
                }
            },
        };
        let step = TietzeStep::Trel { lhs, rhs, witness };
        current = crate::calculus::step::apply_step(&current, &step)?;
        steps.push(step);
    }
    // P's own relations. With a certificate these are immediate: the
    // morphism sends each relation to a target relation or an equal pair,
    // so the converted sides join in one step (or zero).
    for rel in p.require_explicit()? {
        let lhs = shift_p(&rel.lhs);
        let rhs = shift_p(&rel.rhs);
        let witness = match witnesses {
            Witnesses::Certificate(_, f) => {
                let conv_l = convert_right(&rel.lhs);
                let conv_r = convert_right(&rel.rhs);
                let img_l = f.apply(&rel.lhs)?;
                let img_r = f.apply(&rel.rhs)?;
                let middle = if img_l == img_r {
                    Derivation::trivial(img_l)
                } else {
                    Derivation {
                        start: img_l.clone(),
                        steps: vec![DerivationStep {
                            left: Word::empty(),
                            relation: Relation::new(img_l, img_r.clone()),
                            direction: Direction::Forward,
                            right: Word::empty(),
                        }],
                        end: img_r,
                    }
                };
                match conv_l.then(&middle).and_then(|d| d.then(&conv_r.reversed())) {
                    Some(d) => d,
                    None => return Ok(Err("right-trace witness does not chain".into())),
                }
            }
            Witnesses::Search(budget) => match search_derivation(&current, &lhs, &rhs, budget) {
                Ok(d) => d,
                Err(_) => {
                    return Ok(Err(format!(
                        "witness search exhausted for {} -> {}",
                        current.render_word(&lhs),
                        current.render_word(&rhs)
                    )));
                }
            },
        };
        let step = TietzeStep::Trel { lhs, rhs, witness };
        current = crate::calculus::step::apply_step(&current, &step)?;
        steps.push(step);
    }
    Ok(Ok(TietzeTrace::new(q_arc, steps)?))
}
