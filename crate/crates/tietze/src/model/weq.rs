//! Weak-equivalence certificates.
//!
//! A morphism is a weak equivalence when it induces an isomorphism of
//! presented monoids. A positive certificate is a two-sided generator
//! dictionary with derivations:
//!
//! - for every target generator `b`, a source word `g(b)` and a target
//!   derivation `f*(g(b)) ~ b`;
//! - for every source generator `a`, a source derivation `g*(f(a)) ~ a`;
//! - for every relation in a finite generating set of the target's
//!   congruence, a source derivation `g*(x) ~ g*(y)`.
//!
//! The last family makes the wordwise extension of `g` a congruence
//! homomorphism, so the three together exhibit a two-sided inverse of the
//! induced map; without it the first two families validate on
//! non-isomorphisms such as `⟨a⟩ → ⟨b | bb -> b⟩`.
//!
//! Refutations are either a separated pair with congruent images
//! (non-injectivity) or a finite quotient of the target whose image misses
//! a generator (non-surjectivity). Semidecidability is surfaced: no claim
//! is made without its certificate.

use std::collections::HashMap;

use crate::core::monoid::{builtin_monoids, MonoidTable};
use crate::core::morphism::Morphism;
use crate::core::presentation::Relation;
use crate::core::word::{GenId, Word};
use crate::error::{Error, Result};
use crate::rewriting::derivation::{Derivation, DerivationStep, Direction};
use crate::rewriting::search::{rewrite_neighbors, search_derivation};
use crate::rewriting::separate::separate;
use crate::rewriting::validate::{check_hom_certificate, replay_derivation};
use crate::rewriting::verdict::{BudgetReport, Exhausted, HomCertificate, SearchBudget};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeqCertificate {
    /// Per target generator, a source word presenting the same element.
    pub dictionary: Vec<Word>,
    /// Per target generator `b`: a target derivation `f*(g(b)) ~ b`.
    pub target_derivations: Vec<Derivation>,
    /// Per source generator `a`: a source derivation `g*(f(a)) ~ a`.
    pub source_derivations: Vec<Derivation>,
    /// Per congruence rule `(x, y)` of the target: a source derivation
    /// `g*(x) ~ g*(y)`.
    pub relation_derivations: Vec<(Relation, Derivation)>,
}

impl WeqCertificate {
    /// The wordwise extension of the dictionary.
    pub fn apply_dictionary(&self, w: &Word) -> Word {
        let mut out = Word::empty();
        for b in w.letters() {
            out = out.concat(&self.dictionary[b.index()]);
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeqRefutation {
    /// Words with congruent images that are separated in the source.
    NotInjective {
        left: Word,
        right: Word,
        image_proof: Derivation,
        separation: HomCertificate,
    },
    /// A finite quotient of the target whose induced image misses a
    /// generator.
    NotSurjective {
        generator: GenId,
        table: MonoidTable,
        assignment: Vec<usize>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeqVerdict {
    Proved(WeqCertificate),
    Refuted(WeqRefutation),
    Unknown(BudgetReport),
}

impl WeqVerdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, WeqVerdict::Proved(_))
    }

    pub fn certificate(&self) -> Option<&WeqCertificate> {
        match self {
            WeqVerdict::Proved(c) => Some(c),
            _ => None,
        }
    }
}

/// Independent validator for positive certificates.
pub fn check_weq_certificate(f: &Morphism, cert: &WeqCertificate) -> Result<()> {
    let src = f.src();
    let tgt = f.tgt();
    if cert.dictionary.len() != tgt.gen_count()
        || cert.target_derivations.len() != tgt.gen_count()
        || cert.source_derivations.len() != src.gen_count()
    {
        return Err(Error::BadCertificate("dictionary arity mismatch".into()));
    }
    for w in &cert.dictionary {
        src.check_word(w)
            .map_err(|e| Error::BadCertificate(e.to_string()))?;
    }
    for b in tgt.gen_ids() {
        let d = &cert.target_derivations[b.index()];
        let image = f.apply(&cert.dictionary[b.index()])?;
        if d.start != image || d.end != Word::single(b) {
            return Err(Error::BadCertificate(
                "target derivation endpoints mismatch".into(),
            ));
        }
        replay_derivation(tgt, d)?;
    }
    for a in src.gen_ids() {
        let d = &cert.source_derivations[a.index()];
        let expected = cert.apply_dictionary(&Word::single(f.apply_gen(a)));
        if d.start != expected || d.end != Word::single(a) {
            return Err(Error::BadCertificate(
                "source derivation endpoints mismatch".into(),
            ));
        }
        replay_derivation(src, d)?;
    }
    // Every congruence rule of the target must be covered.
    let mut covered: HashMap<&Relation, &Derivation> = HashMap::new();
    for (rel, d) in &cert.relation_derivations {
        covered.insert(rel, d);
    }
    for rule in tgt.congruence_rules() {
        let d = covered.get(&rule).ok_or_else(|| {
            Error::BadCertificate("a target congruence rule has no witness".into())
        })?;
        if d.start != cert.apply_dictionary(&rule.lhs) || d.end != cert.apply_dictionary(&rule.rhs)
        {
            return Err(Error::BadCertificate(
                "relation derivation endpoints mismatch".into(),
            ));
        }
        replay_derivation(src, d)?;
    }
    Ok(())
}

/// Independent validator for refutations.
pub fn check_weq_refutation(f: &Morphism, refutation: &WeqRefutation) -> Result<()> {
    let src = f.src();
    let tgt = f.tgt();
    match refutation {
        WeqRefutation::NotInjective {
            left,
            right,
            image_proof,
            separation,
        } => {
            if image_proof.start != f.apply(left)? || image_proof.end != f.apply(right)? {
                return Err(Error::BadCertificate(
                    "image proof endpoints mismatch".into(),
                ));
            }
            replay_derivation(tgt, image_proof)?;
            if &separation.left != left || &separation.right != right {
                return Err(Error::BadCertificate(
                    "separation witnesses a different pair".into(),
                ));
            }
            check_hom_certificate(src, separation)
        }
        WeqRefutation::NotSurjective {
            generator,
            table,
            assignment,
        } => {
            table.validate()?;
            if assignment.len() != tgt.gen_count() {
                return Err(Error::BadCertificate("assignment arity mismatch".into()));
            }
            let rels = tgt
                .require_explicit()
                .map_err(|_| Error::BadCertificate("target is not explicit".into()))?;
            for rel in &rels {
                if table.eval(assignment, &rel.lhs) != table.eval(assignment, &rel.rhs) {
                    return Err(Error::BadCertificate(
                        "assignment does not satisfy a target relation".into(),
                    ));
                }
            }
            let seed: Vec<usize> = f
                .map()
                .iter()
                .map(|b| assignment[b.index()])
                .collect();
            let reachable = table.generated_submonoid(&seed);
            if reachable.contains(&assignment[generator.index()]) {
                return Err(Error::BadCertificate(
                    "the claimed missed generator lies in the image submonoid".into(),
                ));
            }
            Ok(())
        }
    }
}

/// Derivation `f*(g*(w)) ~ w` in the target, assembled from per-generator
/// target derivations, converting letter blocks left to right.
fn image_equivalence(
    f: &Morphism,
    cert_dict: &[Word],
    target_derivs: &[Derivation],
    w: &Word,
) -> Result<Derivation> {
    // Start word: concatenation of the images of the dictionary entries.
    let mut start = Word::empty();
    for b in w.letters() {
        start = start.concat(&f.apply(&cert_dict[b.index()])?);
    }
    let mut d = Derivation::trivial(start);
    let mut converted = Word::empty();
    for (i, b) in w.letters().enumerate() {
        // Remaining blocks still in image form.
        let mut right = Word::empty();
        for c in w.letters().skip(i + 1) {
            right = right.concat(&f.apply(&cert_dict[c.index()])?);
        }
        let block = target_derivs[b.index()].in_context(&converted, &right);
        d = d
            .then(&block)
            .ok_or_else(|| Error::BadCertificate("image conversion does not chain".into()))?;
        converted = converted.concat(&Word::single(b));
    }
    Ok(d)
}

/// Searches for a weak-equivalence verdict within a budget.
///
/// The dictionary search explores the target congruence outward from each
/// generator until it reaches a word whose letters all have preimages,
/// preferring the shortest preimage found (lexicographic tie-break). The
/// refutation paths need an explicit source or target respectively.
pub fn certify_weak_equivalence(f: &Morphism, budget: &SearchBudget) -> Result<WeqVerdict> {
    let src = f.src();
    let tgt = f.tgt();
    let fibers = f.fibers();
    let rules = tgt.congruence_rules();

    // Dictionary and target-side derivations.
    let mut dictionary = Vec::with_capacity(tgt.gen_count());
    let mut target_derivations = Vec::with_capacity(tgt.gen_count());
    for b in tgt.gen_ids() {
        match image_word_search(&rules, &fibers, b, budget) {
            Some((preimage, deriv)) => {
                dictionary.push(preimage);
                target_derivations.push(deriv);
            }
            None => {
                // Try to certify non-surjectivity: a finite quotient of the
                // target missing `b` from the image submonoid.
                if budget.max_table_size > 0 && tgt.is_explicit() {
                    if let Some((table, assignment)) =
                        missed_generator_hom(f, b, budget.max_table_size)?
                    {
                        return Ok(WeqVerdict::Refuted(WeqRefutation::NotSurjective {
                            generator: b,
                            table,
                            assignment,
                        }));
                    }
                }
                return Ok(WeqVerdict::Unknown(BudgetReport {
                    expansions_used: budget.max_expansions,
                    max_len_reached: budget.max_word_len,
                    exhausted: Exhausted::Expansions,
                }));
            }
        }
    }

    // Source-side derivations; a failure is a candidate non-injectivity.
    let apply_dict = |w: &Word| -> Word {
        let mut out = Word::empty();
        for b in w.letters() {
            out = out.concat(&dictionary[b.index()]);
        }
        out
    };
    let mut source_derivations = Vec::with_capacity(src.gen_count());
    for a in src.gen_ids() {
        let from = apply_dict(&Word::single(f.apply_gen(a)));
        match search_derivation(src, &from, &Word::single(a), budget) {
            Ok(d) => source_derivations.push(d),
            Err(report) => {
                if budget.max_table_size > 0 && src.is_explicit() {
                    if let Some(separation) =
                        separate(src, &from, &Word::single(a), budget.max_table_size)?
                    {
                        let image_proof = target_derivations[f.apply_gen(a).index()].clone();
                        return Ok(WeqVerdict::Refuted(WeqRefutation::NotInjective {
                            left: from,
                            right: Word::single(a),
                            image_proof,
                            separation,
                        }));
                    }
                }
                return Ok(WeqVerdict::Unknown(report));
            }
        }
    }

    // Relation witnesses over the target's congruence rules.
    let mut relation_derivations = Vec::with_capacity(rules.len());
    for rule in &rules {
        let from = apply_dict(&rule.lhs);
        let to = apply_dict(&rule.rhs);
        match search_derivation(src, &from, &to, budget) {
            Ok(d) => relation_derivations.push((rule.clone(), d)),
            Err(report) => {
                if budget.max_table_size > 0 && src.is_explicit() {
                    if let Some(separation) = separate(src, &from, &to, budget.max_table_size)? {
                        let left_conv =
                            image_equivalence(f, &dictionary, &target_derivations, &rule.lhs)?;
                        let right_conv =
                            image_equivalence(f, &dictionary, &target_derivations, &rule.rhs)?;
                        let step = DerivationStep {
                            left: Word::empty(),
                            relation: rule.clone(),
                            direction: Direction::Forward,
                            right: Word::empty(),
                        };
                        let mid = Derivation {
                            start: rule.lhs.clone(),
                            steps: vec![step],
                            end: rule.rhs.clone(),
                        };
                        let image_proof = left_conv
                            .then(&mid)
                            .and_then(|d| d.then(&right_conv.reversed()))
                            .ok_or_else(|| {
                                Error::BadCertificate("image proof does not chain".into())
                            })?;
                        return Ok(WeqVerdict::Refuted(WeqRefutation::NotInjective {
                            left: from,
                            right: to,
                            image_proof,
                            separation,
                        }));
                    }
                }
                return Ok(WeqVerdict::Unknown(report));
            }
        }
    }

    let cert = WeqCertificate {
        dictionary,
        target_derivations,
        source_derivations,
        relation_derivations,
    };
    Ok(WeqVerdict::Proved(cert))
}

/// Breadth-first exploration of the target congruence from `b`, collecting
/// words whose letters all have preimages; returns the lexicographically
/// least shortest preimage and the derivation `f*(u) ~ b`.
pub(crate) fn image_word_search(
    rules: &[Relation],
    fibers: &[Vec<GenId>],
    b: GenId,
    budget: &SearchBudget,
) -> Option<(Word, Derivation)> {
    use std::collections::{HashMap as Map, VecDeque};
    let root = Word::single(b);
    let mut parents: Map<Word, Option<DerivationStep>> = Map::new();
    parents.insert(root.clone(), None);
    let mut queue: VecDeque<Word> = VecDeque::new();
    queue.push_back(root.clone());
    let mut expansions = 0usize;
    let mut hits: Vec<Word> = Vec::new();
    let in_image = |w: &Word| w.letters().all(|g| !fibers[g.index()].is_empty());
    if in_image(&root) {
        hits.push(root.clone());
    }
    while let Some(word) = queue.pop_front() {
        if expansions >= budget.max_expansions {
            break;
        }
        expansions += 1;
        for (next, step) in rewrite_neighbors(rules, &word, budget.max_word_len) {
            if parents.contains_key(&next) {
                continue;
            }
            parents.insert(next.clone(), Some(step));
            if in_image(&next) {
                hits.push(next.clone());
            }
            queue.push_back(next);
        }
    }
    // Prefer the shortest preimage; the preimage of a word is its
    // letterwise least preimage, whose length equals the word's.
    let best = hits.into_iter().min_by(|a, b| a.cmp(b))?;
    let preimage = Word(
        best.letters()
            .map(|g| fibers[g.index()][0])
            .collect::<Vec<_>>(),
    );
    // Path from b to best, reversed into f*(u) ~ b.
    let mut steps = Vec::new();
    let mut cur = best.clone();
    while let Some(Some(step)) = parents.get(&cur) {
        cur = step.before();
        steps.push(step.clone());
    }
    steps.reverse();
    let down = Derivation {
        start: root,
        steps,
        end: best,
    };
    Some((preimage, down.reversed()))
}

/// Searches for a finite quotient of the target whose image submonoid
/// misses `b`.
fn missed_generator_hom(
    f: &Morphism,
    b: GenId,
    max_size: usize,
) -> Result<Option<(MonoidTable, Vec<usize>)>> {
    let tgt = f.tgt();
    let rels: Vec<Relation> = tgt.require_explicit()?.into_iter().collect();
    for table in builtin_monoids(max_size) {
        let mut assignment = vec![0usize; tgt.gen_count()];
        loop {
            let ok = rels
                .iter()
                .all(|r| table.eval(&assignment, &r.lhs) == table.eval(&assignment, &r.rhs));
            if ok {
                let seed: Vec<usize> = f.map().iter().map(|g| assignment[g.index()]).collect();
                let reachable = table.generated_submonoid(&seed);
                if !reachable.contains(&assignment[b.index()]) {
                    return Ok(Some((table.clone(), assignment)));
                }
            }
            let mut pos = assignment.len();
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                assignment[pos] += 1;
                if assignment[pos] < table.size {
                    break;
                }
                assignment[pos] = 0;
            }
            if assignment.iter().all(|&x| x == 0) {
                break;
            }
        }
    }
    Ok(None)
}
