//! Presentations: a finite alphabet together with a relation set.
//!
//! Relation sets may be extensional (`Explicit`) or finitely described
//! infinite families (`Diagonal`, `Pullback`, `Union`). Reflexivity is a
//! flag — an implicit diagonal unioned into the relations — and is never
//! materialized, so every predicate consults the flag.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::core::word::{words_up_to, GenId, Word};
use crate::error::{Error, Result};

/// An oriented relation `lhs -> rhs` between words over the owning alphabet.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Relation {
    pub lhs: Word,
    pub rhs: Word,
}

impl Relation {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        Relation { lhs, rhs }
    }

    pub fn reversed(&self) -> Relation {
        Relation {
            lhs: self.rhs.clone(),
            rhs: self.lhs.clone(),
        }
    }

    pub fn is_diagonal(&self) -> bool {
        self.lhs == self.rhs
    }

    pub fn max_side_len(&self) -> usize {
        self.lhs.len().max(self.rhs.len())
    }
}

/// A decidable, boundedly enumerable set of relations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RelSet {
    /// A finite set of relations.
    Explicit(BTreeSet<Relation>),
    /// All relations `u -> u` over the owning alphabet.
    Diagonal,
    /// All `(u, v)` whose images under a generator map land in the target's
    /// relations (or are equal, when the target is reflexive).
    Pullback {
        /// Letterwise map from the owning alphabet into `target`'s alphabet.
        map: Vec<GenId>,
        target: Arc<Presentation>,
    },
    Union(Vec<RelSet>),
}

impl RelSet {
    pub fn empty() -> Self {
        RelSet::Explicit(BTreeSet::new())
    }

    pub fn from_relations<I: IntoIterator<Item = Relation>>(rels: I) -> Self {
        RelSet::Explicit(rels.into_iter().collect())
    }

    fn map_word(map: &[GenId], u: &Word) -> Word {
        Word(u.letters().map(|g| map[g.index()]).collect())
    }

    /// Decides membership of `(lhs, rhs)`, not counting the owner's
    /// reflexive flag.
    pub fn contains(&self, rel: &Relation) -> bool {
        match self {
            RelSet::Explicit(set) => set.contains(rel),
            RelSet::Diagonal => rel.is_diagonal(),
            RelSet::Pullback { map, target } => {
                let image = Relation::new(
                    Self::map_word(map, &rel.lhs),
                    Self::map_word(map, &rel.rhs),
                );
                target.has_relation(&image)
            }
            RelSet::Union(parts) => parts.iter().any(|p| p.contains(rel)),
        }
    }

    /// All members with both sides of length at most `max_side`, over an
    /// owning alphabet of `alphabet` generators.
    pub fn enumerate(&self, alphabet: usize, max_side: usize) -> BTreeSet<Relation> {
        match self {
            RelSet::Explicit(set) => set
                .iter()
                .filter(|r| r.lhs.len() <= max_side && r.rhs.len() <= max_side)
                .cloned()
                .collect(),
            RelSet::Diagonal => words_up_to(alphabet, max_side)
                .into_iter()
                .map(|w| Relation::new(w.clone(), w))
                .collect(),
            RelSet::Pullback { map, target } => {
                // Per left side, the right sides are letterwise preimages
                // of the target relations at its image; this avoids the
                // quadratic scan over the whole word universe.
                let Some(target_explicit) = target.rels().explicit_part() else {
                    // Nested intensional target: fall back to the generic
                    // quadratic scan.
                    let words = words_up_to(alphabet, max_side);
                    let mut out = BTreeSet::new();
                    for lhs in &words {
                        for rhs in &words {
                            let rel = Relation::new(lhs.clone(), rhs.clone());
                            if self.contains(&rel) {
                                out.insert(rel);
                            }
                        }
                    }
                    return out;
                };
                let target_diagonal =
                    target.is_reflexive() || target.rels().has_diagonal_part();
                let mut fibers: Vec<Vec<GenId>> = vec![Vec::new(); target.gens.len()];
                for (i, g) in map.iter().enumerate() {
                    fibers[g.index()].push(GenId(i as u32));
                }
                let mut out = BTreeSet::new();
                for lhs in words_up_to(alphabet, max_side) {
                    let image = Self::map_word(map, &lhs);
                    for rel in target_explicit.iter().filter(|r| r.lhs == image) {
                        if rel.rhs.len() > max_side {
                            continue;
                        }
                        for rhs in crate::core::morphism::word_preimages(&fibers, &rel.rhs) {
                            out.insert(Relation::new(lhs.clone(), rhs));
                        }
                    }
                    if target_diagonal {
                        for rhs in crate::core::morphism::word_preimages(&fibers, &image) {
                            out.insert(Relation::new(lhs.clone(), rhs));
                        }
                    }
                }
                out
            }
            RelSet::Union(parts) => {
                let mut out = BTreeSet::new();
                for p in parts {
                    out.extend(p.enumerate(alphabet, max_side));
                }
                out
            }
        }
    }

    /// A finite set of members generating the same congruence as the whole
    /// set.
    ///
    /// For a pullback this is one canonical letterwise preimage of each
    /// generating relation of the target plus all same-fiber generator
    /// pairs: an arbitrary member `(u, v)` maps to a target relation, `u`
    /// and `v` are letterwise swaps away from the canonical preimages, and
    /// letterwise swaps are exactly the fiber pairs.
    pub fn congruence_rules(&self, alphabet: usize) -> Vec<Relation> {
        let mut out: BTreeSet<Relation> = BTreeSet::new();
        self.collect_congruence_rules(alphabet, &mut out);
        out.into_iter().filter(|r| !r.is_diagonal()).collect()
    }

    fn collect_congruence_rules(&self, alphabet: usize, out: &mut BTreeSet<Relation>) {
        match self {
            RelSet::Explicit(set) => out.extend(set.iter().cloned()),
            RelSet::Diagonal => {}
            RelSet::Pullback { map, target } => {
                // Least preimage of each target generator, where one exists.
                let mut preimage: Vec<Option<GenId>> = vec![None; target.gens.len()];
                for (i, tgt) in map.iter().enumerate() {
                    let slot = &mut preimage[tgt.index()];
                    if slot.is_none() {
                        *slot = Some(GenId(i as u32));
                    }
                }
                let lift = |w: &Word| -> Option<Word> {
                    w.letters()
                        .map(|g| preimage[g.index()])
                        .collect::<Option<Vec<_>>>()
                        .map(Word)
                };
                for rel in target.congruence_rules() {
                    if let (Some(lhs), Some(rhs)) = (lift(&rel.lhs), lift(&rel.rhs)) {
                        out.insert(Relation::new(lhs, rhs));
                    }
                }
                // Same-fiber generator pairs; members only when the target
                // is reflexive, which holds in every pullback we build.
                if target.reflexive {
                    for i in 0..alphabet {
                        for j in (i + 1)..alphabet {
                            if map[i] == map[j] {
                                out.insert(Relation::new(
                                    Word::single(GenId(i as u32)),
                                    Word::single(GenId(j as u32)),
                                ));
                            }
                        }
                    }
                }
            }
            RelSet::Union(parts) => {
                for p in parts {
                    p.collect_congruence_rules(alphabet, out);
                }
            }
        }
    }

    /// The explicit members when this set is built from `Explicit` and
    /// `Diagonal` parts only.
    pub fn explicit_part(&self) -> Option<BTreeSet<Relation>> {
        match self {
            RelSet::Explicit(set) => Some(set.clone()),
            RelSet::Diagonal => Some(BTreeSet::new()),
            RelSet::Pullback { .. } => None,
            RelSet::Union(parts) => {
                let mut out = BTreeSet::new();
                for p in parts {
                    out.extend(p.explicit_part()?);
                }
                Some(out)
            }
        }
    }

    /// Whether a `Diagonal` part occurs anywhere in this set.
    pub fn has_diagonal_part(&self) -> bool {
        match self {
            RelSet::Explicit(_) => false,
            RelSet::Diagonal => true,
            RelSet::Pullback { .. } => false,
            RelSet::Union(parts) => parts.iter().any(|p| p.has_diagonal_part()),
        }
    }

    fn max_letter(&self) -> Option<GenId> {
        match self {
            RelSet::Explicit(set) => set
                .iter()
                .flat_map(|r| [r.lhs.max_letter(), r.rhs.max_letter()])
                .flatten()
                .max(),
            RelSet::Diagonal => None,
            RelSet::Pullback { map, .. } => {
                if map.is_empty() {
                    None
                } else {
                    Some(GenId(map.len() as u32 - 1))
                }
            }
            RelSet::Union(parts) => parts.iter().filter_map(|p| p.max_letter()).max(),
        }
    }
}

/// A finite presentation: alphabet, relation set and reflexivity flag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Presentation {
    gens: Vec<String>,
    rels: RelSet,
    reflexive: bool,
}

fn validate_name(name: &str) -> Result<()> {
    if name.is_empty() {
        return Err(Error::BadGeneratorName(name.into(), "empty"));
    }
    if name == "1" {
        return Err(Error::BadGeneratorName(
            name.into(),
            "the literal 1 denotes the empty word",
        ));
    }
    if name.chars().any(|c| c.is_whitespace()) {
        return Err(Error::BadGeneratorName(name.into(), "contains whitespace"));
    }
    if name.contains('(') || name.contains(')') {
        return Err(Error::BadGeneratorName(
            name.into(),
            "parentheses are reserved by the trace format",
        ));
    }
    if name == "->" || name == "|" || name == "_" {
        return Err(Error::BadGeneratorName(
            name.into(),
            "reserved format token",
        ));
    }
    Ok(())
}

impl Presentation {
    pub fn new<S: Into<String>>(gens: Vec<S>, rels: RelSet, reflexive: bool) -> Result<Self> {
        let gens: Vec<String> = gens.into_iter().map(Into::into).collect();
        for (i, name) in gens.iter().enumerate() {
            validate_name(name)?;
            if gens[..i].contains(name) {
                return Err(Error::DuplicateGenerator(name.clone()));
            }
        }
        if let Some(max) = rels.max_letter() {
            if max.index() >= gens.len() {
                return Err(Error::GeneratorOutOfRange(max.index(), gens.len()));
            }
        }
        if let RelSet::Pullback { map, target } = &rels {
            if map.len() != gens.len() {
                return Err(Error::MapArity {
                    got: map.len(),
                    want: gens.len(),
                });
            }
            for g in map {
                if g.index() >= target.gens.len() {
                    return Err(Error::GeneratorOutOfRange(g.index(), target.gens.len()));
                }
            }
        }
        let rels = if reflexive {
            strip_diagonal(rels)
        } else {
            rels
        };
        Ok(Presentation {
            gens,
            rels,
            reflexive,
        })
    }

    /// Convenience constructor from names and `(lhs, rhs)` pairs of
    /// whitespace-separated words (`"1"` is the empty word).
    pub fn build(gens: &[&str], rels: &[(&str, &str)], reflexive: bool) -> Result<Self> {
        let names: Vec<String> = gens.iter().map(|s| s.to_string()).collect();
        let mut p = Presentation::new(names, RelSet::empty(), reflexive)?;
        let mut set = BTreeSet::new();
        for (l, r) in rels {
            set.insert(Relation::new(p.parse_word(l)?, p.parse_word(r)?));
        }
        p.rels = if reflexive {
            strip_diagonal(RelSet::Explicit(set))
        } else {
            RelSet::Explicit(set)
        };
        Ok(p)
    }

    pub fn empty() -> Self {
        Presentation {
            gens: Vec::new(),
            rels: RelSet::empty(),
            reflexive: true,
        }
    }

    pub fn gen_count(&self) -> usize {
        self.gens.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gens
    }

    pub fn gen_name(&self, g: GenId) -> &str {
        &self.gens[g.index()]
    }

    pub fn gen_id(&self, name: &str) -> Option<GenId> {
        self.gens
            .iter()
            .position(|n| n == name)
            .map(|i| GenId(i as u32))
    }

    pub fn rels(&self) -> &RelSet {
        &self.rels
    }

    pub fn is_reflexive(&self) -> bool {
        self.reflexive
    }

    pub fn gen_ids(&self) -> impl Iterator<Item = GenId> {
        (0..self.gens.len() as u32).map(GenId)
    }

    /// Membership in the effective relation set, reflexive flag included.
    pub fn has_relation(&self, rel: &Relation) -> bool {
        (self.reflexive && rel.is_diagonal()) || self.rels.contains(rel)
    }

    /// Effective members with sides of length at most `max_side`.
    pub fn enumerate_relations(&self, max_side: usize) -> BTreeSet<Relation> {
        let mut out = self.rels.enumerate(self.gens.len(), max_side);
        if self.reflexive {
            for w in words_up_to(self.gens.len(), max_side) {
                out.insert(Relation::new(w.clone(), w));
            }
        }
        out
    }

    /// A finite set of non-diagonal relations generating `~_P`.
    pub fn congruence_rules(&self) -> Vec<Relation> {
        self.rels.congruence_rules(self.gens.len())
    }

    /// The explicit relations, failing on intensional representations.
    /// Diagonal parts are folded away (they never affect the congruence).
    pub fn require_explicit(&self) -> Result<BTreeSet<Relation>> {
        self.rels
            .explicit_part()
            .ok_or(Error::UnsupportedRepresentation)
    }

    pub fn is_explicit(&self) -> bool {
        self.rels.explicit_part().is_some()
    }

    pub fn words_up_to(&self, max_len: usize) -> Vec<Word> {
        words_up_to(self.gens.len(), max_len)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text == "1" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for tok in text.split_whitespace() {
            let g = self
                .gen_id(tok)
                .ok_or_else(|| Error::UnknownLetter(tok.to_string()))?;
            letters.push(g);
        }
        Ok(Word(letters))
    }

    pub fn render_word(&self, w: &Word) -> String {
        if w.is_empty() {
            "1".to_string()
        } else {
            w.letters()
                .map(|g| self.gen_name(g).to_string())
                .collect::<Vec<_>>()
                .join(" ")
        }
    }

    pub fn word_in_alphabet(&self, w: &Word) -> bool {
        w.letters().all(|g| g.index() < self.gens.len())
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.letters().find(|g| g.index() >= self.gens.len()) {
            None => Ok(()),
            Some(g) => Err(Error::GeneratorOutOfRange(g.index(), self.gens.len())),
        }
    }

    /// A copy with one generator appended.
    pub fn with_added_gen(&self, name: &str) -> Result<Presentation> {
        if self.gens.iter().any(|n| n == name) {
            return Err(Error::NotFresh(name.to_string()));
        }
        validate_name(name)?;
        let mut gens = self.gens.clone();
        gens.push(name.to_string());
        Ok(Presentation {
            gens,
            rels: self.rels.clone(),
            reflexive: self.reflexive,
        })
    }

    /// A copy with one relation added to the explicit part. Diagonal pairs
    /// are dropped when the presentation is reflexive.
    pub fn with_added_relation(&self, rel: Relation) -> Result<Presentation> {
        self.check_word(&rel.lhs)?;
        self.check_word(&rel.rhs)?;
        if self.reflexive && rel.is_diagonal() {
            return Ok(self.clone());
        }
        let rels = match &self.rels {
            RelSet::Explicit(set) => {
                let mut set = set.clone();
                set.insert(rel);
                RelSet::Explicit(set)
            }
            other => RelSet::Union(vec![
                other.clone(),
                RelSet::Explicit([rel].into_iter().collect()),
            ]),
        };
        Ok(Presentation {
            gens: self.gens.clone(),
            rels,
            reflexive: self.reflexive,
        })
    }

    /// A copy with one explicit relation removed. Only meaningful for
    /// explicit representations; used when presenting removal events as
    /// reversed additions.
    pub fn with_removed_relation(&self, rel: &Relation) -> Result<Presentation> {
        let mut set = self.require_explicit()?;
        if !set.remove(rel) {
            return Err(Error::Precondition(
                "relation to remove is not present".into(),
            ));
        }
        Ok(Presentation {
            gens: self.gens.clone(),
            rels: RelSet::Explicit(set),
            reflexive: self.reflexive,
        })
    }

    /// A copy with the given relation set, alphabet unchanged.
    pub fn with_rels(&self, rels: RelSet) -> Result<Presentation> {
        Presentation::new(self.gens.clone(), rels, self.reflexive)
    }
}

/// Removes explicit diagonal members; used when the reflexive flag makes
/// them redundant.
fn strip_diagonal(rels: RelSet) -> RelSet {
    match rels {
        RelSet::Explicit(set) => {
            RelSet::Explicit(set.into_iter().filter(|r| !r.is_diagonal()).collect())
        }
        RelSet::Union(parts) => RelSet::Union(parts.into_iter().map(strip_diagonal).collect()),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_names() {
        assert!(Presentation::build(&["1"], &[], false).is_err());
        assert!(Presentation::build(&["a b"], &[], false).is_err());
        assert!(Presentation::build(&[""], &[], false).is_err());
        assert!(Presentation::build(&["a", "a"], &[], false).is_err());
        assert!(Presentation::build(&["(x)"], &[], false).is_err());
        assert!(Presentation::build(&["a'0", "b,c"], &[], false).is_ok());
    }

    #[test]
    fn reflexive_normalizes_diagonal_members() {
        let p = Presentation::build(&["a"], &[("a a", "a a"), ("a a", "1")], true).unwrap();
        let explicit = p.require_explicit().unwrap();
        assert_eq!(explicit.len(), 1);
        let diag = Relation::new(Word::from_ids([0, 0]), Word::from_ids([0, 0]));
        assert!(p.has_relation(&diag));
        assert!(!explicit.contains(&diag));
    }

    #[test]
    fn membership_agrees_with_enumeration() {
        let p = Presentation::build(&["a", "b"], &[("a b", "b a")], true).unwrap();
        let enumerated = p.enumerate_relations(2);
        for lhs in p.words_up_to(2) {
            for rhs in p.words_up_to(2) {
                let rel = Relation::new(lhs.clone(), rhs.clone());
                assert_eq!(p.has_relation(&rel), enumerated.contains(&rel));
            }
        }
    }

    #[test]
    fn pullback_membership_by_evaluation() {
        let target = Arc::new(Presentation::build(&["b"], &[("b b", "b")], true).unwrap());
        // Two generators both mapping to b.
        let pres = Presentation::new(
            vec!["x", "y"],
            RelSet::Pullback {
                map: vec![GenId(0), GenId(0)],
                target: target.clone(),
            },
            true,
        )
        .unwrap();
        // (x y, x) maps to (b b, b) which is a target relation.
        assert!(pres.has_relation(&Relation::new(
            Word::from_ids([0, 1]),
            Word::from_ids([0])
        )));
        // (x, y) maps to (b, b), diagonal in the reflexive target.
        assert!(pres.has_relation(&Relation::new(Word::from_ids([0]), Word::from_ids([1]))));
        // (x, x y) maps to (b, b b): not a target member.
        assert!(!pres.has_relation(&Relation::new(
            Word::from_ids([0]),
            Word::from_ids([0, 1])
        )));
        // Congruence rules: canonical preimage of (b b, b) plus the fiber
        // pair (x, y).
        let rules = pres.congruence_rules();
        assert!(rules.contains(&Relation::new(Word::from_ids([0, 0]), Word::from_ids([0]))));
        assert!(rules.contains(&Relation::new(Word::from_ids([0]), Word::from_ids([1]))));
    }

    #[test]
    fn pullback_enumeration_agrees_with_membership() {
        let target = Arc::new(
            Presentation::build(&["b", "c"], &[("b b", "c"), ("c", "b")], true).unwrap(),
        );
        let pres = Presentation::new(
            vec!["x", "y", "z"],
            RelSet::Pullback {
                map: vec![GenId(0), GenId(0), GenId(1)],
                target,
            },
            true,
        )
        .unwrap();
        let enumerated = pres.rels().enumerate(3, 2);
        for lhs in pres.words_up_to(2) {
            for rhs in pres.words_up_to(2) {
                let rel = Relation::new(lhs.clone(), rhs.clone());
                assert_eq!(
                    pres.rels().contains(&rel),
                    enumerated.contains(&rel),
                    "{:?}",
                    rel
                );
            }
        }
    }
}
