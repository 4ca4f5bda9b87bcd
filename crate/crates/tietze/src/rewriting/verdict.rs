//! Three-valued answers for semidecidable questions.

use crate::core::monoid::MonoidTable;
use crate::core::word::Word;
use crate::rewriting::derivation::Derivation;

/// Budget for congruence searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchBudget {
    /// Maximum number of frontier expansions across both search directions.
    pub max_expansions: usize,
    /// Maximum length of intermediate words.
    pub max_word_len: usize,
    /// Largest monoid table tried by the refutation fallback; zero disables
    /// it.
    pub max_table_size: usize,
}

impl SearchBudget {
    pub fn new(max_expansions: usize, max_word_len: usize) -> Self {
        SearchBudget {
            max_expansions,
            max_word_len,
            max_table_size: 4,
        }
    }

    pub fn without_refutation(mut self) -> Self {
        self.max_table_size = 0;
        self
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::new(10_000, 12)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Exhausted {
    Expansions,
    WordLength,
    TableSize,
}

impl std::fmt::Display for Exhausted {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exhausted::Expansions => write!(f, "max-expansions"),
            Exhausted::WordLength => write!(f, "max-word-length"),
            Exhausted::TableSize => write!(f, "max-table-size"),
        }
    }
}

/// What an `Unknown` verdict exhausted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BudgetReport {
    pub expansions_used: usize,
    pub max_len_reached: usize,
    pub exhausted: Exhausted,
}

/// A finite-quotient refutation: a homomorphism into a finite monoid that
/// satisfies every relation of the presentation yet separates the witness
/// pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomCertificate {
    pub table: MonoidTable,
    /// Element assigned to each generator, indexed by generator id.
    pub assignment: Vec<usize>,
    pub left: Word,
    pub right: Word,
}

/// Outcome of a congruence query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    Proved(Derivation),
    Refuted(HomCertificate),
    Unknown(BudgetReport),
}

impl Verdict {
    pub fn is_proved(&self) -> bool {
        matches!(self, Verdict::Proved(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn proof(&self) -> Option<&Derivation> {
        match self {
            Verdict::Proved(d) => Some(d),
            _ => None,
        }
    }
}
