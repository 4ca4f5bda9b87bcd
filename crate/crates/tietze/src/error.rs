use thiserror::Error;

/// Errors raised by construction and by operations with preconditions.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid generator name {0:?}: {1}")]
    BadGeneratorName(String, &'static str),
    #[error("duplicate generator name {0:?}")]
    DuplicateGenerator(String),
    #[error("letter {0:?} is not in the alphabet")]
    UnknownLetter(String),
    #[error("generator index {0} out of range (alphabet has {1} generators)")]
    GeneratorOutOfRange(usize, usize),
    #[error("morphism map has {got} entries but the source has {want} generators")]
    MapArity { got: usize, want: usize },
    #[error("morphism sources/targets do not compose")]
    ComposeMismatch,
    #[error("not a monoid table: {0}")]
    InvalidMonoid(String),
    #[error("operation requires explicit relations (plus at most the implicit diagonal)")]
    UnsupportedRepresentation,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("square does not commute")]
    NonCommutingSquare,
    #[error("invalid derivation at step {step}: {reason}")]
    BadDerivation { step: usize, reason: String },
    #[error("invalid certificate: {0}")]
    BadCertificate(String),
    #[error("invalid Tietze step: {0}")]
    BadStep(String),
    #[error("generator {0:?} is not fresh")]
    NotFresh(String),
    #[error("word length {got} does not match the expected length {want}")]
    LengthMismatch { got: usize, want: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
