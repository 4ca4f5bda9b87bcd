//! Words, presentations, morphisms and canonical forms.

pub mod canon;
pub mod monoid;
pub mod morphism;
pub mod presentation;
pub mod word;

pub use canon::{canonical_form, canonically_equal};
pub use monoid::{builtin_monoids, std_presentation_truncated, transformation_monoid_t2, MonoidTable};
pub use morphism::{word_preimages, Morphism, Violation};
pub use presentation::{Presentation, RelSet, Relation};
pub use word::{words_up_to, GenId, Word};
