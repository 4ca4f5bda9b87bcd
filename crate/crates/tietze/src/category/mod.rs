//! Exact finite (co)limits of presentations and the word ↔ morphism
//! representation bijections.

pub mod colimits;
pub mod limits;
pub mod repr;
pub mod shapes;

pub use colimits::{coequalizer, copair, coproduct, pushout, Coequalizer, Coproduct, Pushout};
pub use limits::{equalizer, product, Equalizer, Product};
pub use repr::{morphism_as_pair, morphism_as_word, pair_as_morphism, word_as_morphism};
