//! The Tietze calculus: steps, traces, zig-zags, the pushout
//! correspondence, equivalence presentations, completeness cospans and
//! bounded equivalence search.

pub mod correspond;
pub mod cospan;
pub mod equiv_pres;
pub mod expand;
pub mod fixtures;
pub mod search;
pub mod step;
pub mod trace;

pub use correspond::{fresh_gen_name, j_pushout, j_to_step, step_as_j_pushout};
pub use cospan::{theorem1_cospan, Cospan, CospanOutcome, Dictionary};
pub use equiv_pres::{
    derivation_from_factorization, make_equivalence_presentation, EqStep, EquivalencePresentation,
};
pub use expand::{expand_trel, ExpandedTrace};
pub use search::search_equivalence;
pub use step::{apply_step, apply_steps, TietzeStep};
pub use trace::{SegmentDirection, TietzeTrace, TietzeZigzag};
