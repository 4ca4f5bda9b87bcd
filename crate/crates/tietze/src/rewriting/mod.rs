//! The congruence `~_P` as a search problem: certificates, budgeted
//! search, separation and completion.

pub mod derivation;
pub mod kb;
pub mod search;
pub mod separate;
pub mod validate;
pub mod verdict;

pub use derivation::{Derivation, DerivationStep, Direction};
pub use kb::{count_elements, knuth_bendix, normal_form, Completion, KbBudget, RewriteSystem};
pub use search::{equivalent, rewrite_neighbors, search_derivation};
pub use separate::{separate, separate_with};
pub use validate::{check_hom_certificate, replay_derivation};
pub use verdict::{BudgetReport, Exhausted, HomCertificate, SearchBudget, Verdict};
