//! Model-structure machinery: generating families, lifting, fibration
//! predicates, weak-equivalence certificates, factorizations, cellular
//! decompositions and truncated replacements.

pub mod cellular;
pub mod factorize;
pub mod fibrations;
pub mod generating;
pub mod lifting;
pub mod replacement;
pub mod squares;
pub mod weq;

pub use cellular::{cellular_decomposition, Cell, CellKind, CellularDecomposition};
pub use factorize::{factor_mono_tfib, ken_brown_cospan, Factorization, KenBrownCospan};
pub use fibrations::{
    is_cofibration, is_pseudo_fibrant, is_pseudo_fibration, is_pseudo_fibration_bounded,
    is_trivial_fibration, trivial_fibration_failure, Bounded, TfibFailure,
};
pub use generating::{generating_cofibrations, GenCofibration, JMorphism};
pub use lifting::solve_lifting;
pub use replacement::{pseudo_fibrant_replacement, Replacement};
pub use squares::{inj_factor, surj_factor, InjFactorization, SurjFactorization};
pub use weq::{
    certify_weak_equivalence, check_weq_certificate, check_weq_refutation, WeqCertificate,
    WeqRefutation, WeqVerdict,
};
