//! Finite presentations of monoids and the calculus for navigating between
//! them.
//!
//! The crate is organized around six layers:
//!
//! - [`core`]: words, presentations (including finitely-described infinite
//!   relation sets), morphisms, canonical forms and finite monoid tables.
//! - [`rewriting`]: the congruence `~_P` as a search problem — derivation
//!   certificates, budgeted bidirectional search, Knuth–Bendix completion
//!   with transformation traces, and finite-quotient refutations.
//! - [`category`]: exact finite (co)limits of reflexive presentations and
//!   the word ↔ morphism representation bijections.
//! - [`model`]: generating cofibrations, lifting problems, (trivial and
//!   pseudo-) fibration predicates, weak-equivalence certificates,
//!   factorizations and cellular decompositions.
//! - [`calculus`]: Tietze steps, traces, zig-zags, the pushout
//!   correspondence with the pseudo-generating family, equivalence
//!   presentations, completeness cospans and bounded equivalence search.
//! - [`text`]: the line-oriented file formats shared with the CLI.
//!
//! Semidecidable questions never return bare booleans: they return a
//! [`rewriting::Verdict`] that is `Proved` with a replayable derivation,
//! `Refuted` with a validating homomorphism certificate, or `Unknown` with
//! the exhausted budget. Certificates are checked by validators that share
//! no code with the searchers.
//!
//! A guide with worked examples lives in `book/`; its chapters are compiled
//! as doc-tests through the [`book`] module.

pub mod book;
pub mod calculus;
pub mod category;
pub mod core;
pub mod error;
pub mod model;
pub mod rewriting;
pub mod text;
pub mod util;

pub use error::{Error, Result};
