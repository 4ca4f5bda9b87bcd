//! The guide's chapters, included as doc-tested modules.
//!
//! mdbook renders `book/` for reading, but it cannot run the snippets
//! against this crate; including each chapter here makes `cargo test
//! --doc` compile and execute every code block, keeping the book honest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/presentations.md")]
pub mod presentations {}

#[doc = include_str!("../../../book/src/word-problem.md")]
pub mod word_problem {}

#[doc = include_str!("../../../book/src/completion.md")]
pub mod completion {}

#[doc = include_str!("../../../book/src/transformations.md")]
pub mod transformations {}

#[doc = include_str!("../../../book/src/colimits.md")]
pub mod colimits {}

#[doc = include_str!("../../../book/src/model-structure.md")]
pub mod model_structure {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
