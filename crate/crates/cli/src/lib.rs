//! Front end for the `fuzzyrel` binary: input documents, the verbs, and
//! report formatting.

pub mod commands;
pub mod input;
pub mod output;

pub use output::canonical_json;
