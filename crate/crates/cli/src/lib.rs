//! Text formats, builtin corpora, and the named verification suites behind
//! the `sct` command-line tool.

pub mod corpus;
pub mod formats;
pub mod report;
pub mod suites;
