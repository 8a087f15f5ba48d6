//! JSON input and output for every structure, and the command table behind the `omni2` binary.

pub mod commands;
pub mod format;

pub use commands::{error_report, run, Report, RunOptions, Verdict, COMMANDS};
pub use format::{parse_document, serialize_document, to_json, Document, Structure, SubLie2};
