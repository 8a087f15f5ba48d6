pub mod cli_io;
pub mod dirac_core;
pub mod error;
pub mod exact_linalg;
pub mod gl_two;
pub mod lie2_core;
pub mod omni_core;
pub mod report;
pub mod twist_string;
pub mod two_vector;
pub use error::{Error, Result};
