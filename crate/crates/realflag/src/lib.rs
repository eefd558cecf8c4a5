//! File formats, the `f4` cache, parallel sampling and the command-line
//! front end for `realflag-core`.

pub mod cache;
pub mod cli;
pub mod commands;
pub mod error;
pub mod format;
pub mod parallel;
pub mod report;

pub use error::{AppError, AppResult};
