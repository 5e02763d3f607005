//! File formats, commands and the theorem-check suite behind the `qframe`
//! binary.

pub mod app;
pub mod check;
pub mod commands;
pub mod formats;
pub mod report;
