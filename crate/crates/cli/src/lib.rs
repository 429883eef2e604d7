//! Library side of the `qwalk` command-line tool.

pub mod angle;
pub mod commands;
pub mod output;
pub mod settings;
pub mod verify;
