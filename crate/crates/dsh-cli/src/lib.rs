//! Command-line front end for the de Sitter kernel and tail-scan library.

pub mod commands;
pub mod config;
pub mod error;
pub mod mass;
pub mod output;
pub mod verify;
