//! File formats, reports and commands behind the `bricks` tool.

pub mod brick_file;
pub mod commands;
mod lexer;
pub mod obj;
pub mod piece_file;
pub mod schedule_file;

pub use lexer::ParseError;
