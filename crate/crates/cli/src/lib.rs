//! Input loading and file formats behind the `eden` binary.

pub mod input;
pub mod output;
