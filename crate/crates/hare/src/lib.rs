//! File formats, instance generators, JSON documents and the command line
//! around the `hare-core` reduction engine.

pub mod cli;
mod error;
pub mod formats;
pub mod generate;
pub mod json;
pub mod verify;

pub use error::{HareError, ParseError};
