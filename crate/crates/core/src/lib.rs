//! Certificates of routing optimality for multi-unicast networks.

pub mod cli;
pub mod code;
pub mod error;
pub mod gf;
pub mod graph;
pub mod rate;
pub mod reduction;
pub mod witness;

pub use error::{Error, Result};
