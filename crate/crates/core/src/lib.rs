#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::excessive_precision)]

pub mod antenna;
pub mod channel;
pub mod cli;
pub mod error;
pub mod montecarlo;
pub mod optimize;
pub mod specfun;

pub use error::{Error, Result};
