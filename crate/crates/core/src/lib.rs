#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod channel;
pub mod config;
pub mod engine;
pub mod error;
pub mod geometry;
pub mod irs;
pub mod kpi;
pub mod mobility;
pub mod presets;
pub mod serving;
pub mod sweep;
pub mod validation;

pub use error::{ConfigError, Error, Result};
