//! Fitting and comparing the discretised lognormal and hooked power law
//! distributions on citation count data.

pub mod cli;
pub mod data_io;
pub mod diagnostics;
pub mod distributions;
pub mod error;
pub mod exec;
pub mod fitting;
pub mod numerics;
pub mod optim;
pub mod selection;
pub mod synthesis;

pub use error::{Error, Result};
