pub mod bessel;
pub mod cli;
pub mod constellations;
pub mod dunkl;
pub mod ensembles;
pub mod error;
pub mod freeprob;
pub mod jack;
pub mod symcore;

pub use error::{Error, Result};
