pub mod areps;
pub mod azero;
pub mod bialg;
pub mod classifier;
pub mod crystal;
pub mod error;
pub mod gens;
pub mod json;
pub mod kernel;
pub mod qrep;
pub mod relations;

pub use error::{Error, Result};
pub use num_complex::Complex64;
