pub mod cohomology;
pub mod error;
pub mod extended_dynkin;
mod hnf;
pub mod kac_labelings;
pub mod lattice;
pub mod rational;
pub mod root_system;
pub mod torus_oracle;

pub use error::{Error, ErrorKind, Result};
