pub mod cauchon;
pub mod diagrams;
pub mod error;
pub mod posets;
pub mod qcoeff;
pub mod qmatrix;
pub mod qminor;

pub use error::{Error, Result};
