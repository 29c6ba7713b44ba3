pub mod bloch;
pub mod cli;
pub mod closure;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod phase;
pub mod repn;
pub mod symbolic;

pub use error::{Error, Result};
