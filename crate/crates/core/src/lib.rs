//! Diagonal solutions `T` of `(P T)^3 = I` for self-dual P-polynomial
//! association schemes.

pub mod error;
pub mod families;
mod json;
pub mod model;
pub mod oracle;
pub mod solver;
pub mod symbolic;
pub mod verify;

pub use error::{Error, Result};
pub use model::{validate_array, ExactArray, Family, IntersectionArray, SchemeInstance, SolverConfig};
