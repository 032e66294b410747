pub mod chiral;
pub mod cohomology;
pub mod coxring;
pub mod divisors;
pub mod error;
pub mod fan;
pub mod io;
pub mod jacobian;
pub mod lattice;
pub mod linalg;
pub mod scalar;

pub use error::{Error, Result};
