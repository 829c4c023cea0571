pub mod alexander;
pub mod algebra;
pub mod corpus;
pub mod diagram;
pub mod error;
pub mod finitetype;
pub mod invariants;
pub mod verify;
pub mod skein;
pub mod transforms;

pub use error::{Error, Result};
