pub mod atom;
pub mod dynamics;
pub mod error;
pub mod optimize;
pub mod polarizability;
pub mod scatter;
pub mod wigner;

pub use error::{Error, Result};
