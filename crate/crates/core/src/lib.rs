pub mod algebra;
pub mod center;
pub mod cli;
pub mod error;
pub mod linalg;
pub mod partitions;
pub mod perm;
pub mod quotients;
pub mod verify;

pub use error::{Error, Result};
