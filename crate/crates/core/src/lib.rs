pub mod analysis;
pub mod arith;
pub mod catalog;
pub mod cli;
pub mod error;
pub mod fpmod;
pub mod groebner;
pub mod homology;
pub mod ring;
pub mod trace;

pub use error::{Error, Result};
