pub mod cli;
pub mod counting;
pub mod cuspidal;
pub mod cyclo;
pub mod error;
pub mod ffield;
pub mod jacquet;
pub mod matq;
pub mod modelrep;

pub use error::{Error, Result};
