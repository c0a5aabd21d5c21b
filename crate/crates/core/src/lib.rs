pub mod cli;
pub mod error;
pub mod fetch;
pub mod kernels;
pub mod moments;
pub mod paircorr;
pub mod primes;
pub mod quad;
pub mod sum;
pub mod zerodata;

pub use error::{Error, Result};
