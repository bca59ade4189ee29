//! Quaternionic linear algebra and the invariant theory of simultaneously
//! triangularizable matrix pairs.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line front end and anything touching the OS live in the `quatlab` crate.

#![no_std]
// `use num_traits::Float` carries `allow(unused_imports)` throughout: whenever
// std is in the build graph (tests, or a std feature of a shared dependency)
// its inherent float methods shadow the trait.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod canon;
pub mod cmat;
pub mod error;
pub mod ideal;
pub mod linalg;
pub mod qmat;
pub mod quat;
pub mod scalar;
pub mod triangular;
pub mod words;

pub use cmat::CMatrix;
pub use error::{Error, Result};
pub use qmat::{EigenvalueList, QMatrix};
pub use quat::Quaternion;
pub use scalar::{BigInt, Field, Rational, Scalar};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
