//! Exact algebra behind the uniform-bundle certificates: rational polynomials,
//! cyclotomic fields, cohomology-ring models, the Chern-number gate for
//! morphisms to Grassmannians, and the branch-and-lift divisor search.
//!
//! The crate is `no_std` and only needs `alloc`.

#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod classify;
pub mod config;
pub mod cyclo;
pub mod cyclotomic;
pub mod error;
pub mod gate;
pub mod lift;
pub mod oracle;
pub mod poly;
pub mod rational;
pub mod resultant;
pub mod rings;
pub mod smooth;
pub mod splitter;
pub mod threshold;
pub mod upoly;

#[cfg(feature = "serde")]
mod ser;

pub use config::Config;
pub use cyclo::CycloElt;
pub use error::{Error, Result};
pub use poly::{Monomial, MultiPoly, Var};
pub use rational::Q;
pub use upoly::UPoly;
