//! Generalized Nahm flows on five matrices, the twistor geometry of the
//! total space of O(4) over CP^1, distinguished line bundles on it, and the
//! exact formal-neighborhood identities behind the pole boundary conditions.
//!
//! Two scalar backends run through the same interface: exact rationals
//! ([`algebra::Q`]) and complex doubles ([`algebra::C64`]).

pub mod algebra;
pub mod bundles;
pub mod cli;
pub mod error;
pub mod nahm;
pub mod neighborhoods;
pub mod rng;
pub mod twistor;

pub use error::{Error, Result};
