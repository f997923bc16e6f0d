//! Exact computations with IP and almost-complex-IP algebraic curvature
//! tensors on pseudo-Riemannian vector spaces.

pub mod curvature;
pub mod error;
pub mod exact;
pub mod factory;
pub mod io;
pub mod jordan;
pub mod space;

pub use error::{Error, Result};
