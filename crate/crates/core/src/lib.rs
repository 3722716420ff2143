//! Exact carrousel decomposition of the vanishing zone of the Milnor fiber
//! boundary of a non-isolated surface singularity `f(x, y, z) = 0`.
//!
//! The pipeline runs
//! [`geometry`] → [`puiseux`] → [`carrousel`] → [`assembly`], and
//! [`pipeline`] wires it together with parsing, reports and a numeric probe.

pub mod algebra;
pub mod assembly;
pub mod carrousel;
pub mod error;
pub mod geometry;
pub mod pipeline;
pub mod puiseux;

pub use algebra::{MultiPoly, Scalar, Var, Q};
pub use error::{Error, Result};
