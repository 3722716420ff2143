//! Exact coefficient arithmetic and polynomial algebra.

pub mod elim;
pub mod factor;
pub mod interval;
pub mod multipoly;
pub mod numeric;
pub mod scalar;
pub mod upoly;

pub use elim::{gcd, resultant, squarefree, squarefree_and_gcd, squarefree_decomposition};
pub use interval::CRect;
pub use multipoly::{Exps, MultiPoly, Var};
pub use scalar::{extend_near, extend_tower, root_of_unity, roots, zeta, Level, Scalar, Q};
