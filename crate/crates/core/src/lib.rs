//! Exact and floating-point verification engine for diagonal boundary
//! K-operators of the `U_q(gl(N))` reflection equation.

pub mod block;
pub mod error;
pub mod affine;
pub mod glrep;
pub mod onsager;
pub mod rational;
pub mod reflection;
pub mod report;
pub mod scalars;

pub use error::{AlgebraError, Result};
