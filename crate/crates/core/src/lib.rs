//! Isophote curves on timelike surfaces in Minkowski 3-space.
//!
//! The signature is `(-, +, +)`; component `x0` is the time axis. Surfaces and
//! curves are given as expression trees (see [`expr`]) and every derivative the
//! geometry needs is computed analytically, either symbolically or with
//! truncated Taylor series ([`jet`]).

pub mod cli;
pub mod curve;
pub mod error;
pub mod exec;
pub mod expr;
pub mod isophote;
pub mod jet;
pub mod lorentz;
pub mod surface;
pub mod tolerances;

pub use error::{Error, Result};
pub use exec::Exec;
pub use lorentz::{AngleKind, CausalClass, MVec3};
pub use tolerances::Tolerances;
