//! Exact Auslander-Reiten theory for the m-extended module categories of
//! Nakayama algebras with homogeneous relations.

pub mod algebra;
pub mod classify;
pub mod complex;
pub mod covering;
pub mod dimvec;
pub mod error;
pub mod homotopy;
pub mod knitting;
pub mod linalg;
pub mod literal;
pub mod rep;
pub mod resolve;
pub mod scalar;
pub mod translate;

pub use algebra::{AlgebraDesc, Interval, ModMorphism, ModuleObject, Shape};
pub use error::{Error, Result};
pub use scalar::Q;
