//! Exact computations for the quasi-hereditary algebras E_R = End_R(SUB(R)) of monomial
//! algebras R: standard and costandard modules, characteristic tilting modules, and a
//! constructive check of the Ringel duality R(E_R) = (E_{R^op})^op.

pub mod algebra;
pub mod cli;
pub mod dsl;
pub mod endo;
pub mod error;
pub mod generators;
pub mod ideals;
pub mod linalg;
pub mod modules;
pub mod qh;

pub use error::{Error, Result};
