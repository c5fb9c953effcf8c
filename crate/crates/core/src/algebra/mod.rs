//! Quivers, paths, presentations and finite-dimensional algebras.

mod build;
mod fda;
mod quiver;

pub use build::{
    build_monomial_algebra, build_presented_algebra, LinearPresentation, MonomialPresentation, DEFAULT_MAX_DEGREE,
};
pub use fda::{BasisElement, FiniteDimAlgebra, PathData, Provenance, SparseVec};
pub use quiver::{canonical_cmp, compose, Arrow, Path, Quiver};

pub use crate::modules::is_self_injective;
