//! Exact computation of semi-invariant rings, GIT chambers and Cox rings of
//! GIT quotients of affine varieties.

pub mod error;
pub mod exact_algebra;
pub mod grading_lattice;
pub mod hilb_cox;
pub mod reductive_semiinv;
pub mod saturation;
pub mod torus_git;

pub use error::{Error, Result};
