//! Exact linear algebra for the Einstein universe `Ein^{p,q}` and the graded
//! Lie algebra `o(p+1,q+1)`.

pub mod cartan_holonomy;
pub mod centralizer_structure;
pub mod einstein_model;
pub mod error;
pub mod json;
pub mod lie_algebra;
pub mod linalg;
pub mod nilpotency;
pub mod quadratic_forms;
pub mod rational;
pub mod rng;

pub use error::{Error, Result};
pub use linalg::{QMatrix, Subspace};
pub use quadratic_forms::{Cover, ProjectivePoint, Signature, SplitForm, Vector};
pub use rational::Rational;
