//! Exact rational linear algebra: scalars, matrices, canonical subspaces and tensors.

pub mod matrix;
pub mod rational;
pub mod subspace;
pub mod tensor;

pub use matrix::RatMatrix;
pub use rational::*;
pub use subspace::Subspace;
pub use tensor::{multi_indices, Tensor};
