//! Exact scalars and dense linear algebra over prime fields.

pub mod bitmatrix;
pub mod field;
pub mod graded;
pub mod matrix;
pub mod rational;
pub mod subspace;

pub use bitmatrix::BitMatrix;
pub use field::{is_prime, CoefficientRing, FpScalar, PrimeField};
pub use graded::{GradedMatrixFamily, GradedSpace, HilbertSeries};
pub use matrix::{invert, rank_and_kernel, Backend, FpMatrix, Rref};
pub use rational::{p_local_check, ExactRational, Rationals};
pub use subspace::Subspace;
