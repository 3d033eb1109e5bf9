//! Exact algebra over F_p for Hecke algebras of type A, Steinberg idempotents,
//! Dyer-Lashof word counting, and the invariant-theoretic Steenrod module models
//! they act on.

pub mod chevalley;
pub mod contraction;
pub mod error;
pub mod exactlin;
pub mod groupring;
pub mod hecke;
pub mod invariants;
pub mod qwords;

pub use error::{Error, Result};
pub use exactlin::{
    p_local_check, BitMatrix, CoefficientRing, ExactRational, FpMatrix, FpScalar, GradedMatrixFamily,
    GradedSpace, HilbertSeries, PrimeField, Rationals, Subspace,
};
pub use chevalley::{GLElement, SubgroupDescriptor, SubgroupTag, WeylPermutation};
pub use contraction::{Backend, Certificate, TotalComplex};
pub use groupring::{FiniteGroup, GroupRingElement};
pub use hecke::{HeckeAlgebra, HeckeElement, HeckeModule, Representation};
pub use invariants::{InvariantModel, ModuleModel, Poly, PolySlice};
pub use qwords::{QOp, QWord, WordShape};
