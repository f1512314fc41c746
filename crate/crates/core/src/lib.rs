//! Exact computations with real structures on Lie superalgebras and supergroups,
//! viewed as functors on Grassmann-type superalgebras with a conjugation.

pub mod algebra;
pub mod error;
pub mod lie;
pub mod linalg;
pub mod morphism;
pub mod real_structures;
pub mod report;
pub mod sampling;
pub mod scalar;
pub mod supergroups;
pub mod supermatrix;

pub use algebra::{AlgebraSignature, Conjugation, Generator, Monomial, Parity, SuperNumber};
pub use error::{Error, ParseError, Result};
pub use lie::{AlgebraKind, BasisOfV, FunctorPoint, Kind, TensorElement};
pub use morphism::AlgebraMorphism;
pub use real_structures::{Family, RealStructureDescriptor};
pub use report::{Check, Status, VerificationReport};
pub use scalar::{GaussianRational, Rational};
pub use supergroups::{GroupElement, GroupKind, GroupRealStructureDescriptor, LiftForm};
pub use supermatrix::{Shape, SuperMatrix};
