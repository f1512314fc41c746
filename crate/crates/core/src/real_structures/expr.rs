use std::fmt;

use crate::error::{Error, Result};
use crate::lie::FunctorPoint;
use crate::linalg::CMatrix;
use crate::scalar::GaussianRational;
use crate::supermatrix::SuperMatrix;

/// One step of an automorphism formula.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Primitive {
    /// Entrywise conjugation of the algebra.
    Conjugate,
    /// `X ↦ C X C⁻¹` for a constant block-diagonal invertible `C`.
    Ad {
        matrix: CMatrix,
        inverse: CMatrix,
        label: String,
    },
    /// `δ_λ`: `(A B; C D) ↦ (A λB; λ⁻¹C D)`.
    DeltaScale(GaussianRational),
    /// `X ↦ -st(X)`.
    NegSupertranspose,
    PiTranspose,
    Negate,
    /// Matrix inverse; only meaningful on group elements.
    GroupInverse,
}

impl Primitive {
    /// `Ad(c)`; panics if `c` is singular (all table matrices are invertible constants).
    pub fn ad(matrix: CMatrix, label: impl Into<String>) -> Self {
        Self::try_ad(matrix, label).expect("Ad matrix must be invertible")
    }

    pub fn try_ad(matrix: CMatrix, label: impl Into<String>) -> Result<Self> {
        let inverse = matrix.inverse().ok_or_else(|| Error::NotInvertible("Ad needs an invertible matrix".into()))?;
        Ok(Primitive::Ad { matrix, inverse, label: label.into() })
    }

    pub fn apply(&self, x: &SuperMatrix) -> Result<SuperMatrix> {
        Ok(match self {
            Primitive::Conjugate => x.conjugate(),
            Primitive::Ad { matrix, inverse, .. } => {
                if matrix.rows() != x.size() {
                    return Err(Error::ShapeMismatch(format!(
                        "Ad by a {}x{} matrix on shape {}",
                        matrix.rows(),
                        matrix.cols(),
                        x.shape()
                    )));
                }
                x.conjugate_by(matrix, inverse)
            }
            Primitive::DeltaScale(l) => x.delta_scale(l)?,
            Primitive::NegSupertranspose => x.supertranspose().neg(),
            Primitive::PiTranspose => x.pi_transpose()?,
            Primitive::Negate => x.neg(),
            Primitive::GroupInverse => x.invert()?,
        })
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitive::Conjugate => write!(f, "c"),
            Primitive::Ad { label, .. } => write!(f, "Ad({label})"),
            Primitive::DeltaScale(l) => write!(f, "δ_{l}"),
            Primitive::NegSupertranspose => write!(f, "-st"),
            Primitive::PiTranspose => write!(f, "Π"),
            Primitive::Negate => write!(f, "-"),
            Primitive::GroupInverse => write!(f, "inv"),
        }
    }
}

/// A composition of primitives, stored in printed order and applied right to left.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AutomorphismExpr {
    steps: Vec<Primitive>,
}

impl AutomorphismExpr {
    pub fn new(steps: Vec<Primitive>) -> Self {
        Self { steps }
    }

    pub fn steps(&self) -> &[Primitive] {
        &self.steps
    }

    /// `outer ∘ self`.
    pub fn then(&self, outer: &[Primitive]) -> Self {
        let mut steps = outer.to_vec();
        steps.extend(self.steps.iter().cloned());
        Self { steps }
    }

    /// Drops the outermost (leftmost) step.
    pub fn without_outermost(&self) -> Self {
        Self { steps: self.steps.iter().skip(1).cloned().collect() }
    }

    pub fn eval_matrix(&self, x: &SuperMatrix) -> Result<SuperMatrix> {
        let mut acc = x.clone();
        for step in self.steps.iter().rev() {
            acc = step.apply(&acc)?;
        }
        Ok(acc)
    }

    /// Applies the expression to an A-point; the image must satisfy the same constraint.
    pub fn eval(&self, x: &FunctorPoint) -> Result<FunctorPoint> {
        let y = self.eval_matrix(x.matrix())?;
        FunctorPoint::new(*x.kind(), y).map_err(|e| match e {
            Error::MembershipViolation(m) => Error::MembershipViolation(format!("{self}: {m}")),
            other => other,
        })
    }
}

impl fmt::Display for AutomorphismExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, s) in self.steps.iter().enumerate() {
            if k > 0 {
                write!(f, " ∘ ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}
