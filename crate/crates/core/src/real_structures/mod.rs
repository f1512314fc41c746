//! Real structures on the matrix Lie superalgebras: an expression language for the
//! automorphism formulas, the descriptor tables for `sl` and `osp`, and the
//! verification, extraction, fixed-point and compactness machinery built on them.

mod expr;
mod phi;
pub(crate) mod verify;

pub use expr::{AutomorphismExpr, Primitive};
pub use phi::{
    average_decompose, compact_scan, compactness_report, extract_phi, fixed_point_basis, representability_check,
    AveragingDecomposition, CompactScan, CompactnessResult, FixedPointBasis, PhiOnV, Representability,
};
pub use verify::{verify_real_structure, VerifyOptions};

use std::fmt;

use crate::algebra::Conjugation;
use crate::error::{Error, ParseError, Result};
use crate::lie::{AlgebraKind, FunctorPoint, Kind};
use crate::linalg::CMatrix;
use crate::supermatrix::constants::{signature_matrix, symplectic_unit, symplectic_unit_of_size};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    Sigma1,
    Sigma2,
    Sigma3,
    Sigma4,
    Omega1,
    Omega2,
    Omega3,
    Xi1,
    Xi2,
    Psi1,
    Psi2,
}

impl Family {
    pub const ALL: [Family; 11] = [
        Family::Sigma1,
        Family::Sigma2,
        Family::Sigma3,
        Family::Sigma4,
        Family::Omega1,
        Family::Omega2,
        Family::Omega3,
        Family::Xi1,
        Family::Xi2,
        Family::Psi1,
        Family::Psi2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Sigma1 => "sigma1",
            Family::Sigma2 => "sigma2",
            Family::Sigma3 => "sigma3",
            Family::Sigma4 => "sigma4",
            Family::Omega1 => "omega1",
            Family::Omega2 => "omega2",
            Family::Omega3 => "omega3",
            Family::Xi1 => "xi1",
            Family::Xi2 => "xi2",
            Family::Psi1 => "psi1",
            Family::Psi2 => "psi2",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|f| f.name() == s)
    }

    /// Standard for σ and ξ, graded for ω and ψ.
    pub fn conjugation(self) -> Conjugation {
        match self {
            Family::Omega1 | Family::Omega2 | Family::Omega3 | Family::Psi1 | Family::Psi2 => Conjugation::Graded,
            _ => Conjugation::Standard,
        }
    }

    /// The algebra family the formula is written for.
    pub fn algebra(self) -> Kind {
        match self {
            Family::Xi1 | Family::Xi2 | Family::Psi1 | Family::Psi2 => Kind::Osp,
            _ => Kind::Sl,
        }
    }

    /// Number of integer parameters (`p`, or `p` and `q`).
    pub fn param_count(self) -> usize {
        match self {
            Family::Sigma1 | Family::Omega2 | Family::Psi1 => 2,
            Family::Xi1 | Family::Xi2 => 1,
            _ => 0,
        }
    }

    /// Inclusive upper bounds of the parameters for `kind`.
    fn param_bounds(self, kind: &AlgebraKind) -> [usize; 2] {
        let (m, n) = (kind.shape().m(), kind.shape().n());
        let n0 = n / 2;
        match self {
            Family::Sigma1 | Family::Omega2 => [m, n],
            Family::Xi1 => [m, 0],
            Family::Xi2 => [n0, 0],
            Family::Psi1 => [m, n0],
            _ => [0, 0],
        }
    }

    /// The printed side conditions on the shape.
    fn shape_condition(self, kind: &AlgebraKind) -> Option<&'static str> {
        let (m, n) = (kind.shape().m(), kind.shape().n());
        let ok = match self {
            Family::Sigma2 => m % 2 == 0 && n % 2 == 0,
            Family::Sigma3 | Family::Omega3 => m == n,
            Family::Sigma4 => m == n && n % 2 == 0,
            Family::Omega1 => n % 2 == 0,
            Family::Xi2 | Family::Psi2 => m % 2 == 0,
            _ => true,
        };
        (!ok).then_some(match self {
            Family::Sigma2 => "m and n even",
            Family::Sigma3 | Family::Omega3 => "m = n",
            Family::Sigma4 => "m = n, even",
            Family::Omega1 => "n even",
            _ => "m even",
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which form of ξ₂ to evaluate.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Xi2Form {
    /// `Ad(diag(J_m, diag(I_n^p, I_n^p)·J_n)) ∘ c`: the odd block squares to −1, making the
    /// map a standard involution.
    #[default]
    Quaternionic,
    /// `Ad(diag(J_m, I_n^p, I_n^p)) ∘ c`: antilinear, but squares to δ₋₁.
    Conjugated,
    /// `Ad(diag(J_m, I_n^p, I_n^p))` with no conjugation: ℂ-linear.
    Printed,
}

impl Xi2Form {
    pub fn name(self) -> &'static str {
        match self {
            Xi2Form::Quaternionic => "quaternionic",
            Xi2Form::Conjugated => "conjugated",
            Xi2Form::Printed => "printed",
        }
    }
}

pub const NOTE_SIGMA1: &str =
    "sigma1 inner matrix implemented as diag(I_m^p, I_n^q); the printed second block I_m^q has the wrong size";
pub const NOTE_PSI1: &str =
    "psi1 interpreted as Ad(diag(I_m^p, diag(I_n^q, I_n^q)·J_n)) ∘ c; the printed d(·,·) and inner composition are undefined";
pub const NOTE_XI2_DEFAULT: &str = "xi2 checked in quaternionic form Ad(diag(J_m, diag(I_n^p, I_n^p)·J_n)) ∘ c; \
     the printed form lacks c and appending c alone yields a graded (not standard) involution";
pub const NOTE_XI2_PRINTED: &str = "xi2 checked as printed, Ad(diag(J_m, I_n^p, I_n^p)) without c; it is ℂ-linear, \
     so antilinearity cannot hold";
pub const NOTE_XI2_CONJUGATED: &str = "xi2 checked as Ad(diag(J_m, I_n^p, I_n^p)) ∘ c; it squares to δ₋₁, \
     so involutivity fails on odd directions";
pub const NOTE_SL_CENTER: &str =
    "sl(n|n) contains the central identity; results are for sl(n|n) as printed, not psl(n|n)";

/// One entry of the automorphism tables, bound to an algebra and parameters.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RealStructureDescriptor {
    family: Family,
    kind: AlgebraKind,
    p: Option<usize>,
    q: Option<usize>,
    xi2_form: Xi2Form,
}

fn inapplicable(msg: String) -> Error {
    Error::InapplicableDescriptor(msg)
}

impl RealStructureDescriptor {
    /// Validates the family against the algebra, the side conditions and the parameter ranges.
    pub fn new(family: Family, kind: AlgebraKind, p: Option<usize>, q: Option<usize>) -> Result<Self> {
        if family.algebra() != kind.kind() {
            return Err(inapplicable(format!("{family} is defined on {} algebras, not {kind}", family.algebra())));
        }
        if let Some(cond) = family.shape_condition(&kind) {
            return Err(inapplicable(format!("{family} requires {cond}, got {kind}")));
        }
        let given = [p, q];
        let bounds = family.param_bounds(&kind);
        for (k, label) in ["p", "q"].into_iter().enumerate() {
            match (k < family.param_count(), given[k]) {
                (true, None) => return Err(inapplicable(format!("{family} needs parameter {label}"))),
                (false, Some(_)) => return Err(inapplicable(format!("{family} takes no parameter {label}"))),
                (true, Some(v)) if v > bounds[k] => {
                    return Err(inapplicable(format!("{family}: {label} = {v} outside 0..={}", bounds[k])))
                }
                _ => {}
            }
        }
        Ok(Self { family, kind, p, q, xi2_form: Xi2Form::default() })
    }

    /// Selects a ξ₂ form; other families only accept the default.
    pub fn with_xi2_form(mut self, form: Xi2Form) -> Result<Self> {
        if self.family != Family::Xi2 && form != Xi2Form::default() {
            return Err(inapplicable(format!("{} has no alternative forms", self.family)));
        }
        self.xi2_form = form;
        Ok(self)
    }

    /// Every applicable descriptor for `kind` over all parameter values, in table order.
    pub fn enumerate(kind: &AlgebraKind) -> Vec<Self> {
        let mut out = Vec::new();
        for family in Family::ALL {
            let [pb, qb] = family.param_bounds(kind);
            let ps: Vec<Option<usize>> =
                if family.param_count() >= 1 { (0..=pb).map(Some).collect() } else { vec![None] };
            let qs: Vec<Option<usize>> =
                if family.param_count() >= 2 { (0..=qb).map(Some).collect() } else { vec![None] };
            for p in &ps {
                for q in &qs {
                    if let Ok(d) = Self::new(family, *kind, *p, *q) {
                        out.push(d);
                    }
                }
            }
        }
        out
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn p(&self) -> Option<usize> {
        self.p
    }

    pub fn q(&self) -> Option<usize> {
        self.q
    }

    pub fn xi2_form(&self) -> Xi2Form {
        self.xi2_form
    }

    pub fn conjugation(&self) -> Conjugation {
        self.family.conjugation()
    }

    pub fn is_graded(&self) -> bool {
        self.conjugation() == Conjugation::Graded
    }

    /// Whether failures of this descriptor are attributed to a suspected misprint.
    pub fn failures_are_flagged(&self) -> bool {
        self.xi2_form != Xi2Form::Quaternionic
    }

    /// `omega2(2,2)`, `xi2(1)[printed]`, `sigma3`.
    pub fn name(&self) -> String {
        let mut s = self.family.name().to_string();
        match (self.p, self.q) {
            (Some(p), Some(q)) => s.push_str(&format!("({p},{q})")),
            (Some(p), None) => s.push_str(&format!("({p})")),
            _ => {}
        }
        if self.xi2_form != Xi2Form::Quaternionic {
            s.push_str(&format!("[{}]", self.xi2_form.name()));
        }
        s
    }

    /// `sl(2|2):omega2(2,2)`.
    pub fn full_name(&self) -> String {
        format!("{}:{}", self.kind, self.name())
    }

    /// Parses `kind:family(p,q)` with an optional `[form]` suffix for ξ₂.
    pub fn parse(s: &str) -> Result<Self> {
        let (kind, rest) =
            s.split_once(':').ok_or_else(|| ParseError::new(format!("expected `kind:name`, got `{s}`")))?;
        let kind = AlgebraKind::parse(kind)?;
        let (rest, form) = match rest.split_once('[') {
            Some((r, f)) => {
                let f = f.strip_suffix(']').ok_or_else(|| ParseError::new(format!("bad form suffix in `{s}`")))?;
                let form = [Xi2Form::Quaternionic, Xi2Form::Conjugated, Xi2Form::Printed]
                    .into_iter()
                    .find(|x| x.name() == f)
                    .ok_or_else(|| ParseError::new(format!("unknown form `{f}`")))?;
                (r, form)
            }
            None => (rest, Xi2Form::Quaternionic),
        };
        let (name, params) = parse_call(rest)?;
        let family = Family::from_name(name).ok_or_else(|| ParseError::new(format!("unknown descriptor `{name}`")))?;
        Self::new(family, kind, params.first().copied(), params.get(1).copied())?.with_xi2_form(form)
    }

    /// Reader-facing notes on interpretation choices behind this descriptor.
    pub fn notes(&self) -> Vec<&'static str> {
        let mut notes = Vec::new();
        match self.family {
            Family::Sigma1 => notes.push(NOTE_SIGMA1),
            Family::Psi1 => notes.push(NOTE_PSI1),
            Family::Xi2 => notes.push(match self.xi2_form {
                Xi2Form::Quaternionic => NOTE_XI2_DEFAULT,
                Xi2Form::Conjugated => NOTE_XI2_CONJUGATED,
                Xi2Form::Printed => NOTE_XI2_PRINTED,
            }),
            _ => {}
        }
        let shape = self.kind.shape();
        if self.kind.kind() == Kind::Sl && shape.m() == shape.n() {
            notes.push(NOTE_SL_CENTER);
        }
        notes
    }

    /// The automorphism as a composition of primitives, in printed order.
    pub fn expr(&self) -> AutomorphismExpr {
        use Primitive::*;
        let shape = self.kind.shape();
        let (m, n) = (shape.m(), shape.n());
        let n0 = n / 2;
        let sig = |size: usize, l: usize| signature_matrix(size, l).expect("parameters validated");
        let jsize = |size: usize| symplectic_unit_of_size(size).expect("side conditions validated");
        let diag = |a: CMatrix, d: CMatrix| CMatrix::block_diag(&[&a, &d]);
        let (p, q) = (self.p.unwrap_or(0), self.q.unwrap_or(0));
        // diag(I_n^l, I_n^l)·J_n on the odd block of osp(m|2n)
        let quaternionic = |l: usize| diag(sig(n0, l), sig(n0, l)).mul(&symplectic_unit(n0));
        let steps = match self.family {
            Family::Sigma1 => vec![
                NegSupertranspose,
                Primitive::ad(diag(sig(m, p), sig(n, q)), format!("diag(I_{m}^{p}, I_{n}^{q})")),
                Conjugate,
                DeltaScale(crate::scalar::GaussianRational::i()),
            ],
            Family::Sigma2 => vec![Primitive::ad(diag(jsize(m), jsize(n)), format!("diag(J_{m}, J_{n})")), Conjugate],
            Family::Sigma3 => vec![PiTranspose, Conjugate],
            Family::Sigma4 => vec![NegSupertranspose, PiTranspose, Conjugate],
            Family::Omega1 => {
                vec![Conjugate, Primitive::ad(diag(CMatrix::identity(m), jsize(n)), format!("diag(1_{m}, J_{n})"))]
            }
            Family::Omega2 => vec![
                NegSupertranspose,
                Conjugate,
                Primitive::ad(diag(sig(m, p), sig(n, q)), format!("diag(I_{m}^{p}, I_{n}^{q})")),
            ],
            Family::Omega3 => vec![Conjugate, PiTranspose, DeltaScale(crate::scalar::GaussianRational::i())],
            Family::Xi1 => {
                vec![Primitive::ad(diag(sig(m, p), CMatrix::identity(n)), format!("diag(I_{m}^{p}, 1_{n})")), Conjugate]
            }
            Family::Xi2 => match self.xi2_form {
                Xi2Form::Quaternionic => vec![
                    Primitive::ad(
                        diag(jsize(m), quaternionic(p)),
                        format!("diag(J_{m}, diag(I_{n0}^{p}, I_{n0}^{p})·J_{n})"),
                    ),
                    Conjugate,
                ],
                Xi2Form::Conjugated => vec![
                    Primitive::ad(
                        diag(jsize(m), diag(sig(n0, p), sig(n0, p))),
                        format!("diag(J_{m}, I_{n0}^{p}, I_{n0}^{p})"),
                    ),
                    Conjugate,
                ],
                Xi2Form::Printed => vec![Primitive::ad(
                    diag(jsize(m), diag(sig(n0, p), sig(n0, p))),
                    format!("diag(J_{m}, I_{n0}^{p}, I_{n0}^{p})"),
                )],
            },
            Family::Psi1 => vec![
                Conjugate,
                Primitive::ad(
                    diag(sig(m, p), quaternionic(q)),
                    format!("diag(I_{m}^{p}, diag(I_{n0}^{q}, I_{n0}^{q})·J_{n})"),
                ),
            ],
            Family::Psi2 => {
                vec![Conjugate, Primitive::ad(diag(jsize(m), CMatrix::identity(n)), format!("diag(J_{m}, 1_{n})"))]
            }
        };
        AutomorphismExpr::new(steps)
    }

    /// `Φ_A(X)`; the point's algebra must carry this descriptor's conjugation kind.
    pub fn eval(&self, x: &FunctorPoint) -> Result<FunctorPoint> {
        self.check_point(x)?;
        self.expr().eval(x)
    }

    pub(crate) fn check_point(&self, x: &FunctorPoint) -> Result<()> {
        if x.kind() != &self.kind {
            return Err(inapplicable(format!("{} evaluated on a point of {}", self.full_name(), x.kind())));
        }
        if x.signature().conjugation() != self.conjugation() {
            return Err(inapplicable(format!(
                "{} needs {} conjugation, the algebra has {}",
                self.full_name(),
                self.conjugation(),
                x.signature().conjugation()
            )));
        }
        Ok(())
    }
}

impl fmt::Display for RealStructureDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.full_name())
    }
}

/// Splits `name(1,2)` into `("name", [1, 2])`.
pub(crate) fn parse_call(s: &str) -> Result<(&str, Vec<usize>)> {
    let s = s.trim();
    let Some(open) = s.find('(') else {
        return Ok((s, Vec::new()));
    };
    let inner = s[open + 1..].strip_suffix(')').ok_or_else(|| ParseError::new(format!("unbalanced `{s}`")))?;
    let params = inner
        .split(',')
        .map(|t| t.trim().parse::<usize>().map_err(|_| ParseError::new(format!("bad parameter `{t}`"))))
        .collect::<Result<Vec<_>, _>>()?;
    Ok((&s[..open], params))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn applicability() {
        let sl21 = AlgebraKind::sl(2, 1).unwrap();
        assert!(matches!(
            RealStructureDescriptor::new(Family::Sigma3, sl21, None, None),
            Err(Error::InapplicableDescriptor(_))
        ));
        assert!(RealStructureDescriptor::new(Family::Sigma1, sl21, Some(1), Some(1)).is_ok());
        assert!(RealStructureDescriptor::new(Family::Sigma1, sl21, Some(3), Some(1)).is_err());
        assert!(RealStructureDescriptor::new(Family::Sigma1, sl21, Some(1), None).is_err());
        assert!(RealStructureDescriptor::new(Family::Xi1, sl21, Some(1), None).is_err());
        let osp12 = AlgebraKind::osp(1, 1).unwrap();
        assert!(RealStructureDescriptor::new(Family::Psi2, osp12, None, None).is_err());
        assert!(RealStructureDescriptor::new(Family::Psi1, osp12, Some(1), Some(1)).is_ok());
    }

    #[test]
    fn names_round_trip() {
        for s in ["sl(2|2):omega2(2,2)", "sl(1|1):sigma3", "osp(2|2):xi2(1)[printed]", "osp(2|2):psi1(0,1)"] {
            assert_eq!(RealStructureDescriptor::parse(s).unwrap().full_name(), s);
        }
        assert!(RealStructureDescriptor::parse("sl(2|1):sigma9").is_err());
    }

    #[test]
    fn enumeration_counts() {
        // sl(2|1): sigma1 3·2, omega2 3·2
        let ds = RealStructureDescriptor::enumerate(&AlgebraKind::sl(2, 1).unwrap());
        assert_eq!(ds.len(), 12);
        let ds = RealStructureDescriptor::enumerate(&AlgebraKind::sl(2, 2).unwrap());
        // sigma1 9, sigma2, sigma3, sigma4, omega1, omega2 9, omega3
        assert_eq!(ds.len(), 23);
    }
}
