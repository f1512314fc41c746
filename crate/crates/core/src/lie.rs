//! A-points of `gl(m|n)`, `sl(m|n)` and `osp(m|2n)`, the representing supervector
//! space `V`, and the even-rules correspondence between tensors and matrices.
//!
//! An A-point is an even supermatrix `X` over `A` satisfying the linear constraint
//! of its kind. It decomposes as `X = Σ ι(aᵢ ⊗ vᵢ)` where
//!
//! ```text
//! ι(a ⊗ v) = a · v           for even a
//! ι(a ⊗ v) = a · tw(v)       for odd a,  tw(B, C) = (B, -C)
//! ```
//!
//! With this identification the bracket `(-1)^{|b||v|} ab ⊗ [v, w]` on tensors
//! is exactly the matrix commutator on A-points.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSignature, Monomial, SuperNumber};
use crate::error::{Error, ParseError, Result};
use crate::linalg::{CMatrix, QMatrix};
use crate::morphism::AlgebraMorphism;
use crate::sampling::{self, SampleRng};
use crate::scalar::{GaussianRational, Rational};
use crate::supermatrix::{constants, supertranspose_constant, twist_constant, Shape, SuperMatrix};

/// Largest `m + n` handled (desk scale).
pub const MAX_SIZE: usize = 6;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Gl,
    Sl,
    Osp,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Kind::Gl => "gl",
            Kind::Sl => "sl",
            Kind::Osp => "osp",
        })
    }
}

/// A matrix Lie superalgebra together with its shape. For `osp` the shape is `(m | 2n₀)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgebraKind {
    kind: Kind,
    shape: Shape,
}

impl AlgebraKind {
    pub fn new(kind: Kind, shape: Shape) -> Result<Self> {
        if shape.size() > MAX_SIZE {
            return Err(Error::CapExceeded(format!("{kind}({shape}) exceeds m + n ≤ {MAX_SIZE}")));
        }
        if kind == Kind::Osp && !shape.n().is_multiple_of(2) {
            return Err(Error::ShapeMismatch(format!("osp needs an even odd block, got {shape}")));
        }
        Ok(Self { kind, shape })
    }

    pub fn gl(m: usize, n: usize) -> Result<Self> {
        Self::new(Kind::Gl, Shape::new(m, n)?)
    }

    pub fn sl(m: usize, n: usize) -> Result<Self> {
        Self::new(Kind::Sl, Shape::new(m, n)?)
    }

    /// `osp(m | 2·n0)`.
    pub fn osp(m: usize, n0: usize) -> Result<Self> {
        Self::new(Kind::Osp, Shape::new(m, 2 * n0)?)
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    /// `n₀` for `osp(m|2n₀)`.
    pub fn osp_half(&self) -> Option<usize> {
        (self.kind == Kind::Osp).then_some(self.shape.n() / 2)
    }

    /// `(dim V₀, dim V₁)` from the closed formulas.
    pub fn dimension(&self) -> (usize, usize) {
        let (m, n) = (self.shape.m(), self.shape.n());
        match self.kind {
            Kind::Gl => (m * m + n * n, 2 * m * n),
            Kind::Sl => (m * m + n * n - 1, 2 * m * n),
            Kind::Osp => {
                let n0 = n / 2;
                (m * m.saturating_sub(1) / 2 + n0 * (2 * n0 + 1), 2 * m * n0)
            }
        }
    }

    /// The form `J_{m,n₀}` preserved by `osp`.
    pub fn osp_form(&self) -> Option<CMatrix> {
        self.osp_half().map(|n0| constants::orthosymplectic_form(self.shape.m(), n0))
    }

    /// Evaluates the defining linear constraint on a constant matrix (zero iff satisfied).
    fn constraint_constant(&self, x: &CMatrix) -> Vec<GaussianRational> {
        match self.kind {
            Kind::Gl => Vec::new(),
            Kind::Sl => {
                let mut s = GaussianRational::zero();
                for i in 0..self.shape.size() {
                    if self.shape.is_odd_index(i) {
                        s -= &x[(i, i)];
                    } else {
                        s += &x[(i, i)];
                    }
                }
                vec![s]
            }
            Kind::Osp => {
                let j = self.osp_form().expect("osp kind");
                supertranspose_constant(self.shape, x).mul(&j).add(&j.mul(x)).entries().to_vec()
            }
        }
    }

    /// Parses `gl(m|n)`, `sl(m|n)` or `osp(m|n)` (with `n` even).
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| ParseError::new(format!("bad algebra `{s}`")))?;
        let kind = match &s[..open] {
            "gl" => Kind::Gl,
            "sl" => Kind::Sl,
            "osp" => Kind::Osp,
            other => return Err(ParseError::new(format!("unknown algebra `{other}`")).into()),
        };
        let inner = s[open + 1..].strip_suffix(')').ok_or_else(|| ParseError::new(format!("bad algebra `{s}`")))?;
        let (m, n) = inner.split_once('|').ok_or_else(|| ParseError::new(format!("bad algebra `{s}`")))?;
        let dim = |d: &str| d.trim().parse::<usize>().map_err(|_| ParseError::new(format!("bad dimension `{d}`")));
        Self::new(kind, Shape::new(dim(m)?, dim(n)?)?)
    }
}

impl fmt::Display for AlgebraKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.kind, self.shape)
    }
}

/// Whether an even supermatrix satisfies the constraint of `kind`.
pub fn membership(kind: &AlgebraKind, x: &SuperMatrix) -> Result<bool> {
    if x.shape() != kind.shape() {
        return Err(Error::ShapeMismatch(format!("{} matrix for {kind}", x.shape())));
    }
    if !x.is_even() {
        return Err(Error::NotEven(format!("membership test for {kind}")));
    }
    Ok(match kind.kind {
        Kind::Gl => true,
        Kind::Sl => x.supertrace().is_zero(),
        Kind::Osp => {
            let j = SuperMatrix::constant(kind.shape, *x.signature(), &kind.osp_form().expect("osp kind"))?;
            (&(&x.supertranspose() * &j) + &(&j * x)).is_zero()
        }
    })
}

/// An element of `(A ⊗ V)₀` in matrix form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FunctorPoint {
    kind: AlgebraKind,
    matrix: SuperMatrix,
}

impl FunctorPoint {
    pub fn new(kind: AlgebraKind, matrix: SuperMatrix) -> Result<Self> {
        if !membership(&kind, &matrix)? {
            return Err(Error::MembershipViolation(format!("{matrix} is not in {kind}")));
        }
        Ok(Self { kind, matrix })
    }

    pub fn zero(kind: AlgebraKind, sig: AlgebraSignature) -> Self {
        Self { kind, matrix: SuperMatrix::zero(kind.shape, sig) }
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn matrix(&self) -> &SuperMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> SuperMatrix {
        self.matrix
    }

    pub fn signature(&self) -> &AlgebraSignature {
        self.matrix.signature()
    }

    /// `XY - YX`, re-checked against the constraint.
    pub fn bracket(&self, other: &Self) -> Result<Self> {
        if self.kind != other.kind {
            return Err(Error::ShapeMismatch(format!("bracket of {} with {}", self.kind, other.kind)));
        }
        Self::new(self.kind, self.matrix.commutator(&other.matrix)?)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.kind != other.kind {
            return Err(Error::ShapeMismatch(format!("sum of {} and {}", self.kind, other.kind)));
        }
        Ok(Self { kind: self.kind, matrix: self.matrix.try_add(&other.matrix)? })
    }

    /// Entrywise image under a superalgebra morphism.
    pub fn map(&self, f: &AlgebraMorphism) -> Result<Self> {
        Self::new(self.kind, self.matrix.map_entries(f)?)
    }
}

impl fmt::Debug for FunctorPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.kind, self.matrix)
    }
}

type Sparse = Vec<(usize, GaussianRational)>;

/// An ordered basis of `V` (even vectors first, then odd), with structure constants.
pub struct BasisOfV {
    kind: AlgebraKind,
    vectors: Vec<CMatrix>,
    n_even: usize,
    /// Flattened position at which the constraint-solution form of vector `i` has a 1
    /// and every other basis vector of the same parity a 0.
    free: Vec<usize>,
    /// Nonzero entries of `ι(a ⊗ vᵢ)/a` for `a` of the parity of `vᵢ`.
    iota: Vec<Sparse>,
    structure: Vec<Vec<Sparse>>,
}

impl fmt::Debug for BasisOfV {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasisOfV({}, dims {:?})", self.kind, self.dim())
    }
}

fn to_rational_row(v: &[GaussianRational]) -> (Vec<Rational>, Vec<Rational>) {
    (v.iter().map(|c| c.re.clone()).collect(), v.iter().map(|c| c.im.clone()).collect())
}

impl BasisOfV {
    fn compute(kind: AlgebraKind) -> Self {
        let shape = kind.shape;
        let k = shape.size();
        let mut vectors = Vec::new();
        let mut free = Vec::new();
        let mut n_even = 0;
        for odd_part in [false, true] {
            let unknowns: Vec<usize> = (0..k * k).filter(|&p| shape.is_odd_entry(p / k, p % k) == odd_part).collect();
            // column u holds the constraint evaluated on the unit matrix at unknowns[u]
            let columns: Vec<Vec<GaussianRational>> = unknowns
                .iter()
                .map(|&p| {
                    let unit = CMatrix::from_fn(k, k, |i, j| {
                        if i * k + j == p {
                            GaussianRational::one()
                        } else {
                            GaussianRational::zero()
                        }
                    });
                    kind.constraint_constant(&unit)
                })
                .collect();
            let rows = columns.first().map_or(0, Vec::len);
            // the constraints have rational coefficients, so real and imaginary parts split
            let mut real_rows = Vec::new();
            for r in 0..rows {
                let row: Vec<GaussianRational> = columns.iter().map(|c| c[r].clone()).collect();
                let (re, im) = to_rational_row(&row);
                real_rows.push(re);
                real_rows.push(im);
            }
            let null = if real_rows.is_empty() {
                QMatrix::zeros(1, unknowns.len()).nullspace_with_free()
            } else {
                QMatrix::from_rows(&real_rows).nullspace_with_free()
            };
            for (f, vec) in null {
                let pos = unknowns[f];
                let mut m = CMatrix::zeros(k, k);
                for (u, c) in vec.iter().enumerate() {
                    m[(unknowns[u] / k, unknowns[u] % k)] = GaussianRational::from_rational(c.clone());
                }
                // odd solutions of the printed constraint are the ι-images; V₁ holds their twists
                vectors.push(if odd_part { twist_constant(shape, &m) } else { m });
                free.push(pos);
            }
            if !odd_part {
                n_even = vectors.len();
            }
        }
        let iota = vectors
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let v = if i >= n_even { twist_constant(shape, v) } else { v.clone() };
                v.entries().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(p, c)| (p, c.clone())).collect()
            })
            .collect();
        let mut basis = Self { kind, vectors, n_even, free, iota, structure: Vec::new() };
        let d = basis.len();
        let structure = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let b = basis.super_bracket(i, j);
                        let coords = basis.coordinates(&b).expect("V is closed under the super bracket");
                        coords.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect()
                    })
                    .collect()
            })
            .collect();
        basis.structure = structure;
        basis
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn dim(&self) -> (usize, usize) {
        (self.n_even, self.len() - self.n_even)
    }

    pub fn vector(&self, i: usize) -> &CMatrix {
        &self.vectors[i]
    }

    pub fn vectors(&self) -> &[CMatrix] {
        &self.vectors
    }

    pub fn even_vectors(&self) -> &[CMatrix] {
        &self.vectors[..self.n_even]
    }

    pub fn odd_vectors(&self) -> &[CMatrix] {
        &self.vectors[self.n_even..]
    }

    pub fn is_odd(&self, i: usize) -> bool {
        i >= self.n_even
    }

    /// `[vᵢ, vⱼ] = vᵢvⱼ - (-1)^{|i||j|} vⱼvᵢ` as a constant matrix.
    pub fn super_bracket(&self, i: usize, j: usize) -> CMatrix {
        let (a, b) = (&self.vectors[i], &self.vectors[j]);
        let ab = a.mul(b);
        let ba = b.mul(a);
        if self.is_odd(i) && self.is_odd(j) {
            ab.add(&ba)
        } else {
            ab.add(&ba.scale(&GaussianRational::from_integer(-1)))
        }
    }

    /// `[vᵢ, vⱼ]` in the basis, as sparse `(index, coefficient)` pairs.
    pub fn structure_constants(&self, i: usize, j: usize) -> &[(usize, GaussianRational)] {
        &self.structure[i][j]
    }

    /// Coordinates of an element of `V` (a constant matrix).
    pub fn coordinates(&self, w: &CMatrix) -> Result<Vec<GaussianRational>> {
        let shape = self.kind.shape;
        let tw = twist_constant(shape, w);
        let k = shape.size();
        let coords: Vec<GaussianRational> = (0..self.len())
            .map(|i| {
                let p = self.free[i];
                if self.is_odd(i) {
                    tw[(p / k, p % k)].clone()
                } else {
                    w[(p / k, p % k)].clone()
                }
            })
            .collect();
        if &self.combine(&coords) != w {
            return Err(Error::NotInSpan(format!("constant matrix is not in {}", self.kind)));
        }
        Ok(coords)
    }

    /// `Σ cᵢ vᵢ`.
    pub fn combine(&self, coords: &[GaussianRational]) -> CMatrix {
        let k = self.kind.shape.size();
        let mut out = CMatrix::zeros(k, k);
        for (c, v) in coords.iter().zip(&self.vectors) {
            if !c.is_zero() {
                out = out.add(&v.scale(c));
            }
        }
        out
    }
}

/// The cached basis of `V` for `kind`.
pub fn basis_of_v(kind: &AlgebraKind) -> Arc<BasisOfV> {
    static CACHE: OnceLock<Mutex<HashMap<AlgebraKind, Arc<BasisOfV>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(b) = cache.lock().expect("basis cache poisoned").get(kind) {
        return b.clone();
    }
    let b = Arc::new(BasisOfV::compute(*kind));
    cache.lock().expect("basis cache poisoned").entry(*kind).or_insert(b).clone()
}

/// `Σ aᵢ ⊗ vᵢ` with `|aᵢ| = |vᵢ|`, stored densely by basis index.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TensorElement {
    kind: AlgebraKind,
    sig: AlgebraSignature,
    coeffs: Vec<SuperNumber>,
}

impl TensorElement {
    pub fn zero(kind: AlgebraKind, sig: AlgebraSignature) -> Self {
        let d = basis_of_v(&kind).len();
        Self { kind, sig, coeffs: vec![SuperNumber::zero(sig); d] }
    }

    /// Sums the given terms; each coefficient must have the parity of its basis vector.
    pub fn from_terms(
        kind: AlgebraKind,
        sig: AlgebraSignature,
        terms: impl IntoIterator<Item = (SuperNumber, usize)>,
    ) -> Result<Self> {
        let basis = basis_of_v(&kind);
        let mut out = Self::zero(kind, sig);
        for (a, i) in terms {
            if i >= basis.len() {
                return Err(Error::OutOfRange(format!("basis index {i} for {kind} of dimension {}", basis.len())));
            }
            if a.signature() != &sig {
                return Err(Error::SignatureMismatch(a.signature().describe(), sig.describe()));
            }
            let ok = a.is_zero() || if basis.is_odd(i) { a.is_odd() } else { a.is_even() };
            if !ok {
                return Err(Error::ParityViolation(format!("coefficient {a} on basis vector {i} of {kind}")));
            }
            out.coeffs[i] = &out.coeffs[i] + &a;
        }
        Ok(out)
    }

    pub fn kind(&self) -> &AlgebraKind {
        &self.kind
    }

    pub fn signature(&self) -> &AlgebraSignature {
        &self.sig
    }

    pub fn coeff(&self, i: usize) -> &SuperNumber {
        &self.coeffs[i]
    }

    /// Nonzero terms in basis order.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &SuperNumber)> {
        self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(SuperNumber::is_zero)
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if self.kind != other.kind {
            return Err(Error::ShapeMismatch(format!("{} vs {}", self.kind, other.kind)));
        }
        if self.sig != other.sig {
            return Err(Error::SignatureMismatch(self.sig.describe(), other.sig.describe()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        Ok(Self {
            kind: self.kind,
            sig: self.sig,
            coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect(),
        })
    }
}

impl fmt::Debug for TensorElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[", self.kind)?;
        for (n, (i, a)) in self.terms().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({a})⊗v{i}")?;
        }
        write!(f, "]")
    }
}

/// `[a ⊗ v, b ⊗ w] = (-1)^{|b||v|} ab ⊗ [v, w]`, extended bilinearly.
pub fn even_rules_bracket(x: &TensorElement, y: &TensorElement) -> Result<TensorElement> {
    x.check_compatible(y)?;
    let basis = basis_of_v(&x.kind);
    for t in [x, y] {
        if let Some((i, a)) = t.terms().find(|(i, a)| a.is_odd() != basis.is_odd(*i) || !a.parity().is_homogeneous()) {
            return Err(Error::ParityViolation(format!("coefficient {a} on basis vector {i}")));
        }
    }
    let mut out = TensorElement::zero(x.kind, x.sig);
    for (i, a) in x.terms() {
        for (j, b) in y.terms() {
            let structure = basis.structure_constants(i, j);
            if structure.is_empty() {
                continue;
            }
            let mut ab = a * b;
            if b.is_odd() && basis.is_odd(i) {
                ab = -ab;
            }
            if ab.is_zero() {
                continue;
            }
            for (k, c) in structure {
                out.coeffs[*k] = &out.coeffs[*k] + &ab.scale(c);
            }
        }
    }
    Ok(out)
}

/// `Σ ι(aᵢ ⊗ vᵢ)` as an A-point.
pub fn matrix_of(x: &TensorElement) -> Result<FunctorPoint> {
    let basis = basis_of_v(&x.kind);
    let shape = x.kind.shape;
    let k = shape.size();
    let mut entries = vec![SuperNumber::zero(x.sig); k * k];
    for (i, a) in x.terms() {
        for (p, c) in &basis.iota[i] {
            entries[*p] = &entries[*p] + &a.scale(c);
        }
    }
    FunctorPoint::new(x.kind, SuperMatrix::new(shape, x.sig, entries)?)
}

/// Inverse of [`matrix_of`]: decomposes an A-point monomial by monomial.
pub fn tensor_of(x: &FunctorPoint) -> Result<TensorElement> {
    let basis = basis_of_v(&x.kind);
    let sig = *x.signature();
    let mut by_monomial: BTreeMap<Monomial, HashMap<usize, GaussianRational>> = BTreeMap::new();
    for (p, e) in x.matrix.entries().iter().enumerate() {
        for (m, c) in e.terms() {
            by_monomial.entry(*m).or_default().insert(p, c.clone());
        }
    }
    let mut coeffs = vec![SuperNumber::zero(sig); basis.len()];
    for (m, slice) in &by_monomial {
        for (i, coeff) in coeffs.iter_mut().enumerate() {
            if basis.is_odd(i) != m.is_odd() {
                continue;
            }
            if let Some(c) = slice.get(&basis.free[i]) {
                *coeff = &*coeff + &SuperNumber::monomial(sig, *m, c.clone());
            }
        }
    }
    let t = TensorElement { kind: x.kind, sig, coeffs };
    if matrix_of(&t)?.matrix != x.matrix {
        return Err(Error::NotInSpan(format!("{} does not decompose over {}", x.matrix, x.kind)));
    }
    Ok(t)
}

/// A sparse random tensor with at most `terms` summands.
pub fn random_tensor(kind: &AlgebraKind, sig: &AlgebraSignature, rng: &mut SampleRng, terms: usize) -> TensorElement {
    use rand::Rng;
    let basis = basis_of_v(kind);
    let mut picks = Vec::new();
    for _ in 0..terms.max(1) {
        let i = rng.random_range(0..basis.len());
        picks.push((sampling::homogeneous(rng, sig, basis.is_odd(i), 2), i));
    }
    TensorElement::from_terms(*kind, *sig, picks).expect("sampled terms are parity-matched")
}

/// A sparse random A-point.
pub fn random_point(kind: &AlgebraKind, sig: &AlgebraSignature, rng: &mut SampleRng, terms: usize) -> FunctorPoint {
    matrix_of(&random_tensor(kind, sig, rng, terms)).expect("ι of a parity-matched tensor is an A-point")
}
