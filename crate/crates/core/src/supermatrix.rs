//! Square `(m|n)` block supermatrices over a superalgebra.
//!
//! ```text
//! X = ( P  Q )   P: m×m, S: n×n even entries
//!     ( R  S )   Q: m×n, R: n×m odd entries
//! ```

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraSignature, SuperNumber};
use crate::error::{Error, ParseError, Result};
use crate::linalg::CMatrix;
use crate::morphism::AlgebraMorphism;
use crate::scalar::GaussianRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    m: usize,
    n: usize,
}

impl Shape {
    pub fn new(m: usize, n: usize) -> Result<Self> {
        if m + n == 0 {
            return Err(Error::ShapeMismatch("shape 0|0 is empty".into()));
        }
        Ok(Self { m, n })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.m + self.n
    }

    /// Whether row/column `i` belongs to the odd block.
    pub fn is_odd_index(&self, i: usize) -> bool {
        i >= self.m
    }

    /// Whether entry `(i, j)` lies in an off-diagonal (odd) block.
    pub fn is_odd_entry(&self, i: usize, j: usize) -> bool {
        self.is_odd_index(i) != self.is_odd_index(j)
    }
}

impl fmt::Display for Shape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.m, self.n)
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperMatrix {
    shape: Shape,
    sig: AlgebraSignature,
    entries: Vec<SuperNumber>,
}

fn mismatch(a: &SuperMatrix, b: &SuperMatrix) -> Result<()> {
    if a.shape != b.shape {
        return Err(Error::ShapeMismatch(format!("{} vs {}", a.shape, b.shape)));
    }
    if a.sig != b.sig {
        return Err(Error::SignatureMismatch(a.sig.describe(), b.sig.describe()));
    }
    Ok(())
}

impl SuperMatrix {
    /// Row-major entries; diagonal blocks must be even, off-diagonal blocks odd.
    pub fn new(shape: Shape, sig: AlgebraSignature, entries: Vec<SuperNumber>) -> Result<Self> {
        let x = Self::new_relaxed(shape, sig, entries)?;
        if let Some((i, j)) = x.parity_violation() {
            return Err(Error::NotEven(format!("entry ({i},{j}) = {} in shape {shape}", x.get(i, j))));
        }
        Ok(x)
    }

    /// Skips the evenness check; for intermediate values only.
    pub(crate) fn new_relaxed(shape: Shape, sig: AlgebraSignature, entries: Vec<SuperNumber>) -> Result<Self> {
        if entries.len() != shape.size() * shape.size() {
            return Err(Error::ShapeMismatch(format!("{} entries for shape {shape}", entries.len())));
        }
        if let Some(e) = entries.iter().find(|e| e.signature() != &sig) {
            return Err(Error::SignatureMismatch(e.signature().describe(), sig.describe()));
        }
        Ok(Self { shape, sig, entries })
    }

    pub fn from_fn(shape: Shape, sig: AlgebraSignature, f: impl Fn(usize, usize) -> SuperNumber) -> Result<Self> {
        let k = shape.size();
        let entries = (0..k * k).map(|t| f(t / k, t % k)).collect();
        Self::new(shape, sig, entries)
    }

    pub fn zero(shape: Shape, sig: AlgebraSignature) -> Self {
        let k = shape.size();
        Self { shape, sig, entries: vec![SuperNumber::zero(sig); k * k] }
    }

    pub fn identity(shape: Shape, sig: AlgebraSignature) -> Self {
        Self::scalar(shape, sig, &GaussianRational::one())
    }

    pub fn scalar(shape: Shape, sig: AlgebraSignature, c: &GaussianRational) -> Self {
        let mut x = Self::zero(shape, sig);
        for i in 0..shape.size() {
            x.entries[i * shape.size() + i] = SuperNumber::scalar(sig, c.clone());
        }
        x
    }

    /// A constant block-diagonal matrix over ℚ(i) viewed over `sig`.
    pub fn constant(shape: Shape, sig: AlgebraSignature, c: &CMatrix) -> Result<Self> {
        if c.rows() != shape.size() || c.cols() != shape.size() {
            return Err(Error::ShapeMismatch(format!("{}x{} constant for shape {shape}", c.rows(), c.cols())));
        }
        Self::from_fn(shape, sig, |i, j| SuperNumber::scalar(sig, c[(i, j)].clone()))
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn signature(&self) -> &AlgebraSignature {
        &self.sig
    }

    pub fn size(&self) -> usize {
        self.shape.size()
    }

    pub fn get(&self, i: usize, j: usize) -> &SuperNumber {
        &self.entries[i * self.size() + j]
    }

    pub fn entries(&self) -> &[SuperNumber] {
        &self.entries
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(SuperNumber::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.shape, self.sig)
    }

    fn parity_violation(&self) -> Option<(usize, usize)> {
        let k = self.size();
        (0..k * k).map(|t| (t / k, t % k)).find(|&(i, j)| {
            let e = self.get(i, j);
            if self.shape.is_odd_entry(i, j) {
                !e.is_odd()
            } else {
                !e.is_even()
            }
        })
    }

    /// Diagonal blocks even, off-diagonal blocks odd.
    pub fn is_even(&self) -> bool {
        self.parity_violation().is_none()
    }

    /// Only the diagonal blocks are nonzero.
    pub fn is_block_diagonal(&self) -> bool {
        let k = self.size();
        (0..k * k).all(|t| !self.shape.is_odd_entry(t / k, t % k) || self.entries[t].is_zero())
    }

    /// Only the off-diagonal blocks are nonzero.
    pub fn is_block_off_diagonal(&self) -> bool {
        let k = self.size();
        (0..k * k).all(|t| self.shape.is_odd_entry(t / k, t % k) || self.entries[t].is_zero())
    }

    /// Keeps the diagonal blocks (`diag = true`) or the off-diagonal blocks.
    pub fn block_part(&self, diag: bool) -> Self {
        let k = self.size();
        let entries = (0..k * k)
            .map(|t| {
                if self.shape.is_odd_entry(t / k, t % k) != diag {
                    self.entries[t].clone()
                } else {
                    SuperNumber::zero(self.sig)
                }
            })
            .collect();
        Self { shape: self.shape, sig: self.sig, entries }
    }

    fn map(&self, f: impl Fn(&SuperNumber) -> SuperNumber) -> Self {
        Self { shape: self.shape, sig: self.sig, entries: self.entries.iter().map(f).collect() }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        mismatch(self, other)?;
        Ok(Self {
            shape: self.shape,
            sig: self.sig,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        mismatch(self, other)?;
        Ok(Self {
            shape: self.shape,
            sig: self.sig,
            entries: self.entries.iter().zip(&other.entries).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        mismatch(self, other)?;
        let k = self.size();
        Ok(Self { shape: self.shape, sig: self.sig, entries: square_mul(&self.entries, &other.entries, k, self.sig) })
    }

    pub fn neg(&self) -> Self {
        self.map(|e| -e)
    }

    /// `a·X`, entrywise left multiplication; the result must stay even.
    pub fn left_scale(&self, a: &SuperNumber) -> Result<Self> {
        if a.signature() != &self.sig {
            return Err(Error::SignatureMismatch(a.signature().describe(), self.sig.describe()));
        }
        let x = self.map(|e| a * e);
        if let Some((i, j)) = x.parity_violation() {
            return Err(Error::NotEven(format!("scaling by {a} breaks entry ({i},{j})")));
        }
        Ok(x)
    }

    pub fn scale_scalar(&self, c: &GaussianRational) -> Self {
        self.map(|e| e.scale(c))
    }

    /// `XY - YX`.
    pub fn commutator(&self, other: &Self) -> Result<Self> {
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    /// Entrywise conjugation of the signature.
    pub fn conjugate(&self) -> Self {
        self.map(SuperNumber::conjugate)
    }

    /// `(A B; C D) ↦ (Aᵗ -Cᵗ; Bᵗ Dᵗ)`.
    pub fn supertranspose(&self) -> Self {
        let k = self.size();
        let mut entries = Vec::with_capacity(k * k);
        for i in 0..k {
            for j in 0..k {
                let src = self.get(j, i);
                // lower-left block of the result comes from B, upper-right from C
                let negate = !self.shape.is_odd_index(i) && self.shape.is_odd_index(j);
                entries.push(if negate { -src } else { src.clone() });
            }
        }
        Self { shape: self.shape, sig: self.sig, entries }
    }

    /// `(A B; C D) ↦ (D C; B A)`; requires `m = n`.
    pub fn pi_transpose(&self) -> Result<Self> {
        let Shape { m, n } = self.shape;
        if m != n {
            return Err(Error::ShapeMismatch(format!("Π-transpose needs m = n, got {}", self.shape)));
        }
        let k = self.size();
        let swap = |i: usize| if i < m { i + m } else { i - m };
        let entries = (0..k * k).map(|t| self.get(swap(t / k), swap(t % k)).clone()).collect();
        Ok(Self { shape: self.shape, sig: self.sig, entries })
    }

    /// `tr P - tr S`.
    pub fn supertrace(&self) -> SuperNumber {
        let mut acc = SuperNumber::zero(self.sig);
        for i in 0..self.size() {
            let d = self.get(i, i);
            acc = if self.shape.is_odd_index(i) { &acc - d } else { &acc + d };
        }
        acc
    }

    /// `(A B; C D) ↦ (A λB; λ⁻¹C D)`.
    pub fn delta_scale(&self, lambda: &GaussianRational) -> Result<Self> {
        let inv = lambda.inv().ok_or_else(|| Error::OutOfRange("δ_λ needs λ ≠ 0".into()))?;
        let k = self.size();
        let entries = (0..k * k)
            .map(|t| {
                let (i, j) = (t / k, t % k);
                let e = &self.entries[t];
                match (self.shape.is_odd_index(i), self.shape.is_odd_index(j)) {
                    (false, true) => e.scale(lambda),
                    (true, false) => e.scale(&inv),
                    _ => e.clone(),
                }
            })
            .collect();
        Ok(Self { shape: self.shape, sig: self.sig, entries })
    }

    /// `C·X·C⁻¹` for a constant invertible `C` (with its inverse supplied).
    pub fn conjugate_by(&self, c: &CMatrix, c_inv: &CMatrix) -> Self {
        let left = const_mul_left(c, &self.entries, self.size(), self.sig);
        let entries = const_mul_right(&left, c_inv, self.size(), self.sig);
        Self { shape: self.shape, sig: self.sig, entries }
    }

    /// The matrix of bodies (coefficients of 1).
    pub fn body(&self) -> CMatrix {
        let k = self.size();
        CMatrix::from_fn(k, k, |i, j| self.get(i, j).body())
    }

    /// Exact inverse through the body inverse and a terminating nilpotent series.
    pub fn invert(&self) -> Result<Self> {
        let entries = square_inverse(&self.entries, self.size(), self.sig)
            .ok_or_else(|| Error::NotInvertible(format!("body of a {} supermatrix is singular", self.shape)))?;
        Ok(Self { shape: self.shape, sig: self.sig, entries })
    }

    fn block(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Vec<SuperNumber> {
        rows.flat_map(|i| cols.clone().map(move |j| (i, j))).map(|(i, j)| self.get(i, j).clone()).collect()
    }

    /// Berezinian `det(P - Q S⁻¹ R) · det(S⁻¹)`.
    pub fn berezinian(&self) -> Result<SuperNumber> {
        let Shape { m, n } = self.shape;
        let k = m + n;
        let p = self.block(0..m, 0..m);
        let q = self.block(0..m, m..k);
        let r = self.block(m..k, 0..m);
        let s = self.block(m..k, m..k);
        let body_det =
            |b: &[SuperNumber], d: usize| CMatrix::from_fn(d, d, |i, j| b[i * d + j].body()).inverse().is_some();
        if !body_det(&p, m) {
            return Err(Error::NotInvertible("body of P is singular".into()));
        }
        if !body_det(&s, n) {
            return Err(Error::NotInvertible("body of S is singular".into()));
        }
        let s_inv = square_inverse(&s, n, self.sig).expect("body of S checked");
        let qs = rect_mul(&q, &s_inv, m, n, n, self.sig);
        let qsr = rect_mul(&qs, &r, m, n, m, self.sig);
        let inner: Vec<SuperNumber> = p.iter().zip(&qsr).map(|(a, b)| a - b).collect();
        let det_inner = det_even(&inner, m, self.sig)?;
        let det_s_inv = det_even(&s_inv, n, self.sig)?;
        Ok(&det_inner * &det_s_inv)
    }

    /// Applies a superalgebra morphism to every entry.
    pub fn map_entries(&self, f: &AlgebraMorphism) -> Result<Self> {
        let entries = self.entries.iter().map(|e| f.apply(e)).collect::<Result<Vec<_>>>()?;
        Ok(Self { shape: self.shape, sig: *f.target(), entries })
    }

    /// Same entries viewed in a larger signature.
    pub fn embed(&self, target: AlgebraSignature) -> Result<Self> {
        let entries = self.entries.iter().map(|e| e.embed(target)).collect::<Result<Vec<_>>>()?;
        Ok(Self { shape: self.shape, sig: target, entries })
    }

    /// Parses `shape m|n [[e, e], [e, e]]`.
    pub fn parse(sig: AlgebraSignature, s: &str) -> Result<Self> {
        let s = s.trim();
        let rest = s.strip_prefix("shape").ok_or_else(|| ParseError::new("matrix literal must start with `shape`"))?;
        let open = rest.find('[').ok_or_else(|| ParseError::new("missing `[`"))?;
        let (dims, body) = rest.split_at(open);
        let (m, n) = dims
            .trim()
            .split_once('|')
            .ok_or_else(|| ParseError::new(format!("bad shape header `{}`", dims.trim())))?;
        let parse_dim =
            |d: &str| d.trim().parse::<usize>().map_err(|_| ParseError::new(format!("bad dimension `{d}`")));
        let shape = Shape::new(parse_dim(m)?, parse_dim(n)?)?;
        let body: String = body.chars().filter(|c| !c.is_whitespace()).collect();
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| ParseError::new("matrix body must be `[[...],...]`"))?;
        let rows = split_depth0(inner, ',', '[', ']');
        if rows.len() != shape.size() {
            return Err(ParseError::new(format!("{} rows for shape {shape}", rows.len())).into());
        }
        let mut entries = Vec::new();
        for row in rows {
            let row = row
                .strip_prefix('[')
                .and_then(|r| r.strip_suffix(']'))
                .ok_or_else(|| ParseError::new(format!("bad row `{row}`")))?;
            let cells = split_depth0(row, ',', '(', ')');
            if cells.len() != shape.size() {
                return Err(ParseError::new(format!("row has {} entries for shape {shape}", cells.len())).into());
            }
            for cell in cells {
                entries.push(SuperNumber::parse(sig, cell)?);
            }
        }
        Self::new(shape, sig, entries)
    }
}

fn split_depth0(s: &str, sep: char, open: char, close: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        if c == open {
            depth += 1;
        } else if c == close {
            depth -= 1;
        } else if c == sep && depth == 0 {
            out.push(&s[start..k]);
            start = k + 1;
        }
    }
    out.push(&s[start..]);
    out
}

impl fmt::Display for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "shape {} [", self.shape)?;
        let k = self.size();
        for i in 0..k {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..k {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! matrix_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl std::ops::$tr for &SuperMatrix {
            type Output = SuperMatrix;
            fn $m(self, rhs: &SuperMatrix) -> SuperMatrix {
                self.$try(rhs).expect("supermatrix operands must share shape and signature")
            }
        }
    };
}
matrix_op!(Add, add, try_add);
matrix_op!(Sub, sub, try_sub);
matrix_op!(Mul, mul, try_mul);

fn rect_mul(
    a: &[SuperNumber],
    b: &[SuperNumber],
    r: usize,
    k: usize,
    c: usize,
    sig: AlgebraSignature,
) -> Vec<SuperNumber> {
    // an empty inner dimension still yields an r×c zero block
    let mut out = vec![SuperNumber::zero(sig); r * c];
    for i in 0..r {
        for t in 0..k {
            let x = &a[i * k + t];
            if x.is_zero() {
                continue;
            }
            for j in 0..c {
                let y = &b[t * c + j];
                if !y.is_zero() {
                    out[i * c + j] = &out[i * c + j] + &(x * y);
                }
            }
        }
    }
    out
}

fn square_mul(a: &[SuperNumber], b: &[SuperNumber], k: usize, sig: AlgebraSignature) -> Vec<SuperNumber> {
    rect_mul(a, b, k, k, k, sig)
}

fn const_mul_left(c: &CMatrix, x: &[SuperNumber], k: usize, sig: AlgebraSignature) -> Vec<SuperNumber> {
    let mut out = vec![SuperNumber::zero(sig); k * k];
    for i in 0..k {
        for t in 0..k {
            let s = &c[(i, t)];
            if s.is_zero() {
                continue;
            }
            for j in 0..k {
                let y = &x[t * k + j];
                if !y.is_zero() {
                    out[i * k + j] = &out[i * k + j] + &y.scale(s);
                }
            }
        }
    }
    out
}

fn const_mul_right(x: &[SuperNumber], c: &CMatrix, k: usize, sig: AlgebraSignature) -> Vec<SuperNumber> {
    let mut out = vec![SuperNumber::zero(sig); k * k];
    for i in 0..k {
        for t in 0..k {
            let y = &x[i * k + t];
            if y.is_zero() {
                continue;
            }
            for j in 0..k {
                let s = &c[(t, j)];
                if !s.is_zero() {
                    out[i * k + j] = &out[i * k + j] + &y.scale(s);
                }
            }
        }
    }
    out
}

/// Inverse of a `k×k` matrix of superalgebra elements with invertible body.
pub(crate) fn square_inverse(x: &[SuperNumber], k: usize, sig: AlgebraSignature) -> Option<Vec<SuperNumber>> {
    if k == 0 {
        return Some(Vec::new());
    }
    let body = CMatrix::from_fn(k, k, |i, j| x[i * k + j].body());
    let body_inv = body.inverse()?;
    // T = -B⁻¹·N where N = X - B is entrywise nilpotent
    let nil: Vec<SuperNumber> = x.iter().map(|e| e.filter(|m| !m.is_one())).collect();
    let t: Vec<SuperNumber> = const_mul_left(&body_inv, &nil, k, sig).iter().map(|e| -e).collect();
    let ident: Vec<SuperNumber> =
        (0..k * k).map(|p| if p / k == p % k { SuperNumber::one(sig) } else { SuperNumber::zero(sig) }).collect();
    let mut sum = ident.clone();
    let mut term = ident;
    for _ in 0..=sig.generator_count() {
        term = square_mul(&term, &t, k, sig);
        if term.iter().all(SuperNumber::is_zero) {
            break;
        }
        sum = sum.iter().zip(&term).map(|(a, b)| a + b).collect();
    }
    Some(const_mul_right(&sum, &body_inv, k, sig))
}

/// Determinant of a `k×k` matrix with even (hence mutually commuting) entries.
pub(crate) fn det_even(x: &[SuperNumber], k: usize, sig: AlgebraSignature) -> Result<SuperNumber> {
    debug_assert!(x.iter().all(SuperNumber::is_even));
    if k <= 4 {
        return Ok(laplace_det(x, k, sig));
    }
    // elimination pivoting on invertible bodies; valid since even entries commute
    let mut a = x.to_vec();
    let mut det = SuperNumber::one(sig);
    for c in 0..k {
        let Some(p) = (c..k).find(|&i| !a[i * k + c].body().is_zero()) else {
            return Err(Error::NotInvertible("determinant with singular body".into()));
        };
        if p != c {
            for j in 0..k {
                a.swap(p * k + j, c * k + j);
            }
            det = -det;
        }
        let piv = a[c * k + c].clone();
        let piv_inv = piv.invert()?;
        det = &det * &piv;
        for i in c + 1..k {
            if a[i * k + c].is_zero() {
                continue;
            }
            let f = &a[i * k + c] * &piv_inv;
            for j in c..k {
                a[i * k + j] = &a[i * k + j] - &(&f * &a[c * k + j]);
            }
        }
    }
    Ok(det)
}

fn laplace_det(x: &[SuperNumber], k: usize, sig: AlgebraSignature) -> SuperNumber {
    match k {
        0 => SuperNumber::one(sig),
        1 => x[0].clone(),
        2 => &(&x[0] * &x[3]) - &(&x[1] * &x[2]),
        _ => {
            let mut acc = SuperNumber::zero(sig);
            for j in 0..k {
                if x[j].is_zero() {
                    continue;
                }
                let minor: Vec<SuperNumber> = (1..k)
                    .flat_map(|r| (0..k).filter(move |&c| c != j).map(move |c| (r, c)))
                    .map(|(r, c)| x[r * k + c].clone())
                    .collect();
                let term = &x[j] * &laplace_det(&minor, k - 1, sig);
                acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            acc
        }
    }
}

/// The supertranspose block rule applied to a constant matrix of the given shape.
pub fn supertranspose_constant(shape: Shape, x: &CMatrix) -> CMatrix {
    CMatrix::from_fn(shape.size(), shape.size(), |i, j| {
        let src = x[(j, i)].clone();
        if !shape.is_odd_index(i) && shape.is_odd_index(j) {
            -src
        } else {
            src
        }
    })
}

/// `(A B; C D) ↦ (A B; -C D)` on a constant matrix.
pub fn twist_constant(shape: Shape, x: &CMatrix) -> CMatrix {
    CMatrix::from_fn(shape.size(), shape.size(), |i, j| {
        let e = x[(i, j)].clone();
        if shape.is_odd_index(i) && !shape.is_odd_index(j) {
            -e
        } else {
            e
        }
    })
}

/// The named constant matrices.
pub mod constants {
    use super::*;

    /// `J_k = (0 1_k; -1_k 0)`, of size `2k`.
    pub fn symplectic_unit(k: usize) -> CMatrix {
        CMatrix::from_fn(2 * k, 2 * k, |i, j| {
            if j == i + k && i < k {
                GaussianRational::one()
            } else if i == j + k && j < k {
                GaussianRational::from_integer(-1)
            } else {
                GaussianRational::zero()
            }
        })
    }

    /// Symplectic unit of even total size `size`.
    pub fn symplectic_unit_of_size(size: usize) -> Result<CMatrix> {
        if !size.is_multiple_of(2) {
            return Err(Error::OutOfRange(format!("symplectic unit needs even size, got {size}")));
        }
        Ok(symplectic_unit(size / 2))
    }

    /// `I_n^l = diag(1_l, -1_{n-l})`.
    pub fn signature_matrix(n: usize, l: usize) -> Result<CMatrix> {
        if l > n {
            return Err(Error::OutOfRange(format!("I_{n}^{l} needs 0 ≤ l ≤ n")));
        }
        let d: Vec<i64> = (0..n).map(|k| if k < l { 1 } else { -1 }).collect();
        Ok(CMatrix::diag_i64(&d))
    }

    /// `J_{m,n} = diag(1_m, J_n)`, of shape `(m | 2n)`.
    pub fn orthosymplectic_form(m: usize, n: usize) -> CMatrix {
        CMatrix::block_diag(&[&CMatrix::identity(m), &symplectic_unit(n)])
    }

    pub fn block_diag(a: &CMatrix, d: &CMatrix) -> CMatrix {
        CMatrix::block_diag(&[a, d])
    }
}

#[cfg(test)]
mod tests {
    use super::constants::*;
    use super::*;
    use crate::algebra::Conjugation;

    fn sig(pairs: usize, evens: usize) -> AlgebraSignature {
        AlgebraSignature::new(pairs, 0, evens, Conjugation::Standard).unwrap()
    }

    fn mat(sig: AlgebraSignature, s: &str) -> SuperMatrix {
        SuperMatrix::parse(sig, s).unwrap()
    }

    fn num(sig: AlgebraSignature, s: &str) -> SuperNumber {
        SuperNumber::parse(sig, s).unwrap()
    }

    #[test]
    fn literal_round_trip() {
        let a = sig(1, 0);
        let x = mat(a, "shape 1|1 [[(1), (0)+(1)*t1],[(0)+(1)*t1~, (1)]]");
        assert_eq!(mat(a, &x.to_string()), x);
        assert!(SuperMatrix::parse(a, "shape 1|1 [[(1), (1)],[(0), (1)]]").is_err());
        assert!(SuperMatrix::parse(a, "shape 1|1 [[(1)],[(0), (1)]]").is_err());
    }

    #[test]
    fn berezinian_hand_expansion() {
        let a = sig(1, 0);
        let x = mat(a, "shape 1|1 [[(1), t1],[t1~, (1)]]");
        assert_eq!(x.berezinian().unwrap(), num(a, "(1) + (-1)*t1*t1~"));
    }

    #[test]
    fn berezinian_of_diagonal() {
        let c = AlgebraSignature::ground(Conjugation::Standard);
        let shape = Shape::new(2, 3).unwrap();
        let two = GaussianRational::from_integer(2);
        let three = GaussianRational::from_integer(3);
        let d = CMatrix::block_diag(&[&CMatrix::scalar(2, two.clone()), &CMatrix::scalar(3, three.clone())]);
        let x = SuperMatrix::constant(shape, c, &d).unwrap();
        let expect = &two.pow(2) * &three.pow(3).inv().unwrap();
        assert_eq!(x.berezinian().unwrap(), SuperNumber::scalar(c, expect));
    }

    #[test]
    fn berezinian_needs_invertible_blocks() {
        let c = AlgebraSignature::ground(Conjugation::Standard);
        let x = SuperMatrix::constant(Shape::new(1, 1).unwrap(), c, &CMatrix::diag_i64(&[1, 0])).unwrap();
        assert!(matches!(x.berezinian(), Err(Error::NotInvertible(_))));
        let y = SuperMatrix::constant(Shape::new(1, 1).unwrap(), c, &CMatrix::diag_i64(&[0, 1])).unwrap();
        assert!(matches!(y.berezinian(), Err(Error::NotInvertible(_))));
    }

    #[test]
    fn supertranspose_has_order_four() {
        let a = sig(2, 0);
        let x = mat(a, "shape 1|1 [[(2)+t1*t2, t1],[(3)*t2~, (1)]]");
        let st2 = x.supertranspose().supertranspose();
        assert_eq!(st2, x.delta_scale(&GaussianRational::from_integer(-1)).unwrap());
        assert_ne!(st2, x);
        assert_eq!(st2.supertranspose().supertranspose(), x);
        let id = SuperMatrix::identity(Shape::new(2, 1).unwrap(), a);
        assert_eq!(id.supertranspose(), id);
    }

    #[test]
    fn pi_transpose_rules() {
        let a = sig(1, 0);
        let x = mat(a, "shape 1|1 [[(2), t1],[t1~, (5)]]");
        let px = x.pi_transpose().unwrap();
        assert_eq!(px, mat(a, "shape 1|1 [[(5), t1~],[t1, (2)]]"));
        assert_eq!(px.pi_transpose().unwrap(), x);
        let bad = SuperMatrix::identity(Shape::new(2, 1).unwrap(), a);
        assert!(bad.pi_transpose().is_err());
    }

    #[test]
    fn supertrace_values() {
        let a = sig(0, 0);
        let shape = Shape::new(3, 2).unwrap();
        assert_eq!(SuperMatrix::identity(shape, a).supertrace(), SuperNumber::from_i64(a, 1));
        let d = CMatrix::block_diag(&[&CMatrix::diag_i64(&[2, 2, 2]), &CMatrix::diag_i64(&[3, 3])]);
        let x = SuperMatrix::constant(shape, a, &d).unwrap();
        assert_eq!(x.supertrace(), SuperNumber::from_i64(a, 0));
    }

    #[test]
    fn inverse_of_symplectic_unit() {
        let c = AlgebraSignature::ground(Conjugation::Standard);
        let j = SuperMatrix::constant(Shape::new(2, 0).unwrap(), c, &symplectic_unit(1)).unwrap();
        assert_eq!(j.invert().unwrap(), j.neg());
    }

    #[test]
    fn dual_number_inverse() {
        let a = sig(1, 1);
        let eps = num(a, "e1");
        let m = mat(a, "shape 1|1 [[(1)+t1*t1~, t1],[(2)*t1~, (0+1i)]]");
        let em = m.left_scale(&eps).unwrap();
        let id = SuperMatrix::identity(m.shape(), a);
        let plus = &id + &em;
        let minus = &id - &em;
        assert!((&plus * &minus).is_identity());
        assert_eq!(plus.invert().unwrap(), minus);
    }

    #[test]
    fn constants_behave() {
        assert_eq!(signature_matrix(3, 3).unwrap(), CMatrix::identity(3));
        assert!(signature_matrix(2, 3).is_err());
        let j = symplectic_unit(2);
        assert_eq!(j.mul(&j), CMatrix::scalar(4, GaussianRational::from_integer(-1)));
        let a = sig(1, 0);
        let x = mat(a, "shape 1|1 [[(2), t1],[t1~, (5)]]");
        let l = GaussianRational::from_ratio(3, 2);
        let back = x.delta_scale(&l).unwrap().delta_scale(&l.inv().unwrap()).unwrap();
        assert_eq!(back, x);
        let i = GaussianRational::i();
        let twice = x.delta_scale(&i).unwrap().delta_scale(&i).unwrap();
        assert_eq!(twice, mat(a, "shape 1|1 [[(2), (-1)*t1],[(-1)*t1~, (5)]]"));
        assert!(x.delta_scale(&GaussianRational::zero()).is_err());
    }
}
