//! Dense exact linear algebra over ℚ and ℚ(i).

use num_traits::{One, Zero};

use crate::scalar::{GaussianRational, Rational};

/// Dense row-major matrix over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = Rational::one();
        }
        m
    }

    /// Matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn from_rows(rows: &[Vec<Rational>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "row length");
            for (j, x) in row.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// In-place reduced row echelon form; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self[(i, c)].is_zero()) else {
                continue;
            };
            self.swap_rows(p, r);
            let inv = self[(r, c)].recip();
            for j in c..self.cols {
                let v = &self[(r, j)] * &inv;
                self[(r, j)] = v;
            }
            for i in 0..self.rows {
                if i == r || self[(i, c)].is_zero() {
                    continue;
                }
                let f = self[(i, c)].clone();
                for j in c..self.cols {
                    if self[(r, j)].is_zero() {
                        continue;
                    }
                    let v = &self[(i, j)] - &(&f * &self[(r, j)]);
                    self[(i, j)] = v;
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// Basis of `{x : self·x = 0}`, one vector per free column, each with a 1
    /// at its free column and 0 at the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        self.nullspace_with_free().into_iter().map(|(_, v)| v).collect()
    }

    /// Like [`QMatrix::nullspace`], paired with each vector's free column.
    pub fn nullspace_with_free(&self) -> Vec<(usize, Vec<Rational>)> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(row, f)].clone();
                }
                (f, v)
            })
            .collect()
    }

    /// Some solution of `self·x = b`, if one exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, self.cols)] = b[i].clone();
        }
        let pivots = aug.rref();
        if pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = aug[(row, self.cols)].clone();
        }
        Some(x)
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = Rational::zero();
                for (j, x) in v.iter().enumerate() {
                    if !x.is_zero() && !self[(i, j)].is_zero() {
                        acc += &self[(i, j)] * x;
                    }
                }
                acc
            })
            .collect()
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let v = &m[(i, j)] - &(&f * &m[(c, j)]);
                    m[(i, j)] = v;
                }
            }
        }
        det
    }

    /// Leading principal minor of order `k`.
    pub fn leading_minor(&self, k: usize) -> Rational {
        let mut sub = Self::zeros(k, k);
        for i in 0..k {
            for j in 0..k {
                sub[(i, j)] = self[(i, j)].clone();
            }
        }
        sub.determinant()
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect() }
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        &mut self.data[i * self.cols + j]
    }
}

/// Rank of a family of vectors of equal length.
pub fn span_rank(len: usize, vectors: &[Vec<Rational>]) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    QMatrix::from_rows(vectors).rank().min(len)
}

/// Whether two families span the same ℚ-subspace.
pub fn spans_equal(len: usize, a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let ra = span_rank(len, a);
    let rb = span_rank(len, b);
    let both: Vec<Vec<Rational>> = a.iter().chain(b).cloned().collect();
    ra == rb && span_rank(len, &both) == ra
}

/// Coefficients `c` with `Σ c_k·vectors[k] = target`, if `target` lies in the span.
pub fn express_in_span(len: usize, vectors: &[Vec<Rational>], target: &[Rational]) -> Option<Vec<Rational>> {
    QMatrix::from_columns(len, vectors).solve(target)
}

/// Dense matrix over ℚ(i); used for constant supermatrices and bodies.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CMatrix {
    rows: usize,
    cols: usize,
    data: Vec<GaussianRational>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![GaussianRational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, GaussianRational::one())
    }

    pub fn scalar(n: usize, c: GaussianRational) -> Self {
        let mut m = Self::zeros(n, n);
        for k in 0..n {
            m[(k, k)] = c.clone();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl Fn(usize, usize) -> GaussianRational) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Integer diagonal matrix.
    pub fn diag_i64(entries: &[i64]) -> Self {
        Self::from_fn(entries.len(), entries.len(), |i, j| {
            if i == j {
                GaussianRational::from_integer(entries[i])
            } else {
                GaussianRational::zero()
            }
        })
    }

    /// Block-diagonal matrix of square blocks.
    pub fn block_diag(blocks: &[&CMatrix]) -> Self {
        let n: usize = blocks.iter().map(|b| b.rows).sum();
        let mut m = Self::zeros(n, n);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, b.cols, "block_diag needs square blocks");
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(off + i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.rows;
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn conj(&self) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(GaussianRational::conj).collect() }
    }

    pub fn is_real(&self) -> bool {
        self.data.iter().all(GaussianRational::is_real)
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let mut m = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        m[(i, j)] += &(a * b);
                    }
                }
            }
        }
        m
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(GaussianRational::is_zero)
    }

    pub fn trace(&self) -> GaussianRational {
        let mut t = GaussianRational::zero();
        for k in 0..self.rows.min(self.cols) {
            t += &self[(k, k)];
        }
        t
    }

    /// Gauss–Jordan inverse.
    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for c in 0..n {
            let p = (c..n).find(|&i| !a[(i, c)].is_zero())?;
            if p != c {
                for j in 0..n {
                    a.data.swap(p * n + j, c * n + j);
                    inv.data.swap(p * n + j, c * n + j);
                }
            }
            let piv = a[(c, c)].inv().expect("nonzero pivot");
            for j in 0..n {
                a[(c, j)] = &a[(c, j)] * &piv;
                inv[(c, j)] = &inv[(c, j)] * &piv;
            }
            for i in 0..n {
                if i == c || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in 0..n {
                    let v = &a[(i, j)] - &(&f * &a[(c, j)]);
                    a[(i, j)] = v;
                    let w = &inv[(i, j)] - &(&f * &inv[(c, j)]);
                    inv[(i, j)] = w;
                }
            }
        }
        Some(inv)
    }

    pub fn entries(&self) -> &[GaussianRational] {
        &self.data
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}

/// Splits complex coordinates into `(re_0, im_0, re_1, im_1, …)`.
pub fn realify(coords: &[GaussianRational]) -> Vec<Rational> {
    coords.iter().flat_map(|z| [z.re.clone(), z.im.clone()]).collect()
}

/// Inverse of [`realify`].
pub fn complexify(real: &[Rational]) -> Vec<GaussianRational> {
    real.chunks(2).map(|p| GaussianRational::new(p[0].clone(), p[1].clone())).collect()
}

/// ℚ-basis of the fixed space of a real-linear map on ℚ(i)^n.
///
/// `apply` is evaluated on `e_k` and `i·e_k`; the fixed space is the nullspace
/// of `F - id` in the realified coordinates.
pub fn real_fixed_space(
    n: usize,
    mut apply: impl FnMut(&[GaussianRational]) -> Vec<GaussianRational>,
) -> Vec<Vec<GaussianRational>> {
    let columns = real_linear_matrix(n, &mut apply);
    let f = QMatrix::from_columns(2 * n, &columns);
    f.sub(&QMatrix::identity(2 * n)).nullspace().iter().map(|v| complexify(v)).collect()
}

/// Columns of the realified matrix of a real-linear map on ℚ(i)^n.
pub fn real_linear_matrix(
    n: usize,
    apply: &mut impl FnMut(&[GaussianRational]) -> Vec<GaussianRational>,
) -> Vec<Vec<Rational>> {
    let mut columns = Vec::with_capacity(2 * n);
    for k in 0..n {
        for unit in [GaussianRational::one(), GaussianRational::i()] {
            let mut e = vec![GaussianRational::zero(); n];
            e[k] = unit;
            let img = apply(&e);
            assert_eq!(img.len(), n);
            columns.push(realify(&img));
        }
    }
    columns
}

/// Rows in brackets, entries in the `(re+imi)` scalar format: `[[(1), (0)],[(0), (-1)]]`.
impl std::fmt::Display for CMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(i, j)])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
