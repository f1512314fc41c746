use std::sync::Arc;

use num_traits::{Signed, Zero};

use crate::algebra::{AlgebraSignature, Monomial, SuperNumber};
use crate::error::{Error, Result};
use crate::lie::{basis_of_v, matrix_of, tensor_of, AlgebraKind, BasisOfV, FunctorPoint, TensorElement};
use crate::linalg::{complexify, express_in_span, real_fixed_space, realify, spans_equal, CMatrix, QMatrix};
use crate::scalar::{GaussianRational, Rational};

use super::RealStructureDescriptor;

/// The map `φ: V → V` underlying a real structure, stored as the coordinates of
/// the image of every basis vector (extended antilinearly).
#[derive(Clone, Debug)]
pub struct PhiOnV {
    descriptor: RealStructureDescriptor,
    basis: Arc<BasisOfV>,
    images: Vec<Vec<GaussianRational>>,
}

fn point(kind: AlgebraKind, sig: AlgebraSignature, terms: Vec<(SuperNumber, usize)>) -> Result<FunctorPoint> {
    matrix_of(&TensorElement::from_terms(kind, sig, terms)?)
}

fn mismatch(msg: String) -> Error {
    Error::ExtractionMismatch(msg)
}

/// Reads `φ` off `Φ`: even images over `A = ℂ`, odd images from `Φ(θ ⊗ v) = θ̂ ⊗ φ(v)` over
/// `ℂ[θ, θ̂]`. Validates `φ² = ±id` by parity and the bracket rule on `V`.
pub fn extract_phi(d: &RealStructureDescriptor) -> Result<PhiOnV> {
    let kind = *d.kind();
    let basis = basis_of_v(&kind);
    let conj = d.conjugation();
    let ground = AlgebraSignature::ground(conj);
    let pair = AlgebraSignature::grassmann(1, conj)?;
    let theta_gen = pair.pair_generator(1, false).expect("one pair");
    let theta = SuperNumber::generator(pair, theta_gen);
    let theta_hat = theta.conjugate();
    let theta_hat_mono = *theta_hat.terms().next().expect("conjugate of a generator is a monomial").0;

    let mut images = Vec::with_capacity(basis.len());
    for i in 0..basis.len() {
        if !basis.is_odd(i) {
            let x = point(kind, ground, vec![(SuperNumber::one(ground), i)])?;
            let t = tensor_of(&d.eval(&x)?)?;
            images.push((0..basis.len()).map(|k| t.coeff(k).body()).collect());
        } else {
            let x = point(kind, pair, vec![(theta.clone(), i)])?;
            let fx = d.eval(&x)?;
            let t = tensor_of(&fx)?;
            let mut y = Vec::with_capacity(basis.len());
            for k in 0..basis.len() {
                let c = t.coeff(k);
                let yk = c.coeff(theta_hat_mono);
                if c != &SuperNumber::monomial(pair, theta_hat_mono, yk.clone()) {
                    return Err(mismatch(format!(
                        "{}: image of θ⊗v{i} has coefficient {c} on v{k}, not a multiple of {theta_hat}",
                        d.full_name()
                    )));
                }
                y.push(yk);
            }
            images.push(y);
        }
    }
    let phi = PhiOnV { descriptor: d.clone(), basis, images };

    for i in 0..phi.basis.len() {
        let sq = phi.square_coords(i);
        let sign = if d.is_graded() && phi.basis.is_odd(i) { -1 } else { 1 };
        let expect: Vec<GaussianRational> = (0..phi.basis.len())
            .map(|k| if k == i { GaussianRational::from_integer(sign) } else { GaussianRational::zero() })
            .collect();
        if sq != expect {
            return Err(mismatch(format!("{}: φ²(v{i}) ≠ {sign}·v{i}", d.full_name())));
        }
    }
    for i in 0..phi.basis.len() {
        for j in 0..phi.basis.len() {
            let lhs = phi.apply(&phi.basis.super_bracket(i, j))?;
            let (a, b) = (phi.image(i), phi.image(j));
            let ab = a.mul(&b);
            let ba = b.mul(&a);
            let sign = if phi.basis.is_odd(i) && phi.basis.is_odd(j) { 1 } else { -1 };
            let rhs = ab.add(&ba.scale(&GaussianRational::from_integer(sign)));
            if lhs != rhs {
                return Err(mismatch(format!("{}: φ([v{i}, v{j}]) ≠ [φ(v{i}), φ(v{j})]", d.full_name())));
            }
        }
    }
    Ok(phi)
}

impl PhiOnV {
    pub fn descriptor(&self) -> &RealStructureDescriptor {
        &self.descriptor
    }

    pub fn basis(&self) -> &BasisOfV {
        &self.basis
    }

    /// Coordinates of `φ(vᵢ)`.
    pub fn image_coords(&self, i: usize) -> &[GaussianRational] {
        &self.images[i]
    }

    /// `φ(vᵢ)` as a constant matrix.
    pub fn image(&self, i: usize) -> CMatrix {
        self.basis.combine(&self.images[i])
    }

    /// `φ(Σ cᵢ vᵢ) = Σ c̄ᵢ φ(vᵢ)` in coordinates.
    pub fn apply_coords(&self, c: &[GaussianRational]) -> Vec<GaussianRational> {
        let mut out = vec![GaussianRational::zero(); self.basis.len()];
        for (ci, img) in c.iter().zip(&self.images) {
            if ci.is_zero() {
                continue;
            }
            let cc = ci.conj();
            for (o, y) in out.iter_mut().zip(img) {
                *o += &(&cc * y);
            }
        }
        out
    }

    pub fn apply(&self, w: &CMatrix) -> Result<CMatrix> {
        Ok(self.basis.combine(&self.apply_coords(&self.basis.coordinates(w)?)))
    }

    /// Coordinates of `φ(φ(vᵢ))`.
    pub fn square_coords(&self, i: usize) -> Vec<GaussianRational> {
        self.apply_coords(&self.images[i])
    }

    /// `Φ_A` rebuilt from `φ` by `Φ_A(a ⊗ v) = â ⊗ φ(v)`.
    pub fn rebuild(&self, x: &FunctorPoint) -> Result<FunctorPoint> {
        let t = tensor_of(x)?;
        let sig = *x.signature();
        let mut terms = Vec::new();
        for (i, a) in t.terms() {
            let ah = a.conjugate();
            for (k, y) in self.images[i].iter().enumerate() {
                if !y.is_zero() {
                    terms.push((ah.scale(y), k));
                }
            }
        }
        point(*x.kind(), sig, terms)
    }

    /// ℚ-basis (in coordinates) of the φ-fixed vectors of the given parity.
    pub fn fixed_vectors(&self, odd: bool) -> Vec<Vec<GaussianRational>> {
        let idx: Vec<usize> = (0..self.basis.len()).filter(|&i| self.basis.is_odd(i) == odd).collect();
        let n = self.basis.len();
        real_fixed_space(idx.len(), |c| {
            let mut full = vec![GaussianRational::zero(); n];
            for (k, &i) in idx.iter().enumerate() {
                full[i] = c[k].clone();
            }
            let img = self.apply_coords(&full);
            idx.iter().map(|&i| img[i].clone()).collect()
        })
        .into_iter()
        .map(|v| {
            let mut full = vec![GaussianRational::zero(); n];
            for (k, &i) in idx.iter().enumerate() {
                full[i] = v[k].clone();
            }
            full
        })
        .collect()
    }
}

/// Coordinates on `(A ⊗ V)₀`: one complex coordinate per `(monomial, basis vector)` of equal parity.
#[derive(Clone, Debug)]
struct Slots {
    kind: AlgebraKind,
    sig: AlgebraSignature,
    slots: Vec<(Monomial, usize)>,
}

impl Slots {
    fn new(kind: AlgebraKind, sig: AlgebraSignature) -> Self {
        let basis = basis_of_v(&kind);
        let mut slots = Vec::new();
        for i in 0..basis.len() {
            for m in sig.monomials_of_parity(basis.is_odd(i)) {
                slots.push((m, i));
            }
        }
        Self { kind, sig, slots }
    }

    fn len(&self) -> usize {
        self.slots.len()
    }

    fn coords(&self, x: &FunctorPoint) -> Result<Vec<GaussianRational>> {
        let t = tensor_of(x)?;
        Ok(self.slots.iter().map(|(m, i)| t.coeff(*i).coeff(*m)).collect())
    }

    fn point(&self, c: &[GaussianRational]) -> Result<FunctorPoint> {
        let terms = self
            .slots
            .iter()
            .zip(c)
            .filter(|(_, c)| !c.is_zero())
            .map(|((m, i), c)| (SuperNumber::monomial(self.sig, *m, c.clone()), *i))
            .collect();
        point(self.kind, self.sig, terms)
    }

    /// Coordinates of `a ⊗ w` for homogeneous `a` and `w ∈ V` of the same parity.
    fn product(&self, a: &SuperNumber, w: &[GaussianRational]) -> Vec<GaussianRational> {
        self.slots.iter().map(|(m, i)| &a.coeff(*m) * &w[*i]).collect()
    }
}

/// The fixed points of `Φ_A` in `(A ⊗ V)₀` as an exact ℚ-basis.
#[derive(Clone, Debug)]
pub struct FixedPointBasis {
    pub descriptor: RealStructureDescriptor,
    pub signature: AlgebraSignature,
    /// `dim_ℂ (A ⊗ V)₀`.
    pub complex_dim: usize,
    pub vectors: Vec<FunctorPoint>,
    real_coords: Vec<Vec<Rational>>,
}

impl FixedPointBasis {
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Whether `x` lies in the ℚ-span of the basis.
    pub fn contains(&self, x: &FunctorPoint) -> Result<bool> {
        let slots = Slots::new(*x.kind(), *x.signature());
        let target = realify(&slots.coords(x)?);
        Ok(express_in_span(2 * slots.len(), &self.real_coords, &target).is_some())
    }
}

/// Solves `(Φ_A - id) w = 0` over ℚ after splitting coordinates into real and imaginary parts.
pub fn fixed_point_basis(d: &RealStructureDescriptor, sig: &AlgebraSignature) -> Result<FixedPointBasis> {
    let slots = Slots::new(*d.kind(), *sig);
    let n = slots.len();
    let mut columns = Vec::with_capacity(2 * n);
    let minus_i = -GaussianRational::i();
    for k in 0..n {
        let mut e = vec![GaussianRational::zero(); n];
        e[k] = GaussianRational::one();
        let img = slots.coords(&d.eval(&slots.point(&e)?)?)?;
        columns.push(realify(&img));
        // Φ(i·e) = -i·Φ(e)
        columns.push(realify(&img.iter().map(|c| c * &minus_i).collect::<Vec<_>>()));
    }
    let f = QMatrix::from_columns(2 * n, &columns).sub(&QMatrix::identity(2 * n));
    let real_coords = f.nullspace();
    let vectors = real_coords.iter().map(|v| slots.point(&complexify(v))).collect::<Result<Vec<_>>>()?;
    Ok(FixedPointBasis { descriptor: d.clone(), signature: *sig, complex_dim: n, vectors, real_coords })
}

/// ℚ-basis of the real elements of `A` of one parity, as superalgebra elements.
fn real_elements(sig: &AlgebraSignature, odd: bool) -> Vec<SuperNumber> {
    let monos = sig.monomials_of_parity(odd);
    let to_elem = |c: &[GaussianRational]| {
        monos
            .iter()
            .zip(c)
            .fold(SuperNumber::zero(*sig), |acc, (m, c)| &acc + &SuperNumber::monomial(*sig, *m, c.clone()))
    };
    real_fixed_space(monos.len(), |c| {
        let conj = to_elem(c).conjugate();
        monos.iter().map(|m| conj.coeff(*m)).collect()
    })
    .iter()
    .map(|c| to_elem(c))
    .collect()
}

/// Outcome of the representability test.
#[derive(Clone, Debug)]
pub enum Representability {
    /// The fixed points are exactly `(A^real ⊗ V^φ)₀`; `change_of_basis[k]` expresses fixed
    /// basis vector `k` over the products `a ⊗ w` (real `a`, φ-fixed `w`).
    Representable { fixed_dim: usize, product_count: usize, change_of_basis: Vec<Vec<Rational>> },
    /// A fixed point `a ⊗ v + â ⊗ φ(v)` outside `(A^real ⊗ V^φ)₀`.
    NotRepresentable { a: SuperNumber, v: CMatrix, phi_v: CMatrix, witness: FunctorPoint },
    /// Graded case over an algebra without odd pairs (or `V₁ = 0`): no witness exists here.
    NoOddWitness { reason: String },
}

/// The standard/graded dichotomy for the fixed points of `Φ_A`.
pub fn representability_check(d: &RealStructureDescriptor, sig: &AlgebraSignature) -> Result<Representability> {
    let phi = extract_phi(d)?;
    let fixed = fixed_point_basis(d, sig)?;
    let slots = Slots::new(*d.kind(), *sig);
    let len = 2 * slots.len();
    let mut products = Vec::new();
    for odd in [false, true] {
        let reals = real_elements(sig, odd);
        for w in phi.fixed_vectors(odd) {
            for a in &reals {
                products.push(realify(&slots.product(a, &w)));
            }
        }
    }
    if !d.is_graded() {
        if !spans_equal(len, &fixed.real_coords, &products) {
            return Err(Error::InternalInconsistency(format!(
                "{}: fixed points over {} differ from (A^real ⊗ V^φ)₀",
                d.full_name(),
                sig.describe()
            )));
        }
        let change_of_basis =
            fixed.real_coords.iter().map(|v| express_in_span(len, &products, v).expect("spans are equal")).collect();
        return Ok(Representability::Representable {
            fixed_dim: fixed.len(),
            product_count: products.len(),
            change_of_basis,
        });
    }
    let basis = phi.basis();
    let Some(v_idx) = (0..basis.len()).find(|&i| basis.is_odd(i)) else {
        return Ok(Representability::NoOddWitness { reason: format!("{} has no odd part", d.kind()) });
    };
    let Some(t1) = sig.pair_generator(1, false) else {
        return Ok(Representability::NoOddWitness { reason: format!("{} has no odd conjugate pair", sig.describe()) });
    };
    let a = SuperNumber::generator(*sig, t1);
    let a_hat = a.conjugate();
    let mut terms = vec![(a.clone(), v_idx)];
    for (k, y) in phi.image_coords(v_idx).iter().enumerate() {
        if !y.is_zero() {
            terms.push((a_hat.scale(y), k));
        }
    }
    let witness = point(*d.kind(), *sig, terms)?;
    let fixed_ok = d.eval(&witness)? == witness && fixed.contains(&witness)?;
    let outside = express_in_span(len, &products, &realify(&slots.coords(&witness)?)).is_none();
    if !(fixed_ok && outside) {
        return Err(Error::InternalInconsistency(format!(
            "{}: graded witness over {} did not validate (fixed: {fixed_ok}, outside: {outside})",
            d.full_name(),
            sig.describe()
        )));
    }
    Ok(Representability::NotRepresentable { a, v: basis.vector(v_idx).clone(), phi_v: phi.image(v_idx), witness })
}

/// `(a ⊗ v + Φ_A(a ⊗ v))/2 = a₁ ⊗ v₁ − a₂ ⊗ v₂` with `a = a₁ + i a₂`, `v = v₁ + i v₂`
/// split into real and φ-fixed parts.
#[derive(Clone, Debug)]
pub struct AveragingDecomposition {
    pub a1: SuperNumber,
    pub a2: SuperNumber,
    pub v1: CMatrix,
    pub v2: CMatrix,
    pub average: FunctorPoint,
    pub recombined: FunctorPoint,
}

impl AveragingDecomposition {
    pub fn holds(&self) -> bool {
        self.average == self.recombined
    }
}

/// Computes both sides of the averaging identity for `a ⊗ vᵢ` under a standard descriptor.
pub fn average_decompose(
    d: &RealStructureDescriptor,
    phi: &PhiOnV,
    a: &SuperNumber,
    i: usize,
) -> Result<AveragingDecomposition> {
    if d.is_graded() {
        return Err(Error::InapplicableDescriptor(format!("{}: averaging needs a standard structure", d.full_name())));
    }
    let sig = *a.signature();
    let kind = *d.kind();
    let basis = phi.basis();
    let half = GaussianRational::from_ratio(1, 2);
    let minus_half_i = &GaussianRational::i() * &GaussianRational::from_ratio(-1, 2);
    let x = point(kind, sig, vec![(a.clone(), i)])?;
    let fx = d.eval(&x)?;
    let sum = x.add(&fx)?;
    let average = FunctorPoint::new(kind, sum.matrix().scale_scalar(&half))?;

    let a_bar = a.conjugate();
    let a1 = (a + &a_bar).scale(&half);
    let a2 = (a - &a_bar).scale(&minus_half_i);
    let e: Vec<GaussianRational> =
        (0..basis.len()).map(|k| if k == i { GaussianRational::one() } else { GaussianRational::zero() }).collect();
    let pe = phi.apply_coords(&e);
    let v1: Vec<GaussianRational> = e.iter().zip(&pe).map(|(x, y)| &(x + y) * &half).collect();
    let v2: Vec<GaussianRational> = e.iter().zip(&pe).map(|(x, y)| &(x - y) * &minus_half_i).collect();
    let mut terms = Vec::new();
    for (k, c) in v1.iter().enumerate() {
        terms.push((a1.scale(c), k));
    }
    for (k, c) in v2.iter().enumerate() {
        terms.push((-a2.scale(c), k));
    }
    let recombined = point(kind, sig, terms)?;
    Ok(AveragingDecomposition { a1, a2, v1: basis.combine(&v1), v2: basis.combine(&v2), average, recombined })
}

/// Positive-definiteness of `B(X, Y) = −Re tr(XY)` on `(V^φ)₀`.
#[derive(Clone, Debug)]
pub struct CompactnessResult {
    pub descriptor: RealStructureDescriptor,
    /// ℚ-basis of `(V^φ)₀`.
    pub basis: Vec<CMatrix>,
    pub gram: QMatrix,
    /// Leading principal minors of the Gram matrix.
    pub minors: Vec<Rational>,
    pub compact: bool,
    /// A nonzero `X ∈ (V^φ)₀` with `B(X, X) ≤ 0` when not compact, with that value.
    pub indefinite_direction: Option<(CMatrix, Rational)>,
    basis_coords: Vec<Vec<Rational>>,
}

impl CompactnessResult {
    /// Whether two results have the same `(V^φ)₀`.
    pub fn same_subspace(&self, other: &Self) -> bool {
        self.descriptor.kind() == other.descriptor.kind()
            && self.basis_coords.first().map(Vec::len) == other.basis_coords.first().map(Vec::len)
            && spans_equal(self.basis_coords.first().map_or(0, Vec::len), &self.basis_coords, &other.basis_coords)
    }
}

fn form(x: &CMatrix, y: &CMatrix) -> Rational {
    -x.mul(y).trace().re
}

/// Sylvester test of `−Re tr(XY)` on the φ-fixed even subalgebra.
pub fn compactness_report(d: &RealStructureDescriptor) -> Result<CompactnessResult> {
    let phi = extract_phi(d)?;
    let coords = phi.fixed_vectors(false);
    let basis: Vec<CMatrix> = coords.iter().map(|c| phi.basis().combine(c)).collect();
    let k = basis.len();
    let mut gram = QMatrix::zeros(k, k);
    for i in 0..k {
        for j in 0..k {
            gram[(i, j)] = form(&basis[i], &basis[j]);
        }
    }
    let minors: Vec<Rational> = (1..=k).map(|r| gram.leading_minor(r)).collect();
    let first_bad = minors.iter().position(|m| !m.is_positive());
    let indefinite_direction = first_bad.map(|r| {
        // x = (G_r⁻¹(−g), 1, 0, …) gives B(x, x) = det(G_{r+1}) / det(G_r) ≤ 0
        let mut x = vec![Rational::zero(); k];
        x[r] = Rational::from_integer(1.into());
        if r > 0 {
            let lead =
                QMatrix::from_rows(&(0..r).map(|i| (0..r).map(|j| gram[(i, j)].clone()).collect()).collect::<Vec<_>>());
            let g: Vec<Rational> = (0..r).map(|i| -gram[(i, r)].clone()).collect();
            let sol = lead.solve(&g).expect("leading block is positive definite");
            x[..r].clone_from_slice(&sol);
        }
        let dir = x.iter().zip(&basis).fold(CMatrix::zeros(basis[0].rows(), basis[0].cols()), |acc, (c, b)| {
            acc.add(&b.scale(&GaussianRational::from_rational(c.clone())))
        });
        let value = form(&dir, &dir);
        (dir, value)
    });
    let basis_coords = coords.iter().map(|c| realify(c)).collect();
    Ok(CompactnessResult {
        descriptor: d.clone(),
        basis,
        gram,
        minors,
        compact: first_bad.is_none(),
        indefinite_direction,
        basis_coords,
    })
}

/// Compactness over every applicable descriptor and parameter choice of `kind`.
#[derive(Clone, Debug)]
pub struct CompactScan {
    pub kind: AlgebraKind,
    pub entries: Vec<CompactnessResult>,
    /// Descriptors whose φ could not be extracted, with the reason.
    pub errors: Vec<(String, String)>,
    /// Number of distinct `(V^φ)₀` among compact graded entries.
    pub distinct_compact_graded: usize,
}

impl CompactScan {
    pub fn compact_graded(&self) -> impl Iterator<Item = &CompactnessResult> {
        self.entries.iter().filter(|e| e.compact && e.descriptor.is_graded())
    }
}

pub fn compact_scan(kind: &AlgebraKind) -> CompactScan {
    let mut entries = Vec::new();
    let mut errors = Vec::new();
    for d in RealStructureDescriptor::enumerate(kind) {
        match compactness_report(&d) {
            Ok(r) => entries.push(r),
            Err(e) => errors.push((d.full_name(), e.to_string())),
        }
    }
    let mut groups: Vec<&CompactnessResult> = Vec::new();
    for e in entries.iter().filter(|e| e.compact && e.descriptor.is_graded()) {
        if !groups.iter().any(|g| g.same_subspace(e)) {
            groups.push(e);
        }
    }
    let distinct_compact_graded = groups.len();
    CompactScan { kind: *kind, entries, errors, distinct_compact_graded }
}
