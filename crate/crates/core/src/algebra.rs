//! Finitely generated supercommutative algebras over ℚ(i) with a standard or
//! graded conjugation.
//!
//! Odd generators come in conjugate pairs `t_k, t_k~` (plus, for the standard
//! conjugation only, self-conjugate odd generators); even generators `e_k` are
//! square-zero and self-conjugate. Elements are stored in the monomial basis
//! with generator ids ascending, so equality is structural.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::scalar::GaussianRational;

pub const MAX_ODD: usize = 8;
pub const MAX_EVEN: usize = 4;
const EVEN_SHIFT: u8 = 8;
const ODD_MASK: u16 = 0x00ff;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Conjugation {
    /// `conj(conj(a)) = a`
    Standard,
    /// `conj(conj(a)) = (-1)^|a| a`
    Graded,
}

impl fmt::Display for Conjugation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Conjugation::Standard => f.write_str("standard"),
            Conjugation::Graded => f.write_str("graded"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
    Mixed,
}

impl Parity {
    pub fn from_bit(odd: bool) -> Self {
        if odd {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    pub fn is_homogeneous(self) -> bool {
        self != Parity::Mixed
    }
}

/// Shape of a superalgebra: how many generators of each sort, and which conjugation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AlgebraSignature {
    odd_pairs: u8,
    odd_selfreal: u8,
    even_nilpotents: u8,
    conjugation: Conjugation,
}

impl AlgebraSignature {
    pub fn new(
        odd_pairs: usize,
        odd_selfreal: usize,
        even_nilpotents: usize,
        conjugation: Conjugation,
    ) -> Result<Self> {
        if conjugation == Conjugation::Graded && odd_selfreal > 0 {
            return Err(Error::InvalidSignature("graded conjugation admits no self-conjugate odd generators".into()));
        }
        if 2 * odd_pairs + odd_selfreal > MAX_ODD {
            return Err(Error::CapExceeded(format!("{} odd generators (max {MAX_ODD})", 2 * odd_pairs + odd_selfreal)));
        }
        if even_nilpotents > MAX_EVEN {
            return Err(Error::CapExceeded(format!("{even_nilpotents} even nilpotents (max {MAX_EVEN})")));
        }
        Ok(Self {
            odd_pairs: odd_pairs as u8,
            odd_selfreal: odd_selfreal as u8,
            even_nilpotents: even_nilpotents as u8,
            conjugation,
        })
    }

    /// The ground field ℂ (here ℚ(i)) with the given conjugation kind.
    pub fn ground(conjugation: Conjugation) -> Self {
        Self::new(0, 0, 0, conjugation).expect("empty signature is valid")
    }

    /// `ℂ[t1, t1~, …, tk, tk~]`.
    pub fn grassmann(pairs: usize, conjugation: Conjugation) -> Result<Self> {
        Self::new(pairs, 0, 0, conjugation)
    }

    pub fn odd_pairs(&self) -> usize {
        self.odd_pairs as usize
    }

    pub fn odd_selfreal(&self) -> usize {
        self.odd_selfreal as usize
    }

    pub fn even_nilpotents(&self) -> usize {
        self.even_nilpotents as usize
    }

    pub fn conjugation(&self) -> Conjugation {
        self.conjugation
    }

    pub fn odd_count(&self) -> usize {
        2 * self.odd_pairs() + self.odd_selfreal()
    }

    pub fn generator_count(&self) -> usize {
        self.odd_count() + self.even_nilpotents()
    }

    /// Same generators, different conjugation kind (selfreal odd generators must be absent for graded).
    pub fn with_conjugation(&self, conjugation: Conjugation) -> Result<Self> {
        Self::new(self.odd_pairs(), self.odd_selfreal(), self.even_nilpotents(), conjugation)
    }

    /// Dimension over ℚ(i) of the whole algebra.
    pub fn dim(&self) -> usize {
        1 << self.generator_count()
    }

    pub(crate) fn mask(&self) -> u16 {
        let odd = (1u16 << self.odd_count()) - 1;
        let even = ((1u16 << self.even_nilpotents()) - 1) << EVEN_SHIFT;
        odd | even
    }

    /// Generator ids, odd ones first, ascending.
    pub fn generators(&self) -> Vec<Generator> {
        let odd = (0..self.odd_count() as u8).map(Generator);
        let even = (0..self.even_nilpotents() as u8).map(|k| Generator(EVEN_SHIFT + k));
        odd.chain(even).collect()
    }

    pub fn contains(&self, g: Generator) -> bool {
        self.mask() & (1 << g.0) != 0
    }

    /// Odd generator `t{k}` (1-based pair index), or its partner `t{k}~`.
    pub fn pair_generator(&self, k: usize, partner: bool) -> Option<Generator> {
        (k >= 1 && k <= self.odd_pairs()).then(|| Generator((2 * (k - 1) + partner as usize) as u8))
    }

    /// Even nilpotent `e{k}` (1-based).
    pub fn even_generator(&self, k: usize) -> Option<Generator> {
        (k >= 1 && k <= self.even_nilpotents()).then(|| Generator(EVEN_SHIFT + (k - 1) as u8))
    }

    pub fn generator_name(&self, g: Generator) -> String {
        let b = g.0 as usize;
        if g.is_odd() {
            if b < 2 * self.odd_pairs() {
                let tilde = if b % 2 == 1 { "~" } else { "" };
                format!("t{}{}", b / 2 + 1, tilde)
            } else {
                format!("t{}", self.odd_pairs() + (b - 2 * self.odd_pairs()) + 1)
            }
        } else {
            format!("e{}", b - EVEN_SHIFT as usize + 1)
        }
    }

    /// Image of a generator under the conjugation: `(generator, negated)`.
    pub fn conjugate_generator(&self, g: Generator) -> (Generator, bool) {
        let b = g.0 as usize;
        if !g.is_odd() || b >= 2 * self.odd_pairs() {
            return (g, false);
        }
        let partner = Generator((b ^ 1) as u8);
        match self.conjugation {
            Conjugation::Standard => (partner, false),
            // t ↦ t~, t~ ↦ -t
            Conjugation::Graded => (partner, b % 2 == 1),
        }
    }

    /// Every monomial of the algebra, in ascending id order.
    pub fn monomials(&self) -> Vec<Monomial> {
        let mask = self.mask();
        (0..=mask).filter(|m| m & !mask == 0).map(Monomial).collect()
    }

    pub fn monomials_of_parity(&self, odd: bool) -> Vec<Monomial> {
        self.monomials().into_iter().filter(|m| m.is_odd() == odd).collect()
    }

    /// Short human-readable description, e.g. `C[t1,t1~|e1] (graded)`.
    pub fn describe(&self) -> String {
        let names: Vec<String> = self.generators().iter().map(|&g| self.generator_name(g)).collect();
        if names.is_empty() {
            format!("C ({})", self.conjugation)
        } else {
            format!("C[{}] ({})", names.join(","), self.conjugation)
        }
    }
}

/// A generator id: odd generators use ids `0..8`, even nilpotents `8..12`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Generator(pub(crate) u8);

impl Generator {
    pub fn is_odd(self) -> bool {
        self.0 < EVEN_SHIFT
    }

    pub fn id(self) -> u8 {
        self.0
    }
}

/// A product of distinct generators in ascending id order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Monomial(u16);

impl Monomial {
    pub const ONE: Monomial = Monomial(0);

    pub fn from_generator(g: Generator) -> Self {
        Monomial(1 << g.0)
    }

    pub(crate) fn bits(self) -> u16 {
        self.0
    }

    pub(crate) fn from_bits(bits: u16) -> Self {
        Monomial(bits)
    }

    pub fn is_one(self) -> bool {
        self.0 == 0
    }

    pub fn degree(self) -> u32 {
        self.0.count_ones()
    }

    pub fn odd_degree(self) -> u32 {
        (self.0 & ODD_MASK).count_ones()
    }

    pub fn is_odd(self) -> bool {
        self.odd_degree() % 2 == 1
    }

    pub fn contains(self, g: Generator) -> bool {
        self.0 & (1 << g.0) != 0
    }

    pub fn generators(self) -> impl Iterator<Item = Generator> {
        (0..16u8).filter(move |b| self.0 & (1 << b) != 0).map(Generator)
    }

    /// Product `self · other` as `(monomial, negated)`, or `None` if a generator repeats.
    ///
    /// The sign counts the transpositions needed to merge the odd parts into
    /// ascending order.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Monomial) -> Option<(Monomial, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        let a = self.0 & ODD_MASK;
        let mut b = other.0 & ODD_MASK;
        let mut swaps = 0u32;
        while b != 0 {
            let j = b.trailing_zeros();
            swaps += (a >> (j + 1)).count_ones();
            b &= b - 1;
        }
        Some((Monomial(self.0 | other.0), swaps % 2 == 1))
    }

    fn display(self, sig: &AlgebraSignature) -> String {
        self.generators().map(|g| sig.generator_name(g)).collect::<Vec<_>>().join("*")
    }
}

/// An element of a superalgebra, stored as monomial → coefficient with no zero coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SuperNumber {
    sig: AlgebraSignature,
    terms: BTreeMap<Monomial, GaussianRational>,
}

fn check_same(a: &AlgebraSignature, b: &AlgebraSignature) -> Result<()> {
    if a != b {
        return Err(Error::SignatureMismatch(a.describe(), b.describe()));
    }
    Ok(())
}

impl SuperNumber {
    pub fn zero(sig: AlgebraSignature) -> Self {
        Self { sig, terms: BTreeMap::new() }
    }

    pub fn one(sig: AlgebraSignature) -> Self {
        Self::scalar(sig, GaussianRational::one())
    }

    pub fn scalar(sig: AlgebraSignature, c: GaussianRational) -> Self {
        Self::monomial(sig, Monomial::ONE, c)
    }

    pub fn from_i64(sig: AlgebraSignature, n: i64) -> Self {
        Self::scalar(sig, GaussianRational::from_integer(n))
    }

    pub fn monomial(sig: AlgebraSignature, m: Monomial, c: GaussianRational) -> Self {
        assert!(m.bits() & !sig.mask() == 0, "monomial outside the signature");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Self { sig, terms }
    }

    pub fn generator(sig: AlgebraSignature, g: Generator) -> Self {
        Self::monomial(sig, Monomial::from_generator(g), GaussianRational::one())
    }

    /// Builds from arbitrary `(monomial, coefficient)` pairs, summing duplicates.
    pub fn from_terms(sig: AlgebraSignature, terms: impl IntoIterator<Item = (Monomial, GaussianRational)>) -> Self {
        let mut out = Self::zero(sig);
        for (m, c) in terms {
            assert!(m.bits() & !sig.mask() == 0, "monomial outside the signature");
            out.add_term(m, &c, false);
        }
        out
    }

    pub fn signature(&self) -> &AlgebraSignature {
        &self.sig
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, m: Monomial) -> GaussianRational {
        self.terms.get(&m).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.coeff(Monomial::ONE).is_one()
    }

    /// Coefficient of the empty monomial.
    pub fn body(&self) -> GaussianRational {
        self.coeff(Monomial::ONE)
    }

    /// `Even`/`Odd` when every stored monomial has that parity (zero counts as even).
    pub fn parity(&self) -> Parity {
        let mut odd = self.terms.keys().map(|m| m.is_odd());
        match odd.next() {
            None => Parity::Even,
            Some(first) => {
                if odd.all(|o| o == first) {
                    Parity::from_bit(first)
                } else {
                    Parity::Mixed
                }
            }
        }
    }

    pub fn is_even(&self) -> bool {
        self.terms.keys().all(|m| !m.is_odd())
    }

    pub fn is_odd(&self) -> bool {
        self.terms.keys().all(|m| m.is_odd())
    }

    pub fn even_part(&self) -> Self {
        self.filter(|m| !m.is_odd())
    }

    pub fn odd_part(&self) -> Self {
        self.filter(|m| m.is_odd())
    }

    pub(crate) fn filter(&self, keep: impl Fn(Monomial) -> bool) -> Self {
        Self {
            sig: self.sig,
            terms: self.terms.iter().filter(|(m, _)| keep(**m)).map(|(m, c)| (*m, c.clone())).collect(),
        }
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational, negate: bool) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(if negate { -c } else { c.clone() });
            }
            Entry::Occupied(mut o) => {
                if negate {
                    *o.get_mut() -= c;
                } else {
                    *o.get_mut() += c;
                }
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        check_same(&self.sig, &other.sig)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c, false);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        check_same(&self.sig, &other.sig)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c, true);
        }
        Ok(out)
    }

    /// Supercommutative product.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        check_same(&self.sig, &other.sig)?;
        let mut out = Self::zero(self.sig);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, neg)) = ma.mul(*mb) {
                    out.add_term(m, &(ca * cb), neg);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        if c.is_zero() {
            return Self::zero(self.sig);
        }
        Self { sig: self.sig, terms: self.terms.iter().map(|(m, x)| (*m, x * c)).collect() }
    }

    pub fn neg(&self) -> Self {
        Self { sig: self.sig, terms: self.terms.iter().map(|(m, x)| (*m, -x)).collect() }
    }

    /// Conjugation of a single monomial as a signed monomial.
    fn conjugate_monomial(&self, m: Monomial) -> (Monomial, bool) {
        let mut acc = Monomial::ONE;
        let mut neg = false;
        for g in m.generators() {
            let (h, n) = self.sig.conjugate_generator(g);
            let (p, s) = acc.mul(Monomial::from_generator(h)).expect("conjugation permutes generators");
            acc = p;
            neg ^= n ^ s;
        }
        (acc, neg)
    }

    /// The signature's conjugation: antilinear on coefficients, multiplicative on monomials.
    pub fn conjugate(&self) -> Self {
        let mut out = Self::zero(self.sig);
        for (m, c) in &self.terms {
            let (cm, neg) = self.conjugate_monomial(*m);
            out.add_term(cm, &c.conj(), neg);
        }
        out
    }

    pub fn is_real(&self) -> bool {
        &self.conjugate() == self
    }

    /// Inverse via `body⁻¹ · Σ (-n)^k` where `n = x/body - 1` is nilpotent.
    pub fn invert(&self) -> Result<Self> {
        let body = self.body();
        let inv_body = body.inv().ok_or_else(|| Error::NotInvertible(format!("zero body in {self}")))?;
        let one = Self::one(self.sig);
        let nil = self.scale(&inv_body).try_sub(&one)?.neg();
        let mut sum = one.clone();
        let mut power = one;
        for _ in 0..=self.sig.generator_count() {
            power = power.try_mul(&nil)?;
            if power.is_zero() {
                break;
            }
            sum = sum.try_add(&power)?;
        }
        Ok(sum.scale(&inv_body))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.sig);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Re-expresses the element in a signature that contains every generator it uses.
    pub fn embed(&self, target: AlgebraSignature) -> Result<Self> {
        if self.terms.keys().any(|m| m.bits() & !target.mask() != 0) {
            return Err(Error::SignatureMismatch(self.sig.describe(), target.describe()));
        }
        Ok(Self { sig: target, terms: self.terms.clone() })
    }

    /// Parses the literal grammar, e.g. `(1) + (3/2+1i)*t1*t2~`.
    pub fn parse(sig: AlgebraSignature, s: &str) -> Result<Self, ParseError> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(ParseError::new("empty literal"));
        }
        let mut out = Self::zero(sig);
        for term in split_top_level(&compact, '+')? {
            let mut coeff = GaussianRational::one();
            let mut mono = Self::one(sig);
            for (k, factor) in split_top_level(term, '*')?.into_iter().enumerate() {
                if factor.starts_with('(') {
                    if k != 0 {
                        return Err(ParseError::new(format!("coefficient must lead the term `{term}`")));
                    }
                    coeff = factor.parse()?;
                } else {
                    let g = parse_generator(&sig, factor)?;
                    mono = &mono * &Self::generator(sig, g);
                }
            }
            out = &out + &mono.scale(&coeff);
        }
        Ok(out)
    }
}

fn split_top_level(s: &str, sep: char) -> Result<Vec<&str>, ParseError> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ if c == sep && depth == 0 => {
                parts.push(&s[start..k]);
                start = k + c.len_utf8();
            }
            _ => {}
        }
        if depth < 0 {
            return Err(ParseError::new(format!("unbalanced parentheses in `{s}`")));
        }
    }
    if depth != 0 {
        return Err(ParseError::new(format!("unbalanced parentheses in `{s}`")));
    }
    parts.push(&s[start..]);
    if parts.iter().any(|p| p.is_empty()) {
        return Err(ParseError::new(format!("empty term in `{s}`")));
    }
    Ok(parts)
}

fn parse_generator(sig: &AlgebraSignature, s: &str) -> Result<Generator, ParseError> {
    let bad = || ParseError::new(format!("unknown generator `{s}` in {}", sig.describe()));
    if let Some(rest) = s.strip_prefix('t') {
        let (digits, tilde) = match rest.strip_suffix('~') {
            Some(d) => (d, true),
            None => (rest, false),
        };
        let k: usize = digits.parse().map_err(|_| bad())?;
        if k >= 1 && k <= sig.odd_pairs() {
            return sig.pair_generator(k, tilde).ok_or_else(bad);
        }
        if !tilde && k > sig.odd_pairs() && k <= sig.odd_pairs() + sig.odd_selfreal() {
            return Ok(Generator((2 * sig.odd_pairs() + k - sig.odd_pairs() - 1) as u8));
        }
        Err(bad())
    } else if let Some(rest) = s.strip_prefix('e') {
        let k: usize = rest.parse().map_err(|_| bad())?;
        sig.even_generator(k).ok_or_else(bad)
    } else {
        Err(bad())
    }
}

impl fmt::Display for SuperNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("(0)");
        }
        // degree-major order reads naturally
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by_key(|(m, _)| (m.degree(), **m));
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(m, c)| if m.is_one() { c.to_string() } else { format!("{c}*{}", m.display(&self.sig)) })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

impl fmt::Debug for SuperNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

macro_rules! op_impl {
    ($tr:ident, $m:ident, $try:ident) => {
        impl std::ops::$tr for &SuperNumber {
            type Output = SuperNumber;
            fn $m(self, rhs: &SuperNumber) -> SuperNumber {
                self.$try(rhs).expect("superalgebra operands must share a signature")
            }
        }
        impl std::ops::$tr for SuperNumber {
            type Output = SuperNumber;
            fn $m(self, rhs: SuperNumber) -> SuperNumber {
                (&self).$m(&rhs)
            }
        }
    };
}
op_impl!(Add, add, try_add);
op_impl!(Sub, sub, try_sub);
op_impl!(Mul, mul, try_mul);

impl std::ops::Neg for &SuperNumber {
    type Output = SuperNumber;
    fn neg(self) -> SuperNumber {
        SuperNumber::neg(self)
    }
}

impl std::ops::Neg for SuperNumber {
    type Output = SuperNumber;
    fn neg(self) -> SuperNumber {
        SuperNumber::neg(&self)
    }
}
