//! Superalgebra morphisms given by their values on generators.

use std::fmt;

use crate::algebra::{AlgebraSignature, Generator, SuperNumber};
use crate::error::{Error, Result};
use crate::scalar::GaussianRational;

/// Role of a generator inside its signature, used to relabel between signatures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorRole {
    /// `t{k}` (`partner == false`) or `t{k}~`, 1-based.
    Pair { k: usize, partner: bool },
    /// Self-conjugate odd generator, 1-based among the self-real ones.
    SelfReal(usize),
    /// Even nilpotent `e{k}`, 1-based.
    Even(usize),
}

impl AlgebraSignature {
    pub fn role(&self, g: Generator) -> GeneratorRole {
        let b = g.id() as usize;
        if !g.is_odd() {
            GeneratorRole::Even(b - 8 + 1)
        } else if b < 2 * self.odd_pairs() {
            GeneratorRole::Pair { k: b / 2 + 1, partner: b % 2 == 1 }
        } else {
            GeneratorRole::SelfReal(b - 2 * self.odd_pairs() + 1)
        }
    }

    pub fn generator_with_role(&self, role: GeneratorRole) -> Option<Generator> {
        match role {
            GeneratorRole::Pair { k, partner } => self.pair_generator(k, partner),
            GeneratorRole::SelfReal(j) => {
                (j >= 1 && j <= self.odd_selfreal()).then(|| Generator((2 * self.odd_pairs() + j - 1) as u8))
            }
            GeneratorRole::Even(k) => self.even_generator(k),
        }
    }
}

/// A morphism of superalgebras `source → target`, determined by generator images.
#[derive(Clone, PartialEq, Eq)]
pub struct AlgebraMorphism {
    name: String,
    source: AlgebraSignature,
    target: AlgebraSignature,
    images: Vec<(Generator, SuperNumber)>,
}

impl AlgebraMorphism {
    /// `images` are listed in the order of `source.generators()`.
    ///
    /// Each image must have the parity of its generator, and images of even
    /// generators must square to zero.
    pub fn new(
        name: impl Into<String>,
        source: AlgebraSignature,
        target: AlgebraSignature,
        images: Vec<SuperNumber>,
    ) -> Result<Self> {
        let name = name.into();
        let gens = source.generators();
        if gens.len() != images.len() {
            return Err(Error::InvalidMorphism(format!(
                "{name}: {} generators but {} images",
                gens.len(),
                images.len()
            )));
        }
        if source.conjugation() != target.conjugation() {
            return Err(Error::InvalidMorphism(format!("{name}: conjugation kinds differ")));
        }
        for (g, img) in gens.iter().zip(&images) {
            if img.signature() != &target {
                return Err(Error::SignatureMismatch(img.signature().describe(), target.describe()));
            }
            let ok = if g.is_odd() { img.is_odd() } else { img.is_even() && (img * img).is_zero() };
            if !ok {
                return Err(Error::InvalidMorphism(format!(
                    "{name}: image {img} of {} has the wrong parity or does not square to zero",
                    source.generator_name(*g)
                )));
            }
        }
        Ok(Self { name, source, target, images: gens.into_iter().zip(images).collect() })
    }

    pub fn identity(sig: AlgebraSignature) -> Self {
        let images = sig.generators().into_iter().map(|g| SuperNumber::generator(sig, g)).collect();
        Self::new("id", sig, sig, images).expect("identity is a morphism")
    }

    /// Sends every generator to the generator with the same role in `target`, or to zero.
    pub fn relabel(name: impl Into<String>, source: AlgebraSignature, target: AlgebraSignature) -> Result<Self> {
        let images = source
            .generators()
            .into_iter()
            .map(|g| match target.generator_with_role(source.role(g)) {
                Some(h) => SuperNumber::generator(target, h),
                None => SuperNumber::zero(target),
            })
            .collect();
        Self::new(name, source, target, images)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn source(&self) -> &AlgebraSignature {
        &self.source
    }

    pub fn target(&self) -> &AlgebraSignature {
        &self.target
    }

    pub fn image(&self, g: Generator) -> Option<&SuperNumber> {
        self.images.iter().find(|(h, _)| *h == g).map(|(_, x)| x)
    }

    /// Linear and multiplicative extension of the generator assignment.
    pub fn apply(&self, x: &SuperNumber) -> Result<SuperNumber> {
        if x.signature() != &self.source {
            return Err(Error::SignatureMismatch(x.signature().describe(), self.source.describe()));
        }
        let mut out = SuperNumber::zero(self.target);
        for (m, c) in x.terms() {
            let mut prod = SuperNumber::one(self.target);
            for g in m.generators() {
                let img = self.image(g).expect("monomial generators belong to the source");
                prod = &prod * img;
                if prod.is_zero() {
                    break;
                }
            }
            out = &out + &prod.scale(c);
        }
        Ok(out)
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &AlgebraMorphism) -> Result<AlgebraMorphism> {
        if first.target != self.source {
            return Err(Error::SignatureMismatch(first.target.describe(), self.source.describe()));
        }
        let images = first.images.iter().map(|(_, x)| self.apply(x)).collect::<Result<Vec<_>>>()?;
        Self::new(format!("{}∘{}", self.name, first.name), first.source, self.target, images)
    }

    /// Whether `f(conj g) = conj f(g)` for every generator `g`.
    pub fn respects_conjugation(&self) -> bool {
        self.images.iter().all(|(g, img)| {
            let (h, neg) = self.source.conjugate_generator(*g);
            let lhs = self.image(h).expect("conjugate generator exists");
            let lhs = if neg { -lhs } else { lhs.clone() };
            lhs == img.conjugate()
        })
    }
}

impl fmt::Debug for AlgebraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {} -> {} {{", self.name, self.source.describe(), self.target.describe())?;
        for (g, img) in &self.images {
            write!(f, " {} ↦ {};", self.source.generator_name(*g), img)?;
        }
        write!(f, " }}")
    }
}

/// Dual numbers `A(ε)`: one more square-zero even generator `ε`, with the
/// inclusion `i(x) = x + ε·0` and projection `p(x + εy) = x`.
pub fn adjoin_dual(sig: AlgebraSignature) -> Result<(AlgebraSignature, AlgebraMorphism, AlgebraMorphism)> {
    let ext = AlgebraSignature::new(sig.odd_pairs(), sig.odd_selfreal(), sig.even_nilpotents() + 1, sig.conjugation())?;
    let incl = AlgebraMorphism::relabel("i", sig, ext)?;
    let proj = AlgebraMorphism::relabel("p", ext, sig)?;
    Ok((ext, incl, proj))
}

/// The last even generator of a signature, i.e. the `ε` added by [`adjoin_dual`].
pub fn dual_generator(ext: &AlgebraSignature) -> Result<Generator> {
    ext.even_generator(ext.even_nilpotents())
        .ok_or_else(|| Error::InvalidSignature(format!("{} has no even generator", ext.describe())))
}

/// `v_a(x + εy) = x + ε·a·y` on `A(ε)`, for even `a` not involving `ε`.
pub fn dual_scaling(ext: AlgebraSignature, eps: Generator, a: &SuperNumber) -> Result<AlgebraMorphism> {
    if a.signature() != &ext {
        return Err(Error::SignatureMismatch(a.signature().describe(), ext.describe()));
    }
    if !a.is_even() || a.terms().any(|(m, _)| m.contains(eps)) {
        return Err(Error::InvalidMorphism("v_a needs an even a free of ε".into()));
    }
    let images = ext
        .generators()
        .into_iter()
        .map(|g| {
            let x = SuperNumber::generator(ext, g);
            if g == eps {
                a * &x
            } else {
                x
            }
        })
        .collect();
    AlgebraMorphism::new(format!("v_[{a}]"), ext, ext, images)
}

/// Kills the pair `t{k}, t{k}~`, relabelling the later pairs downwards.
pub fn kill_pair(sig: AlgebraSignature, k: usize) -> Result<AlgebraMorphism> {
    if k == 0 || k > sig.odd_pairs() {
        return Err(Error::OutOfRange(format!("pair {k} in {}", sig.describe())));
    }
    let target =
        AlgebraSignature::new(sig.odd_pairs() - 1, sig.odd_selfreal(), sig.even_nilpotents(), sig.conjugation())?;
    let images = sig
        .generators()
        .into_iter()
        .map(|g| {
            let role = match sig.role(g) {
                GeneratorRole::Pair { k: j, .. } if j == k => None,
                GeneratorRole::Pair { k: j, partner } if j > k => Some(GeneratorRole::Pair { k: j - 1, partner }),
                r => Some(r),
            };
            match role.and_then(|r| target.generator_with_role(r)) {
                Some(h) => SuperNumber::generator(target, h),
                None => SuperNumber::zero(target),
            }
        })
        .collect();
    AlgebraMorphism::new(format!("kill_pair{k}"), sig, target, images)
}

/// Inclusion into the algebra with one more conjugate pair.
pub fn include_extra_pair(sig: AlgebraSignature) -> Result<AlgebraMorphism> {
    let target =
        AlgebraSignature::new(sig.odd_pairs() + 1, sig.odd_selfreal(), sig.even_nilpotents(), sig.conjugation())?;
    AlgebraMorphism::relabel("include_pair", sig, target)
}

/// `t1 ↦ t1 + t2`, `t1~ ↦ t1~ + t2~`, everything else fixed.
pub fn pair_sum(sig: AlgebraSignature) -> Result<AlgebraMorphism> {
    if sig.odd_pairs() < 2 {
        return Err(Error::OutOfRange("pair_sum needs two pairs".into()));
    }
    let images = sig
        .generators()
        .into_iter()
        .map(|g| {
            let x = SuperNumber::generator(sig, g);
            match sig.role(g) {
                GeneratorRole::Pair { k: 1, partner } => {
                    let other = sig.pair_generator(2, partner).expect("second pair exists");
                    &x + &SuperNumber::generator(sig, other)
                }
                _ => x,
            }
        })
        .collect();
    AlgebraMorphism::new("pair_sum", sig, sig, images)
}

/// Exchanges the first two pairs.
pub fn swap_pairs(sig: AlgebraSignature) -> Result<AlgebraMorphism> {
    if sig.odd_pairs() < 2 {
        return Err(Error::OutOfRange("swap_pairs needs two pairs".into()));
    }
    let images = sig
        .generators()
        .into_iter()
        .map(|g| match sig.role(g) {
            GeneratorRole::Pair { k, partner } if k <= 2 => {
                SuperNumber::generator(sig, sig.pair_generator(3 - k, partner).expect("pair exists"))
            }
            _ => SuperNumber::generator(sig, g),
        })
        .collect();
    AlgebraMorphism::new("swap_pairs", sig, sig, images)
}

/// Multiplies every odd generator by a real rational.
pub fn scale_odd(sig: AlgebraSignature, factor: i64) -> Result<AlgebraMorphism> {
    let c = GaussianRational::from_integer(factor);
    let images = sig
        .generators()
        .into_iter()
        .map(|g| {
            let x = SuperNumber::generator(sig, g);
            if g.is_odd() {
                x.scale(&c)
            } else {
                x
            }
        })
        .collect();
    AlgebraMorphism::new(format!("scale_odd{factor}"), sig, sig, images)
}

/// Every odd generator `t ↦ t + t·e1`.
pub fn nilpotent_shift(sig: AlgebraSignature) -> Result<AlgebraMorphism> {
    let e = sig.even_generator(1).ok_or_else(|| Error::OutOfRange("nilpotent_shift needs an even generator".into()))?;
    let e = SuperNumber::generator(sig, e);
    let images = sig
        .generators()
        .into_iter()
        .map(|g| {
            let x = SuperNumber::generator(sig, g);
            if g.is_odd() {
                &x + &(&x * &e)
            } else {
                x
            }
        })
        .collect();
    AlgebraMorphism::new("nilpotent_shift", sig, sig, images)
}

/// Morphisms commuting with conjugation, used to test naturality of real structures on `sig`.
pub fn naturality_battery(sig: AlgebraSignature) -> Result<Vec<AlgebraMorphism>> {
    let mut out = vec![AlgebraMorphism::identity(sig)];
    for k in 1..=sig.odd_pairs() {
        out.push(kill_pair(sig, k)?);
    }
    if sig.odd_count() < crate::algebra::MAX_ODD - 1 {
        out.push(include_extra_pair(sig)?);
    }
    if sig.odd_pairs() >= 2 {
        out.push(pair_sum(sig)?);
        out.push(swap_pairs(sig)?);
    }
    out.push(scale_odd(sig, 2)?);
    if sig.even_nilpotents() >= 1 {
        out.push(nilpotent_shift(sig)?);
        let smaller =
            AlgebraSignature::new(sig.odd_pairs(), sig.odd_selfreal(), sig.even_nilpotents() - 1, sig.conjugation())?;
        out.push(AlgebraMorphism::relabel("drop_last_even", sig, smaller)?);
    }
    if sig.even_nilpotents() < crate::algebra::MAX_EVEN {
        let (_, incl, _) = adjoin_dual(sig)?;
        out.push(incl);
    }
    debug_assert!(out.iter().all(AlgebraMorphism::respects_conjugation));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Conjugation;

    fn p(sig: AlgebraSignature, s: &str) -> SuperNumber {
        SuperNumber::parse(sig, s).unwrap()
    }

    #[test]
    fn projection_kills_pair() {
        let sig = AlgebraSignature::grassmann(1, Conjugation::Graded).unwrap();
        let pi = kill_pair(sig, 1).unwrap();
        let x = p(sig, "(1) + t1*t1~");
        assert!(pi.apply(&x).unwrap().is_one());
    }

    #[test]
    fn identity_is_identity() {
        let sig = AlgebraSignature::new(2, 0, 1, Conjugation::Standard).unwrap();
        let x = p(sig, "(1/2) + (0+1i)*t1*t2~ + e1*t2");
        assert_eq!(AlgebraMorphism::identity(sig).apply(&x).unwrap(), x);
    }

    #[test]
    fn dual_numbers() {
        let c = AlgebraSignature::ground(Conjugation::Standard);
        let (ext, i, pr) = adjoin_dual(c).unwrap();
        assert_eq!(ext.even_nilpotents(), 1);
        assert!(pr.apply(&p(ext, "(1) + (3)*e1")).unwrap().is_one());
        assert_eq!(pr.compose(&i).unwrap(), {
            let mut id = AlgebraMorphism::identity(c);
            id.name = "p∘i".into();
            id
        });

        let (ext2, _, _) = adjoin_dual(ext).unwrap();
        let eps = p(ext2, "e1");
        let eta = p(ext2, "e2");
        assert_eq!(&eps * &eta, &eta * &eps);
        assert!(!(&eps * &eta).is_zero());
        assert!((&eps * &eps).is_zero() && (&eta * &eta).is_zero());
        for kind in [Conjugation::Standard, Conjugation::Graded] {
            let (e, _, _) = adjoin_dual(AlgebraSignature::grassmann(1, kind).unwrap()).unwrap();
            assert!(p(e, "e1").is_real());
        }
        assert!(matches!(
            adjoin_dual(AlgebraSignature::new(0, 0, 4, Conjugation::Standard).unwrap()),
            Err(Error::CapExceeded(_))
        ));
    }

    #[test]
    fn v_a_scales_the_dual_part() {
        let sig = AlgebraSignature::grassmann(1, Conjugation::Standard).unwrap();
        let (ext, _, _) = adjoin_dual(sig).unwrap();
        let eps = dual_generator(&ext).unwrap();
        let a = p(ext, "(2) + t1*t1~");
        let v = dual_scaling(ext, eps, &a).unwrap();
        let x = p(ext, "(1) + t1");
        let y = p(ext, "(1/2) + t1~");
        let z = &x + &(&p(ext, "e1") * &y);
        let expect = &x + &(&p(ext, "e1") * &(&a * &y));
        assert_eq!(v.apply(&z).unwrap(), expect);
        assert!(dual_scaling(ext, eps, &p(ext, "t1")).is_err());
    }

    #[test]
    fn battery_respects_conjugation() {
        for conj in [Conjugation::Standard, Conjugation::Graded] {
            for (pairs, evens) in [(0, 0), (1, 0), (2, 1), (2, 0)] {
                let sig = AlgebraSignature::new(pairs, 0, evens, conj).unwrap();
                for f in naturality_battery(sig).unwrap() {
                    assert!(f.respects_conjugation(), "{f:?}");
                }
            }
        }
    }

    #[test]
    fn morphisms_commute_with_conjugation_on_elements() {
        let sig = AlgebraSignature::new(2, 0, 1, Conjugation::Graded).unwrap();
        let x = p(sig, "(1+1i) + (1/2)*t1*t2~ + t2 + (0-1i)*e1*t1~*t2");
        for f in naturality_battery(sig).unwrap() {
            assert_eq!(f.apply(&x.conjugate()).unwrap(), f.apply(&x).unwrap().conjugate(), "{}", f.name());
        }
    }

    #[test]
    fn wrong_parity_rejected() {
        let sig = AlgebraSignature::grassmann(1, Conjugation::Standard).unwrap();
        let bad = vec![SuperNumber::one(sig), SuperNumber::zero(sig)];
        assert!(AlgebraMorphism::new("bad", sig, sig, bad).is_err());
    }
}
