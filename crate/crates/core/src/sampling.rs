//! Deterministic random sampling of superalgebra elements.
//!
//! Every sample draws from its own ChaCha stream derived from
//! `(seed, label, index)`, so results do not depend on evaluation order.

use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{AlgebraSignature, Monomial, SuperNumber};
use crate::scalar::GaussianRational;

pub type SampleRng = ChaCha8Rng;

/// Stable 64-bit FNV-1a, used only to turn a label into a stream key.
fn label_key(label: &str) -> u64 {
    label.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3))
}

/// The generator for sample `index` of the experiment called `label`.
pub fn rng_for(seed: u64, label: &str, index: u64) -> SampleRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ label_key(label).rotate_left(17));
    rng.set_stream(index);
    rng
}

/// A coefficient from `{0, ±1, ±i, ±1/2}`.
pub fn coefficient(rng: &mut SampleRng) -> GaussianRational {
    match rng.random_range(0..7) {
        0 => GaussianRational::zero(),
        _ => nonzero_coefficient(rng),
    }
}

/// A coefficient from `{±1, ±i, ±1/2}`.
pub fn nonzero_coefficient(rng: &mut SampleRng) -> GaussianRational {
    let c = match rng.random_range(0..3) {
        0 => GaussianRational::one(),
        1 => GaussianRational::i(),
        _ => GaussianRational::from_ratio(1, 2),
    };
    if rng.random_bool(0.5) {
        -c
    } else {
        c
    }
}

/// A homogeneous element with at most `max_terms` monomials. Odd requests over an
/// algebra without odd generators give zero.
pub fn homogeneous(rng: &mut SampleRng, sig: &AlgebraSignature, odd: bool, max_terms: usize) -> SuperNumber {
    let pool = sig.monomials_of_parity(odd);
    let mut acc = SuperNumber::zero(*sig);
    if pool.is_empty() || max_terms == 0 {
        return acc;
    }
    let count = rng.random_range(1..=max_terms);
    for _ in 0..count {
        let m: Monomial = *pool.choose(rng).expect("pool is nonempty");
        acc = &acc + &SuperNumber::monomial(*sig, m, nonzero_coefficient(rng));
    }
    acc
}

/// An odd element that is a single generator times a nonzero coefficient.
pub fn odd_generator_term(rng: &mut SampleRng, sig: &AlgebraSignature) -> Option<SuperNumber> {
    let odd: Vec<_> = sig.generators().into_iter().filter(|g| g.is_odd()).collect();
    let g = *odd.choose(rng)?;
    Some(SuperNumber::generator(*sig, g).scale(&nonzero_coefficient(rng)))
}
