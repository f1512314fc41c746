#![allow(dead_code)]

use superreal_core::sampling::{self, rng_for, SampleRng};
use superreal_core::{AlgebraSignature, Conjugation, Shape, SuperMatrix, SuperNumber};

pub fn standard(pairs: usize) -> AlgebraSignature {
    AlgebraSignature::new(pairs, 0, 0, Conjugation::Standard).unwrap()
}

pub fn graded(pairs: usize) -> AlgebraSignature {
    AlgebraSignature::new(pairs, 0, 0, Conjugation::Graded).unwrap()
}

pub fn sig_for(conj: Conjugation, pairs: usize) -> AlgebraSignature {
    AlgebraSignature::new(pairs, 0, 0, conj).unwrap()
}

pub fn rng(label: &str, i: usize) -> SampleRng {
    rng_for(7, label, i as u64)
}

/// A random even supermatrix whose diagonal bodies are dominated by 3, hence invertible.
pub fn invertible(shape: Shape, sig: AlgebraSignature, rng: &mut SampleRng) -> SuperMatrix {
    let k = shape.size();
    let entries = (0..k * k)
        .map(|t| {
            let (i, j) = (t / k, t % k);
            let x = sampling::homogeneous(rng, &sig, shape.is_odd_entry(i, j), 2);
            if i == j {
                &x + &SuperNumber::from_i64(sig, 3)
            } else {
                x
            }
        })
        .collect();
    SuperMatrix::new(shape, sig, entries).unwrap()
}

/// A random even supermatrix with arbitrary bodies.
pub fn even_matrix(shape: Shape, sig: AlgebraSignature, rng: &mut SampleRng) -> SuperMatrix {
    let k = shape.size();
    let entries = (0..k * k).map(|t| sampling::homogeneous(rng, &sig, shape.is_odd_entry(t / k, t % k), 2)).collect();
    SuperMatrix::new(shape, sig, entries).unwrap()
}
