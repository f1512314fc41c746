use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;
use superreal_core::lie::{even_rules_bracket, random_tensor};
use superreal_core::real_structures::{compactness_report, extract_phi, verify_real_structure, VerifyOptions};
use superreal_core::sampling::rng_for;
use superreal_core::supergroups::{sample, verify_group_real_structure};
use superreal_core::{
    AlgebraKind, AlgebraSignature, Conjugation, GroupKind, GroupRealStructureDescriptor, RealStructureDescriptor,
};

fn standard(pairs: usize) -> AlgebraSignature {
    AlgebraSignature::new(pairs, 0, 0, Conjugation::Standard).unwrap()
}

fn kernel(c: &mut Criterion) {
    let a = standard(2);
    let kind = AlgebraKind::sl(2, 2).unwrap();
    let mut rng = rng_for(1, "bench", 0);
    let x = random_tensor(&kind, &a, &mut rng, 4);
    let y = random_tensor(&kind, &a, &mut rng, 4);
    c.bench_function("even-rules bracket sl(2|2), 2 pairs", |b| {
        b.iter(|| even_rules_bracket(black_box(&x), black_box(&y)).unwrap())
    });

    let g = GroupKind::sl(2, 2).unwrap();
    let m = sample(&g, &a, &mut rng).unwrap();
    c.bench_function("berezinian SL(2|2), 2 pairs", |b| b.iter(|| black_box(m.matrix()).berezinian().unwrap()));
    c.bench_function("inverse SL(2|2), 2 pairs", |b| b.iter(|| black_box(m.matrix()).invert().unwrap()));
}

fn structures(c: &mut Criterion) {
    let d = RealStructureDescriptor::parse("sl(2|1):omega2(1,1)").unwrap();
    let graded = AlgebraSignature::new(1, 0, 0, Conjugation::Graded).unwrap();
    c.bench_function("verify omega2(1,1) on sl(2|1), 10 samples", |b| {
        b.iter(|| verify_real_structure(&d, &graded, VerifyOptions::new(10, 0)).unwrap())
    });
    c.bench_function("extract phi omega2(1,1)", |b| b.iter(|| extract_phi(black_box(&d)).unwrap()));
    c.bench_function("compactness omega2(1,1)", |b| b.iter(|| compactness_report(black_box(&d)).unwrap()));

    let lift = GroupRealStructureDescriptor::parse("SL(2|1):Sigma1(1,1)").unwrap();
    c.bench_function("group verify Sigma1(1,1), 5 samples", |b| {
        b.iter(|| verify_group_real_structure(&lift, &standard(1), VerifyOptions::new(5, 0)).unwrap())
    });
}

criterion_group! {
    name = benches;
    config = Criterion::default().sample_size(10);
    targets = kernel, structures
}
criterion_main!(benches);
