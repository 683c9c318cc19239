//! Compares the rayon-backed batch map against the sequential fallback on
//! the two workloads that dominate the verify suites: quantum Killing form
//! pairings and exterior derivatives of projective-subalgebra elements.
//! `par::map` honors the `parallel` feature, `par::map_seq` is always
//! sequential, so one run of this binary reports both execution paths.

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use qflag_core::calculus::calc_ctx;
use qflag_core::killing::killing_pair;
use qflag_core::ncalg::{AlgebraSpec, NcPoly};
use qflag_core::par;
use qflag_core::bundles::sphere_zz;

fn generators(spec: AlgebraSpec) -> Vec<NcPoly> {
    (1..=spec.size)
        .flat_map(|i| {
            (1..=spec.size).map(move |j| NcPoly::gen(spec, i, j).expect("generator"))
        })
        .collect()
}

/// All (degree-two word, generator) pairings at size two: 64 independent
/// convolution evaluations per batch.
fn killing_batch(c: &mut Criterion) {
    let spec = AlgebraSpec::special_unitary(2, 2);
    let gens = generators(spec);
    let words: Vec<NcPoly> = gens
        .iter()
        .flat_map(|a| gens.iter().map(move |b| a.mul(b)))
        .collect();
    let items: Vec<(NcPoly, NcPoly)> = words
        .iter()
        .flat_map(|w| gens.iter().map(move |g| (w.clone(), g.clone())))
        .collect();
    let task = |(h, g): (NcPoly, NcPoly)| killing_pair(&h, &g).expect("pairing");

    let mut group = c.benchmark_group("killing-batch");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter_batched(|| items.clone(), |batch| par::map(batch, task), BatchSize::SmallInput)
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(|| items.clone(), |batch| par::map_seq(batch, task), BatchSize::SmallInput)
    });
    group.finish();
}

/// Exterior derivatives of the 81 degree-four projective-space elements
/// zz[i,j]*zz[k,l] at size three.
fn differential_batch(c: &mut Criterion) {
    let spec = AlgebraSpec::special_unitary(3, 3);
    let ctx = calc_ctx(spec).expect("calculus context");
    let mut items = Vec::new();
    for i in 1..=3u8 {
        for j in 1..=3u8 {
            for k in 1..=3u8 {
                for l in 1..=3u8 {
                    let left = sphere_zz(spec, i, j).expect("zz");
                    let right = sphere_zz(spec, k, l).expect("zz");
                    items.push(left.mul(&right));
                }
            }
        }
    }
    let task = |p: NcPoly| ctx.ext_d(&p).expect("differential");

    let mut group = c.benchmark_group("differential-batch");
    group.sample_size(10);
    group.bench_function("parallel", |b| {
        b.iter_batched(|| items.clone(), |batch| par::map(batch, &task), BatchSize::SmallInput)
    });
    group.bench_function("sequential", |b| {
        b.iter_batched(|| items.clone(), |batch| par::map_seq(batch, &task), BatchSize::SmallInput)
    });
    group.finish();
}

criterion_group!(benches, killing_batch, differential_batch);
criterion_main!(benches);
