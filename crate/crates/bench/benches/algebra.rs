use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use qdu::iso::{decide_graded_iso, random_composite, transform_composite};
use qdu::{build_system, Preset};
use qdu_bench::{long_word, sample_params};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn normal_form(c: &mut Criterion) {
    let mut group = c.benchmark_group("normal_form");
    for n in [3usize, 5] {
        let sys = build_system(Preset::QuiverDownUp { params: sample_params(n) }).unwrap().verify().unwrap();
        for reps in [1usize, 2] {
            let w = long_word(n, reps);
            group.bench_with_input(BenchmarkId::new(format!("n{n}"), reps), &w, |b, w| {
                b.iter(|| sys.normal_form(black_box(w)))
            });
        }
    }
    group.finish();
}

fn basis(c: &mut Criterion) {
    let mut group = c.benchmark_group("dimension_matrices");
    for n in [3usize, 6] {
        let sys = build_system(Preset::QuiverDownUp { params: sample_params(n) }).unwrap();
        group.bench_function(BenchmarkId::from_parameter(n), |b| b.iter(|| sys.dimension_matrices(black_box(8))));
    }
    group.finish();
}

fn confluence(c: &mut Criterion) {
    let sys = build_system(Preset::QuiverDownUp { params: sample_params(5) }).unwrap();
    c.bench_function("confluence_n5", |b| b.iter(|| sys.check_confluence()));
}

fn iso(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut p = sample_params(6);
    p.gamma.iter_mut().for_each(|g| *g = qdu::Scalar::zero());
    let ops = random_composite(&mut rng, 6, 4);
    let (q, _) = transform_composite(&ops, &p).unwrap();
    c.bench_function("decide_graded_iso_n6", |b| b.iter(|| decide_graded_iso(black_box(&p), black_box(&q))));
}

criterion_group!(benches, normal_form, basis, confluence, iso);
criterion_main!(benches);
