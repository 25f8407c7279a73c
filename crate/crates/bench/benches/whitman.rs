use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use freelat::bhom::{a_hom, n5_hom};
use freelat::verifier::{check_pi3_in_f3, search_pi3_in_f4};
use freelat::whitman::clear_caches;
use freelat::{canonical_form, kernel_table, leq};
use freelat_bench::fixture_pairs;

fn whitman(c: &mut Criterion) {
    let pairs = fixture_pairs();
    c.bench_function("leq/cold", |b| {
        b.iter_batched(
            clear_caches,
            |_| pairs.iter().filter(|(s, t)| leq(black_box(s), black_box(t))).count(),
            BatchSize::SmallInput,
        )
    });
    c.bench_function("leq/memoized", |b| {
        b.iter(|| pairs.iter().filter(|(s, t)| leq(black_box(s), black_box(t))).count())
    });
    c.bench_function("canonical_form", |b| {
        b.iter_batched(
            clear_caches,
            |_| pairs.iter().map(|(s, t)| canonical_form(s).size() + canonical_form(t).size()).sum::<usize>(),
            BatchSize::SmallInput,
        )
    });
}

fn bounded(c: &mut Criterion) {
    let (n5, a) = (n5_hom(), a_hom());
    c.bench_function("kernel_table/N5", |b| {
        b.iter_batched(clear_caches, |_| kernel_table(&n5).unwrap().len(), BatchSize::SmallInput)
    });
    c.bench_function("kernel_table/A", |b| {
        b.iter_batched(clear_caches, |_| kernel_table(&a).unwrap().len(), BatchSize::SmallInput)
    });
}

fn searches(c: &mut Criterion) {
    let mut g = c.benchmark_group("pi3");
    g.sample_size(10);
    g.bench_function("f3/size5", |b| b.iter(|| check_pi3_in_f3(black_box(5)).passed()));
    g.bench_function("f4/size4", |b| b.iter(|| search_pi3_in_f4(black_box(4)).passed()));
    g.finish();
}

criterion_group!(benches, whitman, bounded, searches);
criterion_main!(benches);
