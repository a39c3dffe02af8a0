use criterion::{black_box, criterion_group, criterion_main, Criterion};
use npdr_bench::{cycle, npdr_digraph};
use npdr_core::aut::{automorphisms, OrderedPartition};
use npdr_core::search::{prove_no_drr, prove_nonexistence};
use npdr_core::{build_npdr, parse_group, SearchBudget};

fn engine(c: &mut Criterion) {
    let mut group = c.benchmark_group("automorphisms");
    for (spec, n) in [("Q8", 8), ("Z2^4", 8), ("Z6", 5)] {
        let d = npdr_digraph(spec, n);
        let unit = OrderedPartition::unit(d.vertex_count());
        group.bench_function(format!("{spec} n={n}"), |b| b.iter(|| automorphisms(black_box(&d), &unit)));
    }
    let c64 = cycle(64);
    let unit = OrderedPartition::unit(64);
    group.bench_function("cycle 64", |b| b.iter(|| automorphisms(black_box(&c64), &unit)));
    group.finish();
}

fn pipeline(c: &mut Criterion) {
    let mut group = c.benchmark_group("build");
    group.sample_size(10);
    for (spec, n) in [("Z3^2", 6), ("D4", 4), ("Z2^5", 3)] {
        let g = parse_group(spec).unwrap();
        group.bench_function(format!("{spec} n={n}"), |b| {
            b.iter(|| build_npdr(&g, n, &SearchBudget::default()).unwrap())
        });
    }
    group.finish();
}

fn exhaustion(c: &mut Criterion) {
    let mut group = c.benchmark_group("exhaustive");
    group.sample_size(10);
    let z23 = parse_group("Z2^3").unwrap();
    group.bench_function("Z2^3 n=2", |b| b.iter(|| prove_nonexistence(&z23, 2, 1).unwrap()));
    let z32 = parse_group("Z3^2").unwrap();
    group.bench_function("no DRR Z3^2", |b| b.iter(|| prove_no_drr(&z32, 1).unwrap()));
    group.finish();
}

criterion_group!(benches, engine, pipeline, exhaustion);
criterion_main!(benches);
