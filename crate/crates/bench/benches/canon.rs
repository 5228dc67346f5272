use criterion::{black_box, criterion_group, criterion_main, BatchSize, Criterion};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use nilpair::oracle::{crosscheck, orbit_partition, CrosscheckOptions};
use nilpair::sample::random_pair;
use nilpair::{canonicalize, is_indecomposable, FieldSpec};

fn canon(c: &mut Criterion) {
    for (name, spec) in [
        ("Q", FieldSpec::Rationals),
        ("GF(3)", FieldSpec::prime(3).unwrap()),
        ("GF(5^2)", FieldSpec::quadratic(5).unwrap()),
    ] {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        c.bench_function(&format!("canonicalize n=4 {name}"), |b| {
            b.iter_batched(
                || random_pair(4, spec, &mut rng).0,
                |p| canonicalize(black_box(&p)).unwrap(),
                BatchSize::SmallInput,
            )
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    c.bench_function("is_indecomposable n=4 Q", |b| {
        b.iter_batched(
            || random_pair(4, FieldSpec::Rationals, &mut rng).0,
            |p| is_indecomposable(black_box(&p)).unwrap(),
            BatchSize::SmallInput,
        )
    });
}

fn oracle(c: &mut Criterion) {
    let mut g = c.benchmark_group("oracle");
    g.sample_size(10);
    g.bench_function("orbit_partition GF(2) n=3", |b| {
        b.iter(|| orbit_partition(2, 3).unwrap())
    });
    g.bench_function("crosscheck GF(2) n=3", |b| {
        b.iter(|| crosscheck(2, 3, CrosscheckOptions::default()).unwrap())
    });
    g.finish();
}

criterion_group!(benches, canon, oracle);
criterion_main!(benches);
