use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use subsys_core::cyclotomic::DefiningSet;
use subsys_core::enumerate::{EnumOptions, Exec};
use subsys_core::galois::FieldSpec;
use subsys_core::lincode::LinearCode;

fn bch(q: u32, n: usize, delta: usize) -> LinearCode {
    let field = FieldSpec::of_order(q).unwrap();
    LinearCode::from_defining_set(&field, &DefiningSet::bch(n, q, delta, 1).unwrap()).unwrap()
}

fn min_weight(c: &mut Criterion) {
    let cases = [
        ("bch_63_2", bch(2, 63, 14)),
        ("bch_21_4", bch(4, 21, 4)),
        ("bch_24_5", bch(5, 24, 10)),
    ];
    let mut group = c.benchmark_group("min_weight");
    group.sample_size(10);
    for (name, code) in &cases {
        for (label, exec) in [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)] {
            let opts = EnumOptions { budget: 1 << 34, exec };
            group.bench_with_input(BenchmarkId::new(*name, label), code, |b, code| {
                b.iter(|| code.min_weight(&opts).unwrap())
            });
        }
    }
    group.finish();
}

criterion_group!(benches, min_weight);
criterion_main!(benches);
