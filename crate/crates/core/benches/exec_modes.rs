use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use hfree::cartan::{find_subdiagram, finite_matrix};
use hfree::classify::search_rank2;
use hfree::exec::Exec;
use hfree::modfam::{build_c, Param};
use hfree::verify::relation_residuals;

const MODES: [(&str, Exec); 2] = [("parallel", Exec::Parallel), ("sequential", Exec::Sequential)];

fn rank2(c: &mut Criterion) {
    let mut g = c.benchmark_group("search_rank2_A22_bound3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| b.iter(|| search_rank2(2, 2, 3, exec).unwrap()));
    }
    g.finish();
}

fn relations(c: &mut Criterion) {
    let m = build_c(4, &Param::symbolic(4), &[1, 3]).unwrap();
    let mut g = c.benchmark_group("relation_residuals_C4_symbolic");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| b.iter(|| relation_residuals(&m, exec).unwrap()));
    }
    g.finish();
}

fn subdiagrams(c: &mut Criterion) {
    let e8 = finite_matrix('E', 8).unwrap();
    let pattern = finite_matrix('B', 3).unwrap().diagram();
    let mut g = c.benchmark_group("find_subdiagram_E8_miss");
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &exec| b.iter(|| find_subdiagram(&e8, &pattern, exec)));
    }
    g.finish();
}

criterion_group!(benches, rank2, relations, subdiagrams);
criterion_main!(benches);
