use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use djkm_core::cocycle::verify_psi_table;
use djkm_core::diffops::{verify_ode, OdeKind};
use djkm_core::oracle::expand_all;
use djkm_core::par::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn ode_sweep(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_ode_elliptic1");
    g.sample_size(10);
    for max_n in [60i64, 120] {
        for (label, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(label, max_n), &max_n, |b, &n| {
                b.iter(|| verify_ode(OdeKind::Elliptic1, n, exec))
            });
        }
    }
    g.finish();
}

fn psi_grid(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify_psi_table");
    g.sample_size(10);
    for bound in [6i64, 12] {
        for (label, exec) in MODES {
            g.bench_with_input(BenchmarkId::new(label, bound), &bound, |b, &n| {
                b.iter(|| verify_psi_table(n, exec))
            });
        }
    }
    g.finish();
}

fn oracles(c: &mut Criterion) {
    let mut g = c.benchmark_group("expand_all");
    g.sample_size(10);
    for (label, exec) in MODES {
        g.bench_with_input(BenchmarkId::new(label, 40), &40i64, |b, &n| {
            b.iter(|| expand_all(n, exec))
        });
    }
    g.finish();
}

criterion_group!(benches, ode_sweep, psi_grid, oracles);
criterion_main!(benches);
