use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use nu_dirac::exec::ExecMode;
use nu_dirac::oracle::{find_levels, OracleConfig};
use nu_dirac::validation::validation_grid;

fn oracle_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("oracle_find_levels");
    group.sample_size(10);
    let modes = [("serial", ExecMode::Serial), ("parallel", ExecMode::Parallel { threads: None })];
    for case in validation_grid().into_iter().filter(|c| ["morse-spin-a", "hypergeometric-spin-k2"].contains(&c.id)) {
        for (label, exec) in modes {
            let cfg = OracleConfig { exec, ..OracleConfig::for_problem(&case.problem) };
            group.bench_with_input(BenchmarkId::new(label, case.id), &case, |b, case| {
                b.iter(|| black_box(find_levels(&case.problem, &cfg, case.n_max)))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, oracle_sweep);
criterion_main!(benches);
