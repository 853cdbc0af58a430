use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use hypertope::checks::{check_residually_connected_graph, classify, ClassifyOptions};
use hypertope::families::FamilySpec;
use hypertope::{Caps, CosetGeometry, Exec};

const MODES: [(&str, Exec); 2] = [
    ("sequential", Exec::Sequential),
    ("parallel", Exec::Parallel),
];

fn geometry(spec: FamilySpec) -> CosetGeometry {
    spec.build(&Caps::default())
        .expect("family builds")
        .geometry
}

fn chambers(c: &mut Criterion) {
    let g = geometry(FamilySpec::GplusPab { p: 5, a: 2, b: 0 });
    let mut group = c.benchmark_group("chambers G+(5,2,0)");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new("enumerate", name), |b| {
            b.iter(|| g.chambers(exec))
        });
        let ch = g.chambers(exec);
        group.bench_function(BenchmarkId::new("adjacency", name), |b| {
            b.iter(|| ch.adjacency(g.system(), exec))
        });
        group.bench_function(BenchmarkId::new("residual connectivity", name), |b| {
            b.iter(|| check_residually_connected_graph(g.system(), None, exec))
        });
    }
    group.finish();
}

fn classification(c: &mut Criterion) {
    let g = geometry(FamilySpec::GplusPab { p: 4, a: 2, b: 0 });
    let mut group = c.benchmark_group("classify G+(4,2,0)");
    group.sample_size(10);
    for (name, exec) in MODES {
        let opts = ClassifyOptions {
            exec,
            ..ClassifyOptions::default()
        };
        group.bench_function(name, |b| {
            b.iter(|| classify(&g, &opts).expect("classifies"))
        });
    }
    group.finish();
}

criterion_group!(benches, chambers, classification);
criterion_main!(benches);
