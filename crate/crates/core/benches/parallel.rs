use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use steinberg::building::{standard_chamber, BallGraph, PrimeContext};
use steinberg::coxeter::affine_diagram;
use steinberg::coxeter::bfs_growth_with;
use steinberg::harmonic::{defect_scan, iwahori_vector};
use steinberg::Exec;

const MODES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn growth(c: &mut Criterion) {
    let diagram = affine_diagram("A3~".parse().unwrap()).unwrap();
    let mut group = c.benchmark_group("bfs_growth_A3_K12");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| bfs_growth_with(&diagram, 12, exec).unwrap())
        });
    }
    group.finish();
}

fn ball(c: &mut Criterion) {
    let ctx = PrimeContext::for_radius(2, 3, 3).unwrap();
    let base = standard_chamber(&ctx);
    let mut group = c.benchmark_group("ball_GL3_p2_R3");
    group.sample_size(10);
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| BallGraph::build_with(&base, 3, &ctx, exec).unwrap())
        });
    }
    group.finish();
}

fn defects(c: &mut Criterion) {
    let ctx = PrimeContext::for_radius(3, 2, 6).unwrap();
    let ball = BallGraph::build(&standard_chamber(&ctx), 6, &ctx).unwrap();
    let f = iwahori_vector(ball.base(), 3).unwrap();
    let mut group = c.benchmark_group("defect_scan_tree_p3_R6");
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::from_parameter(name), |b| {
            b.iter(|| defect_scan(&f, &ball, exec).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, growth, ball, defects);
criterion_main!(benches);
