use criterion::{criterion_group, criterion_main, Criterion};
use degenstir::rational::rat;
use degenstir::stirling::{stirling2r_binomial, stirling2r_composition};
use degenstir::{LambdaMode, Verifier};

fn stirling_routes(c: &mut Criterion) {
    let mode = LambdaMode::Symbolic;
    let mut g = c.benchmark_group("stirling2r_routes");
    g.bench_function("composition/n12_k4_r2", |b| b.iter(|| stirling2r_composition(&mode, 12, 4, 2)));
    g.bench_function("binomial/n12_k4_r2", |b| b.iter(|| stirling2r_binomial(&mode, 12, 4, 2)));
    g.finish();
}

fn theorem_sweeps(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    g.sample_size(10);
    for (name, mode) in [("symbolic", LambdaMode::Symbolic), ("at_2_7", LambdaMode::At(rat(2, 7)))] {
        g.bench_function(format!("thm5/{name}"), |b| {
            b.iter(|| {
                let mut v = Verifier::new(mode.clone());
                (0..=8).flat_map(|n| (0..=4).map(move |k| (n, k))).for_each(|(n, k)| {
                    v.verify_thm5(n, k);
                })
            })
        });
        g.bench_function(format!("thm8/{name}"), |b| {
            b.iter(|| {
                let mut v = Verifier::new(mode.clone());
                (0..=8).flat_map(|n| (0..=3).map(move |k| (n, k))).for_each(|(n, k)| {
                    v.verify_thm8(n, k);
                })
            })
        });
    }
    g.finish();
}

criterion_group!(benches, stirling_routes, theorem_sweeps);
criterion_main!(benches);
