use criterion::{black_box, criterion_group, criterion_main, Criterion};

use ipl_bench::corpus;
use ipl_core::formula::GoalUniverse;
use ipl_core::gbu::bsearch;
use ipl_core::saturation::{fsearch, SearchOptions};

fn decide(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide");
    for (name, text) in corpus() {
        let u = GoalUniverse::parse(&text).unwrap();
        group.bench_function(&name, |b| {
            b.iter(|| {
                let r = fsearch(black_box(&u), SearchOptions::new()).unwrap();
                if r.proof().is_none() {
                    black_box(bsearch(&u, &r.db).unwrap());
                }
            })
        });
        group.bench_function(format!("{name}/minimal_height"), |b| {
            b.iter(|| fsearch(black_box(&u), SearchOptions::new().min_height(true)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, decide);
criterion_main!(benches);
