use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use varratio::special::{digamma, log_beta, log_gamma, reg_inc_beta};
use varratio::{fit_all, fit_mle, ks_one_sample, ks_two_sample, BetaPrime, Continuous, Distribution, Family, FitConfig};

fn desk_sample(seed: u64) -> Vec<f64> {
    let d: Distribution = BetaPrime::new(5.8771, 3.4893, 0.5556).unwrap().into();
    d.sample(6800, seed)
}

fn special(c: &mut Criterion) {
    let xs: Vec<f64> = (1..=200).map(|i| 0.05 * i as f64).collect();
    c.bench_function("log_gamma x200", |b| {
        b.iter(|| xs.iter().map(|&x| log_gamma(black_box(x)).unwrap()).sum::<f64>())
    });
    c.bench_function("digamma x200", |b| {
        b.iter(|| xs.iter().map(|&x| digamma(black_box(x)).unwrap()).sum::<f64>())
    });
    c.bench_function("log_beta x200", |b| {
        b.iter(|| xs.iter().map(|&x| log_beta(black_box(x), 3.5).unwrap()).sum::<f64>())
    });
    c.bench_function("reg_inc_beta x200", |b| {
        b.iter(|| xs.iter().map(|&x| reg_inc_beta(5.9, 3.5, black_box(x / 10.5)).unwrap()).sum::<f64>())
    });
}

fn fitting(c: &mut Criterion) {
    let x = desk_sample(1);
    let cfg = FitConfig::default();
    let mut g = c.benchmark_group("fit n=6800");
    g.sample_size(20);
    g.bench_function("beta prime", |b| b.iter(|| fit_mle(black_box(&x), Family::BetaPrime, &cfg).unwrap()));
    g.bench_function("gamma", |b| b.iter(|| fit_mle(black_box(&x), Family::Gamma, &cfg).unwrap()));
    g.bench_function("all families", |b| b.iter(|| fit_all(black_box(&x), &cfg, None)));
    g.finish();
}

fn goodness_of_fit(c: &mut Criterion) {
    let x = desk_sample(2);
    let y = desk_sample(3);
    let d = BetaPrime::new(5.8771, 3.4893, 0.5556).unwrap();
    c.bench_function("ks one-sample n=6800", |b| {
        b.iter_batched(|| x.clone(), |v| ks_one_sample(&v, |t| d.cdf(t)).unwrap(), BatchSize::SmallInput)
    });
    c.bench_function("ks two-sample 6800x6800", |b| b.iter(|| ks_two_sample(black_box(&x), black_box(&y)).unwrap()));
}

criterion_group!(benches, special, fitting, goodness_of_fit);
criterion_main!(benches);
