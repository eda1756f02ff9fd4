use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BatchSize, Criterion};
use pbw_bench::{envelope, inputs, trivial_rewriter};
use pbw_core::gs::{check_compositions, CheckOptions};
use pbw_core::pbw::{closure_report, hilbert_counts};
use pbw_core::{Alphabet, Bounds, Case, Op};

fn normal_forms(c: &mut Criterion) {
    let xs = inputs(2, 32);
    for (case, lambda) in [(Case::Pre, 0), (Case::Post, 1)] {
        c.bench_function(&format!("normal_form/{case}"), |b| {
            // Fresh caches each batch, so this times rewriting, not lookup.
            b.iter_batched(
                || trivial_rewriter(case, 2, lambda),
                |rw| {
                    for x in &xs {
                        black_box(rw.normal_form(x).unwrap());
                    }
                },
                BatchSize::LargeInput,
            )
        });
    }
}

fn products(c: &mut Criterion) {
    let env = envelope(Case::Post, 2, 1);
    let xs: Vec<_> = inputs(2, 8)
        .iter()
        .map(|x| env.element(x).unwrap())
        .collect();
    c.bench_function("envelope/succ", |b| {
        b.iter(|| {
            for x in &xs {
                for y in &xs {
                    black_box(env.apply(Op::Succ, x, y).unwrap());
                }
            }
        })
    });
}

fn bases(c: &mut Criterion) {
    c.bench_function("hilbert_counts/post-2-deg6", |b| {
        b.iter(|| black_box(hilbert_counts(Case::Post, 2, 6)))
    });
    let names = Alphabet::standard(2);
    c.bench_function("closure/pre-2-deg3", |b| {
        b.iter_batched(
            || envelope(Case::Pre, 2, 0),
            |env| black_box(closure_report(Case::Pre, 2, &env, 3, &names).unwrap()),
            BatchSize::LargeInput,
        )
    });
}

fn compositions(c: &mut Criterion) {
    let names = Alphabet::standard(1);
    let bounds = Bounds {
        max_size: 2,
        max_rdeg: 2,
        max_level: 1,
        n_gens: 1,
    };
    let mut group = c.benchmark_group("compositions");
    group.sample_size(10);
    group.bench_function("pre-1", |b| {
        b.iter_batched(
            || trivial_rewriter(Case::Pre, 1, 0),
            |rw| {
                black_box(check_compositions(
                    &rw,
                    &bounds,
                    &names,
                    CheckOptions::default(),
                ))
            },
            BatchSize::LargeInput,
        )
    });
    group.finish();
}

criterion_group!(benches, normal_forms, products, bases, compositions);
criterion_main!(benches);
