//! Benchmarks for the hot paths: exact scalar arithmetic, Weyl products,
//! state sums with descent, threading enumeration and Jones-Wenzl
//! composition.

use criterion::{criterion_group, criterion_main, Criterion};
use qtrace_core::scalar::{choose_modulus, Scalar, ScalarContext};
use qtrace_core::statesum::{glued_context, state_sum_embedded, trace_embedded};
use qtrace_core::surface::fixture;
use qtrace_core::thread::{thread_s, thread_t_root};
use qtrace_core::torus::TorusElement;
use qtrace_core::{cheb_poly, ChebKind};

fn scalar_ops(c: &mut Criterion) {
    let generic = ScalarContext::generic();
    let root = choose_modulus(7, -1).unwrap();
    let mut group = c.benchmark_group("scalar");
    group.bench_function("generic mul+div", |b| {
        let x = Scalar::from_laurent(&generic, -3, &[1, 0, 2, 0, 1]);
        let y = Scalar::from_laurent(&generic, -1, &[1, 1, 1]);
        b.iter(|| {
            let p = x.mul(&y);
            std::hint::black_box(p.div(&y).unwrap())
        });
    });
    group.bench_function("root mul+inverse", |b| {
        let x = Scalar::from_laurent(&root, -3, &[1, 0, 2, 0, 1]);
        let y = Scalar::from_laurent(&root, -1, &[1, 1, 1]);
        b.iter(|| {
            let p = x.mul(&y);
            std::hint::black_box(p.mul(&y.inverse().unwrap()))
        });
    });
    group.finish();
}

fn torus_products(c: &mut Criterion) {
    let f = fixture("punctured_torus").unwrap();
    let scalars = ScalarContext::generic();
    let ctx = glued_context(&f.triangulation, &scalars, 1);
    // two medium sums over the fixture torus
    let mut x = TorusElement::zero(&ctx);
    let mut y = TorusElement::zero(&ctx);
    for i in -2i64..=2 {
        for j in -2i64..=2 {
            x.add_term(vec![i, j, i - j], Scalar::omega_pow(&scalars, i + j));
            y.add_term(vec![j, -i, i], Scalar::omega_pow(&scalars, i - j));
        }
    }
    c.bench_function("weyl product 25x25 terms", |b| {
        b.iter(|| std::hint::black_box(x.mul(&y)))
    });
    let t8 = cheb_poly(ChebKind::First, 8);
    let tr = trace_embedded(&f.triangulation, &f.curves["L0"], &scalars, 1).unwrap();
    c.bench_function("T_8 evaluated at a trace", |b| {
        b.iter(|| std::hint::black_box(tr.eval_poly(&t8)))
    });
}

fn state_sums(c: &mut Criterion) {
    let f = fixture("punctured_torus").unwrap();
    let scalars = ScalarContext::generic();
    c.bench_function("embedded trace of Lm1", |b| {
        b.iter(|| {
            std::hint::black_box(
                trace_embedded(&f.triangulation, &f.curves["Lm1"], &scalars, 1).unwrap(),
            )
        })
    });
    c.bench_function("puncture loop state sum", |b| {
        b.iter(|| {
            std::hint::black_box(
                state_sum_embedded(&f.triangulation, &f.curves["P"], &scalars, 1, 1).unwrap(),
            )
        })
    });
}

fn threading(c: &mut Criterion) {
    let f = fixture("punctured_torus").unwrap();
    let generic = ScalarContext::generic();
    c.bench_function("thread_S at N = 8", |b| {
        b.iter(|| {
            std::hint::black_box(thread_s(&f.triangulation, &f.curves["L0"], 8, &generic).unwrap())
        })
    });
    let root = choose_modulus(7, -1).unwrap();
    c.bench_function("collapsed thread at N = 7", |b| {
        b.iter(|| {
            std::hint::black_box(
                thread_t_root(&f.triangulation, &f.curves["L0"], 7, &root).unwrap(),
            )
        })
    });
}

fn jones_wenzl(c: &mut Criterion) {
    let scalars = ScalarContext::generic();
    c.bench_function("JW_4 expansion and idempotency", |b| {
        b.iter(|| {
            let jw = qtrace_core::jw::jw_expand(4, &scalars).unwrap();
            std::hint::black_box(jw.compose(&jw).unwrap())
        })
    });
}

criterion_group!(
    benches,
    scalar_ops,
    torus_products,
    state_sums,
    threading,
    jones_wenzl
);
criterion_main!(benches);
