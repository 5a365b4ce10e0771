//! Criterion benchmarks for the hot kernels: sparse polynomial
//! multiplication, the budgeted Buchberger loop, the localized complex
//! radical decision, and the real-radical closure on the sum-of-squares
//! family.

use criterion::{criterion_group, criterion_main, Criterion};
use germcalc_core::germ::{local_radical_member_complex, Germ, GermIdeal};
use germcalc_core::groebner::{buchberger, StepBudget, TermOrder};
use germcalc_core::parser::{parse_poly, parse_template};
use germcalc_core::poly::{BasePoint, Polynomial};
use germcalc_core::real::real_radical_closure;
use germcalc_core::FieldTag;
use std::hint::black_box;

fn poly(text: &str, tag: FieldTag) -> Polynomial {
    parse_poly(text, tag).expect("benchmark input parses")
}

fn germ(text: &str, tag: FieldTag) -> Germ {
    Germ::new(poly(text, tag), BasePoint::origin(tag)).expect("admissible")
}

fn ideal(texts: &[&str], tag: FieldTag) -> GermIdeal {
    let gens = texts.iter().map(|t| germ(t, tag)).collect();
    GermIdeal::new(BasePoint::origin(tag), gens).expect("admissible")
}

fn bench_poly_mul(c: &mut Criterion) {
    let tag = FieldTag::Real;
    let a = poly("(x_1 + x_2 + x_3 + 1)^4", tag);
    let b = poly("(x_1 - x_2 + x_4 - 1/2)^4", tag);
    c.bench_function("poly_mul_dense_deg4", |bench| {
        bench.iter(|| black_box(&a).mul(black_box(&b)).expect("same tag"))
    });
}

fn bench_buchberger(c: &mut Criterion) {
    let tag = FieldTag::Complex;
    let gens: Vec<Polynomial> = [
        "x_1^2 + x_2*x_3 - 1",
        "x_2^2 + x_1*x_3 - 1",
        "x_3^2 + x_1*x_2 - 1",
    ]
    .iter()
    .map(|t| poly(t, tag))
    .collect();
    let order = TermOrder::grevlex_for(gens.iter());
    c.bench_function("buchberger_symmetric_3", |bench| {
        bench.iter(|| {
            let mut budget = StepBudget::new(1_000_000);
            buchberger(black_box(&gens), &order, &mut budget).expect("terminates")
        })
    });
}

fn bench_local_radical(c: &mut Criterion) {
    let tag = FieldTag::Complex;
    let id = ideal(&["x_1^2 - x_2^3", "x_2^2 - x_3^3"], tag);
    let f = germ("x_1*x_2 - x_3^2", tag);
    c.bench_function("local_radical_cusp_pair", |bench| {
        bench.iter(|| {
            let mut budget = StepBudget::new(1_000_000);
            local_radical_member_complex(black_box(&id), black_box(&f), &mut budget)
                .expect("well-posed")
        })
    });
}

fn bench_real_closure(c: &mut Criterion) {
    let tag = FieldTag::Real;
    let template =
        parse_template("x_{2k+1}^2 + (x_{2k+2} - x_{2k+3})^2").expect("template parses");
    let gens: Vec<Germ> = (0..3u64)
        .map(|k| {
            Germ::new(
                template.instantiate(k, tag).expect("in range"),
                BasePoint::origin(tag),
            )
            .expect("admissible")
        })
        .collect();
    let id = GermIdeal::new(BasePoint::origin(tag), gens).expect("admissible");
    let targets: Vec<Germ> = (1..=5u32)
        .map(|t| germ(&format!("x_{}", t), tag))
        .collect();
    c.bench_function("real_closure_family_3", |bench| {
        bench.iter(|| {
            real_radical_closure(black_box(&id), black_box(&targets), &[], 1_000_000)
                .expect("real input")
        })
    });
}

criterion_group!(
    kernels,
    bench_poly_mul,
    bench_buchberger,
    bench_local_radical,
    bench_real_closure
);
criterion_main!(kernels);
