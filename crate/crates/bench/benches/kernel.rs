use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use z22susy::actions::{run_action, total_derivative, ActionName};
use z22susy::multiplets::impose_f011_constraint;
use z22susy::properties::random_poly;
use z22susy::representations::{check_algebra, induce_from_nu_e_lambda};
use z22susy::superspace::{algebra_relations, check_operator_identity};
use z22susy::Degree;

fn poly_mul(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (a, b) = (random_poly(&mut rng, 6), random_poly(&mut rng, 6));
    c.bench_function("poly mul", |bench| bench.iter(|| black_box(&a).mul(black_box(&b))));
}

fn closure(c: &mut Criterion) {
    let rel = &algebra_relations()[4];
    c.bench_function("closure [Q01,Q10] K=4", |bench| {
        bench.iter(|| check_operator_identity(&rel.lhs, &rel.rhs, 4).unwrap())
    });
    c.bench_function("f011 constraint K=4", |bench| bench.iter(|| impose_f011_constraint(Degree::ZERO, 4).unwrap()));
    let rep8 = induce_from_nu_e_lambda();
    c.bench_function("check algebra 8-dim", |bench| bench.iter(|| check_algebra(black_box(&rep8))));
}

fn actions(c: &mut Criterion) {
    let r = run_action(ActionName::B10, 4).unwrap();
    let expr = r.certificates[0].expression.clone();
    c.bench_function("total derivative", |bench| bench.iter(|| total_derivative(black_box(&expr))));
    c.bench_function("action b10", |bench| bench.iter(|| run_action(ActionName::B10, 4).unwrap()));
}

criterion_group!(benches, poly_mul, closure, actions);
criterion_main!(benches);
