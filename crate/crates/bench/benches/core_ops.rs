use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use gca::automaton::builtin;
use gca::subshift::Sft;
use gca::uniform::{compose_relations, rule_diagonal_preimage, subset};
use gca::{minimize, Alphabet, Configuration, FiniteSubset, GroupContext, GroupElement, Pattern};

fn bench_star(c: &mut Criterion) {
    let rule = builtin("rule110").unwrap();
    c.bench_function("star rule110∗rule110", |b| {
        b.iter(|| black_box(&rule).star(black_box(&rule)).unwrap())
    });
    let square = rule.star(&rule).unwrap();
    c.bench_function("star to radius 3", |b| {
        b.iter(|| black_box(&square).star(black_box(&rule)).unwrap())
    });
}

fn bench_minimize(c: &mut Criterion) {
    let rule = builtin("rule110").unwrap();
    let square = rule.star(&rule).unwrap();
    c.bench_function("minimize radius-2 table", |b| {
        b.iter(|| minimize(black_box(&square)).unwrap())
    });
}

fn bench_ball(c: &mut Criterion) {
    let f2 = GroupContext::free(2).unwrap();
    c.bench_function("ball F2 r=6", |b| b.iter(|| black_box(&f2).ball(6).unwrap()));
}

fn bench_entourages(c: &mut Criterion) {
    let z3 = GroupContext::cyclic(3).unwrap();
    let a = Alphabet::new(2).unwrap();
    let memory = z3.enumerate().unwrap();
    let rule = gca::RuleTable::new(
        z3.clone(),
        a.clone(),
        memory,
        vec![0, 1, 1, 0, 1, 0, 0, 1],
    )
    .unwrap();
    c.bench_function("diagonal preimage Z/3", |b| {
        b.iter(|| rule_diagonal_preimage(black_box(&rule)).unwrap())
    });
    let v = rule_diagonal_preimage(&rule).unwrap();
    c.bench_function("V∘V ⊆ V check", |b| {
        b.iter(|| {
            let vv = compose_relations(black_box(&v), black_box(&v)).unwrap();
            subset(&vv, &v).unwrap()
        })
    });
}

fn bench_simulation(c: &mut Criterion) {
    let rule = builtin("rule110").unwrap();
    let ctx = rule.ctx().clone();
    let a = rule.alphabet().clone();
    let cells = (0..128).map(|i| (i % 7 == 0) as u8).collect();
    let start = Configuration::periodic(&ctx, &a, vec![128], cells).unwrap();
    c.bench_function("rule110 on a 128-cell torus, 32 steps", |b| {
        b.iter(|| {
            let mut x = start.clone();
            for _ in 0..32 {
                x = rule.apply(&x).unwrap();
            }
            x
        })
    });
}

fn bench_membership(c: &mut Criterion) {
    let z = GroupContext::integers(1).unwrap();
    let a = Alphabet::new(2).unwrap();
    let zi = |x: i64| GroupElement::Integers(vec![x]);
    let domain = FiniteSubset::new(vec![zi(0), zi(1)]);
    let golden = Sft::new(
        z.clone(),
        a.clone(),
        vec![Pattern::new(&a, domain, vec![1, 1]).unwrap()],
    )
    .unwrap();
    c.bench_function("periodic members up to period 8", |b| {
        b.iter(|| black_box(&golden).periodic_members(8).unwrap())
    });
}

criterion_group!(
    benches,
    bench_star,
    bench_minimize,
    bench_ball,
    bench_entourages,
    bench_simulation,
    bench_membership
);
criterion_main!(benches);
