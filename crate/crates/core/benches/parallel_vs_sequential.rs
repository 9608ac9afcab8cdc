use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use stromver_core::connection::bismut_connection_with;
use stromver_core::exec::Exec;
use stromver_core::forms::{HodgeStar, SignConvention};
use stromver_core::lie::sl2_standard;
use stromver_core::rep::{ModuleSpace, Recipe};
use stromver_core::verifier::{full_report_with, StromingerInstance, TangentChoice};

const POLICIES: [(&str, Exec); 2] = [("sequential", Exec::Sequential), ("parallel", Exec::Parallel)];

fn hodge_table(c: &mut Criterion) {
    let h = sl2_standard().hermitian;
    let mut group = c.benchmark_group("hodge_table");
    for (name, exec) in POLICIES {
        group.bench_function(name, |b| b.iter(|| HodgeStar::with_exec(black_box(&h), exec)));
    }
    group.finish();
}

fn bismut_solve(c: &mut Criterion) {
    let d = sl2_standard();
    let mut group = c.benchmark_group("bismut_solve");
    group.sample_size(10);
    for (name, exec) in POLICIES {
        group.bench_function(name, |b| {
            b.iter(|| bismut_connection_with(&d.algebra, &d.hermitian, SignConvention::RightInvariant, exec).unwrap())
        });
    }
    group.finish();
}

fn invariant_subspace(c: &mut Criterion) {
    let g = sl2_standard().algebra;
    let mut group = c.benchmark_group("invariant_subspace");
    group.sample_size(10);
    for (recipe, label) in [(Recipe::parse("sym2(V0) ⊗ sym2(V0)").unwrap(), "sym2_sq"), (Recipe::forms(4), "four_forms")] {
        let m = ModuleSpace::build(&recipe, &g).unwrap();
        for (name, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(name, label), &m, |b, m| b.iter(|| m.invariant_subspace_with(exec)));
        }
    }
    group.finish();
}

fn full_report(c: &mut Criterion) {
    let conv = SignConvention::RightInvariant;
    let mut group = c.benchmark_group("full_report");
    group.sample_size(10);
    for (label, inst) in [
        ("chern", StromingerInstance::canonical(conv)),
        ("bismut", StromingerInstance::canonical(conv).with_tangent(&TangentChoice::Bismut).unwrap()),
    ] {
        for (name, exec) in POLICIES {
            group.bench_with_input(BenchmarkId::new(name, label), &inst, |b, i| b.iter(|| full_report_with(i, exec).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, hodge_table, bismut_solve, invariant_subspace, full_report);
criterion_main!(benches);
