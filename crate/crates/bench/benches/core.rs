use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use n2sv_core::chiral::{flow_discrete_label, pairing_matrix};
use n2sv_core::classification::{closed_form_maximal_subgroups, phase_one_maximal_subgroups};
use n2sv_core::fusion::{all_sectors, fuse};
use n2sv_core::superalgebra::{generators_in_window, jacobi_defect};
use n2sv_core::unitarity::DiscreteLabel;
use n2sv_core::{build_module, FlowParam, Rational};

fn jacobi(c: &mut Criterion) {
    let t = FlowParam::ramond();
    let gens = generators_in_window(&t, -1, 1);
    c.bench_function("jacobi window 1", |b| {
        b.iter(|| {
            for x in &gens {
                for y in &gens {
                    for z in &gens {
                        black_box(jacobi_defect(x, y, z, &t).unwrap());
                    }
                }
            }
        })
    });
}

fn modules(c: &mut Criterion) {
    let mut group = c.benchmark_group("build_module");
    for n in [1u32, 3] {
        let label = DiscreteLabel::ns(n, 1, 1).unwrap();
        group.bench_with_input(BenchmarkId::new("ns cutoff 2", n), &label, |b, label| {
            b.iter(|| build_module(label.highest_weight(), Rational::from(2)).unwrap())
        });
    }
    let r = DiscreteLabel::r(3, 2, 1).unwrap();
    group.bench_function("r cutoff 2, n=3", |b| b.iter(|| build_module(r.highest_weight(), Rational::from(2)).unwrap()));
    group.finish();
}

fn fusion(c: &mut Criterion) {
    let sectors = all_sectors(5);
    c.bench_function("fusion table n=5", |b| {
        b.iter(|| {
            for x in &sectors {
                for y in &sectors {
                    black_box(fuse(x, y).unwrap());
                }
            }
        })
    });
}

fn classification(c: &mut Criterion) {
    let mut group = c.benchmark_group("classification");
    for n in [16u32, 32, 64] {
        group.bench_with_input(BenchmarkId::new("brute force", n), &n, |b, &n| b.iter(|| phase_one_maximal_subgroups(n).unwrap()));
        group.bench_with_input(BenchmarkId::new("closed form", n), &n, |b, &n| b.iter(|| closed_form_maximal_subgroups(n).unwrap()));
    }
    group.finish();
}

fn chiral(c: &mut Criterion) {
    let label = DiscreteLabel::ns(4, 2, -2).unwrap();
    let t = Rational::new(-1, 2);
    c.bench_function("flow label n=4", |b| b.iter(|| flow_discrete_label(4, &label, &t).unwrap()));
    c.bench_function("pairing matrix n=2", |b| b.iter(|| pairing_matrix(2, &Rational::from(2)).unwrap()));
}

criterion_group!(benches, jacobi, modules, fusion, classification, chiral);
criterion_main!(benches);
