use criterion::{criterion_group, criterion_main, Criterion};

use monadlab::coend::CoendMonad;
use monadlab::finord::{check_star_closure, MorphClass, VerbalCat};
use monadlab::monads::{builtin_monad, psi_n, ApplyOpts, Carrier};
use monadlab::operads::{carrier_tuples, terminal_operad, OpElem};

fn bench_star_closure(c: &mut Criterion) {
    c.bench_function("star_closure_fsurj_b3", |b| {
        b.iter(|| check_star_closure(MorphClass::Verbal(VerbalCat::Fsurj), 3))
    });
}

fn bench_psi_n(c: &mut Criterion) {
    let t = builtin_monad("dist").unwrap();
    let x = Carrier::of_size(3);
    let tx = t.apply(&x, &ApplyOpts::default());
    let args: Vec<_> = tx.elems.iter().take(3).cloned().collect();
    c.bench_function("psi_n_dist_3", |b| b.iter(|| psi_n(&t, &args).unwrap()));
}

fn bench_canonicalize(c: &mut Criterion) {
    let op = terminal_operad(VerbalCat::Fsurj, 4);
    let cm = CoendMonad::new(op, 4).unwrap();
    let x = Carrier::of_size(3);
    let tuples = carrier_tuples(&x, 4);
    c.bench_function("canonicalize_fsurj_terminal", |b| {
        b.iter(|| {
            for tup in &tuples {
                cm.canonicalize(&OpElem::Unit, tup).unwrap();
            }
        })
    });
}

criterion_group!(kernels, bench_star_closure, bench_psi_n, bench_canonicalize);
criterion_main!(kernels);
