use std::f64::consts::{FRAC_PI_8, TAU};
use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cqed_bench::{coherent_field, qrm_cell, qrm_drives};
use cqed_core::digital::{
    compose, heisenberg_protocol, DispersiveModel, DispersiveParams,
};
use cqed_core::evolve::{evolve_tdse, frame_transform, IntegratorConfig};
use cqed_core::hamlib::{build_two_tone, effective_qrm, Boundary};
use cqed_core::observe::{wigner, WignerSpec};
use cqed_core::{ElementaryKind, Operator, QuantumState};

fn propagator(c: &mut Criterion) {
    let mut group = c.benchmark_group("propagator");
    for n_fock in [12, 24, 48] {
        let h = effective_qrm(&qrm_cell(n_fock), &qrm_drives()).unwrap().hamiltonian;
        group.bench_with_input(BenchmarkId::from_parameter(2 * n_fock), &h, |b, h| {
            b.iter(|| black_box(h.propagator(10.0).unwrap()))
        });
    }
    group.finish();
}

fn two_tone_window(c: &mut Criterion) {
    let lab = build_two_tone(&qrm_cell(12), &qrm_drives()).unwrap();
    let space = lab.space().clone();
    let carrier = (&Operator::on(&space, 1, ElementaryKind::Number).unwrap()
        + &Operator::on(&space, 0, ElementaryKind::PauliZ).unwrap().scale_real(0.5))
        .scale_real(TAU * 5.0);
    let framed = frame_transform(&lab, &carrier).unwrap();
    let psi0 = QuantumState::basis(&space, &[0, 0]).unwrap();
    let cfg = IntegratorConfig::with_tol(1e-8);
    c.bench_function("tdse_two_tone_10ns", |b| {
        b.iter(|| black_box(evolve_tdse(&framed, &psi0, &[10.0], &cfg).unwrap()))
    });
}

fn digital(c: &mut Criterion) {
    let mut group = c.benchmark_group("compose_heisenberg");
    for n in [3, 5] {
        let seq = heisenberg_protocol(n, 0.006, 10.0, 4, Boundary::Open).unwrap();
        group.bench_with_input(BenchmarkId::from_parameter(n), &seq, |b, s| b.iter(|| black_box(compose(s).unwrap())));
    }
    group.finish();
}

fn dispersive(c: &mut Criterion) {
    let model = DispersiveModel::new(DispersiveParams::default()).unwrap();
    let q0 = DispersiveModel::default_initial_qubits();
    let cfg = IntegratorConfig::with_tol(1e-8);
    let mut group = c.benchmark_group("dispersive_step");
    group.sample_size(10);
    group.bench_function("closed", |b| b.iter(|| black_box(model.run_closed(FRAC_PI_8, &q0).unwrap())));
    group.bench_function("open", |b| b.iter(|| black_box(model.run_open(FRAC_PI_8, &q0, &cfg).unwrap())));
    group.finish();
}

fn wigner_grid(c: &mut Criterion) {
    let field = coherent_field(40);
    let spec = WignerSpec::square(5.0, 61);
    c.bench_function("wigner_61x61_cutoff40", |b| b.iter(|| black_box(wigner(&field, &spec).unwrap())));
}

criterion_group!(benches, propagator, two_tone_window, digital, dispersive, wigner_grid);
criterion_main!(benches);
