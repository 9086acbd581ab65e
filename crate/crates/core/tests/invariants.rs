use std::f64::consts::TAU;

use cqed_core::digital::{
    compose, digital_fidelity_loss, heisenberg_hamiltonian, heisenberg_protocol, trotter_bound,
    uniform_superposition,
};
use cqed_core::evolve::{evolve_lindblad, IntegratorConfig, LindbladModel};
use cqed_core::hamlib::{
    build_cavity_qubit, charge_spectrum, Boundary, CavityQubitParams, CouplingForm, TimeDependentHamiltonian,
};
use cqed_core::linalg::{max_abs, HermitianEigen};
use cqed_core::qft::{jordan_wigner, FermionModeMap, FermionOp};
use cqed_core::{ElementaryKind, Operator, QuantumState};
use proptest::prelude::*;

fn fermion(map: &FermionModeMap, i: usize) -> (Operator, Operator) {
    let half = map.n_modes() / 2;
    let (cr, an) = if i <= half { (FermionOp::BDag, FermionOp::B) } else { (FermionOp::DDag, FermionOp::D) };
    (jordan_wigner(map, i, cr).unwrap(), jordan_wigner(map, i, an).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn car_holds_for_any_pair(half in 1usize..=3, a in 0usize..6, b in 0usize..6) {
        let map = FermionModeMap::new(2 * half).unwrap();
        let (i, j) = (1 + a % (2 * half), 1 + b % (2 * half));
        let ((_, ci), (cjd, cj)) = (fermion(&map, i), fermion(&map, j));
        let delta = if i == j { 1.0 } else { 0.0 };
        let id = Operator::identity(ci.space()).scale_real(delta);
        prop_assert!(ci.anticommutator(&cjd).unwrap().max_abs_diff(&id) < 1e-12);
        prop_assert!(max_abs(ci.anticommutator(&cj).unwrap().matrix()) < 1e-12);
    }

    #[test]
    fn two_qubit_step_is_exact(j in 0.001f64..0.02, theta in 0.01f64..1.5) {
        let t = theta / (TAU * j);
        let u = compose(&heisenberg_protocol(2, j, t, 1, Boundary::Open).unwrap()).unwrap();
        let exact = heisenberg_hamiltonian(2, j, Boundary::Open).unwrap().propagator(t).unwrap();
        prop_assert!(u.norm2_diff(&exact) < 1e-10);
    }

    #[test]
    fn protocol_then_adjoint_is_identity(n in 2usize..=4, l in 1usize..4, theta in 0.0f64..1.0) {
        let t = theta / (TAU * 0.006);
        let seq = heisenberg_protocol(n, 0.006, t, l, Boundary::Open).unwrap();
        let u = compose(&seq).unwrap();
        let back = compose(&seq.adjoint()).unwrap();
        let id = Operator::identity(u.space());
        prop_assert!((&back * &u).max_abs_diff(&id) < 1e-12);
    }

    #[test]
    fn trotter_loss_within_bound(theta in 0.05f64..0.8, l in 1usize..6) {
        let (n, j) = (3, 0.006);
        let t = theta / (TAU * j);
        let seq = heisenberg_protocol(n, j, t, l, Boundary::Open).unwrap();
        let h = heisenberg_hamiltonian(n, j, Boundary::Open).unwrap();
        let loss = digital_fidelity_loss(&seq, &h, t, &uniform_superposition(n).unwrap()).unwrap();
        prop_assert!(loss >= 0.0);
        prop_assert!(loss <= trotter_bound(n, j, t, l, Boundary::Open));
    }

    #[test]
    fn deep_transmon_is_negatively_anharmonic(ratio in 20.0f64..120.0) {
        let spec = charge_spectrum(0.25, 0.25 * ratio, 0.0, 30, 3).unwrap();
        prop_assert!(spec.gap(1) < spec.gap(0));
        prop_assert!(spec.converged());
    }

    #[test]
    fn lindblad_preserves_trace_and_positivity(kappa in 0.0f64..0.05, gamma in 0.0f64..0.05) {
        let p = CavityQubitParams { omega_q: 0.1, omega_r: 0.1, g: 0.02, n_fock: 4 };
        let h = build_cavity_qubit(&p, CouplingForm::Jc).unwrap();
        let space = h.space().clone();
        let mut model = LindbladModel::new(TimeDependentHamiltonian::from_static(h));
        model.add_collapse(Operator::on(&space, 1, ElementaryKind::Annihilator).unwrap(), kappa).unwrap();
        model.add_collapse(Operator::on(&space, 0, ElementaryKind::SigmaMinus).unwrap(), gamma).unwrap();
        let rho0 = QuantumState::basis(&space, &[1, 0]).unwrap();
        let tr = evolve_lindblad(&model, &rho0, &[5.0, 20.0], &IntegratorConfig::with_tol(1e-8)).unwrap();
        for s in &tr.states {
            let rho = s.density_matrix();
            prop_assert!((rho.trace().re - 1.0).abs() < 1e-8);
            prop_assert!(HermitianEigen::new(&rho).min() > -1e-8);
        }
    }
}
