//! Fixtures shared by the kernel benchmarks.

use cqed_core::hamlib::{CavityQubitParams, DriveParams};
use cqed_core::linalg::c;
use cqed_core::QuantumState;

pub fn qrm_cell(n_fock: usize) -> CavityQubitParams {
    CavityQubitParams { omega_q: 5.0, omega_r: 5.01, g: 0.02, n_fock }
}

pub fn qrm_drives() -> DriveParams {
    DriveParams { rabi_1: 1.0, omega_1: 5.0, omega_2: 3.0, ..Default::default() }
}

pub fn coherent_field(cutoff: usize) -> QuantumState {
    QuantumState::coherent(cutoff, c(1.0, 1.0)).expect("valid cutoff")
}
