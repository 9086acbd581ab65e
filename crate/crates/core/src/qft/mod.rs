//! Fermion and antifermion modes coupled to a discretized bosonic line:
//! Jordan-Wigner strings, wavepacket coefficients, the interaction and
//! setup Hamiltonians, and the digital-analog gate toolbox.

mod field;
mod gates;
mod jw;
mod wavepacket;

pub use field::{build_hsetup, build_qft_interaction, build_qft_interaction_with, ContinuumSpec, LambdaFields};
pub use gates::{da_conjugated_spin, da_gate, da_two_body_sequence, DaGate, DaRegister};
pub use jw::{jordan_wigner, jordan_wigner_on, FermionModeMap, FermionOp};
pub use wavepacket::{
    lambda_coefficient, lambda_on_grid, MomentumQuadrature, ParticleKind, WavepacketEnvelope,
};
