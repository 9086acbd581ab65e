//! Hamiltonian builders. Inputs are linear frequencies in GHz; every
//! returned operator is in rad/ns.

mod cavity;
mod drive;
mod lattice;
mod multilevel;
mod params;
mod td;
mod transmon;

pub use cavity::{build_cavity_qubit, cavity_qubit_space, estimate_hopping, CouplingForm, HoppingKind};
pub use drive::{
    build_dirac_drive, build_dirac_effective, build_two_tone, effective_qrm, quadratures,
    DiracRegime, QrmModel,
};
pub use lattice::{build_lattice, Boundary, LatticeModel, LatticeSpec, MAX_DENSE_DIM};
pub use multilevel::{
    build_transmon_multilevel, effective_xy_coupling, multilevel_space, transmon_ladder,
};
pub use params::{CavityQubitParams, DriveParams, TransmonParams};
pub use td::{Coefficient, Term, TimeDependentHamiltonian};
pub use transmon::{
    charge_spectrum, transmon_frequency, transmon_spectrum, TransmonSpectrum,
    DEFAULT_CHARGE_CUTOFF,
};
