//! Gate-level Heisenberg protocols, error budgets and the dispersive
//! two-transmon realization.

mod budget;
mod dispersive;
mod gates;
mod protocol;

pub use budget::{error_budget, Aggregation, BudgetReport, ErrorBudget};
pub use dispersive::{DispersiveModel, DispersiveParams, DispersiveRun};
pub use gates::{compose, gate_unitary, Axis, Gate, GateKind, GateSequence};
pub use protocol::{
    chain_bonds, digital_fidelity_loss, heisenberg_hamiltonian, heisenberg_protocol,
    trotter_bound, uniform_superposition,
};
