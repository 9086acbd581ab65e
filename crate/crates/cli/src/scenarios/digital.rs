use std::f64::consts::TAU;

use cqed_core::digital::{
    digital_fidelity_loss, error_budget, heisenberg_hamiltonian, heisenberg_protocol, trotter_bound,
    uniform_superposition, ErrorBudget,
};
use cqed_core::hamlib::Boundary;

use super::{linspace, positive};
use crate::error::{config_err, CliResult};
use crate::output::{Outcome, Table};
use crate::params::ParamSet;

pub fn run(p: &ParamSet) -> CliResult<Outcome> {
    let n = p.usize("n_qubits")?;
    let j = positive(p, "j")?;
    let eps = p.f64("epsilon")?;
    let steps = p.ints("trotter_steps")?.to_vec();
    if steps.is_empty() {
        return Err(config_err("trotter_steps is empty"));
    }
    let boundary: Boundary = p.text("boundary")?.parse()?;
    let thetas = linspace(0.0, positive(p, "theta_max")?, p.usize("n_theta")?)?;
    let h = heisenberg_hamiltonian(n, j, boundary)?;
    let psi0 = uniform_superposition(n)?;

    let mut header = vec!["theta".to_owned()];
    for prefix in ["loss", "trotter_bound", "gate_error"] {
        header.extend(steps.iter().map(|l| format!("{prefix}_l{l}")));
    }
    let mut table = Table::with_header("fidelity_loss.csv", header);
    for &theta in &thetas {
        let t = theta / (TAU * j);
        let mut row = vec![theta];
        for &l in &steps {
            let seq = heisenberg_protocol(n, j, t, l, boundary)?;
            row.push(digital_fidelity_loss(&seq, &h, t, &psi0)?);
        }
        row.extend(steps.iter().map(|&l| trotter_bound(n, j, t, l, boundary)));
        row.extend(steps.iter().map(|&l| eps * l as f64));
        table.push(row);
    }

    let t_max = thetas[thetas.len() - 1] / (TAU * j);
    let budget = ErrorBudget::default();
    let mut out = Outcome { tables: vec![table], ..Default::default() };
    for &l in &steps {
        let rep = error_budget(&heisenberg_protocol(n, j, t_max, l, boundary)?, &budget);
        out.diag(&format!("budget_total_error_l{l}"), rep.total_error);
        out.diag(&format!("budget_duration_ns_l{l}"), rep.duration_ns);
    }
    out.note("theta = 2 pi J t; the initial state is the uniform superposition of all basis states");
    out.note("gate-error lines are eps * l for a per-step error eps");
    out.note("budget durations use 10 ns per collective single-qubit pulse and t_2q = |theta| / (2 pi 6 MHz)");
    Ok(out)
}
