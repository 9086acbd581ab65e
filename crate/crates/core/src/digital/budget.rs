use std::f64::consts::TAU;

use super::gates::GateSequence;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Aggregation {
    /// Total error is the sum of per-gate errors.
    #[default]
    Additive,
    /// Total error is `1 - prod (1 - eps)`.
    Multiplicative,
}

/// Per-gate error rates and durations.
///
/// An XY gate of exchange phase `theta` lasts `|theta| / (2 pi coupling)`;
/// a collective single-qubit pulse lasts `t_1q` regardless of how many
/// qubits it addresses. The durations are calibrated so that the two-qubit
/// protocol at `theta = pi/4` takes about 0.10 us.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ErrorBudget {
    pub eps_1q: f64,
    pub eps_2q: f64,
    /// ns per collective rotation pulse.
    pub t_1q: f64,
    /// Exchange coupling (GHz) that sets the XY gate duration.
    pub coupling: f64,
    pub aggregation: Aggregation,
}

impl Default for ErrorBudget {
    fn default() -> Self {
        Self { eps_1q: 0.01, eps_2q: 0.05, t_1q: 10.0, coupling: 0.006, aggregation: Aggregation::Additive }
    }
}

impl ErrorBudget {
    pub fn t_2q(&self, theta: f64) -> f64 {
        theta.abs() / (TAU * self.coupling)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BudgetReport {
    pub total_error: f64,
    pub duration_ns: f64,
    pub two_qubit_gates: usize,
    /// Counted per addressed qubit.
    pub single_qubit_gates: usize,
}

impl BudgetReport {
    pub fn fidelity(&self) -> f64 {
        1.0 - self.total_error
    }
}

pub fn error_budget(seq: &GateSequence, b: &ErrorBudget) -> BudgetReport {
    let n2 = seq.two_qubit_count();
    let n1 = seq.single_qubit_count();
    let total_error = match b.aggregation {
        Aggregation::Additive => n2 as f64 * b.eps_2q + n1 as f64 * b.eps_1q,
        Aggregation::Multiplicative => {
            1.0 - (1.0 - b.eps_2q).powi(n2 as i32) * (1.0 - b.eps_1q).powi(n1 as i32)
        }
    };
    let duration_ns = seq
        .gates
        .iter()
        .map(|g| if g.is_two_qubit() { b.t_2q(g.phase()) } else { b.t_1q })
        .sum();
    BudgetReport { total_error, duration_ns, two_qubit_gates: n2, single_qubit_gates: n1 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digital::heisenberg_protocol;
    use crate::hamlib::Boundary;
    use std::f64::consts::PI;

    fn t_quarter() -> f64 {
        (PI / 4.0) / (TAU * 0.006)
    }

    #[test]
    fn two_qubit_budget() {
        let seq = heisenberg_protocol(2, 0.006, t_quarter(), 1, Boundary::Open).unwrap();
        let rep = error_budget(&seq, &ErrorBudget::default());
        assert!((rep.fidelity() - 0.77).abs() < 1e-12);
        assert!((rep.duration_ns - 102.5).abs() < 0.1);
        let zero = ErrorBudget { eps_1q: 0.0, eps_2q: 0.0, ..Default::default() };
        assert_eq!(error_budget(&seq, &zero).total_error, 0.0);
        let mult = ErrorBudget { aggregation: Aggregation::Multiplicative, ..Default::default() };
        let m = error_budget(&seq, &mult).total_error;
        assert!(m < rep.total_error && m > 0.2);
    }

    #[test]
    fn three_qubit_step_time() {
        let seq = heisenberg_protocol(3, 0.006, t_quarter(), 1, Boundary::Open).unwrap();
        let rep = error_budget(&seq, &ErrorBudget::default());
        assert!((rep.duration_ns - 165.0).abs() < 0.1);
    }
}
