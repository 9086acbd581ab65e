use std::f64::consts::TAU;

use super::params::CavityQubitParams;
use crate::error::{Error, Result};
use crate::qops::{ElementaryKind::*, HilbertSpace, Operator};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CouplingForm {
    /// Rotating-wave coupling `g (sigma+ a + sigma- a†)`.
    Jc,
    /// Full coupling `g sigma_x (a + a†)`.
    Rabi,
}

/// `[qubit, mode(n_fock)]`.
pub fn cavity_qubit_space(n_fock: usize) -> Result<HilbertSpace> {
    Ok(HilbertSpace::qubit().concat(&HilbertSpace::mode(n_fock)?))
}

/// Qubit-side and mode-side operators shared by the single-cell builders.
pub(crate) struct CellOps {
    pub sz: Operator,
    pub sx: Operator,
    pub sy: Operator,
    pub sp: Operator,
    pub sm: Operator,
    pub a: Operator,
    pub ad: Operator,
    pub n: Operator,
}

impl CellOps {
    pub fn new(space: &HilbertSpace, qubit: usize, mode: usize) -> Result<Self> {
        let a = Operator::on(space, mode, Annihilator)?;
        Ok(Self {
            sz: Operator::on(space, qubit, PauliZ)?,
            sx: Operator::on(space, qubit, PauliX)?,
            sy: Operator::on(space, qubit, PauliY)?,
            sp: Operator::on(space, qubit, SigmaPlus)?,
            sm: Operator::on(space, qubit, SigmaMinus)?,
            ad: a.adjoint(),
            n: Operator::on(space, mode, Number)?,
            a,
        })
    }

    pub fn jc_coupling(&self) -> Operator {
        &(&self.sp * &self.a) + &(&self.sm * &self.ad)
    }

    pub fn rabi_coupling(&self) -> Operator {
        &self.sx * &(&self.a + &self.ad)
    }
}

/// Jaynes-Cummings or quantum Rabi Hamiltonian, qubit first, in rad/ns.
pub fn build_cavity_qubit(p: &CavityQubitParams, form: CouplingForm) -> Result<Operator> {
    p.validate()?;
    let space = cavity_qubit_space(p.n_fock)?;
    let o = CellOps::new(&space, 0, 1)?;
    let coupling = match form {
        CouplingForm::Jc => o.jc_coupling(),
        CouplingForm::Rabi => o.rabi_coupling(),
    };
    let h = o.sz.scale_real(p.omega_q / 2.0) + o.n.scale_real(p.omega_r) + coupling.scale_real(p.g);
    Ok(h.scale_real(TAU))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HoppingKind {
    Capacitive,
    Squid,
}

/// Cavity-cavity hopping amplitude in GHz.
///
/// `coupling_scale` is `C_c / C_r` for capacitive coupling. For the SQUID
/// coupler only a proportionality is known, so `coupling_scale` carries the
/// full prefactor (in GHz^2) in front of `1 / sqrt(omega_n omega_n')`.
pub fn estimate_hopping(
    kind: HoppingKind,
    omega_n: f64,
    omega_m: f64,
    coupling_scale: f64,
    u_n: f64,
    u_m: f64,
) -> Result<f64> {
    if !(omega_n > 0.0 && omega_m > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "cavity frequencies must be positive ({omega_n}, {omega_m})"
        )));
    }
    let root = (omega_n * omega_m).sqrt();
    Ok(match kind {
        HoppingKind::Capacitive => 0.5 * root * coupling_scale * u_n * u_m,
        HoppingKind::Squid => 0.5 * coupling_scale / root * u_n * u_m,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn params(g: f64) -> CavityQubitParams {
        CavityQubitParams { omega_q: 5.0, omega_r: 5.0, g, n_fock: 6 }
    }

    #[test]
    fn decoupled_spectrum() {
        let p = CavityQubitParams { omega_q: 4.0, omega_r: 6.5, g: 0.0, n_fock: 5 };
        let h = build_cavity_qubit(&p, CouplingForm::Rabi).unwrap();
        let mut expect: Vec<f64> = (0..5)
            .flat_map(|n| [-1.0, 1.0].map(|s| TAU * (6.5 * n as f64 + s * 2.0)))
            .collect();
        expect.sort_by(f64::total_cmp);
        for (a, b) in h.eigenvalues_hermitian().iter().zip(&expect) {
            assert_relative_eq!(*a, *b, epsilon = 1e-9);
        }
    }

    #[test]
    fn vacuum_rabi_splitting() {
        let g = 0.03;
        let h = build_cavity_qubit(&params(g), CouplingForm::Jc).unwrap();
        let ev = h.eigenvalues_hermitian();
        // ground |g,0> at -omega_q/2, then the n = 1 doublet
        assert_relative_eq!(ev[0], -TAU * 2.5, epsilon = 1e-9);
        assert_relative_eq!(ev[2] - ev[1], 2.0 * TAU * g, epsilon = 1e-9);
    }

    #[test]
    fn symmetries() {
        let p = CavityQubitParams { omega_q: 4.3, omega_r: 5.1, g: 0.4, n_fock: 7 };
        let space = cavity_qubit_space(7).unwrap();
        let o = CellOps::new(&space, 0, 1).unwrap();
        let excitations = &o.n + &(&o.sp * &o.sm);
        let jc = build_cavity_qubit(&p, CouplingForm::Jc).unwrap();
        assert!(crate::linalg::max_abs(jc.commutator(&excitations).unwrap().matrix()) < 1e-10);

        let mode_parity = o.n.scale(crate::linalg::I * std::f64::consts::PI).exp();
        let parity = &o.sz * &mode_parity;
        let rabi = build_cavity_qubit(&p, CouplingForm::Rabi).unwrap();
        assert!(crate::linalg::max_abs(rabi.commutator(&parity).unwrap().matrix()) < 1e-10);
        assert!(crate::linalg::max_abs(rabi.commutator(&excitations).unwrap().matrix()) > 1e-3);
    }

    #[test]
    fn hopping_formulas() {
        let j = estimate_hopping(HoppingKind::Capacitive, 5.0, 5.0, 0.01, 1.0, 1.0).unwrap();
        assert_relative_eq!(j, 0.025, epsilon = 1e-15);
        for kind in [HoppingKind::Capacitive, HoppingKind::Squid] {
            assert_eq!(estimate_hopping(kind, 5.0, 6.0, 0.3, 0.0, 0.7).unwrap(), 0.0);
        }
        let a = estimate_hopping(HoppingKind::Capacitive, 5.0, 7.0, 0.02, 0.8, 0.3).unwrap();
        let b = estimate_hopping(HoppingKind::Capacitive, 7.0, 5.0, 0.02, 0.3, 0.8).unwrap();
        assert_relative_eq!(a, b, epsilon = 1e-15);
        assert!(estimate_hopping(HoppingKind::Squid, 0.0, 5.0, 1.0, 1.0, 1.0).is_err());
    }
}
