//! Closed and open-system time evolution.
//!
//! Every engine starts from the given state at `t = 0` and reports it at
//! each requested output time (ascending, non-negative, in ns).

pub(crate) mod dopri;

use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::hamlib::TimeDependentHamiltonian;
use crate::linalg::{self, r, CMatrix, HermitianEigen, I};
use crate::qops::{Operator, QuantumState, StateData};
use dopri::{Stepper, Tolerances};

#[derive(Clone, Debug, PartialEq)]
pub struct IntegratorConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    /// Largest internal step in ns.
    pub max_step: f64,
    /// Terminal-Fock population above which a warning is attached.
    pub leakage_threshold: f64,
    pub max_steps: usize,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-8,
            abs_tol: 1e-10,
            max_step: f64::INFINITY,
            leakage_threshold: 1e-6,
            max_steps: 50_000_000,
        }
    }
}

impl IntegratorConfig {
    pub fn with_tol(rel_tol: f64) -> Self {
        Self { rel_tol, abs_tol: rel_tol * 1e-2, ..Self::default() }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0 && self.max_step > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "tolerances and max_step must be positive ({self:?})"
            )));
        }
        Ok(())
    }

    pub(crate) fn tolerances(&self) -> Tolerances {
        Tolerances {
            rel: self.rel_tol,
            abs: self.abs_tol,
            max_step: self.max_step,
            max_steps: self.max_steps,
        }
    }
}

/// Output of an evolution run.
#[derive(Clone, Debug)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<QuantumState>,
    /// Largest terminal-Fock-level population seen at the output times.
    pub leakage: f64,
    /// Largest `|norm - 1|` (pure) or `|tr rho - 1|` (mixed) at the outputs.
    pub norm_drift: f64,
    /// Smallest density-matrix eigenvalue at the outputs (mixed runs only).
    pub min_eigenvalue: Option<f64>,
    pub steps: usize,
    pub warnings: Vec<String>,
}

impl Trajectory {
    fn new(times: &[f64], states: Vec<QuantumState>, steps: usize, cfg: &IntegratorConfig) -> Self {
        let leakage = states.iter().map(QuantumState::mode_leakage).fold(0.0, f64::max);
        let norm_drift = states
            .iter()
            .map(|s| match s.data() {
                StateData::Pure(v) => (v.norm() - 1.0).abs(),
                StateData::Mixed(m) => (linalg::trace(m) - r(1.0)).norm(),
            })
            .fold(0.0, f64::max);
        let mut warnings = Vec::new();
        if leakage > cfg.leakage_threshold {
            warnings.push(format!(
                "terminal Fock population {leakage:.3e} exceeds {:.1e}",
                cfg.leakage_threshold
            ));
        }
        Self {
            times: times.to_vec(),
            states,
            leakage,
            norm_drift,
            min_eigenvalue: None,
            steps,
            warnings,
        }
    }

    pub fn last(&self) -> &QuantumState {
        self.states.last().expect("trajectories hold at least one state")
    }

    /// Error unless the leakage stayed below `threshold`.
    pub fn ensure_leakage_below(&self, threshold: f64) -> Result<()> {
        if self.leakage > threshold {
            return Err(Error::CutoffInsufficient(format!(
                "terminal Fock population {:.3e} > {threshold:.1e}",
                self.leakage
            )));
        }
        Ok(())
    }
}

/// Hamiltonian plus collapse operators with rates in GHz (linear).
#[derive(Clone, Debug)]
pub struct LindbladModel {
    pub hamiltonian: TimeDependentHamiltonian,
    pub collapses: Vec<(Operator, f64)>,
}

impl LindbladModel {
    pub fn new(hamiltonian: TimeDependentHamiltonian) -> Self {
        Self { hamiltonian, collapses: Vec::new() }
    }

    pub fn with_collapse(mut self, op: Operator, rate: f64) -> Result<Self> {
        self.add_collapse(op, rate)?;
        Ok(self)
    }

    pub fn add_collapse(&mut self, op: Operator, rate: f64) -> Result<()> {
        self.hamiltonian.space().ensure_same(op.space())?;
        if !(rate >= 0.0) {
            return Err(Error::InvalidArgument(format!("collapse rate {rate} < 0")));
        }
        self.collapses.push((op, rate));
        Ok(())
    }
}

fn check_times(times: &[f64]) -> Result<()> {
    if times.is_empty() {
        return Err(Error::InvalidArgument("no output times".into()));
    }
    if times[0] < 0.0 || times.windows(2).any(|w| w[1] < w[0]) || times.iter().any(|t| !t.is_finite()) {
        return Err(Error::InvalidArgument("output times must be finite, >= 0 and ascending".into()));
    }
    Ok(())
}

/// `exp(-i H t) psi0` through one eigendecomposition of `H`.
pub fn evolve_unitary(h: &Operator, psi0: &QuantumState, times: &[f64]) -> Result<Trajectory> {
    h.ensure_hermitian(1e-10)?;
    h.space().ensure_same(psi0.space())?;
    check_times(times)?;
    let eig = HermitianEigen::new(h.matrix());
    let v = &eig.vectors;
    let vd = v.adjoint();
    let space = psi0.space().clone();
    let states = match psi0.data() {
        StateData::Pure(psi) => {
            let coeffs = &vd * psi;
            times
                .iter()
                .map(|&t| {
                    let mut c = coeffs.clone();
                    for (k, e) in eig.values.iter().enumerate() {
                        c[k] *= (-I * e * t).exp();
                    }
                    QuantumState::from_pure_unchecked(space.clone(), v * c)
                })
                .collect()
        }
        StateData::Mixed(rho) => {
            let inner = &vd * rho * v;
            times
                .iter()
                .map(|&t| {
                    let mut m = inner.clone();
                    let n = m.nrows();
                    for j in 0..n {
                        for i in 0..n {
                            m[(i, j)] *= (-I * (eig.values[i] - eig.values[j]) * t).exp();
                        }
                    }
                    QuantumState::from_mixed_unchecked(space.clone(), v * m * &vd)
                })
                .collect()
        }
    };
    let traj = Trajectory::new(times, states, 0, &IntegratorConfig::default());
    if traj.norm_drift > 1e-9 {
        return Err(Error::InvalidState(format!("norm drift {:.3e} in unitary propagation", traj.norm_drift)));
    }
    Ok(traj)
}

/// Integrates `d psi / dt = -i H(t) psi` without renormalization.
pub fn evolve_tdse(
    h: &TimeDependentHamiltonian,
    psi0: &QuantumState,
    times: &[f64],
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    check_times(times)?;
    h.space().ensure_same(psi0.space())?;
    let psi = psi0
        .vector()
        .ok_or_else(|| Error::InvalidState("evolve_tdse needs a pure state".into()))?;
    let n = psi.len();
    let y0 = CMatrix::from_column_slice(n, 1, psi.as_slice());
    let static_h = h.is_static().then(|| h.evaluate(0.0));
    let mut buf = CMatrix::zeros(n, n);
    let rhs = |t: f64, y: &CMatrix, out: &mut CMatrix| {
        let hm = match &static_h {
            Some(m) => m,
            None => {
                h.evaluate_into(t, &mut buf);
                &buf
            }
        };
        hm.mul_to(y, out);
        *out *= -I;
    };
    let mut stepper = Stepper::new(rhs, cfg.tolerances(), 0.0, y0);
    let space = psi0.space().clone();
    let mut states = Vec::with_capacity(times.len());
    for &t in times {
        stepper.advance_to(t)?;
        let v = stepper.state().column(0).into_owned();
        states.push(QuantumState::from_pure_unchecked(space.clone(), v));
    }
    Ok(Trajectory::new(times, states, stepper.steps, cfg))
}

/// Integrates `rho' = -i[H, rho] + sum_k 2 pi gamma_k L(A_k) rho` with
/// `L(A) rho = (2 A rho A† - A†A rho - rho A†A) / 2`.
pub fn evolve_lindblad(
    model: &LindbladModel,
    rho0: &QuantumState,
    times: &[f64],
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    check_times(times)?;
    let h = &model.hamiltonian;
    h.space().ensure_same(rho0.space())?;
    let rho = rho0.density_matrix();
    let n = rho.nrows();
    struct Channel {
        a: CMatrix,
        ad: CMatrix,
        half_ada: CMatrix,
        rate: f64,
    }
    let channels: Vec<Channel> = model
        .collapses
        .iter()
        .filter(|(_, rate)| *rate > 0.0)
        .map(|(op, rate)| {
            let a = op.matrix().clone();
            let ad = a.adjoint();
            let half_ada = &ad * &a * r(0.5);
            Channel { a, ad, half_ada, rate: TAU * rate }
        })
        .collect();
    let static_h = h.is_static().then(|| h.evaluate(0.0));
    let mut hbuf = CMatrix::zeros(n, n);
    let mut tmp = CMatrix::zeros(n, n);
    let rhs = |t: f64, y: &CMatrix, out: &mut CMatrix| {
        let hm = match &static_h {
            Some(m) => m,
            None => {
                h.evaluate_into(t, &mut hbuf);
                &hbuf
            }
        };
        // -i (H rho - rho H)
        hm.mul_to(y, out);
        y.mul_to(hm, &mut tmp);
        *out -= &tmp;
        *out *= -I;
        for ch in &channels {
            let jump = &ch.a * y * &ch.ad;
            let anti = &ch.half_ada * y + y * &ch.half_ada;
            out.zip_zip_apply(&jump, &anti, |o, j, a| *o += (j - a) * ch.rate);
        }
    };
    let mut stepper = Stepper::new(rhs, cfg.tolerances(), 0.0, rho).symmetrized();
    let space = rho0.space().clone();
    let mut states = Vec::with_capacity(times.len());
    let mut min_eig = f64::INFINITY;
    for &t in times {
        stepper.advance_to(t)?;
        let m = stepper.state().clone();
        let lowest = HermitianEigen::new(&m).min();
        min_eig = min_eig.min(lowest);
        if lowest < -1e-6 {
            return Err(Error::NegativeDensity { t, min_eig: lowest });
        }
        states.push(QuantumState::from_mixed_unchecked(space.clone(), m));
    }
    let mut traj = Trajectory::new(times, states, stepper.steps, cfg);
    traj.min_eigenvalue = Some(min_eig);
    Ok(traj)
}

/// `t -> e^{i H0 t} (H(t) - H0) e^{-i H0 t}`.
pub fn frame_transform(h: &TimeDependentHamiltonian, h0: &Operator) -> Result<TimeDependentHamiltonian> {
    h.in_frame_of(h0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hamlib::{
        build_cavity_qubit, build_two_tone, cavity_qubit_space, CavityQubitParams, Coefficient,
        CouplingForm, DriveParams,
    };
    use crate::linalg::c;
    use crate::qops::{ElementaryKind::*, HilbertSpace};

    fn jc(g: f64, n_fock: usize) -> Operator {
        build_cavity_qubit(&CavityQubitParams { omega_q: 5.0, omega_r: 5.0, g, n_fock }, CouplingForm::Jc)
            .unwrap()
    }

    fn excited_vacuum(n_fock: usize) -> QuantumState {
        QuantumState::basis(&cavity_qubit_space(n_fock).unwrap(), &[1, 0]).unwrap()
    }

    #[test]
    fn zero_hamiltonian_is_identity() {
        let psi = excited_vacuum(3);
        let h = Operator::zeros(psi.space());
        let tr = evolve_unitary(&h, &psi, &[0.0, 1.0, 100.0]).unwrap();
        for s in &tr.states {
            assert_eq!(s, &psi);
        }
    }

    #[test]
    fn vacuum_rabi_transfer() {
        let tr = evolve_unitary(&jc(0.01, 4), &excited_vacuum(4), &[12.5, 25.0]).unwrap();
        assert!((tr.states[0].level_population(0, 1).unwrap() - 0.5).abs() < 1e-9);
        assert!(tr.states[1].level_population(0, 1).unwrap() <= 1e-6);
        assert!(tr.norm_drift < 1e-12);
    }

    #[test]
    fn tdse_matches_unitary_for_static_h() {
        let h = jc(0.05, 5);
        let psi = QuantumState::product(&[
            &QuantumState::qubit(c(0.6, 0.0), c(0.0, 0.8)).unwrap(),
            &QuantumState::coherent(5, c(0.3, 0.1)).unwrap(),
        ])
        .unwrap();
        let times: Vec<f64> = (0..=4).map(|k| 1.5 * k as f64).collect();
        let exact = evolve_unitary(&h, &psi, &times).unwrap();
        // wrap as time dependent so the integrator has to evaluate it
        let mut td = TimeDependentHamiltonian::new(h.space());
        td.add(h.clone(), Coefficient::function(|_| c(1.0, 0.0))).unwrap();
        let num = evolve_tdse(&td, &psi, &times, &IntegratorConfig::default()).unwrap();
        for (a, b) in exact.states.iter().zip(&num.states) {
            let d = (a.vector().unwrap() - b.vector().unwrap()).norm();
            assert!(d < 1e-7, "{d}");
        }
        assert!(num.norm_drift < 1e-6);
    }

    #[test]
    fn resonant_drive_flops_at_twice_rabi_amplitude() {
        let p = CavityQubitParams { omega_q: 5.0, omega_r: 7.0, g: 0.0, n_fock: 2 };
        let d = DriveParams { rabi_1: 0.05, omega_1: 5.0, ..Default::default() };
        let lab = build_two_tone(&p, &d).unwrap();
        let space = lab.space().clone();
        let h0 = (&Operator::on(&space, 1, Number).unwrap()
            + &Operator::on(&space, 0, PauliZ).unwrap().scale_real(0.5))
            .scale_real(std::f64::consts::TAU * 5.0);
        let rot = frame_transform(&lab, &h0).unwrap();
        let psi = QuantumState::basis(&space, &[0, 0]).unwrap();
        let times: Vec<f64> = (0..=10).map(|k| k as f64).collect();
        let tr = evolve_tdse(&rot, &psi, &times, &IntegratorConfig::default()).unwrap();
        for (t, s) in times.iter().zip(&tr.states) {
            let expect = (std::f64::consts::TAU * 0.05 * t).sin().powi(2);
            let pe = s.level_population(0, 1).unwrap();
            assert!((pe - expect).abs() < 1e-7, "t = {t}: {pe} vs {expect}");
        }
    }

    #[test]
    fn frames_agree_on_populations() {
        let p = CavityQubitParams { omega_q: 5.0, omega_r: 5.02, g: 0.02, n_fock: 5 };
        let d = DriveParams { rabi_1: 0.1, omega_1: 5.0, rabi_2: 0.01, omega_2: 4.8, ..Default::default() };
        let lab = build_two_tone(&p, &d).unwrap();
        let space = lab.space().clone();
        let h0 = (&Operator::on(&space, 1, Number).unwrap()
            + &Operator::on(&space, 0, PauliZ).unwrap().scale_real(0.5))
            .scale_real(std::f64::consts::TAU * 5.0);
        let rot = frame_transform(&lab, &h0).unwrap();
        let psi = QuantumState::basis(&space, &[0, 0]).unwrap();
        let times = [0.0, 3.0, 11.0];
        let cfg = IntegratorConfig::with_tol(1e-10);
        let a = evolve_tdse(&lab, &psi, &times, &cfg).unwrap();
        let b = evolve_tdse(&rot, &psi, &times, &cfg).unwrap();
        // h0 is diagonal in the bare basis, so bare populations agree
        for (x, y) in a.states.iter().zip(&b.states) {
            for (u, v) in x.populations().iter().zip(y.populations()) {
                assert!((u - v).abs() < 1e-7);
            }
        }
    }

    #[test]
    fn closed_lindblad_matches_tdse() {
        let h = TimeDependentHamiltonian::from_static(jc(0.05, 4));
        let psi = excited_vacuum(4);
        let times = [0.0, 2.0, 7.0];
        let cfg = IntegratorConfig::with_tol(1e-10);
        let a = evolve_tdse(&h, &psi, &times, &cfg).unwrap();
        let model = LindbladModel::new(h)
            .with_collapse(Operator::on(psi.space(), 1, Annihilator).unwrap(), 0.0)
            .unwrap();
        let b = evolve_lindblad(&model, &psi, &times, &cfg).unwrap();
        for (x, y) in a.states.iter().zip(&b.states) {
            let d = linalg::max_abs(&(x.density_matrix() - y.density_matrix()));
            assert!(d < 1e-7, "{d}");
        }
    }

    #[test]
    fn amplitude_damping_rate() {
        let space = HilbertSpace::qubit();
        let h = TimeDependentHamiltonian::from_static(
            Operator::on(&space, 0, PauliZ).unwrap().scale_real(std::f64::consts::PI),
        );
        let gamma = 0.02;
        let model = LindbladModel::new(h)
            .with_collapse(Operator::on(&space, 0, SigmaMinus).unwrap(), gamma)
            .unwrap();
        let rho0 = QuantumState::qubit(c(0.6, 0.0), c(0.8, 0.0)).unwrap();
        let times = [0.0, 5.0, 20.0, 50.0];
        let tr = evolve_lindblad(&model, &rho0, &times, &IntegratorConfig::default()).unwrap();
        for (t, s) in times.iter().zip(&tr.states) {
            let expect = 0.64 * (-std::f64::consts::TAU * gamma * t).exp();
            assert!((s.level_population(0, 1).unwrap() - expect).abs() < 1e-8);
        }
        assert!(tr.norm_drift < 1e-8);
        assert!(tr.min_eigenvalue.unwrap() > -1e-10);
    }

    #[test]
    fn rejects_bad_inputs() {
        let psi = excited_vacuum(3);
        let h = Operator::zeros(psi.space());
        assert!(evolve_unitary(&h, &psi, &[1.0, 0.5]).is_err());
        let bad = Operator::on(psi.space(), 1, Annihilator).unwrap();
        assert!(matches!(evolve_unitary(&bad, &psi, &[1.0]), Err(Error::NotHermitian(_))));
        let model = LindbladModel::new(TimeDependentHamiltonian::from_static(h));
        assert!(model.with_collapse(bad, -1.0).is_err());
    }
}
