use std::f64::consts::TAU;

use super::gates::{Axis, GateKind};
use super::protocol::{heisenberg_hamiltonian, heisenberg_protocol};
use crate::error::{Error, Result};
use crate::evolve::dopri::Stepper;
use crate::evolve::IntegratorConfig;
use crate::hamlib::{build_transmon_multilevel, transmon_ladder, Boundary};
use num_complex::Complex64;

use crate::linalg::{r, CMatrix, CVector, HermitianEigen, I};
use crate::qops::{elementary, ElementaryKind, HilbertSpace, Operator};

/// Two multilevel transmons dispersively coupled through one cavity.
#[derive(Clone, Debug, PartialEq)]
pub struct DispersiveParams {
    /// Transmon 0-1 frequency, GHz.
    pub omega_1: f64,
    /// Relative anharmonicity (level 2 sits at `(2 + alpha) omega_1`).
    pub anharmonicity: f64,
    pub omega_r: f64,
    pub g0: f64,
    pub n_levels: usize,
    pub n_fock: usize,
    /// Cavity decay rate, GHz.
    pub kappa: f64,
    pub gamma_phi: f64,
    pub gamma_minus: f64,
}

impl Default for DispersiveParams {
    fn default() -> Self {
        Self {
            omega_1: 5.0,
            anharmonicity: -0.1,
            omega_r: 7.5,
            g0: 0.2,
            n_levels: 3,
            n_fock: 5,
            kappa: 1e-5,
            gamma_phi: 2e-5,
            gamma_minus: 2e-5,
        }
    }
}

impl DispersiveParams {
    pub fn validate(&self) -> Result<()> {
        if self.n_levels < 2 || self.n_fock < 1 {
            return Err(Error::InvalidArgument("need >= 2 transmon levels and >= 1 Fock state".into()));
        }
        let rates = [self.kappa, self.gamma_phi, self.gamma_minus];
        if rates.iter().any(|g| !(g.is_finite() && *g >= 0.0)) {
            return Err(Error::InvalidArgument("decay rates must be finite and >= 0".into()));
        }
        if !(self.omega_1 > 0.0 && self.omega_r > 0.0 && self.g0.is_finite()) {
            return Err(Error::InvalidArgument("frequencies must be positive".into()));
        }
        Ok(())
    }

    pub fn without_dissipation(&self) -> Self {
        Self { kappa: 0.0, gamma_phi: 0.0, gamma_minus: 0.0, ..self.clone() }
    }
}

/// Outcome of one digital Heisenberg step built from dispersive segments.
#[derive(Clone, Debug)]
pub struct DispersiveRun {
    pub theta: f64,
    /// `<ideal| rho_q |ideal>` with `rho_q` the cavity-traced state on
    /// the qubit levels, not renormalized.
    pub fidelity: f64,
    pub ideal_sx: [f64; 2],
    pub sim_sx: [f64; 2],
    /// Population outside levels {0, 1} of either transmon.
    pub leakage: f64,
    pub trace_deviation: f64,
    pub min_eigenvalue: f64,
    pub qubit_state: CMatrix,
}

/// Calibrated dispersive model.
///
/// The exchange rate is read off the dressed spectrum: the two
/// eigenstates with most weight on `|100>, |010>` split by `2 J`. The
/// segment frame removes the bare energies plus the common dressed
/// shift of the single-excitation manifold, so a segment of length
/// `theta / |J|` is an XY gate of phase `theta` up to dispersive errors.
#[derive(Clone, Debug)]
pub struct DispersiveModel {
    params: DispersiveParams,
    space: HilbertSpace,
    hamiltonian: Operator,
    eigen: HermitianEigen,
    exchange: f64,
    frame: Vec<f64>,
    collapses: Vec<(CMatrix, f64)>,
}

impl DispersiveModel {
    pub fn new(params: DispersiveParams) -> Result<Self> {
        params.validate()?;
        let ladder = transmon_ladder(params.omega_1, params.anharmonicity, params.n_levels);
        let hamiltonian =
            build_transmon_multilevel(&[ladder.clone(), ladder.clone()], params.omega_r, params.g0, params.n_fock)?;
        let space = hamiltonian.space().clone();
        let eigen = HermitianEigen::new(hamiltonian.matrix());
        let idx = |i, j| space.ravel(&[i, j, 0]);
        let weight = |k: usize, states: &[usize]| -> f64 {
            states.iter().map(|&s| eigen.vectors[(s, k)].norm_sqr()).sum()
        };
        let n = space.total_dim();
        let ground = idx(0, 0)?;
        let k0 = (0..n)
            .max_by(|&a, &b| weight(a, &[ground]).total_cmp(&weight(b, &[ground])))
            .expect("non-empty space");
        let (s10, s01) = (idx(1, 0)?, idx(0, 1)?);
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| weight(b, &[s10, s01]).total_cmp(&weight(a, &[s10, s01])));
        let (mut lo, mut hi) = (order[0], order[1]);
        if eigen.values[lo] > eigen.values[hi] {
            std::mem::swap(&mut lo, &mut hi);
        }
        let symmetric = (eigen.vectors[(s10, hi)] * eigen.vectors[(s01, hi)].conj()).re;
        let exchange = 0.5 * (eigen.values[hi] - eigen.values[lo]) * symmetric.signum();
        let shift = 0.5 * (eigen.values[lo] + eigen.values[hi]) - eigen.values[k0];

        let mut frame = Vec::with_capacity(n);
        for k in 0..n {
            let d = space.unravel(k);
            let bare = ladder[d[0]] + ladder[d[1]] + params.omega_r * d[2] as f64;
            let ones = (d[0] == 1) as usize + (d[1] == 1) as usize;
            frame.push(TAU * bare + (shift - TAU * params.omega_1) * ones as f64);
        }

        let mut collapses = Vec::new();
        let a = Operator::on(&space, 2, ElementaryKind::Annihilator)?;
        collapses.push((a.into_matrix(), params.kappa));
        for q in 0..2 {
            let p1 = Operator::on(&space, q, ElementaryKind::Projector(1, 1))?;
            let p0 = Operator::on(&space, q, ElementaryKind::Projector(0, 0))?;
            collapses.push(((&p1 - &p0).into_matrix(), params.gamma_phi));
            let lower = Operator::on(&space, q, ElementaryKind::Projector(0, 1))?;
            collapses.push((lower.into_matrix(), params.gamma_minus));
        }
        collapses.retain(|(_, g)| *g > 0.0);
        Ok(Self { params, space, hamiltonian, eigen, exchange, frame, collapses })
    }

    pub fn params(&self) -> &DispersiveParams {
        &self.params
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn hamiltonian(&self) -> &Operator {
        &self.hamiltonian
    }

    /// Signed calibrated exchange `J`, GHz.
    pub fn exchange_ghz(&self) -> f64 {
        self.exchange / TAU
    }

    pub fn segment_time(&self, theta: f64) -> f64 {
        theta.abs() / self.exchange.abs()
    }

    /// Embed a two-qubit amplitude vector on levels {0,1} with the cavity in vacuum.
    pub fn embed(&self, q: &CVector) -> Result<CVector> {
        if q.len() != 4 {
            return Err(Error::DimensionMismatch(format!("two-qubit vector of length {}", q.len())));
        }
        let mut psi = CVector::zeros(self.space.total_dim());
        for i in 0..2 {
            for j in 0..2 {
                psi[self.space.ravel(&[i, j, 0])?] = q[2 * i + j];
            }
        }
        Ok(psi)
    }

    /// `(|1> + 2|0>)/sqrt 5` on the first transmon, `|0>` on the second.
    pub fn default_initial_qubits() -> CVector {
        let s = 5f64.sqrt();
        CVector::from_vec(vec![r(2.0 / s), r(0.0), r(1.0 / s), r(0.0)])
    }

    /// `exp(-i sign(J) theta (XX + YY + ZZ)) q0`.
    pub fn ideal(&self, theta: f64, q0: &CVector) -> Result<CVector> {
        let h = heisenberg_hamiltonian(2, 1.0 / TAU, Boundary::Open)?;
        Ok(h.propagator(self.exchange.signum() * theta)?.apply(q0))
    }

    fn rotation(&self, axis: Axis, targets: &[usize], angle: f64) -> Result<CMatrix> {
        let kind = match axis {
            Axis::X => ElementaryKind::PauliX,
            Axis::Y => ElementaryKind::PauliY,
            Axis::Z => ElementaryKind::PauliZ,
        };
        let sigma = elementary(kind, 2)?.into_matrix();
        let d = self.params.n_levels;
        let mut single = CMatrix::identity(d, d);
        let block = CMatrix::identity(2, 2) * r(angle.cos()) - sigma * (I * angle.sin());
        single.view_mut((0, 0), (2, 2)).copy_from(&block);
        let id = CMatrix::identity(d, d);
        let f0 = if targets.contains(&0) { &single } else { &id };
        let f1 = if targets.contains(&1) { &single } else { &id };
        Ok(f0.kronecker(f1).kronecker(&CMatrix::identity(self.params.n_fock, self.params.n_fock)))
    }

    /// `e^{i H0 tau} e^{-i H tau}`.
    fn segment(&self, tau: f64) -> CMatrix {
        let mut u = self.eigen.propagator(tau);
        for (k, mut row) in u.row_iter_mut().enumerate() {
            row *= (I * self.frame[k] * tau).exp();
        }
        u
    }

    /// Closed-system run: pure segments and perfect rotations.
    pub fn run_closed(&self, theta: f64, q0: &CVector) -> Result<DispersiveRun> {
        let mut psi = self.embed(q0)?;
        self.apply_protocol(theta, |step| {
            psi = match step {
                Step::Unitary(u) => u * &psi,
                Step::Segment(tau) => self.segment(tau) * &psi,
            };
            Ok(())
        })?;
        let rho = &psi * psi.adjoint();
        self.summarize(theta, q0, rho)
    }

    /// Master-equation run. Each segment is integrated in the interaction
    /// picture of the full static Hamiltonian, where only the slow
    /// dissipator remains.
    pub fn run_open(&self, theta: f64, q0: &CVector, cfg: &IntegratorConfig) -> Result<DispersiveRun> {
        cfg.validate()?;
        let psi = self.embed(q0)?;
        let mut rho = &psi * psi.adjoint();
        let mut min_eig = f64::INFINITY;
        self.apply_protocol(theta, |step| {
            rho = match step {
                Step::Unitary(u) => u * &rho * u.adjoint(),
                Step::Segment(tau) => {
                    let out = self.dissipative_segment(&rho, tau, cfg)?;
                    min_eig = min_eig.min(HermitianEigen::new(&out).min());
                    out
                }
            };
            Ok(())
        })?;
        if min_eig < -1e-6 {
            return Err(Error::NegativeDensity { t: f64::NAN, min_eig });
        }
        let mut run = self.summarize(theta, q0, rho)?;
        run.min_eigenvalue = run.min_eigenvalue.min(min_eig);
        Ok(run)
    }

    fn dissipative_segment(&self, rho: &CMatrix, tau: f64, cfg: &IntegratorConfig) -> Result<CMatrix> {
        let v = &self.eigen.vectors;
        let vd = v.adjoint();
        let e = &self.eigen.values;
        let n = e.len();
        // rho_I lives in the eigenbasis, where e^{-iHt} is diagonal; the
        // dissipator is applied in the bare basis, where it is sparse.
        let rate = |g: f64| r(TAU * g);
        let channels: Vec<(Vec<(usize, usize, Complex64)>, Complex64)> =
            self.collapses.iter().map(|(a, g)| (nonzeros(a), rate(*g))).collect();
        let mut decay = CMatrix::zeros(n, n);
        for (a, g) in &self.collapses {
            decay += a.adjoint() * a * r(0.5 * TAU * g);
        }
        let decay = nonzeros(&decay);
        let mut rho_out = &vd * rho * v;
        if !channels.is_empty() {
            let mut x = CMatrix::zeros(n, n);
            let mut d = CMatrix::zeros(n, n);
            let mut ph = vec![r(1.0); n];
            let rhs = |t: f64, y: &CMatrix, out: &mut CMatrix| {
                for (p, &ei) in ph.iter_mut().zip(e) {
                    *p = (-I * ei * t).exp();
                }
                for j in 0..n {
                    for i in 0..n {
                        out[(i, j)] = y[(i, j)] * ph[i] * ph[j].conj();
                    }
                }
                v.mul_to(out, &mut d);
                d.mul_to(&vd, &mut x);
                d.fill(r(0.0));
                for &(i, k, kv) in &decay {
                    for j in 0..n {
                        let (xi, xj) = (x[(k, j)], x[(j, i)]);
                        d[(i, j)] -= kv * xi;
                        d[(j, k)] -= xj * kv;
                    }
                }
                for (entries, g) in channels.iter() {
                    for &(i, k, a1) in entries {
                        for &(j, l, a2) in entries {
                            d[(i, j)] += *g * a1 * x[(k, l)] * a2.conj();
                        }
                    }
                }
                vd.mul_to(&d, &mut x);
                x.mul_to(v, out);
                for j in 0..n {
                    for i in 0..n {
                        out[(i, j)] *= ph[i].conj() * ph[j];
                    }
                }
            };
            let mut stepper = Stepper::new(rhs, cfg.tolerances(), 0.0, rho_out).symmetrized();
            stepper.advance_to(tau)?;
            rho_out = stepper.state().clone();
        }
        let phases: Vec<_> = e.iter().map(|&x| (-I * x * tau).exp()).collect();
        for j in 0..n {
            for i in 0..n {
                rho_out[(i, j)] *= phases[i] * phases[j].conj();
            }
        }
        let mut lab = v * rho_out * &vd;
        for j in 0..n {
            for i in 0..n {
                lab[(i, j)] *= (I * (self.frame[i] - self.frame[j]) * tau).exp();
            }
        }
        Ok(lab)
    }

    fn apply_protocol(&self, theta: f64, mut f: impl FnMut(Step) -> Result<()>) -> Result<()> {
        if !theta.is_finite() || theta < 0.0 {
            return Err(Error::InvalidArgument(format!("theta = {theta} must be >= 0")));
        }
        let j = self.exchange_ghz().abs();
        let seq = heisenberg_protocol(2, j, self.segment_time(theta), 1, Boundary::Open)?;
        for g in &seq.gates {
            match g.kind {
                GateKind::Xy { .. } => f(Step::Segment(g.phase() / self.exchange.abs()))?,
                GateKind::Rot { axis, angle } => {
                    let u = self.rotation(axis, &g.targets, angle)?;
                    f(Step::Unitary(&u))?
                }
            }
        }
        Ok(())
    }

    fn summarize(&self, theta: f64, q0: &CVector, rho: CMatrix) -> Result<DispersiveRun> {
        let nf = self.params.n_fock;
        let mut q = CMatrix::zeros(4, 4);
        for a in 0..4 {
            for b in 0..4 {
                for n in 0..nf {
                    let ia = self.space.ravel(&[a / 2, a % 2, n])?;
                    let ib = self.space.ravel(&[b / 2, b % 2, n])?;
                    q[(a, b)] += rho[(ia, ib)];
                }
            }
        }
        let ideal = self.ideal(theta, q0)?;
        let fidelity = (ideal.adjoint() * &q * &ideal)[(0, 0)].re;
        let qs = HilbertSpace::qubits(2)?;
        let sx = |k| Operator::on(&qs, k, ElementaryKind::PauliX);
        let (x0, x1) = (sx(0)?, sx(1)?);
        let ev_pure = |op: &Operator| ideal.dotc(&op.apply(&ideal)).re;
        let ev_mixed = |op: &Operator| (op.matrix() * &q).trace().re;
        let trace = rho.trace().re;
        Ok(DispersiveRun {
            theta,
            fidelity,
            ideal_sx: [ev_pure(&x0), ev_pure(&x1)],
            sim_sx: [ev_mixed(&x0), ev_mixed(&x1)],
            leakage: (trace - q.trace().re).max(0.0),
            trace_deviation: (trace - 1.0).abs(),
            min_eigenvalue: HermitianEigen::new(&rho).min(),
            qubit_state: q,
        })
    }
}

fn nonzeros(m: &CMatrix) -> Vec<(usize, usize, Complex64)> {
    let mut out = Vec::new();
    for j in 0..m.ncols() {
        for i in 0..m.nrows() {
            if m[(i, j)] != r(0.0) {
                out.push((i, j, m[(i, j)]));
            }
        }
    }
    out
}

enum Step<'a> {
    Unitary(&'a CMatrix),
    Segment(f64),
}
