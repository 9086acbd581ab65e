use std::sync::{Arc, Mutex};

use num_complex::Complex64;

use super::jw::{jordan_wigner_on, FermionModeMap, FermionOp};
use super::wavepacket::{MomentumQuadrature, WavepacketEnvelope};
use crate::error::{Error, Result};
use crate::hamlib::{Coefficient, TimeDependentHamiltonian, MAX_DENSE_DIM};
use crate::linalg::{c, I};
use crate::qops::{ElementaryKind, HilbertSpace, Operator};

/// Discretized bosonic line: one truncated mode per momentum.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuumSpec {
    pub k_grid: Vec<f64>,
    /// Per-mode coupling with the density of states folded in.
    pub g_k: Vec<f64>,
    /// Qubit positions on the line (system qubits first, then the ancilla).
    pub x_positions: Vec<f64>,
    pub n_fock: usize,
    /// Trapezoid grid for the position integral of the interaction.
    pub x_range: (f64, f64),
    pub n_x: usize,
    pub momentum: MomentumQuadrature,
}

impl ContinuumSpec {
    /// Midpoint grid of `n_k` momenta on `[k_min, k_max]` with
    /// `g_k = coupling * sqrt(dk)`.
    pub fn uniform(k_min: f64, k_max: f64, n_k: usize, coupling: f64, n_fock: usize) -> Result<Self> {
        if n_k == 0 || !(k_max > k_min) {
            return Err(Error::InvalidArgument(format!("bad k interval [{k_min}, {k_max}] with {n_k} modes")));
        }
        let dk = (k_max - k_min) / n_k as f64;
        let spec = Self {
            k_grid: (0..n_k).map(|i| k_min + (i as f64 + 0.5) * dk).collect(),
            g_k: vec![coupling * dk.sqrt(); n_k],
            x_positions: vec![-0.5, 0.5, 0.0],
            n_fock,
            x_range: (-12.0, 12.0),
            n_x: 97,
            momentum: MomentumQuadrature::default(),
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn n_modes(&self) -> usize {
        self.k_grid.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.k_grid.len() != self.g_k.len() {
            return Err(Error::InvalidArgument(format!(
                "{} momenta but {} couplings",
                self.k_grid.len(),
                self.g_k.len()
            )));
        }
        if self.k_grid.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidArgument("k grid must be strictly increasing".into()));
        }
        if self.g_k.iter().any(|g| !(*g >= 0.0 && g.is_finite())) {
            return Err(Error::InvalidArgument("couplings g_k must be finite and >= 0".into()));
        }
        if self.n_fock < 2 {
            return Err(Error::InvalidArgument("boson cutoff must be >= 2".into()));
        }
        if self.n_x < 2 || !(self.x_range.1 > self.x_range.0) {
            return Err(Error::InvalidArgument("x grid needs >= 2 points on a proper interval".into()));
        }
        Ok(())
    }

    /// Trapezoid nodes and weights on `x_range`.
    pub fn x_grid(&self) -> (Vec<f64>, Vec<f64>) {
        let (lo, hi) = self.x_range;
        let h = (hi - lo) / (self.n_x - 1) as f64;
        let xs = (0..self.n_x).map(|i| lo + i as f64 * h).collect();
        let ws = (0..self.n_x)
            .map(|i| if i == 0 || i == self.n_x - 1 { 0.5 * h } else { h })
            .collect();
        (xs, ws)
    }

    /// `qubits(n_qubits) ⊗ extra ⊗ mode(n_fock)^{n_k}`.
    pub fn space(&self, n_qubits: usize, extra: Option<&HilbertSpace>) -> Result<HilbertSpace> {
        self.validate()?;
        let mut space = HilbertSpace::qubits(n_qubits)?;
        if let Some(e) = extra {
            space = space.concat(e);
        }
        let mode = HilbertSpace::mode(self.n_fock)?;
        let mut total = space.total_dim();
        for _ in 0..self.n_modes() {
            total = total.saturating_mul(self.n_fock);
            if total > MAX_DENSE_DIM {
                return Err(Error::SizeGuard(total, MAX_DENSE_DIM));
            }
            space = space.concat(&mode);
        }
        Ok(space)
    }

    /// `sum_k g_k (a_k† e^{-ikx} - a_k e^{ikx})`, anti-Hermitian, with mode
    /// `k` on slot `first_mode + k`.
    pub fn field_generator(&self, space: &HilbertSpace, first_mode: usize, x: f64) -> Result<Operator> {
        let mut f = Operator::zeros(space);
        for (k, (&kk, &g)) in self.k_grid.iter().zip(&self.g_k).enumerate() {
            let a = Operator::on(space, first_mode + k, ElementaryKind::Annihilator)?;
            let phase = (-I * kk * x).exp();
            f += &(a.adjoint().scale(phase * g) - a.scale(phase.conj() * g));
        }
        Ok(f)
    }
}

/// Wavepacket fields `Lambda_1(x, t)` and `Lambda_2(x, t)` on a position grid.
pub type LambdaFields = dyn Fn(&[f64], f64) -> (Vec<Complex64>, Vec<Complex64>) + Send + Sync;

/// Fermion-boson interaction on one particle and one antiparticle mode:
/// `i sum_k sum_x w_x g_k B(x, t) (a_k† e^{-ikx} - a_k e^{ikx})` with
/// `B = |L1|^2 b†b + L1* L2 b†d† + L2* L1 d b + |L2|^2 d d†`.
///
/// The last bilinear is kept as `d d†`; normal ordering it leaves a pure
/// field-displacement term proportional to `|L2|^2`. Slots: b qubit, d
/// qubit, then one mode per momentum.
pub fn build_qft_interaction(
    env_f: &WavepacketEnvelope,
    env_fbar: &WavepacketEnvelope,
    cont: &ContinuumSpec,
) -> Result<TimeDependentHamiltonian> {
    let quad = cont.momentum;
    let particle = quadrature_table(env_f, &quad, 1.0)?;
    let anti = quadrature_table(env_fbar, &quad, -1.0)?;
    let fields = move |xs: &[f64], t: f64| (particle.eval(xs, t), anti.eval(xs, t));
    build_qft_interaction_with(cont, Arc::new(fields))
}

/// [`build_qft_interaction`] with arbitrary coefficient fields.
pub fn build_qft_interaction_with(
    cont: &ContinuumSpec,
    fields: Arc<LambdaFields>,
) -> Result<TimeDependentHamiltonian> {
    let space = cont.space(2, None)?;
    let map = FermionModeMap::new(2)?;
    let jw = |index, kind| jordan_wigner_on(&space, 0, &map, index, kind);
    let (bd, b) = (jw(1, FermionOp::BDag)?, jw(1, FermionOp::B)?);
    let (dd, d) = (jw(2, FermionOp::DDag)?, jw(2, FermionOp::D)?);
    let bilinears = [&bd * &b, &bd * &dd, &d * &b, &d * &dd];

    let (xs, ws) = cont.x_grid();
    let n_k = cont.n_modes();
    // e^{-ikx} w_x g_k per (k, x)
    let kernel: Vec<Vec<Complex64>> = cont
        .k_grid
        .iter()
        .zip(&cont.g_k)
        .map(|(&k, &g)| xs.iter().zip(&ws).map(|(&x, &w)| (-I * k * x).exp() * (w * g)).collect())
        .collect();
    let cache = Arc::new(Mutex::new((f64::NAN, Vec::<Complex64>::new())));
    let coefficients = {
        let cache = Arc::clone(&cache);
        move |t: f64| -> Vec<Complex64> {
            let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
            if guard.0.to_bits() != t.to_bits() {
                let (l1, l2) = fields(&xs, t);
                let dens = [
                    l1.iter().map(|z| c(z.norm_sqr(), 0.0)).collect::<Vec<_>>(),
                    l1.iter().zip(&l2).map(|(a, b)| a.conj() * b).collect(),
                    l1.iter().zip(&l2).map(|(a, b)| b.conj() * a).collect(),
                    l2.iter().map(|z| c(z.norm_sqr(), 0.0)).collect(),
                ];
                // Layout: [j][k][creation, annihilation].
                let mut out = Vec::with_capacity(8 * n_k);
                for dj in &dens {
                    for kr in &kernel {
                        let create: Complex64 = dj.iter().zip(kr).map(|(d, e)| d * e).sum();
                        let destroy: Complex64 = dj.iter().zip(kr).map(|(d, e)| d * e.conj()).sum();
                        out.push(create);
                        out.push(destroy);
                    }
                }
                *guard = (t, out);
            }
            guard.1.clone()
        }
    };
    let coefficients = Arc::new(coefficients);

    let mut h = TimeDependentHamiltonian::new(&space);
    for (j, op) in bilinears.iter().enumerate() {
        for k in 0..n_k {
            let a = Operator::on(&space, 2 + k, ElementaryKind::Annihilator)?;
            let base = 2 * (j * n_k + k);
            let up = Arc::clone(&coefficients);
            let down = Arc::clone(&coefficients);
            h.add((op * &a.adjoint()).scale(I), Coefficient::function(move |t| up(t)[base]))?;
            h.add((op * &a).scale(-I), Coefficient::function(move |t| down(t)[base + 1]))?;
        }
    }
    Ok(h)
}

struct QuadratureTable {
    sign: f64,
    /// `(p, w Omega(p) / sqrt(2 (2 pi) omega_p), omega_p)`
    nodes: Vec<(f64, f64, f64)>,
}

fn quadrature_table(env: &WavepacketEnvelope, quad: &MomentumQuadrature, sign: f64) -> Result<QuadratureTable> {
    let nodes = quad
        .nodes(env)?
        .into_iter()
        .map(|(p, w)| {
            let om = env.omega(p);
            if om <= 0.0 {
                return Err(Error::InvalidArgument("omega_p vanishes on the quadrature grid".into()));
            }
            let amp = w * env.amplitude(p) / (4.0 * std::f64::consts::PI * om).sqrt();
            Ok((p, amp, om))
        })
        .collect::<Result<_>>()?;
    Ok(QuadratureTable { sign, nodes })
}

impl QuadratureTable {
    fn eval(&self, xs: &[f64], t: f64) -> Vec<Complex64> {
        let timed: Vec<(f64, Complex64)> = self
            .nodes
            .iter()
            .map(|&(p, amp, om)| (p, (-I * self.sign * om * t).exp() * amp))
            .collect();
        xs.iter()
            .map(|&x| timed.iter().map(|&(p, a)| a * (I * self.sign * p * x).exp()).sum())
            .collect()
    }
}

/// Setup Hamiltonian on two system qubits, an ancilla, one cavity mode and
/// the discretized line:
/// `i sum_j beta_j sigma_j^y F(x_j) + i sum_{j<2} alpha_j g_cav sigma_j^y (b† - b)`.
///
/// `alpha` and `beta` stand in for the flux-tunable couplings and must lie
/// in [0, 1]. Slots: qubits 0..3, cavity, then the line modes.
pub fn build_hsetup(
    beta: [f64; 3],
    alpha: [f64; 2],
    cont: &ContinuumSpec,
    g_cav: f64,
    cavity_fock: usize,
) -> Result<Operator> {
    if beta.iter().chain(&alpha).any(|v| !(0.0..=1.0).contains(v)) {
        return Err(Error::OutOfRange(format!("controls beta {beta:?}, alpha {alpha:?} must lie in [0, 1]")));
    }
    if cont.x_positions.len() < 3 {
        return Err(Error::InvalidArgument("need positions for 2 system qubits and the ancilla".into()));
    }
    let cavity = HilbertSpace::mode(cavity_fock)?;
    let space = cont.space(3, Some(&cavity))?;
    let mut h = Operator::zeros(&space);
    for (j, &bj) in beta.iter().enumerate() {
        if bj == 0.0 {
            continue;
        }
        let sy = Operator::on(&space, j, ElementaryKind::PauliY)?;
        let f = cont.field_generator(&space, 4, cont.x_positions[j])?;
        h += &(&sy * &f).scale(I * bj);
    }
    let b = Operator::on(&space, 3, ElementaryKind::Annihilator)?;
    let cav = &b.adjoint() - &b;
    for (j, &aj) in alpha.iter().enumerate() {
        if aj == 0.0 {
            continue;
        }
        let sy = Operator::on(&space, j, ElementaryKind::PauliY)?;
        h += &(&sy * &cav).scale(I * aj * g_cav);
    }
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolve::{evolve_tdse, IntegratorConfig};
    use crate::linalg::{max_abs, r, CMatrix};
    use crate::observe::expectation;
    use crate::qops::QuantumState;
    use crate::qft::ParticleKind;

    fn spec(n_k: usize, n_fock: usize) -> ContinuumSpec {
        ContinuumSpec::uniform(-1.5, 1.5, n_k, 0.6, n_fock).unwrap()
    }

    fn envs() -> (WavepacketEnvelope, WavepacketEnvelope) {
        (WavepacketEnvelope::new(0.5, 0.4, 1.0).unwrap(), WavepacketEnvelope::new(-0.5, 0.4, 1.0).unwrap())
    }

    fn vacuum(space: &HilbertSpace) -> QuantumState {
        let mut levels = vec![0; space.len()];
        levels[0] = 1;
        levels[1] = 1;
        QuantumState::basis(space, &levels).unwrap()
    }

    #[test]
    fn interaction_is_hermitian() {
        let (f, fb) = envs();
        let h = build_qft_interaction(&f, &fb, &spec(2, 3)).unwrap();
        assert!(h.hermiticity_error_at(&[0.0, 0.7, 3.1]) < 1e-12);
        assert!(h.operator_at(0.0).matrix().iter().any(|z| z.norm() > 1e-6));
    }

    #[test]
    fn no_pair_terms_without_antiparticle_field() {
        let (f, _) = envs();
        let cont = spec(2, 3);
        let quad = cont.momentum;
        let fields = move |xs: &[f64], t: f64| {
            let l1 = super::super::lambda_on_grid(&f, &quad, xs, t, ParticleKind::Particle).unwrap();
            let zeros = vec![Complex64::new(0.0, 0.0); xs.len()];
            (l1, zeros)
        };
        let h = build_qft_interaction_with(&cont, Arc::new(fields)).unwrap();
        let psi0 = vacuum(h.space());
        let traj = evolve_tdse(&h, &psi0, &[0.0, 2.0, 4.0], &IntegratorConfig::default()).unwrap();
        let map = FermionModeMap::new(2).unwrap();
        let dd = jordan_wigner_on(h.space(), 0, &map, 2, FermionOp::DDag).unwrap();
        let nd = &dd * &dd.adjoint();
        for s in &traj.states {
            assert!(expectation(&nd, s).unwrap().re.abs() < 1e-12);
        }
    }

    #[test]
    fn field_generator_is_anti_hermitian() {
        let cont = spec(2, 3);
        let space = cont.space(1, None).unwrap();
        let f = cont.field_generator(&space, 1, 0.3).unwrap();
        assert!(max_abs((&f + &f.adjoint()).matrix()) < 1e-15);
    }

    #[test]
    fn hsetup_controls() {
        let cont = spec(2, 2);
        let zero = build_hsetup([0.0; 3], [0.0; 2], &cont, 0.1, 2).unwrap();
        assert_eq!(max_abs(zero.matrix()), 0.0);
        let h = build_hsetup([0.3, 1.0, 0.5], [0.2, 0.9], &cont, 0.1, 3).unwrap();
        assert!(h.hermiticity_error() < 1e-14);
        assert!(build_hsetup([1.2, 0.0, 0.0], [0.0; 2], &cont, 0.1, 2).is_err());
        let single = build_hsetup([1.0, 0.0, 0.0], [0.0; 2], &cont, 0.1, 2).unwrap();
        let space = single.space().clone();
        let sy = Operator::on(&space, 0, ElementaryKind::PauliY).unwrap();
        let want = (&sy * &cont.field_generator(&space, 4, cont.x_positions[0]).unwrap()).scale(I);
        assert!(single.max_abs_diff(&want) < 1e-15);
    }

    #[test]
    fn grid_validation() {
        let mut cont = spec(3, 3);
        cont.g_k.pop();
        assert!(cont.validate().is_err());
        let mut cont = spec(3, 3);
        cont.k_grid[2] = cont.k_grid[0];
        assert!(cont.validate().is_err());
        assert!(ContinuumSpec::uniform(1.0, 0.0, 3, 1.0, 3).is_err());
        assert!(matches!(spec(12, 4).space(2, None), Err(Error::SizeGuard(..))));
    }

    #[test]
    fn frozen_coefficients_match_direct_sum() {
        let (f, fb) = envs();
        let cont = spec(1, 3);
        let h = build_qft_interaction(&f, &fb, &cont).unwrap().operator_at(1.5);
        // Independent assembly from lambda_on_grid and explicit Fock matrices.
        let (xs, ws) = cont.x_grid();
        let l1 = super::super::lambda_on_grid(&f, &cont.momentum, &xs, 1.5, ParticleKind::Particle).unwrap();
        let l2 = super::super::lambda_on_grid(&fb, &cont.momentum, &xs, 1.5, ParticleKind::Antiparticle).unwrap();
        let space = h.space().clone();
        let map = FermionModeMap::new(2).unwrap();
        let jw = |i, k| jordan_wigner_on(&space, 0, &map, i, k).unwrap();
        let (bd, b, dd, d) = (jw(1, FermionOp::BDag), jw(1, FermionOp::B), jw(2, FermionOp::DDag), jw(2, FermionOp::D));
        let a = Operator::on(&space, 2, ElementaryKind::Annihilator).unwrap();
        let mut want = CMatrix::zeros(space.total_dim(), space.total_dim());
        for i in 0..xs.len() {
            let bil = &(&(&bd * &b).scale(r(l1[i].norm_sqr())) + &(&bd * &dd).scale(l1[i].conj() * l2[i]))
                + &(&(&d * &b).scale(l2[i].conj() * l1[i]) + &(&d * &dd).scale(r(l2[i].norm_sqr())));
            let k = cont.k_grid[0];
            let field = a.adjoint().scale((-I * k * xs[i]).exp()) - a.scale((I * k * xs[i]).exp());
            want += (&bil * &field).matrix() * (I * ws[i] * cont.g_k[0]);
        }
        assert!(max_abs(&(h.matrix() - want)) < 1e-12);
    }
}
