use std::f64::consts::{SQRT_2, TAU};

use super::cavity::{cavity_qubit_space, CellOps};
use super::params::{CavityQubitParams, DriveParams};
use super::td::{Coefficient, TimeDependentHamiltonian};
use crate::error::{Error, Result};
use crate::linalg::{r, I};
use crate::qops::{HilbertSpace, Operator};

/// `x = (a + a†)/sqrt 2` and `p = i(a† - a)/sqrt 2` on the given slot.
pub fn quadratures(space: &HilbertSpace, slot: usize) -> Result<(Operator, Operator)> {
    let a = Operator::on(space, slot, crate::qops::ElementaryKind::Annihilator)?;
    let ad = a.adjoint();
    let x = (&a + &ad).scale_real(1.0 / SQRT_2);
    let p = (&ad - &a).scale(I / SQRT_2);
    Ok((x, p))
}

fn static_cell(p: &CavityQubitParams, o: &CellOps) -> Operator {
    let coupling = o.jc_coupling();
    (o.sz.scale_real(p.omega_q / 2.0) + o.n.scale_real(p.omega_r) - coupling.scale_real(p.g))
        .scale_real(TAU)
}

/// Two-tone driven qubit coupled to a cavity, laboratory frame.
///
/// The cavity frequency is `p.omega_r`. Note the coupling enters with `-g`;
/// this differs from [`super::build_cavity_qubit`] by a `sigma_z` gauge.
pub fn build_two_tone(p: &CavityQubitParams, d: &DriveParams) -> Result<TimeDependentHamiltonian> {
    p.validate()?;
    d.validate()?;
    let space = cavity_qubit_space(p.n_fock)?;
    let o = CellOps::new(&space, 0, 1)?;
    let mut h = TimeDependentHamiltonian::from_static(static_cell(p, &o));
    for (amp, freq) in [(d.rabi_1, d.omega_1), (d.rabi_2, d.omega_2)] {
        if amp == 0.0 {
            continue;
        }
        h.add(o.sm.clone(), Coefficient::rotating(r(-TAU * amp), TAU * freq))?;
        h.add(o.sp.clone(), Coefficient::rotating(r(-TAU * amp), -TAU * freq))?;
    }
    Ok(h)
}

/// Effective quantum Rabi model reached by the two-tone scheme.
#[derive(Clone, Debug)]
pub struct QrmModel {
    /// `2 pi [(omega - omega_1) a†a + (Omega_2 / 2) sigma_z - (g / 2) sigma_x (a + a†)]`.
    pub hamiltonian: Operator,
    /// Columns `|+>, |->` on the qubit, identity on the mode.
    pub dressed_basis: Operator,
    omega_1: f64,
    rabi_1: f64,
}

impl QrmModel {
    pub fn g_eff(g: f64) -> f64 {
        g / 2.0
    }

    /// Unitary taking a laboratory-frame state to the frame where
    /// `hamiltonian` generates the dynamics: first the frame rotating at
    /// `omega_1`, then the interaction picture of the strong drive.
    pub fn lab_to_frame(&self, t: f64) -> Result<Operator> {
        let space = self.hamiltonian.space();
        let o = CellOps::new(space, 0, 1)?;
        let rot = (&o.n + &o.sz.scale_real(0.5)).propagator(-TAU * self.omega_1 * t)?;
        let drive = o.sx.scale_real(-TAU * self.rabi_1).propagator(-t)?;
        Ok(&drive * &rot)
    }
}

pub fn effective_qrm(p: &CavityQubitParams, d: &DriveParams) -> Result<QrmModel> {
    p.validate()?;
    d.validate()?;
    let space = cavity_qubit_space(p.n_fock)?;
    let o = CellOps::new(&space, 0, 1)?;
    let h = o.n.scale_real(p.omega_r - d.omega_1) + o.sz.scale_real(d.rabi_2 / 2.0)
        - o.rabi_coupling().scale_real(p.g / 2.0);
    let s = 1.0 / SQRT_2;
    let hadamard =
        Operator::new(HilbertSpace::qubit(), nalgebra::dmatrix![r(s), r(s); r(s), r(-s)])?;
    let id_mode = Operator::identity(&HilbertSpace::mode(p.n_fock)?);
    let dressed_basis = crate::qops::tensor(&[&hadamard, &id_mode])?;
    Ok(QrmModel {
        hamiltonian: h.scale_real(TAU),
        dressed_basis,
        omega_1: d.omega_1,
        rabi_1: d.rabi_1,
    })
}

/// Three-drive Hamiltonian in the laboratory frame: qubit drives `rabi`
/// at `omega` and `lambda` at `nu` (common phase `phi`), cavity drive `xi`
/// at `omega`. The cavity frequency is `p.omega_r`.
pub fn build_dirac_drive(p: &CavityQubitParams, d: &DriveParams) -> Result<TimeDependentHamiltonian> {
    p.validate()?;
    d.validate()?;
    let space = cavity_qubit_space(p.n_fock)?;
    let o = CellOps::new(&space, 0, 1)?;
    let mut h = TimeDependentHamiltonian::from_static(static_cell(p, &o));
    let phase = (-I * d.phi).exp();
    for (amp, freq) in [(d.rabi, d.omega), (d.lambda, d.nu)] {
        if amp == 0.0 {
            continue;
        }
        h.add(o.sp.clone(), Coefficient::rotating(-TAU * amp * phase, -TAU * freq))?;
        h.add(o.sm.clone(), Coefficient::rotating(-TAU * amp * phase.conj(), TAU * freq))?;
    }
    if d.xi != 0.0 {
        h.add(o.a.clone(), Coefficient::rotating(r(TAU * d.xi), TAU * d.omega))?;
        h.add(o.ad.clone(), Coefficient::rotating(r(TAU * d.xi), -TAU * d.omega))?;
    }
    Ok(h)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiracRegime {
    Massive,
    Massless,
    Nonrelativistic,
}

impl std::str::FromStr for DiracRegime {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "massive" => Ok(Self::Massive),
            "massless" => Ok(Self::Massless),
            "nonrelativistic" => Ok(Self::Nonrelativistic),
            other => Err(Error::InvalidArgument(format!("unknown Dirac regime '{other}'"))),
        }
    }
}

/// Effective Dirac Hamiltonian on `[qubit, mode(n_fock)]`, rad/ns.
///
/// Speed of light `c = g / sqrt 2`, rest energy `m c^2 = lambda / 2`.
/// The nonrelativistic branch keeps the kinetic term `sigma_z c^2 p^2 / (2 m c^2)`
/// and drops the rest energy.
pub fn build_dirac_effective(
    regime: DiracRegime,
    g: f64,
    lambda: f64,
    xi: f64,
    n_fock: usize,
) -> Result<Operator> {
    let space = cavity_qubit_space(n_fock)?;
    let o = CellOps::new(&space, 0, 1)?;
    let (x, p) = quadratures(&space, 1)?;
    let potential = x.scale_real(xi * SQRT_2);
    let h = match regime {
        DiracRegime::Massive => {
            o.sz.scale_real(lambda / 2.0) + (&o.sy * &p).scale_real(g / SQRT_2) + potential
        }
        DiracRegime::Massless => (&o.sy * &p).scale_real(g / SQRT_2) + potential,
        DiracRegime::Nonrelativistic => {
            if lambda == 0.0 {
                return Err(Error::InvalidArgument(
                    "nonrelativistic limit needs a nonzero mass (lambda)".into(),
                ));
            }
            (&o.sz * &(&p * &p)).scale_real(g * g / (2.0 * lambda)) + potential
        }
    };
    Ok(h.scale_real(TAU))
}
