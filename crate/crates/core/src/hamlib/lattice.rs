use std::f64::consts::TAU;

use super::cavity::CellOps;
use crate::error::{Error, Result};
use crate::qops::{ElementaryKind::*, HilbertSpace, Operator, Subsystem, SubsystemKind};

/// Largest composite dimension assembled as a dense matrix.
pub const MAX_DENSE_DIM: usize = 1 << 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeModel {
    Hopping,
    Jch,
    PhotonSolid,
    RabiHubbard,
}

impl std::str::FromStr for LatticeModel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "hopping" => Ok(Self::Hopping),
            "jch" => Ok(Self::Jch),
            "photon_solid" => Ok(Self::PhotonSolid),
            "rabi_hubbard" => Ok(Self::RabiHubbard),
            other => Err(Error::InvalidArgument(format!("unknown lattice model '{other}'"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Boundary {
    #[default]
    Open,
    Periodic,
}

impl std::str::FromStr for Boundary {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "open" => Ok(Self::Open),
            "periodic" => Ok(Self::Periodic),
            other => Err(Error::InvalidArgument(format!("unknown boundary '{other}'"))),
        }
    }
}

/// Coupled-cavity array description. Frequencies and couplings in GHz.
///
/// Sites carrying a qubit (`Jch`, `RabiHubbard`) occupy two consecutive
/// slots `[qubit, mode]`; the other models have one mode slot per site.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSpec {
    pub model: LatticeModel,
    pub n_sites: usize,
    pub n_fock: usize,
    /// One cavity frequency per site, or a single value for all sites.
    pub cavity_freqs: Vec<f64>,
    /// `omega_0` (JCH) or `omega_q` (Rabi-Hubbard).
    pub qubit_freq: f64,
    pub j: f64,
    pub g: f64,
    pub u: f64,
    pub v: f64,
    pub drive: f64,
    pub delta: f64,
    /// Explicit bonds; when empty a nearest-neighbour chain is used.
    pub edges: Vec<(usize, usize)>,
    pub boundary: Boundary,
}

impl LatticeSpec {
    pub fn chain(model: LatticeModel, n_sites: usize, n_fock: usize) -> Self {
        Self {
            model,
            n_sites,
            n_fock,
            cavity_freqs: vec![5.0],
            qubit_freq: 5.0,
            j: 0.0,
            g: 0.0,
            u: 0.0,
            v: 0.0,
            drive: 0.0,
            delta: 0.0,
            edges: Vec::new(),
            boundary: Boundary::Open,
        }
    }

    fn has_qubits(&self) -> bool {
        matches!(self.model, LatticeModel::Jch | LatticeModel::RabiHubbard)
    }

    pub fn space(&self) -> Result<HilbertSpace> {
        if self.n_sites == 0 {
            return Err(Error::InvalidArgument("lattice needs at least one site".into()));
        }
        let per_site = if self.has_qubits() { 2 * self.n_fock } else { self.n_fock };
        let mut total: usize = 1;
        for _ in 0..self.n_sites {
            total = total.saturating_mul(per_site);
        }
        if total > MAX_DENSE_DIM {
            return Err(Error::SizeGuard(total, MAX_DENSE_DIM));
        }
        let mode = Subsystem { kind: SubsystemKind::Mode, dim: self.n_fock };
        let qubit = Subsystem { kind: SubsystemKind::Qubit, dim: 2 };
        let mut subsystems = Vec::new();
        for _ in 0..self.n_sites {
            if self.has_qubits() {
                subsystems.push(qubit);
            }
            subsystems.push(mode);
        }
        HilbertSpace::new(subsystems)
    }

    /// Bond list after applying the boundary condition.
    pub fn bonds(&self) -> Result<Vec<(usize, usize)>> {
        let n = self.n_sites;
        let bonds = if self.edges.is_empty() {
            let mut b: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
            if self.boundary == Boundary::Periodic && n > 2 {
                b.push((n - 1, 0));
            }
            b
        } else {
            self.edges.clone()
        };
        for &(a, b) in &bonds {
            if a >= n || b >= n || a == b {
                return Err(Error::OutOfRange(format!("bond ({a}, {b}) on {n} sites")));
            }
        }
        Ok(bonds)
    }

    fn cavity_freq(&self, site: usize) -> Result<f64> {
        match self.cavity_freqs.len() {
            1 => Ok(self.cavity_freqs[0]),
            len if len == self.n_sites => Ok(self.cavity_freqs[site]),
            len => Err(Error::InvalidArgument(format!(
                "{len} cavity frequencies for {} sites",
                self.n_sites
            ))),
        }
    }
}

/// Assembles the lattice Hamiltonian in rad/ns.
pub fn build_lattice(spec: &LatticeSpec) -> Result<Operator> {
    if spec.n_fock < 2 {
        return Err(Error::InvalidArgument(format!("n_fock = {} < 2", spec.n_fock)));
    }
    let space = spec.space()?;
    let bonds = spec.bonds()?;
    let stride = if spec.has_qubits() { 2 } else { 1 };
    let mode_slot = |site: usize| site * stride + stride - 1;
    let a: Vec<Operator> = (0..spec.n_sites)
        .map(|s| Operator::on(&space, mode_slot(s), Annihilator))
        .collect::<Result<_>>()?;
    let num: Vec<Operator> = a.iter().map(|x| &x.adjoint() * x).collect();

    let mut h = Operator::zeros(&space);
    // a_i a_j† + h.c., identical to a_i† a_j + h.c. for distinct sites
    let hop = |i: usize, j: usize| {
        let t = &a[i] * &a[j].adjoint();
        &t + &t.adjoint()
    };
    match spec.model {
        LatticeModel::Hopping | LatticeModel::Jch => {
            for (s, n) in num.iter().enumerate() {
                h += &n.scale_real(spec.cavity_freq(s)?);
            }
            for &(i, j) in &bonds {
                h += &hop(i, j).scale_real(spec.j);
            }
            if spec.model == LatticeModel::Jch {
                for s in 0..spec.n_sites {
                    let o = CellOps::new(&space, s * 2, s * 2 + 1)?;
                    h += &(&o.sp * &o.sm).scale_real(spec.qubit_freq);
                    h += &o.jc_coupling().scale_real(spec.g);
                }
            }
        }
        LatticeModel::PhotonSolid => {
            let id = Operator::identity(&space);
            for s in 0..spec.n_sites {
                h += &num[s].scale_real(-spec.delta);
                h += &(&a[s] + &a[s].adjoint()).scale_real(spec.drive);
                h += &(&num[s] * &(&num[s] - &id)).scale_real(spec.u);
            }
            for &(i, j) in &bonds {
                h += &hop(i, j).scale_real(-spec.j);
                h += &(&num[i] * &num[j]).scale_real(spec.v);
            }
        }
        LatticeModel::RabiHubbard => {
            for s in 0..spec.n_sites {
                let o = CellOps::new(&space, s * 2, s * 2 + 1)?;
                h += &o.sz.scale_real(spec.qubit_freq / 2.0);
                h += &o.n.scale_real(spec.cavity_freq(s)?);
                h += &o.rabi_coupling().scale_real(spec.g);
            }
            for &(i, j) in &bonds {
                h += &hop(i, j).scale_real(-spec.j);
            }
        }
    }
    Ok(h.scale_real(TAU))
}
