use num_complex::Complex64;

use super::operator::Operator;
use super::space::HilbertSpace;
use crate::error::{Error, Result};
use crate::linalg::{self, r, CMatrix, CVector};

const NORM_TOL: f64 = 1e-10;
const EIG_TOL: f64 = 1e-8;

#[derive(Clone, Debug, PartialEq)]
pub enum StateData {
    Pure(CVector),
    Mixed(CMatrix),
}

/// Pure state vector or density matrix on a composite space.
#[derive(Clone, Debug, PartialEq)]
pub struct QuantumState {
    space: HilbertSpace,
    data: StateData,
}

impl QuantumState {
    /// Validated pure state: norm must be 1 within 1e-10.
    pub fn pure(space: HilbertSpace, psi: CVector) -> Result<Self> {
        check_len(&space, psi.len())?;
        let norm = psi.norm();
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("pure state norm {norm}")));
        }
        Ok(Self { space, data: StateData::Pure(psi) })
    }

    pub fn pure_normalized(space: HilbertSpace, psi: CVector) -> Result<Self> {
        check_len(&space, psi.len())?;
        let norm = psi.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        Ok(Self { space, data: StateData::Pure(psi / r(norm)) })
    }

    /// Validated density matrix: unit trace, Hermitian, eigenvalues >= -1e-8.
    pub fn mixed(space: HilbertSpace, rho: CMatrix) -> Result<Self> {
        let n = space.total_dim();
        if rho.nrows() != n || rho.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "density matrix {}x{} on dimension {n}",
                rho.nrows(),
                rho.ncols()
            )));
        }
        let tr = linalg::trace(&rho);
        if (tr - r(1.0)).norm() > NORM_TOL {
            return Err(Error::InvalidState(format!("trace {tr}")));
        }
        let herm = linalg::hermiticity_error(&rho);
        if herm > NORM_TOL {
            return Err(Error::InvalidState(format!("non-Hermitian density matrix ({herm:.2e})")));
        }
        let min = linalg::HermitianEigen::new(&rho).min();
        if min < -EIG_TOL {
            return Err(Error::InvalidState(format!("negative eigenvalue {min:.3e}")));
        }
        Ok(Self { space, data: StateData::Mixed(rho) })
    }

    /// Raw integrator output; invariants are diagnosed, not enforced.
    pub(crate) fn from_pure_unchecked(space: HilbertSpace, psi: CVector) -> Self {
        Self { space, data: StateData::Pure(psi) }
    }

    pub(crate) fn from_mixed_unchecked(space: HilbertSpace, rho: CMatrix) -> Self {
        Self { space, data: StateData::Mixed(rho) }
    }

    /// Product basis state with one level index per slot.
    pub fn basis(space: &HilbertSpace, levels: &[usize]) -> Result<Self> {
        let idx = space.ravel(levels)?;
        let mut psi = CVector::zeros(space.total_dim());
        psi[idx] = r(1.0);
        Ok(Self { space: space.clone(), data: StateData::Pure(psi) })
    }

    /// Normalized qubit state `alpha |g> + beta |e>`.
    pub fn qubit(alpha: Complex64, beta: Complex64) -> Result<Self> {
        Self::pure_normalized(HilbertSpace::qubit(), CVector::from_vec(vec![alpha, beta]))
    }

    pub fn fock(cutoff: usize, n: usize) -> Result<Self> {
        Self::basis(&HilbertSpace::mode(cutoff)?, &[n])
    }

    /// Coherent state on a truncated mode, renormalized after truncation.
    pub fn coherent(cutoff: usize, alpha: Complex64) -> Result<Self> {
        let space = HilbertSpace::mode(cutoff)?;
        let mut psi = CVector::zeros(cutoff);
        let mut amp = r((-alpha.norm_sqr() / 2.0).exp());
        for n in 0..cutoff {
            psi[n] = amp;
            amp = amp * alpha / r(((n + 1) as f64).sqrt());
        }
        Self::pure_normalized(space, psi)
    }

    /// Tensor product of pure or mixed factors.
    pub fn product(factors: &[&QuantumState]) -> Result<Self> {
        let (first, rest) = factors
            .split_first()
            .ok_or_else(|| Error::InvalidArgument("product of zero states".into()))?;
        let mut out = (*first).clone();
        for f in rest {
            let space = out.space.concat(&f.space);
            out = match (&out.data, &f.data) {
                (StateData::Pure(a), StateData::Pure(b)) => {
                    Self { space, data: StateData::Pure(a.kronecker(b)) }
                }
                _ => Self {
                    space,
                    data: StateData::Mixed(out.density_matrix().kronecker(&f.density_matrix())),
                },
            };
        }
        Ok(out)
    }

    pub fn maximally_mixed(space: &HilbertSpace) -> Self {
        let n = space.total_dim();
        Self {
            space: space.clone(),
            data: StateData::Mixed(CMatrix::identity(n, n) * r(1.0 / n as f64)),
        }
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn data(&self) -> &StateData {
        &self.data
    }

    pub fn is_pure(&self) -> bool {
        matches!(self.data, StateData::Pure(_))
    }

    pub fn vector(&self) -> Option<&CVector> {
        match &self.data {
            StateData::Pure(v) => Some(v),
            StateData::Mixed(_) => None,
        }
    }

    pub fn density_matrix(&self) -> CMatrix {
        match &self.data {
            StateData::Pure(v) => v * v.adjoint(),
            StateData::Mixed(m) => m.clone(),
        }
    }

    pub fn to_mixed(&self) -> Self {
        Self { space: self.space.clone(), data: StateData::Mixed(self.density_matrix()) }
    }

    /// Norm for pure states, trace for mixed ones.
    pub fn norm(&self) -> f64 {
        match &self.data {
            StateData::Pure(v) => v.norm(),
            StateData::Mixed(m) => linalg::trace(m).re,
        }
    }

    pub fn purity(&self) -> f64 {
        match &self.data {
            StateData::Pure(v) => v.norm_squared().powi(2),
            StateData::Mixed(m) => linalg::trace(&(m * m)).re,
        }
    }

    /// Population of every basis state.
    pub fn populations(&self) -> Vec<f64> {
        match &self.data {
            StateData::Pure(v) => v.iter().map(|z| z.norm_sqr()).collect(),
            StateData::Mixed(m) => m.diagonal().iter().map(|z| z.re).collect(),
        }
    }

    /// Probability that `slot` sits in `level`.
    pub fn level_population(&self, slot: usize, level: usize) -> Result<f64> {
        let dim = self.space.dim(slot)?;
        if level >= dim {
            return Err(Error::OutOfRange(format!("level {level} of dimension {dim}")));
        }
        Ok(self
            .populations()
            .iter()
            .enumerate()
            .filter(|(i, _)| self.space.unravel(*i)[slot] == level)
            .map(|(_, p)| p)
            .sum())
    }

    /// Largest terminal-level population over all bosonic modes.
    pub fn mode_leakage(&self) -> f64 {
        let slots: Vec<usize> = self.space.mode_slots().collect();
        if slots.is_empty() {
            return 0.0;
        }
        let pops = self.populations();
        let dims = self.space.dims();
        let mut worst: f64 = 0.0;
        for slot in slots {
            let top = dims[slot] - 1;
            let p: f64 = pops
                .iter()
                .enumerate()
                .filter(|(i, _)| self.space.unravel(*i)[slot] == top)
                .map(|(_, p)| *p)
                .sum();
            worst = worst.max(p);
        }
        worst
    }

    /// Apply an operator (`U psi` or `U rho U†`).
    pub fn transform(&self, u: &Operator) -> Result<Self> {
        self.space.ensure_same(u.space())?;
        let data = match &self.data {
            StateData::Pure(v) => StateData::Pure(u.matrix() * v),
            StateData::Mixed(m) => StateData::Mixed(u.matrix() * m * u.matrix().adjoint()),
        };
        Ok(Self { space: self.space.clone(), data })
    }
}

fn check_len(space: &HilbertSpace, len: usize) -> Result<()> {
    if len != space.total_dim() {
        return Err(Error::DimensionMismatch(format!(
            "vector of length {len} on dimension {}",
            space.total_dim()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::c;

    #[test]
    fn validation() {
        let s = HilbertSpace::qubit();
        assert!(QuantumState::pure(s.clone(), CVector::from_vec(vec![r(1.0), r(1.0)])).is_err());
        assert!(QuantumState::mixed(s.clone(), CMatrix::identity(2, 2)).is_err());
        let mut rho = CMatrix::identity(2, 2) * r(0.5);
        rho[(0, 1)] = c(0.0, 0.1);
        assert!(QuantumState::mixed(s.clone(), rho).is_err());
        let bad = CMatrix::from_row_slice(2, 2, &[r(1.5), r(0.0), r(0.0), r(-0.5)]);
        assert!(QuantumState::mixed(s, bad).is_err());
    }

    #[test]
    fn coherent_state_moments() {
        let psi = QuantumState::coherent(40, c(0.0, 2f64.sqrt())).unwrap();
        let n: f64 = psi.populations().iter().enumerate().map(|(k, p)| k as f64 * p).sum();
        assert!((n - 2.0).abs() < 1e-12);
    }

    #[test]
    fn leakage_reads_top_fock_level() {
        let s = HilbertSpace::qubit().concat(&HilbertSpace::mode(3).unwrap());
        let psi = QuantumState::basis(&s, &[1, 2]).unwrap();
        assert_eq!(psi.mode_leakage(), 1.0);
        let psi = QuantumState::basis(&s, &[1, 1]).unwrap();
        assert_eq!(psi.mode_leakage(), 0.0);
    }
}
