use nalgebra::DMatrix;

use super::params::TransmonParams;
use crate::error::{Error, Result};

pub const DEFAULT_CHARGE_CUTOFF: usize = 30;

/// Eigenfrequencies of the charge Hamiltonian relative to the ground state.
#[derive(Clone, Debug, PartialEq)]
pub struct TransmonSpectrum {
    /// `levels[0] == 0`; `levels[k]` is the k-th excitation energy (GHz).
    pub levels: Vec<f64>,
    /// Weight of the ground eigenvector on the two outermost charge states.
    pub boundary_weight: f64,
}

impl TransmonSpectrum {
    pub fn converged(&self) -> bool {
        self.boundary_weight <= 1e-10
    }

    pub fn gap(&self, k: usize) -> f64 {
        self.levels[k + 1] - self.levels[k]
    }
}

fn flux_factor(flux: f64) -> Result<f64> {
    let c = (std::f64::consts::PI * flux).cos().abs();
    if c < 1e-3 {
        return Err(Error::FluxDegeneracy(c));
    }
    Ok(c)
}

pub fn transmon_spectrum(p: &TransmonParams, charge_cutoff: usize) -> Result<TransmonSpectrum> {
    p.validate()?;
    let e_j = p.e_j_max * flux_factor(p.flux)?;
    charge_spectrum(p.e_c, e_j, p.n_g, charge_cutoff, p.n_levels)
}

/// Diagonalizes `4 E_C (n - n_g)^2 - (E_J / 2)(|n><n+1| + h.c.)` on
/// `n in [-cutoff, cutoff]` without the flux guard.
pub fn charge_spectrum(
    e_c: f64,
    e_j: f64,
    n_g: f64,
    charge_cutoff: usize,
    n_levels: usize,
) -> Result<TransmonSpectrum> {
    if charge_cutoff < 10 {
        return Err(Error::InvalidArgument(format!("charge cutoff {charge_cutoff} < 10")));
    }
    let dim = 2 * charge_cutoff + 1;
    if n_levels < 1 || n_levels > dim {
        return Err(Error::InvalidArgument(format!("n_levels = {n_levels} outside 1..={dim}")));
    }
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for k in 0..dim {
        let n = k as f64 - charge_cutoff as f64;
        h[(k, k)] = 4.0 * e_c * (n - n_g).powi(2);
        if k + 1 < dim {
            h[(k, k + 1)] = -0.5 * e_j;
            h[(k + 1, k)] = -0.5 * e_j;
        }
    }
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..dim).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let e0 = eig.eigenvalues[order[0]];
    let levels = order[..n_levels].iter().map(|&k| eig.eigenvalues[k] - e0).collect();
    let ground = eig.eigenvectors.column(order[0]);
    let boundary_weight = ground[0].powi(2) + ground[dim - 1].powi(2);
    Ok(TransmonSpectrum { levels, boundary_weight })
}

/// Asymptotic transmon splitting `sqrt(8 E_C E_J) - E_C` in GHz.
pub fn transmon_frequency(p: &TransmonParams) -> Result<f64> {
    p.validate()?;
    let e_j = p.e_j_max * flux_factor(p.flux)?;
    Ok((8.0 * p.e_c * e_j).sqrt() - p.e_c)
}
