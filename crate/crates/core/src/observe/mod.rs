//! Observables: fidelities, expectation values, partial traces and
//! phase-space distributions.

mod wigner;

pub use wigner::{quadrature_density, wigner, WignerGrid, WignerSpec};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, ZERO};
use crate::qops::{HilbertSpace, Operator, QuantumState, StateData};

/// `<psi| rho |psi>` for a pure reference state.
pub fn fidelity(rho: &QuantumState, psi: &QuantumState) -> Result<f64> {
    rho.space().ensure_same(psi.space())?;
    let v = psi
        .vector()
        .ok_or_else(|| Error::InvalidState("fidelity reference must be pure".into()))?;
    let f = match rho.data() {
        StateData::Pure(u) => v.dotc(u).norm_sqr(),
        StateData::Mixed(m) => v.dotc(&(m * v)).re,
    };
    Ok(clip_unit(f))
}

fn clip_unit(f: f64) -> f64 {
    if (-1e-10..0.0).contains(&f) {
        0.0
    } else if f > 1.0 && f <= 1.0 + 1e-10 {
        1.0
    } else {
        f
    }
}

/// `Tr(rho A)` or `<psi|A|psi>`.
pub fn expectation(op: &Operator, state: &QuantumState) -> Result<Complex64> {
    op.space().ensure_same(state.space())?;
    Ok(match state.data() {
        StateData::Pure(v) => v.dotc(&op.apply(v)),
        StateData::Mixed(m) => {
            let a = op.matrix();
            let n = m.nrows();
            let mut acc = ZERO;
            for i in 0..n {
                for j in 0..n {
                    acc += m[(i, j)] * a[(j, i)];
                }
            }
            acc
        }
    })
}

/// Partial trace onto the subsystems in `keep` (strictly ascending slots).
pub fn reduced_state(state: &QuantumState, keep: &[usize]) -> Result<QuantumState> {
    let space = state.space();
    if keep.is_empty() || keep.windows(2).any(|w| w[1] <= w[0]) || keep[keep.len() - 1] >= space.len() {
        return Err(Error::OutOfRange(format!("keep = {keep:?} on {} subsystems", space.len())));
    }
    let subs = space.subsystems();
    let kept = HilbertSpace::new(keep.iter().map(|&k| subs[k]).collect())?;
    let traced_slots: Vec<usize> = (0..space.len()).filter(|s| !keep.contains(s)).collect();
    let dims = space.dims();
    let traced_dim: usize = traced_slots.iter().map(|&s| dims[s]).product();
    let kd = kept.total_dim();
    // split every composite index into (kept index, traced index)
    let split: Vec<(usize, usize)> = (0..space.total_dim())
        .map(|i| {
            let digits = space.unravel(i);
            let a = keep.iter().fold(0, |acc, &s| acc * dims[s] + digits[s]);
            let t = traced_slots.iter().fold(0, |acc, &s| acc * dims[s] + digits[s]);
            (a, t)
        })
        .collect();
    let rho = match state.data() {
        StateData::Pure(v) => {
            let mut m = CMatrix::zeros(kd, traced_dim);
            for (i, &(a, t)) in split.iter().enumerate() {
                m[(a, t)] = v[i];
            }
            &m * m.adjoint()
        }
        StateData::Mixed(full) => {
            let mut out = CMatrix::zeros(kd, kd);
            for (i, &(a, t)) in split.iter().enumerate() {
                for (j, &(b, u)) in split.iter().enumerate() {
                    if t == u {
                        out[(a, b)] += full[(i, j)];
                    }
                }
            }
            out
        }
    };
    Ok(QuantumState::from_mixed_unchecked(kept, rho))
}
