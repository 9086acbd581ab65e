use std::f64::consts::{PI, SQRT_2};

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, ZERO};
use crate::qops::{QuantumState, SubsystemKind};

const LEAKAGE_LIMIT: f64 = 1e-6;

/// Rectangular sampling grid in phase space, endpoints included.
#[derive(Clone, Debug, PartialEq)]
pub struct WignerSpec {
    pub x_min: f64,
    pub x_max: f64,
    pub nx: usize,
    pub p_min: f64,
    pub p_max: f64,
    pub np: usize,
}

impl WignerSpec {
    pub fn square(half_width: f64, n: usize) -> Self {
        Self { x_min: -half_width, x_max: half_width, nx: n, p_min: -half_width, p_max: half_width, np: n }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WignerGrid {
    pub x_values: Vec<f64>,
    pub p_values: Vec<f64>,
    /// `values[(i, j)] = W(x_values[i], p_values[j])`.
    pub values: DMatrix<f64>,
}

impl WignerGrid {
    pub fn dx(&self) -> f64 {
        spacing(&self.x_values)
    }

    pub fn dp(&self) -> f64 {
        spacing(&self.p_values)
    }

    /// Riemann sum of `W dx dp`.
    pub fn integral(&self) -> f64 {
        self.values.sum() * self.dx() * self.dp()
    }

    /// `sum_p W(x, p) dp` for every grid `x`.
    pub fn x_marginal(&self) -> Vec<f64> {
        let dp = self.dp();
        (0..self.x_values.len()).map(|i| self.values.row(i).sum() * dp).collect()
    }

    /// Grid point of the largest value.
    pub fn argmax(&self) -> (f64, f64) {
        let (mut bi, mut bj, mut best) = (0, 0, f64::NEG_INFINITY);
        for j in 0..self.values.ncols() {
            for i in 0..self.values.nrows() {
                if self.values[(i, j)] > best {
                    best = self.values[(i, j)];
                    bi = i;
                    bj = j;
                }
            }
        }
        (self.x_values[bi], self.p_values[bj])
    }
}

fn spacing(v: &[f64]) -> f64 {
    if v.len() > 1 {
        v[1] - v[0]
    } else {
        1.0
    }
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => vec![],
        1 => vec![0.5 * (a + b)],
        _ => (0..n).map(|k| a + (b - a) * k as f64 / (n - 1) as f64).collect(),
    }
}

fn single_mode_density(state: &QuantumState) -> Result<CMatrix> {
    let subs = state.space().subsystems();
    if subs.len() != 1 || subs[0].kind != SubsystemKind::Mode {
        return Err(Error::InvalidArgument(format!(
            "phase-space functions need a single bosonic mode, got {}",
            state.space()
        )));
    }
    let leak = state.mode_leakage();
    if leak > LEAKAGE_LIMIT {
        return Err(Error::CutoffInsufficient(format!(
            "top Fock level holds {leak:.3e} of the population"
        )));
    }
    Ok(state.density_matrix())
}

/// `<n| D(beta) |m>` for all `n, m < dim`, using the untruncated closed form
/// with associated Laguerre polynomials.
fn displacement_elements(beta: Complex64, dim: usize, ln_fact: &[f64]) -> CMatrix {
    let x = beta.norm_sqr();
    let r = beta.norm();
    let mut out = CMatrix::zeros(dim, dim);
    let unit = if r > 0.0 { beta / r } else { Complex64::new(1.0, 0.0) };
    for a in 0..dim {
        // L_k^{(a)}(x) for k = 0..dim-a by the three-term recurrence
        let mut prev = 0.0;
        let mut cur = 1.0;
        for k in 0..dim - a {
            if k > 0 {
                let kf = (k - 1) as f64;
                let af = a as f64;
                let next = ((2.0 * kf + 1.0 + af - x) * cur - (kf + af) * prev) / (kf + 1.0);
                prev = cur;
                cur = next;
            }
            let (m, n) = (k, k + a);
            // sqrt(m!/n!) r^a e^{-x/2} with the phase of beta^a
            let log_mag = 0.5 * (ln_fact[m] - ln_fact[n]) - 0.5 * x
                + if a == 0 { 0.0 } else if r > 0.0 { a as f64 * r.ln() } else { f64::NEG_INFINITY };
            let mag = log_mag.exp() * cur;
            let phase = unit.powu(a as u32);
            out[(n, m)] = phase * mag;
            if a > 0 {
                // <m|D|n> = (-beta*)^a factor with the same magnitude
                out[(m, n)] = (-unit.conj()).powu(a as u32) * mag;
            }
        }
    }
    out
}

fn ln_factorials(n: usize) -> Vec<f64> {
    let mut v = vec![0.0; n + 1];
    for k in 1..=n {
        v[k] = v[k - 1] + (k as f64).ln();
    }
    v
}

/// Displaced-parity Wigner function
/// `W(x, p) = (1/pi) Tr[rho D(2 alpha) Pi]`, `alpha = (x + i p)/sqrt 2`.
pub fn wigner(rho_field: &QuantumState, spec: &WignerSpec) -> Result<WignerGrid> {
    if spec.nx == 0 || spec.np == 0 || !(spec.x_max >= spec.x_min) || !(spec.p_max >= spec.p_min) {
        return Err(Error::InvalidArgument(format!("bad Wigner grid {spec:?}")));
    }
    let rho = single_mode_density(rho_field)?;
    let dim = rho.nrows();
    let ln_fact = ln_factorials(dim);
    let x_values = linspace(spec.x_min, spec.x_max, spec.nx);
    let p_values = linspace(spec.p_min, spec.p_max, spec.np);
    let mut values = DMatrix::zeros(spec.nx, spec.np);
    for (i, &x) in x_values.iter().enumerate() {
        for (j, &p) in p_values.iter().enumerate() {
            let beta = Complex64::new(x, p) * SQRT_2;
            let d = displacement_elements(beta, dim, &ln_fact);
            let mut acc = ZERO;
            for m in 0..dim {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                for n in 0..dim {
                    acc += rho[(m, n)] * d[(n, m)] * sign;
                }
            }
            values[(i, j)] = acc.re / PI;
        }
    }
    Ok(WignerGrid { x_values, p_values, values })
}

/// Probability density of the `x` quadrature at each point, from the
/// Hermite-function representation of the Fock basis.
pub fn quadrature_density(rho_field: &QuantumState, xs: &[f64]) -> Result<Vec<f64>> {
    let rho = single_mode_density(rho_field)?;
    let dim = rho.nrows();
    Ok(xs
        .iter()
        .map(|&x| {
            let mut psi = vec![0.0; dim];
            psi[0] = PI.powf(-0.25) * (-0.5 * x * x).exp();
            if dim > 1 {
                psi[1] = SQRT_2 * x * psi[0];
            }
            for n in 1..dim - 1 {
                let nf = n as f64;
                psi[n + 1] = (2.0 / (nf + 1.0)).sqrt() * x * psi[n] - (nf / (nf + 1.0)).sqrt() * psi[n - 1];
            }
            let mut acc = ZERO;
            for m in 0..dim {
                for n in 0..dim {
                    acc += rho[(m, n)] * psi[m] * psi[n];
                }
            }
            acc.re
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, r, I};
    use crate::qops::{ElementaryKind::*, HilbertSpace, Operator};

    #[test]
    fn displacement_elements_match_matrix_exponential() {
        let dim = 40;
        let beta = c(0.7, -1.1);
        let space = HilbertSpace::mode(dim).unwrap();
        let a = Operator::on(&space, 0, Annihilator).unwrap();
        let gen = (&a.adjoint().scale(beta) - &a.scale(beta.conj())).exp();
        let closed = displacement_elements(beta, dim, &ln_factorials(dim));
        // truncation only corrupts the corner next to the cutoff
        for n in 0..12 {
            for m in 0..12 {
                assert!((gen.matrix()[(n, m)] - closed[(n, m)]).norm() < 1e-10, "({n},{m})");
            }
        }
    }

    #[test]
    fn anchors() {
        let vac = QuantumState::fock(20, 0).unwrap();
        let w = wigner(&vac, &WignerSpec::square(0.0, 1)).unwrap();
        assert!((w.values[(0, 0)] - 1.0 / PI).abs() < 1e-9);
        let one = QuantumState::fock(20, 1).unwrap();
        let w = wigner(&one, &WignerSpec::square(0.0, 1)).unwrap();
        assert!((w.values[(0, 0)] + 1.0 / PI).abs() < 1e-9);
    }

    #[test]
    fn coherent_peak_and_normalization() {
        let coh = QuantumState::coherent(30, c(0.0, 2f64.sqrt())).unwrap();
        let spec = WignerSpec { x_min: -5.0, x_max: 5.0, nx: 81, p_min: -3.0, p_max: 7.0, np: 81 };
        let w = wigner(&coh, &spec).unwrap();
        let (x, p) = w.argmax();
        assert!(x.abs() <= w.dx() && (p - 2.0).abs() <= w.dp());
        assert!((w.integral() - 1.0).abs() < 1e-4);
    }

    #[test]
    fn marginal_matches_hermite_density() {
        let s = 1.0 / 3f64.sqrt();
        let psi = nalgebra::DVector::from_fn(25, |k, _| match k {
            0 => r(s),
            1 => I * s,
            3 => r(-s),
            _ => r(0.0),
        });
        let state = QuantumState::pure(HilbertSpace::mode(25).unwrap(), psi).unwrap();
        let w = wigner(&state, &WignerSpec::square(6.0, 121)).unwrap();
        let density = quadrature_density(&state, &w.x_values).unwrap();
        for (a, b) in w.x_marginal().iter().zip(&density) {
            assert!((a - b).abs() < 2e-3);
        }
        let total: f64 = density.iter().sum::<f64>() * w.dx();
        assert!((total - 1.0).abs() < 1e-6);
    }

    #[test]
    fn rejects_bad_inputs() {
        let top = QuantumState::fock(5, 4).unwrap();
        assert!(matches!(wigner(&top, &WignerSpec::square(1.0, 3)), Err(Error::CutoffInsufficient(_))));
        let q = QuantumState::qubit(r(1.0), r(0.0)).unwrap();
        assert!(wigner(&q, &WignerSpec::square(1.0, 3)).is_err());
    }
}
