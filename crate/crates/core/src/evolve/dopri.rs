//! Adaptive Dormand-Prince 5(4) stepper over dense complex matrices.

use crate::error::{Error, Result};
use crate::linalg::{r, CMatrix};

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
// fifth-order weights minus embedded fourth-order weights
const E: [f64; 7] = [
    71.0 / 57600.0,
    0.0,
    -71.0 / 16695.0,
    71.0 / 1920.0,
    -17253.0 / 339200.0,
    22.0 / 525.0,
    -1.0 / 40.0,
];

const SAFETY: f64 = 0.9;
const MIN_FACTOR: f64 = 0.2;
const MAX_FACTOR: f64 = 5.0;

pub(crate) struct Tolerances {
    pub rel: f64,
    pub abs: f64,
    pub max_step: f64,
    pub max_steps: usize,
}

pub(crate) struct Stepper<F> {
    rhs: F,
    tol: Tolerances,
    t: f64,
    y: CMatrix,
    h: f64,
    k: Vec<CMatrix>,
    fsal_valid: bool,
    symmetrize: bool,
    pub steps: usize,
}

impl<F> Stepper<F>
where
    F: FnMut(f64, &CMatrix, &mut CMatrix),
{
    pub fn new(rhs: F, tol: Tolerances, t0: f64, y0: CMatrix) -> Self {
        let shape = y0.shape();
        Self {
            rhs,
            tol,
            t: t0,
            y: y0,
            h: 0.0,
            k: vec![CMatrix::zeros(shape.0, shape.1); 7],
            fsal_valid: false,
            symmetrize: false,
            steps: 0,
        }
    }

    /// Replace the state by its Hermitian part after every accepted step.
    pub fn symmetrized(mut self) -> Self {
        self.symmetrize = true;
        self
    }

    pub fn state(&self) -> &CMatrix {
        &self.y
    }

    /// Max-norm of the scaled error; RMS would dilute the error of sparse
    /// states (mostly empty density matrices) over many zero entries.
    fn error_norm(&self, y_new: &CMatrix, err: &CMatrix) -> f64 {
        let mut worst: f64 = 0.0;
        for ((e, a), b) in err.iter().zip(self.y.iter()).zip(y_new.iter()) {
            let scale = self.tol.abs + self.tol.rel * a.norm().max(b.norm());
            worst = worst.max(e.norm() / scale);
        }
        worst
    }

    fn initial_step(&mut self, t_end: f64) -> f64 {
        // Hairer-Wanner starting-step heuristic.
        let span = t_end - self.t;
        let mut f0 = CMatrix::zeros(self.y.nrows(), self.y.ncols());
        (self.rhs)(self.t, &self.y, &mut f0);
        let sc = |v: &CMatrix, ref_: &CMatrix| {
            let mut acc = 0.0;
            for (x, y) in v.iter().zip(ref_.iter()) {
                acc += (x.norm() / (self.tol.abs + self.tol.rel * y.norm())).powi(2);
            }
            (acc / v.len() as f64).sqrt()
        };
        let d0 = sc(&self.y, &self.y);
        let d1 = sc(&f0, &self.y);
        let h0 = if d0 < 1e-5 || d1 < 1e-5 { 1e-6 } else { 0.01 * d0 / d1 };
        let h0 = h0.min(span).min(self.tol.max_step);
        let y1 = &self.y + &f0 * r(h0);
        let mut f1 = CMatrix::zeros(self.y.nrows(), self.y.ncols());
        (self.rhs)(self.t + h0, &y1, &mut f1);
        let d2 = sc(&(f1 - &f0), &self.y) / h0;
        let h1 = if d1.max(d2) <= 1e-15 {
            (h0 * 1e-3).max(1e-6)
        } else {
            (0.01 / d1.max(d2)).powf(0.2)
        };
        self.k[0] = f0;
        self.fsal_valid = true;
        (100.0 * h0).min(h1).min(self.tol.max_step)
    }

    /// Integrates exactly up to `t_end`.
    pub fn advance_to(&mut self, t_end: f64) -> Result<()> {
        if t_end <= self.t {
            return Ok(());
        }
        if self.h == 0.0 {
            self.h = self.initial_step(t_end);
        }
        let (rows, cols) = self.y.shape();
        let mut stage = CMatrix::zeros(rows, cols);
        while self.t < t_end {
            if self.steps >= self.tol.max_steps {
                return Err(Error::StepUnderflow { t: self.t, h: self.h });
            }
            let remaining = t_end - self.t;
            let clipped = self.h >= remaining;
            let h = if clipped { remaining } else { self.h };
            let floor = 1e-14 * self.t.abs().max(1.0);
            if h < floor && !clipped {
                return Err(Error::StepUnderflow { t: self.t, h });
            }
            if !self.fsal_valid {
                (self.rhs)(self.t, &self.y, &mut self.k[0]);
                self.fsal_valid = true;
            }
            for s in 1..7 {
                stage.copy_from(&self.y);
                for j in 0..s {
                    let a = A[s][j];
                    if a != 0.0 {
                        stage.zip_apply(&self.k[j], |x, k| *x += k * (a * h));
                    }
                }
                let (_, tail) = self.k.split_at_mut(s);
                (self.rhs)(self.t + C[s] * h, &stage, &mut tail[0]);
            }
            // `stage` now holds the fifth-order solution built with row 7.
            let y_new = stage.clone();
            let mut err = CMatrix::zeros(rows, cols);
            for (j, e) in E.iter().enumerate() {
                if *e != 0.0 {
                    err.zip_apply(&self.k[j], |x, k| *x += k * (e * h));
                }
            }
            let en = self.error_norm(&y_new, &err);
            let factor = if en == 0.0 {
                MAX_FACTOR
            } else {
                (SAFETY * en.powf(-0.2)).clamp(MIN_FACTOR, MAX_FACTOR)
            };
            if en <= 1.0 {
                self.t = if clipped { t_end } else { self.t + h };
                self.y = if self.symmetrize { crate::linalg::hermitian_part(&y_new) } else { y_new };
                self.k.swap(0, 6);
                self.steps += 1;
                let proposal = (h * factor).min(self.tol.max_step);
                // a step shortened to land on an output time must not
                // shrink the controller's step
                self.h = if clipped { self.h.max(proposal) } else { proposal };
            } else {
                self.h = h * factor.min(1.0);
                if self.h < floor {
                    return Err(Error::StepUnderflow { t: self.t, h: self.h });
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{c, I};

    fn tol(rel: f64) -> Tolerances {
        Tolerances { rel, abs: rel * 1e-2, max_step: f64::INFINITY, max_steps: 1_000_000 }
    }

    #[test]
    fn exponential_decay_and_rotation() {
        let lam = c(-0.3, 2.0);
        let rhs = |_t: f64, y: &CMatrix, out: &mut CMatrix| {
            out.copy_from(y);
            *out *= lam;
        };
        let mut s = Stepper::new(rhs, tol(1e-10), 0.0, CMatrix::from_element(1, 1, r(1.0)));
        for t in [0.5, 1.0, 3.7, 10.0] {
            s.advance_to(t).unwrap();
            let exact = (lam * t).exp();
            assert!((s.state()[(0, 0)] - exact).norm() < 1e-8, "t = {t}");
        }
    }

    #[test]
    fn fifth_order_convergence() {
        // y' = i t y, y = exp(i t^2 / 2)
        let rhs = |t: f64, y: &CMatrix, out: &mut CMatrix| {
            out.copy_from(y);
            *out *= I * t;
        };
        let run = |rel: f64| {
            let mut s = Stepper::new(rhs, tol(rel), 0.0, CMatrix::from_element(1, 1, r(1.0)));
            s.advance_to(4.0).unwrap();
            ((s.state()[(0, 0)] - (I * 8.0).exp()).norm(), s.steps)
        };
        let (e1, n1) = run(1e-6);
        let (e2, n2) = run(1e-9);
        assert!(e2 < e1);
        assert!(e2 < 1e-7);
        assert!(n2 > n1);
    }

    #[test]
    fn step_limit_reports_underflow() {
        let rhs = |_t: f64, y: &CMatrix, out: &mut CMatrix| out.copy_from(y);
        let t = Tolerances { rel: 1e-8, abs: 1e-10, max_step: 1e-3, max_steps: 10 };
        let mut s = Stepper::new(rhs, t, 0.0, CMatrix::from_element(1, 1, r(1.0)));
        assert!(matches!(s.advance_to(1.0), Err(Error::StepUnderflow { .. })));
    }
}
