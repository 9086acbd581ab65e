use std::fmt;
use std::sync::Arc;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{self, r, CMatrix, CVector, HermitianEigen, I};
use crate::qops::{HilbertSpace, Operator};

/// Scalar prefactor of one Hamiltonian term.
#[derive(Clone)]
pub enum Coefficient {
    Constant(Complex64),
    Function(Arc<dyn Fn(f64) -> Complex64 + Send + Sync>),
}

impl Coefficient {
    pub fn function(f: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self::Function(Arc::new(f))
    }

    /// `amplitude * exp(i * angular * t)`.
    pub fn rotating(amplitude: Complex64, angular: f64) -> Self {
        Self::function(move |t| amplitude * (I * angular * t).exp())
    }

    pub fn at(&self, t: f64) -> Complex64 {
        match self {
            Self::Constant(c) => *c,
            Self::Function(f) => f(t),
        }
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, Self::Constant(_))
    }
}

impl fmt::Debug for Coefficient {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Constant(c) => write!(f, "Constant({c})"),
            Self::Function(_) => write!(f, "Function(..)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Term {
    pub operator: Operator,
    pub coefficient: Coefficient,
}

/// Interaction-picture wrapper: `t -> e^{i H0 t} M(t) e^{-i H0 t}`.
/// A diagonal `H0` skips the change of basis.
#[derive(Clone, Debug)]
enum Frame {
    Diagonal(Vec<f64>),
    Eigen(HermitianEigen),
}

impl Frame {
    fn new(h0: &CMatrix) -> Self {
        let n = h0.nrows();
        let off_diagonal = (0..n).any(|j| (0..n).any(|i| i != j && h0[(i, j)] != r(0.0)));
        if off_diagonal {
            Self::Eigen(HermitianEigen::new(h0))
        } else {
            Self::Diagonal(h0.diagonal().iter().map(|z| z.re).collect())
        }
    }

    fn values(&self) -> &[f64] {
        match self {
            Self::Diagonal(v) => v,
            Self::Eigen(e) => &e.values,
        }
    }

    fn apply(&self, t: f64, out: &mut CMatrix) {
        let phases: Vec<Complex64> = self.values().iter().map(|&e| (I * e * t).exp()).collect();
        let rotate = |m: &mut CMatrix| {
            for (j, pj) in phases.iter().enumerate() {
                for (i, pi) in phases.iter().enumerate() {
                    m[(i, j)] *= pi * pj.conj();
                }
            }
        };
        match self {
            Self::Diagonal(_) => rotate(out),
            Self::Eigen(e) => {
                let v = &e.vectors;
                let mut inner = v.adjoint() * &*out * v;
                rotate(&mut inner);
                *out = v * inner * v.adjoint();
            }
        }
    }
}

/// `H(t) = Σ_k f_k(t) A_k`, optionally seen from a frame rotating with a
/// static Hermitian `H0`. Operators are in angular units (rad/ns).
#[derive(Clone, Debug)]
pub struct TimeDependentHamiltonian {
    space: HilbertSpace,
    terms: Vec<Term>,
    frame: Option<Arc<Frame>>,
}

impl TimeDependentHamiltonian {
    pub fn new(space: &HilbertSpace) -> Self {
        Self { space: space.clone(), terms: Vec::new(), frame: None }
    }

    pub fn from_static(op: Operator) -> Self {
        let mut h = Self::new(op.space());
        h.terms.push(Term { operator: op, coefficient: Coefficient::Constant(r(1.0)) });
        h
    }

    pub fn add(&mut self, operator: Operator, coefficient: Coefficient) -> Result<&mut Self> {
        self.space.ensure_same(operator.space())?;
        self.terms.push(Term { operator, coefficient });
        Ok(self)
    }

    pub fn add_static(&mut self, operator: Operator) -> Result<&mut Self> {
        self.add(operator, Coefficient::Constant(r(1.0)))
    }

    pub fn with(mut self, operator: Operator, coefficient: Coefficient) -> Result<Self> {
        self.add(operator, coefficient)?;
        Ok(self)
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    /// True when no term depends on time and no frame is attached.
    pub fn is_static(&self) -> bool {
        self.frame.is_none() && self.terms.iter().all(|t| t.coefficient.is_constant())
    }

    /// Writes `H(t)` into `out` (resized as needed).
    pub fn evaluate_into(&self, t: f64, out: &mut CMatrix) {
        let n = self.space.total_dim();
        if out.nrows() != n || out.ncols() != n {
            *out = CMatrix::zeros(n, n);
        } else {
            out.fill(r(0.0));
        }
        for term in &self.terms {
            let c = term.coefficient.at(t);
            if c != r(0.0) {
                out.zip_apply(term.operator.matrix(), |o, a| *o += c * a);
            }
        }
        if let Some(frame) = &self.frame {
            frame.apply(t, out);
        }
    }

    pub fn evaluate(&self, t: f64) -> CMatrix {
        let mut out = CMatrix::zeros(0, 0);
        self.evaluate_into(t, &mut out);
        out
    }

    pub fn operator_at(&self, t: f64) -> Operator {
        Operator::new(self.space.clone(), self.evaluate(t)).expect("dimension is consistent")
    }

    pub fn apply(&self, t: f64, psi: &CVector) -> CVector {
        self.evaluate(t) * psi
    }

    /// Largest Hermiticity defect of `H(t)` over the given sample times.
    pub fn hermiticity_error_at(&self, times: &[f64]) -> f64 {
        times
            .iter()
            .map(|&t| linalg::hermiticity_error(&self.evaluate(t)))
            .fold(0.0, f64::max)
    }

    /// `t -> e^{i H0 t} (H(t) - H0) e^{-i H0 t}`.
    pub fn in_frame_of(&self, h0: &Operator) -> Result<Self> {
        self.space.ensure_same(h0.space())?;
        h0.ensure_hermitian(1e-10)?;
        let mut inner = self.clone();
        inner.add_static(-h0)?;
        let frame = match &self.frame {
            None => Frame::new(h0.matrix()),
            Some(_) => {
                return Err(Error::InvalidArgument(
                    "nested frame transforms are not supported".into(),
                ))
            }
        };
        inner.frame = Some(Arc::new(frame));
        Ok(inner)
    }
}
