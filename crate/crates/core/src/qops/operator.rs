use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_complex::Complex64;

use super::space::{HilbertSpace, Subsystem, SubsystemKind};
use crate::error::{Error, Result};
use crate::linalg::{self, c, r, CMatrix, CVector};

/// Dense operator on a composite Hilbert space.
///
/// Arithmetic through `std::ops` panics when the two operands live on
/// different spaces; use [`Operator::try_add`] and friends where a
/// recoverable error is wanted.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    space: HilbertSpace,
    matrix: CMatrix,
}

/// Single-factor building blocks.
///
/// Qubit basis convention: index 0 is `|g>`, index 1 is `|e>`, and
/// `sigma_z = |e><e| - |g><g|`, so `sigma_z |e> = +|e>`. `sigma_plus`
/// raises `|g> -> |e>`. `pauli_y` is chosen so that
/// `sigma_x sigma_y = i sigma_z` holds in this ordering.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ElementaryKind {
    Annihilator,
    Number,
    PauliX,
    PauliY,
    PauliZ,
    SigmaPlus,
    SigmaMinus,
    Identity,
    Projector(usize, usize),
}

impl ElementaryKind {
    fn qubit_only(self) -> bool {
        matches!(
            self,
            Self::PauliX | Self::PauliY | Self::PauliZ | Self::SigmaPlus | Self::SigmaMinus
        )
    }
}

/// Standard matrix of `kind` on a single factor of dimension `dim`.
pub fn elementary(kind: ElementaryKind, dim: usize) -> Result<Operator> {
    if dim < 2 {
        return Err(Error::InvalidArgument(format!("dimension {dim} < 2")));
    }
    if kind.qubit_only() && dim != 2 {
        return Err(Error::DimensionMismatch(format!("{kind:?} requires dimension 2, got {dim}")));
    }
    let space_kind = match kind {
        _ if kind.qubit_only() => SubsystemKind::Qubit,
        ElementaryKind::Annihilator | ElementaryKind::Number => SubsystemKind::Mode,
        _ if dim == 2 => SubsystemKind::Qubit,
        _ => SubsystemKind::Levels,
    };
    let mut m = CMatrix::zeros(dim, dim);
    match kind {
        ElementaryKind::Annihilator => {
            for n in 1..dim {
                m[(n - 1, n)] = r((n as f64).sqrt());
            }
        }
        ElementaryKind::Number => {
            for n in 0..dim {
                m[(n, n)] = r(n as f64);
            }
        }
        ElementaryKind::PauliX => {
            m[(0, 1)] = r(1.0);
            m[(1, 0)] = r(1.0);
        }
        ElementaryKind::PauliY => {
            m[(0, 1)] = c(0.0, 1.0);
            m[(1, 0)] = c(0.0, -1.0);
        }
        ElementaryKind::PauliZ => {
            m[(0, 0)] = r(-1.0);
            m[(1, 1)] = r(1.0);
        }
        ElementaryKind::SigmaPlus => m[(1, 0)] = r(1.0),
        ElementaryKind::SigmaMinus => m[(0, 1)] = r(1.0),
        ElementaryKind::Identity => m.fill_with_identity(),
        ElementaryKind::Projector(i, j) => {
            if i >= dim || j >= dim {
                return Err(Error::OutOfRange(format!("projector |{i}><{j}| on dimension {dim}")));
            }
            m[(i, j)] = r(1.0);
        }
    }
    let space = HilbertSpace::new(vec![Subsystem { kind: space_kind, dim }])?;
    Ok(Operator { space, matrix: m })
}

/// Kronecker product in the given order.
pub fn tensor(factors: &[&Operator]) -> Result<Operator> {
    let (first, rest) = factors
        .split_first()
        .ok_or_else(|| Error::InvalidArgument("tensor of zero factors".into()))?;
    let mut out = (*first).clone();
    for f in rest {
        out = Operator {
            space: out.space.concat(&f.space),
            matrix: out.matrix.kronecker(&f.matrix),
        };
    }
    Ok(out)
}

/// Lift a single-factor operator into `space`, acting on `slot` and as the
/// identity elsewhere.
pub fn embed(op: &Operator, space: &HilbertSpace, slot: usize) -> Result<Operator> {
    let dims = space.dims();
    let target = space.dim(slot)?;
    if op.dim() != target {
        return Err(Error::DimensionMismatch(format!(
            "operator of dimension {} into slot {slot} of dimension {target}",
            op.dim()
        )));
    }
    let left: usize = dims[..slot].iter().product();
    let right: usize = dims[slot + 1..].iter().product();
    let mut m = op.matrix.clone();
    if left > 1 {
        m = CMatrix::identity(left, left).kronecker(&m);
    }
    if right > 1 {
        m = m.kronecker(&CMatrix::identity(right, right));
    }
    Ok(Operator { space: space.clone(), matrix: m })
}

impl Operator {
    pub fn new(space: HilbertSpace, matrix: CMatrix) -> Result<Self> {
        let n = space.total_dim();
        if matrix.nrows() != n || matrix.ncols() != n {
            return Err(Error::DimensionMismatch(format!(
                "matrix {}x{} on space of dimension {n}",
                matrix.nrows(),
                matrix.ncols()
            )));
        }
        Ok(Self { space, matrix })
    }

    pub fn identity(space: &HilbertSpace) -> Self {
        let n = space.total_dim();
        Self { space: space.clone(), matrix: CMatrix::identity(n, n) }
    }

    pub fn zeros(space: &HilbertSpace) -> Self {
        let n = space.total_dim();
        Self { space: space.clone(), matrix: CMatrix::zeros(n, n) }
    }

    /// Convenience: `embed(elementary(kind, dims[slot]), space, slot)`.
    pub fn on(space: &HilbertSpace, slot: usize, kind: ElementaryKind) -> Result<Self> {
        embed(&elementary(kind, space.dim(slot)?)?, space, slot)
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn adjoint(&self) -> Self {
        Self { space: self.space.clone(), matrix: self.matrix.adjoint() }
    }

    pub fn hermiticity_error(&self) -> f64 {
        linalg::hermiticity_error(&self.matrix)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_error() <= tol
    }

    pub fn unitarity_error(&self) -> f64 {
        let n = self.dim();
        linalg::max_abs(&(self.matrix.adjoint() * &self.matrix - CMatrix::identity(n, n)))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_error() <= tol
    }

    pub fn ensure_hermitian(&self, tol: f64) -> Result<()> {
        let err = self.hermiticity_error();
        if err <= tol {
            Ok(())
        } else {
            Err(Error::NotHermitian(err))
        }
    }

    pub fn trace(&self) -> Complex64 {
        linalg::trace(&self.matrix)
    }

    pub fn scale(&self, s: Complex64) -> Self {
        Self { space: self.space.clone(), matrix: &self.matrix * s }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(r(s))
    }

    pub fn try_add(&self, other: &Operator) -> Result<Self> {
        self.space.ensure_same(&other.space)?;
        Ok(Self { space: self.space.clone(), matrix: &self.matrix + &other.matrix })
    }

    pub fn try_mul(&self, other: &Operator) -> Result<Self> {
        self.space.ensure_same(&other.space)?;
        Ok(Self { space: self.space.clone(), matrix: &self.matrix * &other.matrix })
    }

    pub fn commutator(&self, other: &Operator) -> Result<Self> {
        self.space.ensure_same(&other.space)?;
        Ok(Self {
            space: self.space.clone(),
            matrix: linalg::commutator(&self.matrix, &other.matrix),
        })
    }

    pub fn anticommutator(&self, other: &Operator) -> Result<Self> {
        self.space.ensure_same(&other.space)?;
        Ok(Self {
            space: self.space.clone(),
            matrix: linalg::anticommutator(&self.matrix, &other.matrix),
        })
    }

    pub fn apply(&self, v: &CVector) -> CVector {
        &self.matrix * v
    }

    /// `exp(-i s H)` for Hermitian `self`.
    pub fn propagator(&self, s: f64) -> Result<Self> {
        self.ensure_hermitian(1e-10)?;
        Ok(Self { space: self.space.clone(), matrix: linalg::expm_hermitian(&self.matrix, s) })
    }

    /// General matrix exponential `exp(self)`.
    pub fn exp(&self) -> Self {
        Self { space: self.space.clone(), matrix: linalg::expm(&self.matrix) }
    }

    pub fn eigenvalues_hermitian(&self) -> Vec<f64> {
        linalg::HermitianEigen::new(&self.matrix).values
    }

    pub fn max_abs_diff(&self, other: &Operator) -> f64 {
        linalg::max_abs(&(&self.matrix - &other.matrix))
    }

    pub fn norm2_diff(&self, other: &Operator) -> f64 {
        linalg::norm2(&(&self.matrix - &other.matrix))
    }

    /// Same matrix on a relabelled space of equal total dimension.
    pub fn reinterpret(&self, space: &HilbertSpace) -> Result<Self> {
        Self::new(space.clone(), self.matrix.clone())
    }
}

fn check_same(a: &Operator, b: &Operator) {
    assert!(
        a.space == b.space,
        "operator space mismatch: {} vs {}",
        a.space,
        b.space
    );
}

impl Add for &Operator {
    type Output = Operator;
    fn add(self, rhs: &Operator) -> Operator {
        check_same(self, rhs);
        Operator { space: self.space.clone(), matrix: &self.matrix + &rhs.matrix }
    }
}

impl Add for Operator {
    type Output = Operator;
    fn add(self, rhs: Operator) -> Operator {
        &self + &rhs
    }
}

impl AddAssign<&Operator> for Operator {
    fn add_assign(&mut self, rhs: &Operator) {
        check_same(self, rhs);
        self.matrix += &rhs.matrix;
    }
}

impl Sub for &Operator {
    type Output = Operator;
    fn sub(self, rhs: &Operator) -> Operator {
        check_same(self, rhs);
        Operator { space: self.space.clone(), matrix: &self.matrix - &rhs.matrix }
    }
}

impl Sub for Operator {
    type Output = Operator;
    fn sub(self, rhs: Operator) -> Operator {
        &self - &rhs
    }
}

impl Mul for &Operator {
    type Output = Operator;
    fn mul(self, rhs: &Operator) -> Operator {
        check_same(self, rhs);
        Operator { space: self.space.clone(), matrix: &self.matrix * &rhs.matrix }
    }
}

impl Mul for Operator {
    type Output = Operator;
    fn mul(self, rhs: Operator) -> Operator {
        &self * &rhs
    }
}

impl Mul<f64> for &Operator {
    type Output = Operator;
    fn mul(self, s: f64) -> Operator {
        self.scale_real(s)
    }
}

impl Mul<f64> for Operator {
    type Output = Operator;
    fn mul(self, s: f64) -> Operator {
        self.scale_real(s)
    }
}

impl Mul<Complex64> for &Operator {
    type Output = Operator;
    fn mul(self, s: Complex64) -> Operator {
        self.scale(s)
    }
}

impl Mul<Complex64> for Operator {
    type Output = Operator;
    fn mul(self, s: Complex64) -> Operator {
        self.scale(s)
    }
}

impl Neg for &Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale_real(-1.0)
    }
}

impl Neg for Operator {
    type Output = Operator;
    fn neg(self) -> Operator {
        self.scale_real(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::I;
    use ElementaryKind::*;

    fn q(kind: ElementaryKind) -> Operator {
        elementary(kind, 2).unwrap()
    }

    #[test]
    fn pauli_z_follows_basis_convention() {
        let z = q(PauliZ);
        assert_eq!(z.matrix()[(0, 0)], r(-1.0));
        assert_eq!(z.matrix()[(1, 1)], r(1.0));
        // sigma_plus |g> = |e>
        assert_eq!(q(SigmaPlus).matrix()[(1, 0)], r(1.0));
    }

    #[test]
    fn annihilator_and_number() {
        let a = elementary(Annihilator, 3).unwrap();
        assert_eq!(a.matrix()[(0, 1)], r(1.0));
        assert!((a.matrix()[(1, 2)] - r(2f64.sqrt())).norm() < 1e-15);
        assert_eq!(a.matrix().iter().filter(|z| z.norm() > 0.0).count(), 2);
        let n = elementary(Number, 4).unwrap();
        for k in 0..4 {
            assert_eq!(n.matrix()[(k, k)], r(k as f64));
        }
        let ad_a = &a.adjoint() * &a;
        assert!(ad_a.max_abs_diff(&elementary(Number, 3).unwrap()) < 1e-14);
    }

    #[test]
    fn qubit_kinds_reject_other_dimensions() {
        assert!(matches!(elementary(PauliX, 3), Err(Error::DimensionMismatch(_))));
        assert!(matches!(elementary(SigmaMinus, 4), Err(Error::DimensionMismatch(_))));
        assert!(elementary(Identity, 1).is_err());
        assert!(elementary(Projector(3, 0), 3).is_err());
    }

    #[test]
    fn pauli_algebra() {
        let p = [q(PauliX), q(PauliY), q(PauliZ)];
        let id = q(Identity);
        let eps = |j: usize, k: usize, l: usize| -> f64 {
            match (j, k, l) {
                (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
                (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
                _ => 0.0,
            }
        };
        for j in 0..3 {
            for k in 0..3 {
                let mut expect = if j == k { id.clone() } else { Operator::zeros(id.space()) };
                for l in 0..3 {
                    expect = &expect + &p[l].scale(I * eps(j, k, l));
                }
                assert!((&p[j] * &p[k]).max_abs_diff(&expect) < 1e-14, "{j}{k}");
            }
        }
    }

    #[test]
    fn truncated_commutator() {
        let nc = 6;
        let a = elementary(Annihilator, nc).unwrap();
        let comm = a.commutator(&a.adjoint()).unwrap();
        for n in 0..nc {
            let expect = if n == nc - 1 { 1.0 - nc as f64 } else { 1.0 };
            assert!((comm.matrix()[(n, n)] - r(expect)).norm() < 1e-12);
        }
    }

    #[test]
    fn tensor_basics() {
        let id = q(Identity);
        let i4 = tensor(&[&id, &id]).unwrap();
        assert!(i4.max_abs_diff(&Operator::identity(i4.space())) < 1e-15);
        let z1 = tensor(&[&q(PauliZ), &id]).unwrap();
        let z2 = tensor(&[&id, &q(PauliZ)]).unwrap();
        assert!(z1.max_abs_diff(&z2) > 0.5);
        assert!(linalg::max_abs(z1.commutator(&z2).unwrap().matrix()) < 1e-15);
        let xx = tensor(&[&q(PauliX), &q(PauliX)]).unwrap();
        assert!((&xx * &xx).max_abs_diff(&i4) < 1e-15);
        assert!(tensor(&[]).is_err());
    }

    #[test]
    fn embed_examples() {
        let s = HilbertSpace::qubits(2).unwrap();
        let x0 = embed(&q(PauliX), &s, 0).unwrap();
        let expect = tensor(&[&q(PauliX), &q(Identity)]).unwrap();
        assert_eq!(x0.matrix(), expect.matrix());

        let s = HilbertSpace::qubit().concat(&HilbertSpace::mode(5).unwrap());
        let a = Operator::on(&s, 1, Annihilator).unwrap();
        let z = Operator::on(&s, 0, PauliZ).unwrap();
        assert!(linalg::max_abs(a.commutator(&z).unwrap().matrix()) < 1e-15);
        let n = Operator::on(&s, 1, Number).unwrap();
        assert!((&a.adjoint() * &a).max_abs_diff(&n) < 1e-14);

        assert!(matches!(embed(&q(PauliX), &s, 2), Err(Error::OutOfRange(_))));
        assert!(matches!(embed(&q(PauliX), &s, 1), Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn embed_preserves_spectrum_with_multiplicity() {
        let s = HilbertSpace::from_dims(&[2, 3, 2]).unwrap();
        let n3 = elementary(Number, 3).unwrap();
        let e = embed(&n3, &s, 1).unwrap();
        let mut ev = e.eigenvalues_hermitian();
        ev.iter_mut().for_each(|x| *x = x.round());
        for k in 0..3 {
            assert_eq!(ev.iter().filter(|&&x| x == k as f64).count(), 4);
        }
    }
}
