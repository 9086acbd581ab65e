use crate::error::{Error, Result};
use crate::qops::{ElementaryKind, HilbertSpace, Operator};

/// `n_modes` fermionic modes: 1..=N/2 are particles (b), N/2+1..=N
/// antiparticles (d). Mode `l` lives on qubit slot `l - 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FermionModeMap {
    n_modes: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FermionOp {
    BDag,
    DDag,
    B,
    D,
}

impl FermionModeMap {
    pub fn new(n_modes: usize) -> Result<Self> {
        if n_modes < 2 || !n_modes.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!("mode count {n_modes} must be even and >= 2")));
        }
        Ok(Self { n_modes })
    }

    pub fn n_modes(&self) -> usize {
        self.n_modes
    }

    pub fn particle_modes(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n_modes / 2
    }

    pub fn antiparticle_modes(&self) -> std::ops::RangeInclusive<usize> {
        self.n_modes / 2 + 1..=self.n_modes
    }
}

/// Spin string of a fermionic operator on `N` qubits.
///
/// `c_l† = sigma_l^- prod_{r<l} sigma_r^z`, annihilators are adjoints.
/// With `sigma^- = |g><e|` an occupied mode is `|g>` and the fermionic
/// vacuum is all qubits in `|e>`.
pub fn jordan_wigner(map: &FermionModeMap, index: usize, kind: FermionOp) -> Result<Operator> {
    let space = HilbertSpace::qubits(map.n_modes)?;
    jordan_wigner_on(&space, 0, map, index, kind)
}

/// Same string embedded on `space`, with mode 1 at slot `first_slot`.
pub fn jordan_wigner_on(
    space: &HilbertSpace,
    first_slot: usize,
    map: &FermionModeMap,
    index: usize,
    kind: FermionOp,
) -> Result<Operator> {
    let valid = match kind {
        FermionOp::B | FermionOp::BDag => map.particle_modes().contains(&index),
        FermionOp::D | FermionOp::DDag => map.antiparticle_modes().contains(&index),
    };
    if !valid {
        return Err(Error::OutOfRange(format!("mode {index} is not a valid {kind:?} index for N = {}", map.n_modes)));
    }
    let mut op = Operator::on(space, first_slot + index - 1, ElementaryKind::SigmaMinus)?;
    for r in 1..index {
        op = &op * &Operator::on(space, first_slot + r - 1, ElementaryKind::PauliZ)?;
    }
    Ok(match kind {
        FermionOp::BDag | FermionOp::DDag => op,
        FermionOp::B | FermionOp::D => op.adjoint(),
    })
}
