use std::fmt;

use crate::error::{Error, Result};

/// What a tensor factor physically is. Only `Mode` factors take part in
/// the Fock-truncation leakage diagnostic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SubsystemKind {
    Qubit,
    /// A d-level system such as a multilevel transmon.
    Levels,
    /// A bosonic mode truncated at the given dimension (Fock cutoff).
    Mode,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Subsystem {
    pub kind: SubsystemKind,
    pub dim: usize,
}

/// Ordered list of tensor factors. Slot 0 is the most significant index
/// of the composite basis (Kronecker order).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HilbertSpace {
    subsystems: Vec<Subsystem>,
}

impl HilbertSpace {
    pub fn new(subsystems: Vec<Subsystem>) -> Result<Self> {
        if subsystems.is_empty() {
            return Err(Error::InvalidArgument("a Hilbert space needs at least one factor".into()));
        }
        for s in &subsystems {
            if s.dim < 2 {
                return Err(Error::InvalidArgument(format!("subsystem dimension {} < 2", s.dim)));
            }
            if s.kind == SubsystemKind::Qubit && s.dim != 2 {
                return Err(Error::InvalidArgument(format!("qubit with dimension {}", s.dim)));
            }
        }
        Ok(Self { subsystems })
    }

    pub fn qubit() -> Self {
        Self { subsystems: vec![Subsystem { kind: SubsystemKind::Qubit, dim: 2 }] }
    }

    pub fn mode(cutoff: usize) -> Result<Self> {
        Self::new(vec![Subsystem { kind: SubsystemKind::Mode, dim: cutoff }])
    }

    pub fn levels(dim: usize) -> Result<Self> {
        Self::new(vec![Subsystem { kind: SubsystemKind::Levels, dim }])
    }

    pub fn qubits(n: usize) -> Result<Self> {
        Self::new(vec![Subsystem { kind: SubsystemKind::Qubit, dim: 2 }; n])
    }

    /// Generic factors from bare dimensions (kind `Levels`, or `Qubit` for 2).
    pub fn from_dims(dims: &[usize]) -> Result<Self> {
        Self::new(
            dims.iter()
                .map(|&dim| Subsystem {
                    kind: if dim == 2 { SubsystemKind::Qubit } else { SubsystemKind::Levels },
                    dim,
                })
                .collect(),
        )
    }

    /// Tensor product `self ⊗ other`.
    pub fn concat(&self, other: &HilbertSpace) -> Self {
        let mut subsystems = self.subsystems.clone();
        subsystems.extend_from_slice(&other.subsystems);
        Self { subsystems }
    }

    pub fn subsystems(&self) -> &[Subsystem] {
        &self.subsystems
    }

    pub fn dims(&self) -> Vec<usize> {
        self.subsystems.iter().map(|s| s.dim).collect()
    }

    pub fn len(&self) -> usize {
        self.subsystems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subsystems.is_empty()
    }

    pub fn total_dim(&self) -> usize {
        self.subsystems.iter().map(|s| s.dim).product()
    }

    pub fn dim(&self, slot: usize) -> Result<usize> {
        self.subsystems
            .get(slot)
            .map(|s| s.dim)
            .ok_or_else(|| Error::OutOfRange(format!("slot {slot} of {}", self.len())))
    }

    pub fn ensure_same(&self, other: &HilbertSpace) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::SpaceMismatch { expected: self.dims(), found: other.dims() })
        }
    }

    /// Slots holding bosonic modes.
    pub fn mode_slots(&self) -> impl Iterator<Item = usize> + '_ {
        self.subsystems
            .iter()
            .enumerate()
            .filter(|(_, s)| s.kind == SubsystemKind::Mode)
            .map(|(i, _)| i)
    }

    /// Digits of a composite basis index, one per slot.
    pub fn unravel(&self, mut index: usize) -> Vec<usize> {
        let mut digits = vec![0; self.len()];
        for (slot, s) in self.subsystems.iter().enumerate().rev() {
            digits[slot] = index % s.dim;
            index /= s.dim;
        }
        digits
    }

    /// Inverse of [`unravel`](Self::unravel).
    pub fn ravel(&self, digits: &[usize]) -> Result<usize> {
        if digits.len() != self.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} digits for {} slots",
                digits.len(),
                self.len()
            )));
        }
        let mut index = 0;
        for (d, s) in digits.iter().zip(&self.subsystems) {
            if *d >= s.dim {
                return Err(Error::OutOfRange(format!("level {d} of dimension {}", s.dim)));
            }
            index = index * s.dim + d;
        }
        Ok(index)
    }
}

impl fmt::Display for HilbertSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .subsystems
            .iter()
            .map(|s| match s.kind {
                SubsystemKind::Qubit => "q2".to_string(),
                SubsystemKind::Levels => format!("L{}", s.dim),
                SubsystemKind::Mode => format!("m{}", s.dim),
            })
            .collect();
        write!(f, "[{}]", parts.join(" x "))
    }
}
