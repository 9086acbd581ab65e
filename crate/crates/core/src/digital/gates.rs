use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::linalg::{r, I};
use crate::qops::{ElementaryKind, HilbertSpace, Operator};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
    Z,
}

impl Axis {
    fn kind(self) -> ElementaryKind {
        match self {
            Axis::X => ElementaryKind::PauliX,
            Axis::Y => ElementaryKind::PauliY,
            Axis::Z => ElementaryKind::PauliZ,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GateKind {
    /// `exp(-i 2 pi J t (sigma+ sigma- + sigma- sigma+))`, J in GHz, t in ns.
    Xy { j: f64, t: f64 },
    /// `exp(-i angle sum_targets sigma_axis)`.
    Rot { axis: Axis, angle: f64 },
}

#[derive(Clone, Debug, PartialEq)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    /// Physical duration in ns; rotations are treated as instantaneous.
    pub duration: f64,
}

impl Gate {
    pub fn xy(a: usize, b: usize, j: f64, t: f64) -> Self {
        Self { kind: GateKind::Xy { j, t }, targets: vec![a, b], duration: t.abs() }
    }

    pub fn rot(axis: Axis, targets: Vec<usize>, angle: f64) -> Self {
        Self { kind: GateKind::Rot { axis, angle }, targets, duration: 0.0 }
    }

    pub fn is_two_qubit(&self) -> bool {
        matches!(self.kind, GateKind::Xy { .. })
    }

    /// Accumulated exchange phase `2 pi J t` of an XY gate, 0 for rotations.
    pub fn phase(&self) -> f64 {
        match self.kind {
            GateKind::Xy { j, t } => TAU * j * t,
            GateKind::Rot { .. } => 0.0,
        }
    }

    pub fn inverse(&self) -> Self {
        let kind = match self.kind {
            GateKind::Xy { j, t } => GateKind::Xy { j, t: -t },
            GateKind::Rot { axis, angle } => GateKind::Rot { axis, angle: -angle },
        };
        Self { kind, ..self.clone() }
    }

    pub fn validate(&self, n_qubits: usize) -> Result<()> {
        if let Some(&bad) = self.targets.iter().find(|&&q| q >= n_qubits) {
            return Err(Error::OutOfRange(format!("target {bad} on {n_qubits} qubits")));
        }
        let mut sorted = self.targets.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != self.targets.len() {
            return Err(Error::InvalidArgument(format!("repeated targets {:?}", self.targets)));
        }
        match self.kind {
            GateKind::Xy { .. } if self.targets.len() != 2 => Err(Error::InvalidArgument(format!(
                "xy gate needs exactly 2 targets, got {:?}",
                self.targets
            ))),
            GateKind::Rot { .. } if self.targets.is_empty() => {
                Err(Error::InvalidArgument("rotation without targets".into()))
            }
            _ => Ok(()),
        }
    }
}

/// Ordered gate list; the first gate acts first.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct GateSequence {
    pub n_qubits: usize,
    pub gates: Vec<Gate>,
}

impl GateSequence {
    pub fn new(n_qubits: usize) -> Self {
        Self { n_qubits, gates: Vec::new() }
    }

    pub fn push(&mut self, gate: Gate) -> Result<()> {
        gate.validate(self.n_qubits)?;
        self.gates.push(gate);
        Ok(())
    }

    pub fn two_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| g.is_two_qubit()).count()
    }

    /// Number of rotation pulses, a collective pulse counting once.
    pub fn collective_rotation_count(&self) -> usize {
        self.gates.len() - self.two_qubit_count()
    }

    /// Single-qubit rotations counted per addressed qubit.
    pub fn single_qubit_count(&self) -> usize {
        self.gates.iter().filter(|g| !g.is_two_qubit()).map(|g| g.targets.len()).sum()
    }

    /// The inverse sequence: reversed order, each gate inverted.
    pub fn adjoint(&self) -> Self {
        Self { n_qubits: self.n_qubits, gates: self.gates.iter().rev().map(Gate::inverse).collect() }
    }

    /// Every rotation replaced by its adjoint, XY gates untouched.
    pub fn with_adjoint_rotations(&self) -> Self {
        let gates = self
            .gates
            .iter()
            .map(|g| if g.is_two_qubit() { g.clone() } else { g.inverse() })
            .collect();
        Self { n_qubits: self.n_qubits, gates }
    }

    pub fn extend(&mut self, other: &GateSequence) -> Result<()> {
        for g in &other.gates {
            self.push(g.clone())?;
        }
        Ok(())
    }
}

/// Dense unitary of `g` on `n_qubits` qubits.
pub fn gate_unitary(g: &Gate, n_qubits: usize) -> Result<Operator> {
    g.validate(n_qubits)?;
    let space = HilbertSpace::qubits(n_qubits)?;
    let id = Operator::identity(&space);
    match g.kind {
        GateKind::Xy { .. } => {
            let (a, b) = (g.targets[0], g.targets[1]);
            let sp = |q| Operator::on(&space, q, ElementaryKind::SigmaPlus);
            let sm = |q| Operator::on(&space, q, ElementaryKind::SigmaMinus);
            let flip = &(&sp(a)? * &sm(b)?) + &(&sm(a)? * &sp(b)?);
            // flip^3 = flip, so the exponential closes on {1, flip, flip^2}
            let proj = &flip * &flip;
            let phi = g.phase();
            Ok(&(&id - &proj) + &(&proj.scale_real(phi.cos()) + &flip.scale(-I * phi.sin())))
        }
        GateKind::Rot { axis, angle } => {
            let mut u = id.clone();
            for &q in &g.targets {
                let s = Operator::on(&space, q, axis.kind())?;
                let single = &id.scale(r(angle.cos())) + &s.scale(-I * angle.sin());
                u = &u * &single;
            }
            Ok(u)
        }
    }
}

/// Ordered product `U_k ... U_1` of the sequence.
pub fn compose(seq: &GateSequence) -> Result<Operator> {
    let space = HilbertSpace::qubits(seq.n_qubits)?;
    let mut u = Operator::identity(&space);
    for g in &seq.gates {
        u = &gate_unitary(g, seq.n_qubits)? * &u;
    }
    Ok(u)
}
