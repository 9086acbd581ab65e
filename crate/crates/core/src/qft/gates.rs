use super::field::ContinuumSpec;
use crate::error::{Error, Result};
use crate::linalg::I;
use crate::qops::{ElementaryKind, HilbertSpace, Operator};

/// Digital-analog gates on the system qubits (and optional ancilla)
/// coupled to the discretized line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum DaGate {
    /// `exp(-i (theta/4) S^2)`, `S = sum_j (sigma_j^x cos phi + sigma_j^y sin phi)`
    /// over the two system qubits.
    Ms { theta: f64, phi_axis: f64 },
    /// `exp(-phi sigma_1^y F(x_1))`.
    Uc { phi: f64 },
    /// `exp(-phi sigma_A^z F(x_A))`.
    Ua { phi: f64 },
}

/// Two system qubits, an optional ancilla, then one mode per momentum.
#[derive(Clone, Debug, PartialEq)]
pub struct DaRegister {
    pub cont: ContinuumSpec,
    pub ancilla: bool,
}

impl DaRegister {
    pub fn new(cont: ContinuumSpec, ancilla: bool) -> Self {
        Self { cont, ancilla }
    }

    pub fn n_qubits(&self) -> usize {
        if self.ancilla {
            3
        } else {
            2
        }
    }

    pub fn space(&self) -> Result<HilbertSpace> {
        self.cont.space(self.n_qubits(), None)
    }
}

pub fn da_gate(reg: &DaRegister, gate: DaGate) -> Result<Operator> {
    let space = reg.space()?;
    let nq = reg.n_qubits();
    match gate {
        DaGate::Ms { theta, phi_axis } => {
            let mut s = Operator::zeros(&space);
            for j in 0..2 {
                let x = Operator::on(&space, j, ElementaryKind::PauliX)?;
                let y = Operator::on(&space, j, ElementaryKind::PauliY)?;
                s += &(x.scale_real(phi_axis.cos()) + y.scale_real(phi_axis.sin()));
            }
            (&s * &s).propagator(theta / 4.0)
        }
        DaGate::Uc { phi } => conditional_displacement(reg, &space, 0, ElementaryKind::PauliY, phi),
        DaGate::Ua { phi } => {
            if !reg.ancilla {
                return Err(Error::InvalidArgument("U_A needs the ancilla qubit".into()));
            }
            conditional_displacement(reg, &space, nq - 1, ElementaryKind::PauliZ, phi)
        }
    }
}

/// `exp(-phi sigma_slot F(x_slot))`, from the Hermitian `i sigma F`.
fn conditional_displacement(
    reg: &DaRegister,
    space: &HilbertSpace,
    slot: usize,
    kind: ElementaryKind,
    phi: f64,
) -> Result<Operator> {
    let x = *reg
        .cont
        .x_positions
        .get(slot)
        .ok_or_else(|| Error::InvalidArgument(format!("no position for qubit {slot}")))?;
    let sigma = Operator::on(space, slot, kind)?;
    let f = reg.cont.field_generator(space, reg.n_qubits(), x)?;
    (&sigma * &f).scale(I).propagator(-phi)
}

/// `U_MS(pi/2, 0) U_C(phi) U_MS(-pi/2, 0)` on two system qubits and the line.
pub fn da_two_body_sequence(phi: f64, cont: &ContinuumSpec) -> Result<Operator> {
    let reg = DaRegister::new(cont.clone(), false);
    let ms = |theta| da_gate(&reg, DaGate::Ms { theta, phi_axis: 0.0 });
    Ok(&(&ms(std::f64::consts::FRAC_PI_2)? * &da_gate(&reg, DaGate::Uc { phi })?)
        * &ms(-std::f64::consts::FRAC_PI_2)?)
}

/// `U_MS(pi/2, 0) sigma_1^y U_MS(pi/2, 0)†` on the two system qubits.
pub fn da_conjugated_spin() -> Result<Operator> {
    let space = HilbertSpace::qubits(2)?;
    let x1 = Operator::on(&space, 0, ElementaryKind::PauliX)?;
    let x2 = Operator::on(&space, 1, ElementaryKind::PauliX)?;
    let s = &x1 + &x2;
    let u = (&s * &s).propagator(std::f64::consts::PI / 8.0)?;
    let y1 = Operator::on(&space, 0, ElementaryKind::PauliY)?;
    Ok(&(&u * &y1) * &u.adjoint())
}
