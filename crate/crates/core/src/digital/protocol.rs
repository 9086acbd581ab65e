use std::f64::consts::{FRAC_PI_4, TAU};

use super::gates::{compose, Axis, Gate, GateSequence};
use crate::error::{Error, Result};
use crate::hamlib::Boundary;
use crate::linalg::{r, CVector};
use crate::qops::{ElementaryKind, HilbertSpace, Operator, QuantumState};

/// Nearest-neighbour bonds of an `n`-site chain.
pub fn chain_bonds(n: usize, boundary: Boundary) -> Vec<(usize, usize)> {
    let mut bonds: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
    if boundary == Boundary::Periodic && n > 2 {
        bonds.push((n - 1, 0));
    }
    bonds
}

/// `2 pi J sum_bonds (XX + YY + ZZ)` on `n` qubits, rad/ns.
///
/// With this normalization three XY gates of phase `theta = 2 pi J t`
/// realize `exp(-i H t)` exactly for two qubits.
pub fn heisenberg_hamiltonian(n: usize, j: f64, boundary: Boundary) -> Result<Operator> {
    let space = HilbertSpace::qubits(n)?;
    let mut h = Operator::zeros(&space);
    for (a, b) in chain_bonds(n, boundary) {
        for kind in [ElementaryKind::PauliX, ElementaryKind::PauliY, ElementaryKind::PauliZ] {
            h += &(&Operator::on(&space, a, kind)? * &Operator::on(&space, b, kind)?);
        }
    }
    Ok(h.scale_real(TAU * j))
}

fn sweep(seq: &mut GateSequence, bonds: &[(usize, usize)], j: f64, tau: f64) -> Result<()> {
    for &(a, b) in bonds {
        seq.push(Gate::xy(a, b, j, tau))?;
    }
    Ok(())
}

/// Digital Heisenberg protocol on a chain.
///
/// Each Trotter step is an XY sweep, the same sweep conjugated by
/// collective `R^x(pi/4)` (giving XX + ZZ) and by `R^y(pi/4)` (giving
/// YY + ZZ). Two qubits need a single exact step, so `l` is ignored there.
pub fn heisenberg_protocol(
    n_qubits: usize,
    j: f64,
    t: f64,
    l: usize,
    boundary: Boundary,
) -> Result<GateSequence> {
    if n_qubits < 2 {
        return Err(Error::InvalidArgument(format!("need at least 2 qubits, got {n_qubits}")));
    }
    if l < 1 {
        return Err(Error::InvalidArgument("Trotter number l must be >= 1".into()));
    }
    let steps = if n_qubits == 2 { 1 } else { l };
    let tau = t / steps as f64;
    let bonds = chain_bonds(n_qubits, boundary);
    let all: Vec<usize> = (0..n_qubits).collect();
    let mut seq = GateSequence::new(n_qubits);
    for _ in 0..steps {
        sweep(&mut seq, &bonds, j, tau)?;
        for axis in [Axis::X, Axis::Y] {
            seq.push(Gate::rot(axis, all.clone(), -FRAC_PI_4))?;
            sweep(&mut seq, &bonds, j, tau)?;
            seq.push(Gate::rot(axis, all.clone(), FRAC_PI_4))?;
        }
    }
    Ok(seq)
}

/// Second-order Trotter error bound `24 (N - 2) theta^2 / l` (open) or
/// `24 N theta^2 / l` (periodic) with `theta = 2 pi J t`.
pub fn trotter_bound(n: usize, j: f64, t: f64, l: usize, boundary: Boundary) -> f64 {
    let theta = TAU * j * t;
    let sites = match boundary {
        Boundary::Open => n.saturating_sub(2),
        Boundary::Periodic => n,
    };
    24.0 * sites as f64 * theta * theta / l.max(1) as f64
}

/// `1 - |<psi0| e^{i H t} U_seq |psi0>|^2`.
pub fn digital_fidelity_loss(
    seq: &GateSequence,
    h_target: &Operator,
    t: f64,
    psi0: &QuantumState,
) -> Result<f64> {
    let u = compose(seq)?;
    u.space().ensure_same(h_target.space())?;
    u.space().ensure_same(psi0.space())?;
    let psi = psi0
        .vector()
        .ok_or_else(|| Error::InvalidState("fidelity loss needs a pure state".into()))?;
    let ideal = h_target.propagator(t)?.apply(psi);
    let actual = u.apply(psi);
    Ok((1.0 - ideal.dotc(&actual).norm_sqr()).max(0.0))
}

/// Equal superposition of all computational basis states.
pub fn uniform_superposition(n_qubits: usize) -> Result<QuantumState> {
    let space = HilbertSpace::qubits(n_qubits)?;
    let d = space.total_dim();
    QuantumState::pure(space, CVector::from_element(d, r(1.0 / (d as f64).sqrt())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digital::gates::gate_unitary;
    use std::f64::consts::PI;

    const J: f64 = 0.006;

    fn t_of(theta: f64) -> f64 {
        theta / (TAU * J)
    }

    #[test]
    fn two_qubit_protocol_is_exact() {
        let h = heisenberg_hamiltonian(2, J, Boundary::Open).unwrap();
        for k in 1..=16 {
            let t = t_of(PI / 4.0 * k as f64 / 16.0);
            let seq = heisenberg_protocol(2, J, t, 1, Boundary::Open).unwrap();
            let u = compose(&seq).unwrap();
            assert!(u.norm2_diff(&h.propagator(t).unwrap()) < 1e-10);
        }
    }

    #[test]
    fn gate_counts() {
        let s2 = heisenberg_protocol(2, J, 10.0, 4, Boundary::Open).unwrap();
        assert_eq!(s2.two_qubit_count(), 3);
        assert_eq!(s2.single_qubit_count(), 8);
        for l in 1..5 {
            let s3 = heisenberg_protocol(3, J, 10.0, l, Boundary::Open).unwrap();
            assert_eq!(s3.two_qubit_count(), 6 * l);
            assert_eq!(s3.collective_rotation_count(), 4 * l);
        }
        let p = heisenberg_protocol(4, J, 10.0, 2, Boundary::Periodic).unwrap();
        assert_eq!(p.two_qubit_count(), 2 * 3 * 4);
        assert!(heisenberg_protocol(3, J, 1.0, 0, Boundary::Open).is_err());
        assert!(heisenberg_protocol(1, J, 1.0, 1, Boundary::Open).is_err());
    }

    #[test]
    fn local_rotations_map_the_exchange_axes() {
        let space = HilbertSpace::qubits(2).unwrap();
        let pair = |k| {
            &Operator::on(&space, 0, k).unwrap() * &Operator::on(&space, 1, k).unwrap()
        };
        let (xx, yy, zz) =
            (pair(ElementaryKind::PauliX), pair(ElementaryKind::PauliY), pair(ElementaryKind::PauliZ));
        let hxy = &xx + &yy;
        let rx = gate_unitary(&Gate::rot(Axis::X, vec![0, 1], FRAC_PI_4), 2).unwrap();
        let ry = gate_unitary(&Gate::rot(Axis::Y, vec![0, 1], FRAC_PI_4), 2).unwrap();
        let conj = |u: &Operator| &(u * &hxy) * &u.adjoint();
        assert!(conj(&rx).max_abs_diff(&(&xx + &zz)) < 1e-12);
        assert!(conj(&ry).max_abs_diff(&(&yy + &zz)) < 1e-12);
        assert!(conj(&rx.adjoint()).max_abs_diff(&(&xx + &zz)) < 1e-12);
    }

    #[test]
    fn adjoint_rotations_leave_protocol_invariant() {
        for n in [2, 3, 4] {
            let seq = heisenberg_protocol(n, J, t_of(0.6), 3, Boundary::Open).unwrap();
            let a = compose(&seq).unwrap();
            let b = compose(&seq.with_adjoint_rotations()).unwrap();
            assert!(a.max_abs_diff(&b) < 1e-12);
        }
    }

    #[test]
    fn trotter_bound_values() {
        assert_eq!(trotter_bound(2, J, 40.0, 1, Boundary::Open), 0.0);
        let b = trotter_bound(3, J, t_of(PI / 4.0), 3, Boundary::Open);
        assert!((b - 8.0 * (PI / 4.0).powi(2)).abs() < 1e-12);
        let half = trotter_bound(5, J, 9.0, 6, Boundary::Periodic);
        assert!((trotter_bound(5, J, 9.0, 3, Boundary::Periodic) - 2.0 * half).abs() < 1e-12);
    }

    #[test]
    fn loss_shrinks_with_trotter_number() {
        let h = heisenberg_hamiltonian(3, J, Boundary::Open).unwrap();
        let psi = uniform_superposition(3).unwrap();
        let t = t_of(PI / 8.0);
        let loss = |l| {
            let seq = heisenberg_protocol(3, J, t, l, Boundary::Open).unwrap();
            digital_fidelity_loss(&seq, &h, t, &psi).unwrap()
        };
        assert!(loss(5) < loss(3));
        assert!(loss(3) > 0.0);
        let h2 = heisenberg_hamiltonian(2, J, Boundary::Open).unwrap();
        let seq2 = heisenberg_protocol(2, J, t, 1, Boundary::Open).unwrap();
        assert!(digital_fidelity_loss(&seq2, &h2, t, &uniform_superposition(2).unwrap()).unwrap() < 1e-10);
    }
}
