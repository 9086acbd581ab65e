use std::f64::consts::TAU;

use crate::error::{Error, Result};
use crate::qops::{ElementaryKind::*, HilbertSpace, Operator, Subsystem, SubsystemKind};

/// Level frequencies `[0, omega_1, (2 + alpha_r) omega_1, ...]` of a weakly
/// anharmonic ladder; level `k` sits at `k omega_1 + k(k-1)/2 alpha_r omega_1`.
pub fn transmon_ladder(omega_1: f64, alpha_r: f64, n_levels: usize) -> Vec<f64> {
    (0..n_levels)
        .map(|k| {
            let k = k as f64;
            k * omega_1 + 0.5 * k * (k - 1.0) * alpha_r * omega_1
        })
        .collect()
}

/// `[levels(d_1), ..., levels(d_n), mode(n_fock)]`.
pub fn multilevel_space(level_counts: &[usize], n_fock: usize) -> Result<HilbertSpace> {
    let mut subsystems: Vec<Subsystem> = level_counts
        .iter()
        .map(|&dim| Subsystem { kind: SubsystemKind::Levels, dim })
        .collect();
    subsystems.push(Subsystem { kind: SubsystemKind::Mode, dim: n_fock });
    HilbertSpace::new(subsystems)
}

/// Multilevel transmons sharing one cavity mode, without the rotating-wave
/// approximation on the coupling:
/// `sum_j sum_i w_i^j |i><i|_j + w_r a†a + sum_j sum_i g_{i,i+1} (|i><i+1|_j + h.c.)(a + a†)`
/// with `g_{i,i+1} = sqrt(i + 1) g0`, all times 2 pi.
pub fn build_transmon_multilevel(
    level_freqs: &[Vec<f64>],
    omega_r: f64,
    g0: f64,
    n_fock: usize,
) -> Result<Operator> {
    if level_freqs.is_empty() {
        return Err(Error::InvalidArgument("at least one transmon is required".into()));
    }
    let counts: Vec<usize> = level_freqs.iter().map(Vec::len).collect();
    let space = multilevel_space(&counts, n_fock)?;
    let cavity = level_freqs.len();
    let a = Operator::on(&space, cavity, Annihilator)?;
    let field = &a + &a.adjoint();
    let mut h = Operator::on(&space, cavity, Number)?.scale_real(omega_r);
    for (slot, freqs) in level_freqs.iter().enumerate() {
        for (i, &w) in freqs.iter().enumerate() {
            h += &Operator::on(&space, slot, Projector(i, i))?.scale_real(w);
        }
        for i in 0..freqs.len() - 1 {
            let lower = Operator::on(&space, slot, Projector(i, i + 1))?;
            let g = ((i + 1) as f64).sqrt() * g0;
            h += &(&(&lower + &lower.adjoint()) * &field).scale_real(g);
        }
    }
    Ok(h.scale_real(TAU))
}

/// Cavity-mediated exchange `g01^2 omega_1 / (omega_1^2 - omega_r^2)` in GHz.
pub fn effective_xy_coupling(g01: f64, omega_1: f64, omega_r: f64) -> Result<f64> {
    let den = omega_1 * omega_1 - omega_r * omega_r;
    if den.abs() <= 1e-12 * (omega_1 * omega_1).max(1.0) {
        return Err(Error::Resonance(format!("omega_1 = omega_r = {omega_1}")));
    }
    Ok(g01 * g01 * omega_1 / den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ladder_levels() {
        let l = transmon_ladder(5.0, -0.1, 3);
        assert_relative_eq!(l[1], 5.0);
        assert_relative_eq!(l[2], 9.5, epsilon = 1e-12);
    }

    #[test]
    fn coupling_matrix_elements() {
        let l = transmon_ladder(5.0, -0.1, 3);
        let h = build_transmon_multilevel(&[l.clone(), l], 7.5, 0.2, 3).unwrap();
        assert!(h.is_hermitian(1e-14));
        let space = h.space().clone();
        // <1,0,0| H |2,0,1> on transmon 0 carries g_12 = sqrt 2 g0
        let bra = space.ravel(&[1, 0, 0]).unwrap();
        let ket = space.ravel(&[2, 0, 1]).unwrap();
        assert_relative_eq!(h.matrix()[(bra, ket)].re, TAU * 2f64.sqrt() * 0.2, epsilon = 1e-12);
        let ket = space.ravel(&[0, 0, 1]).unwrap();
        assert_relative_eq!(h.matrix()[(bra, ket)].re, TAU * 0.2, epsilon = 1e-12);
    }

    #[test]
    fn uncoupled_is_sum_of_free_spectra() {
        let l = transmon_ladder(5.0, -0.1, 3);
        let h = build_transmon_multilevel(&[l.clone(), l.clone()], 7.5, 0.0, 3).unwrap();
        let mut expect = Vec::new();
        for a in &l {
            for b in &l {
                for n in 0..3 {
                    expect.push(TAU * (a + b + 7.5 * n as f64));
                }
            }
        }
        expect.sort_by(f64::total_cmp);
        for (x, y) in h.eigenvalues_hermitian().iter().zip(&expect) {
            assert_relative_eq!(*x, *y, epsilon = 1e-9);
        }
    }

    #[test]
    fn dispersive_coupling_formula() {
        let j = effective_xy_coupling(0.2, 5.0, 7.5).unwrap();
        assert_relative_eq!(j, -0.0064, epsilon = 1e-15);
        assert_eq!(effective_xy_coupling(0.0, 5.0, 7.5).unwrap(), 0.0);
        assert!(matches!(effective_xy_coupling(0.2, 5.0, 5.0), Err(Error::Resonance(_))));
        for (w1, wr) in [(5.0, 7.5), (6.1, 4.2), (3.3, 9.0)] {
            let j = effective_xy_coupling(0.13, w1, wr).unwrap();
            assert_relative_eq!(j * (w1 * w1 - wr * wr), 0.13 * 0.13 * w1, epsilon = 1e-14);
        }
    }
}
