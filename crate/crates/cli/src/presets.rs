use std::f64::consts::FRAC_PI_4;

use crate::error::{config_err, CliResult};
use crate::params::{ParamSet, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    /// Two-tone driven cell against the effective Rabi model.
    Qrm,
    /// Effective Dirac Hamiltonians and field Wigner functions.
    Dirac,
    /// Gate-level Heisenberg protocol, Trotter loss and gate budget.
    Heisenberg,
    /// Heisenberg step built from dispersive transmon segments.
    Dispersive,
    /// Pair creation from the fermionic vacuum on a discretized line.
    QftPair,
}

#[derive(Clone, Copy, Debug)]
pub struct Preset {
    pub name: &'static str,
    pub anchor: &'static str,
    pub summary: &'static str,
    pub kind: Kind,
    pub overrides: &'static [(&'static str, &'static str)],
}

const PRESETS: &[Preset] = &[
    Preset {
        name: "fig6_left",
        anchor: "Fig. 6 (left)",
        summary: "P_g(t) from |g,0>, exact two-tone vs effective QRM, Omega_2 = 0, g_eff/omega_eff = 1",
        kind: Kind::Qrm,
        overrides: &[],
    },
    Preset {
        name: "fig6_right",
        anchor: "Fig. 6 (right)",
        summary: "P_g(t) from |g,0>, exact two-tone vs effective QRM, Omega_2 = 0.010 GHz, g_eff/omega_eff = 1",
        kind: Kind::Qrm,
        overrides: &[("rabi_2", "0.01")],
    },
    Preset {
        name: "fig7_a",
        anchor: "Fig. 7(a)",
        summary: "massless Dirac, lambda = 0, initial |+,0>, t = 60 ns",
        kind: Kind::Dirac,
        overrides: &[("regime", "massless")],
    },
    Preset {
        name: "fig7_b",
        anchor: "Fig. 7(b)",
        summary: "massless Dirac, lambda = 0, initial |+,sqrt2 i>, t = 60 ns",
        kind: Kind::Dirac,
        overrides: &[("regime", "massless"), ("alpha_im", "1.4142135623730951")],
    },
    Preset {
        name: "fig7_c",
        anchor: "Fig. 7(c)",
        summary: "massive Dirac, lambda = sqrt2 g, initial |+,0>, t = 60 ns",
        kind: Kind::Dirac,
        overrides: &[("lambda", "0.014142135623730952")],
    },
    Preset {
        name: "fig7_d",
        anchor: "Fig. 7(d)",
        summary: "massive Dirac, lambda = sqrt2 g, initial |+,sqrt2 i>, t = 60 ns",
        kind: Kind::Dirac,
        overrides: &[("lambda", "0.014142135623730952"), ("alpha_im", "1.4142135623730951")],
    },
    Preset {
        name: "fig7_e",
        anchor: "Fig. 7(e)",
        summary: "massive Dirac, lambda = 4 sqrt2 g, initial |e,0>, t = 60 ns",
        kind: Kind::Dirac,
        overrides: &[("lambda", "0.05656854249492381"), ("spin", "e")],
    },
    Preset {
        name: "fig7_f",
        anchor: "Fig. 7(f)",
        summary: "massive Dirac, lambda = 4 sqrt2 g, initial |e,sqrt2 i>, t = 60 ns",
        kind: Kind::Dirac,
        overrides: &[("lambda", "0.05656854249492381"), ("spin", "e"), ("alpha_im", "1.4142135623730951")],
    },
    Preset {
        name: "klein_massless",
        anchor: "Fig. 7(a-b), Klein paradox",
        summary: "massless Dirac in a linear potential, straight-line <x>(t) from |+,0>",
        kind: Kind::Dirac,
        overrides: &[("regime", "massless"), ("n_samples", "241"), ("wigner_points", "61")],
    },
    Preset {
        name: "fig9_a",
        anchor: "Fig. 9(a)",
        summary: "3-qubit Heisenberg fidelity loss vs theta, eps = 1e-2, l = 3,5",
        kind: Kind::Heisenberg,
        overrides: &[],
    },
    Preset {
        name: "fig9_b",
        anchor: "Fig. 9(b)",
        summary: "3-qubit Heisenberg fidelity loss vs theta, eps = 5e-2, l = 2,3",
        kind: Kind::Heisenberg,
        overrides: &[("epsilon", "0.05"), ("trotter_steps", "2,3")],
    },
    Preset {
        name: "fig10",
        anchor: "Fig. 10",
        summary: "dispersive 2-transmon Heisenberg step, initial state (|↑⟩+2|↓⟩)/√5 ⊗ |↓⟩, master equation",
        kind: Kind::Dispersive,
        overrides: &[],
    },
    Preset {
        name: "qft_pair_creation",
        anchor: "Figs. 11-12, pair creation",
        summary: "fermion-antifermion pair creation from the vacuum, 4 line modes at cutoff 3",
        kind: Kind::QftPair,
        overrides: &[],
    },
];

pub fn presets() -> &'static [Preset] {
    PRESETS
}

pub fn find_preset(name: &str) -> CliResult<&'static Preset> {
    PRESETS
        .iter()
        .find(|p| p.name == name)
        .ok_or_else(|| config_err(format!("unknown preset '{name}' (see list-presets)")))
}

pub fn defaults(kind: Kind) -> Vec<(&'static str, Value)> {
    use Value::*;
    match kind {
        Kind::Qrm => vec![
            ("omega_q", Float(5.0)),
            ("omega_1", Float(5.0)),
            ("omega_eff", Float(0.01)),
            ("g", Float(0.02)),
            ("rabi_1", Float(1.0)),
            ("rabi_2", Float(0.0)),
            ("fock_cutoff", Int(24)),
            ("rel_tol", Float(1e-10)),
            ("t_final", Float(200.0)),
            ("n_samples", Int(401)),
        ],
        Kind::Dirac => vec![
            ("regime", Text("massive".into())),
            ("g", Float(0.01)),
            ("lambda", Float(0.0)),
            ("xi", Float(0.005)),
            ("spin", Text("plus".into())),
            ("alpha_re", Float(0.0)),
            ("alpha_im", Float(0.0)),
            ("fock_cutoff", Int(60)),
            ("t_final", Float(60.0)),
            ("n_samples", Int(121)),
            ("wigner_half_width", Float(6.0)),
            ("wigner_points", Int(121)),
        ],
        Kind::Heisenberg => vec![
            ("n_qubits", Int(3)),
            ("j", Float(0.006)),
            ("epsilon", Float(0.01)),
            ("trotter_steps", Ints(vec![3, 5])),
            ("theta_max", Float(FRAC_PI_4)),
            ("n_theta", Int(41)),
            ("boundary", Text("open".into())),
        ],
        Kind::Dispersive => vec![
            ("omega_1", Float(5.0)),
            ("anharmonicity", Float(-0.1)),
            ("omega_r", Float(7.5)),
            ("g0", Float(0.2)),
            ("n_levels", Int(3)),
            ("fock_cutoff", Int(5)),
            ("kappa", Float(1e-5)),
            ("gamma_phi", Float(2e-5)),
            ("gamma_minus", Float(2e-5)),
            ("theta_max", Float(FRAC_PI_4)),
            ("n_theta", Int(9)),
            ("rel_tol", Float(1e-8)),
            ("open_system", Bool(true)),
        ],
        Kind::QftPair => vec![
            ("p0_f", Float(0.5)),
            ("p0_fbar", Float(-0.5)),
            ("sigma", Float(0.5)),
            ("mass", Float(1.0)),
            ("k_min", Float(-2.0)),
            ("k_max", Float(2.0)),
            ("n_k", Int(4)),
            ("coupling", Float(0.2)),
            ("fock_cutoff", Int(3)),
            ("x_min", Float(-12.0)),
            ("x_max", Float(12.0)),
            ("n_x", Int(97)),
            ("t_final", Float(4.0)),
            ("n_samples", Int(41)),
            ("rel_tol", Float(1e-8)),
        ],
    }
}

impl Preset {
    /// Kind defaults with this preset's overrides applied.
    pub fn params(&self) -> ParamSet {
        let mut p = ParamSet::new(&defaults(self.kind));
        for (k, v) in self.overrides {
            p.set(k, v).expect("preset overrides match their kind");
        }
        p
    }
}

/// Plain-text table of every preset.
pub fn list_presets() -> String {
    let mut out = format!("{:<18} {:<26} {}\n", "preset", "anchor", "summary");
    for p in PRESETS {
        out.push_str(&format!("{:<18} {:<26} {}\n", p.name, p.anchor, p.summary));
    }
    out
}
