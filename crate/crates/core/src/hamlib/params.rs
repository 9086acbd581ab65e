use crate::error::{Error, Result};

/// Transmon circuit parameters, energies in GHz (E/h).
#[derive(Clone, Debug, PartialEq)]
pub struct TransmonParams {
    pub e_c: f64,
    pub e_j_max: f64,
    pub n_g: f64,
    /// External flux in units of the flux quantum.
    pub flux: f64,
    pub n_levels: usize,
    /// Relative anharmonicity, `omega_2 = (2 + alpha_r) omega_1`.
    pub anharmonicity: f64,
}

impl Default for TransmonParams {
    fn default() -> Self {
        Self { e_c: 0.25, e_j_max: 12.5, n_g: 0.0, flux: 0.0, n_levels: 3, anharmonicity: -0.1 }
    }
}

impl TransmonParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.e_c > 0.0) || !(self.e_j_max > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "transmon energies must be positive (E_C = {}, E_J = {})",
                self.e_c, self.e_j_max
            )));
        }
        if self.n_levels < 2 {
            return Err(Error::InvalidArgument(format!("n_levels = {} < 2", self.n_levels)));
        }
        Ok(())
    }
}

/// Single qubit coupled to one cavity mode. Frequencies in GHz.
#[derive(Clone, Debug, PartialEq)]
pub struct CavityQubitParams {
    pub omega_q: f64,
    pub omega_r: f64,
    pub g: f64,
    pub n_fock: usize,
}

impl CavityQubitParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.omega_q > 0.0 && self.omega_r > 0.0) || !(self.g >= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "frequencies must be positive and g >= 0 (omega_q = {}, omega_r = {}, g = {})",
                self.omega_q, self.omega_r, self.g
            )));
        }
        if self.n_fock < 2 {
            return Err(Error::InvalidArgument(format!("n_fock = {} < 2", self.n_fock)));
        }
        Ok(())
    }
}

/// Classical drive amplitudes, frequencies and phase (GHz, rad).
///
/// The two-tone scheme uses `rabi_1`/`omega_1` and `rabi_2`/`omega_2`.
/// The three-drive scheme uses `rabi` at `omega`, `lambda` at `nu`, the
/// cavity drive `xi` at `omega`, and the common phase `phi`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct DriveParams {
    pub rabi_1: f64,
    pub rabi_2: f64,
    pub rabi: f64,
    pub lambda: f64,
    pub xi: f64,
    pub omega_1: f64,
    pub omega_2: f64,
    pub nu: f64,
    pub omega: f64,
    pub phi: f64,
}

impl DriveParams {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [
            ("rabi_1", self.rabi_1),
            ("rabi_2", self.rabi_2),
            ("rabi", self.rabi),
            ("lambda", self.lambda),
            ("xi", self.xi),
        ] {
            if !(v >= 0.0) {
                return Err(Error::InvalidArgument(format!("drive amplitude {name} = {v} < 0")));
            }
        }
        Ok(())
    }
}
