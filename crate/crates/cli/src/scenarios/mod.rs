//! One module per scenario kind; each turns resolved parameters into tables.

mod digital;
mod dirac;
mod dispersive;
mod qft;
mod qrm;

use crate::error::{config_err, CliResult};
use crate::output::Outcome;
use crate::params::ParamSet;
use crate::presets::Kind;

pub fn simulate_kind(kind: Kind, p: &ParamSet) -> CliResult<Outcome> {
    match kind {
        Kind::Qrm => qrm::run(p),
        Kind::Dirac => dirac::run(p),
        Kind::Heisenberg => digital::run(p),
        Kind::Dispersive => dispersive::run(p),
        Kind::QftPair => qft::run(p),
    }
}

/// `n` evenly spaced points on `[a, b]`, endpoints included.
pub(crate) fn linspace(a: f64, b: f64, n: usize) -> CliResult<Vec<f64>> {
    if n < 2 || !(b > a) {
        return Err(config_err(format!("need n >= 2 samples on a proper interval, got {n} on [{a}, {b}]")));
    }
    let h = (b - a) / (n - 1) as f64;
    Ok((0..n).map(|i| if i == n - 1 { b } else { a + i as f64 * h }).collect())
}

pub(crate) fn positive(p: &ParamSet, key: &str) -> CliResult<f64> {
    let v = p.f64(key)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(config_err(format!("{key} = {v} must be positive")))
    }
}
