use std::f64::consts::{PI, SQRT_2};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::linalg::{c, I};

/// Gaussian momentum envelope in natural units.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct WavepacketEnvelope {
    pub p0: f64,
    pub sigma: f64,
    pub mass: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParticleKind {
    Particle,
    Antiparticle,
}

impl WavepacketEnvelope {
    pub fn new(p0: f64, sigma: f64, mass: f64) -> Result<Self> {
        let env = Self { p0, sigma, mass };
        env.validate()?;
        Ok(env)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.sigma > 0.0 && self.sigma.is_finite()) {
            return Err(Error::InvalidArgument(format!("sigma = {} must be positive", self.sigma)));
        }
        if !(self.mass >= 0.0 && self.p0.is_finite()) {
            return Err(Error::InvalidArgument("mass must be >= 0 and p0 finite".into()));
        }
        Ok(())
    }

    /// `(2 pi sigma^2)^(-1/4) exp(-(p - p0)^2 / (4 sigma^2))`, so `|Omega|^2`
    /// is a unit normal density.
    pub fn amplitude(&self, p: f64) -> f64 {
        let z = (p - self.p0) / self.sigma;
        (2.0 * PI * self.sigma * self.sigma).powf(-0.25) * (-0.25 * z * z).exp()
    }

    pub fn omega(&self, p: f64) -> f64 {
        (p * p + self.mass * self.mass).sqrt()
    }
}

/// Trapezoid rule on `p0 +- half_width * sigma`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MomentumQuadrature {
    /// Half-width of the window in units of sigma.
    pub half_width: f64,
    pub n_points: usize,
}

impl Default for MomentumQuadrature {
    fn default() -> Self {
        Self { half_width: 8.0, n_points: 241 }
    }
}

impl MomentumQuadrature {
    /// Probability weight of `|Omega|^2` outside the window.
    pub fn tail_weight(&self) -> f64 {
        libm::erfc(self.half_width / SQRT_2)
    }

    /// Nodes and weights for `env`.
    pub fn nodes(&self, env: &WavepacketEnvelope) -> Result<Vec<(f64, f64)>> {
        env.validate()?;
        if self.n_points < 3 {
            return Err(Error::InvalidArgument("momentum quadrature needs >= 3 points".into()));
        }
        let tail = self.tail_weight();
        if !(tail <= 1e-8) {
            return Err(Error::GridCoverage(tail));
        }
        let lo = env.p0 - self.half_width * env.sigma;
        let h = 2.0 * self.half_width * env.sigma / (self.n_points - 1) as f64;
        Ok((0..self.n_points)
            .map(|i| {
                let w = if i == 0 || i == self.n_points - 1 { 0.5 * h } else { h };
                (lo + i as f64 * h, w)
            })
            .collect())
    }
}

/// Wavepacket coefficient
/// `(2 pi)^(-1/2) int dp Omega(p) e^{+-i(p x - omega_p t)} / sqrt(2 omega_p)`,
/// `+` for particles and `-` for antiparticles.
pub fn lambda_coefficient(
    env: &WavepacketEnvelope,
    quad: &MomentumQuadrature,
    x: f64,
    t: f64,
    kind: ParticleKind,
) -> Result<Complex64> {
    Ok(lambda_on_grid(env, quad, &[x], t, kind)?[0])
}

/// [`lambda_coefficient`] at several positions sharing one quadrature.
pub fn lambda_on_grid(
    env: &WavepacketEnvelope,
    quad: &MomentumQuadrature,
    xs: &[f64],
    t: f64,
    kind: ParticleKind,
) -> Result<Vec<Complex64>> {
    let nodes = quad.nodes(env)?;
    let sign = match kind {
        ParticleKind::Particle => 1.0,
        ParticleKind::Antiparticle => -1.0,
    };
    let prefactor = (2.0 * PI).sqrt().recip();
    let weighted: Vec<(f64, Complex64)> = nodes
        .iter()
        .map(|&(p, w)| {
            let om = env.omega(p);
            if om <= 0.0 {
                return Err(Error::InvalidArgument("massless mode at p = 0 has omega_p = 0".into()));
            }
            let amp = w * env.amplitude(p) / (2.0 * om).sqrt();
            Ok((p, c(amp, 0.0) * (-I * sign * om * t).exp()))
        })
        .collect::<Result<_>>()?;
    Ok(xs
        .iter()
        .map(|&x| {
            let s: Complex64 = weighted.iter().map(|&(p, a)| a * (I * sign * p * x).exp()).sum();
            s * prefactor
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> WavepacketEnvelope {
        WavepacketEnvelope::new(0.7, 0.4, 1.0).unwrap()
    }

    #[test]
    fn envelope_is_normalized() {
        let e = env();
        let nodes = MomentumQuadrature::default().nodes(&e).unwrap();
        let norm: f64 = nodes.iter().map(|&(p, w)| w * e.amplitude(p).powi(2)).sum();
        assert!((norm - 1.0).abs() < 1e-8);
    }

    #[test]
    fn symmetric_packet_gives_real_coefficient() {
        let e = WavepacketEnvelope::new(0.0, 0.5, 1.0).unwrap();
        let q = MomentumQuadrature::default();
        for kind in [ParticleKind::Particle, ParticleKind::Antiparticle] {
            let l = lambda_coefficient(&e, &q, 0.0, 0.0, kind).unwrap();
            assert!(l.im.abs() < 1e-14 && l.re > 0.0);
        }
    }

    #[test]
    fn time_shift_matches_phase_inside_quadrature() {
        let e = env();
        let q = MomentumQuadrature::default();
        let (x, t) = (1.3, 2.1);
        let direct = lambda_coefficient(&e, &q, x, t, ParticleKind::Particle).unwrap();
        // Independent sum: fold e^{-i omega_p t} into the envelope, evaluate at t = 0.
        let nodes = q.nodes(&e).unwrap();
        let folded: Complex64 = nodes
            .iter()
            .map(|&(p, w)| {
                let om = (p * p + 1.0).sqrt();
                let shifted = e.amplitude(p) * (-I * om * t).exp();
                shifted * w * (I * p * x).exp() / (2.0 * om).sqrt()
            })
            .sum::<Complex64>()
            / (2.0 * PI).sqrt();
        assert!((direct - folded).norm() < 1e-10);
        let anti = lambda_coefficient(&e, &q, x, t, ParticleKind::Antiparticle).unwrap();
        let mirrored = WavepacketEnvelope { p0: -e.p0, ..e };
        let back = lambda_coefficient(&mirrored, &q, x, -t, ParticleKind::Particle).unwrap();
        assert!((anti - back).norm() < 1e-12);
    }

    #[test]
    fn narrow_packet_limit_and_refinement() {
        let q = MomentumQuadrature::default();
        let fine = MomentumQuadrature { n_points: 10 * q.n_points, ..q };
        for sigma in [0.05, 0.02] {
            let e = WavepacketEnvelope::new(0.3, sigma, 1.0).unwrap();
            let l = lambda_coefficient(&e, &q, 0.0, 0.0, ParticleKind::Particle).unwrap();
            let lf = lambda_coefficient(&e, &fine, 0.0, 0.0, ParticleKind::Particle).unwrap();
            assert!((l - lf).norm() < 1e-6);
            // int Omega dp = 2 sqrt(pi) sigma (2 pi sigma^2)^(-1/4)
            let om = e.omega(e.p0);
            let limit = 2.0 * PI.sqrt() * sigma * (2.0 * PI * sigma * sigma).powf(-0.25)
                / (4.0 * PI * om).sqrt();
            assert!((l.norm() / limit - 1.0).abs() < 5.0 * sigma * sigma);
        }
    }

    #[test]
    fn coverage_guard() {
        let q = MomentumQuadrature { half_width: 4.0, n_points: 101 };
        assert!(matches!(
            lambda_coefficient(&env(), &q, 0.0, 0.0, ParticleKind::Particle),
            Err(Error::GridCoverage(_))
        ));
        assert!(WavepacketEnvelope::new(0.0, 0.0, 1.0).is_err());
    }
}
