use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("space mismatch: expected {expected:?}, got {found:?}")]
    SpaceMismatch { expected: Vec<usize>, found: Vec<usize> },

    #[error("index out of range: {0}")]
    OutOfRange(String),

    #[error("operator is not Hermitian (max deviation {0:.3e})")]
    NotHermitian(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("flux sweet-spot degeneracy: |cos(pi * flux)| = {0:.3e} < 1e-3")]
    FluxDegeneracy(f64),

    #[error("resonance: {0}")]
    Resonance(String),

    #[error("dense size guard: total dimension {0} exceeds {1}")]
    SizeGuard(usize, usize),

    #[error("step size underflow at t = {t} (h = {h:.3e})")]
    StepUnderflow { t: f64, h: f64 },

    #[error("density matrix lost positivity at t = {t}: min eigenvalue {min_eig:.3e}")]
    NegativeDensity { t: f64, min_eig: f64 },

    #[error("quadrature grid does not cover the wavepacket (tail weight {0:.3e})")]
    GridCoverage(f64),

    #[error("Fock cutoff insufficient: {0}")]
    CutoffInsufficient(String),
}

pub type Result<T> = std::result::Result<T, Error>;
