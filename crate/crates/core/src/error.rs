use thiserror::Error;

use crate::jc_onsite::Branch;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("invalid polariton level (n = {n}, branch {branch})")]
    InvalidLevel { n: u32, branch: Branch },

    #[error("no Mott lobe at these parameters (discriminant {discriminant:e})")]
    NoLobe { discriminant: f64 },

    #[error("{what} did not converge after {iterations} iterations (residual {residual:e})")]
    NotConverged {
        what: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("dynamical instability: A = {a:e}, A^2 - B = {discriminant:e}")]
    DynamicalInstability { a: f64, discriminant: f64 },

    #[error("slope of the lower mode did not converge (estimate {estimate:e}, spread {spread:e})")]
    SlopeNotConverged { estimate: f64, spread: f64 },

    #[error("{what}: root not bracketed on [{lo}, {hi}]")]
    NoBracket { what: &'static str, lo: f64, hi: f64 },

    #[error("Hilbert space dimension {dim} exceeds the dense limit {cap}")]
    TooLarge { dim: usize, cap: usize },

    #[error("unstable Dicke parameters: mu_D = {0} must be negative")]
    DickeUnstable(f64),

    #[error("transition classification is ambiguous (gap {gap:e}, velocity {velocity:e})")]
    Ambiguous { gap: f64, velocity: f64 },

    #[error("gap {gap:e} and velocity {velocity:e} do not describe a critical point")]
    Inconsistent { gap: f64, velocity: f64 },
}
