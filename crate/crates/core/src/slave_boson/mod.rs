//! Slave-boson (Gutzwiller) mean-field theory restricted to lower polaritons.
//!
//! Around a Mott lobe with filling `n` each site is described by the three
//! lower-polariton states with `n − 1`, `n` and `n + 1` polaritons, mixed by
//! the variational angles `(θ, χ)`:
//!
//! ```text
//! |ψ⟩ = cosθ |n⟩ + sinθ (sinχ |n−1⟩ + cosχ |n+1⟩)
//! ```
//!
//! The vacuum lobe `n = 0` keeps only `|0⟩` and `|1⟩` (`χ = 0`).

mod bogoliubov;
mod boundary;
mod finite_t;
mod fluct;
mod gutzwiller;
mod lobe;
mod sound;

pub use bogoliubov::{bogoliubov_spectrum, heff_block, lattice_dispersion, mott_spectrum, BogoliubovBlock, ModePair};
pub use boundary::{boundary_discriminant, critical_hopping, lobe_tip, mott_boundary, LobeTip};
pub use finite_t::{
    critical_temperature, finite_t_boundary, local_susceptibility, FiniteTBoundary, Susceptibility, ThermalTransition,
};
pub use fluct::{fluctuation_energy, FluctuationEnergy, KGrid};
pub use gutzwiller::{
    minimize_gutzwiller, minimize_gutzwiller_with, mott_stability, order_parameter, variational_energy,
    MeanFieldSolution,
};
pub use lobe::LobeContext;
pub use sound::{amplitude_gap, sound_velocity, sound_velocity_with, SoundVelocity};
