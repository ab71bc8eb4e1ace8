//! Mean-field theory of the Jaynes-Cummings-Hubbard model (JCHM) and of the
//! generalized multi-mode Dicke model.
//!
//! The crate is organised bottom-up:
//!
//! * [`jc_onsite`]: exact single-cavity Jaynes-Cummings eigensystem.
//! * [`slave_boson`]: Gutzwiller / slave-boson theory restricted to lower
//!   polaritons: ground state, Mott lobes, Bogoliubov spectra, fluctuation
//!   energy, and the finite-temperature decoupling boundary.
//! * [`dicke`]: weak-coupling mean-field theory of the Dicke model with
//!   quadratic photon dispersion.
//! * [`bridge`]: quantitative comparison of the two theories in the
//!   large-bandwidth limit.
//! * [`ed`]: dense exact diagonalization of small JCHM clusters, used as an
//!   independent oracle.
//!
//! All energies are expressed in the same unit as the light-matter coupling
//! `g`; the command-line front end normalizes its inputs so that `g = 1`.

pub mod bridge;
pub mod config;
pub mod dicke;
pub mod ed;
mod error;
pub mod jc_onsite;
pub mod numeric;
pub mod par;
pub mod slave_boson;

/// Library version, recorded in output metadata.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub use config::SolverConfig;
pub use error::{Error, Result};
pub use jc_onsite::{Branch, ModelParams, PolaritonLevel};
pub use par::Execution;
