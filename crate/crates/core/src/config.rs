use serde::{Deserialize, Serialize};

/// Numerical settings shared by every solver in the crate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    /// Points per axis of the coarse (θ, χ) grid.
    pub grid_points: usize,
    /// Gradient norm required after Newton refinement.
    pub newton_tol: f64,
    pub max_newton_iter: usize,
    /// Relative tolerance, on the on-site energy scale, below which the Mott
    /// state counts as stable and degenerate energies favour it.
    pub degeneracy_tol: f64,
    /// k points per dimension for Brillouin-zone sums.
    pub kgrid_points: usize,
    /// Relative tolerance of root bisection.
    pub root_rel_tol: f64,
    /// Relative tolerance of critical-temperature bisection.
    pub tc_rel_tol: f64,
    /// Upper end of the temperature bracket, in units of g.
    pub t_max: f64,
    /// Polariton truncation of the finite-temperature on-site ensemble.
    pub n_max: u32,
    /// Boltzmann weight at the truncation above which a result is flagged.
    pub truncation_tol: f64,
    /// Step sizes of the finite-difference slope, halving.
    pub fd_steps: [f64; 3],
    /// Relative spread allowed between the last two extrapolants of a slope.
    pub fd_rel_tol: f64,
    /// Gap tolerance of the transition classifier, in units of g.
    pub gap_tol: f64,
    /// Velocity tolerance of the transition classifier, in units of √(Jg).
    pub velocity_tol: f64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            grid_points: 201,
            newton_tol: 1e-10,
            max_newton_iter: 200,
            degeneracy_tol: 1e-12,
            kgrid_points: 64,
            root_rel_tol: 1e-12,
            tc_rel_tol: 1e-10,
            t_max: 100.0,
            n_max: 20,
            truncation_tol: 1e-10,
            fd_steps: [1e-2, 5e-3, 2.5e-3],
            fd_rel_tol: 1e-3,
            gap_tol: 1e-3,
            velocity_tol: 1e-3,
        }
    }
}
