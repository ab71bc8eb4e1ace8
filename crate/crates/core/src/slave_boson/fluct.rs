use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::bogoliubov::energy_shift;
use super::{heff_block, MeanFieldSolution};
use crate::{par, Execution, Result};

/// Uniform grid `k_j = −π + 2πj/N` per axis over the Brillouin zone.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KGrid {
    pub points_per_dim: usize,
}

impl KGrid {
    pub fn new(points_per_dim: usize) -> Self {
        Self { points_per_dim }
    }

    pub fn len(&self, dim: u8) -> usize {
        self.points_per_dim.pow(dim as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.points_per_dim == 0
    }

    /// Wave vector with flat index `i`, first component slowest.
    pub fn point(&self, i: usize, dim: u8) -> Vec<f64> {
        let n = self.points_per_dim;
        let step = 2.0 * PI / n as f64;
        let mut k = vec![0.0; dim as usize];
        let mut rest = i;
        for c in (0..dim as usize).rev() {
            k[c] = -PI + step * (rest % n) as f64;
            rest /= n;
        }
        k
    }
}

/// Per-site ground-state energy correction from quadratic fluctuations.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FluctuationEnergy {
    /// Constant `ℰ(θ, χ)`.
    pub shift: f64,
    /// Brillouin-zone average of `(ε_− + ε_+)/2`.
    pub zero_point: f64,
    pub total: f64,
}

pub fn fluctuation_energy(sol: &MeanFieldSolution, grid: &KGrid, exec: Execution) -> Result<FluctuationEnergy> {
    let dim = sol.params.dim;
    let n = grid.len(dim);
    if n == 0 {
        return Err(crate::Error::InvalidParams("empty k-grid".into()));
    }
    let sum = par::try_sum_range(exec, n, |i| {
        let m = heff_block(&grid.point(i, dim), sol)?.closed_form_modes()?;
        Ok(0.5 * (m.minus + m.plus))
    })?;
    let shift = energy_shift(sol);
    let zero_point = sum / n as f64;
    Ok(FluctuationEnergy {
        shift,
        zero_point,
        total: shift + zero_point,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slave_boson::{minimize_gutzwiller, LobeContext};
    use crate::ModelParams;

    #[test]
    fn grid_points() {
        let g = KGrid::new(4);
        assert_eq!(g.len(2), 16);
        assert_eq!(g.point(0, 2), vec![-PI, -PI]);
        assert_eq!(g.point(1, 2), vec![-PI, -PI / 2.0]);
        assert_eq!(g.point(10, 2)[0], 0.0);
    }

    #[test]
    fn zero_hopping_limit() {
        let p = ModelParams::with_detuning(0.0, -0.7, 0.0, 2).unwrap();
        let s = minimize_gutzwiller(&LobeContext::new(1, &p), &p).unwrap();
        let e = fluctuation_energy(&s, &KGrid::new(8), Execution::Sequential).unwrap();
        let l = s.lobe;
        assert!((e.zero_point - 0.5 * (l.particle_gap() + l.hole_gap())).abs() < 1e-14);
        assert!(e.total.abs() < 1e-14);
    }

    #[test]
    fn second_order_in_hopping_deep_in_mott() {
        let j = 1e-3;
        let p = ModelParams::with_detuning(0.0, -0.7, j, 2).unwrap();
        let s = minimize_gutzwiller(&LobeContext::new(1, &p), &p).unwrap();
        let e = fluctuation_energy(&s, &KGrid::new(16), Execution::Parallel).unwrap();
        let l = s.lobe;
        let [f0, f1] = l.f;
        let want = -4.0 * j * j * (f0 * f1).powi(2) / l.hubbard_u;
        assert!((e.total - want).abs() < 1e-2 * want.abs(), "{} {}", e.total, want);
    }
}
