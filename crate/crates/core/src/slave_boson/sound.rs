use serde::{Deserialize, Serialize};

use super::{bogoliubov_spectrum, mott_spectrum, MeanFieldSolution, ModePair};
use crate::numeric::richardson_halving;
use crate::{Error, Result, SolverConfig};

/// Slope of the lower mode at `k → 0` along the first lattice axis.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SoundVelocity {
    pub velocity: f64,
    /// Distance between the last two Richardson extrapolants.
    pub spread: f64,
}

/// Sorted positive mode energies; the exact Mott formula is used at `θ = 0`.
fn modes(kx: f64, sol: &MeanFieldSolution) -> Result<ModePair> {
    let mut k = vec![0.0; sol.params.dim as usize];
    k[0] = kx;
    if sol.is_superfluid() {
        return bogoliubov_spectrum(&k, sol);
    }
    let m = mott_spectrum(&k, &sol.lobe, &sol.params)?;
    let (a, b) = (m.minus.abs(), m.plus.abs());
    Ok(ModePair {
        minus: a.min(b),
        plus: a.max(b),
    })
}

pub fn sound_velocity(sol: &MeanFieldSolution) -> Result<SoundVelocity> {
    sound_velocity_with(sol, &SolverConfig::default())
}

/// Richardson-extrapolated `lim ε_−(k)/k` from the steps in `cfg.fd_steps`.
///
/// Fails with [`Error::SlopeNotConverged`] when the extrapolants disagree by
/// more than `cfg.fd_rel_tol` relative to the larger of the estimate and
/// `cfg.velocity_tol · √(Jg)`.
pub fn sound_velocity_with(sol: &MeanFieldSolution, cfg: &SolverConfig) -> Result<SoundVelocity> {
    let mut v = [0.0; 3];
    for (vi, &h) in v.iter_mut().zip(cfg.fd_steps.iter()) {
        *vi = modes(h, sol)?.minus / h;
    }
    let (velocity, spread) = richardson_halving(v);
    let p = &sol.params;
    let floor = cfg.velocity_tol * (p.hopping * p.g).sqrt();
    if spread.is_nan() || spread > cfg.fd_rel_tol * velocity.abs().max(floor) {
        return Err(Error::SlopeNotConverged {
            estimate: velocity,
            spread,
        });
    }
    Ok(SoundVelocity {
        velocity: velocity.max(0.0),
        spread,
    })
}

/// Gap `Δ_a = ε_+(0)` of the upper (amplitude) mode.
pub fn amplitude_gap(sol: &MeanFieldSolution) -> Result<f64> {
    Ok(modes(0.0, sol)?.plus)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::slave_boson::{lobe_tip, minimize_gutzwiller, mott_boundary, LobeContext};
    use crate::{Branch, ModelParams};

    fn at(mu: f64, hopping: f64) -> MeanFieldSolution {
        let p = ModelParams::with_detuning(0.0, mu, hopping, 2).unwrap();
        minimize_gutzwiller(&LobeContext::new(1, &p), &p).unwrap()
    }

    #[test]
    fn tip_is_linear_and_gapless() {
        let p = ModelParams::with_detuning(0.0, 0.0, 0.0, 2).unwrap();
        let tip = lobe_tip(&LobeContext::new(1, &p), &p).unwrap();
        let s = at(tip.mu, tip.hopping);
        assert!(amplitude_gap(&s).unwrap() < 1e-6);
        assert!(sound_velocity(&s).unwrap().velocity > 0.01);
    }

    #[test]
    fn generic_boundary_is_quadratic_and_gapped() {
        let p = ModelParams::with_detuning(0.0, 0.0, 0.02, 2).unwrap();
        let l = LobeContext::new(1, &p);
        let mu = mott_boundary(&l, &p, Branch::Upper).unwrap();
        let s = at(mu, 0.02);
        let v = sound_velocity(&s).unwrap();
        assert!(v.velocity < 1e-3 * 0.02f64.sqrt(), "{v:?}");
        assert!(amplitude_gap(&s).unwrap() > 0.1);
    }

    #[test]
    fn superfluid_has_finite_velocity() {
        let s = at(-0.6, 0.1);
        assert!(s.is_superfluid());
        assert!(sound_velocity(&s).unwrap().velocity > 0.0);
    }
}
