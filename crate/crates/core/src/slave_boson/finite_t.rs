//! Finite-temperature decoupling mean-field boundary.
//!
//! The superfluid instability of the full two-branch on-site ensemble is
//! `1 = zJ χ_loc(T, μ)`, with `χ_loc` the static photon susceptibility of a
//! single cavity truncated at `n_max` polaritons.

use serde::{Deserialize, Serialize};

use crate::jc_onsite::{hopping_element, jc_energy};
use crate::numeric::bisect;
use crate::{Branch, Error, ModelParams, Result, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Susceptibility {
    pub chi: f64,
    /// Thermal weight of the states at the polariton truncation.
    pub truncation_weight: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiniteTBoundary {
    /// Critical hopping `J_c(T, μ)`; infinite when `χ_loc` vanishes.
    pub hopping: f64,
    pub truncation_weight: f64,
    /// Truncation weight above `cfg.truncation_tol`.
    pub truncated: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThermalTransition {
    /// Critical temperature; zero when the point is not superfluid at `T = 0`.
    pub temperature: f64,
    /// The bracket ended at `cfg.t_max` without closing the superfluid.
    pub capped: bool,
    pub truncation_weight: f64,
}

/// Static single-site susceptibility `χ_loc`.
pub fn local_susceptibility(p: &ModelParams, temperature: f64, n_max: u32) -> Result<Susceptibility> {
    p.validate()?;
    if !temperature.is_finite() || temperature < 0.0 {
        return Err(Error::InvalidParams(format!("temperature {temperature} must be ≥ 0")));
    }
    if n_max < 1 {
        return Err(Error::InvalidParams("n_max must be at least 1".into()));
    }
    // Level index: 0 for |0⟩, then (n, −), (n, +) for n = 1..=n_max.
    let idx = |n: u32, b: Branch| -> usize {
        if n == 0 {
            0
        } else {
            2 * n as usize - 1 + (b == Branch::Upper) as usize
        }
    };
    let mut energy = vec![0.0; 2 * n_max as usize + 1];
    for n in 1..=n_max {
        for b in Branch::ALL {
            energy[idx(n, b)] = jc_energy(n, b, p)?;
        }
    }
    let e_min = energy.iter().copied().fold(f64::INFINITY, f64::min);
    let degenerate = 1e-12 * e_min.abs().max(p.g);
    let mut weight: Vec<f64> = if temperature == 0.0 {
        energy
            .iter()
            .map(|&e| ((e - e_min) <= degenerate) as u8 as f64)
            .collect()
    } else {
        energy.iter().map(|&e| (-(e - e_min) / temperature).exp()).collect()
    };
    let z: f64 = weight.iter().sum();
    weight.iter_mut().for_each(|w| *w /= z);

    let mut chi = 0.0;
    for n in 1..=n_max {
        for sigma in Branch::ALL {
            for nu in Branch::ALL {
                if n == 1 && nu == Branch::Upper {
                    continue;
                }
                let a2 = hopping_element(n, sigma, nu, p)?.powi(2);
                let (lo, hi) = (idx(n - 1, nu), idx(n, sigma));
                let de = energy[hi] - energy[lo];
                chi += if de.abs() <= degenerate {
                    if weight[lo] == 0.0 {
                        0.0
                    } else if temperature == 0.0 {
                        f64::INFINITY
                    } else {
                        a2 * weight[lo] / temperature
                    }
                } else {
                    a2 * (weight[lo] - weight[hi]) / de
                };
            }
        }
    }
    let truncation_weight = weight[idx(n_max, Branch::Lower)] + weight[idx(n_max, Branch::Upper)];
    Ok(Susceptibility { chi, truncation_weight })
}

/// Critical hopping `J_c = 1/(zχ_loc)` at fixed `μ`, `δ` and `T`.
///
/// `χ_loc` does not depend on `J`, so no root search is needed; the hopping
/// stored in `p` is ignored.
pub fn finite_t_boundary(p: &ModelParams, temperature: f64, cfg: &SolverConfig) -> Result<FiniteTBoundary> {
    let s = local_susceptibility(p, temperature, cfg.n_max)?;
    Ok(FiniteTBoundary {
        hopping: 1.0 / (p.coordination() * s.chi),
        truncation_weight: s.truncation_weight,
        truncated: s.truncation_weight > cfg.truncation_tol,
    })
}

/// Temperature at which `zJχ_loc(T) = 1` for all couplings fixed.
pub fn critical_temperature(p: &ModelParams, cfg: &SolverConfig) -> Result<ThermalTransition> {
    let jz = p.hopping * p.coordination();
    let f = |t: f64| -> f64 {
        match local_susceptibility(p, t, cfg.n_max) {
            Ok(s) => jz * s.chi - 1.0,
            Err(_) => f64::NAN,
        }
    };
    let t_max = cfg.t_max * p.g;
    let f0 = f(0.0);
    if f0.is_nan() {
        local_susceptibility(p, 0.0, cfg.n_max)?;
    }
    if f0 <= 0.0 {
        return Ok(ThermalTransition {
            temperature: 0.0,
            capped: false,
            truncation_weight: local_susceptibility(p, 0.0, cfg.n_max)?.truncation_weight,
        });
    }
    if f(t_max) > 0.0 {
        return Ok(ThermalTransition {
            temperature: t_max,
            capped: true,
            truncation_weight: local_susceptibility(p, t_max, cfg.n_max)?.truncation_weight,
        });
    }
    let tc = bisect(f, 0.0, t_max, cfg.tc_rel_tol, "critical temperature")?;
    Ok(ThermalTransition {
        temperature: tc,
        capped: false,
        truncation_weight: local_susceptibility(p, tc, cfg.n_max)?.truncation_weight,
    })
}
