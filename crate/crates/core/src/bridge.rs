//! Comparison of the slave-boson theory in the band-bottom frame with the
//! Dicke-model mean-field theory at large hopping.

use serde::{Deserialize, Serialize};

use crate::dicke::{self, DickeParams};
use crate::numeric::{bisect, neville};
use crate::slave_boson::{
    amplitude_gap, critical_hopping, critical_temperature, lobe_tip, minimize_gutzwiller, mott_boundary, mott_spectrum,
    sound_velocity_with, LobeContext, MeanFieldSolution,
};
use crate::{par, Branch, Error, Execution, ModelParams, Result, SolverConfig};

/// Hoppings (in units of `g`) used for the large-bandwidth extrapolation.
pub const LIMIT_HOPPINGS: [f64; 4] = [10.0, 30.0, 100.0, 300.0];

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LimitComparison {
    pub j_values: Vec<f64>,
    pub sb_values: Vec<f64>,
    pub dicke_value: f64,
    /// Polynomial extrapolation in `1/J` of the three largest hoppings.
    pub extrapolated: f64,
    pub abs_error: f64,
}

impl LimitComparison {
    fn new(j_values: Vec<f64>, sb_values: Vec<f64>, dicke_value: f64) -> Result<Self> {
        let n = j_values.len();
        if n == 0 || j_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParams("hoppings must be strictly increasing".into()));
        }
        let from = n.saturating_sub(3);
        let h: Vec<f64> = j_values[from..].iter().map(|j| 1.0 / j).collect();
        let extrapolated = neville(&h, &sb_values[from..], 0.0);
        Ok(Self {
            abs_error: (extrapolated - dicke_value).abs(),
            j_values,
            sb_values,
            dicke_value,
            extrapolated,
        })
    }

    /// `|SB(J) − Dicke|` for every sampled hopping.
    pub fn errors(&self) -> Vec<f64> {
        self.sb_values.iter().map(|v| (v - self.dicke_value).abs()).collect()
    }

    pub fn errors_decrease(&self) -> bool {
        self.errors().windows(2).all(|w| w[1] < w[0])
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TipMatch {
    pub delta_d: LimitComparison,
    pub mu_d: LimitComparison,
}

/// Slave-boson parameters in the band-bottom frame (`ω_c = 0`).
pub fn lattice_params(mu_d: f64, delta_d: f64, g: f64, dim: u8, hopping: f64) -> Result<ModelParams> {
    DickeParams {
        mu_d,
        delta_d,
        g,
        hopping,
        temperature: 0.0,
    }
    .to_jchm(dim)
}

/// Tip `(δ_D, μ_D)` of the slave-boson `n = 1` lobe at fixed hopping.
pub fn sb_tip(g: f64, dim: u8, hopping: f64, cfg: &SolverConfig) -> Result<(f64, f64)> {
    let jz = 2.0 * dim as f64 * hopping;
    let lobe_at = |delta_d: f64| -> Result<(LobeContext, ModelParams)> {
        let p = lattice_params(0.0, delta_d, g, dim, hopping)?;
        Ok((LobeContext::new(1, &p), p))
    };
    let f = |delta_d: f64| match lobe_at(delta_d) {
        Ok((l, _)) => jz * (l.f[0] + l.f[1]).powi(2) - l.hubbard_u,
        Err(_) => f64::NAN,
    };
    let delta_d = bisect(f, -10.0 * g, -0.1 * g, cfg.root_rel_tol, "slave-boson tip detuning")?;
    let (l, p) = lobe_at(delta_d)?;
    let tip = lobe_tip(&l, &p)?;
    let mu_d = tip.mu - p.omega_c + jz;
    Ok((delta_d, mu_d))
}

/// Slave-boson tip at each hopping of `j_values`, extrapolated to `J → ∞`
/// and compared with `(δ_D, μ_D) = (−2g, −g)`.
pub fn lobe_tip_match(g: f64, dim: u8, j_values: &[f64], cfg: &SolverConfig, exec: Execution) -> Result<TipMatch> {
    let tips = par::map(exec, j_values, |&j| sb_tip(g, dim, j, cfg));
    let tips: Vec<(f64, f64)> = tips.into_iter().collect::<Result<_>>()?;
    Ok(TipMatch {
        delta_d: LimitComparison::new(j_values.to_vec(), tips.iter().map(|t| t.0).collect(), -2.0 * g)?,
        mu_d: LimitComparison::new(j_values.to_vec(), tips.iter().map(|t| t.1).collect(), -g)?,
    })
}

/// Detuning `δ_D` of the slave-boson `n = 1` boundary at fixed `μ_D`.
///
/// The root is searched within `g` of the Dicke boundary `μ_D + g²/μ_D`.
pub fn sb_boundary_delta_d(mu_d: f64, g: f64, dim: u8, hopping: f64, cfg: &SolverConfig) -> Result<f64> {
    let jz = 2.0 * dim as f64 * hopping;
    let f = |delta_d: f64| -> f64 {
        let Ok(p) = lattice_params(mu_d, delta_d, g, dim, hopping) else {
            return f64::NAN;
        };
        let l = LobeContext::new(1, &p);
        let (pg, hg) = (l.particle_gap(), l.hole_gap());
        let [f0, f1] = l.f;
        pg * hg - jz * (pg * f0 * f0 + hg * f1 * f1)
    };
    let guess = mu_d + g * g / mu_d;
    bisect(
        f,
        guess - g,
        guess + g,
        cfg.root_rel_tol,
        "slave-boson boundary detuning",
    )
}

/// Sup-norm distance between the slave-boson and Dicke `n = 1` boundaries,
/// parametrized as `δ_D(μ_D)`.
pub fn boundary_sup_error(
    g: f64,
    dim: u8,
    hopping: f64,
    mu_grid: &[f64],
    cfg: &SolverConfig,
    exec: Execution,
) -> Result<f64> {
    let errs = par::map(exec, mu_grid, |&mu| {
        sb_boundary_delta_d(mu, g, dim, hopping, cfg).map(|d| (d - (mu + g * g / mu)).abs())
    });
    errs.into_iter().try_fold(0.0, |acc: f64, e| Ok(acc.max(e?)))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SoundVelocityMatch {
    pub hopping: f64,
    /// Slave-boson velocity at its own lobe tip.
    pub sb: f64,
    /// `√(Jg − g²/(2D))`.
    pub formula: f64,
    /// `√(Jg)`.
    pub dicke: f64,
}

impl SoundVelocityMatch {
    pub fn rel_error_formula(&self) -> f64 {
        (self.sb / self.formula - 1.0).abs()
    }

    pub fn rel_error_dicke(&self) -> f64 {
        (self.sb / self.dicke - 1.0).abs()
    }
}

/// Mott-state solution at the slave-boson tip for hopping `J`.
pub fn sb_tip_solution(g: f64, dim: u8, hopping: f64, cfg: &SolverConfig) -> Result<MeanFieldSolution> {
    let (delta_d, mu_d) = sb_tip(g, dim, hopping, cfg)?;
    let p = lattice_params(mu_d, delta_d, g, dim, hopping)?;
    minimize_gutzwiller(&LobeContext::new(1, &p), &p)
}

pub fn sound_velocity_match(g: f64, dim: u8, hopping: f64, cfg: &SolverConfig) -> Result<SoundVelocityMatch> {
    let sol = sb_tip_solution(g, dim, hopping, cfg)?;
    let v = sound_velocity_with(&sol, cfg)?;
    Ok(SoundVelocityMatch {
        hopping,
        sb: v.velocity,
        formula: (hopping * g - g * g / (2.0 * dim as f64)).sqrt(),
        dicke: (hopping * g).sqrt(),
    })
}

/// Amplitude gap on the particle boundary of the slave-boson lobe at fixed
/// `δ_D`, against `√(δ_D² − 4g²)`.
pub fn amplitude_gap_match(
    delta_d: f64,
    g: f64,
    dim: u8,
    j_values: &[f64],
    exec: Execution,
) -> Result<LimitComparison> {
    let dicke_value = (delta_d * delta_d - 4.0 * g * g).sqrt();
    let gaps = par::map(exec, j_values, |&j| -> Result<f64> {
        let p = lattice_params(0.0, delta_d, g, dim, j)?;
        let l = LobeContext::new(1, &p);
        let mu = mott_boundary(&l, &p, Branch::Upper)?;
        let q = p.with_mu(mu);
        let m = mott_spectrum(&vec![0.0; dim as usize], &LobeContext::new(1, &q), &q)?;
        Ok(m.minus.abs().max(m.plus.abs()))
    });
    let gaps: Vec<f64> = gaps.into_iter().collect::<Result<_>>()?;
    LimitComparison::new(j_values.to_vec(), gaps, dicke_value)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TcTable {
    pub delta_d: f64,
    pub mu_d: Vec<f64>,
    pub dicke: Vec<f64>,
    pub j_values: Vec<f64>,
    /// `jchm[j][i]`: decoupling-theory `T_c` at `j_values[j]`, `mu_d[i]`.
    pub jchm: Vec<Vec<f64>>,
    /// Sup-norm distance to the Dicke curve for each hopping.
    pub sup_errors: Vec<f64>,
    /// Any point whose on-site truncation weight exceeded the tolerance.
    pub truncated: bool,
}

/// Critical temperature curves `T_c(μ_D)` of both theories.
pub fn tc_comparison(
    delta_d: f64,
    g: f64,
    dim: u8,
    j_values: &[f64],
    mu_grid: &[f64],
    cfg: &SolverConfig,
    exec: Execution,
) -> Result<TcTable> {
    let dicke: Vec<f64> = mu_grid
        .iter()
        .map(|&mu| {
            let d = DickeParams::new(mu, delta_d, g, 1.0, 0.0)?;
            Ok(dicke::tc_solve(&d, cfg)?.tc)
        })
        .collect::<Result<_>>()?;
    let cells: Vec<(usize, usize)> = (0..j_values.len())
        .flat_map(|j| (0..mu_grid.len()).map(move |i| (j, i)))
        .collect();
    let vals = par::map(exec, &cells, |&(j, i)| {
        let p = lattice_params(mu_grid[i], delta_d, g, dim, j_values[j])?;
        critical_temperature(&p, cfg)
    });
    let mut jchm = vec![vec![0.0; mu_grid.len()]; j_values.len()];
    let mut truncated = false;
    for (&(j, i), v) in cells.iter().zip(vals) {
        let v = v?;
        truncated |= v.truncation_weight > cfg.truncation_tol;
        jchm[j][i] = v.temperature;
    }
    let sup_errors = jchm
        .iter()
        .map(|row| row.iter().zip(&dicke).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max))
        .collect();
    Ok(TcTable {
        delta_d,
        mu_d: mu_grid.to_vec(),
        dicke,
        j_values: j_values.to_vec(),
        jchm,
        sup_errors,
        truncated,
    })
}

/// Zero-temperature boundary hopping at fixed `μ` compared with the
/// slave-boson value, as `(decoupling, slave_boson)`.
pub fn zero_temperature_boundaries(p: &ModelParams, cfg: &SolverConfig) -> Result<(f64, f64)> {
    let dec = crate::slave_boson::finite_t_boundary(p, 0.0, cfg)?.hopping;
    let sb = critical_hopping(&LobeContext::new(1, p), p)?;
    Ok((dec, sb))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Transition {
    /// Gapless amplitude mode and linear Goldstone mode: `z = 1`.
    Z1Tip,
    /// Gapped amplitude mode and vanishing sound velocity: `z = 2`.
    Z2Generic,
}

/// Dynamical critical exponent from the amplitude gap and sound velocity
/// at a boundary point.
pub fn classify_transition(gap: f64, velocity: f64, hopping: f64, g: f64, cfg: &SolverConfig) -> Result<Transition> {
    let gapless = gap < cfg.gap_tol * g;
    let linear = velocity > cfg.velocity_tol * (hopping * g).sqrt();
    match (gapless, linear) {
        (true, true) => Ok(Transition::Z1Tip),
        (false, false) => Ok(Transition::Z2Generic),
        (true, false) => Err(Error::Ambiguous { gap, velocity }),
        (false, true) => Err(Error::Inconsistent { gap, velocity }),
    }
}

/// Classifies a slave-boson solution on a lobe boundary.
pub fn classify_sb_point(sol: &MeanFieldSolution, cfg: &SolverConfig) -> Result<Transition> {
    let gap = amplitude_gap(sol)?;
    let v = sound_velocity_with(sol, cfg)?.velocity;
    classify_transition(gap, v, sol.params.hopping, sol.params.g, cfg)
}

/// Classifies a Dicke-model point on its `T = 0` boundary.
pub fn classify_dicke_point(d: &DickeParams, cfg: &SolverConfig) -> Result<Transition> {
    let sol = dicke::condensate_t0(d)?;
    let gap = dicke::amplitude_gap(d, &sol)?;
    let v = dicke::sound_velocity(d, &sol, cfg)?.velocity;
    classify_transition(gap, v, d.hopping, d.g, cfg)
}
