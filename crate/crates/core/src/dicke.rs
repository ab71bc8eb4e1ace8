//! Weak-coupling mean-field theory of the generalized Dicke model with a
//! quadratic photon band `ω̃_k = Jk² − μ_D`.
//!
//! Energies are measured from the bottom of the photon band: the
//! chemical potential `μ_D` and the detuning `δ_D` follow from the lattice
//! model by `μ_D = μ + 2DJ − ω_c` and `δ_D = δ + 2DJ`.

use serde::{Deserialize, Serialize};

use crate::numeric::{bisect, richardson_halving};
use crate::slave_boson::{ModePair, SoundVelocity};
use crate::{Error, ModelParams, Result, SolverConfig};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DickeParams {
    pub mu_d: f64,
    pub delta_d: f64,
    pub g: f64,
    /// Band curvature `J` (inverse of twice the photon mass).
    pub hopping: f64,
    pub temperature: f64,
}

impl DickeParams {
    pub fn new(mu_d: f64, delta_d: f64, g: f64, hopping: f64, temperature: f64) -> Result<Self> {
        let d = Self {
            mu_d,
            delta_d,
            g,
            hopping,
            temperature,
        };
        d.validate()?;
        Ok(d)
    }

    /// Band-bottom frame of a lattice model at temperature zero.
    pub fn from_jchm(p: &ModelParams) -> Self {
        let shift = p.coordination() * p.hopping;
        Self {
            mu_d: p.mu - p.omega_c + shift,
            delta_d: p.detuning() + shift,
            g: p.g,
            hopping: p.hopping,
            temperature: 0.0,
        }
    }

    /// Lattice model with `ω_c = 0` in `dim` dimensions mapping onto `self`.
    pub fn to_jchm(&self, dim: u8) -> Result<ModelParams> {
        let shift = 2.0 * dim as f64 * self.hopping;
        ModelParams::new(0.0, self.delta_d - shift, self.g, self.hopping, self.mu_d - shift, dim)
    }

    pub fn with_temperature(mut self, temperature: f64) -> Self {
        self.temperature = temperature;
        self
    }

    pub fn with_mu_d(mut self, mu_d: f64) -> Self {
        self.mu_d = mu_d;
        self
    }

    /// Thermodynamic stability requires `μ_D < 0`.
    pub fn is_stable(&self) -> bool {
        self.mu_d < 0.0
    }

    pub fn validate(&self) -> Result<()> {
        let v = [self.mu_d, self.delta_d, self.g, self.hopping, self.temperature];
        if v.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParams("non-finite Dicke parameter".into()));
        }
        if self.g <= 0.0 || self.hopping < 0.0 || self.temperature < 0.0 {
            return Err(Error::InvalidParams("need g > 0, J ≥ 0 and T ≥ 0".into()));
        }
        if !self.is_stable() {
            return Err(Error::DickeUnstable(self.mu_d));
        }
        Ok(())
    }

    /// `ω̃_x = δ_D − μ_D`.
    pub fn omega_x(&self) -> f64 {
        self.delta_d - self.mu_d
    }

    /// `ω̃_0 = −μ_D`.
    pub fn omega_0(&self) -> f64 {
        -self.mu_d
    }

    /// `ω̃_k = Jk² − μ_D`.
    pub fn omega_k(&self, k: f64) -> f64 {
        self.hopping * k * k - self.mu_d
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DickePhase {
    Normal,
    Superradiant,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct DickeSolution {
    /// Condensate density `|ψ_0|²`.
    pub psi0_sq: f64,
    /// Dressed two-level splitting `E = √(ω̃_x² + 4g²|ψ_0|²)`.
    pub energy: f64,
    pub phase: DickePhase,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CriticalTemperature {
    pub tc: f64,
    /// Still superradiant at `cfg.t_max`; `tc` is the cap.
    pub capped: bool,
}

/// `−μ_D · x / tanh(x / 2T)` with `x = δ_D − μ_D`, continued to `x = 0` and
/// to `T = 0`.
fn criterion_rhs(d: &DickeParams) -> f64 {
    let x = d.omega_x();
    let t = d.temperature;
    let w0 = d.omega_0();
    if t == 0.0 {
        return w0 * x.abs();
    }
    let y = x / (2.0 * t);
    if y == 0.0 {
        return w0 * 2.0 * t;
    }
    w0 * x / y.tanh()
}

/// `g² − (−μ_D x / tanh(x/2T))`; positive inside the superradiant phase.
pub fn criterion_residual(d: &DickeParams) -> Result<f64> {
    d.validate()?;
    Ok(d.g * d.g - criterion_rhs(d))
}

/// Whether the normal state is unstable towards superradiance.
pub fn superradiance_criterion(d: &DickeParams) -> Result<bool> {
    Ok(criterion_residual(d)? > 0.0)
}

/// Zero-temperature condensate `|ψ_0|² = ¼(g²/ω̃_0² − ω̃_x²/g²)`.
pub fn condensate_t0(d: &DickeParams) -> Result<DickeSolution> {
    d.validate()?;
    let (g2, w0, wx) = (d.g * d.g, d.omega_0(), d.omega_x());
    let psi0_sq = 0.25 * (g2 / (w0 * w0) - wx * wx / g2);
    if psi0_sq > 0.0 {
        Ok(DickeSolution {
            psi0_sq,
            energy: (wx * wx + 4.0 * g2 * psi0_sq).sqrt(),
            phase: DickePhase::Superradiant,
        })
    } else {
        Ok(DickeSolution {
            psi0_sq: 0.0,
            energy: wx.abs(),
            phase: DickePhase::Normal,
        })
    }
}

/// Both `μ_D` boundaries of the singly-occupied lobe at `T = 0`,
/// `½(δ_D ∓ √(δ_D² − 4g²))`, lower first. The lobe needs `δ_D ≤ −2g`.
pub fn boundary_t0(delta_d: f64, g: f64) -> Result<(f64, f64)> {
    let disc = (delta_d - 2.0 * g) * (delta_d + 2.0 * g);
    if disc.is_nan() || disc < 0.0 || delta_d > 0.0 {
        return Err(Error::NoLobe { discriminant: disc });
    }
    let lower = 0.5 * (delta_d - disc.sqrt());
    // The product of the roots is g².
    Ok((lower, g * g / lower))
}

/// Boundary of the empty phase at `T = 0`, `½(δ_D − √(δ_D² + 4g²))`.
pub fn vacuum_boundary_t0(delta_d: f64, g: f64) -> f64 {
    let r = delta_d.hypot(2.0 * g);
    if delta_d <= 0.0 {
        0.5 * (delta_d - r)
    } else {
        -2.0 * g * g / (delta_d + r)
    }
}

/// Signed normal-phase modes: roots of `λ² − Sλ + P` with
/// `S = Jk² + δ_D − 2μ_D` and `P = ω̃_k ω̃_x − g² sgn(δ_D − μ_D)`.
///
/// `sgn(0)` is taken as `+1`, the limit from `μ_D < δ_D`.
pub fn normal_modes(k: f64, d: &DickeParams) -> Result<ModePair> {
    d.validate()?;
    let wx = d.omega_x();
    let sgn = if wx >= 0.0 { 1.0 } else { -1.0 };
    let s = d.hopping * k * k + d.delta_d - 2.0 * d.mu_d;
    let p = d.omega_k(k) * wx - d.g * d.g * sgn;
    let q = (d.hopping * k * k - d.delta_d).powi(2) + 4.0 * d.g * d.g * sgn;
    if q < -1e-12 * s.abs().max(d.g).powi(2) {
        return Err(Error::DynamicalInstability { a: s, discriminant: q });
    }
    let r = q.max(0.0).sqrt();
    let large = 0.5 * (s + if s >= 0.0 { r } else { -r });
    let small = if large == 0.0 { 0.0 } else { p / large };
    let (lo, hi) = if small <= large { (small, large) } else { (large, small) };
    Ok(ModePair { minus: lo, plus: hi })
}

/// Positive excitation energies, lower first.
///
/// The superradiant branch uses the gap equation to eliminate `g`; the
/// normal branch takes the magnitudes of [`normal_modes`].
pub fn spectrum(k: f64, d: &DickeParams, sol: &DickeSolution) -> Result<ModePair> {
    d.validate()?;
    if sol.phase == DickePhase::Normal {
        let m = normal_modes(k, d)?;
        let (a, b) = (m.minus.abs(), m.plus.abs());
        return Ok(ModePair {
            minus: a.min(b),
            plus: a.max(b),
        });
    }
    let (wk, w0, wx, e) = (d.omega_k(k), d.omega_0(), d.omega_x(), sol.energy);
    let a = 0.5 * (e * e + wk * wk + 2.0 * wx * w0);
    let b = (wk - w0) * (e * e * wk - wx * wx * w0);
    let disc = a * a - b;
    let scale = a.abs().max(f64::MIN_POSITIVE);
    if disc < -1e-12 * scale * scale || b < -1e-12 * scale * scale || a < 0.0 {
        return Err(Error::DynamicalInstability { a, discriminant: disc });
    }
    let big = a + disc.max(0.0).sqrt();
    let small = if big > 0.0 { b.max(0.0) / big } else { 0.0 };
    Ok(ModePair {
        minus: small.sqrt(),
        plus: big.sqrt(),
    })
}

/// Gap `ε_+(0)` of the amplitude mode.
pub fn amplitude_gap(d: &DickeParams, sol: &DickeSolution) -> Result<f64> {
    Ok(spectrum(0.0, d, sol)?.plus)
}

/// Richardson-extrapolated slope of the lower mode at `k → 0`.
pub fn sound_velocity(d: &DickeParams, sol: &DickeSolution, cfg: &SolverConfig) -> Result<SoundVelocity> {
    let mut v = [0.0; 3];
    for (vi, &h) in v.iter_mut().zip(cfg.fd_steps.iter()) {
        *vi = spectrum(h, d, sol)?.minus / h;
    }
    let (velocity, spread) = richardson_halving(v);
    let floor = cfg.velocity_tol * (d.hopping * d.g).sqrt();
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

/// Critical temperature of the superradiant transition at fixed `μ_D`.
///
/// Points that are normal at `T = 0`, including the `T = 0` boundary itself,
/// give exactly zero. The temperature field of `d` is ignored.
pub fn tc_solve(d: &DickeParams, cfg: &SolverConfig) -> Result<CriticalTemperature> {
    let d0 = d.with_temperature(0.0);
    let g2 = d.g * d.g;
    // atanh near 1 makes the transition temperature log-sensitive to the
    // residual, so the boundary is resolved at the residual level.
    if criterion_residual(&d0)? <= 1e-12 * g2 {
        return Ok(CriticalTemperature { tc: 0.0, capped: false });
    }
    let t_max = cfg.t_max * d.g;
    let res = |t: f64| g2 - criterion_rhs(&d.with_temperature(t));
    if res(t_max) > 0.0 {
        return Ok(CriticalTemperature {
            tc: t_max,
            capped: true,
        });
    }
    let tc = bisect(res, 0.0, t_max, cfg.tc_rel_tol, "Dicke critical temperature")?;
    Ok(CriticalTemperature { tc, capped: false })
}
