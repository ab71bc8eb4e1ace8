use serde::{Deserialize, Serialize};

use super::LobeContext;
use crate::jc_onsite::{chi_n, lower_hopping};
use crate::{Branch, Error, ModelParams, Result};

/// Point where the particle and hole boundaries of a lobe merge.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LobeTip {
    pub hopping: f64,
    /// Absolute chemical potential `μ`.
    pub mu: f64,
}

/// Discriminant `Q(Jz) = U² − 2JzU(f_0² + f_1²) + (Jz)²(f_1² − f_0²)²`,
/// evaluated in the factored form `(U − Jz(f_1+f_0)²)(U − Jz(f_1−f_0)²)`.
pub fn boundary_discriminant(lobe: &LobeContext, jz: f64) -> f64 {
    let [f0, f1] = lobe.f;
    let u = lobe.hubbard_u;
    (u - jz * (f1 + f0).powi(2)) * (u - jz * (f1 - f0).powi(2))
}

/// Chemical potential `μ` of the particle (`Upper`) or hole (`Lower`)
/// boundary of the lobe at the hopping of `p`. The chemical potential stored
/// in `p` is ignored.
pub fn mott_boundary(lobe: &LobeContext, p: &ModelParams, branch: Branch) -> Result<f64> {
    p.validate()?;
    let jz = p.hopping * p.coordination();
    let [f0, f1] = lobe.f;
    if !lobe.has_hole_channel() {
        if branch == Branch::Lower {
            return Err(Error::InvalidParams("the vacuum lobe has no hole boundary".into()));
        }
        let f1 = lower_hopping(1, p);
        return Ok(p.omega_c + 0.5 * p.detuning() - chi_n(1, p) - jz * f1 * f1);
    }
    let q = boundary_discriminant(lobe, jz);
    // Rounding at the tip may leave a tiny negative discriminant: double root.
    let q = if q < 0.0 && q > -TIP_TOL * lobe.hubbard_u.powi(2) {
        0.0
    } else {
        q
    };
    if q < 0.0 {
        return Err(Error::NoLobe { discriminant: q });
    }
    let x = -jz * (f1 * f1 - f0 * f0) + branch.sign() * q.sqrt();
    Ok(p.omega_c + mu_rel_at(lobe, x))
}

const TIP_TOL: f64 = 1e-12;

/// `μ − ω_c` at which `ε_{−1} − ε_1` takes the value `x`.
fn mu_rel_at(lobe: &LobeContext, x: f64) -> f64 {
    // ε_{−1} − ε_1 grows as 2(μ − ω_c).
    lobe.mu_rel + 0.5 * (x - (lobe.eps[0] - lobe.eps[2]))
}

/// Critical hopping `J_c` at the chemical potential of the lobe.
///
/// The Mott state is stable for `J ≤ J_c`. Outside the atomic-limit lobe no
/// Mott phase exists and [`Error::NoLobe`] is returned.
pub fn critical_hopping(lobe: &LobeContext, p: &ModelParams) -> Result<f64> {
    let z = p.coordination();
    let [f0, f1] = lobe.f;
    let pg = lobe.particle_gap();
    if !lobe.has_hole_channel() {
        if pg <= 0.0 {
            return Err(Error::NoLobe { discriminant: pg });
        }
        return Ok(pg / (f1 * f1) / z);
    }
    let hg = lobe.hole_gap();
    if pg <= 0.0 || hg <= 0.0 {
        return Err(Error::NoLobe {
            discriminant: pg.min(hg),
        });
    }
    Ok(pg * hg / (pg * f0 * f0 + hg * f1 * f1) / z)
}

/// Tip of the lobe with filling `n ≥ 1`.
pub fn lobe_tip(lobe: &LobeContext, p: &ModelParams) -> Result<LobeTip> {
    if !lobe.has_hole_channel() {
        return Err(Error::InvalidParams("the vacuum lobe has no tip".into()));
    }
    let [f0, f1] = lobe.f;
    let jz = lobe.hubbard_u / (f0 + f1).powi(2);
    let x = -jz * (f1 * f1 - f0 * f0);
    Ok(LobeTip {
        hopping: jz / p.coordination(),
        mu: p.omega_c + mu_rel_at(lobe, x),
    })
}
