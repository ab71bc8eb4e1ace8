//! Single-cavity Jaynes-Cummings eigensystem.
//!
//! In the sector with `n ≥ 1` polaritons the eigenstates are
//!
//! ```text
//! |n,−⟩ = cosθ_n |n,g⟩ − sinθ_n |n−1,e⟩
//! |n,+⟩ = sinθ_n |n,g⟩ + cosθ_n |n−1,e⟩
//! ```
//!
//! with grand-canonical energies `ε_n^± = −(μ−ω_c)n + δ/2 ± χ_n`,
//! `χ_n = √(g²n + δ²/4)` and `δ = ω_x − ω_c`. The empty state `|0,g⟩` has
//! energy zero and counts as the lower branch.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Lower,
    Upper,
}

impl Branch {
    pub const ALL: [Branch; 2] = [Branch::Lower, Branch::Upper];

    pub fn sign(self) -> f64 {
        match self {
            Branch::Lower => -1.0,
            Branch::Upper => 1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Lower => "-",
            Branch::Upper => "+",
        })
    }
}

/// Couplings of the Jaynes-Cummings-Hubbard model.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub omega_c: f64,
    pub omega_x: f64,
    pub g: f64,
    /// Photon hopping `J`.
    pub hopping: f64,
    pub mu: f64,
    /// Lattice dimension `D` of the hypercubic lattice.
    pub dim: u8,
}

impl ModelParams {
    pub fn new(omega_c: f64, omega_x: f64, g: f64, hopping: f64, mu: f64, dim: u8) -> Result<Self> {
        let p = Self {
            omega_c,
            omega_x,
            g,
            hopping,
            mu,
            dim,
        };
        p.validate()?;
        Ok(p)
    }

    /// Parameters with `ω_c = 0` and `g = 1`, given the detuning and `μ − ω_c`.
    pub fn with_detuning(delta: f64, mu_rel: f64, hopping: f64, dim: u8) -> Result<Self> {
        Self::new(0.0, delta, 1.0, hopping, mu_rel, dim)
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [self.omega_c, self.omega_x, self.g, self.hopping, self.mu]
            .iter()
            .all(|x| x.is_finite());
        if !finite {
            return Err(Error::InvalidParams("non-finite coupling".into()));
        }
        if self.g <= 0.0 {
            return Err(Error::InvalidParams(format!("g = {} must be positive", self.g)));
        }
        if self.hopping < 0.0 {
            return Err(Error::InvalidParams(format!(
                "J = {} must be non-negative",
                self.hopping
            )));
        }
        if !(1..=3).contains(&self.dim) {
            return Err(Error::InvalidParams(format!("D = {} not in 1..=3", self.dim)));
        }
        Ok(())
    }

    /// Detuning `δ = ω_x − ω_c`.
    pub fn detuning(&self) -> f64 {
        self.omega_x - self.omega_c
    }

    /// `μ − ω_c`.
    pub fn mu_rel(&self) -> f64 {
        self.mu - self.omega_c
    }

    /// Coordination number `z = 2D`.
    pub fn coordination(&self) -> f64 {
        2.0 * self.dim as f64
    }

    pub fn with_mu(mut self, mu: f64) -> Self {
        self.mu = mu;
        self
    }

    pub fn with_hopping(mut self, hopping: f64) -> Self {
        self.hopping = hopping;
        self
    }

    /// Same parameters expressed in units of `g`.
    pub fn in_units_of_g(&self) -> Self {
        let g = self.g;
        Self {
            omega_c: self.omega_c / g,
            omega_x: self.omega_x / g,
            g: 1.0,
            hopping: self.hopping / g,
            mu: self.mu / g,
            dim: self.dim,
        }
    }
}

/// One on-site eigenstate `|n, σ⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolaritonLevel {
    pub n: u32,
    pub branch: Branch,
    pub energy: f64,
    /// `θ_n`; zero for the empty state.
    pub mixing_angle: f64,
    pub chi_n: f64,
}

impl PolaritonLevel {
    pub fn new(n: u32, branch: Branch, p: &ModelParams) -> Result<Self> {
        Ok(Self {
            n,
            branch,
            energy: jc_energy(n, branch, p)?,
            mixing_angle: if n == 0 { 0.0 } else { mixing_angle(n, p)? },
            chi_n: chi_n(n, p),
        })
    }
}

/// `χ_n = √(g²n + δ²/4)`.
pub fn chi_n(n: u32, p: &ModelParams) -> f64 {
    let d = p.detuning();
    (p.g * (n as f64).sqrt()).hypot(0.5 * d)
}

/// Grand-canonical energy `ε_n^σ` measured from the empty cavity.
pub fn jc_energy(n: u32, branch: Branch, p: &ModelParams) -> Result<f64> {
    if n == 0 {
        return match branch {
            Branch::Lower => Ok(0.0),
            Branch::Upper => Err(Error::InvalidLevel { n, branch }),
        };
    }
    Ok(energy_unchecked(n, branch, p))
}

/// Lower-branch energy; the empty state included.
pub fn lower_energy(n: u32, p: &ModelParams) -> f64 {
    if n == 0 {
        0.0
    } else {
        energy_unchecked(n, Branch::Lower, p)
    }
}

fn energy_unchecked(n: u32, branch: Branch, p: &ModelParams) -> f64 {
    -p.mu_rel() * n as f64 + 0.5 * p.detuning() + branch.sign() * chi_n(n, p)
}

/// `(sinθ_n, cosθ_n)`, with `(0, 1)` for the empty state.
///
/// Both weights are evaluated without cancellation for either sign of δ.
pub fn mixing_weights(n: u32, p: &ModelParams) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let d = p.detuning();
    let chi = chi_n(n, p);
    let g2n = p.g * p.g * n as f64;
    // 2χ ∓ δ, one of which would cancel catastrophically.
    let (minus, plus) = if d >= 0.0 {
        let plus = 2.0 * chi + d;
        (4.0 * g2n / plus, plus)
    } else {
        let minus = 2.0 * chi - d;
        (minus, 4.0 * g2n / minus)
    };
    let norm = (4.0 * chi).sqrt();
    (minus.sqrt() / norm, plus.sqrt() / norm)
}

/// Mixing angle `θ_n ∈ (0, π/2)` of the sector with `n ≥ 1` polaritons.
pub fn mixing_angle(n: u32, p: &ModelParams) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidLevel {
            n,
            branch: Branch::Lower,
        });
    }
    let (s, c) = mixing_weights(n, p);
    Ok(s.atan2(c))
}

/// Polariton hopping element `f_n^{σν} = ⟨n−1,ν|a|n,σ⟩`.
pub fn hopping_element(n: u32, sigma: Branch, nu: Branch, p: &ModelParams) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidLevel { n, branch: sigma });
    }
    if n == 1 && nu == Branch::Upper {
        return Err(Error::InvalidLevel { n: 0, branch: nu });
    }
    let (s1, c1) = mixing_weights(n, p);
    let (s0, c0) = mixing_weights(n - 1, p);
    let rn = (n as f64).sqrt();
    let rm = ((n - 1) as f64).sqrt();
    Ok(match (sigma, nu) {
        (Branch::Lower, Branch::Lower) => c1 * c0 * rn + s1 * s0 * rm,
        (Branch::Upper, Branch::Lower) => c0 * s1 * rn - s0 * c1 * rm,
        (Branch::Lower, Branch::Upper) => s0 * c1 * rn - c0 * s1 * rm,
        (Branch::Upper, Branch::Upper) => s0 * s1 * rn + c0 * c1 * rm,
    })
}

/// Lower-to-lower element `f_n^{−−}`, zero for `n = 0`.
pub fn lower_hopping(n: u32, p: &ModelParams) -> f64 {
    if n == 0 {
        0.0
    } else {
        hopping_element(n, Branch::Lower, Branch::Lower, p).unwrap_or(0.0)
    }
}

/// Effective on-site interaction `U = ε_2^σ − 2ε_1^σ + ε_0`.
pub fn hubbard_u(p: &ModelParams, branch: Branch) -> f64 {
    // r_n = χ_n − |δ|/2 keeps the large-detuning limit free of cancellation,
    // and μ drops out exactly.
    let d = p.detuning();
    let r = |n: u32| {
        let g2n = p.g * p.g * n as f64;
        g2n / (chi_n(n, p) + 0.5 * d.abs())
    };
    match branch {
        Branch::Lower => 2.0 * r(1) - r(2) + (-d).max(0.0),
        Branch::Upper => r(2) - 2.0 * r(1) - d.max(0.0),
    }
}
