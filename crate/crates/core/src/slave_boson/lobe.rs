use serde::{Deserialize, Serialize};

use crate::jc_onsite::{lower_energy, lower_hopping};
use crate::ModelParams;

/// Lower-polariton data of the triplet `(n − 1, n, n + 1)`.
///
/// For `n = 0` the hole state does not exist: `eps[0]` and `hubbard_u` are
/// `+∞` and `f[0]` is zero.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LobeContext {
    pub n: u32,
    /// `(ε_{−1}, ε_0, ε_1)`.
    pub eps: [f64; 3],
    /// `(f_0, f_1) = (f_n^{−−}, f_{n+1}^{−−})`.
    pub f: [f64; 2],
    pub hubbard_u: f64,
    /// `μ − ω_c` at which `eps` was evaluated.
    pub mu_rel: f64,
}

impl LobeContext {
    pub fn new(n: u32, p: &ModelParams) -> Self {
        let e0 = lower_energy(n, p);
        let e1 = lower_energy(n + 1, p);
        let (em, f0) = if n == 0 {
            (f64::INFINITY, 0.0)
        } else {
            (lower_energy(n - 1, p), lower_hopping(n, p))
        };
        Self {
            n,
            eps: [em, e0, e1],
            f: [f0, lower_hopping(n + 1, p)],
            hubbard_u: if n == 0 { f64::INFINITY } else { (e1 - e0) + (em - e0) },
            mu_rel: p.mu_rel(),
        }
    }

    pub fn has_hole_channel(&self) -> bool {
        self.n > 0
    }

    /// Cost `ε_1 − ε_0` of adding a polariton.
    pub fn particle_gap(&self) -> f64 {
        self.eps[2] - self.eps[1]
    }

    /// Cost `ε_{−1} − ε_0` of removing a polariton.
    pub fn hole_gap(&self) -> f64 {
        self.eps[0] - self.eps[1]
    }

    /// The same lobe shifted to another `μ − ω_c`.
    pub fn at_mu_rel(&self, mu_rel: f64) -> Self {
        let dm = mu_rel - self.mu_rel;
        let n = self.n as f64;
        let mut out = *self;
        out.eps = [
            self.eps[0] - dm * (n - 1.0),
            self.eps[1] - dm * n,
            self.eps[2] - dm * (n + 1.0),
        ];
        out.mu_rel = mu_rel;
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resonant_first_lobe() {
        let p = ModelParams::with_detuning(0.0, -0.7, 0.0, 1).unwrap();
        let l = LobeContext::new(1, &p);
        assert_eq!(l.eps[0], 0.0);
        assert!((l.eps[1] - (0.7 - 1.0)).abs() < 1e-15);
        assert!((l.hubbard_u - (2.0 - 2f64.sqrt())).abs() < 1e-14);
        assert!((l.f[0] - std::f64::consts::FRAC_1_SQRT_2).abs() < 1e-15);
    }

    #[test]
    fn shifting_matches_rebuild() {
        let p = ModelParams::with_detuning(0.4, -0.7, 0.0, 2).unwrap();
        for n in 0..4 {
            let a = LobeContext::new(n, &p).at_mu_rel(-0.2);
            let b = LobeContext::new(n, &p.with_mu(-0.2));
            for i in 0..3 {
                assert!(a.eps[i] == b.eps[i] || (a.eps[i] - b.eps[i]).abs() < 1e-14);
            }
        }
    }
}
