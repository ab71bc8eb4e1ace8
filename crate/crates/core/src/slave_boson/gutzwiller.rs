use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::{Matrix2, Vector2};
use serde::{Deserialize, Serialize};

use super::LobeContext;
use crate::{Error, ModelParams, Result, SolverConfig};

/// Converged Gutzwiller ground state.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeanFieldSolution {
    /// `θ ∈ [0, π/2]`; zero in the Mott phase.
    pub theta: f64,
    /// `χ ∈ [0, π)`.
    pub chi: f64,
    /// Photon order parameter `|⟨a⟩|`.
    pub phi_c: f64,
    /// Energy per site.
    pub e_var: f64,
    pub lobe: LobeContext,
    pub params: ModelParams,
}

impl MeanFieldSolution {
    /// `0 < θ < π/2`. At `θ = π/2` the `n` sector is empty and the state
    /// is a neighbouring Mott state with `φ_c = 0`.
    pub fn is_superfluid(&self) -> bool {
        self.theta > 0.0 && !self.outside_sector()
    }

    /// The minimizer left the `n`-polariton sector entirely (`θ = π/2`).
    pub fn outside_sector(&self) -> bool {
        self.theta >= FRAC_PI_2
    }

    /// Residuals of the two stationarity conditions, in the `(χ, θ)` order.
    ///
    /// Both vanish at every stationary point with `0 < θ < π/2`; the θ condition
    /// is trivially satisfied by the Mott state.
    pub fn stationarity_residuals(&self) -> (f64, f64) {
        let l = &self.lobe;
        let [em, e0, e1] = l.eps;
        let [f0, f1] = l.f;
        let jz = self.params.hopping * self.params.coordination();
        let ct = self.theta.cos();
        let (sc, cc) = self.chi.sin_cos();
        let c = f1 * cc + f0 * sc;
        let w = if l.has_hole_channel() {
            em * sc * sc + e1 * cc * cc
        } else {
            e1 * cc * cc
        };
        let r_theta = (2.0 * self.theta).cos() * jz * c * c - (w - e0);
        if !l.has_hole_channel() {
            return (0.0, r_theta);
        }
        let r_chi = jz * 2.0 * f0 * f1 * ct * ct * (2.0 * self.chi).cos()
            - (em - e1 + jz * (f1 * f1 - f0 * f0) * ct * ct) * (2.0 * self.chi).sin();
        (r_chi, r_theta)
    }
}

/// Variational energy per site of the Gutzwiller state.
pub fn variational_energy(theta: f64, chi: f64, lobe: &LobeContext, p: &ModelParams) -> f64 {
    let [em, e0, e1] = lobe.eps;
    let [f0, f1] = lobe.f;
    let k = 0.5 * p.hopping * p.dim as f64;
    let (st, ct) = theta.sin_cos();
    let (sc, cc) = chi.sin_cos();
    let s2t = (2.0 * theta).sin();
    let hole = if lobe.has_hole_channel() {
        em * sc * sc
    } else if sc == 0.0 {
        0.0
    } else {
        f64::INFINITY
    };
    let c = f1 * cc + f0 * sc;
    e0 * ct * ct + st * st * (hole + e1 * cc * cc) - k * s2t * s2t * c * c
}

/// `|⟨ψ|a|ψ⟩| = ½ |sin2θ (f_0 sinχ + f_1 cosχ)|`.
pub fn order_parameter(theta: f64, chi: f64, lobe: &LobeContext) -> f64 {
    let [f0, f1] = lobe.f;
    (0.5 * (2.0 * theta).sin() * (f0 * chi.sin() + f1 * chi.cos())).abs()
}

/// Lowest eigenvalue of the quadratic form of the energy around `θ = 0` and
/// the corresponding angle `χ ∈ [0, π)`.
///
/// The Mott state is locally stable iff the eigenvalue is non-negative.
pub fn mott_stability(lobe: &LobeContext, p: &ModelParams) -> (f64, f64) {
    let jz = p.hopping * p.coordination();
    let [f0, f1] = lobe.f;
    let a = lobe.particle_gap() - jz * f1 * f1;
    if !lobe.has_hole_channel() {
        return (a, 0.0);
    }
    let d = lobe.hole_gap() - jz * f0 * f0;
    let b = -jz * f0 * f1;
    let mean = 0.5 * (a + d);
    let rad = (0.5 * (a - d)).hypot(b);
    let lam = mean - rad;
    // Eigenvector from whichever row is better conditioned.
    let (x, y) = if (lam - a).abs() >= (lam - d).abs() {
        (b, lam - a)
    } else {
        (lam - d, b)
    };
    let chi = if x == 0.0 && y == 0.0 {
        if a <= d {
            0.0
        } else {
            FRAC_PI_2
        }
    } else {
        y.atan2(x).rem_euclid(PI)
    };
    (lam, chi % PI)
}

pub fn minimize_gutzwiller(lobe: &LobeContext, p: &ModelParams) -> Result<MeanFieldSolution> {
    minimize_gutzwiller_with(lobe, p, &SolverConfig::default())
}

/// Global minimizer of [`variational_energy`].
///
/// A coarse grid localizes the basin, Newton iteration with the analytic
/// Hessian refines it to machine precision. When the Mott state is locally
/// `cfg.degeneracy_tol` on the on-site energy scale, the Mott state is returned.
/// `cfg.degeneracy_tol`, the Mott state is returned.
pub fn minimize_gutzwiller_with(lobe: &LobeContext, p: &ModelParams, cfg: &SolverConfig) -> Result<MeanFieldSolution> {
    p.validate()?;
    let (lam, chi_mott) = mott_stability(lobe, p);
    let e_mott = lobe.eps[1];
    let scale = lobe.eps[1]
        .abs()
        .max(lobe.eps[2].abs())
        .max(p.hopping * p.coordination());
    // Marginal stability at the boundary is resolved to rounding only.
    let marginal = lam >= -cfg.degeneracy_tol * scale;
    let mott = MeanFieldSolution {
        theta: 0.0,
        chi: chi_mott,
        phi_c: 0.0,
        e_var: e_mott,
        lobe: *lobe,
        params: *p,
    };
    if p.hopping == 0.0 && lam >= 0.0 {
        return Ok(mott);
    }

    let m = cfg.grid_points.max(3);
    let n_chi = if lobe.has_hole_channel() { m } else { 1 };
    let mut best = (f64::INFINITY, 0.0, 0.0);
    for i in 0..m {
        let th = FRAC_PI_2 * i as f64 / (m - 1) as f64;
        for j in 0..n_chi {
            let ch = PI * j as f64 / m as f64;
            let e = variational_energy(th, ch, lobe, p);
            if e < best.0 {
                best = (e, th, ch);
            }
        }
    }

    let start = if best.1 > 0.0 {
        Vector2::new(best.1, best.2)
    } else if lam < 0.0 {
        Vector2::new(0.25 * FRAC_PI_2 / (m - 1) as f64, chi_mott)
    } else {
        return Ok(mott);
    };

    let x = newton(start, lobe, p, cfg)?;
    let (theta, chi) = canonical(x[0], x[1]);
    let e_var = variational_energy(theta, chi, lobe, p);
    if marginal && e_var >= e_mott - cfg.degeneracy_tol * scale {
        return Ok(mott);
    }
    // Just outside the boundary the condensation energy is below rounding.
    if theta == 0.0 || e_var > e_mott + 8.0 * f64::EPSILON * scale {
        return Err(Error::NotConverged {
            what: "Gutzwiller minimization",
            iterations: cfg.max_newton_iter,
            residual: e_var - e_mott,
        });
    }
    Ok(MeanFieldSolution {
        theta,
        chi,
        phi_c: order_parameter(theta, chi, lobe),
        e_var,
        lobe: *lobe,
        params: *p,
    })
}

fn canonical(theta: f64, chi: f64) -> (f64, f64) {
    let mut t = theta.rem_euclid(PI);
    if t > FRAC_PI_2 {
        t = PI - t;
    }
    (t, chi.rem_euclid(PI) % PI)
}

/// Energy, gradient and Hessian in `(θ, χ)`.
fn derivatives(x: &Vector2<f64>, lobe: &LobeContext, p: &ModelParams) -> (f64, Vector2<f64>, Matrix2<f64>) {
    let (th, ch) = (x[0], x[1]);
    let e = variational_energy(th, ch, lobe, p);
    let [em, e0, e1] = lobe.eps;
    let [f0, f1] = lobe.f;
    let k = 0.5 * p.hopping * p.dim as f64;
    let (s2t, c2t) = (2.0 * th).sin_cos();
    let (s4t, c4t) = (4.0 * th).sin_cos();
    let st2 = th.sin().powi(2);
    let s = s2t * s2t;
    let (sc, cc) = ch.sin_cos();
    let c = f1 * cc + f0 * sc;
    let c2 = c * c;

    if !lobe.has_hole_channel() {
        let w = e1 * cc * cc;
        let g_th = -e0 * s2t + s2t * w - 2.0 * k * s4t * c2;
        let h_th = -2.0 * e0 * c2t + 2.0 * c2t * w - 8.0 * k * c4t * c2;
        return (e, Vector2::new(g_th, 0.0), Matrix2::new(h_th, 0.0, 0.0, 1.0));
    }

    let (s2c, c2c) = (2.0 * ch).sin_cos();
    let w = em * sc * sc + e1 * cc * cc;
    let w1 = (em - e1) * s2c;
    let w2 = 2.0 * (em - e1) * c2c;
    let cp = f0 * cc - f1 * sc;
    let c2_1 = 2.0 * c * cp;
    let c2_2 = 2.0 * (cp * cp - c2);

    let g_th = -e0 * s2t + s2t * w - 2.0 * k * s4t * c2;
    let g_ch = st2 * w1 - k * s * c2_1;
    let h_tt = -2.0 * e0 * c2t + 2.0 * c2t * w - 8.0 * k * c4t * c2;
    let h_cc = st2 * w2 - k * s * c2_2;
    let h_tc = s2t * w1 - 2.0 * k * s4t * c2_1;
    (e, Vector2::new(g_th, g_ch), Matrix2::new(h_tt, h_tc, h_tc, h_cc))
}

fn newton(mut x: Vector2<f64>, lobe: &LobeContext, p: &ModelParams, cfg: &SolverConfig) -> Result<Vector2<f64>> {
    let (mut e, mut g, mut h) = derivatives(&x, lobe, p);
    let scale = lobe.eps[1].abs().max(lobe.eps[2].abs()).max(p.hopping).max(1e-300);
    let mut converged_steps = 0;
    for _ in 0..cfg.max_newton_iter {
        let pd = h[(0, 0)] > 0.0 && h.determinant() > 0.0;
        let newton_step = if pd { h.try_inverse().map(|hi| -(hi * g)) } else { None };
        let step = match newton_step {
            Some(s) => s,
            None => {
                let curv = h.symmetric_eigenvalues().amax().max(scale * 1e-3);
                -g / curv
            }
        };

        // Close to the minimum the energy no longer resolves the step, so
        // full Newton steps are taken without a line search.
        let local = pd && g.norm() < 1e-6 * scale;
        let mut t = 1.0;
        let mut xn = x + step;
        if !local {
            let slope = g.dot(&step);
            loop {
                xn = x + step * t;
                let en = variational_energy(xn[0], xn[1], lobe, p);
                if en <= e + 1e-4 * t * slope || t < 1e-12 {
                    break;
                }
                t *= 0.5;
            }
        }
        let moved = (xn - x).norm();
        x = xn;
        (e, g, h) = derivatives(&x, lobe, p);
        if g.norm() < cfg.newton_tol && moved <= 1e-15 * (1.0 + x.norm()) {
            return Ok(x);
        }
        if g.norm() < cfg.newton_tol {
            converged_steps += 1;
            if converged_steps >= 4 {
                return Ok(x);
            }
        }
    }
    if g.norm() < cfg.newton_tol {
        return Ok(x);
    }
    Err(Error::NotConverged {
        what: "Newton refinement",
        iterations: cfg.max_newton_iter,
        residual: g.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn setup(mu_rel: f64, jz: f64) -> (LobeContext, ModelParams) {
        let p = ModelParams::with_detuning(0.0, mu_rel, jz / 2.0, 1).unwrap();
        (LobeContext::new(1, &p), p)
    }

    #[test]
    fn energy_limits() {
        let (l, p) = setup(-0.7, 0.2);
        assert_eq!(variational_energy(0.0, 1.3, &l, &p), l.eps[1]);
        assert_abs_diff_eq!(variational_energy(FRAC_PI_2, 0.0, &l, &p), l.eps[2], epsilon = 1e-15);
    }

    #[test]
    fn energy_reference_value() {
        let (l, p) = setup(-0.7, 0.2);
        assert_abs_diff_eq!(
            variational_energy(0.3, 0.5, &l, &p),
            -0.3059267926085947,
            epsilon = 1e-14
        );
    }

    #[test]
    fn analytic_derivatives_match_finite_differences() {
        let (l, p) = setup(-0.55, 0.3);
        let x = Vector2::new(0.41, 1.1);
        let (_, g, hm) = derivatives(&x, &l, &p);
        let h = 1e-5;
        let e = |a: f64, b: f64| variational_energy(a, b, &l, &p);
        let gt = (e(x[0] + h, x[1]) - e(x[0] - h, x[1])) / (2.0 * h);
        let gc = (e(x[0], x[1] + h) - e(x[0], x[1] - h)) / (2.0 * h);
        assert_abs_diff_eq!(g[0], gt, epsilon = 1e-9);
        assert_abs_diff_eq!(g[1], gc, epsilon = 1e-9);
        let htc = (e(x[0] + h, x[1] + h) - e(x[0] + h, x[1] - h) - e(x[0] - h, x[1] + h) + e(x[0] - h, x[1] - h))
            / (4.0 * h * h);
        assert_abs_diff_eq!(hm[(0, 1)], htc, epsilon = 1e-5);
    }

    #[test]
    fn zero_hopping_is_mott() {
        let (l, p) = setup(-0.7, 0.0);
        let s = minimize_gutzwiller(&l, &p).unwrap();
        assert_eq!(s.theta, 0.0);
        assert_eq!(s.phi_c, 0.0);
        assert_eq!(s.e_var, l.eps[1]);
    }

    #[test]
    fn beyond_tip_is_superfluid_and_stationary() {
        let jz0 = 0.15986689303325585;
        let (l, p) = setup(-0.7836116248912244, 1.5 * jz0);
        let s = minimize_gutzwiller(&l, &p).unwrap();
        assert!(s.theta > 0.0 && s.phi_c > 0.0);
        let (rc, rt) = s.stationarity_residuals();
        assert!(rc.abs() < 1e-9 && rt.abs() < 1e-9, "{rc} {rt}");
    }

    #[test]
    fn agrees_with_fine_grid() {
        let (l, p) = setup(-0.7, 0.1);
        let s = minimize_gutzwiller(&l, &p).unwrap();
        let m = 2001;
        let mut best = f64::INFINITY;
        for i in 0..m {
            for j in 0..m {
                let th = FRAC_PI_2 * i as f64 / (m - 1) as f64;
                let ch = PI * j as f64 / m as f64;
                best = best.min(variational_energy(th, ch, &l, &p));
            }
        }
        assert!(s.e_var <= best + 1e-15);
        assert!(best - s.e_var < 1e-5);
    }

    #[test]
    fn vacuum_lobe_two_state() {
        let p = ModelParams::with_detuning(0.0, -0.5, 0.3, 2).unwrap();
        let l = LobeContext::new(0, &p);
        let s = minimize_gutzwiller(&l, &p).unwrap();
        assert!(s.theta > 0.0);
        assert_eq!(s.chi, 0.0);
        let (_, rt) = s.stationarity_residuals();
        assert!(rt.abs() < 1e-9);
    }

    #[test]
    fn below_the_lobe_the_vacuum_wins() {
        let p = ModelParams::with_detuning(1.07, -0.88, 0.0286, 3).unwrap();
        let s = minimize_gutzwiller(&LobeContext::new(1, &p), &p).unwrap();
        assert!(s.outside_sector() && !s.is_superfluid());
        assert!(s.phi_c.abs() < 1e-15 && s.e_var.abs() < 1e-15);
        assert!(crate::slave_boson::bogoliubov_spectrum(&[0.0; 3], &s).is_err());
    }
}
