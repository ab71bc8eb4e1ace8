use nalgebra::{Matrix2, Matrix4};
use serde::{Deserialize, Serialize};

use super::{boundary_discriminant, LobeContext, MeanFieldSolution};
use crate::{Error, ModelParams, Result};

/// Relative tolerance below which negative discriminants count as rounding.
const STABILITY_TOL: f64 = 1e-10;

/// Lower and upper excitation energy at one wave vector.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModePair {
    pub minus: f64,
    pub plus: f64,
}

/// Lattice factor `ε_k = 2 Σ_i cos k_i`.
pub fn lattice_dispersion(k: &[f64]) -> f64 {
    // 2D − 4Σ sin²(k/2) keeps ε_k − 2D accurate at small k.
    let s: f64 = k.iter().map(|&ki| (0.5 * ki).sin().powi(2)).sum();
    2.0 * k.len() as f64 - 4.0 * s
}

/// Quadratic fluctuation Hamiltonian `h_eff = [[G, F], [F, G]]` at one `k`.
#[derive(Clone, Debug, PartialEq)]
pub struct BogoliubovBlock {
    pub g_block: Matrix2<f64>,
    pub f_block: Matrix2<f64>,
    pub k: Vec<f64>,
    pub eps_k: f64,
    /// In the superfluid, `det(G − F) = c·(2D − ε_k)` by the stationarity
    /// conditions; `Some(c)` makes the Goldstone zero exact at `k = 0`.
    pub phase_stiffness: Option<f64>,
}

impl BogoliubovBlock {
    pub fn heff(&self) -> Matrix4<f64> {
        let mut h = Matrix4::zeros();
        h.fixed_view_mut::<2, 2>(0, 0).copy_from(&self.g_block);
        h.fixed_view_mut::<2, 2>(2, 2).copy_from(&self.g_block);
        h.fixed_view_mut::<2, 2>(0, 2).copy_from(&self.f_block);
        h.fixed_view_mut::<2, 2>(2, 0).copy_from(&self.f_block);
        h
    }

    /// Coefficients `(A, B)` with `ε_±² = A ± √(A² − B)`.
    pub fn coefficients(&self) -> (f64, f64) {
        let (g, f) = (&self.g_block, &self.f_block);
        let (g11, g22, g12) = (g[(0, 0)], g[(1, 1)], g[(0, 1)]);
        let (f11, f22, f12) = (f[(0, 0)], f[(1, 1)], f[(0, 1)]);
        let a = 2.0 * (g11 * g11 + g22 * g22 + 2.0 * g12 * g12 - f11 * f11 - f22 * f22 - 2.0 * f12 * f12);
        let minus = match self.phase_stiffness {
            Some(c) => c * 4.0 * self.k.iter().map(|&ki| (0.5 * ki).sin().powi(2)).sum::<f64>(),
            None => (g11 - f11) * (g22 - f22) - (g12 - f12).powi(2),
        };
        let plus = (g11 + f11) * (g22 + f22) - (g12 + f12).powi(2);
        (a, 16.0 * minus * plus)
    }

    fn scale(&self) -> f64 {
        2.0 * (self.g_block.norm_squared() + self.f_block.norm_squared())
    }

    /// Mode energies from the closed form `√(A ± √(A² − B))`.
    pub fn closed_form_modes(&self) -> Result<ModePair> {
        let (a, b) = self.coefficients();
        let s = self.scale().max(f64::MIN_POSITIVE);
        let disc = a * a - b;
        if a < -STABILITY_TOL * s || disc < -STABILITY_TOL * s * s || b < -STABILITY_TOL * s * s {
            return Err(Error::DynamicalInstability { a, discriminant: disc });
        }
        let (a, b, disc) = (a.max(0.0), b.max(0.0), disc.max(0.0));
        let big = a + disc.sqrt();
        let small = if big > 0.0 { b / big } else { 0.0 };
        Ok(ModePair {
            minus: small.sqrt(),
            plus: big.sqrt(),
        })
    }

    /// Mode energies from the bosonic (symplectic) eigenproblem of `h_eff`:
    /// twice the positive eigenvalues of `diag(1, 1, −1, −1) h_eff`.
    pub fn symplectic_modes(&self) -> Result<ModePair> {
        let mut m = self.heff();
        for r in 2..4 {
            for c in 0..4 {
                m[(r, c)] = -m[(r, c)];
            }
        }
        let ev = m.complex_eigenvalues();
        let s = self.scale().sqrt().max(f64::MIN_POSITIVE);
        let mut re: Vec<f64> = ev.iter().map(|z| z.re).collect();
        let worst_im = ev.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
        if worst_im > 1e-6 * s {
            return Err(Error::DynamicalInstability {
                a: s,
                discriminant: -worst_im,
            });
        }
        re.sort_by(|x, y| x.total_cmp(y));
        Ok(ModePair {
            minus: 2.0 * re[2].abs(),
            plus: 2.0 * re[3],
        })
    }
}

/// Fluctuation blocks around a mean-field solution.
pub fn heff_block(k: &[f64], sol: &MeanFieldSolution) -> Result<BogoliubovBlock> {
    let p = &sol.params;
    check_k(k, p)?;
    if !sol.lobe.has_hole_channel() {
        return Err(Error::InvalidParams(
            "excitation spectra need a hole channel (n ≥ 1)".into(),
        ));
    }
    if sol.outside_sector() {
        return Err(Error::InvalidParams(format!(
            "ground state lies outside the n = {} sector",
            sol.lobe.n
        )));
    }
    let [em, e0, e1] = sol.lobe.eps;
    let [f0, f1] = sol.lobe.f;
    let j = p.hopping;
    let jz = j * p.coordination();
    let ek = lattice_dispersion(k);

    let (st, ct) = sol.theta.sin_cos();
    let (sc, cc) = sol.chi.sin_cos();
    let (st2, ct2) = (st * st, ct * ct);
    let c2t = (2.0 * sol.theta).cos();
    let s2 = (2.0 * sol.theta).sin().powi(2);
    let u_minus = em * sc * sc + e1 * cc * cc - e0;
    let u_plus = em * cc * cc + e1 * sc * sc - e0;
    let c_plus = f1 * cc + f0 * sc;
    let c_minus = f1 * sc - f0 * cc;
    let h0 = f0 * ct * cc;
    let h1 = f1 * ct * sc;
    let k0 = f1 * ct2 * cc - f0 * st2 * sc;
    let k1 = f1 * st2 * cc - f0 * ct2 * sc;

    let d11 = 0.5 * (c2t * u_minus + jz * s2 * c_plus * c_plus);
    let d22 = 0.5 * (u_plus - st2 * u_minus + 0.5 * jz * s2 * c_plus * c_plus);
    let d12 = -0.25 * ct * ((2.0 * sol.chi).sin() * (e1 - em) + 2.0 * jz * st2 * c_plus * c_minus);
    let g11 = d11 - 0.5 * j * (k0 * k0 + k1 * k1) * ek;
    let g22 = d22 - 0.5 * j * (h0 * h0 + h1 * h1) * ek;
    let g12 = d12 + 0.5 * j * (h1 * k0 + h0 * k1) * ek;
    let f11 = j * k0 * k1 * ek;
    let f22 = j * h0 * h1 * ek;
    let f12 = -0.5 * j * (h0 * k0 + h1 * k1) * ek;

    // G − F = D − ½Jε_k uuᵀ with D the k-independent part.
    let (u1, u2) = (k0 + k1, -(h0 + h1));
    let phase_stiffness = sol
        .is_superfluid()
        .then_some(0.5 * j * (u1 * u1 * d22 - 2.0 * u1 * u2 * d12 + u2 * u2 * d11));

    Ok(BogoliubovBlock {
        g_block: Matrix2::new(g11, g12, g12, g22),
        f_block: Matrix2::new(f11, f12, f12, f22),
        k: k.to_vec(),
        eps_k: ek,
        phase_stiffness,
    })
}

/// Constant `ℰ(θ, χ)` per site that accompanies the zero-point sum.
pub(crate) fn energy_shift(sol: &MeanFieldSolution) -> f64 {
    let [em, e0, e1] = sol.lobe.eps;
    let [f0, f1] = sol.lobe.f;
    let jz = sol.params.hopping * sol.params.coordination();
    let (st, _) = sol.theta.sin_cos();
    let (sc, cc) = sol.chi.sin_cos();
    let u_minus = em * sc * sc + e1 * cc * cc - e0;
    let u_plus = em * cc * cc + e1 * sc * sc - e0;
    let c_plus = f1 * cc + f0 * sc;
    let s2 = (2.0 * sol.theta).sin().powi(2);
    -0.75 * jz * s2 * c_plus * c_plus - 0.5 * u_plus - 0.5 * ((2.0 * sol.theta).cos() - st * st) * u_minus
}

/// Excitation energies `(ε_−, ε_+)` of a mean-field solution.
pub fn bogoliubov_spectrum(k: &[f64], sol: &MeanFieldSolution) -> Result<ModePair> {
    heff_block(k, sol)?.closed_form_modes()
}

/// Closed-form Mott-phase spectrum
/// `ε_± = ½(ε_{−1} − ε_1 + Jε_k(f_1² − f_0²) ± √Q(k))`.
///
/// The branches are signed: at `J = 0` they are the hole gap and minus the
/// particle gap.
pub fn mott_spectrum(k: &[f64], lobe: &LobeContext, p: &ModelParams) -> Result<ModePair> {
    check_k(k, p)?;
    if !lobe.has_hole_channel() {
        return Err(Error::InvalidParams(
            "excitation spectra need a hole channel (n ≥ 1)".into(),
        ));
    }
    let [em, _, e1] = lobe.eps;
    let [f0, f1] = lobe.f;
    let jek = p.hopping * lattice_dispersion(k);
    let q = boundary_discriminant(lobe, jek);
    if q < -STABILITY_TOL * lobe.hubbard_u.powi(2) {
        return Err(Error::NoLobe { discriminant: q });
    }
    let r = q.max(0.0).sqrt();
    let base = em - e1 + jek * (f1 * f1 - f0 * f0);
    Ok(ModePair {
        minus: 0.5 * (base - r),
        plus: 0.5 * (base + r),
    })
}

fn check_k(k: &[f64], p: &ModelParams) -> Result<()> {
    if k.len() != p.dim as usize {
        return Err(Error::InvalidParams(format!(
            "wave vector has {} components, lattice dimension is {}",
            k.len(),
            p.dim
        )));
    }
    if k.iter().any(|x| !x.is_finite()) {
        return Err(Error::InvalidParams("non-finite wave vector".into()));
    }
    Ok(())
}
