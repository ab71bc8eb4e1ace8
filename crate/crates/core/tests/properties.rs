use jchm_core::dicke::{self, DickeParams, DickePhase};
use jchm_core::jc_onsite::{chi_n, hopping_element, jc_energy, mixing_weights};
use jchm_core::slave_boson::{bogoliubov_spectrum, minimize_gutzwiller, LobeContext};
use jchm_core::{Branch, ModelParams};
use nalgebra::{DMatrix, SymmetricEigen};
use proptest::prelude::*;

/// Eigenvectors of the `n`-polariton block in the basis `(|n,g⟩, |n−1,e⟩)`,
/// sign-fixed so that the `|n−1,e⟩` (or, for n = 0, `|0,g⟩`) weight of the
/// lower state is negative and that of the upper state positive.
fn numeric_states(n: u32, p: &ModelParams) -> [(f64, f64); 2] {
    let nf = n as f64;
    let h = DMatrix::from_row_slice(
        2,
        2,
        &[
            p.omega_c * nf - p.mu * nf,
            p.g * nf.sqrt(),
            p.g * nf.sqrt(),
            p.omega_c * (nf - 1.0) + p.omega_x - p.mu * nf,
        ],
    );
    let e = SymmetricEigen::new(h);
    let (lo, hi) = if e.eigenvalues[0] <= e.eigenvalues[1] {
        (0, 1)
    } else {
        (1, 0)
    };
    let fix = |i: usize, want_neg: bool| {
        let (a, b) = (e.eigenvectors[(0, i)], e.eigenvectors[(1, i)]);
        let flip = if (b < 0.0) == want_neg { 1.0 } else { -1.0 };
        (a * flip, b * flip)
    };
    [fix(lo, true), fix(hi, false)]
}

fn params() -> impl Strategy<Value = ModelParams> {
    (-5.0..5.0f64, -3.0..1.0f64).prop_map(|(d, mu)| ModelParams::with_detuning(d, mu, 0.0, 1).unwrap())
}

proptest! {
    #[test]
    fn mixing_weights_are_normalized(p in params(), n in 1u32..=10) {
        let (s, c) = mixing_weights(n, &p);
        prop_assert!((s * s + c * c - 1.0).abs() < 1e-14);
        prop_assert!(s >= 0.0 && c >= 0.0);
    }

    #[test]
    fn branch_splitting(p in params(), n in 1u32..=10) {
        let split = jc_energy(n, Branch::Upper, &p).unwrap() - jc_energy(n, Branch::Lower, &p).unwrap();
        prop_assert!((split - 2.0 * chi_n(n, &p)).abs() < 1e-12 * (1.0 + split));
    }

    #[test]
    fn hopping_elements_match_numeric_states(p in params(), n in 1u32..=10) {
        let upper = numeric_states(n, &p);
        for (si, sigma) in Branch::ALL.into_iter().enumerate() {
            let (ug, ue) = upper[si];
            for (ni, nu) in Branch::ALL.into_iter().enumerate() {
                if n == 1 && nu == Branch::Upper {
                    continue;
                }
                // ⟨n,σ|a†|n−1,ν⟩ with a†|m,g⟩ = √(m+1)|m+1,g⟩, a†|m−1,e⟩ = √m|m,e⟩.
                let want = if n == 1 {
                    ug
                } else {
                    let (lg, le) = numeric_states(n - 1, &p)[ni];
                    ug * lg * (n as f64).sqrt() + ue * le * ((n - 1) as f64).sqrt()
                };
                let got = hopping_element(n, sigma, nu, &p).unwrap();
                prop_assert!((got - want).abs() < 1e-12, "n={} {} {}: {} vs {}", n, sigma, nu, got, want);
            }
        }
    }

    #[test]
    fn hopping_sum_rule(p in params(), n in 1u32..=10) {
        // Σ_ν f² = ⟨n,σ|a†a|n,σ⟩ ≤ n.
        for sigma in Branch::ALL {
            let mut s = 0.0;
            for nu in Branch::ALL {
                if n == 1 && nu == Branch::Upper {
                    continue;
                }
                s += hopping_element(n, sigma, nu, &p).unwrap().powi(2);
            }
            prop_assert!(s <= n as f64 + 1e-12);
        }
    }

    #[test]
    fn spectrum_is_even_and_periodic(
        delta in -1.0..1.0f64,
        mu in -1.0..-0.1f64,
        j in 0.0..0.15f64,
        k in proptest::collection::vec(-3.2..3.2f64, 2),
    ) {
        let p = ModelParams::with_detuning(delta, mu, j, 2).unwrap();
        let sol = minimize_gutzwiller(&LobeContext::new(1, &p), &p).unwrap();
        prop_assume!(!sol.outside_sector());
        let base = bogoliubov_spectrum(&k, &sol).unwrap();
        let tol = 1e-12 * (1.0 + base.plus);
        for q in [vec![-k[0], -k[1]], vec![k[1], k[0]], vec![k[0] - 2.0 * std::f64::consts::PI, k[1]]] {
            let m = bogoliubov_spectrum(&q, &sol).unwrap();
            prop_assert!((m.minus - base.minus).abs() < tol && (m.plus - base.plus).abs() < tol);
        }
        prop_assert!(base.minus <= base.plus);
    }

    #[test]
    fn dicke_cold_limit_of_criterion(mu in -4.0..-0.05f64, delta in -5.0..3.0f64, g in 0.3..2.0f64) {
        prop_assume!((delta - mu).abs() > 1e-3);
        let d = DickeParams::new(mu, delta, g, 1.0, 0.0).unwrap();
        let cold = dicke::criterion_residual(&d.with_temperature(1e-6 * g)).unwrap();
        let zero = dicke::criterion_residual(&d).unwrap();
        prop_assert!((cold - zero).abs() < 1e-9 * g * g);
        let sr = dicke::condensate_t0(&d).unwrap().phase == DickePhase::Superradiant;
        prop_assert_eq!(sr, zero > 0.0);
    }

    #[test]
    fn dicke_boundary_is_marginal(delta in -6.0..-2.0f64, g in 0.3..2.0f64) {
        let delta = delta * g;
        let (lo, hi) = dicke::boundary_t0(delta, g).unwrap();
        for mu in [lo, hi] {
            let r = dicke::criterion_residual(&DickeParams::new(mu, delta, g, 1.0, 0.0).unwrap()).unwrap();
            prop_assert!(r.abs() < 1e-12 * g * g * (1.0 + delta * delta));
        }
    }

    #[test]
    fn dicke_gap_equation(mu in -3.0..-0.05f64, delta in -4.0..2.0f64) {
        let d = DickeParams::new(mu, delta, 1.0, 1.0, 0.0).unwrap();
        let sol = dicke::condensate_t0(&d).unwrap();
        prop_assume!(sol.phase == DickePhase::Superradiant);
        prop_assert!((1.0 - d.g * d.g / (d.omega_0() * sol.energy)).abs() < 1e-12);
        let m = dicke::spectrum(0.0, &d, &sol).unwrap();
        prop_assert!(m.minus < 1e-7);
    }
}
