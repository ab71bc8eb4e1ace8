use jchm_core::ed::{build_hamiltonian, ground_state, spectrum, Geometry, LatticeSpec};
use jchm_core::slave_boson::{minimize_gutzwiller, mott_boundary, LobeContext};
use jchm_core::{Branch, ModelParams};

fn dimer(delta: f64, mu: f64, j: f64) -> LatticeSpec {
    LatticeSpec::new(
        2,
        6,
        Geometry::Periodic,
        ModelParams::with_detuning(delta, mu, j, 1).unwrap(),
    )
    .unwrap()
}

#[test]
fn dimer_is_below_gutzwiller() {
    for (delta, mu, j) in [
        (0.0, -0.7, 0.02),
        (0.4, -0.5, 0.05),
        (-0.6, -0.9, 0.03),
        (0.0, -0.3, 0.1),
    ] {
        let spec = dimer(delta, mu, j);
        let e = ground_state(&spec).unwrap().energy;
        let p = spec.params;
        let e_var = minimize_gutzwiller(&LobeContext::new(1, &p), &p).unwrap().e_var;
        assert!(e < 2.0 * e_var, "{delta} {mu} {j}: {e} vs {}", 2.0 * e_var);
    }
}

#[test]
fn atomic_filling_steps_at_lobe_edges() {
    let p = ModelParams::with_detuning(0.3, 0.0, 0.0, 1).unwrap();
    let l = LobeContext::new(1, &p);
    let lower = mott_boundary(&l, &p, Branch::Lower).unwrap();
    let upper = mott_boundary(&l, &p, Branch::Upper).unwrap();
    let filling = |mu: f64| {
        ground_state(&LatticeSpec::new(2, 4, Geometry::Open, p.with_mu(mu)).unwrap())
            .unwrap()
            .filling
    };
    let h = 1e-9;
    assert_eq!(filling(lower - h), 0.0);
    assert_eq!(filling(lower + h), 1.0);
    assert_eq!(filling(upper - h), 1.0);
    assert_eq!(filling(upper + h), 2.0);
}

#[test]
fn site_relabelling_leaves_spectrum_unchanged() {
    // Reflecting a 3-site open chain maps bond (0,1) to (1,2).
    let p = ModelParams::with_detuning(0.2, -0.6, 0.07, 1).unwrap();
    let spec = LatticeSpec::new(3, 2, Geometry::Open, p).unwrap();
    let h = build_hamiltonian(&spec).unwrap();
    let d = spec.local_dimension();
    let reflect = |i: usize| {
        let (a, b, c) = (i / (d * d), (i / d) % d, i % d);
        c * d * d + b * d + a
    };
    for i in 0..h.nrows() {
        for j in 0..h.ncols() {
            assert!((h[(i, j)] - h[(reflect(i), reflect(j))]).abs() < 1e-14);
        }
    }
    let ring = spectrum(&LatticeSpec::new(3, 2, Geometry::Periodic, p).unwrap()).unwrap();
    assert_eq!(ring.len(), h.nrows());
}

#[test]
fn ground_energy_decreases_with_hopping() {
    let mut last = f64::INFINITY;
    for j in [0.0, 0.01, 0.03, 0.06, 0.1, 0.2] {
        let e = ground_state(&dimer(0.1, -0.6, j)).unwrap().energy;
        assert!(e <= last + 1e-14, "{j}");
        last = e;
    }
}
