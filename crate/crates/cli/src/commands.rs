//! One table builder per command. Rows are evaluated with the configured
//! execution mode and kept in sweep order.

use jchm_core::bridge::{
    amplitude_gap_match, boundary_sup_error, lattice_params, lobe_tip_match, sb_tip, sound_velocity_match,
};
use jchm_core::dicke::{self, DickeParams};
use jchm_core::ed::{ground_state, Geometry, LatticeSpec};
use jchm_core::jc_onsite::{hopping_element, hubbard_u};
use jchm_core::slave_boson::{
    bogoliubov_spectrum, critical_temperature, fluctuation_energy, lobe_tip, minimize_gutzwiller, mott_boundary, KGrid,
    LobeContext, MeanFieldSolution,
};
use jchm_core::{par, Branch, Execution, ModelParams, PolaritonLevel, SolverConfig};

use crate::config::{Command, SweepConfig};
use crate::table::{Cell, Row, Table};
use crate::CliError;

type Values = Result<Vec<Cell>, String>;

pub fn build(cfg: &SweepConfig) -> Result<Table, CliError> {
    match cfg.command {
        Command::Onsite => Ok(onsite(cfg)),
        Command::Boundary => Ok(boundary(cfg)),
        Command::Spectrum => spectrum(cfg),
        Command::Fluct => Ok(fluct(cfg)),
        Command::DickeBoundary => Ok(dicke_boundary(cfg)),
        Command::DickeSpectrum => Ok(dicke_spectrum(cfg)),
        Command::Tc => Ok(tc(cfg)),
        Command::Compare => Ok(compare(cfg)),
        Command::EdCheck => Ok(ed_check(cfg)),
    }
}

/// Solver settings that affect each command's output.
pub fn tolerance_keys(command: Command) -> &'static [&'static str] {
    const MINIMIZER: [&str; 4] = ["grid_points", "newton_tol", "max_newton_iter", "degeneracy_tol"];
    match command {
        Command::Onsite | Command::Boundary | Command::DickeBoundary | Command::DickeSpectrum => &[],
        Command::Spectrum => &MINIMIZER,
        Command::Fluct => &[
            "grid_points",
            "newton_tol",
            "max_newton_iter",
            "degeneracy_tol",
            "kgrid_points",
        ],
        Command::Tc => &["tc_rel_tol", "t_max", "n_max", "truncation_tol"],
        Command::Compare => &[
            "grid_points",
            "newton_tol",
            "max_newton_iter",
            "degeneracy_tol",
            "root_rel_tol",
            "fd_steps",
            "fd_rel_tol",
        ],
        Command::EdCheck => &MINIMIZER,
    }
}

fn grid<T: Clone>(a: &[T], b: &[f64]) -> Vec<(T, f64)> {
    a.iter().flat_map(|x| b.iter().map(move |&y| (x.clone(), y))).collect()
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn jchm(cfg: &SweepConfig, delta: f64, mu: f64, hopping: f64) -> Result<ModelParams, String> {
    ModelParams::with_detuning(delta, mu, hopping, cfg.params.dim).map_err(err)
}

fn solve(n: u32, p: &ModelParams, solver: &SolverConfig) -> Result<MeanFieldSolution, String> {
    jchm_core::slave_boson::minimize_gutzwiller_with(&LobeContext::new(n, p), p, solver).map_err(err)
}

fn phase(sol: &MeanFieldSolution) -> Cell {
    if sol.is_superfluid() { "superfluid" } else { "mott" }.into()
}

fn onsite(cfg: &SweepConfig) -> Table {
    let items: Vec<((f64, f64), Branch)> = grid(&cfg.points("n"), &cfg.points("delta"))
        .into_iter()
        .flat_map(|nd| Branch::ALL.map(|b| (nd, b)))
        .collect();
    let rows = par::map(cfg.execution, &items, |&((n, delta), branch)| {
        let values = (|| -> Values {
            let p = jchm(cfg, delta, cfg.params.mu, 0.0)?;
            let n = n as u32;
            let level = PolaritonLevel::new(n, branch, &p).map_err(err)?;
            let f = if n == 0 {
                0.0
            } else {
                hopping_element(n, branch, Branch::Lower, &p).map_err(err)?
            };
            Ok(vec![
                level.energy.into(),
                level.mixing_angle.into(),
                level.chi_n.into(),
                f.into(),
                hubbard_u(&p, branch).into(),
            ])
        })();
        Row::new(
            vec![Cell::Int(n as i64), delta.into(), branch.to_string().as_str().into()],
            values,
        )
    });
    Table {
        key_columns: vec!["n", "delta_over_g", "branch"],
        value_columns: vec![
            "energy_over_g",
            "mixing_angle",
            "chi_n_over_g",
            "f_to_lower",
            "hubbard_u_over_g",
        ],
        rows,
        plot: ("delta_over_g", vec!["energy_over_g"]),
    }
}

fn boundary(cfg: &SweepConfig) -> Table {
    let items: Vec<(f64, f64, f64, Branch)> = grid(&grid(&cfg.points("n"), &cfg.points("delta")), &cfg.points("J"))
        .into_iter()
        .flat_map(|((n, delta), j)| Branch::ALL.map(|b| (n, delta, j, b)))
        .collect();
    let rows = par::map(cfg.execution, &items, |&(n, delta, j, branch)| {
        let values = (|| -> Values {
            let p = jchm(cfg, delta, 0.0, j)?;
            let mu = mott_boundary(&LobeContext::new(n as u32, &p), &p, branch).map_err(err)?;
            Ok(vec![mu.into()])
        })();
        let keys = vec![
            Cell::Int(n as i64),
            delta.into(),
            j.into(),
            branch.to_string().as_str().into(),
        ];
        Row::new(keys, values)
    });
    Table {
        key_columns: vec!["n", "delta_over_g", "J_over_g", "branch"],
        value_columns: vec!["mu_minus_omega_c_over_g"],
        rows,
        plot: ("J_over_g", vec!["mu_minus_omega_c_over_g"]),
    }
}

fn spectrum(cfg: &SweepConfig) -> Result<Table, CliError> {
    let fp = &cfg.params;
    let (mu, scale) = if fp.relative_to_tip {
        let p = ModelParams::with_detuning(fp.delta, fp.mu, 0.0, fp.dim)?;
        let tip = lobe_tip(&LobeContext::new(fp.n, &p), &p)?;
        (tip.mu, tip.hopping)
    } else {
        (fp.mu, 1.0)
    };
    let js: Vec<f64> = cfg.points("J").iter().map(|x| x * scale).collect();
    let sols = par::map(cfg.execution, &js, |&j| {
        jchm(cfg, fp.delta, mu, j).and_then(|p| solve(fp.n, &p, &cfg.solver))
    });
    let items = grid(&(0..js.len()).collect::<Vec<_>>(), &cfg.points("k"));
    let rows = par::map(cfg.execution, &items, |&(i, k)| {
        let values = sols[i].clone().and_then(|sol| {
            let mut kv = vec![0.0; fp.dim as usize];
            kv[0] = k;
            let m = bogoliubov_spectrum(&kv, &sol).map_err(err)?;
            Ok(vec![mu.into(), m.minus.into(), m.plus.into(), phase(&sol)])
        });
        Row::new(vec![js[i].into(), k.into()], values)
    });
    Ok(Table {
        key_columns: vec!["J_over_g", "k"],
        value_columns: vec![
            "mu_minus_omega_c_over_g",
            "eps_minus_over_g",
            "eps_plus_over_g",
            "phase",
        ],
        rows,
        plot: ("k", vec!["eps_minus_over_g", "eps_plus_over_g"]),
    })
}

fn fluct(cfg: &SweepConfig) -> Table {
    let fp = &cfg.params;
    let kgrid = KGrid::new(cfg.solver.kgrid_points);
    let items = grid(&cfg.points("mu"), &cfg.points("J"));
    let rows = par::map(cfg.execution, &items, |&(mu, j)| {
        let values = (|| -> Values {
            let sol = solve(fp.n, &jchm(cfg, fp.delta, mu, j)?, &cfg.solver)?;
            // Rows are already spread over threads.
            let f = fluctuation_energy(&sol, &kgrid, Execution::Sequential).map_err(err)?;
            Ok(vec![
                sol.theta.into(),
                sol.phi_c.into(),
                sol.e_var.into(),
                f.shift.into(),
                f.zero_point.into(),
                f.total.into(),
                (sol.e_var + f.total).into(),
            ])
        })();
        Row::new(vec![mu.into(), j.into()], values)
    });
    Table {
        key_columns: vec!["mu_minus_omega_c_over_g", "J_over_g"],
        value_columns: vec![
            "theta",
            "phi_c",
            "e_var_over_g",
            "shift_over_g",
            "zero_point_over_g",
            "correction_over_g",
            "e_total_over_g",
        ],
        rows,
        plot: ("mu_minus_omega_c_over_g", vec!["e_var_over_g", "e_total_over_g"]),
    }
}

fn dicke_boundary(cfg: &SweepConfig) -> Table {
    let items: Vec<(f64, &str)> = cfg
        .points("delta_d")
        .into_iter()
        .flat_map(|d| ["vacuum", "lobe_lower", "lobe_upper"].map(|kind| (d, kind)))
        .collect();
    let rows = par::map(cfg.execution, &items, |&(delta_d, kind)| {
        let values = match kind {
            "vacuum" => Ok(vec![dicke::vacuum_boundary_t0(delta_d, 1.0).into()]),
            _ => dicke::boundary_t0(delta_d, 1.0)
                .map(|(lo, hi)| vec![if kind == "lobe_lower" { lo } else { hi }.into()])
                .map_err(err),
        };
        Row::new(vec![delta_d.into(), kind.into()], values)
    });
    Table {
        key_columns: vec!["delta_d_over_g", "boundary"],
        value_columns: vec!["mu_d_over_g"],
        rows,
        plot: ("delta_d_over_g", vec!["mu_d_over_g"]),
    }
}

fn dicke_spectrum(cfg: &SweepConfig) -> Table {
    let fp = &cfg.params;
    let items = grid(&cfg.points("mu_d"), &cfg.points("k"));
    let rows = par::map(cfg.execution, &items, |&(mu_d, k)| {
        let values = (|| -> Values {
            let d = DickeParams::new(mu_d, fp.delta_d, 1.0, fp.hopping, 0.0).map_err(err)?;
            let sol = dicke::condensate_t0(&d).map_err(err)?;
            let m = dicke::spectrum(k, &d, &sol).map_err(err)?;
            let phase = match sol.phase {
                dicke::DickePhase::Normal => "normal",
                dicke::DickePhase::Superradiant => "superradiant",
            };
            Ok(vec![sol.psi0_sq.into(), m.minus.into(), m.plus.into(), phase.into()])
        })();
        Row::new(vec![mu_d.into(), k.into()], values)
    });
    Table {
        key_columns: vec!["mu_d_over_g", "k"],
        value_columns: vec!["psi0_sq", "eps_minus_over_g", "eps_plus_over_g", "phase"],
        rows,
        plot: ("k", vec!["eps_minus_over_g", "eps_plus_over_g"]),
    }
}

fn tc(cfg: &SweepConfig) -> Table {
    let fp = &cfg.params;
    let items = grid(&grid(&cfg.points("delta_d"), &cfg.points("J")), &cfg.points("mu_d"));
    let rows = par::map(cfg.execution, &items, |&((delta_d, j), mu_d)| {
        let values = (|| -> Values {
            let d = DickeParams::new(mu_d, delta_d, 1.0, j, 0.0).map_err(err)?;
            let td = dicke::tc_solve(&d, &cfg.solver).map_err(err)?;
            let p = lattice_params(mu_d, delta_d, 1.0, fp.dim, j).map_err(err)?;
            let tj = critical_temperature(&p, &cfg.solver).map_err(err)?;
            Ok(vec![
                tj.temperature.into(),
                td.tc.into(),
                (tj.capped || td.capped).into(),
                (tj.truncation_weight > cfg.solver.truncation_tol).into(),
            ])
        })();
        Row::new(vec![delta_d.into(), j.into(), mu_d.into()], values)
    });
    Table {
        key_columns: vec!["delta_d_over_g", "J_over_g", "mu_d_over_g"],
        value_columns: vec!["Tc_jchm_over_g", "Tc_dicke_over_g", "capped", "truncated"],
        rows,
        plot: ("mu_d_over_g", vec!["Tc_jchm_over_g", "Tc_dicke_over_g"]),
    }
}

fn compare(cfg: &SweepConfig) -> Table {
    let fp = &cfg.params;
    let js = cfg.points("J");
    let mu_grid = cfg.points("mu_d");
    let row = |q: &str, j: f64, sb: f64, reference: f64| {
        Row::new(
            vec![q.into(), j.into()],
            Ok(vec![sb.into(), reference.into(), (sb - reference).abs().into()]),
        )
    };
    let failed = |q: &str, j: f64, e: String| Row::new(vec![q.into(), j.into()], Err(e));

    let per_j = par::map(cfg.execution, &js, |&j| {
        let mut rows = Vec::new();
        match sb_tip(1.0, fp.dim, j, &cfg.solver) {
            Ok((d, m)) => {
                rows.push(row("tip_delta_d", j, d, -2.0));
                rows.push(row("tip_mu_d", j, m, -1.0));
            }
            Err(e) => {
                rows.push(failed("tip_delta_d", j, err(&e)));
                rows.push(failed("tip_mu_d", j, err(e)));
            }
        }
        match sound_velocity_match(1.0, fp.dim, j, &cfg.solver) {
            Ok(m) => {
                rows.push(row("tip_sound_velocity_vs_sqrt_jg", j, m.sb, m.dicke));
                rows.push(row("tip_sound_velocity_vs_formula", j, m.sb, m.formula));
            }
            Err(e) => {
                rows.push(failed("tip_sound_velocity_vs_sqrt_jg", j, err(&e)));
                rows.push(failed("tip_sound_velocity_vs_formula", j, err(e)));
            }
        }
        rows.push(
            match boundary_sup_error(1.0, fp.dim, j, &mu_grid, &cfg.solver, Execution::Sequential) {
                Ok(e) => row("boundary_sup_error", j, e, 0.0),
                Err(e) => failed("boundary_sup_error", j, err(e)),
            },
        );
        rows
    });
    let mut rows: Vec<Row> = per_j.into_iter().flatten().collect();

    let extrapolated = |q: &str, res: Result<f64, String>, reference: f64| match res {
        Ok(v) => row(q, f64::INFINITY, v, reference),
        Err(e) => failed(q, f64::INFINITY, e),
    };
    match lobe_tip_match(1.0, fp.dim, &js, &cfg.solver, cfg.execution) {
        Ok(m) => {
            rows.push(extrapolated(
                "tip_delta_d",
                Ok(m.delta_d.extrapolated),
                m.delta_d.dicke_value,
            ));
            rows.push(extrapolated("tip_mu_d", Ok(m.mu_d.extrapolated), m.mu_d.dicke_value));
        }
        Err(e) => {
            rows.push(extrapolated("tip_delta_d", Err(err(&e)), -2.0));
            rows.push(extrapolated("tip_mu_d", Err(err(e)), -1.0));
        }
    }
    match amplitude_gap_match(fp.delta_d, 1.0, fp.dim, &js, cfg.execution) {
        Ok(c) => {
            for (&j, &v) in c.j_values.iter().zip(&c.sb_values) {
                rows.push(row("amplitude_gap", j, v, c.dicke_value));
            }
            rows.push(extrapolated("amplitude_gap", Ok(c.extrapolated), c.dicke_value));
        }
        Err(e) => rows.push(extrapolated("amplitude_gap", Err(err(e)), f64::NAN)),
    }
    Table {
        key_columns: vec!["quantity", "J_over_g"],
        value_columns: vec!["slave_boson", "reference", "abs_error"],
        rows,
        plot: ("J_over_g", vec!["abs_error"]),
    }
}

fn ed_check(cfg: &SweepConfig) -> Table {
    let fp = &cfg.params;
    let items = grid(&grid(&cfg.points("delta"), &cfg.points("mu")), &cfg.points("J"));
    let rows = par::map(cfg.execution, &items, |&((delta, mu), j)| {
        let values = (|| -> Values {
            let p = ModelParams::with_detuning(delta, mu, j, 1).map_err(err)?;
            let spec = LatticeSpec::new(2, fp.ed_photon_cutoff, Geometry::Periodic, p).map_err(err)?;
            let gs = ground_state(&spec).map_err(err)?;
            let e_var = minimize_gutzwiller(&LobeContext::new(fp.n, &p), &p).map_err(err)?.e_var;
            let bound = 2.0 * e_var;
            Ok(vec![
                gs.energy.into(),
                bound.into(),
                (bound - gs.energy).into(),
                gs.filling.into(),
                gs.cutoff_converged.into(),
                (gs.energy <= bound + 1e-12 * (1.0 + bound.abs())).into(),
            ])
        })();
        Row::new(vec![delta.into(), mu.into(), j.into()], values)
    });
    Table {
        key_columns: vec!["delta_over_g", "mu_minus_omega_c_over_g", "J_over_g"],
        value_columns: vec![
            "e_exact_over_g",
            "two_e_var_over_g",
            "margin_over_g",
            "filling",
            "cutoff_converged",
            "bound_holds",
        ],
        rows,
        plot: ("J_over_g", vec!["margin_over_g"]),
    }
}
