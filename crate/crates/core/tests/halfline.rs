mod common;

use hartmann_susy::model::{allowed_l_values, energy_scaled};
use hartmann_susy::oracle::Tolerance;
use hartmann_susy::oracle::{solve_radial, Grid};
use hartmann_susy::radial_forms::Ladder;
use hartmann_susy::susy_halfline::{
    build_eigenfunction, build_eigenstate, oracle_overlap, radial_r, spectrum, GridOverride,
};

const SECTORS: [f64; 4] = [0.0, 0.5, 1.0, 2.3];

#[test]
fn eigen_residual_is_symbolically_small() {
    for m in SECTORS {
        for gamma in [0.5, 1.0, 3.0] {
            for level in 1..=4 {
                let n = m + level as f64;
                for l in allowed_l_values(n, m).unwrap() {
                    let u = build_eigenfunction(n, l, gamma).unwrap();
                    let hu = u.apply_radial_hamiltonian(l, gamma).unwrap();
                    let residual = hu.try_sub(&u.scale(energy_scaled(n, gamma))).unwrap();
                    let r = if residual.is_zero() {
                        0.0
                    } else {
                        residual.norm().unwrap()
                    };
                    assert!(r <= 1e-10, "N={n} L={l} γ={gamma}: {r:e}");
                }
            }
        }
    }
}

#[test]
fn orthonormal_at_fixed_l() {
    for m in SECTORS {
        let gamma = 1.3;
        for l_step in 0..3 {
            let l = m + l_step as f64;
            let states: Vec<_> = (0..(4 - l_step))
                .map(|k| build_eigenfunction(l + 1.0 + k as f64, l, gamma).unwrap())
                .collect();
            for (i, a) in states.iter().enumerate() {
                for (j, b) in states.iter().enumerate() {
                    let expected = if i == j { 1.0 } else { 0.0 };
                    let got = a.inner_product(b).unwrap();
                    assert!((got - expected).abs() <= 1e-8, "L={l} ({i},{j}): {got}");
                }
            }
        }
    }
}

#[test]
fn raising_and_lowering_round_trip() {
    // A⁺A⁻ u_{N,L} = (ε_N + shift_L) u_{N,L}.
    for m in SECTORS {
        let gamma = 0.8;
        let n = m + 3.0;
        for l in allowed_l_values(n, m).unwrap() {
            let u = build_eigenfunction(n, l, gamma).unwrap();
            let back = u
                .apply_ladder(l, gamma, Ladder::Lower)
                .unwrap()
                .apply_ladder(l, gamma, Ladder::Raise)
                .unwrap();
            let k = gamma / (l + 1.0);
            let factor = energy_scaled(n, gamma) + 0.5 * k * k;
            let diff = back.try_sub(&u.scale(factor)).unwrap();
            let err = if diff.is_zero() {
                0.0
            } else {
                diff.norm().unwrap()
            };
            assert!(
                err <= 1e-10 * factor.abs().max(1e-300) + 1e-14,
                "N={n} L={l}: {err:e}"
            );
        }
    }
}

#[test]
fn raising_maps_upper_state_down() {
    for m in SECTORS {
        let gamma = 2.0;
        let n = m + 4.0;
        for l in allowed_l_values(n, m)
            .unwrap()
            .into_iter()
            .filter(|&l| l >= m + 1.0 - 1e-9)
        {
            let upper = build_eigenfunction(n, l, gamma).unwrap();
            let lowered_l = l - 1.0;
            let target = build_eigenfunction(n, lowered_l, gamma).unwrap();
            let raised = upper
                .apply_ladder(lowered_l, gamma, Ladder::Raise)
                .unwrap()
                .normalize()
                .unwrap();
            let overlap = raised.inner_product(&target).unwrap().abs();
            assert!(1.0 - overlap <= 1e-10);
        }
    }
}

#[test]
fn oracle_eigenvectors_match_symbolic_states() {
    for m in [0.0, 0.5, std::f64::consts::SQRT_2] {
        let gamma = 1.0;
        let n_max = m + 3.0;
        let mut l = m;
        while l <= n_max - 1.0 + 1e-9 {
            let k = (n_max - l).round() as usize;
            let grid = Grid::radial_default(l, gamma, n_max).unwrap();
            let solved = solve_radial(l, gamma, &grid, k).unwrap();
            for idx in 0..k {
                let n = l + 1.0 + idx as f64;
                let u = build_eigenfunction(n, l, gamma).unwrap();
                let overlap = oracle_overlap(&solved, idx, &u).unwrap();
                assert!(overlap >= 1.0 - 1e-5, "N={n} L={l}: {overlap}");
            }
            l += 1.0;
        }
    }
}

#[test]
fn documented_radial_functions() {
    let r = radial_r(1.0, 0.0, 1.0).unwrap();
    assert!((r.evaluate(1.0).unwrap() - 2.0 / 1f64.exp()).abs() < 1e-14);
    let r = radial_r(2.0, 1.0, 1.0).unwrap();
    let expected = 1.0 / 24f64.sqrt() * (-0.5f64).exp();
    assert!((r.evaluate(1.0).unwrap().abs() - expected).abs() < 1e-14);
    let got = radial_r(2.5, 0.5, 1.0).unwrap();
    let want = common::second_level_bottom(0.5, 1.0);
    for x in [0.1, 1.0, 2.5, 7.0] {
        assert!((got.evaluate(x).unwrap().abs() - want.eval(x).abs()).abs() < 1e-12);
    }
}

#[test]
fn closed_forms_pointwise() {
    for m in SECTORS {
        for gamma in [0.5, 1.0, 3.0] {
            let checks = [
                (m + 1.0, m, common::lowest_rung(m, gamma)),
                (m + 2.0, m + 1.0, common::second_level_top(m, gamma)),
                (m + 2.0, m, common::second_level_bottom(m, gamma)),
            ];
            for (n, l, want) in checks {
                let got = radial_r(n, l, gamma).unwrap();
                let sign = got.evaluate(0.3).unwrap().signum() * want.eval(0.3).signum();
                for x in [0.05, 0.5, 1.7, 4.0, 9.0] {
                    let (g, w) = (sign * got.evaluate(x).unwrap(), want.eval(x));
                    assert!((g - w).abs() <= 1e-10 * w.abs().max(1e-12));
                }
            }
        }
    }
}

#[test]
fn spectrum_with_oracle() {
    let mut report = spectrum(std::f64::consts::SQRT_2, 2, 2.0).unwrap();
    report
        .attach_oracle(GridOverride::default(), Tolerance::EIGENVALUE)
        .unwrap();
    assert_eq!(report.rows.len(), 3);
    for row in &report.rows {
        assert!(row.relative_deviation().unwrap() <= 1e-4, "{row:?}");
    }
    let e = -2.0 / (1.0 + std::f64::consts::SQRT_2).powi(2);
    assert!((report.rows[0].energy_analytic - e).abs() < 1e-15);
}

#[test]
fn trace_records_descending_ladder() {
    let st = build_eigenstate(4.0, 1.0, 1.0).unwrap();
    let steps = describe(&st.trace);
    assert_eq!(steps, "lowest_rung(3) raise(2) raise(1) normalize");
}

fn describe(trace: &[hartmann_susy::susy_halfline::LadderStep]) -> String {
    use hartmann_susy::susy_halfline::LadderStep;
    trace
        .iter()
        .map(|s| match s {
            LadderStep::LowestRung { l } => format!("lowest_rung({l})"),
            LadderStep::Raise { l } => format!("raise({l})"),
            LadderStep::Normalize => "normalize".to_string(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}
