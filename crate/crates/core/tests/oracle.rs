use hartmann_susy::oracle::{solve_fullline, solve_radial_with, Grid, Tolerance};
use hartmann_susy::susy_fullline::morse_partner_potentials;

fn ratio(errors: &[f64]) -> Vec<f64> {
    errors.windows(2).map(|w| w[0] / w[1]).collect()
}

#[test]
fn radial_solver_is_second_order() {
    let exact = -0.5 / 4.0;
    let loose = Tolerance::Relative(1e-1);
    let mut errors = Vec::new();
    for n in [2000, 3999, 7997] {
        let grid = Grid::new(1e-6, 60.0, n).unwrap();
        let e = solve_radial_with(1.0, 1.0, &grid, 1, loose)
            .unwrap()
            .eigenvalues[0];
        errors.push((e - exact).abs());
    }
    for r in ratio(&errors) {
        assert!((r - 4.0).abs() <= 0.5, "ratio {r}");
    }
}

/// `u ~ r^{L+1}` is not smooth at the origin for small or fractional `L`;
/// the order must not degrade there.
#[test]
fn small_labels_stay_second_order() {
    let loose = Tolerance::Relative(1e-1);
    for l in [0.0f64, 0.05, 0.3, 0.5] {
        let exact = -0.5 / (l + 1.0).powi(2);
        let mut errors = Vec::new();
        for n in [2000, 3999, 7997] {
            let grid = Grid::new(1e-6, 60.0, n).unwrap();
            let e = solve_radial_with(l, 1.0, &grid, 1, loose)
                .unwrap()
                .eigenvalues[0];
            errors.push((e - exact).abs());
        }
        for r in ratio(&errors) {
            assert!((r - 4.0).abs() <= 0.5, "L = {l}: ratio {r}");
        }
    }
}

#[test]
fn morse_solver_is_second_order() {
    let (v1, _) = morse_partner_potentials(3.0);
    let loose = Tolerance::Absolute(1e-1);
    let mut errors = Vec::new();
    for n in [500, 999, 1997] {
        let grid = Grid::new(2.2 - 12.0, 2.2 + 6.0, n).unwrap();
        let e = solve_fullline(&v1, &grid, 1, None, loose)
            .unwrap()
            .eigenvalues[0];
        errors.push(e.abs());
    }
    for r in ratio(&errors) {
        assert!((r - 4.0).abs() <= 0.5, "ratio {r}");
    }
}

#[test]
fn eigenvectors_are_trapezoid_normalized() {
    let grid = Grid::radial_default(0.0, 1.0, 2.0).unwrap();
    let res = solve_radial_with(0.0, 1.0, &grid, 2, Tolerance::EIGENVALUE).unwrap();
    for v in &res.eigenvectors {
        let norm: f64 = v.iter().map(|x| x * x).sum::<f64>() * grid.spacing();
        assert!((norm - 1.0).abs() < 1e-12);
        assert_eq!(v[0], 0.0);
        assert_eq!(*v.last().unwrap(), 0.0);
    }
    assert!(res.eigenvalues.windows(2).all(|w| w[0] < w[1]));
    assert_eq!(res.convergence_estimate, res.doubling_shifts[0]);
}

/// On a fixed 8000-point grid the s-wave values are within 1e-4, but one
/// doubling still moves them by more than a tenth of that, so the default
/// gate refuses them; a looser gate accepts the same numbers.
#[test]
fn fixed_grid_values() {
    let grid = Grid::new(1e-4, 60.0, 8000).unwrap();
    assert!(matches!(
        solve_radial_with(0.0, 1.0, &grid, 3, Tolerance::EIGENVALUE),
        Err(hartmann_susy::Error::NonConvergence { .. })
    ));
    let res = solve_radial_with(0.0, 1.0, &grid, 3, Tolerance::Relative(1e-3)).unwrap();
    for (n, e) in res.eigenvalues.iter().enumerate() {
        let exact = -0.5 / ((n + 1) as f64).powi(2);
        assert!(((e - exact) / exact).abs() < 1e-4, "n = {}: {e}", n + 1);
    }

    let l = 2f64.sqrt();
    let res = solve_radial_with(l, 1.0, &grid, 1, Tolerance::EIGENVALUE).unwrap();
    let exact = -0.5 / (1.0 + l).powi(2);
    assert!(((res.eigenvalues[0] - exact) / exact).abs() < 1e-4);
}
