mod support;

use std::f64::consts::{FRAC_PI_2, PI};

use ctqw_core::{
    analytic_probability, analytic_wavefunction, survival_at, survival_exact,
    survival_mean_asymptotic, LatticeWindow, WalkParams64,
};
use proptest::prelude::*;
use support::series::bessel_j_series;

fn params(gamma: f64, alpha: f64, d: f64) -> WalkParams64 {
    WalkParams64::new(gamma, alpha, d).unwrap()
}

#[test]
fn survival_examples_against_series_oracle() {
    let j0 = bessel_j_series(0, 2.0);
    let j1 = bessel_j_series(1, 2.0);
    let j2 = bessel_j_series(2, 2.0);
    let fine = survival_at(&params(1.0, FRAC_PI_2, 1.0), 1.0).unwrap();
    assert!((fine - (j0 + j2).powi(2)).abs() < 1e-15);
    assert!((fine - j1 * j1).abs() < 1e-15);
    let local = survival_at(&params(1.0, 0.3, 0.0), 1.0).unwrap();
    assert!((local - (j0 * j0 + 2.0 * j1 * j1)).abs() < 1e-15);
}

#[test]
fn oscillation_averaged_survival_follows_mean_law() {
    // Trapezoid average of P·t over γt ∈ [200, 400].
    let times: Vec<f64> = (0..=40_000).map(|i| 200.0 + 0.005 * i as f64).collect();
    for &(gamma, alpha, d) in &[
        (1.0, 0.3, 0.7),
        (1.0, 0.0, 0.5),
        (1.0, 1.0, 0.25),
        (1.0, 0.0, 1.0),
    ] {
        let p = params(gamma, alpha, d);
        let curve = survival_exact(&p, &times).unwrap();
        let pt: Vec<f64> = times
            .iter()
            .zip(curve.values())
            .map(|(t, v)| t * v)
            .collect();
        let integral: f64 = pt.windows(2).map(|w| 0.005 * (w[0] + w[1]) / 2.0).sum();
        let avg = integral / 200.0;
        let law = survival_mean_asymptotic(&p, 1.0).unwrap();
        assert!(
            (avg / law - 1.0).abs() < 0.02,
            "D = {d}, α = {alpha}: {avg} vs {law}"
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn unitarity(alpha in -PI..PI, d in 0.0f64..=1.0, gt in 0.0f64..200.0) {
        let p = params(1.0, alpha, d);
        let w = LatticeWindow::light_cone(1.0, gt);
        let s = analytic_wavefunction(&p, w, gt).unwrap();
        prop_assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn survival_is_three_site_sum(gamma in 0.2f64..3.0, alpha in -PI..PI, d in 0.0f64..=1.0, t in 0.0f64..40.0) {
        let p = params(gamma, alpha, d);
        let w = LatticeWindow::light_cone(gamma, t);
        let s = analytic_wavefunction(&p, w, t).unwrap();
        let direct = s.probability(-1) + s.probability(0) + s.probability(1);
        let closed = survival_at(&p, t).unwrap();
        prop_assert!((direct - closed).abs() < 1e-12);
        prop_assert!((-1e-12..=1.0 + 1e-12).contains(&closed));
    }

    #[test]
    fn fine_tuned_collapse(m in -2i32..=2, gt in 0.01f64..300.0) {
        let p = params(1.0, FRAC_PI_2 + f64::from(m) * PI, 1.0);
        let j1 = ctqw_core::bessel_row(2.0 * gt, 1).unwrap().get(1);
        let collapsed = j1 * j1 / (gt * gt);
        prop_assert!((survival_at(&p, gt).unwrap() - collapsed).abs() < 1e-12);
    }

    #[test]
    fn reflection_symmetry(alpha in -PI..PI, d in 0.0f64..=1.0, gt in 0.0f64..60.0) {
        let w = LatticeWindow::light_cone(1.0, gt);
        let plus = analytic_probability(&params(1.0, alpha, d), w, gt).unwrap();
        let minus = analytic_probability(&params(1.0, -alpha, d), w, gt).unwrap();
        let n = plus.len();
        for i in 0..n {
            prop_assert!((plus[i] - minus[n - 1 - i]).abs() < 1e-12);
        }
    }

    #[test]
    fn periodic_in_alpha(alpha in -PI..PI, d in 0.0f64..=1.0, gt in 0.0f64..60.0) {
        let w = LatticeWindow::light_cone(1.0, gt);
        let a = analytic_probability(&params(1.0, alpha, d), w, gt).unwrap();
        let b = analytic_probability(&params(1.0, alpha + 2.0 * PI, d), w, gt).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-12);
        }
        let sa = survival_at(&params(1.0, alpha, d), gt).unwrap();
        let sb = survival_at(&params(1.0, alpha - 2.0 * PI, d), gt).unwrap();
        prop_assert!((sa - sb).abs() < 1e-14);
    }
}
