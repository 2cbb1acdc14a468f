// Copyright 2026 the Elastica Authors
// SPDX-License-Identifier: Apache-2.0

//! Straightening-regime checks: minimiser classification, rescaled
//! boundary-layer convergence and the length map.

use core::f64::consts::{FRAC_PI_2, PI};

use elastica_core::solver::{solve, ClampedProblem, SolverConfig};
use elastica_core::straighten::{
    borderline_profile, epsilon_scale, length_map_scan, rescaled_convergence_check,
    straighten_solve, ShapeClass, StraighteningCase,
};
use elastica_core::{family, LengthMode};

fn case(ell: f64, theta0: f64, theta1: f64) -> StraighteningCase {
    StraighteningCase { length: 1.0, ell, theta0, theta1 }
}

#[test]
fn classification_of_straightened_minimisers() {
    let config = SolverConfig { n: 400, ..Default::default() };

    // opposite-sign angles: no inflection, monotone angle
    let (_, class) = straighten_solve(&case(0.99, PI / 3.0, -PI / 3.0), &config).unwrap();
    assert_eq!(class, ShapeClass::MonotoneAngle);

    // same-sign angles: monotone curvature with exactly one zero
    let (_, class) = straighten_solve(&case(0.99, PI / 3.0, PI / 3.0), &config).unwrap();
    assert_eq!(class, ShapeClass::MonotoneCurvatureOneInflection);

    // far outside the straightening regime: any class is permitted
    let (_, class) = straighten_solve(&case(0.5, PI / 3.0, PI / 3.0), &config).unwrap();
    eprintln!("ell/L = 0.5 classifies as {class:?}");
}

#[test]
fn penalised_minimiser_has_one_curvature_sign_change() {
    let problem = ClampedProblem {
        ell_x: 0.5,
        ell_y: 0.0,
        theta0: 0.8,
        theta1: 0.8,
        mode: LengthMode::Penalised(100.0),
    };
    let report = solve(&problem, &SolverConfig { n: 500, ..Default::default() }).unwrap();
    assert!(report.converged);
    let k = report.curve.segment_curvatures();
    let kmax = k.iter().fold(0.0_f64, |a, &v| a.max(v.abs()));
    let mut changes = 0;
    let mut last = 0.0_f64;
    for &v in &k {
        if v.abs() <= 1e-6 * kmax {
            continue;
        }
        if last != 0.0 && v.signum() != last {
            changes += 1;
        }
        last = v.signum();
    }
    assert_eq!(changes, 1, "curvature sign changes: {changes}");
}

#[test]
fn rescaled_profiles_converge_to_borderline_limit() {
    let config = SolverConfig { n: 800, ..Default::default() };
    let cases = [case(0.96, FRAC_PI_2, FRAC_PI_2), case(0.98, FRAC_PI_2, FRAC_PI_2), case(0.99, FRAC_PI_2, FRAC_PI_2)];
    let rows = rescaled_convergence_check(&cases, 3.0, &config).unwrap();
    for w in rows.windows(2) {
        assert!(
            w[1].sup_error < w[0].sup_error,
            "errors not decreasing: {rows:?}"
        );
    }

    // window 0 trivially matches at the shared starting data
    let zero = rescaled_convergence_check(&cases[..1], 0.0, &config).unwrap();
    assert!(zero[0].sup_error < 1e-12);

    // mirrored angles behave identically by reflection symmetry
    let mirrored = [case(0.96, -FRAC_PI_2, -FRAC_PI_2), case(0.98, -FRAC_PI_2, -FRAC_PI_2)];
    let rows_neg = rescaled_convergence_check(&mirrored, 3.0, &config).unwrap();
    for (a, b) in rows.iter().zip(&rows_neg) {
        assert!((a.sup_error - b.sup_error).abs() < 1e-9 + 1e-6 * a.sup_error);
    }
}

#[test]
fn length_map_scan_monotone_with_ratio_trend() {
    let config = SolverConfig { n: 800, ..Default::default() };
    let table = length_map_scan(FRAC_PI_2, FRAC_PI_2, 1.0, &[0.05, 0.02, 0.01], &config).unwrap();
    assert!(table.monotone, "{:?}", table.rows);
    // ratios drift towards the closed-form limit
    let errs: Vec<f64> =
        table.rows.iter().map(|r| (r.ratio - table.ratio_limit).abs()).collect();
    assert!(errs.last().unwrap() < &errs[0], "{errs:?}");
    assert!(errs.last().unwrap() / table.ratio_limit < 0.02);

    // the opposite-sign (convex) case runs identically
    let table = length_map_scan(PI / 3.0, -PI / 3.0, 1.0, &[0.05, 0.02], &config).unwrap();
    assert!(table.monotone);
}

#[test]
fn epsilon_scale_and_profile_sanity() {
    let eps = epsilon_scale(&case(0.99, FRAC_PI_2, FRAC_PI_2)).unwrap();
    assert!(eps > 0.0 && eps < 0.01);
    let profile = borderline_profile(FRAC_PI_2).unwrap();
    let p = family::eval(&profile, 0.0).unwrap();
    assert!((p.angle - FRAC_PI_2).abs() < 1e-12);
    // rejected degenerate cases
    assert!(epsilon_scale(&StraighteningCase {
        length: 1.0,
        ell: 1.0,
        theta0: 0.3,
        theta1: 0.3
    })
    .is_err());
    assert!(borderline_profile(0.0).is_err());
    assert!(borderline_profile(PI).is_err());
}
