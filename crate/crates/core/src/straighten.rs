// Copyright 2026 the Elastica Authors
// SPDX-License-Identifier: Apache-2.0

//! The straightening regime: clamped minimisation with chord length close
//! to the total length.
//!
//! Minimisers in this regime develop boundary layers of width
//!
//! ```text
//!   eps = (L - ell) / (4 sqrt(2) (sin^2(theta0/4) + sin^2(theta1/4)))
//! ```
//!
//! and, rescaled by `eps`, converge near each endpoint to a fixed
//! borderline profile: the arc-length curve starting at the origin with
//! angle `theta0` whose angle `sgn(theta0) * 4 atan(exp(-(u+u0)/sqrt(2)))`
//! decays to zero, where `u0 = -sqrt(2) ln tan(|theta0|/4)`. The length
//! map of the penalised problems `eps -> L(eps)` (with `lambda = 1/eps^2`)
//! is strictly increasing with `(L(eps) - ell)/eps` approaching the
//! denominator above.

use num_traits::Float;

use alloc::vec::Vec;

use crate::family::{Domain, FamilyKind, Isometry, PlacedCurve, Placement};
use crate::solver::{solve, solve_from, DiscreteCurve, SolveReport, SolverConfig};
use crate::{family, solver, Error, LengthMode, Result, Vec2};

use core::f64::consts::PI;

/// One straightening problem: clamped data with `0 < ell < L` and nonzero
/// end angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StraighteningCase {
    pub length: f64,
    pub ell: f64,
    pub theta0: f64,
    pub theta1: f64,
}

impl StraighteningCase {
    pub fn validate(&self) -> Result<()> {
        if !(self.length > 0.0) {
            return Err(Error::Domain { what: "length L", value: self.length });
        }
        if !(self.ell > 0.0 && self.ell < self.length) {
            return Err(Error::Domain { what: "ell (need 0 < ell < L)", value: self.ell });
        }
        for (name, a) in [("theta0", self.theta0), ("theta1", self.theta1)] {
            if !(a.abs() > 0.0 && a.abs() < PI) {
                return Err(Error::Domain { what: name, value: a });
            }
        }
        Ok(())
    }

    pub fn problem(&self) -> solver::ClampedProblem {
        solver::ClampedProblem {
            ell_x: self.ell,
            ell_y: 0.0,
            theta0: self.theta0,
            theta1: self.theta1,
            mode: LengthMode::FixedLength(self.length),
        }
    }
}

/// Boundary-layer width scale of the case.
pub fn epsilon_scale(case: &StraighteningCase) -> Result<f64> {
    case.validate()?;
    Ok((case.length - case.ell) / angle_factor(case.theta0, case.theta1))
}

/// The denominator `4 sqrt(2) (sin^2(theta0/4) + sin^2(theta1/4))`, which
/// is also the limit of `(L(eps) - ell)/eps`.
pub fn angle_factor(theta0: f64, theta1: f64) -> f64 {
    4.0 * 2.0_f64.sqrt() * ((theta0 / 4.0).sin().powi(2) + (theta1 / 4.0).sin().powi(2))
}

/// Offset `u0 = -sqrt(2) ln tan(|theta0|/4)`: where the profile's decaying
/// angle passes through `|theta0|`.
pub fn borderline_offset(theta0: f64) -> Result<f64> {
    if !(theta0.abs() > 0.0 && theta0.abs() < PI) {
        return Err(Error::Domain { what: "theta0", value: theta0 });
    }
    Ok(-(2.0_f64.sqrt()) * (theta0.abs() / 4.0).tan().ln())
}

/// The decaying boundary-layer angle `4 atan(exp(-u/sqrt(2)))`.
pub fn profile_angle(u: f64) -> f64 {
    4.0 * (-u / 2.0_f64.sqrt()).exp().atan()
}

/// The limit profile with initial angle `theta0`: a unit-multiplier
/// borderline curve placed so that it starts at the origin with angle
/// `theta0` and straightens towards the `+x` direction.
///
/// Expressed through the borderline family at scale `sqrt(2)`: the base
/// angle satisfies `4 atan(exp(-v)) = pi - theta_b(v)`, so the placement
/// composes a vertical reflection with a half-turn (for positive
/// `theta0`; the mirror image otherwise).
pub fn borderline_profile(theta0: f64) -> Result<PlacedCurve> {
    let u0 = borderline_offset(theta0)?;
    let positive = theta0 > 0.0;
    // angle pipeline: base theta_b -> (optional vertical reflection)
    // -> (+/- half turn), giving pi - theta_b for positive theta0 and
    // theta_b - pi for negative
    let iso = Isometry {
        reflect: false,
        rotation: if positive { PI } else { -PI },
        translation: Vec2::ZERO,
    };
    let placement = Placement {
        scale: 2.0_f64.sqrt(),
        shift: u0,
        vertical_offset: 0.0,
        vertical_reflect: positive,
        isometry: Some(iso),
    };
    let unanchored = PlacedCurve::new(
        FamilyKind::Borderline,
        placement,
        Domain::HalfInfinite { start: 0.0 },
    )?;
    // anchor the start at the origin (translation applies last)
    let start = family::eval(&unanchored, 0.0)?.position;
    let anchored = Placement { isometry: Some(Isometry { translation: -start, ..iso }), ..placement };
    PlacedCurve::new(FamilyKind::Borderline, anchored, Domain::HalfInfinite { start: 0.0 })
}

/// Shape classification of a straightening minimiser.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ShapeClass {
    /// Strictly monotone tangential angle (no inflection).
    MonotoneAngle,
    /// Strictly monotone curvature with exactly one sign change.
    MonotoneCurvatureOneInflection,
    Other,
}

fn strictly_monotone(values: &[f64], tol: f64) -> bool {
    let up = values.last().unwrap() >= values.first().unwrap();
    values.windows(2).all(|w| if up { w[1] >= w[0] - tol } else { w[1] <= w[0] + tol })
}

fn sign_changes(values: &[f64], dead_band: f64) -> usize {
    let mut count = 0;
    let mut last = 0.0_f64;
    for &v in values {
        if v.abs() <= dead_band {
            continue;
        }
        if last != 0.0 && v.signum() != last {
            count += 1;
        }
        last = v.signum();
    }
    count
}

/// Classify a discrete curve per the straightening dichotomy.
pub fn classify(curve: &DiscreteCurve) -> ShapeClass {
    let theta = &curve.theta;
    let span = theta.iter().fold(0.0_f64, |a, &t| a.max(t.abs())).max(1.0);
    if strictly_monotone(theta, 1e-9 * span) {
        return ShapeClass::MonotoneAngle;
    }
    let k = curve.segment_curvatures();
    let kmax = k.iter().fold(0.0_f64, |a, &v| a.max(v.abs())).max(1e-300);
    if strictly_monotone(&k, 1e-7 * kmax) && sign_changes(&k, 1e-6 * kmax) == 1 {
        return ShapeClass::MonotoneCurvatureOneInflection;
    }
    ShapeClass::Other
}

/// Solve the fixed-length clamped problem of the case and classify the
/// minimiser.
pub fn straighten_solve(
    case: &StraighteningCase,
    config: &SolverConfig,
) -> Result<(SolveReport, ShapeClass)> {
    case.validate()?;
    let report = solve(&case.problem(), config)?;
    if !report.converged {
        return Err(Error::NoConvergence { what: "straightening solve" });
    }
    let class = classify(&report.curve);
    Ok((report, class))
}

/// Sup distance between the `eps`-rescaled discrete minimiser and the
/// borderline profile on the window `[0, window]` of the rescaled arc
/// length.
fn rescaled_profile_error(
    report: &SolveReport,
    profile: &PlacedCurve,
    eps: f64,
    window: f64,
    grid: usize,
) -> Result<f64> {
    let positions = report.curve.positions();
    let h = report.curve.h;
    let mut sup = 0.0_f64;
    for i in 0..=grid {
        let sigma = window * i as f64 / grid as f64;
        let s = eps * sigma; // arc length on the unscaled curve
        let idx = (s / h).floor() as usize;
        if idx + 1 >= positions.len() {
            return Err(Error::Domain { what: "window exceeds curve", value: window });
        }
        let frac = s / h - idx as f64;
        let p = positions[idx] + (positions[idx + 1] - positions[idx]) * frac;
        let q = family::eval(profile, sigma)?.position;
        sup = sup.max((p * (1.0 / eps) - q).norm());
    }
    Ok(sup)
}

/// One row of the rescaled-convergence table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub ell: f64,
    pub eps: f64,
    pub sup_error: f64,
}

/// For a sequence of cases with `L - ell` decreasing, solve each problem,
/// rescale by its `eps`, and measure the sup distance to the borderline
/// profile of `theta0` on the fixed window `[0, window]`.
pub fn rescaled_convergence_check(
    cases: &[StraighteningCase],
    window: f64,
    config: &SolverConfig,
) -> Result<Vec<ConvergenceRow>> {
    if cases.is_empty() {
        return Err(Error::Domain { what: "case count", value: 0.0 });
    }
    let profile = borderline_profile(cases[0].theta0)?;
    let mut rows = Vec::with_capacity(cases.len());
    for case in cases {
        let eps = epsilon_scale(case)?;
        let report = solve(&case.problem(), config)?;
        if !report.converged {
            return Err(Error::NoConvergence { what: "rescaled convergence solve" });
        }
        let sup = rescaled_profile_error(&report, &profile, eps, window, 200)?;
        rows.push(ConvergenceRow { ell: case.ell, eps, sup_error: sup });
    }
    Ok(rows)
}

/// One row of the length-map scan.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScanRow {
    pub eps: f64,
    pub lambda: f64,
    /// Optimised total length `L(eps)`.
    pub length: f64,
    /// `(L(eps) - ell) / eps`.
    pub ratio: f64,
    pub converged: bool,
}

/// Scan result: rows in the given order plus the monotonicity verdict and
/// the closed-form limit of the ratio column.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanTable {
    pub rows: Vec<ScanRow>,
    /// Whether `L(eps)` was strictly increasing in `eps` across the grid.
    pub monotone: bool,
    /// `4 sqrt(2) (sin^2(theta0/4) + sin^2(theta1/4))`.
    pub ratio_limit: f64,
}

/// Solve the penalised problems `lambda = 1/eps^2` along a decreasing
/// `eps` grid, warm-starting each solve from the previous solution, and
/// record the length map.
pub fn length_map_scan(
    theta0: f64,
    theta1: f64,
    ell: f64,
    eps_grid: &[f64],
    config: &SolverConfig,
) -> Result<ScanTable> {
    if theta0 == 0.0 && theta1 == 0.0 {
        return Err(Error::Domain { what: "theta0*theta1", value: 0.0 });
    }
    if !(ell > 0.0) {
        return Err(Error::Domain { what: "ell", value: ell });
    }
    if eps_grid.is_empty() {
        return Err(Error::Domain { what: "eps grid size", value: 0.0 });
    }
    for w in eps_grid.windows(2) {
        if !(w[1] < w[0]) {
            return Err(Error::Domain { what: "eps grid (must decrease)", value: w[1] });
        }
    }

    let mut rows: Vec<ScanRow> = Vec::with_capacity(eps_grid.len());
    let mut warm: Option<DiscreteCurve> = None;
    for &eps in eps_grid {
        if !(eps > 0.0) {
            return Err(Error::Domain { what: "eps", value: eps });
        }
        let lambda = 1.0 / (eps * eps);
        let problem = solver::ClampedProblem {
            ell_x: ell,
            ell_y: 0.0,
            theta0,
            theta1,
            mode: LengthMode::Penalised(lambda),
        };
        let report = match warm.take() {
            Some(curve) => solve_from(&problem, config, curve)?,
            None => solve(&problem, config)?,
        };
        if !report.converged {
            return Err(Error::NoConvergence { what: "length-map scan solve" });
        }
        let length = report.curve.length();
        rows.push(ScanRow {
            eps,
            lambda,
            length,
            ratio: (length - ell) / eps,
            converged: report.converged,
        });
        warm = Some(report.curve);
    }

    // grid decreases, so lengths must decrease too (strictly)
    let monotone = rows.windows(2).all(|w| w[1].length < w[0].length);
    Ok(ScanTable { rows, monotone, ratio_limit: angle_factor(theta0, theta1) })
}
