// Copyright 2026 the Elastica Authors
// SPDX-License-Identifier: Apache-2.0

//! Free-boundary minimisers on parallel vertical support lines, and the
//! energy functionals.
//!
//! A free-boundary curve starts on the line `x = 0` with tangent `e1` and
//! ends on the line `x = ell` with tangent `+e1` (same) or `-e1`
//! (opposite); the endpoint heights are free. The unique minimisers are:
//!
//! * fixed length, same tangent: a half-period wavelike arc with `m`
//!   determined by `ell/L` through the `WaveFixed` map and scale
//!   `Lambda = L / 2K(m)`;
//! * fixed length, opposite tangent: a half-period orbitlike arc with `m`
//!   from the `OrbitFixed` map and `Lambda = L / K(m)` (a half-circle when
//!   `ell = 0`);
//! * penalised, same tangent: a horizontal segment for `ell > 0`, else a
//!   wavelike arc with `m` from the `WavePenalised` map and
//!   `Lambda = sqrt((4m-2)/lambda)`;
//! * penalised, opposite tangent: an orbitlike arc with `m` from the
//!   `OrbitPenalised` map and `Lambda = sqrt((4-2m)/lambda)` (a
//!   half-circle of radius `1/sqrt(lambda)` when `ell = 0`);
//! * the infinite-length limit: half of a borderline elastica at scale
//!   `Lambda = sqrt(2/lambda)`, minimising the adapted energy
//!   `B + lambda * integral(1 + cos theta)`.
//!
//! Constructors return the canonical representative of the equivalence
//! class under vertical translation and reflection: zero offset, no
//! reflection, zero shift.

use num_traits::Float;

use crate::family::{Domain, FamilyKind, PlacedCurve, Placement, SampledCurve};
use crate::maps::{invert, MapKind};
use crate::{family, Error, LengthMode, Result};

use core::f64::consts::PI;

/// Tangent condition at the far support line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Orientation {
    /// `gamma'(L) = +e1`.
    SameTangent,
    /// `gamma'(L) = -e1`.
    OppositeTangent,
}

/// Data of one free-boundary problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FreeBoundarySpec {
    /// Signed horizontal extent of the far support line.
    pub ell: f64,
    pub mode: LengthMode,
    pub orientation: Orientation,
}

impl FreeBoundarySpec {
    pub fn validate(&self) -> Result<()> {
        match self.mode {
            LengthMode::FixedLength(length) => {
                if !(length > 0.0) {
                    return Err(Error::Domain { what: "length L", value: length });
                }
                match self.orientation {
                    Orientation::SameTangent => {
                        if !(self.ell.abs() < length) {
                            return Err(Error::Infeasible { why: "need |ell| < L" });
                        }
                    }
                    Orientation::OppositeTangent => {
                        if !(self.ell > -length && self.ell <= 0.0) {
                            return Err(Error::Infeasible { why: "need -L < ell <= 0" });
                        }
                    }
                }
            }
            LengthMode::Penalised(lambda) => {
                if !(lambda > 0.0) {
                    return Err(Error::Domain { what: "lambda", value: lambda });
                }
                if self.orientation == Orientation::OppositeTangent && self.ell > 0.0 {
                    return Err(Error::Infeasible { why: "opposite tangent needs ell <= 0" });
                }
            }
        }
        Ok(())
    }
}

/// The unique free-boundary minimiser for `spec`, in canonical placement.
pub fn minimiser(spec: &FreeBoundarySpec) -> Result<PlacedCurve> {
    spec.validate()?;
    match (spec.mode, spec.orientation) {
        (LengthMode::FixedLength(length), Orientation::SameTangent) => {
            let m = invert(MapKind::WaveFixed, spec.ell / length)?;
            let k = crate::elliptic::complete_k(m)?;
            let scale = length / (2.0 * k);
            PlacedCurve::new(
                FamilyKind::Wavelike { m },
                Placement::scaled(scale),
                Domain::Finite { start: 0.0, end: length },
            )
        }
        (LengthMode::FixedLength(length), Orientation::OppositeTangent) => {
            if spec.ell == 0.0 {
                // Only a half-circle joins opposite tangents with zero extent.
                let scale = length / PI;
                return PlacedCurve::new(
                    FamilyKind::Circular,
                    Placement::scaled(scale),
                    Domain::Finite { start: 0.0, end: length },
                );
            }
            let m = invert(MapKind::OrbitFixed, spec.ell / length)?;
            let k = crate::elliptic::complete_k(m)?;
            let scale = length / k;
            PlacedCurve::new(
                FamilyKind::Orbitlike { m },
                Placement::scaled(scale),
                Domain::Finite { start: 0.0, end: length },
            )
        }
        (LengthMode::Penalised(lambda), Orientation::SameTangent) => {
            if spec.ell > 0.0 {
                // A horizontal segment of length ell; bending-free.
                return PlacedCurve::new(
                    FamilyKind::Linear,
                    Placement::identity(),
                    Domain::Finite { start: 0.0, end: spec.ell },
                );
            }
            let m = invert(MapKind::WavePenalised, spec.ell * lambda.sqrt())?;
            let k = crate::elliptic::complete_k(m)?;
            let scale = ((4.0 * m - 2.0) / lambda).sqrt();
            PlacedCurve::new(
                FamilyKind::Wavelike { m },
                Placement::scaled(scale),
                Domain::Finite { start: 0.0, end: 2.0 * k * scale },
            )
        }
        (LengthMode::Penalised(lambda), Orientation::OppositeTangent) => {
            if spec.ell == 0.0 {
                let scale = 1.0 / lambda.sqrt();
                return PlacedCurve::new(
                    FamilyKind::Circular,
                    Placement::scaled(scale),
                    Domain::Finite { start: 0.0, end: PI * scale },
                );
            }
            let m = invert(MapKind::OrbitPenalised, spec.ell * lambda.sqrt())?;
            let k = crate::elliptic::complete_k(m)?;
            let scale = ((4.0 - 2.0 * m) / lambda).sqrt();
            PlacedCurve::new(
                FamilyKind::Orbitlike { m },
                Placement::scaled(scale),
                Domain::Finite { start: 0.0, end: k * scale },
            )
        }
    }
}

/// The minimiser of the adapted energy: half of a borderline elastica at
/// scale `sqrt(2/lambda)`, on the half-infinite domain.
pub fn borderline_minimiser(lambda: f64) -> Result<PlacedCurve> {
    if !(lambda > 0.0) {
        return Err(Error::Domain { what: "lambda", value: lambda });
    }
    PlacedCurve::new(
        FamilyKind::Borderline,
        Placement::scaled((2.0 / lambda).sqrt()),
        Domain::HalfInfinite { start: 0.0 },
    )
}

/// Bending energy `B = integral k^2 ds` by composite trapezoid quadrature
/// on the sample grid.
pub fn bending_energy(curve: &SampledCurve) -> Result<f64> {
    let n = curve.curvatures.len();
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    let k = &curve.curvatures;
    let mut sum = 0.5 * (k[0] * k[0] + k[n - 1] * k[n - 1]);
    for ki in &k[1..n - 1] {
        sum += ki * ki;
    }
    Ok(sum * curve.h)
}

/// Length spanned by the sample grid.
pub fn length(curve: &SampledCurve) -> Result<f64> {
    if curve.len() < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: curve.len() });
    }
    Ok(curve.length())
}

/// Modified energy `B + lambda * L`.
pub fn modified_energy(curve: &SampledCurve, lambda: f64) -> Result<f64> {
    Ok(bending_energy(curve)? + lambda * length(curve)?)
}

/// Adapted energy of a finite sampled curve:
/// `B + lambda * integral (1 + cos theta) ds`.
///
/// The second integrand is the derivative of `s + x(s)`, so its integral
/// is evaluated exactly from the endpoints; on finite curves the identity
/// `adapted = modified + lambda * (x(L) - x(0))` holds to round-off.
pub fn adapted_energy(curve: &SampledCurve, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain { what: "lambda", value: lambda });
    }
    let n = curve.len();
    if n < 2 {
        return Err(Error::TooFewSamples { needed: 2, got: n });
    }
    let dx = curve.points[n - 1].x - curve.points[0].x;
    Ok(bending_energy(curve)? + lambda * (curve.length() + dx))
}

/// Adapted energy of a half-infinite placed curve.
///
/// The bending term is integrated by adaptive Simpson quadrature over
/// doubling windows, and the tail term uses the exact antiderivative
/// `s + x(s)`; windows grow until both increments fall below 1e-12 of the
/// total. A curve whose tail does not decay is rejected.
pub fn adapted_energy_infinite(curve: &PlacedCurve, lambda: f64) -> Result<f64> {
    if !(lambda > 0.0) {
        return Err(Error::Domain { what: "lambda", value: lambda });
    }
    let start = match curve.domain {
        Domain::HalfInfinite { start } => start,
        Domain::Finite { .. } => return Err(Error::Domain { what: "domain (need half-infinite)", value: 0.0 }),
    };
    let k2 = |s: f64| {
        let p = family::eval(curve, s).expect("inside half-infinite domain");
        p.curvature * p.curvature
    };
    let x_at = |s: f64| family::eval(curve, s).expect("inside domain").position.x;

    let x0 = x_at(start);
    let mut window = 8.0 * curve.placement.scale;
    let mut upper = start + window;
    let mut bending = adaptive_simpson(&k2, start, upper, 1e-11);
    let mut tail_term = (upper - start) + (x_at(upper) - x0);
    let mut prev_increment = f64::INFINITY;
    for _ in 0..40 {
        let next_upper = upper + window;
        let db = adaptive_simpson(&k2, upper, next_upper, 1e-12);
        let dt = (next_upper - upper) + (x_at(next_upper) - x_at(upper));
        let increment = db + lambda * dt;
        bending += db;
        tail_term += dt;
        upper = next_upper;
        window *= 2.0;
        if increment.abs() < 1e-12 * (1.0 + bending.abs() + lambda * tail_term.abs()) {
            return Ok(bending + lambda * tail_term);
        }
        if increment.abs() > prev_increment.abs() * 1.25 {
            return Err(Error::NonDecayingTail);
        }
        prev_increment = increment;
    }
    Err(Error::NonDecayingTail)
}

fn adaptive_simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    fn rec(
        f: &dyn Fn(f64) -> f64,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        tol: f64,
        depth: u32,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        if depth == 0 || (left + right - whole).abs() < 15.0 * tol {
            left + right + (left + right - whole) / 15.0
        } else {
            rec(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1)
                + rec(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1)
        }
    }
    let m = 0.5 * (a + b);
    rec(f, a, b, f(a), f(m), f(b), tol, 30)
}

/// One-sided second-order estimates of `k'` at the two ends of the grid.
pub fn noflux_check(curve: &SampledCurve) -> Result<(f64, f64)> {
    let n = curve.curvatures.len();
    if n < 4 {
        return Err(Error::TooFewSamples { needed: 4, got: n });
    }
    let k = &curve.curvatures;
    let h = curve.h;
    let at_start = (-3.0 * k[0] + 4.0 * k[1] - k[2]) / (2.0 * h);
    let at_end = (3.0 * k[n - 1] - 4.0 * k[n - 2] + k[n - 3]) / (2.0 * h);
    Ok((at_start, at_end))
}

/// Energies of a sampled curve, packaged for reports.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnergyReport {
    pub bending: f64,
    pub length: f64,
    /// `bending + lambda * length`, when a multiplier applies.
    pub modified: Option<f64>,
    /// Adapted energy, when a multiplier applies.
    pub adapted: Option<f64>,
}

/// Compute the standard energies of a sampled curve; `lambda` enables the
/// modified and adapted entries.
pub fn energy_report(curve: &SampledCurve, lambda: Option<f64>) -> Result<EnergyReport> {
    let bending = bending_energy(curve)?;
    let len = length(curve)?;
    let (modified, adapted) = match lambda {
        Some(l) => (Some(bending + l * len), Some(adapted_energy(curve, l)?)),
        None => (None, None),
    };
    Ok(EnergyReport { bending, length: len, modified, adapted })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::family::{eval, sample, truncated, BORDERLINE_WINDOW};
    use crate::maps::{forward, m_zero};

    #[test]
    fn fixed_same_ell_zero_is_figure_eight_half() {
        let spec = FreeBoundarySpec {
            ell: 0.0,
            mode: LengthMode::FixedLength(1.0),
            orientation: Orientation::SameTangent,
        };
        let curve = minimiser(&spec).unwrap();
        match curve.family {
            FamilyKind::Wavelike { m } => assert!((m - m_zero()).abs() < 1e-10),
            other => panic!("expected wavelike, got {other:?}"),
        }
        assert_eq!(curve.domain, Domain::Finite { start: 0.0, end: 1.0 });
        // half period: L = 2 K(m) Lambda
        let k = crate::elliptic::complete_k(m_zero()).unwrap();
        assert!((curve.placement.scale - 1.0 / (2.0 * k)).abs() < 1e-12);
    }

    #[test]
    fn constructors_reproduce_boundary_data() {
        let cases = [
            (0.35, Orientation::SameTangent),
            (-0.55, Orientation::SameTangent),
            (-0.4, Orientation::OppositeTangent),
        ];
        for &(ell, orientation) in &cases {
            let spec =
                FreeBoundarySpec { ell, mode: LengthMode::FixedLength(1.0), orientation };
            let curve = minimiser(&spec).unwrap();
            let start = eval(&curve, 0.0).unwrap();
            let end = eval(&curve, 1.0).unwrap();
            assert!(start.position.x.abs() < 1e-9, "start x for ell={ell}");
            assert!((end.position.x - ell).abs() < 1e-8, "end x for ell={ell}");
            assert!(start.angle.abs() < 1e-9);
            let want_end = match orientation {
                Orientation::SameTangent => 0.0,
                Orientation::OppositeTangent => PI,
            };
            // unwrapped angle reaches 0 or pi exactly at the far line
            assert!((end.angle - want_end).abs() < 1e-8, "end angle for ell={ell}");
        }
    }

    #[test]
    fn penalised_same_tangent_branches() {
        // positive extent: a segment
        let seg = minimiser(&FreeBoundarySpec {
            ell: 1.0,
            mode: LengthMode::Penalised(1.0),
            orientation: Orientation::SameTangent,
        })
        .unwrap();
        assert_eq!(seg.family, FamilyKind::Linear);
        assert_eq!(seg.length(), Some(1.0));

        // non-positive extent: supercritical wavelike with the stated scale
        let lam = 2.0;
        let curve = minimiser(&FreeBoundarySpec {
            ell: -0.7,
            mode: LengthMode::Penalised(lam),
            orientation: Orientation::SameTangent,
        })
        .unwrap();
        let m = match curve.family {
            FamilyKind::Wavelike { m } => m,
            other => panic!("expected wavelike, got {other:?}"),
        };
        assert!(m >= m_zero());
        let want_scale = ((4.0 * m - 2.0) / lam).sqrt();
        assert!((curve.placement.scale - want_scale).abs() < 1e-12);
        // boundary data: ends at x = ell with tangent e1
        let end_s = curve.domain.end().unwrap();
        let end = eval(&curve, end_s).unwrap();
        assert!((end.position.x + 0.7).abs() < 1e-8);
        assert!(end.angle.abs() < 1e-9);
    }

    #[test]
    fn penalised_opposite_tangent_round_trip() {
        let lam = 2.0;
        let curve = minimiser(&FreeBoundarySpec {
            ell: -1.0,
            mode: LengthMode::Penalised(lam),
            orientation: Orientation::OppositeTangent,
        })
        .unwrap();
        let m = match curve.family {
            FamilyKind::Orbitlike { m } => m,
            other => panic!("expected orbitlike, got {other:?}"),
        };
        // m solves the penalised orbit map at ell*sqrt(lambda)
        let target = -1.0 * lam.sqrt();
        assert!((forward(MapKind::OrbitPenalised, m).unwrap() - target).abs() < 1e-10);
        let want_scale = ((4.0 - 2.0 * m) / lam).sqrt();
        assert!((curve.placement.scale - want_scale).abs() < 1e-12);
        // endpoint lands on the support line
        let end = eval(&curve, curve.domain.end().unwrap()).unwrap();
        assert!((end.position.x + 1.0).abs() < 1e-9);
    }

    #[test]
    fn half_circle_cases() {
        let fixed = minimiser(&FreeBoundarySpec {
            ell: 0.0,
            mode: LengthMode::FixedLength(2.0),
            orientation: Orientation::OppositeTangent,
        })
        .unwrap();
        assert_eq!(fixed.family, FamilyKind::Circular);
        assert!((fixed.placement.scale - 2.0 / PI).abs() < 1e-15);

        let pen = minimiser(&FreeBoundarySpec {
            ell: 0.0,
            mode: LengthMode::Penalised(4.0),
            orientation: Orientation::OppositeTangent,
        })
        .unwrap();
        assert_eq!(pen.family, FamilyKind::Circular);
        // radius 1/sqrt(lambda); multiplier of the placement equals lambda
        assert!((pen.placement.scale - 0.5).abs() < 1e-15);
        assert_eq!(pen.multiplier().value(), Some(4.0));
    }

    #[test]
    fn spec_validation() {
        assert!(minimiser(&FreeBoundarySpec {
            ell: 1.0,
            mode: LengthMode::FixedLength(1.0),
            orientation: Orientation::SameTangent,
        })
        .is_err());
        assert!(minimiser(&FreeBoundarySpec {
            ell: 0.4,
            mode: LengthMode::FixedLength(1.0),
            orientation: Orientation::OppositeTangent,
        })
        .is_err());
        assert!(minimiser(&FreeBoundarySpec {
            ell: -0.5,
            mode: LengthMode::Penalised(-1.0),
            orientation: Orientation::SameTangent,
        })
        .is_err());
        assert!(borderline_minimiser(0.0).is_err());
    }

    #[test]
    fn borderline_minimiser_scales() {
        let two = borderline_minimiser(2.0).unwrap();
        assert!((two.placement.scale - 1.0).abs() < 1e-15);
        assert_eq!(two.multiplier().value(), Some(2.0));
        assert!(matches!(two.domain, Domain::HalfInfinite { .. }));

        let one = borderline_minimiser(1.0).unwrap();
        assert!((one.placement.scale - 2.0_f64.sqrt()).abs() < 1e-15);
        assert!((one.multiplier().value().unwrap() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn energies_of_reference_curves() {
        // circle: k = 1 over length 2pi (step chosen to land on the endpoint)
        let circle = PlacedCurve::new(
            FamilyKind::Circular,
            Placement::identity(),
            Domain::Finite { start: 0.0, end: 2.0 * PI },
        )
        .unwrap();
        let s = sample(&circle, 2.0 * PI / 6283.0).unwrap();
        assert!((bending_energy(&s).unwrap() - 2.0 * PI).abs() < 1e-5);

        // line: zero bending
        let line = PlacedCurve::new(
            FamilyKind::Linear,
            Placement::identity(),
            Domain::Finite { start: 0.0, end: 3.0 },
        )
        .unwrap();
        let s = sample(&line, 1e-2).unwrap();
        assert_eq!(bending_energy(&s).unwrap(), 0.0);
        assert!((length(&s).unwrap() - 3.0).abs() < 1e-12);
        assert!((modified_energy(&s, 2.0).unwrap() - 6.0).abs() < 1e-11);

        // borderline on [0, 8]: integral of 4 sech^2 is 4 tanh(8)
        let half = borderline_minimiser(2.0).unwrap();
        let s = sample(&truncated(&half, BORDERLINE_WINDOW).unwrap(), 1e-3).unwrap();
        assert!((bending_energy(&s).unwrap() - 4.0 * 8.0_f64.tanh()).abs() < 1e-4);
    }

    #[test]
    fn adapted_energy_half_borderline_is_eight() {
        let half = borderline_minimiser(2.0).unwrap();
        let adapted = adapted_energy_infinite(&half, 2.0).unwrap();
        assert!((adapted - 8.0).abs() < 1e-8, "adapted = {adapted}");
    }

    #[test]
    fn adapted_modified_identity_on_finite_curves() {
        let spec = FreeBoundarySpec {
            ell: -0.3,
            mode: LengthMode::FixedLength(1.0),
            orientation: Orientation::SameTangent,
        };
        let s = sample(&minimiser(&spec).unwrap(), 1e-3).unwrap();
        let lam = 1.7;
        let adapted = adapted_energy(&s, lam).unwrap();
        let modified = modified_energy(&s, lam).unwrap();
        let dx = s.points.last().unwrap().x - s.points[0].x;
        assert!((adapted - (modified + lam * dx)).abs() < 1e-12);

        // divergence of the straight-line tail, truncated at S: term 2*lam*S
        let line = PlacedCurve::new(
            FamilyKind::Linear,
            Placement::identity(),
            Domain::Finite { start: 0.0, end: 50.0 },
        )
        .unwrap();
        let s = sample(&line, 0.1).unwrap();
        assert!((adapted_energy(&s, 1.0).unwrap() - 100.0).abs() < 1e-9);
    }

    #[test]
    fn adapted_energy_rejects_nondecaying_tails() {
        // a half-infinite borderline whose placement is rotated so the
        // tangent does not approach -e1: tail term grows linearly
        let mut curve = borderline_minimiser(2.0).unwrap();
        curve.placement.isometry = Some(crate::family::Isometry {
            reflect: false,
            rotation: PI / 2.0,
            translation: crate::Vec2::ZERO,
        });
        assert!(matches!(adapted_energy_infinite(&curve, 2.0), Err(Error::NonDecayingTail)));
    }

    #[test]
    fn noflux_on_constructed_minimisers() {
        for &(ell, orientation) in &[
            (0.4, Orientation::SameTangent),
            (-0.3, Orientation::SameTangent),
            (-0.5, Orientation::OppositeTangent),
        ] {
            let spec =
                FreeBoundarySpec { ell, mode: LengthMode::FixedLength(1.0), orientation };
            let s = sample(&minimiser(&spec).unwrap(), 1e-3).unwrap();
            let (a, b) = noflux_check(&s).unwrap();
            let kmax = s.curvatures.iter().fold(0.0_f64, |acc, &v| acc.max(v.abs()));
            let unit = kmax / s.length();
            assert!(a.abs() / unit < 1e-4, "k'(0) for ell={ell}");
            assert!(b.abs() / unit < 1e-4, "k'(L) for ell={ell}");
        }

        // borderline on [0, 8]: zero at the vertex end, visibly nonzero at
        // the truncation end (-2 sech(8) tanh(8))
        let half = borderline_minimiser(2.0).unwrap();
        let s = sample(&truncated(&half, 8.0).unwrap(), 1e-3).unwrap();
        let (a, b) = noflux_check(&s).unwrap();
        assert!(a.abs() < 1e-4);
        let want = -2.0 / 8.0_f64.cosh() * 8.0_f64.tanh();
        assert!((b - want).abs() < 1e-4);
        assert!(b.abs() > 5e-4);

        // circular window: both ends flat
        let circle = PlacedCurve::new(
            FamilyKind::Circular,
            Placement::identity(),
            Domain::Finite { start: 0.3, end: 2.1 },
        )
        .unwrap();
        let s = sample(&circle, 1e-3).unwrap();
        let (a, b) = noflux_check(&s).unwrap();
        assert!(a.abs() < 1e-6 && b.abs() < 1e-6);
    }

    #[test]
    fn constructed_minimisers_satisfy_elastica_equation() {
        // fixed-length constructions: multiplier inferred from the family
        // and constructed scale; residual small at h = 1e-3
        for &(ell, orientation) in &[
            (0.35, Orientation::SameTangent),
            (-0.45, Orientation::OppositeTangent),
        ] {
            let spec =
                FreeBoundarySpec { ell, mode: LengthMode::FixedLength(1.0), orientation };
            let curve = minimiser(&spec).unwrap();
            let lambda = curve.multiplier().value().unwrap();
            let s = sample(&curve, 1e-3).unwrap();
            let r = crate::family::elastica_residual(&s, lambda).unwrap();
            assert!(r < 1e-5, "residual {r} for ell={ell}");
        }

        // penalised constructions: multiplier must equal lambda itself
        let lam = 3.0;
        let pen = minimiser(&FreeBoundarySpec {
            ell: -0.6,
            mode: LengthMode::Penalised(lam),
            orientation: Orientation::SameTangent,
        })
        .unwrap();
        let got = pen.multiplier().value().unwrap();
        assert!((got - lam).abs() < 1e-10);
    }
}
