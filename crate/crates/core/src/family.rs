// Copyright 2026 the Elastica Authors
// SPDX-License-Identifier: Apache-2.0

//! The five similarity classes of planar elasticae and their placement.
//!
//! Base parametrisations (arc length `u`, tangential angle `theta`,
//! curvature `k = theta'`):
//!
//! * linear:     `(u, 0)`, `theta = 0`, `k = 0`
//! * wavelike:   `(2E(am(u,m),m) - u, -2 sqrt(m) cn(u,m))`,
//!   `theta = 2 asin(sqrt(m) sn)`, `k = 2 sqrt(m) cn`
//! * borderline: `(2 tanh u - u, -2 sech u)`,
//!   `theta = 2 asin(tanh u)`, `k = 2 sech u`
//! * orbitlike:  `((2E(am(u,m),m) + (m-2)u)/m, -2 dn(u,m)/m)`,
//!   `theta = 2 am(u,m)`, `k = 2 dn`
//! * circular:   `(cos u, sin u)`, `theta = u + pi/2`, `k = 1`
//!
//! A [`Placement`] positions a base curve by the similarity action
//! `s -> Lambda * base((s + s0)/Lambda)` followed by the admissible
//! free-boundary isometries (vertical reflection and translation) and,
//! optionally, a general isometry for uses that leave the free-boundary
//! setting. Angles are kept unwrapped (never reduced mod 2pi); a
//! reflection negates both the angle and the curvature.

use num_traits::Float;

use alloc::vec::Vec;

use crate::elliptic::{incomplete_e, jacobi_am};
use crate::maps::m_zero;
use crate::{Error, Result, Vec2};

use core::f64::consts::FRAC_PI_2;

/// One of the five classified elastica families.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FamilyKind {
    Linear,
    Wavelike { m: f64 },
    Borderline,
    Orbitlike { m: f64 },
    Circular,
}

impl FamilyKind {
    pub fn validate(&self) -> Result<()> {
        match *self {
            FamilyKind::Wavelike { m } | FamilyKind::Orbitlike { m } => {
                if !(m > 0.0 && m < 1.0) {
                    return Err(Error::Domain { what: "family parameter m", value: m });
                }
            }
            _ => {}
        }
        Ok(())
    }

    /// Multiplier of the unscaled base curve.
    fn base_multiplier(&self) -> Multiplier {
        match *self {
            FamilyKind::Linear => Multiplier::Any,
            FamilyKind::Wavelike { m } => Multiplier::Value(2.0 * (2.0 * m - 1.0)),
            FamilyKind::Borderline => Multiplier::Value(2.0),
            FamilyKind::Orbitlike { m } => Multiplier::Value(2.0 * (2.0 - m)),
            FamilyKind::Circular => Multiplier::Value(1.0),
        }
    }
}

/// Multiplier of an elastica: a single value, or any real for a line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Multiplier {
    Any,
    Value(f64),
}

impl Multiplier {
    /// The value, if a single one exists.
    pub fn value(self) -> Option<f64> {
        match self {
            Multiplier::Any => None,
            Multiplier::Value(v) => Some(v),
        }
    }
}

/// Multiplier of the family placed at scale `scale`; scaling by `Lambda`
/// divides the multiplier by `Lambda^2`.
pub fn multiplier(family: FamilyKind, scale: f64) -> Multiplier {
    match family.base_multiplier() {
        Multiplier::Any => Multiplier::Any,
        Multiplier::Value(v) => Multiplier::Value(v / (scale * scale)),
    }
}

/// A general planar isometry: optional reflection across the x-axis,
/// then rotation, then translation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Isometry {
    pub reflect: bool,
    pub rotation: f64,
    pub translation: Vec2,
}

impl Isometry {
    fn apply(&self, p: Vec2) -> Vec2 {
        let q = if self.reflect { Vec2::new(p.x, -p.y) } else { p };
        q.rotated(self.rotation) + self.translation
    }

    fn apply_angle(&self, theta: f64) -> f64 {
        let t = if self.reflect { -theta } else { theta };
        t + self.rotation
    }

    fn curvature_sign(&self) -> f64 {
        if self.reflect {
            -1.0
        } else {
            1.0
        }
    }
}

/// Similarity action positioning a base family curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Placement {
    /// Scale `Lambda > 0`.
    pub scale: f64,
    /// Arc-length shift `s0`: the base curve is evaluated at `(s + s0)/Lambda`.
    pub shift: f64,
    /// Vertical translation (admissible for the free-boundary problems).
    pub vertical_offset: f64,
    /// Vertical reflection (admissible for the free-boundary problems).
    pub vertical_reflect: bool,
    /// Extra isometry for non-free-boundary uses; applied last.
    pub isometry: Option<Isometry>,
}

impl Placement {
    pub fn identity() -> Self {
        Placement {
            scale: 1.0,
            shift: 0.0,
            vertical_offset: 0.0,
            vertical_reflect: false,
            isometry: None,
        }
    }

    pub fn scaled(scale: f64) -> Self {
        Placement { scale, ..Placement::identity() }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.scale > 0.0) {
            return Err(Error::Domain { what: "placement scale", value: self.scale });
        }
        Ok(())
    }
}

impl Default for Placement {
    fn default() -> Self {
        Placement::identity()
    }
}

/// Arc-length domain of a placed curve. Only the borderline family admits
/// the half-infinite form.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Domain {
    Finite { start: f64, end: f64 },
    HalfInfinite { start: f64 },
}

impl Domain {
    pub fn start(&self) -> f64 {
        match *self {
            Domain::Finite { start, .. } | Domain::HalfInfinite { start } => start,
        }
    }

    pub fn end(&self) -> Option<f64> {
        match *self {
            Domain::Finite { end, .. } => Some(end),
            Domain::HalfInfinite { .. } => None,
        }
    }

    pub fn contains(&self, s: f64) -> bool {
        match *self {
            Domain::Finite { start, end } => {
                let slack = 1e-12 * (end - start).abs().max(1.0);
                s >= start - slack && s <= end + slack
            }
            Domain::HalfInfinite { start } => s >= start - 1e-12,
        }
    }
}

/// A family curve with placement and arc-length domain.
#[derive(Debug, Clone, PartialEq)]
pub struct PlacedCurve {
    pub family: FamilyKind,
    pub placement: Placement,
    pub domain: Domain,
}

impl PlacedCurve {
    pub fn new(family: FamilyKind, placement: Placement, domain: Domain) -> Result<Self> {
        family.validate()?;
        placement.validate()?;
        if let Domain::Finite { start, end } = domain {
            if !(start < end) {
                return Err(Error::Domain { what: "domain width", value: end - start });
            }
        }
        if matches!(domain, Domain::HalfInfinite { .. })
            && !matches!(family, FamilyKind::Borderline)
        {
            return Err(Error::InfiniteDomain);
        }
        Ok(PlacedCurve { family, placement, domain })
    }

    /// Multiplier of this curve, accounting for the placement scale.
    pub fn multiplier(&self) -> Multiplier {
        multiplier(self.family, self.placement.scale)
    }

    /// Total length for finite domains.
    pub fn length(&self) -> Option<f64> {
        self.domain.end().map(|e| e - self.domain.start())
    }
}

/// Position, unwrapped tangential angle and curvature at one parameter.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub position: Vec2,
    pub angle: f64,
    pub curvature: f64,
}

fn base_eval(family: FamilyKind, u: f64) -> CurvePoint {
    match family {
        FamilyKind::Linear => CurvePoint {
            position: Vec2::new(u, 0.0),
            angle: 0.0,
            curvature: 0.0,
        },
        FamilyKind::Wavelike { m } => {
            let sqm = m.sqrt();
            let phi = jacobi_am(u, m).expect("validated m");
            let (sn, cn) = phi.sin_cos();
            let e_inc = incomplete_e(phi, m).expect("validated m");
            CurvePoint {
                position: Vec2::new(2.0 * e_inc - u, -2.0 * sqm * cn),
                angle: 2.0 * (sqm * sn).asin(),
                curvature: 2.0 * sqm * cn,
            }
        }
        FamilyKind::Borderline => {
            let sech = 1.0 / u.cosh();
            CurvePoint {
                position: Vec2::new(2.0 * u.tanh() - u, -2.0 * sech),
                angle: 2.0 * u.tanh().asin(),
                curvature: 2.0 * sech,
            }
        }
        FamilyKind::Orbitlike { m } => {
            let phi = jacobi_am(u, m).expect("validated m");
            let dn = (1.0 - m * phi.sin().powi(2)).sqrt();
            let e_inc = incomplete_e(phi, m).expect("validated m");
            CurvePoint {
                position: Vec2::new((2.0 * e_inc + (m - 2.0) * u) / m, -2.0 * dn / m),
                angle: 2.0 * phi,
                curvature: 2.0 * dn,
            }
        }
        FamilyKind::Circular => {
            let (s, c) = u.sin_cos();
            CurvePoint {
                position: Vec2::new(c, s),
                angle: u + FRAC_PI_2,
                curvature: 1.0,
            }
        }
    }
}

/// Evaluate a placed curve at arc length `s` within its domain.
pub fn eval(curve: &PlacedCurve, s: f64) -> Result<CurvePoint> {
    if !curve.domain.contains(s) {
        return Err(Error::Domain { what: "arc length s outside domain", value: s });
    }
    Ok(eval_unchecked(curve, s))
}

fn eval_unchecked(curve: &PlacedCurve, s: f64) -> CurvePoint {
    let pl = &curve.placement;
    let u = (s + pl.shift) / pl.scale;
    let base = base_eval(curve.family, u);
    let mut position = base.position * pl.scale;
    let mut angle = base.angle;
    let mut curvature = base.curvature / pl.scale;
    if pl.vertical_reflect {
        position = Vec2::new(position.x, -position.y);
        angle = -angle;
        curvature = -curvature;
    }
    position.y += pl.vertical_offset;
    if let Some(iso) = &pl.isometry {
        position = iso.apply(position);
        angle = iso.apply_angle(angle);
        curvature *= iso.curvature_sign();
    }
    CurvePoint { position, angle, curvature }
}

/// Uniform arc-length samples of a curve: positions, unwrapped angles and
/// curvatures on a grid of step `h`.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCurve {
    pub h: f64,
    pub points: Vec<Vec2>,
    pub angles: Vec<f64>,
    pub curvatures: Vec<f64>,
}

impl SampledCurve {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Total arc length spanned by the samples.
    pub fn length(&self) -> f64 {
        self.h * (self.points.len().saturating_sub(1)) as f64
    }
}

/// Sample a placed curve with step `h`. The sample count is
/// `floor((s_max - s_min)/h) + 1`; infinite domains must be truncated
/// first (see [`truncated`]).
pub fn sample(curve: &PlacedCurve, h: f64) -> Result<SampledCurve> {
    if !(h > 0.0) {
        return Err(Error::Domain { what: "sample step h", value: h });
    }
    let (start, end) = match curve.domain {
        Domain::Finite { start, end } => (start, end),
        Domain::HalfInfinite { .. } => return Err(Error::InfiniteDomain),
    };
    // tiny slack so that an exact multiple of h includes the endpoint
    let count = (((end - start) / h) * (1.0 + 4.0 * f64::EPSILON)).floor() as usize + 1;
    let mut points = Vec::with_capacity(count);
    let mut angles = Vec::with_capacity(count);
    let mut curvatures = Vec::with_capacity(count);
    for i in 0..count {
        let p = eval_unchecked(curve, start + i as f64 * h);
        points.push(p.position);
        angles.push(p.angle);
        curvatures.push(p.curvature);
    }
    Ok(SampledCurve { h, points, angles, curvatures })
}

/// A copy of the curve with its domain truncated to `[start, start + window]`,
/// for sampling borderline curves with half-infinite domains.
pub fn truncated(curve: &PlacedCurve, window: f64) -> Result<PlacedCurve> {
    if !(window > 0.0) {
        return Err(Error::Domain { what: "truncation window", value: window });
    }
    let start = curve.domain.start();
    Ok(PlacedCurve {
        family: curve.family,
        placement: curve.placement,
        domain: Domain::Finite { start, end: start + window },
    })
}

/// Default truncation half-width for borderline sampling, in intrinsic
/// (unscaled) arc-length units: `sech(8) < 7e-4`, so curvature-squared
/// tails are below 1e-6.
pub const BORDERLINE_WINDOW: f64 = 8.0;

/// Max-norm residual of the elastica equation `2 k'' + k^3 - lambda k`
/// over the interior sample nodes, normalised by `max(1, max|k|^3)`.
pub fn elastica_residual(curve: &SampledCurve, lambda: f64) -> Result<f64> {
    let n = curve.curvatures.len();
    if n < 5 {
        return Err(Error::TooFewSamples { needed: 5, got: n });
    }
    let h2 = curve.h * curve.h;
    let k = &curve.curvatures;
    let kmax = k.iter().fold(0.0_f64, |a, &v| a.max(v.abs()));
    let scale = 1.0_f64.max(kmax.powi(3));
    let mut worst = 0.0_f64;
    for i in 1..n - 1 {
        let kpp = (k[i + 1] - 2.0 * k[i] + k[i - 1]) / h2;
        let r = 2.0 * kpp + k[i].powi(3) - lambda * k[i];
        worst = worst.max(r.abs());
    }
    Ok(worst / scale)
}

/// Criticality class of a wavelike elastica relative to the figure-eight
/// parameter `m0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Criticality {
    Subcritical,
    Critical,
    Supercritical,
}

pub fn classify_wavelike(m: f64) -> Result<Criticality> {
    if !(m > 0.0 && m < 1.0) {
        return Err(Error::Domain { what: "wavelike m", value: m });
    }
    let m0 = m_zero();
    Ok(if (m - m0).abs() <= 1e-12 {
        Criticality::Critical
    } else if m > m0 {
        Criticality::Supercritical
    } else {
        Criticality::Subcritical
    })
}
