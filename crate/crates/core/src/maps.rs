// Copyright 2026 the Elastica Authors
// SPDX-License-Identifier: Apache-2.0

//! Monotone parameter maps between boundary data and the elliptic
//! parameter `m`, their inverses, distinguished roots and extrema.
//!
//! Four maps appear in the free-boundary constructions:
//!
//! * `WaveFixed`:      `m -> 2E(m)/K(m) - 1`              on `(0, 1)`
//! * `OrbitFixed`:     `m -> 2E(m)/(m K(m)) + 1 - 2/m`    on `(0, 1)`
//! * `WavePenalised`:  `m -> 2(2E(m) - K(m)) sqrt(4m-2)`  on `(1/2, 1)`
//! * `OrbitPenalised`: `m -> (2E(m) + (m-2)K(m)) sqrt(4-2m)/m` on `(0, 1)`
//!
//! All four are strictly decreasing on the branch that is inverted. Note in
//! particular that `WaveFixed` runs from `+1` (at `m -> 0`) down to `-1`
//! (at `m -> 1`), with its unique zero at `m0`; the inverse therefore sends
//! positive targets to `m < m0` and negative targets to `m > m0`. This is
//! the orientation observed numerically and used throughout the crate.
//! `WavePenalised` also vanishes at `m = 1/2`, and its inversion is
//! restricted to the minimiser branch `[m0, 1)` where it decreases from `0`
//! to `-inf`.
//!
//! Root-finding works in the transformed variable `q = -ln(1-m)`, which
//! resolves the logarithmic divergence of `K` near `m = 1`: brackets are
//! maintained in `q`, bisection is interleaved with Newton steps using the
//! closed-form derivatives, and any Newton overshoot falls back to
//! bisection.

use num_traits::Float;

use alloc::vec::Vec;

use crate::elliptic::{complete_k_e, de_dm, dk_dm};
use crate::{Error, Result};

/// Which parameter map.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapKind {
    WaveFixed,
    OrbitFixed,
    WavePenalised,
    OrbitPenalised,
}

impl MapKind {
    fn name(self) -> &'static str {
        match self {
            MapKind::WaveFixed => "wave-fixed",
            MapKind::OrbitFixed => "orbit-fixed",
            MapKind::WavePenalised => "wave-penalised",
            MapKind::OrbitPenalised => "orbit-penalised",
        }
    }

    /// Open m-interval on which `forward` is defined.
    fn domain(self) -> (f64, f64) {
        match self {
            MapKind::WavePenalised => (0.5, 1.0),
            _ => (0.0, 1.0),
        }
    }
}

/// Evaluate the map at `m`.
pub fn forward(kind: MapKind, m: f64) -> Result<f64> {
    let (lo, hi) = kind.domain();
    if !(m > lo && m < hi) {
        return Err(Error::Domain { what: kind.name(), value: m });
    }
    let (k, e) = complete_k_e(m)?;
    Ok(forward_with(kind, m, k, e))
}

fn forward_with(kind: MapKind, m: f64, k: f64, e: f64) -> f64 {
    match kind {
        MapKind::WaveFixed => 2.0 * e / k - 1.0,
        MapKind::OrbitFixed => 2.0 * e / (m * k) + 1.0 - 2.0 / m,
        MapKind::WavePenalised => 2.0 * (2.0 * e - k) * (4.0 * m - 2.0).sqrt(),
        MapKind::OrbitPenalised => (2.0 * e + (m - 2.0) * k) * (4.0 - 2.0 * m).sqrt() / m,
    }
}

/// Closed-form derivative of the map (used by the Newton refinements and
/// verified against finite differences in the tests).
pub fn forward_derivative(kind: MapKind, m: f64) -> Result<f64> {
    let (lo, hi) = kind.domain();
    if !(m > lo && m < hi) {
        return Err(Error::Domain { what: kind.name(), value: m });
    }
    let (k, e) = complete_k_e(m)?;
    let kp = dk_dm(m)?;
    let ep = de_dm(m)?;
    Ok(match kind {
        MapKind::WaveFixed => 2.0 * (ep * k - e * kp) / (k * k),
        // f' = ((1-m)K^2 - E^2) / ((1-m) m^2 K^2)
        MapKind::OrbitFixed => {
            ((1.0 - m) * k * k - e * e) / ((1.0 - m) * m * m * k * k)
        }
        MapKind::WavePenalised => {
            let root = (4.0 * m - 2.0).sqrt();
            2.0 * (2.0 * ep - kp) * root + 4.0 * (2.0 * e - k) / root
        }
        // f' = -((m^2-8m+8)E - (4m^2-12m+8)K) / ((1-m) m^2 sqrt(4-2m))
        MapKind::OrbitPenalised => {
            -(((m * m - 8.0 * m + 8.0) * e - (4.0 * m * m - 12.0 * m + 8.0) * k)
                / ((1.0 - m) * m * m * (4.0 - 2.0 * m).sqrt()))
        }
    })
}

const Q_MIN: f64 = 1e-12; // m ~ 1e-12
const Q_MAX: f64 = 34.5; // 1 - m ~ 1e-15

fn m_of_q(q: f64) -> f64 {
    1.0 - (-q).exp()
}

fn q_of_m(m: f64) -> f64 {
    -(-m).ln_1p()
}

/// Solve `f(m) = target` for a map `f` that is strictly decreasing on the
/// q-bracket `[q_lo, q_hi]`. Bracketed bisection with Newton refinement.
fn solve_decreasing(
    what: &'static str,
    f: &dyn Fn(f64) -> f64,
    df_dm: &dyn Fn(f64) -> f64,
    target: f64,
    mut q_lo: f64,
    mut q_hi: f64,
) -> Result<f64> {
    let scale = 1.0_f64.max(target.abs());
    let tol = 1e-13 * scale;

    let f_lo = f(m_of_q(q_lo));
    let f_hi = f(m_of_q(q_hi));
    if !(target <= f_lo && target >= f_hi) {
        return Err(Error::OutOfRange { what, value: target });
    }

    let mut q = 0.5 * (q_lo + q_hi);
    for _ in 0..200 {
        let m = m_of_q(q);
        let fv = f(m) - target;
        if fv.abs() <= tol {
            return Ok(m);
        }
        if fv > 0.0 {
            q_lo = q; // f decreasing: still left of the root
        } else {
            q_hi = q;
        }
        if q_hi - q_lo <= f64::EPSILON * q_hi.abs().max(1.0) {
            return Ok(m_of_q(0.5 * (q_lo + q_hi)));
        }
        // Newton in q: df/dq = df/dm * (1-m).
        let dq = df_dm(m) * (1.0 - m);
        let q_newton = q - fv / dq;
        q = if dq != 0.0 && q_newton > q_lo && q_newton < q_hi {
            q_newton
        } else {
            0.5 * (q_lo + q_hi)
        };
    }
    Err(Error::NoConvergence { what })
}

/// Invert the map: find `m` with `forward(kind, m) = target`.
///
/// `WavePenalised` is inverted on its minimiser branch `[m0, 1)` only.
/// Accepted target ranges are the numerically reachable portions of
/// `(-1, 1)`, `(-1, 0)`, `(-inf, 0]` and `(-inf, 0)` respectively.
pub fn invert(kind: MapKind, target: f64) -> Result<f64> {
    let name = kind.name();
    let f = move |m: f64| {
        let (k, e) = complete_k_e(m).expect("bracket stays inside (0,1)");
        forward_with(kind, m, k, e)
    };
    let df = move |m: f64| forward_derivative(kind, m).expect("bracket stays inside (0,1)");
    let (q_lo, q_hi) = match kind {
        MapKind::WaveFixed => (Q_MIN, Q_MAX),
        MapKind::OrbitFixed => (Q_MIN, Q_MAX),
        // restricted to [m0, 1): the branch selected by the penalised
        // wavelike minimiser.
        MapKind::WavePenalised => {
            if target > 0.0 {
                return Err(Error::OutOfRange { what: name, value: target });
            }
            (q_of_m(m_zero()), Q_MAX)
        }
        MapKind::OrbitPenalised => {
            if target >= 0.0 {
                return Err(Error::OutOfRange { what: name, value: target });
            }
            (Q_MIN, Q_MAX)
        }
    };
    solve_decreasing(name, &f, &df, target, q_lo, q_hi)
}

fn two_e_minus_k(m: f64) -> f64 {
    let (k, e) = complete_k_e(m).expect("m inside (0,1)");
    2.0 * e - k
}

fn compute_m_zero() -> f64 {
    // Root of the strictly decreasing m -> 2E(m) - K(m).
    let f = |m: f64| two_e_minus_k(m);
    let df = |m: f64| 2.0 * de_dm(m).unwrap() - dk_dm(m).unwrap();
    solve_decreasing("m0", &f, &df, 0.0, Q_MIN, Q_MAX).expect("2E-K changes sign on (0,1)")
}

/// `m0`, the unique root of `m -> 2E(m) - K(m)`: the parameter of the
/// figure-eight elastica and the subcritical/supercritical threshold.
///
/// Cached after the first computation; the benign first-call race stores
/// the same bits from every thread.
pub fn m_zero() -> f64 {
    use core::sync::atomic::{AtomicU64, Ordering};
    static CACHE: AtomicU64 = AtomicU64::new(u64::MAX);
    let bits = CACHE.load(Ordering::Relaxed);
    if bits != u64::MAX {
        return f64::from_bits(bits);
    }
    let m0 = compute_m_zero();
    CACHE.store(m0.to_bits(), Ordering::Relaxed);
    m0
}

/// Location and value of the maximum of the `WavePenalised` map
/// `f(m) = 2(2E - K) sqrt(4m - 2)` on `(1/2, m0)`.
///
/// Returns `(m_star, big_m_star)` with `f(m_star) = big_m_star = max f`.
pub fn wave_pen_extremum() -> (f64, f64) {
    // f' decreases through zero on (1/2, m0); bisect f' then polish with a
    // secant step on f'.
    let fp = |m: f64| forward_derivative(MapKind::WavePenalised, m).unwrap();
    let mut lo = 0.5 + 1e-9;
    let mut hi = m_zero() - 1e-9;
    debug_assert!(fp(lo) > 0.0 && fp(hi) < 0.0);
    for _ in 0..120 {
        let mid = 0.5 * (lo + hi);
        if fp(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= f64::EPSILON {
            break;
        }
    }
    let m_star = 0.5 * (lo + hi);
    let value = forward(MapKind::WavePenalised, m_star).unwrap();
    (m_star, value)
}

/// One solution of `|f(m)| = target` for the pinned-boundary mode analysis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PinnedRoot {
    pub m: f64,
    /// 2 when the root is the near-tangent double root at `m_star`.
    pub multiplicity: u8,
}

/// Result of the pinned-boundary mode count.
#[derive(Debug, Clone, PartialEq)]
pub struct PinnedModes {
    /// Roots sorted ascending in `m`.
    pub roots: Vec<PinnedRoot>,
    /// Set when the target is exactly zero, where in addition to `m0` the
    /// map also degenerates at the excluded endpoint `m -> 1/2`.
    pub degenerate_endpoints: bool,
}

/// All `m` in `(1/2, 1)` with `|2(2E - K) sqrt(4m-2)| = ell_sqrt_lambda / n`.
///
/// The count follows the mode trichotomy: one root above the maximum
/// `M_star`, two at it (the tangent root reported once with multiplicity
/// 2), three below it.
pub fn pinned_modes(ell_sqrt_lambda: f64, n: u32) -> Result<PinnedModes> {
    if ell_sqrt_lambda < 0.0 {
        return Err(Error::Domain { what: "ell*sqrt(lambda)", value: ell_sqrt_lambda });
    }
    if n == 0 {
        return Err(Error::Domain { what: "mode count n", value: 0.0 });
    }
    let target = ell_sqrt_lambda / n as f64;
    let m0 = m_zero();
    let (m_star, big_m) = wave_pen_extremum();

    let mut roots = Vec::new();
    let mut degenerate = false;

    if target == 0.0 {
        roots.push(PinnedRoot { m: m0, multiplicity: 1 });
        degenerate = true;
    } else if (target - big_m).abs() <= 1e-9 {
        roots.push(PinnedRoot { m: m_star, multiplicity: 2 });
        roots.push(supercritical_root(target)?);
    } else if target < big_m {
        // Rising branch (1/2, m_star): f increasing from 0 to M_star.
        roots.push(PinnedRoot {
            m: solve_on_subcritical_branch(target, 0.5, m_star, true)?,
            multiplicity: 1,
        });
        // Falling branch (m_star, m0): f decreasing from M_star to 0.
        roots.push(PinnedRoot {
            m: solve_on_subcritical_branch(target, m_star, m0, false)?,
            multiplicity: 1,
        });
        roots.push(supercritical_root(target)?);
    } else {
        roots.push(supercritical_root(target)?);
    }
    roots.sort_by(|a, b| a.m.partial_cmp(&b.m).unwrap());
    Ok(PinnedModes { roots, degenerate_endpoints: degenerate })
}

/// Root of `f = -target` on `(m0, 1)`, where `|f| = -f`.
fn supercritical_root(target: f64) -> Result<PinnedRoot> {
    Ok(PinnedRoot { m: invert(MapKind::WavePenalised, -target)?, multiplicity: 1 })
}

/// Bisection for `f(m) = target` on a monotone piece of `(1/2, m0)`.
fn solve_on_subcritical_branch(target: f64, lo: f64, hi: f64, increasing: bool) -> Result<f64> {
    let f = |m: f64| forward(MapKind::WavePenalised, m).unwrap();
    let (mut a, mut b) = (lo + 1e-13, hi - 1e-13);
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        let v = f(mid);
        let go_right = if increasing { v < target } else { v > target };
        if go_right {
            a = mid;
        } else {
            b = mid;
        }
        if b - a <= f64::EPSILON {
            break;
        }
    }
    Ok(0.5 * (a + b))
}
