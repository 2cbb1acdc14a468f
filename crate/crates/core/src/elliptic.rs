// Copyright 2026 the Elastica Authors
// SPDX-License-Identifier: Apache-2.0

//! Complete and incomplete elliptic integrals and Jacobi elliptic functions.
//!
//! Everything here uses the *parameter* `m` (the squared elliptic modulus);
//! the modulus `k = sqrt(m)` never appears in a public signature. Complete
//! integrals are computed by the arithmetic-geometric mean, incomplete ones
//! by Carlson's symmetric forms, and the amplitude by the descending AGM
//! recursion. Internal accuracy is close to machine precision; public
//! contracts are stated per function.
//!
//! `m = 0` and `m = 1` are handled by trigonometric resp. hyperbolic closed
//! forms where the operation admits them.

use num_traits::Float;

use crate::{Error, Result};

use core::f64::consts::{FRAC_PI_2, PI};

const AGM_MAX_ITER: usize = 40;

fn check_m_complete_k(m: f64) -> Result<()> {
    if !(0.0..1.0).contains(&m) {
        return Err(Error::Domain { what: "m (need 0 <= m < 1)", value: m });
    }
    Ok(())
}

fn check_m_closed(m: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::Domain { what: "m (need 0 <= m <= 1)", value: m });
    }
    Ok(())
}

/// Complete elliptic integral of the first kind `K(m)`.
///
/// Strictly increasing on `[0, 1)`, diverging as `m -> 1`; `m >= 1` is a
/// domain error.
pub fn complete_k(m: f64) -> Result<f64> {
    check_m_complete_k(m)?;
    Ok(agm_complete(m).0)
}

/// Complete elliptic integral of the second kind `E(m)`.
///
/// Strictly decreasing on `[0, 1]` with `E(0) = pi/2` and `E(1) = 1`.
pub fn complete_e(m: f64) -> Result<f64> {
    check_m_closed(m)?;
    if m == 1.0 {
        return Ok(1.0);
    }
    Ok(agm_complete(m).1)
}

/// `K(m)` and `E(m)` from a single AGM pass. `m` must lie in `[0, 1)`.
pub fn complete_k_e(m: f64) -> Result<(f64, f64)> {
    check_m_complete_k(m)?;
    Ok(agm_complete(m))
}

/// AGM with the accumulated correction sum for E (A&S 17.6):
/// `E = K * (1 - sum 2^{n-1} c_n^2)` with `c_0 = sqrt(m)`,
/// `c_{n+1} = (a_n - b_n)/2`.
fn agm_complete(m: f64) -> (f64, f64) {
    let mut a = 1.0_f64;
    let mut b = (1.0 - m).sqrt();
    let mut sum = 0.5 * m;
    let mut pow2 = 0.5;
    for _ in 0..AGM_MAX_ITER {
        let c = 0.5 * (a - b);
        if c.abs() <= f64::EPSILON * a {
            break;
        }
        let an = 0.5 * (a + b);
        b = (a * b).sqrt();
        a = an;
        pow2 *= 2.0;
        sum += pow2 * c * c;
    }
    let k = FRAC_PI_2 / a;
    (k, k * (1.0 - sum))
}

/// Carlson symmetric integral `R_F(x, y, z)`.
///
/// Duplication algorithm; relative accuracy well below 1e-15 for the
/// non-degenerate arguments produced by the Legendre reductions here.
fn carlson_rf(x: f64, y: f64, z: f64) -> f64 {
    const ERRTOL: f64 = 0.0015;
    let (mut xt, mut yt, mut zt) = (x, y, z);
    let mut mu;
    loop {
        let sx = xt.sqrt();
        let sy = yt.sqrt();
        let sz = zt.sqrt();
        let lam = sx * (sy + sz) + sy * sz;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        mu = (xt + yt + zt) / 3.0;
        let dx = (mu - xt) / mu;
        let dy = (mu - yt) / mu;
        let dz = (mu - zt) / mu;
        if dx.abs().max(dy.abs()).max(dz.abs()) < ERRTOL {
            let e2 = dx * dy - dz * dz;
            let e3 = dx * dy * dz;
            return (1.0 + (e2 / 24.0 - 0.1 - 3.0 * e3 / 44.0) * e2 + e3 / 14.0) / mu.sqrt();
        }
    }
}

/// Carlson symmetric integral `R_D(x, y, z)`.
fn carlson_rd(x: f64, y: f64, z: f64) -> f64 {
    const ERRTOL: f64 = 0.0015;
    let (mut xt, mut yt, mut zt) = (x, y, z);
    let mut sum = 0.0;
    let mut fac = 1.0;
    let mut mu;
    loop {
        let sx = xt.sqrt();
        let sy = yt.sqrt();
        let sz = zt.sqrt();
        let lam = sx * (sy + sz) + sy * sz;
        sum += fac / (sz * (zt + lam));
        fac *= 0.25;
        xt = 0.25 * (xt + lam);
        yt = 0.25 * (yt + lam);
        zt = 0.25 * (zt + lam);
        mu = 0.2 * (xt + yt + 3.0 * zt);
        let dx = (mu - xt) / mu;
        let dy = (mu - yt) / mu;
        let dz = (mu - zt) / mu;
        if dx.abs().max(dy.abs()).max(dz.abs()) < ERRTOL {
            let ea = dx * dy;
            let eb = dz * dz;
            let ec = ea - eb;
            let ed = ea - 6.0 * eb;
            let ee = ed + ec + ec;
            return 3.0 * sum
                + fac
                    * (1.0 + ed * (-3.0 / 14.0 + 9.0 / 88.0 * ed - 4.5 / 26.0 * dz * ee)
                        + dz * (1.0 / 6.0 * ee + dz * (-9.0 / 22.0 * ec + 3.0 / 26.0 * dz * ea)))
                    / (mu * mu.sqrt());
        }
    }
}

/// Reduce `x` to `r + n*pi` with `r` in `[-pi/2, pi/2]`.
fn reduce_half_period(x: f64) -> (f64, f64) {
    let n = (x / PI).round();
    (x - n * PI, n)
}

/// Incomplete elliptic integral of the first kind `F(x, m)`, real `x`.
///
/// Satisfies `F(pi/2, m) = K(m)` and the quasi-periodicity
/// `F(x + pi, m) = F(x, m) + 2 K(m)`.
pub fn incomplete_f(x: f64, m: f64) -> Result<f64> {
    check_m_complete_k(m)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let (r, n) = reduce_half_period(x);
    let base = if r == 0.0 {
        0.0
    } else {
        let s = r.sin();
        let c2 = r.cos().powi(2);
        s * carlson_rf(c2, 1.0 - m * s * s, 1.0)
    };
    if n == 0.0 {
        Ok(base)
    } else {
        Ok(base + 2.0 * n * complete_k(m)?)
    }
}

/// Incomplete elliptic integral of the second kind `E(x, m)`, real `x`.
///
/// `E(pi/2, m) = E(m)`; quasi-periodicity `E(x + pi, m) = E(x, m) + 2 E(m)`.
/// Unlike `F`, the value stays finite at `m = 1` where `E(x, 1)` reduces to a
/// piecewise sine.
pub fn incomplete_e(x: f64, m: f64) -> Result<f64> {
    check_m_closed(m)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let (r, n) = reduce_half_period(x);
    if m == 1.0 {
        return Ok(r.sin() + 2.0 * n);
    }
    let base = if r == 0.0 {
        0.0
    } else {
        let s = r.sin();
        let c2 = r.cos().powi(2);
        let q = 1.0 - m * s * s;
        s * carlson_rf(c2, q, 1.0) - m / 3.0 * s.powi(3) * carlson_rd(c2, q, 1.0)
    };
    if n == 0.0 {
        Ok(base)
    } else {
        Ok(base + 2.0 * n * complete_e(m)?)
    }
}

/// Jacobi amplitude `am(u, m)`, the inverse of `F(., m)`, as the continuous
/// (unwrapped) branch with `am(u + 2K, m) = am(u, m) + pi`.
///
/// `m = 1` uses the Gudermannian closed form `2 atan(e^u) - pi/2`.
pub fn jacobi_am(u: f64, m: f64) -> Result<f64> {
    check_m_closed(m)?;
    if m == 0.0 {
        return Ok(u);
    }
    if m == 1.0 {
        return Ok(2.0 * u.exp().atan() - FRAC_PI_2);
    }
    if u == 0.0 {
        return Ok(0.0);
    }
    // Descending AGM: phi_N = 2^N a_N u, then
    // phi_{n-1} = (phi_n + asin(c_n/a_n sin phi_n)) / 2.
    let mut a = [0.0_f64; AGM_MAX_ITER + 1];
    let mut c = [0.0_f64; AGM_MAX_ITER + 1];
    a[0] = 1.0;
    c[0] = m.sqrt();
    let mut b = (1.0 - m).sqrt();
    let mut n = 0;
    while n < AGM_MAX_ITER {
        let an = 0.5 * (a[n] + b);
        let cn = 0.5 * (a[n] - b);
        b = (a[n] * b).sqrt();
        n += 1;
        a[n] = an;
        c[n] = cn;
        if cn.abs() <= f64::EPSILON * an {
            break;
        }
    }
    let mut phi = (1u64 << n) as f64 * a[n] * u;
    for i in (1..=n).rev() {
        phi = 0.5 * (phi + (c[i] / a[i] * phi.sin()).asin());
    }
    Ok(phi)
}

/// Jacobi elliptic functions `(sn, cn, dn)(u, m)` via the amplitude.
pub fn jacobi_sn_cn_dn(u: f64, m: f64) -> Result<(f64, f64, f64)> {
    check_m_closed(m)?;
    if m == 1.0 {
        let sech = 1.0 / u.cosh();
        return Ok((u.tanh(), sech, sech));
    }
    let phi = jacobi_am(u, m)?;
    let (sn, cn) = phi.sin_cos();
    let dn = (1.0 - m * sn * sn).sqrt();
    Ok((sn, cn, dn))
}

fn check_m_open(m: f64) -> Result<()> {
    if !(m > 0.0 && m < 1.0) {
        return Err(Error::Domain { what: "m (need 0 < m < 1)", value: m });
    }
    Ok(())
}

/// `dK/dm = (E - (1-m)K) / (2m(1-m))` on `0 < m < 1`.
pub fn dk_dm(m: f64) -> Result<f64> {
    check_m_open(m)?;
    let (k, e) = agm_complete(m);
    Ok((e - (1.0 - m) * k) / (2.0 * m * (1.0 - m)))
}

/// `dE/dm = (E - K) / (2m)` on `0 < m < 1`.
pub fn de_dm(m: f64) -> Result<f64> {
    check_m_open(m)?;
    let (k, e) = agm_complete(m);
    Ok((e - k) / (2.0 * m))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Adaptive Simpson quadrature, the independent oracle for the frozen
    /// integral values below.
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, tol: f64, depth: u32) -> f64 {
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
            simpson(f, a, m, fa, flm, fm, 0.5 * tol, depth - 1)
                + simpson(f, m, b, fm, frm, fb, 0.5 * tol, depth - 1)
        }
    }

    fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
        let m = 0.5 * (a + b);
        simpson(&f, a, b, f(a), f(m), f(b), tol, 40)
    }

    fn rel_err(got: f64, want: f64) -> f64 {
        (got - want).abs() / want.abs().max(1e-300)
    }

    // Frozen from the quadrature oracle below (and cross-checked by it in
    // `oracle_quadrature_agreement`).
    const K_HALF: f64 = 1.854_074_677_301_372;
    const E_HALF: f64 = 1.350_643_881_047_676;

    #[test]
    fn complete_k_pinned_values() {
        assert!(rel_err(complete_k(0.0).unwrap(), FRAC_PI_2) < 1e-15);
        assert!(rel_err(complete_k(0.5).unwrap(), K_HALF) < 1e-13);
        assert!(complete_k(-0.1).is_err());
        assert!(complete_k(1.0).is_err());
        assert!(complete_k(1.5).is_err());
    }

    #[test]
    fn complete_e_pinned_values() {
        assert!(rel_err(complete_e(0.0).unwrap(), FRAC_PI_2) < 1e-15);
        assert!(rel_err(complete_e(0.5).unwrap(), E_HALF) < 1e-13);
        assert_eq!(complete_e(1.0).unwrap(), 1.0);
        assert!(complete_e(1.0 + 1e-12).is_err());
        assert!(complete_e(-1e-12).is_err());
    }

    #[test]
    fn oracle_quadrature_agreement() {
        // Independent check of the frozen constants and of a grid of m.
        for &m in &[0.1, 0.3, 0.5, 0.7, 0.9, 0.99] {
            let k_quad = integrate(|t| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-14);
            let e_quad = integrate(|t| (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, FRAC_PI_2, 1e-14);
            assert!(rel_err(complete_k(m).unwrap(), k_quad) < 1e-13, "K({m})");
            assert!(rel_err(complete_e(m).unwrap(), e_quad) < 1e-13, "E({m})");
        }
    }

    #[test]
    fn complete_k_diverges_toward_one() {
        // K blows up logarithmically; the domain error at m = 1 is the
        // "divergence signal".
        assert!(complete_k(1.0 - 1e-12).unwrap() > 14.0);
        assert!(complete_k(1.0).is_err());
    }

    #[test]
    fn incomplete_f_basics() {
        for &m in &[0.1, 0.5, 0.9] {
            assert_eq!(incomplete_f(0.0, m).unwrap(), 0.0);
            let k = complete_k(m).unwrap();
            assert!(rel_err(incomplete_f(FRAC_PI_2, m).unwrap(), k) < 1e-13);
        }
        for &x in &[0.3, 1.0, 2.5] {
            assert!((incomplete_f(x, 0.0).unwrap() - x).abs() < 1e-14);
        }
    }

    #[test]
    fn incomplete_f_quasi_periodicity() {
        for &m in &[0.2, 0.5, 0.8] {
            let k = complete_k(m).unwrap();
            for &x in &[-1.3, -0.4, 0.0, 0.7, 1.2] {
                let lhs = incomplete_f(x + PI, m).unwrap();
                let rhs = incomplete_f(x, m).unwrap() + 2.0 * k;
                assert!((lhs - rhs).abs() < 1e-12, "m={m} x={x}");
            }
        }
    }

    #[test]
    fn incomplete_e_matches_quadrature() {
        for &m in &[0.3, 0.7] {
            for &x in &[0.4, 1.1, 2.9, 4.4] {
                let want = integrate(|t| (1.0 - m * t.sin().powi(2)).sqrt(), 0.0, x, 1e-14);
                assert!((incomplete_e(x, m).unwrap() - want).abs() < 1e-12, "m={m} x={x}");
            }
        }
        // m = 1 closed form: integral of |cos|, so E(x,1) = sin(x) on
        // [-pi/2, pi/2] and E(pi, 1) = 2.
        assert!((incomplete_e(0.7, 1.0).unwrap() - 0.7_f64.sin()).abs() < 1e-14);
        assert!((incomplete_e(PI, 1.0).unwrap() - 2.0).abs() < 1e-14);
    }

    #[test]
    fn amplitude_basics() {
        for &m in &[0.2, 0.5, 0.8, 0.99] {
            let k = complete_k(m).unwrap();
            assert_eq!(jacobi_am(0.0, m).unwrap(), 0.0);
            assert!((jacobi_am(k, m).unwrap() - FRAC_PI_2).abs() < 1e-12);
            // unwrapped quasi-periodicity
            for &u in &[-2.0, 0.3, 1.7] {
                let lhs = jacobi_am(u + 2.0 * k, m).unwrap();
                let rhs = jacobi_am(u, m).unwrap() + PI;
                assert!((lhs - rhs).abs() < 1e-12, "m={m} u={u}");
            }
        }
    }

    #[test]
    fn amplitude_closed_form_at_one() {
        for &u in &[-3.0, -0.5, 0.0, 0.5, 3.0] {
            let want = 2.0 * (u as f64).exp().atan() - FRAC_PI_2;
            assert!((jacobi_am(u, 1.0).unwrap() - want).abs() < 1e-14);
        }
    }

    #[test]
    fn sn_cn_dn_values() {
        let (sn, cn, dn) = jacobi_sn_cn_dn(0.0, 0.6).unwrap();
        assert_eq!((sn, cn, dn), (0.0, 1.0, 1.0));

        // dn(K(m), m) = sqrt(1-m), from the amplitude reaching pi/2.
        let k = complete_k(0.5).unwrap();
        let (_, _, dn) = jacobi_sn_cn_dn(k, 0.5).unwrap();
        assert!((dn - 0.5_f64.sqrt()).abs() < 1e-12);

        let (sn, cn, dn) = jacobi_sn_cn_dn(1.3, 1.0).unwrap();
        assert!((sn - 1.3_f64.tanh()).abs() < 1e-15);
        assert!((cn - 1.0 / 1.3_f64.cosh()).abs() < 1e-15);
        assert!((dn - cn).abs() < 1e-15);
    }

    #[test]
    fn derivative_formulas() {
        // dE/dm(0.5) = E(0.5) - K(0.5), from the closed form with 2m = 1.
        let want = E_HALF - K_HALF;
        assert!((de_dm(0.5).unwrap() - want).abs() < 1e-13);

        // dK/dm tends to pi/8 as m -> 0+ (series of K about 0).
        assert!((dk_dm(1e-7).unwrap() - PI / 8.0).abs() < 1e-6);

        // E is strictly decreasing: dE/dm < 0 across (0,1).
        for i in 1..40 {
            let m = i as f64 / 40.0;
            assert!(de_dm(m).unwrap() < 0.0);
        }

        assert!(dk_dm(0.0).is_err());
        assert!(dk_dm(1.0).is_err());
        assert!(de_dm(0.0).is_err());
    }

    #[test]
    fn derivative_matches_finite_differences() {
        let h = 1e-6;
        for &m in &[0.1, 0.25, 0.5, 0.75, 0.9] {
            let fd_k = (complete_k(m + h).unwrap() - complete_k(m - h).unwrap()) / (2.0 * h);
            let fd_e = (complete_e(m + h).unwrap() - complete_e(m - h).unwrap()) / (2.0 * h);
            assert!(rel_err(dk_dm(m).unwrap(), fd_k) < 1e-7, "dK at {m}");
            assert!(rel_err(de_dm(m).unwrap(), fd_e) < 1e-7, "dE at {m}");
        }
    }

    #[test]
    fn monotonicity_of_complete_integrals() {
        let mut prev_k = complete_k(0.0).unwrap();
        let mut prev_e = complete_e(0.0).unwrap();
        for i in 1..=99 {
            let m = i as f64 / 100.0;
            let k = complete_k(m).unwrap();
            let e = complete_e(m).unwrap();
            assert!(k > prev_k);
            assert!(e < prev_e);
            prev_k = k;
            prev_e = e;
        }
    }
}
