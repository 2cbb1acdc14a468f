// Copyright 2026 the Elastica Authors
// SPDX-License-Identifier: Apache-2.0

//! Discrete variational solver over tangential-angle curves.
//!
//! A curve is a vector of `N+1` unwrapped node angles on a uniform
//! arc-length grid of step `h`; positions are reconstructed by cumulative
//! sums of the midpoint directions, so the unit-speed constraint holds by
//! construction. Clamped boundary data fix the two end angles and the two
//! closure sums
//!
//! ```text
//!   sum_i h cos((theta_i + theta_{i+1})/2) = ell_x,
//!   sum_i h sin((theta_i + theta_{i+1})/2) = ell_y.
//! ```
//!
//! Fixed-length problems keep `h` pinned; penalised problems carry the
//! total length as one extra degree of freedom (log of the uniform step).
//! The closure constraints are enforced by an augmented Lagrangian outer
//! loop around an L-BFGS inner loop with Armijo backtracking.

use num_traits::Float;

use alloc::vec;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::family::{PlacedCurve, SampledCurve};
use crate::{family, fbp, Error, LengthMode, Result, Vec2};

use core::f64::consts::PI;

/// Clamped boundary data: endpoint displacement, end angles, and the
/// length handling.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClampedProblem {
    pub ell_x: f64,
    pub ell_y: f64,
    pub theta0: f64,
    pub theta1: f64,
    pub mode: LengthMode,
}

impl ClampedProblem {
    pub fn chord(&self) -> f64 {
        self.ell_x.hypot(self.ell_y)
    }

    pub fn validate(&self) -> Result<()> {
        match self.mode {
            LengthMode::FixedLength(length) => {
                if !(length > 0.0) {
                    return Err(Error::Domain { what: "length L", value: length });
                }
                if length < self.chord() * (1.0 - 1e-12) {
                    return Err(Error::Infeasible { why: "fixed length below the chord" });
                }
            }
            LengthMode::Penalised(lambda) => {
                if !(lambda > 0.0) {
                    return Err(Error::Domain { what: "lambda", value: lambda });
                }
            }
        }
        Ok(())
    }

    /// Boundary data of a sampled curve, as a fixed-length problem.
    pub fn from_sampled(curve: &SampledCurve) -> Result<Self> {
        let n = curve.len();
        if n < 2 {
            return Err(Error::TooFewSamples { needed: 2, got: n });
        }
        let d = curve.points[n - 1] - curve.points[0];
        Ok(ClampedProblem {
            ell_x: d.x,
            ell_y: d.y,
            theta0: curve.angles[0],
            theta1: curve.angles[n - 1],
            mode: LengthMode::FixedLength(curve.length()),
        })
    }

    /// The same boundary data with the length penalised instead of fixed.
    pub fn penalised(mut self, lambda: f64) -> Self {
        self.mode = LengthMode::Penalised(lambda);
        self
    }
}

/// Which closure components are enforced. The free-boundary variant keeps
/// the end angles clamped but leaves the endpoint heights free, so only
/// the horizontal closure is a constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Closure {
    Full,
    HorizontalOnly,
}

/// Tangential-angle degrees of freedom on a uniform grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteCurve {
    /// `N+1` unwrapped node angles.
    pub theta: Vec<f64>,
    /// Segment length, `> 0`.
    pub h: f64,
}

impl DiscreteCurve {
    pub fn segments(&self) -> usize {
        self.theta.len() - 1
    }

    pub fn length(&self) -> f64 {
        self.h * self.segments() as f64
    }

    /// Node positions from cumulative midpoint sums, starting at the origin.
    pub fn positions(&self) -> Vec<Vec2> {
        let mut out = Vec::with_capacity(self.theta.len());
        let mut p = Vec2::ZERO;
        out.push(p);
        for w in self.theta.windows(2) {
            let (s, c) = (0.5 * (w[0] + w[1])).sin_cos();
            p += Vec2::new(c * self.h, s * self.h);
            out.push(p);
        }
        out
    }

    /// Endpoint displacement of the polyline.
    pub fn closure_sum(&self) -> Vec2 {
        let mut acc = Vec2::ZERO;
        for w in self.theta.windows(2) {
            let (s, c) = (0.5 * (w[0] + w[1])).sin_cos();
            acc += Vec2::new(c, s);
        }
        acc * self.h
    }

    /// Per-segment curvature estimates `(theta_{i+1} - theta_i)/h`.
    pub fn segment_curvatures(&self) -> Vec<f64> {
        self.theta.windows(2).map(|w| (w[1] - w[0]) / self.h).collect()
    }

    /// Second-order one-sided estimates of `k'` at the two curve ends.
    ///
    /// Segment curvatures sit at midpoints `h/2, 3h/2, ...`, so the
    /// stencil `(-2 k0 + 3 k1 - k2)/h` (and its mirror) is the one that
    /// cancels the `k''` term at the boundary.
    pub fn end_curvature_derivatives(&self) -> Result<(f64, f64)> {
        let k = self.segment_curvatures();
        let n = k.len();
        if n < 3 {
            return Err(Error::TooFewSamples { needed: 4, got: n + 1 });
        }
        let start = (-2.0 * k[0] + 3.0 * k[1] - k[2]) / self.h;
        let end = (2.0 * k[n - 1] - 3.0 * k[n - 2] + k[n - 3]) / self.h;
        Ok((start, end))
    }
}

/// Solver configuration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SolverConfig {
    /// Segment count `N` (the curve has `N+1` angle nodes).
    pub n: usize,
    /// Restart count for the uniqueness probe.
    pub restarts: usize,
    /// Sup-norm tolerance on the merit gradient, relative to `1 + |merit|`.
    pub grad_tol: f64,
    /// Absolute closure tolerance; `0` selects `1e-8 * L`.
    pub constraint_tol: f64,
    /// Outer (multiplier update) iteration cap.
    pub max_outer: usize,
    /// Inner (L-BFGS) iteration cap per outer round.
    pub max_inner: usize,
    /// Seed for restart initialisation.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            n: 400,
            restarts: 20,
            grad_tol: 1e-9,
            constraint_tol: 0.0,
            max_outer: 60,
            max_inner: 800,
            seed: 0xE1A5_71CA,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n < 8 {
            return Err(Error::Domain { what: "segment count n (need >= 8)", value: self.n as f64 });
        }
        if !(self.grad_tol > 0.0) {
            return Err(Error::Domain { what: "grad_tol", value: self.grad_tol });
        }
        if self.constraint_tol < 0.0 {
            return Err(Error::Domain { what: "constraint_tol", value: self.constraint_tol });
        }
        Ok(())
    }
}

/// Result of one solve.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveReport {
    pub curve: DiscreteCurve,
    /// Value of the problem objective (bending, plus `lambda L` when
    /// penalised) at the final iterate.
    pub energy: f64,
    /// Max-norm closure violation at the final iterate.
    pub constraint_residual: f64,
    /// Total inner iterations.
    pub iterations: usize,
    pub converged: bool,
    /// Sup-norm of the merit gradient at the final iterate.
    pub grad_norm: f64,
}

/// Discrete energy: `sum ((dtheta)/h)^2 h`, plus `lambda * N h` in
/// penalised mode.
pub fn discrete_energy(curve: &DiscreteCurve, mode: &LengthMode) -> f64 {
    let mut q = 0.0;
    for w in curve.theta.windows(2) {
        let d = w[1] - w[0];
        q += d * d;
    }
    let bending = q / curve.h;
    match *mode {
        LengthMode::FixedLength(_) => bending,
        LengthMode::Penalised(lambda) => bending + lambda * curve.length(),
    }
}

/// Shared per-curve quantities: bending numerator, closure sums and the
/// midpoint direction table.
struct Evaluated {
    q: f64,
    sum_cos: f64,
    sum_sin: f64,
    cos_mid: Vec<f64>,
    sin_mid: Vec<f64>,
}

fn evaluate(theta: &[f64]) -> Evaluated {
    let n = theta.len() - 1;
    let mut q = 0.0;
    let mut sum_cos = 0.0;
    let mut sum_sin = 0.0;
    let mut cos_mid = Vec::with_capacity(n);
    let mut sin_mid = Vec::with_capacity(n);
    for w in theta.windows(2) {
        let d = w[1] - w[0];
        q += d * d;
        let (s, c) = (0.5 * (w[0] + w[1])).sin_cos();
        sum_cos += c;
        sum_sin += s;
        cos_mid.push(c);
        sin_mid.push(s);
    }
    Evaluated { q, sum_cos, sum_sin, cos_mid, sin_mid }
}

/// The augmented-Lagrangian assembly around one clamped problem:
/// objective plus multiplier and penalty terms for the closure
/// constraints.
#[derive(Debug, Clone, Copy)]
pub struct Assembly<'a> {
    pub problem: &'a ClampedProblem,
    pub closure: Closure,
    /// Multiplier estimates for the two closure constraints.
    pub multipliers: [f64; 2],
    /// Quadratic penalty weight.
    pub penalty: f64,
}

impl<'a> Assembly<'a> {
    pub fn new(problem: &'a ClampedProblem) -> Self {
        Assembly { problem, closure: Closure::Full, multipliers: [0.0, 0.0], penalty: 0.0 }
    }

    fn violation_of(&self, ev: &Evaluated, h: f64) -> [f64; 2] {
        let cx = h * ev.sum_cos - self.problem.ell_x;
        let cy = match self.closure {
            Closure::Full => h * ev.sum_sin - self.problem.ell_y,
            Closure::HorizontalOnly => 0.0,
        };
        [cx, cy]
    }

    /// Closure violations `(c_x, c_y)` of a curve.
    pub fn violation(&self, curve: &DiscreteCurve) -> [f64; 2] {
        self.violation_of(&evaluate(&curve.theta), curve.h)
    }

    /// Merit value: objective plus `mu . c + (penalty/2)|c|^2`.
    pub fn merit(&self, curve: &DiscreteCurve) -> f64 {
        let ev = evaluate(&curve.theta);
        let c = self.violation_of(&ev, curve.h);
        self.merit_of(&ev, curve, c)
    }

    fn merit_of(&self, ev: &Evaluated, curve: &DiscreteCurve, c: [f64; 2]) -> f64 {
        let mut value = ev.q / curve.h;
        if let LengthMode::Penalised(lambda) = self.problem.mode {
            value += lambda * curve.length();
        }
        value
            + self.multipliers[0] * c[0]
            + self.multipliers[1] * c[1]
            + 0.5 * self.penalty * (c[0] * c[0] + c[1] * c[1])
    }

    /// Exact merit gradient with respect to every node angle.
    pub fn gradient_nodes(&self, curve: &DiscreteCurve) -> Vec<f64> {
        let ev = evaluate(&curve.theta);
        let c = self.violation_of(&ev, curve.h);
        self.gradient_nodes_of(&ev, curve, c)
    }

    fn gradient_nodes_of(&self, ev: &Evaluated, curve: &DiscreteCurve, c: [f64; 2]) -> Vec<f64> {
        let theta = &curve.theta;
        let h = curve.h;
        let n = theta.len() - 1;
        let wx = self.multipliers[0] + self.penalty * c[0];
        let wy = match self.closure {
            Closure::Full => self.multipliers[1] + self.penalty * c[1],
            Closure::HorizontalOnly => 0.0,
        };
        let mut g = vec![0.0; n + 1];
        for (j, gj) in g.iter_mut().enumerate() {
            let mut v = 0.0;
            if j > 0 {
                v += 2.0 * (theta[j] - theta[j - 1]) / h;
                v += wx * (-0.5 * h * ev.sin_mid[j - 1]) + wy * (0.5 * h * ev.cos_mid[j - 1]);
            }
            if j < n {
                v -= 2.0 * (theta[j + 1] - theta[j]) / h;
                v += wx * (-0.5 * h * ev.sin_mid[j]) + wy * (0.5 * h * ev.cos_mid[j]);
            }
            *gj = v;
        }
        g
    }

    /// Merit derivative with respect to the uniform step `h` (penalised
    /// mode treats the length as this one extra scalar).
    pub fn gradient_step(&self, curve: &DiscreteCurve) -> f64 {
        let ev = evaluate(&curve.theta);
        let c = self.violation_of(&ev, curve.h);
        self.gradient_step_of(&ev, curve, c)
    }

    fn gradient_step_of(&self, ev: &Evaluated, curve: &DiscreteCurve, c: [f64; 2]) -> f64 {
        let h = curve.h;
        let n = curve.segments() as f64;
        let wx = self.multipliers[0] + self.penalty * c[0];
        let wy = match self.closure {
            Closure::Full => self.multipliers[1] + self.penalty * c[1],
            Closure::HorizontalOnly => 0.0,
        };
        let mut d = -ev.q / (h * h);
        if let LengthMode::Penalised(lambda) = self.problem.mode {
            d += lambda * n;
        }
        d + wx * ev.sum_cos + wy * ev.sum_sin
    }
}

/// Gradient of the plain discrete energy with respect to the node angles
/// (no constraint terms).
pub fn energy_gradient(curve: &DiscreteCurve, mode: &LengthMode) -> Vec<f64> {
    let problem =
        ClampedProblem { ell_x: 0.0, ell_y: 0.0, theta0: 0.0, theta1: 0.0, mode: *mode };
    Assembly::new(&problem).gradient_nodes(curve)
}

// ---------------------------------------------------------------------
// L-BFGS inner loop
// ---------------------------------------------------------------------

const LBFGS_MEMORY: usize = 12;

/// Fixed initial metric for the L-BFGS recursion: the exact inverse of
/// the clamped discrete bending Hessian `(2/h) tridiag(-1, 2, -1)`,
/// applied by a Thomas solve, plus a scalar for the optional log-step
/// coordinate. This flattens the `O(N^2)` conditioning of the bending
/// term.
struct Precond {
    /// Pivots of the `tridiag(-1,2,-1)` factorisation.
    pivots: Vec<f64>,
    /// Multiplies the tridiagonal solve: `h/2`.
    theta_factor: f64,
    /// Divides the trailing log-step component, if present.
    step_scale: Option<f64>,
}

impl Precond {
    fn identity() -> Self {
        Precond { pivots: Vec::new(), theta_factor: 1.0, step_scale: None }
    }

    fn bending(n_theta: usize, h: f64, step_scale: Option<f64>) -> Self {
        let mut pivots = Vec::with_capacity(n_theta);
        let mut w = 2.0;
        for _ in 0..n_theta {
            pivots.push(w);
            w = 2.0 - 1.0 / w;
        }
        Precond { pivots, theta_factor: 0.5 * h, step_scale }
    }

    fn apply(&self, q: &mut [f64]) {
        let n = self.pivots.len();
        if n > 0 {
            // forward: y_i = b_i + y_{i-1}/w_{i-1}
            for i in 1..n {
                q[i] += q[i - 1] / self.pivots[i - 1];
            }
            // back: x_i = (y_i + x_{i+1})/w_i
            q[n - 1] /= self.pivots[n - 1];
            for i in (0..n - 1).rev() {
                q[i] = (q[i] + q[i + 1]) / self.pivots[i];
            }
            for v in q[..n].iter_mut() {
                *v *= self.theta_factor;
            }
        }
        if let Some(scale) = self.step_scale {
            let last = q.len() - 1;
            q[last] /= scale;
        }
    }
}

struct InnerOutcome {
    grad_inf: f64,
    iterations: usize,
    stalled: bool,
}

/// Minimise `f` by preconditioned L-BFGS with Armijo backtracking. `x`
/// is updated in place. Stops when the sup-norm of the gradient falls
/// below `gtol`, the iteration cap is reached, or the line search stalls.
fn lbfgs<F>(x: &mut [f64], mut f: F, precond: &Precond, gtol: f64, max_iter: usize) -> InnerOutcome
where
    F: FnMut(&[f64], &mut [f64]) -> f64,
{
    let dim = x.len();
    let mut grad = vec![0.0; dim];
    let mut value = f(x, &mut grad);
    let mut s_hist: Vec<Vec<f64>> = Vec::new();
    let mut y_hist: Vec<Vec<f64>> = Vec::new();
    let mut rho_hist: Vec<f64> = Vec::new();

    fn inf(v: &[f64]) -> f64 {
        v.iter().fold(0.0_f64, |a, &b| a.max(b.abs()))
    }

    let mut iterations = 0;
    let mut stalled = false;
    let mut x_new = vec![0.0; dim];
    let mut grad_new = vec![0.0; dim];
    let mut dir = vec![0.0; dim];

    while iterations < max_iter {
        let gnorm = inf(&grad);
        if gnorm <= gtol {
            break;
        }

        // two-loop recursion with the bending metric as the fixed H0
        dir.copy_from_slice(&grad);
        let k = s_hist.len();
        let mut alpha = vec![0.0; k];
        for i in (0..k).rev() {
            let mut si_d = 0.0;
            for j in 0..dim {
                si_d += s_hist[i][j] * dir[j];
            }
            alpha[i] = rho_hist[i] * si_d;
            for j in 0..dim {
                dir[j] -= alpha[i] * y_hist[i][j];
            }
        }
        precond.apply(&mut dir);
        for i in 0..k {
            let mut yi_d = 0.0;
            for j in 0..dim {
                yi_d += y_hist[i][j] * dir[j];
            }
            let beta = rho_hist[i] * yi_d;
            for j in 0..dim {
                dir[j] += s_hist[i][j] * (alpha[i] - beta);
            }
        }
        for d in dir.iter_mut() {
            *d = -*d;
        }

        let mut slope: f64 = grad.iter().zip(&dir).map(|(g, d)| g * d).sum();
        if slope >= 0.0 {
            // not a descent direction: drop the history, fall back to
            // steepest descent
            s_hist.clear();
            y_hist.clear();
            rho_hist.clear();
            for j in 0..dim {
                dir[j] = -grad[j];
            }
            slope = -grad.iter().map(|g| g * g).sum::<f64>();
        }

        // keep individual moves bounded (radians / log-step units)
        let dmax = inf(&dir);
        if dmax > 1.0 {
            let scale = 1.0 / dmax;
            for d in dir.iter_mut() {
                *d *= scale;
            }
            slope *= scale;
        }

        // Armijo backtracking
        let mut step = 1.0;
        let mut accepted = false;
        let mut v_new = value;
        for _ in 0..60 {
            for j in 0..dim {
                x_new[j] = x[j] + step * dir[j];
            }
            v_new = f(&x_new, &mut grad_new);
            if v_new <= value + 1e-4 * step * slope {
                accepted = true;
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            stalled = true; // at numerical precision
            break;
        }
        // merit is non-increasing across accepted iterations
        debug_assert!(v_new <= value + 1e-12 * (1.0 + value.abs()));

        let mut s_vec = vec![0.0; dim];
        let mut y_vec = vec![0.0; dim];
        let mut sy = 0.0;
        let mut ss = 0.0;
        let mut yy = 0.0;
        for j in 0..dim {
            s_vec[j] = x_new[j] - x[j];
            y_vec[j] = grad_new[j] - grad[j];
            sy += s_vec[j] * y_vec[j];
            ss += s_vec[j] * s_vec[j];
            yy += y_vec[j] * y_vec[j];
        }
        if sy > 1e-12 * (ss * yy).sqrt() {
            if s_hist.len() == LBFGS_MEMORY {
                s_hist.remove(0);
                y_hist.remove(0);
                rho_hist.remove(0);
            }
            s_hist.push(s_vec);
            y_hist.push(y_vec);
            rho_hist.push(1.0 / sy);
        }

        x.copy_from_slice(&x_new);
        grad.copy_from_slice(&grad_new);
        value = v_new;
        iterations += 1;
    }

    InnerOutcome { grad_inf: inf(&grad), iterations, stalled }
}

// ---------------------------------------------------------------------
// Augmented-Lagrangian outer loop
// ---------------------------------------------------------------------

struct Packed<'a> {
    problem: &'a ClampedProblem,
    closure: Closure,
    n: usize,
    fixed_h: Option<f64>,
    multipliers: [f64; 2],
    penalty: f64,
}

impl<'a> Packed<'a> {
    fn dim(&self) -> usize {
        self.n - 1 + usize::from(self.fixed_h.is_none())
    }

    fn pack(&self, curve: &DiscreteCurve, x: &mut Vec<f64>) {
        x.clear();
        x.extend_from_slice(&curve.theta[1..self.n]);
        if self.fixed_h.is_none() {
            x.push(curve.h.ln());
        }
    }

    fn unpack(&self, x: &[f64]) -> DiscreteCurve {
        let mut theta = Vec::with_capacity(self.n + 1);
        theta.push(self.problem.theta0);
        theta.extend_from_slice(&x[..self.n - 1]);
        theta.push(self.problem.theta1);
        let h = self.fixed_h.unwrap_or_else(|| x[self.n - 1].exp());
        DiscreteCurve { theta, h }
    }

    fn assembly(&self) -> Assembly<'a> {
        Assembly {
            problem: self.problem,
            closure: self.closure,
            multipliers: self.multipliers,
            penalty: self.penalty,
        }
    }

    fn eval(&self, x: &[f64], grad: &mut [f64]) -> f64 {
        let curve = self.unpack(x);
        let assembly = self.assembly();
        let ev = evaluate(&curve.theta);
        let c = assembly.violation_of(&ev, curve.h);
        let value = assembly.merit_of(&ev, &curve, c);
        let nodes = assembly.gradient_nodes_of(&ev, &curve, c);
        grad[..self.n - 1].copy_from_slice(&nodes[1..self.n]);
        if self.fixed_h.is_none() {
            grad[self.n - 1] = curve.h * assembly.gradient_step_of(&ev, &curve, c);
        }
        value
    }
}

fn solve_packed(
    problem: &ClampedProblem,
    config: &SolverConfig,
    closure: Closure,
    init: DiscreteCurve,
) -> Result<SolveReport> {
    let n = init.theta.len() - 1;
    let fixed_h = match problem.mode {
        LengthMode::FixedLength(length) => Some(length / n as f64),
        LengthMode::Penalised(_) => None,
    };
    let l_ref = match problem.mode {
        LengthMode::FixedLength(length) => length,
        LengthMode::Penalised(_) => init.length(),
    };
    let ctol = if config.constraint_tol > 0.0 { config.constraint_tol } else { 1e-8 * l_ref };

    let mut packed =
        Packed { problem, closure, n, fixed_h, multipliers: [0.0, 0.0], penalty: 0.0 };
    let mut x = Vec::with_capacity(packed.dim());
    packed.pack(&init, &mut x);

    let e0 = discrete_energy(&init, &problem.mode).abs();
    let scale = 1.0 + e0;
    packed.penalty = 10.0 * scale / (l_ref * l_ref);

    let mut eta = 1e-2 * l_ref;
    let mut omega = 1e-4 * scale;
    let final_gtol = config.grad_tol * scale;

    // Break symmetric saddles: an initial path with an exactly vanishing
    // merit gradient but violated constraints (e.g. the straight line in
    // a free-boundary run) would pin the iteration in place.
    {
        let mut g0 = vec![0.0; packed.dim()];
        let v0 = packed.eval(&x, &mut g0);
        let ginf = g0.iter().fold(0.0_f64, |a, &b| a.max(b.abs()));
        let c0 = packed.assembly().violation(&packed.unpack(&x));
        if ginf <= 1e-12 * (1.0 + v0.abs()) && c0[0].abs().max(c0[1].abs()) > ctol {
            for (i, xi) in x.iter_mut().take(n - 1).enumerate() {
                let t = (i + 1) as f64 / n as f64;
                *xi += 0.05 * (PI * t).sin();
            }
        }
    }

    let mut total_iterations = 0;
    let mut last_cmax = f64::INFINITY;
    let mut converged = false;
    let mut grad_inf = f64::INFINITY;

    for _outer in 0..config.max_outer {
        let gtol_now = omega.max(final_gtol);
        let curve_now = packed.unpack(&x);
        let precond = {
            let step_scale = if packed.fixed_h.is_none() {
                let ev = evaluate(&curve_now.theta);
                let bend = ev.q / curve_now.h;
                let lambda = match problem.mode {
                    LengthMode::Penalised(lambda) => lambda,
                    LengthMode::FixedLength(_) => 0.0,
                };
                let chord2 = problem.ell_x * problem.ell_x + problem.ell_y * problem.ell_y;
                Some((bend + lambda * curve_now.length() + packed.penalty * chord2).max(1.0))
            } else {
                None
            };
            Precond::bending(n - 1, curve_now.h, step_scale)
        };
        let outcome =
            lbfgs(&mut x, |xs, g| packed.eval(xs, g), &precond, gtol_now, config.max_inner);
        total_iterations += outcome.iterations;
        grad_inf = outcome.grad_inf;

        let curve = packed.unpack(&x);
        let c = packed.assembly().violation(&curve);
        let cmax = c[0].abs().max(c[1].abs());

        if cmax <= ctol && (grad_inf <= final_gtol || outcome.stalled) {
            // a stalled line search at feasibility means the iterate sits
            // at the numerically attainable optimum
            converged = true;
            break;
        }

        if cmax <= eta.max(ctol) || cmax <= 0.25 * last_cmax {
            // constraints improving: first-order multiplier update
            packed.multipliers[0] += packed.penalty * c[0];
            if closure == Closure::Full {
                packed.multipliers[1] += packed.penalty * c[1];
            }
            eta = (eta * 0.2).max(0.1 * ctol);
            omega = (omega * 0.2).max(final_gtol);
        } else {
            packed.penalty *= 10.0;
            omega = (omega * 0.5).max(final_gtol);
        }
        last_cmax = cmax;
    }

    let curve = packed.unpack(&x);
    let c = packed.assembly().violation(&curve);
    let energy = discrete_energy(&curve, &problem.mode);
    Ok(SolveReport {
        curve,
        energy,
        constraint_residual: c[0].abs().max(c[1].abs()),
        iterations: total_iterations,
        converged,
        grad_norm: grad_inf,
    })
}

fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    lo + (hi - lo) * u
}

/// Clamped linear interpolation of the end angles plus, for restarts, a
/// smooth three-term random Fourier perturbation of amplitude pi/2 that
/// vanishes at the ends.
fn initial_curve(
    problem: &ClampedProblem,
    n: usize,
    rng: Option<&mut ChaCha8Rng>,
) -> DiscreteCurve {
    let chord = problem.chord();
    let l0 = match problem.mode {
        LengthMode::FixedLength(length) => length,
        LengthMode::Penalised(lambda) => {
            let excess = 0.5 * (problem.theta0.abs() + problem.theta1.abs()) / lambda.sqrt();
            (chord * 1.02 + excess).max(0.01 / lambda.sqrt())
        }
    };
    let coeffs: [f64; 3] = match rng {
        Some(rng) => {
            let mut c = [0.0; 3];
            for (k, ck) in c.iter_mut().enumerate() {
                *ck = uniform(rng, -PI / 2.0, PI / 2.0) / (k + 1) as f64;
            }
            c
        }
        None => [0.0; 3],
    };
    let mut theta = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let t = i as f64 / n as f64;
        let mut v = problem.theta0 + (problem.theta1 - problem.theta0) * t;
        for (k, ck) in coeffs.iter().enumerate() {
            v += ck * ((k + 1) as f64 * PI * t).sin();
        }
        theta.push(v);
    }
    DiscreteCurve { theta, h: l0 / n as f64 }
}

/// Solve a clamped problem from the default initial path.
pub fn solve(problem: &ClampedProblem, config: &SolverConfig) -> Result<SolveReport> {
    problem.validate()?;
    config.validate()?;
    if let Some(report) = straight_special_case(problem, config)? {
        return Ok(report);
    }
    solve_packed(problem, config, Closure::Full, initial_curve(problem, config.n, None))
}

/// Solve from a caller-provided initial curve (warm starts).
pub fn solve_from(
    problem: &ClampedProblem,
    config: &SolverConfig,
    init: DiscreteCurve,
) -> Result<SolveReport> {
    problem.validate()?;
    config.validate()?;
    if init.theta.len() < 9 {
        return Err(Error::TooFewSamples { needed: 9, got: init.theta.len() });
    }
    solve_packed(problem, config, Closure::Full, init)
}

/// Solve the free-boundary variant: end angles clamped, horizontal
/// closure enforced, endpoint heights free.
pub fn solve_free_boundary(problem: &ClampedProblem, config: &SolverConfig) -> Result<SolveReport> {
    problem.validate()?;
    config.validate()?;
    solve_packed(problem, config, Closure::HorizontalOnly, initial_curve(problem, config.n, None))
}

/// Fixed length exactly equal to the chord admits only the straight
/// segment; detect it instead of iterating on a measure-zero feasible set.
fn straight_special_case(
    problem: &ClampedProblem,
    config: &SolverConfig,
) -> Result<Option<SolveReport>> {
    let chord = problem.chord();
    if let LengthMode::FixedLength(length) = problem.mode {
        if chord > 0.0 && (length - chord).abs() <= 1e-12 * chord {
            let dir = problem.ell_y.atan2(problem.ell_x);
            let misaligned = |a: f64| {
                let d = (a - dir).rem_euclid(2.0 * PI);
                d.min(2.0 * PI - d) > 1e-9
            };
            if misaligned(problem.theta0) || misaligned(problem.theta1) {
                return Err(Error::Infeasible {
                    why: "chord-length curve needs aligned end angles",
                });
            }
            let n = config.n;
            let curve =
                DiscreteCurve { theta: vec![problem.theta0; n + 1], h: length / n as f64 };
            return Ok(Some(SolveReport {
                curve,
                energy: 0.0,
                constraint_residual: 0.0,
                iterations: 0,
                converged: true,
                grad_norm: 0.0,
            }));
        }
    }
    Ok(None)
}

/// Outcome of a multi-restart uniqueness probe.
#[derive(Debug, Clone)]
pub struct ProbeReport {
    /// Number of distinct minimiser clusters found among converged runs.
    pub cluster_count: usize,
    /// Lowest-energy converged run.
    pub best: SolveReport,
    /// Largest sup-distance within any cluster.
    pub spread: f64,
    /// Energy of each cluster representative, ascending.
    pub cluster_energies: Vec<f64>,
}

/// Run `config.restarts` randomised solves and cluster the converged
/// results by sup-distance of their angle arrays at tolerance
/// `1e-3 * max(1, max |theta|)`.
pub fn uniqueness_probe(problem: &ClampedProblem, config: &SolverConfig) -> Result<ProbeReport> {
    problem.validate()?;
    config.validate()?;

    if let Some(report) = straight_special_case(problem, config)? {
        return Ok(ProbeReport {
            cluster_count: 1,
            spread: 0.0,
            cluster_energies: alloc::vec![report.energy],
            best: report,
        });
    }

    let mut reports: Vec<SolveReport> = Vec::new();
    let restarts = config.restarts.max(1);
    for r in 0..restarts {
        let init = if r == 0 {
            initial_curve(problem, config.n, None)
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(
                config.seed.wrapping_add(r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15),
            );
            initial_curve(problem, config.n, Some(&mut rng))
        };
        if let Ok(report) = solve_packed(problem, config, Closure::Full, init) {
            if report.converged {
                reports.push(report);
            }
        }
    }
    if reports.is_empty() {
        return Err(Error::NoConvergence { what: "all restarts failed" });
    }

    // deterministic order: energy, then midpoint angle
    reports.sort_by(|a, b| {
        let mid_a = a.curve.theta[a.curve.theta.len() / 2];
        let mid_b = b.curve.theta[b.curve.theta.len() / 2];
        (a.energy, mid_a).partial_cmp(&(b.energy, mid_b)).unwrap()
    });

    let theta_scale =
        reports[0].curve.theta.iter().fold(0.0_f64, |acc, &t| acc.max(t.abs())).max(1.0);
    let tol = 1e-3 * theta_scale;

    let sup_dist = |a: &DiscreteCurve, b: &DiscreteCurve| {
        a.theta.iter().zip(&b.theta).fold(0.0_f64, |acc, (x, y)| acc.max((x - y).abs()))
    };

    let mut representatives: Vec<usize> = Vec::new();
    let mut spread = 0.0_f64;
    for (i, report) in reports.iter().enumerate() {
        let mut joined = false;
        for &rep in &representatives {
            let d = sup_dist(&report.curve, &reports[rep].curve);
            if d <= tol {
                spread = spread.max(d);
                joined = true;
                break;
            }
        }
        if !joined {
            representatives.push(i);
        }
    }

    let cluster_energies = representatives.iter().map(|&i| reports[i].energy).collect();
    Ok(ProbeReport {
        cluster_count: representatives.len(),
        best: reports[0].clone(),
        spread,
        cluster_energies,
    })
}

/// Sup point distance and relative bending-energy gap between a discrete
/// solve and an analytic placed curve, after aligning start points and
/// initial tangents on a common normalised grid.
pub fn compare_to_analytic(report: &SolveReport, placed: &PlacedCurve) -> Result<(f64, f64)> {
    let l_d = report.curve.length();
    let l_a = match placed.length() {
        Some(l) => l,
        None => return Err(Error::InfiniteDomain),
    };
    if (l_d - l_a).abs() > 0.02 * l_a.max(l_d) {
        return Err(Error::LengthMismatch { a: l_d, b: l_a });
    }

    let n = report.curve.segments();
    let start = placed.domain.start();
    let first = family::eval(placed, start)?;
    let rot = first.angle - report.curve.theta[0];

    let discrete = report.curve.positions();
    let mut sup = 0.0_f64;
    for (i, p) in discrete.iter().enumerate() {
        let s = start + l_a * i as f64 / n as f64;
        let a = family::eval(placed, s)?.position - first.position;
        let d = p.rotated(rot);
        sup = sup.max((d - a).norm());
    }

    let bending_d = discrete_energy(&report.curve, &LengthMode::FixedLength(l_d));
    let fine = family::sample(placed, l_a / (4 * n.max(1000)) as f64)?;
    let bending_a = fbp::bending_energy(&fine)?;
    let gap = (bending_d - bending_a).abs() / bending_a.abs().max(1e-12);
    Ok((sup / l_a, gap))
}

/// A random admissible curve for the problem: clamped ends, closure
/// satisfied to high accuracy, no energy descent beyond what feasibility
/// restoration does. Used as a competitor generator.
pub fn feasible_curve(
    problem: &ClampedProblem,
    closure: Closure,
    config: &SolverConfig,
    seed: u64,
) -> Result<DiscreteCurve> {
    problem.validate()?;
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let init = initial_curve(problem, config.n, Some(&mut rng));
    let n = init.theta.len() - 1;
    let l_ref = init.length();

    let packed = Packed {
        problem,
        closure,
        n,
        fixed_h: Some(init.h),
        multipliers: [0.0, 0.0],
        penalty: 1.0,
    };
    let mut x = Vec::new();
    packed.pack(&init, &mut x);
    // pure feasibility restoration: minimise |c|^2/2 over interior angles
    let feas = |xs: &[f64], g: &mut [f64]| {
        let curve = packed.unpack(xs);
        let assembly = packed.assembly();
        let ev = evaluate(&curve.theta);
        let c = assembly.violation_of(&ev, curve.h);
        let h = curve.h;
        for j in 1..n {
            g[j - 1] = c[0] * (-0.5 * h * (ev.sin_mid[j - 1] + ev.sin_mid[j]))
                + c[1] * (0.5 * h * (ev.cos_mid[j - 1] + ev.cos_mid[j]));
        }
        0.5 * (c[0] * c[0] + c[1] * c[1])
    };
    lbfgs(&mut x, feas, &Precond::identity(), 0.0, 4000);
    let curve = packed.unpack(&x);
    let c = packed.assembly().violation(&curve);
    if c[0].abs().max(c[1].abs()) > 1e-9 * l_ref {
        return Err(Error::NoConvergence { what: "feasibility restoration" });
    }
    Ok(curve)
}

/// Energies of an explicit loop family demonstrating unbounded descent of
/// the modified energy for negative multipliers.
#[derive(Debug, Clone, PartialEq)]
pub struct LoopDemo {
    /// Modified energies for loop counts `1..=10`.
    pub energies: Vec<f64>,
    /// First loop count at which the sequence dips below its predecessor
    /// (the base curve for n = 1), if any.
    pub crossover: Option<usize>,
}

/// Build admissible competitors with `n = 1..=10` tangentially inserted
/// loops of growing radius and return their modified energies. For any
/// `lambda < 0` the sequence is strictly decreasing and unbounded below;
/// for `lambda > 0` the same construction is increasing.
pub fn negative_lambda_demo(problem: &ClampedProblem) -> Result<LoopDemo> {
    let lambda = match problem.mode {
        LengthMode::Penalised(lambda) => lambda,
        LengthMode::FixedLength(_) => {
            return Err(Error::Infeasible { why: "loop demo needs the penalised mode" })
        }
    };
    if lambda == 0.0 {
        return Err(Error::Domain { what: "lambda", value: lambda });
    }
    if problem.theta0 != 0.0
        || problem.theta1 != 0.0
        || problem.ell_y != 0.0
        || problem.ell_x <= 0.0
    {
        return Err(Error::Infeasible { why: "loop demo needs straight-segment boundary data" });
    }

    let n0 = 64usize; // straight carrier segments
    let h = problem.ell_x / n0 as f64;
    let r_base = problem.ell_x.max(1.0 / lambda.abs().sqrt());

    let mode = LengthMode::Penalised(lambda);
    let base_energy = {
        let curve = DiscreteCurve { theta: vec![0.0; n0 + 1], h };
        discrete_energy(&curve, &mode)
    };

    let mut energies = Vec::with_capacity(10);
    for loops in 1..=10usize {
        let radius = loops as f64 * r_base;
        let per_loop = ((2.0 * PI * radius / h).round() as usize).max(8);
        let turn = 2.0 * PI / per_loop as f64;
        let total = loops * per_loop;

        // flat run, n full turns at constant rate, flat run: the equally
        // spaced midpoint directions of each full turn sum to zero, so the
        // closure constraints hold exactly
        let mut theta = Vec::with_capacity(n0 + total + 1);
        for _ in 0..=n0 / 2 {
            theta.push(0.0);
        }
        for j in 1..=total {
            theta.push(j as f64 * turn);
        }
        let top = 2.0 * PI * loops as f64;
        for _ in 0..n0 - n0 / 2 {
            theta.push(top);
        }
        let curve = DiscreteCurve { theta, h };
        debug_assert!({
            let c = curve.closure_sum();
            (c.x - problem.ell_x).abs() < 1e-9 && c.y.abs() < 1e-9
        });
        energies.push(discrete_energy(&curve, &mode));
    }

    let mut crossover = None;
    let mut prev = base_energy;
    for (i, &e) in energies.iter().enumerate() {
        if e < prev {
            crossover = Some(i + 1);
            break;
        }
        prev = e;
    }
    Ok(LoopDemo { energies, crossover })
}
