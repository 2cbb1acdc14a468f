// Copyright 2026 the Elastica Authors
// SPDX-License-Identifier: Apache-2.0

//! Planar Euler elasticae with monotone curvature.
//!
//! This crate provides the numerical machinery for the classical elastica
//! equation `2k'' + k^3 - lambda k = 0` on planar arc-length parametrised
//! curves:
//!
//! * [`elliptic`] — complete/incomplete elliptic integrals and Jacobi
//!   elliptic functions (parameter convention `m`, the squared modulus).
//! * [`family`] — the five similarity classes of planar elasticae
//!   (linear, wavelike, borderline, orbitlike, circular), with evaluation,
//!   similarity placement, sampling and residual checking.
//! * [`maps`] — the monotone parameter maps tying boundary data to the
//!   elliptic parameter `m`, their inverses, roots and extrema.
//! * [`fbp`] — closed-form constructors for the free-boundary minimisers
//!   on parallel support lines, plus the energy functionals.
//! * [`solver`] — a discrete variational solver over tangential-angle
//!   curves (augmented Lagrangian outer loop, L-BFGS inner loop).
//! * [`straighten`] — the straightening regime: boundary-layer rescaling,
//!   borderline limit profiles and the length-map scan.
//!
//! The crate is `no_std`-compatible (requires `alloc`); all floating point
//! math is routed through `libm` in that configuration.

#![cfg_attr(not(any(test, feature = "std")), no_std)]

extern crate alloc;

mod error;
mod geom;

pub mod elliptic;
pub mod family;
pub mod fbp;
pub mod maps;
pub mod solver;
pub mod straighten;

pub use error::{Error, Result};
pub use geom::Vec2;

/// Length handling shared by the free-boundary constructors and the
/// discrete solver: either the total length is pinned, or it is free and
/// penalised at rate `lambda > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum LengthMode {
    /// Fixed total length.
    FixedLength(f64),
    /// Free length, objective `B + lambda * L`.
    Penalised(f64),
}
