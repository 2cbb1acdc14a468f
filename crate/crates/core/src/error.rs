// Copyright 2026 the Elastica Authors
// SPDX-License-Identifier: Apache-2.0

use core::fmt;

/// Crate-wide error type.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// An argument lies outside the mathematical domain of the operation.
    Domain {
        what: &'static str,
        value: f64,
    },
    /// A target value lies outside the range of the map being inverted.
    OutOfRange {
        what: &'static str,
        value: f64,
    },
    /// An iteration failed to reach its tolerance within its budget.
    NoConvergence {
        what: &'static str,
    },
    /// A sampled curve does not carry enough nodes for the stencil.
    TooFewSamples {
        needed: usize,
        got: usize,
    },
    /// Sampling or quadrature was requested on an unbounded domain
    /// without a truncation window.
    InfiniteDomain,
    /// An integrand tail does not decay on an unbounded domain.
    NonDecayingTail,
    /// The boundary data admit no curve (e.g. fixed length below the chord).
    Infeasible {
        why: &'static str,
    },
    /// Two curves that must agree in length do not.
    LengthMismatch {
        a: f64,
        b: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Domain { what, value } => {
                write!(f, "domain error: {what} = {value}")
            }
            Error::OutOfRange { what, value } => {
                write!(f, "target out of range: {what} = {value}")
            }
            Error::NoConvergence { what } => {
                write!(f, "iteration did not converge: {what}")
            }
            Error::TooFewSamples { needed, got } => {
                write!(f, "too few samples: need {needed}, got {got}")
            }
            Error::InfiniteDomain => {
                write!(f, "operation requires a finite domain (set a truncation window)")
            }
            Error::NonDecayingTail => {
                write!(f, "integrand tail does not decay on the unbounded domain")
            }
            Error::Infeasible { why } => write!(f, "infeasible problem: {why}"),
            Error::LengthMismatch { a, b } => {
                write!(f, "length mismatch: {a} vs {b}")
            }
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;
