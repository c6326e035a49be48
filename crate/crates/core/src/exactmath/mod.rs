//! Exact rational arithmetic, symmetric matrices, PSD testing and rational
//! reconstruction. Nothing here touches floating point.

mod matrix;
mod rational;
mod reconstruct;

pub use matrix::{
    ldl_factor, psd_check, Ldl, LdlFailure, LdlFailureKind, MatrixError, PsdVerdict, SymMatrix,
};
pub use rational::{binomial, ratio, ParseRationalError, Rational};
pub use reconstruct::{rational_reconstruct, round_to_grid, DEFAULT_MAX_DEN};
