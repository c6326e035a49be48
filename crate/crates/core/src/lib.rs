//! Exact tooling for monochromatic triangles in 3-edge-coloured complete
//! graphs: model enumeration, flag densities, a checker for the semidefinite
//! certificate proving the asymptotic minimum density 1/25, the extremal
//! constructions, and an SDPA bridge for regenerating certificates.

#![allow(
    clippy::needless_range_loop,
    clippy::type_complexity,
    clippy::result_large_err
)]

pub mod certificate;
pub mod cli;
pub mod colouredgraph;
pub mod exactmath;
pub mod extremal;
pub mod flags;
pub mod sdpbridge;
