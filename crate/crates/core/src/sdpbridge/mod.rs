//! Sparse SDPA problem export, solver solution import and rounding back to
//! an exact certificate.
//!
//! The problem is posed in the form `max tr(C·X)` subject to
//! `tr(A_k·X) = a_k`, `X ⪰ 0`, as read by CSDP. `X` is block diagonal: one
//! block `Q^r` per certificate block, then a diagonal block holding the
//! slacks `λ_k` followed by the bound `b` in its last position.

mod problem;
mod round;
mod solution;

use thiserror::Error;

pub use problem::{
    build_sdp, export_sdp, parse_sdpa, write_sdpa, SdpEntry, SdpProblem, SIG_DIGITS,
};
pub use round::{round_solution, RoundingMode};
pub use solution::{parse_solution, write_solution, NumericSolution};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SdpError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
}
