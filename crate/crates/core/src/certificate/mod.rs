//! Flag-algebra certificates: loading, the coefficient table, and exact
//! verification.

mod format;
mod table;
mod verify;

use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::exactmath::{Rational, SymMatrix};
use crate::flags::{Flag, TypeSigma};

pub use format::{load_certificate, write_certificate};
pub use table::{coefficient_table, lambda_vector, CoefficientTable, FLAG_PAIR_SAMPLES};
pub use verify::{
    extremal_zero_report, verify, verify_with_table, ExtremalZeroEntry, VerificationReport,
};

/// The shipped certificate for the monochromatic triangle bound 1/25.
pub const SHIPPED_CERTIFICATE: &str = include_str!("../../data/mono_triangle_k3.cert");

/// SHA-256 of [`SHIPPED_CERTIFICATE`].
pub const SHIPPED_SHA256: &str = "42987518138734882c68c1e1df5badfb8ca8f2f4017c5ee026861d4c075ca71a";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CertError {
    #[error("line {line}, column {column}: {msg}")]
    Parse {
        line: usize,
        column: usize,
        msg: String,
    },
    #[error("{0}")]
    Structure(String),
}

/// One block: a 3-vertex type, its ordered flags and the matrix `Q`.
#[derive(Debug, Clone, PartialEq)]
pub struct CertBlock {
    pub sigma: TypeSigma,
    pub vectors: Vec<[u8; 3]>,
    pub flags: Vec<Flag>,
    pub q: SymMatrix,
}

impl CertBlock {
    /// Position of the flag with colour vector `v`.
    pub fn flag_index(&self, v: [u8; 3]) -> Option<usize> {
        self.vectors.iter().position(|&w| w == v)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Certificate {
    pub bound: Rational,
    pub blocks: Vec<CertBlock>,
}

impl Certificate {
    /// The certificate compiled into the crate.
    pub fn shipped() -> Certificate {
        load_certificate(SHIPPED_CERTIFICATE).expect("shipped certificate parses")
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_checksum_is_pinned() {
        assert_eq!(sha256_hex(SHIPPED_CERTIFICATE.as_bytes()), SHIPPED_SHA256);
    }

    #[test]
    fn shipped_shape() {
        let cert = Certificate::shipped();
        assert_eq!(cert.bound, Rational::new(1, 25));
        assert_eq!(cert.blocks.len(), 10);
        for (b, t) in cert.blocks.iter().zip(crate::flags::ten_types()) {
            assert_eq!(b.sigma, t);
            assert_eq!(b.flags.len(), 27);
            assert_eq!(b.q.dim(), 27);
        }
        assert_eq!(cert.blocks[0].vectors[0], [1, 1, 1]);
        assert_eq!(cert.blocks[0].vectors[26], [3, 3, 3]);
    }
}
