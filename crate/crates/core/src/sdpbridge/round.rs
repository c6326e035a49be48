use super::SdpError;
use crate::certificate::Certificate;
use crate::exactmath::{rational_reconstruct, round_to_grid, Rational, SymMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RoundingMode {
    /// Nearest multiple of `1/max_den`; entries whose denominator already
    /// fits are kept.
    #[default]
    Grid,
    /// Last continued-fraction convergent with denominator `≤ max_den`.
    ContinuedFraction,
}

/// Exact certificate from numeric blocks, reusing the template's types and
/// flags. The bound is set to `1/25`; nothing here checks validity.
pub fn round_solution(
    template: &Certificate,
    blocks: &[Vec<Vec<Rational>>],
    max_den: u64,
    mode: RoundingMode,
) -> Result<Certificate, SdpError> {
    if blocks.len() != template.blocks.len() {
        return Err(SdpError::Dimension(format!(
            "{} blocks given, template has {}",
            blocks.len(),
            template.blocks.len()
        )));
    }
    let round = |x: &Rational| match mode {
        RoundingMode::Grid if *x.denom() <= max_den.into() => x.clone(),
        RoundingMode::Grid => round_to_grid(x, max_den),
        RoundingMode::ContinuedFraction => rational_reconstruct(x, max_den),
    };
    let mut out = template.clone();
    out.bound = Rational::new(1, 25);
    for (r, (block, numeric)) in out.blocks.iter_mut().zip(blocks).enumerate() {
        let d = block.vectors.len();
        if numeric.len() != d || numeric.iter().any(|row| row.len() != d) {
            return Err(SdpError::Dimension(format!(
                "block {} is not {d}x{d}",
                r + 1
            )));
        }
        let mut q = SymMatrix::zeros(d);
        for i in 0..d {
            for j in i..d {
                q.set(i, j, round(&numeric[i][j]));
            }
        }
        block.q = q;
    }
    Ok(out)
}
