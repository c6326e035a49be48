use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;

use super::SdpError;
use crate::certificate::{Certificate, CoefficientTable, FLAG_PAIR_SAMPLES};
use crate::colouredgraph::mono_triangles;
use crate::exactmath::Rational;

/// Significant digits used for every coefficient in exported files.
pub const SIG_DIGITS: usize = 40;

/// One `matno blkno i j value` line; `i ≤ j`, 1-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdpEntry {
    pub matno: usize,
    pub block: usize,
    pub i: usize,
    pub j: usize,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SdpProblem {
    /// Negative sizes mark diagonal blocks.
    pub block_sizes: Vec<i64>,
    pub rhs: Vec<Rational>,
    pub entries: Vec<SdpEntry>,
}

impl SdpProblem {
    pub fn constraint_count(&self) -> usize {
        self.rhs.len()
    }
}

/// Exact problem data: constraint `k` (models in canonical key order) reads
/// `Σ_r ⟨A[r][k], Q^r⟩ + λ_k + b = p(𝒦³, M_k)`, objective `b`.
pub fn build_sdp(cert: &Certificate, table: &CoefficientTable) -> SdpProblem {
    let models = table.models();
    let m = models.len();
    let slack_block = cert.blocks.len() + 1;
    let mut block_sizes: Vec<i64> = cert.blocks.iter().map(|b| b.vectors.len() as i64).collect();
    block_sizes.push(-(m as i64 + 1));
    let rhs = models
        .iter()
        .map(|(_, g)| Rational::new(BigInt::from(mono_triangles(g).total), 10))
        .collect();
    let mut entries = vec![SdpEntry {
        matno: 0,
        block: slack_block,
        i: m + 1,
        j: m + 1,
        value: Rational::one(),
    }];
    for k in 0..m {
        for r in 0..cert.blocks.len() {
            for &(i, j, c) in table.sparse(r, k) {
                if i <= j {
                    entries.push(SdpEntry {
                        matno: k + 1,
                        block: r + 1,
                        i: i as usize + 1,
                        j: j as usize + 1,
                        value: Rational::new(c as i64, FLAG_PAIR_SAMPLES as i64),
                    });
                }
            }
        }
        entries.push(SdpEntry {
            matno: k + 1,
            block: slack_block,
            i: k + 1,
            j: k + 1,
            value: Rational::one(),
        });
        entries.push(SdpEntry {
            matno: k + 1,
            block: slack_block,
            i: m + 1,
            j: m + 1,
            value: Rational::one(),
        });
    }
    SdpProblem {
        block_sizes,
        rhs,
        entries,
    }
}

pub fn write_sdpa(p: &SdpProblem) -> String {
    let mut out = String::new();
    writeln!(
        out,
        "\"monochromatic triangle flag SDP: maximise the bound in the last slack entry"
    )
    .unwrap();
    writeln!(out, "{} = mDIM", p.rhs.len()).unwrap();
    writeln!(out, "{} = nBLOCK", p.block_sizes.len()).unwrap();
    writeln!(
        out,
        "{}",
        p.block_sizes
            .iter()
            .map(|s| s.to_string())
            .collect::<Vec<_>>()
            .join(" ")
    )
    .unwrap();
    writeln!(
        out,
        "{}",
        p.rhs
            .iter()
            .map(|a| a.to_scientific(SIG_DIGITS))
            .collect::<Vec<_>>()
            .join(" ")
    )
    .unwrap();
    for e in &p.entries {
        writeln!(
            out,
            "{} {} {} {} {}",
            e.matno,
            e.block,
            e.i,
            e.j,
            e.value.to_scientific(SIG_DIGITS)
        )
        .unwrap();
    }
    out
}

pub fn export_sdp(
    cert: &Certificate,
    table: &CoefficientTable,
    path: &Path,
) -> std::io::Result<()> {
    std::fs::write(path, write_sdpa(&build_sdp(cert, table)))
}

/// Reads a sparse SDPA file; numbers become the exact decimals written.
pub fn parse_sdpa(text: &str) -> Result<SdpProblem, SdpError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('"') && !l.starts_with('*'));
    let mut header = |what: &str| {
        lines.next().ok_or_else(|| SdpError::Parse {
            line: text.lines().count() + 1,
            msg: format!("missing {what}"),
        })
    };
    // values may be separated by commas, braces and parentheses
    let split = |l: &str| -> Vec<String> {
        l.split(|c: char| c.is_whitespace() || ",{}()".contains(c))
            .filter(|t| !t.is_empty())
            .map(String::from)
            .collect()
    };
    let first_int = |(ln, l): (usize, &str)| -> Result<usize, SdpError> {
        split(l)
            .first()
            .and_then(|t| t.parse().ok())
            .ok_or(SdpError::Parse {
                line: ln,
                msg: "expected an integer".into(),
            })
    };
    let m = first_int(header("mDIM")?)?;
    let nblocks = first_int(header("nBLOCK")?)?;
    let (ln, l) = header("block structure")?;
    let block_sizes = split(l)
        .iter()
        .take(nblocks)
        .map(|t| {
            t.parse::<i64>().map_err(|_| SdpError::Parse {
                line: ln,
                msg: format!("bad block size `{t}`"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if block_sizes.len() != nblocks {
        return Err(SdpError::Parse {
            line: ln,
            msg: format!("expected {nblocks} block sizes"),
        });
    }
    let mut rhs = Vec::with_capacity(m);
    while rhs.len() < m {
        let (ln, l) = header("right-hand side")?;
        for t in split(l) {
            rhs.push(Rational::from_decimal_str(&t).map_err(|e| SdpError::Parse {
                line: ln,
                msg: e.to_string(),
            })?);
        }
    }
    if rhs.len() != m {
        return Err(SdpError::Dimension(format!(
            "{} right-hand sides for {m} constraints",
            rhs.len()
        )));
    }
    let mut entries = Vec::new();
    for (ln, l) in lines {
        let toks = split(l);
        if toks.len() != 5 {
            return Err(SdpError::Parse {
                line: ln,
                msg: format!("expected 5 fields, found {}", toks.len()),
            });
        }
        let int = |t: &str| {
            t.parse::<usize>().map_err(|_| SdpError::Parse {
                line: ln,
                msg: format!("bad index `{t}`"),
            })
        };
        let e = SdpEntry {
            matno: int(&toks[0])?,
            block: int(&toks[1])?,
            i: int(&toks[2])?,
            j: int(&toks[3])?,
            value: Rational::from_decimal_str(&toks[4]).map_err(|e| SdpError::Parse {
                line: ln,
                msg: e.to_string(),
            })?,
        };
        let size = block_sizes
            .get(e.block.wrapping_sub(1))
            .map(|s| s.unsigned_abs() as usize);
        if e.matno > m || size.is_none_or(|s| e.i == 0 || e.j == 0 || e.i > s || e.j > s) {
            return Err(SdpError::Dimension(format!(
                "line {ln}: entry outside the declared structure"
            )));
        }
        entries.push(e);
    }
    Ok(SdpProblem {
        block_sizes,
        rhs,
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tiny_round_trip() {
        let p = SdpProblem {
            block_sizes: vec![2, -3],
            rhs: vec![Rational::new(1, 3), Rational::zero()],
            entries: vec![
                SdpEntry {
                    matno: 0,
                    block: 2,
                    i: 3,
                    j: 3,
                    value: Rational::one(),
                },
                SdpEntry {
                    matno: 1,
                    block: 1,
                    i: 1,
                    j: 2,
                    value: Rational::new(-1, 120),
                },
            ],
        };
        let text = write_sdpa(&p);
        assert!(text.contains("2 -3\n"));
        let q = parse_sdpa(&text).unwrap();
        assert_eq!(q.block_sizes, p.block_sizes);
        assert_eq!(
            q.entries[1].value,
            Rational::from_decimal_str("-8.333333333333333333333333333333333333333e-3").unwrap()
        );
        assert_eq!(
            q.rhs[0].to_scientific(SIG_DIGITS),
            p.rhs[0].to_scientific(SIG_DIGITS)
        );
    }

    #[test]
    fn malformed_files() {
        assert!(matches!(
            parse_sdpa("1 = mDIM\n1 = nBLOCK\n2\n1\n1 1 1 1\n"),
            Err(SdpError::Parse { line: 5, .. })
        ));
        assert!(matches!(
            parse_sdpa("1 = mDIM\n1 = nBLOCK\n2\n1\n1 1 3 1 1\n"),
            Err(SdpError::Dimension(_))
        ));
        assert!(matches!(
            parse_sdpa("1 = mDIM\n"),
            Err(SdpError::Parse { .. })
        ));
    }
}
