use std::fmt::Write as _;

use super::SdpError;
use crate::exactmath::Rational;

/// Primal blocks of a solver run, symmetrised, with the bound read from the
/// last slack entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NumericSolution {
    pub y: Vec<Rational>,
    pub blocks: Vec<Vec<Vec<Rational>>>,
    pub bound: Option<Rational>,
}

/// Parses a CSDP-style solution: the dual vector `y` on the first line, then
/// `matno blkno i j value` lines where `matno = 2` marks the primal `X`.
/// `dims` are the flag block sizes; the slack block follows them and the
/// bound sits at position `slack_size` of its diagonal. Off-diagonal pairs
/// given in both orders are averaged.
pub fn parse_solution(
    text: &str,
    dims: &[usize],
    slack_size: usize,
) -> Result<NumericSolution, SdpError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (ln, first) = lines.next().ok_or(SdpError::Parse {
        line: 1,
        msg: "empty solution file".into(),
    })?;
    let decimal = |t: &str, ln: usize| {
        Rational::from_decimal_str(t).map_err(|e| SdpError::Parse {
            line: ln,
            msg: e.to_string(),
        })
    };
    let y = first
        .split_whitespace()
        .map(|t| decimal(t, ln))
        .collect::<Result<Vec<_>, _>>()?;

    let mut raw: Vec<Vec<Vec<Option<Rational>>>> =
        dims.iter().map(|&d| vec![vec![None; d]; d]).collect();
    let mut bound = None;
    for (ln, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
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
        let (matno, blk, i, j) = (int(toks[0])?, int(toks[1])?, int(toks[2])?, int(toks[3])?);
        let value = decimal(toks[4], ln)?;
        if matno != 2 {
            continue;
        }
        if blk == dims.len() + 1 {
            if i == slack_size && j == slack_size {
                bound = Some(value);
            }
            continue;
        }
        let d = *dims
            .get(blk.wrapping_sub(1))
            .ok_or_else(|| SdpError::Dimension(format!("line {ln}: no block {blk}")))?;
        if i == 0 || j == 0 || i > d || j > d {
            return Err(SdpError::Dimension(format!(
                "line {ln}: ({i},{j}) outside a {d}x{d} block"
            )));
        }
        raw[blk - 1][i - 1][j - 1] = Some(value);
    }
    let blocks = raw
        .iter()
        .map(|b| {
            let d = b.len();
            (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| match (&b[i][j], &b[j][i]) {
                            (Some(a), Some(c)) => (a + c) / Rational::from(2),
                            (Some(a), None) | (None, Some(a)) => a.clone(),
                            (None, None) => Rational::zero(),
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(NumericSolution { y, blocks, bound })
}

/// Writes blocks in the same layout, upper triangle only, with `sig`
/// significant digits.
pub fn write_solution(
    blocks: &[Vec<Vec<Rational>>],
    bound: &Rational,
    slack_size: usize,
    sig: usize,
) -> String {
    let mut out = String::from("0\n");
    for (r, b) in blocks.iter().enumerate() {
        for (i, row) in b.iter().enumerate() {
            for (j, v) in row.iter().enumerate().skip(i) {
                if !v.is_zero() {
                    writeln!(
                        out,
                        "2 {} {} {} {}",
                        r + 1,
                        i + 1,
                        j + 1,
                        v.to_scientific(sig)
                    )
                    .unwrap();
                }
            }
        }
    }
    writeln!(
        out,
        "2 {} {slack_size} {slack_size} {}",
        blocks.len() + 1,
        bound.to_scientific(sig)
    )
    .unwrap();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_blocks() {
        let mut text = String::from("0.1 0.2\n");
        for r in 1..=10 {
            for i in 1..=27 {
                text.push_str(&format!("2 {r} {i} {i} 1.0\n"));
            }
        }
        text.push_str("2 11 793 793 4.0e-2\n1 1 1 1 5.0\n");
        let sol = parse_solution(&text, &[27; 10], 793).unwrap();
        assert_eq!(sol.blocks.len(), 10);
        for b in &sol.blocks {
            for (i, row) in b.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    assert_eq!(
                        *v,
                        if i == j {
                            Rational::one()
                        } else {
                            Rational::zero()
                        }
                    );
                }
            }
        }
        assert_eq!(sol.bound, Some(Rational::new(1, 25)));
        assert_eq!(sol.y.len(), 2);
    }

    #[test]
    fn truncated_line_is_named() {
        let text = "0\n2 1 1 1 1.0\n2 1 1 2\n";
        assert_eq!(
            parse_solution(text, &[2], 3),
            Err(SdpError::Parse {
                line: 3,
                msg: "expected 5 fields, found 4".into()
            })
        );
        assert!(matches!(
            parse_solution("", &[2], 3),
            Err(SdpError::Parse { line: 1, .. })
        ));
        assert!(matches!(
            parse_solution("0\n2 1 3 1 1\n", &[2], 3),
            Err(SdpError::Dimension(_))
        ));
    }

    #[test]
    fn asymmetric_entries_are_averaged() {
        let text = "0\n2 1 1 2 0.5\n2 1 2 1 0.25\n2 1 2 2 1\n";
        let sol = parse_solution(text, &[2], 3).unwrap();
        assert_eq!(sol.blocks[0][0][1], Rational::new(3, 8));
        assert_eq!(sol.blocks[0][1][0], Rational::new(3, 8));
        assert_eq!(sol.blocks[0][1][1], Rational::one());
        assert_eq!(sol.bound, None);
    }
}
