//! Line-oriented certificate text format.
//!
//! ```text
//! FLAGCERT 1
//! BOUND p/q
//! TYPE r          (then 3 rows of the type colour matrix)
//! FLAGS m         (then m lines `c1 c2 c3`)
//! Q m             (then m rows of m rationals)
//! ```
//! Blank lines and lines starting with `#` are ignored.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use super::{CertBlock, CertError, Certificate};
use crate::colouredgraph::ColouredGraph;
use crate::exactmath::{Rational, SymMatrix};
use crate::flags::{flag_from_vector, TypeSigma};

struct Lines<'a> {
    items: Vec<(usize, &'a str)>,
    pos: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let items = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l))
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
            .collect();
        Lines { items, pos: 0 }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str), CertError> {
        let item = self.items.get(self.pos).copied().ok_or_else(|| {
            let line = self.items.last().map_or(1, |(l, _)| l + 1);
            CertError::Parse {
                line,
                column: 1,
                msg: format!("unexpected end of input, expected {what}"),
            }
        })?;
        self.pos += 1;
        Ok(item)
    }

    fn peek(&self) -> Option<(usize, &'a str)> {
        self.items.get(self.pos).copied()
    }
}

/// Whitespace-separated tokens with 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        match (ch.is_whitespace(), start) {
            (false, None) => start = Some(i),
            (true, Some(s)) => {
                out.push((s + 1, &line[s..i]));
                start = None;
            }
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_err(line: usize, column: usize, msg: impl Into<String>) -> CertError {
    CertError::Parse {
        line,
        column,
        msg: msg.into(),
    }
}

fn expect_keyword<'a>(
    lines: &mut Lines<'a>,
    keyword: &str,
) -> Result<(usize, Vec<(usize, &'a str)>), CertError> {
    let (ln, text) = lines.next(keyword)?;
    let toks = tokens(text);
    if toks.first().map(|t| t.1) != Some(keyword) {
        return Err(parse_err(
            ln,
            toks.first().map_or(1, |t| t.0),
            format!("expected `{keyword}`"),
        ));
    }
    if toks.len() != 2 {
        return Err(parse_err(
            ln,
            1,
            format!("`{keyword}` takes exactly one argument"),
        ));
    }
    Ok((ln, toks))
}

fn parse_count(ln: usize, tok: (usize, &str)) -> Result<usize, CertError> {
    tok.1
        .parse()
        .map_err(|_| parse_err(ln, tok.0, format!("bad count `{}`", tok.1)))
}

fn parse_u8_row(ln: usize, text: &str, len: usize) -> Result<Vec<u8>, CertError> {
    let toks = tokens(text);
    if toks.len() != len {
        return Err(parse_err(
            ln,
            1,
            format!("expected {len} entries, found {}", toks.len()),
        ));
    }
    toks.iter()
        .map(|&(col, t)| {
            t.parse::<u8>()
                .map_err(|_| parse_err(ln, col, format!("bad colour `{t}`")))
        })
        .collect()
}

pub fn load_certificate(text: &str) -> Result<Certificate, CertError> {
    let mut lines = Lines::new(text);
    let (ln, toks) = expect_keyword(&mut lines, "FLAGCERT")?;
    if toks[1].1 != "1" {
        return Err(parse_err(
            ln,
            toks[1].0,
            format!("unsupported version `{}`", toks[1].1),
        ));
    }
    let (ln, toks) = expect_keyword(&mut lines, "BOUND")?;
    let bound: Rational = toks[1]
        .1
        .parse()
        .map_err(|_| parse_err(ln, toks[1].0, "bad rational bound"))?;

    let mut blocks = Vec::new();
    while lines.peek().is_some() {
        let r = blocks.len() + 1;
        let (ln, toks) = expect_keyword(&mut lines, "TYPE")?;
        if parse_count(ln, toks[1])? != r {
            return Err(parse_err(
                ln,
                toks[1].0,
                format!("expected block number {r}"),
            ));
        }
        let mut rows = Vec::with_capacity(3);
        for _ in 0..3 {
            let (ln, text) = lines.next("type row")?;
            rows.push((ln, parse_u8_row(ln, text, 3)?));
        }
        let type_graph =
            ColouredGraph::from_rows(3, &rows.iter().map(|r| r.1.clone()).collect::<Vec<_>>())
                .map_err(|e| {
                    CertError::Structure(format!("block {r}: invalid type matrix: {e}"))
                })?;
        let sigma = TypeSigma::new(type_graph);

        let (ln, toks) = expect_keyword(&mut lines, "FLAGS")?;
        let m = parse_count(ln, toks[1])?;
        let mut vectors = Vec::with_capacity(m);
        let mut flags = Vec::with_capacity(m);
        let mut seen = BTreeSet::new();
        for idx in 0..m {
            let (ln, text) = lines.next("flag vector")?;
            let row = parse_u8_row(ln, text, 3)?;
            let v = [row[0], row[1], row[2]];
            let flag = flag_from_vector(&sigma, v)
                .map_err(|e| CertError::Structure(format!("block {r}, flag {}: {e}", idx + 1)))?;
            // vectors over a 3-vertex type determine the flag class
            if !seen.insert(v) {
                return Err(CertError::Structure(format!(
                    "block {r}, flag {}: duplicate flag {v:?}",
                    idx + 1
                )));
            }
            vectors.push(v);
            flags.push(flag);
        }

        let (ln, toks) = expect_keyword(&mut lines, "Q")?;
        let dim = parse_count(ln, toks[1])?;
        if dim != m {
            return Err(CertError::Structure(format!(
                "block {r}: Q has dimension {dim} but there are {m} flags"
            )));
        }
        let mut q_rows = Vec::with_capacity(dim);
        for _ in 0..dim {
            let (ln, text) = lines.next("Q row")?;
            let toks = tokens(text);
            if toks.len() != dim {
                return Err(parse_err(
                    ln,
                    1,
                    format!("expected {dim} entries, found {}", toks.len()),
                ));
            }
            let row = toks
                .iter()
                .map(|&(col, t)| {
                    t.parse::<Rational>()
                        .map_err(|_| parse_err(ln, col, format!("bad rational `{t}`")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            q_rows.push(row);
        }
        let q = SymMatrix::from_rows(q_rows)
            .map_err(|e| CertError::Structure(format!("block {r}: Q: {e}")))?;
        blocks.push(CertBlock {
            sigma,
            vectors,
            flags,
            q,
        });
    }
    if blocks.is_empty() {
        return Err(CertError::Structure("certificate has no blocks".into()));
    }
    Ok(Certificate { bound, blocks })
}

pub fn write_certificate(cert: &Certificate) -> String {
    let mut out = String::new();
    writeln!(out, "FLAGCERT 1").unwrap();
    writeln!(out, "BOUND {}", cert.bound).unwrap();
    for (r, block) in cert.blocks.iter().enumerate() {
        writeln!(out, "TYPE {}", r + 1).unwrap();
        for row in block.sigma.graph().rows() {
            writeln!(
                out,
                "{}",
                row.iter()
                    .map(|c| c.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )
            .unwrap();
        }
        writeln!(out, "FLAGS {}", block.vectors.len()).unwrap();
        for v in &block.vectors {
            writeln!(out, "{} {} {}", v[0], v[1], v[2]).unwrap();
        }
        writeln!(out, "Q {}", block.q.dim()).unwrap();
        for row in block.q.rows() {
            writeln!(
                out,
                "{}",
                row.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            )
            .unwrap();
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::certificate::SHIPPED_CERTIFICATE;

    #[test]
    fn round_trip_is_byte_exact() {
        let cert = load_certificate(SHIPPED_CERTIFICATE).unwrap();
        assert_eq!(write_certificate(&cert), SHIPPED_CERTIFICATE);
    }

    #[test]
    fn asymmetric_q_is_rejected() {
        let mut lines: Vec<String> = SHIPPED_CERTIFICATE.lines().map(String::from).collect();
        // first Q row of block 1 sits after FLAGCERT, BOUND, TYPE + 3, FLAGS + 27, Q
        let q_start = lines.iter().position(|l| l.starts_with("Q ")).unwrap() + 1;
        let mut toks: Vec<&str> = lines[q_start].split(' ').collect();
        toks[1] = "7/9";
        lines[q_start] = toks.join(" ");
        let text = lines.join("\n");
        match load_certificate(&text) {
            Err(CertError::Structure(msg)) => assert!(
                msg.contains("block 1") && msg.contains("symmetric"),
                "{msg}"
            ),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn bad_flag_colour_is_rejected() {
        let text = SHIPPED_CERTIFICATE.replacen("FLAGS 27\n1 1 1\n", "FLAGS 27\n1 1 4\n", 1);
        match load_certificate(&text) {
            Err(CertError::Structure(msg)) => assert!(msg.contains("block 1, flag 1"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = load_certificate("FLAGCERT 1\nBOUND 1/x\n").unwrap_err();
        assert_eq!(
            err,
            CertError::Parse {
                line: 2,
                column: 7,
                msg: "bad rational bound".into()
            }
        );
        let truncated: String = SHIPPED_CERTIFICATE
            .lines()
            .take(40)
            .collect::<Vec<_>>()
            .join("\n");
        assert!(matches!(
            load_certificate(&truncated),
            Err(CertError::Parse { line: 41, .. })
        ));
        assert!(matches!(
            load_certificate("FLAGCERT 2\n"),
            Err(CertError::Parse {
                line: 1,
                column: 10,
                ..
            })
        ));
    }
}
