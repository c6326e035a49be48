use std::fmt;

use thiserror::Error;

/// Colour conventions used throughout: 1 = red, 2 = blue, 3 = green.
pub const RED: u8 = 1;
pub const BLUE: u8 = 2;
pub const GREEN: u8 = 3;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("colour {colour} at ({i},{j}) is outside 1..={k}")]
    ColourOutOfRange {
        i: usize,
        j: usize,
        colour: u8,
        k: u8,
    },
    #[error("diagonal entry ({i},{i}) must be 0")]
    NonZeroDiagonal { i: usize },
    #[error("colour matrix not symmetric at ({i},{j})")]
    NotSymmetric { i: usize, j: usize },
    #[error("colour matrix row {row} has {len} entries, expected {n}")]
    BadRow { row: usize, len: usize, n: usize },
    #[error("colour count must be in 1..=9, got {0}")]
    BadColourCount(u8),
    #[error("{what}: size {size} exceeds the supported limit {limit}")]
    SizeLimit {
        what: &'static str,
        size: usize,
        limit: usize,
    },
    #[error("pattern on {pattern} vertices cannot fit in a host on {host}")]
    SizeMismatch { pattern: usize, host: usize },
    #[error("family members {0} and {1} are isomorphic")]
    DuplicateClass(usize, usize),
    #[error("family members must share one vertex count")]
    MixedSizes,
    #[error("vertex {v} out of range for a graph on {n} vertices")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("colour {c} out of range 1..={k}")]
    ColourArgOutOfRange { c: u8, k: u8 },
    #[error("graph text line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("flag types differ")]
    TypeMismatch,
    #[error("invalid flag: {0}")]
    InvalidFlag(String),
    #[error("invalid base colouring: {0}")]
    InvalidBase(String),
}

/// A complete graph on `n` vertices whose edges carry colours `1..=k`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ColouredGraph {
    n: usize,
    k: u8,
    colours: Vec<u8>,
}

impl ColouredGraph {
    /// Validates a full `n×n` colour matrix.
    pub fn from_rows(k: u8, rows: &[Vec<u8>]) -> Result<Self, GraphError> {
        check_k(k)?;
        let n = rows.len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(GraphError::BadRow {
                    row,
                    len: r.len(),
                    n,
                });
            }
        }
        for i in 0..n {
            if rows[i][i] != 0 {
                return Err(GraphError::NonZeroDiagonal { i });
            }
            for j in 0..n {
                if i == j {
                    continue;
                }
                let c = rows[i][j];
                if c == 0 || c > k {
                    return Err(GraphError::ColourOutOfRange { i, j, colour: c, k });
                }
                if rows[j][i] != c {
                    return Err(GraphError::NotSymmetric { i, j });
                }
            }
        }
        Ok(ColouredGraph {
            n,
            k,
            colours: rows.iter().flatten().copied().collect(),
        })
    }

    /// Colour of edge `{i,j}` taken from `f(i, j)` with `i < j`.
    pub fn from_fn(
        n: usize,
        k: u8,
        mut f: impl FnMut(usize, usize) -> u8,
    ) -> Result<Self, GraphError> {
        check_k(k)?;
        let mut colours = vec![0u8; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let c = f(i, j);
                if c == 0 || c > k {
                    return Err(GraphError::ColourOutOfRange { i, j, colour: c, k });
                }
                colours[i * n + j] = c;
                colours[j * n + i] = c;
            }
        }
        Ok(ColouredGraph { n, k, colours })
    }

    pub fn monochromatic(n: usize, k: u8, c: u8) -> Self {
        Self::from_fn(n, k, |_, _| c).expect("colour in range")
    }

    /// Colours listed in upper-triangle row-major order:
    /// `(0,1), (0,2), …, (0,n-1), (1,2), …`.
    pub fn from_upper_triangle(n: usize, k: u8, upper: &[u8]) -> Result<Self, GraphError> {
        assert_eq!(upper.len(), n * n.saturating_sub(1) / 2);
        let mut it = upper.iter();
        Self::from_fn(n, k, |_, _| *it.next().unwrap())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> u8 {
        self.k
    }

    #[inline]
    pub fn colour(&self, i: usize, j: usize) -> u8 {
        self.colours[i * self.n + j]
    }

    pub fn set_colour(&mut self, i: usize, j: usize, c: u8) -> Result<(), GraphError> {
        for v in [i, j] {
            if v >= self.n {
                return Err(GraphError::VertexOutOfRange { v, n: self.n });
            }
        }
        if i == j || c == 0 || c > self.k {
            return Err(GraphError::ColourOutOfRange {
                i,
                j,
                colour: c,
                k: self.k,
            });
        }
        self.colours[i * self.n + j] = c;
        self.colours[j * self.n + i] = c;
        Ok(())
    }

    pub fn rows(&self) -> Vec<Vec<u8>> {
        self.colours
            .chunks(self.n.max(1))
            .take(self.n)
            .map(|r| r.to_vec())
            .collect()
    }

    /// Sub-graph induced on `vertices`, relabelled `0..len` in the given order.
    pub fn induced(&self, vertices: &[usize]) -> ColouredGraph {
        let m = vertices.len();
        let mut colours = vec![0u8; m * m];
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                if a != b {
                    colours[a * m + b] = self.colour(u, v);
                }
            }
        }
        ColouredGraph {
            n: m,
            k: self.k,
            colours,
        }
    }

    /// The graph whose vertex `i` is this graph's vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> ColouredGraph {
        assert_eq!(perm.len(), self.n);
        self.induced(perm)
    }

    /// Applies `map[c-1]` to every colour `c`.
    pub fn recoloured(&self, map: &[u8]) -> Result<ColouredGraph, GraphError> {
        let k = map.iter().copied().max().unwrap_or(self.k).max(self.k);
        ColouredGraph::from_fn(self.n, k, |i, j| map[(self.colour(i, j) - 1) as usize])
    }

    pub fn with_k(&self, k: u8) -> Result<ColouredGraph, GraphError> {
        ColouredGraph::from_fn(self.n, k, |i, j| self.colour(i, j))
    }

    /// Colours actually present on some edge, ascending.
    pub fn colours_used(&self) -> Vec<u8> {
        let mut seen = [false; 10];
        for i in 0..self.n {
            for j in i + 1..self.n {
                seen[self.colour(i, j) as usize] = true;
            }
        }
        (1..10u8).filter(|&c| seen[c as usize]).collect()
    }

    /// Graph text format: `n k`, then `n` rows of the colour matrix.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or(GraphError::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let nums: Vec<&str> = header.split_whitespace().collect();
        let parse_err = |line: usize, msg: &str| GraphError::Parse {
            line: line + 1,
            msg: msg.to_string(),
        };
        if nums.len() != 2 {
            return Err(parse_err(hl, "header must be `n k`"));
        }
        let n: usize = nums[0]
            .parse()
            .map_err(|_| parse_err(hl, "bad vertex count"))?;
        let k: u8 = nums[1]
            .parse()
            .map_err(|_| parse_err(hl, "bad colour count"))?;
        let mut rows = Vec::with_capacity(n);
        for _ in 0..n {
            let (ln, line) = lines
                .next()
                .ok_or_else(|| parse_err(hl, "too few matrix rows"))?;
            let row = line
                .split_whitespace()
                .map(|t| t.parse::<u8>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| parse_err(ln, "bad colour entry"))?;
            rows.push(row);
        }
        if let Some((ln, _)) = lines.next() {
            return Err(parse_err(ln, "trailing content after matrix"));
        }
        ColouredGraph::from_rows(k, &rows)
    }
}

fn check_k(k: u8) -> Result<(), GraphError> {
    if (1..=9).contains(&k) {
        Ok(())
    } else {
        Err(GraphError::BadColourCount(k))
    }
}

impl fmt::Display for ColouredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} {}", self.n, self.k)?;
        for i in 0..self.n {
            let row: Vec<String> = (0..self.n).map(|j| self.colour(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for ColouredGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ColouredGraph(n={}, k={}, [", self.n, self.k)?;
        for i in 0..self.n {
            for j in i + 1..self.n {
                write!(f, "{}", self.colour(i, j))?;
            }
            if i + 2 < self.n {
                write!(f, "|")?;
            }
        }
        write!(f, "])")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_round_trip() {
        let g =
            ColouredGraph::from_rows(3, &[vec![0, 1, 2], vec![1, 0, 3], vec![2, 3, 0]]).unwrap();
        let text = g.to_text();
        assert_eq!(text, "3 3\n0 1 2\n1 0 3\n2 3 0\n");
        assert_eq!(ColouredGraph::from_text(&text).unwrap(), g);
    }

    #[test]
    fn validation_errors() {
        assert_eq!(
            ColouredGraph::from_rows(3, &[vec![0, 4], vec![4, 0]]),
            Err(GraphError::ColourOutOfRange {
                i: 0,
                j: 1,
                colour: 4,
                k: 3
            })
        );
        assert_eq!(
            ColouredGraph::from_rows(3, &[vec![0, 1], vec![2, 0]]),
            Err(GraphError::NotSymmetric { i: 0, j: 1 })
        );
        assert_eq!(
            ColouredGraph::from_rows(3, &[vec![1, 1], vec![1, 0]]),
            Err(GraphError::NonZeroDiagonal { i: 0 })
        );
        assert!(matches!(
            ColouredGraph::from_text("2 3\n0 1\n"),
            Err(GraphError::Parse { .. })
        ));
        assert!(matches!(
            ColouredGraph::from_text("2 3\n0 1\n1 0\n1 1\n"),
            Err(GraphError::Parse { line: 4, .. })
        ));
    }

    #[test]
    fn induced_and_permuted() {
        let g = ColouredGraph::from_fn(
            4,
            3,
            |i, j| if i == 0 { 2 } else { ((i + j) % 3 + 1) as u8 },
        )
        .unwrap();
        let h = g.induced(&[3, 0]);
        assert_eq!(h.n(), 2);
        assert_eq!(h.colour(0, 1), 2);
        let p = g.permuted(&[1, 0, 2, 3]);
        assert_eq!(p.colour(1, 2), g.colour(0, 2));
        assert_eq!(g.colours_used(), vec![1, 2, 3]);
    }
}
