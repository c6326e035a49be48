//! Dense symmetric rational matrices and an exact LDLᵀ-based PSD test.

use std::fmt;

use thiserror::Error;

use super::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatrixError {
    #[error("matrix is not square: row {row} has {len} entries, expected {dim}")]
    NotSquare { row: usize, len: usize, dim: usize },
    #[error("matrix is not symmetric at ({i},{j}): {a} != {b}")]
    NotSymmetric {
        i: usize,
        j: usize,
        a: Rational,
        b: Rational,
    },
    #[error("matrix dimension must be positive")]
    Empty,
}

/// Dense symmetric matrix of rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SymMatrix {
    dim: usize,
    entries: Vec<Rational>,
}

impl SymMatrix {
    pub fn zeros(dim: usize) -> Self {
        SymMatrix {
            dim,
            entries: vec![Rational::zero(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = SymMatrix::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = Rational::one();
        }
        m
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let mut m = SymMatrix::zeros(diag.len());
        for (i, d) in diag.iter().enumerate() {
            m.set(i, i, d.clone());
        }
        m
    }

    /// Builds a matrix from full rows; both triangles must agree.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self, MatrixError> {
        let dim = rows.len();
        if dim == 0 {
            return Err(MatrixError::Empty);
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != dim {
                return Err(MatrixError::NotSquare {
                    row,
                    len: r.len(),
                    dim,
                });
            }
            entries.extend(r);
        }
        let m = SymMatrix { dim, entries };
        for i in 0..dim {
            for j in i + 1..dim {
                if m.get(i, j) != m.get(j, i) {
                    return Err(MatrixError::NotSymmetric {
                        i,
                        j,
                        a: m.get(i, j).clone(),
                        b: m.get(j, i).clone(),
                    });
                }
            }
        }
        Ok(m)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.dim + j]
    }

    /// Sets both `(i,j)` and `(j,i)`.
    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.entries[j * self.dim + i] = v.clone();
        self.entries[i * self.dim + j] = v;
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.dim.max(1))
    }

    pub fn map(&self, f: impl Fn(&Rational) -> Rational) -> SymMatrix {
        SymMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn neg(&self) -> SymMatrix {
        self.map(|x| -x)
    }

    pub fn scale(&self, c: &Rational) -> SymMatrix {
        self.map(|x| x * c)
    }

    pub fn add(&self, other: &SymMatrix) -> SymMatrix {
        assert_eq!(self.dim, other.dim);
        SymMatrix {
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// `vᵀ M v`.
    pub fn quadratic_form(&self, v: &[Rational]) -> Rational {
        assert_eq!(v.len(), self.dim);
        let mut acc = Rational::zero();
        for (i, vi) in v.iter().enumerate() {
            if vi.is_zero() {
                continue;
            }
            let row: Rational = self
                .get_row(i)
                .iter()
                .zip(v)
                .filter(|(_, vj)| !vj.is_zero())
                .map(|(m, vj)| m * vj)
                .sum();
            acc += row * vi;
        }
        acc
    }

    /// Frobenius inner product `Σ_ij A_ij B_ij`.
    pub fn dot(&self, other: &SymMatrix) -> Rational {
        assert_eq!(self.dim, other.dim);
        self.entries
            .iter()
            .zip(&other.entries)
            .filter(|(a, b)| !a.is_zero() && !b.is_zero())
            .map(|(a, b)| a * b)
            .sum()
    }

    fn get_row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.dim..(i + 1) * self.dim]
    }
}

impl fmt::Debug for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// `M = L · diag(D) · Lᵀ` with `L` unit lower-triangular.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ldl {
    /// Row-major `n×n`.
    pub l: Vec<Vec<Rational>>,
    pub d: Vec<Rational>,
}

impl Ldl {
    pub fn reconstruct(&self) -> SymMatrix {
        let n = self.d.len();
        let mut m = SymMatrix::zeros(n);
        for i in 0..n {
            for j in 0..=i {
                let s: Rational = (0..=j)
                    .filter(|&k| !self.d[k].is_zero())
                    .map(|k| &self.l[i][k] * &self.l[j][k] * &self.d[k])
                    .sum();
                m.set(i, j, s);
            }
        }
        m
    }

    pub fn rank(&self) -> usize {
        self.d.iter().filter(|d| !d.is_zero()).count()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LdlFailureKind {
    NegativePivot,
    /// Zero pivot whose remaining column has a nonzero entry in `row`.
    ZeroPivotNonzeroRow {
        row: usize,
    },
}

/// Where the factorization stopped. `l` holds the columns eliminated so far
/// and `schur` the trailing Schur complement (indexed by original position).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LdlFailure {
    pub pivot: usize,
    pub kind: LdlFailureKind,
    l: Vec<Vec<Rational>>,
    schur: Vec<Vec<Rational>>,
}

impl LdlFailure {
    /// A rational vector `v` with `vᵀ M v < 0`.
    pub fn witness(&self) -> Vec<Rational> {
        let n = self.l.len();
        let k = self.pivot;
        let mut u = vec![Rational::zero(); n];
        match self.kind {
            LdlFailureKind::NegativePivot => u[k] = Rational::one(),
            LdlFailureKind::ZeroPivotNonzeroRow { row } => {
                // (t e_k + e_row)ᵀ S (t e_k + e_row) = 2 t S_rk + S_rr = -1
                let s_rk = &self.schur[row][k];
                let s_rr = &self.schur[row][row];
                let two = Rational::from_integer(2);
                u[k] = -(s_rr + Rational::one()) / (two * s_rk);
                u[row] = Rational::one();
            }
        }
        // solve Lᵀ v = u, back substitution
        let mut v = u;
        for i in (0..n).rev() {
            let mut s = v[i].clone();
            for j in i + 1..n {
                if !self.l[j][i].is_zero() && !v[j].is_zero() {
                    s -= &(&self.l[j][i] * &v[j]);
                }
            }
            v[i] = s;
        }
        v
    }
}

/// Symmetric LDLᵀ without pivoting. A zero pivot is accepted only when its
/// remaining column is entirely zero, which is exactly what positive
/// semidefiniteness requires; so success implies PSD and vice versa.
pub fn ldl_factor(m: &SymMatrix) -> Result<Ldl, LdlFailure> {
    let n = m.dim();
    let mut a: Vec<Vec<Rational>> = m.rows().map(|r| r.to_vec()).collect();
    let mut l: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            let mut row = vec![Rational::zero(); n];
            row[i] = Rational::one();
            row
        })
        .collect();
    let mut d = Vec::with_capacity(n);
    for k in 0..n {
        let pivot = a[k][k].clone();
        if pivot.is_negative() {
            return Err(LdlFailure {
                pivot: k,
                kind: LdlFailureKind::NegativePivot,
                l,
                schur: a,
            });
        }
        if pivot.is_zero() {
            if let Some(row) = (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                return Err(LdlFailure {
                    pivot: k,
                    kind: LdlFailureKind::ZeroPivotNonzeroRow { row },
                    l,
                    schur: a,
                });
            }
            d.push(pivot);
            continue;
        }
        let col: Vec<Rational> = (k + 1..n).map(|i| &a[i][k] / &pivot).collect();
        for (off, li) in col.iter().enumerate() {
            let i = k + 1 + off;
            l[i][k] = li.clone();
            if li.is_zero() {
                continue;
            }
            for j in k + 1..=i {
                if a[k][j].is_zero() {
                    continue;
                }
                let delta = li * &a[k][j];
                a[i][j] -= &delta;
                if i != j {
                    a[j][i] = a[i][j].clone();
                }
            }
        }
        d.push(pivot);
    }
    Ok(Ldl { l, d })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PsdVerdict {
    Psd {
        rank: usize,
    },
    NotPsd {
        witness: Vec<Rational>,
        value: Rational,
        pivot: usize,
    },
}

impl PsdVerdict {
    pub fn is_psd(&self) -> bool {
        matches!(self, PsdVerdict::Psd { .. })
    }
}

pub fn psd_check(m: &SymMatrix) -> PsdVerdict {
    match ldl_factor(m) {
        Ok(f) => PsdVerdict::Psd { rank: f.rank() },
        Err(fail) => {
            let witness = fail.witness();
            let value = m.quadratic_form(&witness);
            debug_assert!(value.is_negative());
            PsdVerdict::NotPsd {
                witness,
                value,
                pivot: fail.pivot,
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    fn int_matrix(rows: &[&[i64]]) -> SymMatrix {
        SymMatrix::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn identity_is_psd() {
        assert_eq!(
            psd_check(&SymMatrix::identity(27)),
            PsdVerdict::Psd { rank: 27 }
        );
    }

    #[test]
    fn rank_one_block_from_first_certificate_matrix() {
        let m = SymMatrix::from_rows(vec![
            vec![r(24, 25), r(-12, 25)],
            vec![r(-12, 25), r(6, 25)],
        ])
        .unwrap();
        let det = m.get(0, 0) * m.get(1, 1) - m.get(0, 1) * m.get(1, 0);
        assert!(det.is_zero());
        assert_eq!(psd_check(&m), PsdVerdict::Psd { rank: 1 });
    }

    #[test]
    fn indefinite_two_by_two() {
        let m = int_matrix(&[&[1, 2], &[2, 1]]);
        match psd_check(&m) {
            PsdVerdict::NotPsd { witness, value, .. } => {
                assert!(value.is_negative());
                assert_eq!(m.quadratic_form(&witness), value);
            }
            v => panic!("expected NotPsd, got {v:?}"),
        }
        let v = [Rational::one(), -Rational::one()];
        assert_eq!(m.quadratic_form(&v), Rational::from(-2));
    }

    #[test]
    fn ldl_examples() {
        let f = ldl_factor(&int_matrix(&[&[2, 0], &[0, 3]])).unwrap();
        assert_eq!(f.d, vec![Rational::from(2), Rational::from(3)]);
        assert_eq!(
            f.l,
            vec![
                vec![Rational::one(), Rational::zero()],
                vec![Rational::zero(), Rational::one()]
            ]
        );

        let f = ldl_factor(&int_matrix(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!(f.d, vec![Rational::one(), Rational::zero()]);
        assert_eq!(f.reconstruct(), int_matrix(&[&[1, 1], &[1, 1]]));

        let fail = ldl_factor(&int_matrix(&[&[0, 1], &[1, 0]])).unwrap_err();
        assert_eq!(fail.pivot, 0);
        assert_eq!(fail.kind, LdlFailureKind::ZeroPivotNonzeroRow { row: 1 });
        let m = int_matrix(&[&[0, 1], &[1, 0]]);
        assert!(m.quadratic_form(&fail.witness()).is_negative());
    }

    #[test]
    fn negative_pivot_deep_in_matrix() {
        // leading 2x2 PSD, the third pivot goes negative after elimination
        let m = int_matrix(&[&[4, 2, 2], &[2, 2, 1], &[2, 1, 0]]);
        let fail = ldl_factor(&m).unwrap_err();
        assert_eq!(fail.kind, LdlFailureKind::NegativePivot);
        assert_eq!(fail.pivot, 2);
        assert!(m.quadratic_form(&fail.witness()).is_negative());
    }

    #[test]
    fn zero_row_after_elimination() {
        let m = int_matrix(&[&[1, 1, 1], &[1, 1, 1], &[1, 1, 2]]);
        let f = ldl_factor(&m).unwrap();
        assert_eq!(f.rank(), 2);
        assert_eq!(f.reconstruct(), m);
    }

    #[test]
    fn asymmetric_rows_rejected() {
        let err =
            SymMatrix::from_rows(vec![vec![r(1, 1), r(1, 2)], vec![r(1, 3), r(1, 1)]]).unwrap_err();
        assert!(matches!(err, MatrixError::NotSymmetric { i: 0, j: 1, .. }));
    }
}
