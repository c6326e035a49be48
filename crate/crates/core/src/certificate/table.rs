use std::collections::BTreeMap;
use std::sync::Arc;

use itertools::Itertools;
use num_bigint::BigInt;
use rayon::prelude::*;

use super::Certificate;
use crate::colouredgraph::{enumerate_keyed, mono_triangles, CanonicalKey, ColouredGraph};
use crate::exactmath::{Rational, SymMatrix};

/// Equally likely outcomes per model: 60 label injections into 5 vertices
/// times 2 ordered splits of the remaining pair.
pub const FLAG_PAIR_SAMPLES: u32 = 120;

/// `A[r][k][i][j]` for every block `r` and every 5-vertex model `M_k`, stored
/// sparsely as outcome counts out of [`FLAG_PAIR_SAMPLES`].
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    models: Arc<Vec<(CanonicalKey, ColouredGraph)>>,
    dims: Vec<usize>,
    // counts[k][r]: sorted (i, j, count)
    counts: Vec<Vec<Vec<(u16, u16, u32)>>>,
    valid: Vec<Vec<u32>>,
}

impl CoefficientTable {
    pub fn models(&self) -> &[(CanonicalKey, ColouredGraph)] {
        &self.models
    }

    pub fn block_count(&self) -> usize {
        self.dims.len()
    }

    pub fn model_index(&self, key: &CanonicalKey) -> Option<usize> {
        self.models.binary_search_by(|(k, _)| k.cmp(key)).ok()
    }

    /// Nonzero `(i, j, count)` entries of block `r` (0-based) at model `k`.
    pub fn sparse(&self, r: usize, k: usize) -> &[(u16, u16, u32)] {
        &self.counts[k][r]
    }

    pub fn entry(&self, r: usize, k: usize, i: usize, j: usize) -> Rational {
        let hit = self.counts[k][r]
            .iter()
            .find(|e| e.0 as usize == i && e.1 as usize == j);
        hit.map_or_else(Rational::zero, |e| {
            Rational::new(e.2 as i64, FLAG_PAIR_SAMPLES as i64)
        })
    }

    pub fn matrix(&self, r: usize, k: usize) -> SymMatrix {
        let mut m = SymMatrix::zeros(self.dims[r]);
        for &(i, j, c) in &self.counts[k][r] {
            m.set(
                i as usize,
                j as usize,
                Rational::new(c as i64, FLAG_PAIR_SAMPLES as i64),
            );
        }
        m
    }

    /// Label injections into `M_k` that induce the type of block `r`.
    pub fn valid_injections(&self, r: usize, k: usize) -> u32 {
        self.valid[k][r]
    }
}

/// Colour triple `(c12, c13, c23)` of `g` on the ordered vertices `t`.
fn triple(g: &ColouredGraph, t: &[usize]) -> [u8; 3] {
    [
        g.colour(t[0], t[1]),
        g.colour(t[0], t[2]),
        g.colour(t[1], t[2]),
    ]
}

fn vector_code(v: [u8; 3]) -> usize {
    (v[0] as usize - 1) * 9 + (v[1] as usize - 1) * 3 + (v[2] as usize - 1)
}

/// Exhaustive table over all 792 five-vertex models, computed in parallel
/// per model. Flags absent from a block simply never match.
pub fn coefficient_table(cert: &Certificate) -> CoefficientTable {
    let models = enumerate_keyed(5, 3).expect("five-vertex models are within limits");
    let type_triples: Vec<[u8; 3]> = cert
        .blocks
        .iter()
        .map(|b| triple(b.sigma.graph(), &[0, 1, 2]))
        .collect();
    let lookups: Vec<[Option<u16>; 27]> = cert
        .blocks
        .iter()
        .map(|b| {
            let mut table = [None; 27];
            for (idx, &v) in b.vectors.iter().enumerate() {
                table[vector_code(v)] = Some(idx as u16);
            }
            table
        })
        .collect();
    let per_model: Vec<(Vec<Vec<(u16, u16, u32)>>, Vec<u32>)> = models
        .par_iter()
        .map(|(_, m)| {
            let nb = cert.blocks.len();
            let mut acc: Vec<BTreeMap<(u16, u16), u32>> = vec![BTreeMap::new(); nb];
            let mut valid = vec![0u32; nb];
            for theta in (0..5).permutations(3) {
                let t = triple(m, &theta);
                let rest: Vec<usize> = (0..5).filter(|v| !theta.contains(v)).collect();
                let vec_of = |x: usize| {
                    [
                        m.colour(x, theta[0]),
                        m.colour(x, theta[1]),
                        m.colour(x, theta[2]),
                    ]
                };
                let (cx, cy) = (vector_code(vec_of(rest[0])), vector_code(vec_of(rest[1])));
                for r in (0..nb).filter(|&r| type_triples[r] == t) {
                    valid[r] += 1;
                    if let (Some(i), Some(j)) = (lookups[r][cx], lookups[r][cy]) {
                        *acc[r].entry((i, j)).or_default() += 1;
                        *acc[r].entry((j, i)).or_default() += 1;
                    }
                }
            }
            let counts = acc
                .into_iter()
                .map(|a| a.into_iter().map(|((i, j), c)| (i, j, c)).collect())
                .collect();
            (counts, valid)
        })
        .collect();
    let (counts, valid) = per_model.into_iter().unzip();
    CoefficientTable {
        models,
        dims: cert.blocks.iter().map(|b| b.vectors.len()).collect(),
        counts,
        valid,
    }
}

/// `λ_k = p(𝒦³, M_k) - b - Σ_r Σ_ij Q^r_ij A[r][k][i][j]` for every model.
pub fn lambda_vector(
    cert: &Certificate,
    table: &CoefficientTable,
) -> BTreeMap<CanonicalKey, Rational> {
    assert_eq!(
        table.block_count(),
        cert.blocks.len(),
        "table was built for a different certificate"
    );
    let samples = Rational::from(FLAG_PAIR_SAMPLES as i64);
    let values: Vec<(CanonicalKey, Rational)> = table
        .models
        .par_iter()
        .enumerate()
        .map(|(k, (key, m))| {
            let mut weighted = Rational::zero();
            for (r, block) in cert.blocks.iter().enumerate() {
                for &(i, j, c) in &table.counts[k][r] {
                    weighted += block.q.get(i as usize, j as usize) * &Rational::from(c as i64);
                }
            }
            let tri = Rational::new(BigInt::from(mono_triangles(m).total), 10);
            (key.clone(), tri - &cert.bound - weighted / &samples)
        })
        .collect();
    values.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouredgraph::{canonical_key, GREEN, RED};
    use crate::flags::avg_coefficient;

    #[test]
    fn red_k5_entries() {
        let cert = Certificate::shipped();
        let table = coefficient_table(&cert);
        assert_eq!(table.models().len(), 792);
        let red = table
            .model_index(&canonical_key(&ColouredGraph::monochromatic(5, 3, RED)).unwrap())
            .unwrap();
        assert_eq!(table.entry(0, red, 0, 0), Rational::one());
        let one_green =
            ColouredGraph::from_fn(5, 3, |i, j| if (i, j) == (0, 1) { GREEN } else { RED })
                .unwrap();
        let k = table
            .model_index(&canonical_key(&one_green).unwrap())
            .unwrap();
        assert_eq!(table.entry(0, k, 0, 0), Rational::new(1, 10));
    }

    #[test]
    fn matches_general_coefficient_on_a_sample() {
        let cert = Certificate::shipped();
        let table = coefficient_table(&cert);
        for k in (0..792).step_by(97) {
            let model = &table.models()[k].1;
            for r in [0, 4, 9] {
                let block = &cert.blocks[r];
                let a = table.matrix(r, k);
                for (i, j) in [(0, 0), (3, 7), (12, 25), (26, 26)] {
                    let direct =
                        avg_coefficient(&block.sigma, &block.flags[i], &block.flags[j], model)
                            .unwrap();
                    assert_eq!(a.get(i, j), &direct, "r={r} k={k} i={i} j={j}");
                }
            }
        }
    }
}
