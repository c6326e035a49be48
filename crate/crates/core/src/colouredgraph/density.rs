use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;

use super::canonical::canonical_key;
use super::{CanonicalKey, ColouredGraph, GraphError};
use crate::exactmath::{binomial, Rational};

/// Number of `m`-subsets of `V(g)` inducing each isomorphism class.
pub fn subset_histogram(
    g: &ColouredGraph,
    m: usize,
) -> Result<BTreeMap<CanonicalKey, u64>, GraphError> {
    if m > g.n() {
        return Err(GraphError::SizeMismatch {
            pattern: m,
            host: g.n(),
        });
    }
    let mut hist = BTreeMap::new();
    for subset in (0..g.n()).combinations(m) {
        *hist.entry(canonical_key(&g.induced(&subset))?).or_insert(0) += 1;
    }
    Ok(hist)
}

/// `p(H, G)`: the fraction of `|H|`-subsets of `V(G)` inducing a copy of `H`.
pub fn density(h: &ColouredGraph, g: &ColouredGraph) -> Result<Rational, GraphError> {
    if h.n() > g.n() {
        return Err(GraphError::SizeMismatch {
            pattern: h.n(),
            host: g.n(),
        });
    }
    let key = canonical_key(h)?;
    let mut hits = 0u64;
    for subset in (0..g.n()).combinations(h.n()) {
        if canonical_key(&g.induced(&subset))? == key {
            hits += 1;
        }
    }
    Ok(Rational::new(
        BigInt::from(hits),
        binomial(g.n() as u64, h.n() as u64),
    ))
}

/// Sum of densities over a family of pairwise non-isomorphic graphs of one
/// size.
pub fn family_density(family: &[ColouredGraph], g: &ColouredGraph) -> Result<Rational, GraphError> {
    let Some(first) = family.first() else {
        return Ok(Rational::zero());
    };
    let size = first.n();
    if family.iter().any(|h| h.n() != size) {
        return Err(GraphError::MixedSizes);
    }
    if size > g.n() {
        return Err(GraphError::SizeMismatch {
            pattern: size,
            host: g.n(),
        });
    }
    let mut keys = BTreeMap::new();
    for (idx, h) in family.iter().enumerate() {
        if let Some(prev) = keys.insert(canonical_key(h)?, idx) {
            return Err(GraphError::DuplicateClass(prev, idx));
        }
    }
    let keys: BTreeSet<CanonicalKey> = keys.into_keys().collect();
    let hist = subset_histogram(g, size)?;
    let hits: u64 = hist
        .iter()
        .filter(|(k, _)| keys.contains(*k))
        .map(|(_, c)| c)
        .sum();
    Ok(Rational::new(
        BigInt::from(hits),
        binomial(g.n() as u64, size as u64),
    ))
}

/// Monochromatic triangle counts; `per_colour[c-1]` is the count for colour `c`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoTriangles {
    pub per_colour: Vec<u64>,
    pub total: u64,
}

impl MonoTriangles {
    pub fn of_colour(&self, c: u8) -> u64 {
        self.per_colour[(c - 1) as usize]
    }
}

pub fn mono_triangles(g: &ColouredGraph) -> MonoTriangles {
    let n = g.n();
    let mut per_colour = vec![0u64; g.k() as usize];
    for a in 0..n {
        for b in a + 1..n {
            let c = g.colour(a, b);
            for d in b + 1..n {
                if g.colour(a, d) == c && g.colour(b, d) == c {
                    per_colour[(c - 1) as usize] += 1;
                }
            }
        }
    }
    let total = per_colour.iter().sum();
    MonoTriangles { per_colour, total }
}

/// The monochromatic triangles `K³_c`, one per colour.
pub fn mono_triangle_family(k: u8) -> Vec<ColouredGraph> {
    (1..=k)
        .map(|c| ColouredGraph::monochromatic(3, k, c))
        .collect()
}

/// `N_c(v)`: vertices joined to `v` in colour `c`, ascending.
pub fn neighbourhood(g: &ColouredGraph, v: usize, c: u8) -> Result<Vec<usize>, GraphError> {
    if v >= g.n() {
        return Err(GraphError::VertexOutOfRange { v, n: g.n() });
    }
    if c == 0 || c > g.k() {
        return Err(GraphError::ColourArgOutOfRange { c, k: g.k() });
    }
    Ok((0..g.n())
        .filter(|&u| u != v && g.colour(u, v) == c)
        .collect())
}
