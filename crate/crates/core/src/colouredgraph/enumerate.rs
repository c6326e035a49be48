use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::canonical::canonical_form;
use super::{CanonicalKey, ColouredGraph, GraphError};

/// Largest `l` accepted by [`enumerate_models`] for a colour count `k`.
pub fn model_size_limit(k: u8) -> usize {
    match k {
        1 => 10,
        2 => 8,
        3 => 6,
        4 => 5,
        _ => 4,
    }
}

/// One canonical representative per isomorphism class of `k`-edge-coloured
/// `K_l`, sorted by canonical key.
///
/// Built by vertex extension: every class on `l` vertices arises by adding a
/// vertex to some class on `l-1` vertices, so extending each representative by
/// every colour vector and deduplicating by key is complete.
pub fn enumerate_models(l: usize, k: u8) -> Result<Vec<ColouredGraph>, GraphError> {
    Ok(enumerate_keyed(l, k)?
        .iter()
        .map(|(_, g)| g.clone())
        .collect())
}

pub(crate) fn enumerate_keyed(
    l: usize,
    k: u8,
) -> Result<Arc<Vec<(CanonicalKey, ColouredGraph)>>, GraphError> {
    if k == 0 || k > 9 {
        return Err(GraphError::BadColourCount(k));
    }
    let limit = model_size_limit(k);
    if l > limit {
        return Err(GraphError::SizeLimit {
            what: "model enumeration",
            size: l,
            limit,
        });
    }
    static CACHE: OnceLock<Mutex<HashMap<(usize, u8), Arc<Vec<(CanonicalKey, ColouredGraph)>>>>> =
        OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(l, k)) {
        return Ok(hit.clone());
    }
    let result = if l <= 1 {
        let g = ColouredGraph::monochromatic(l, k, 1);
        let key = canonical_form(&g)?.0;
        vec![(key, g)]
    } else {
        let parents = enumerate_keyed(l - 1, k)?;
        let vectors = colour_vectors(l - 1, k);
        let found: Vec<(CanonicalKey, ColouredGraph)> = parents
            .par_iter()
            .flat_map_iter(|(_, p)| vectors.iter().map(move |v| extend(p, v)))
            .map(|g| {
                let (key, perm) = canonical_form(&g).expect("within size limit");
                (key, g.permuted(&perm))
            })
            .collect();
        let unique: BTreeMap<CanonicalKey, ColouredGraph> = found.into_iter().collect();
        unique.into_iter().collect()
    };
    let result = Arc::new(result);
    cache.lock().unwrap().insert((l, k), result.clone());
    Ok(result)
}

/// All `k^len` colour vectors in lexicographic order.
pub(crate) fn colour_vectors(len: usize, k: u8) -> Vec<Vec<u8>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=k).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}

/// Adds a vertex joined to vertex `i` in colour `v[i]`.
pub(crate) fn extend(g: &ColouredGraph, v: &[u8]) -> ColouredGraph {
    let n = g.n();
    ColouredGraph::from_fn(
        n + 1,
        g.k(),
        |i, j| if j == n { v[i] } else { g.colour(i, j) },
    )
    .expect("colours in range")
}

/// Number of `k`-edge-colourings of `K_l` up to vertex permutation, by
/// Burnside's lemma over the cycle types of the symmetric group acting on
/// edges.
pub fn count_models_polya(l: usize, k: u64) -> BigUint {
    if l > 12 {
        panic!("count_models_polya supports l <= 12");
    }
    let mut total = BigUint::zero();
    let factorial = |n: usize| (1..=n as u64).fold(BigUint::one(), |acc, x| acc * x);
    for partition in partitions(l) {
        // multiplicities of each cycle length
        let mut mult: BTreeMap<usize, usize> = BTreeMap::new();
        for &a in &partition {
            *mult.entry(a).or_default() += 1;
        }
        let mut centraliser = BigUint::one();
        for (&a, &m) in &mult {
            centraliser *= BigUint::from(a).pow(m as u32) * factorial(m);
        }
        let class_size = factorial(l) / centraliser;
        let mut edge_cycles = 0usize;
        for (idx, &a) in partition.iter().enumerate() {
            edge_cycles += a / 2;
            for &b in &partition[idx + 1..] {
                edge_cycles += a.gcd(&b);
            }
        }
        total += class_size * BigUint::from(k).pow(edge_cycles as u32);
    }
    total / factorial(l)
}

/// Integer partitions of `n` as non-increasing part lists.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=max.min(n)).rev() {
            cur.push(p);
            rec(n - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, n, &mut Vec::new(), &mut out);
    out
}
