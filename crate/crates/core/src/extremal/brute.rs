use rayon::prelude::*;

use crate::colouredgraph::{
    enumerate_keyed, mono_triangles, CanonicalKey, ColouredGraph, GraphError,
};

/// Exact minimum number of monochromatic triangles over all `k`-colourings of
/// `K_n`, with one representative per minimising class.
#[derive(Debug, Clone)]
pub struct BruteMin {
    pub minimum: u64,
    pub minimisers: Vec<(CanonicalKey, ColouredGraph)>,
}

fn brute_limit(k: u8) -> Option<usize> {
    match k {
        1 => Some(10),
        2 => Some(7),
        3 => Some(6),
        _ => None,
    }
}

pub fn brute_min_mono(n: usize, k: u8) -> Result<BruteMin, GraphError> {
    let limit = brute_limit(k).ok_or(GraphError::BadColourCount(k))?;
    if n > limit {
        return Err(GraphError::SizeLimit {
            what: "brute-force minimum",
            size: n,
            limit,
        });
    }
    let models = enumerate_keyed(n, k)?;
    let counts: Vec<u64> = models
        .par_iter()
        .map(|(_, g)| mono_triangles(g).total)
        .collect();
    let minimum = counts.iter().copied().min().unwrap_or(0);
    let minimisers = models
        .iter()
        .zip(&counts)
        .filter(|(_, &t)| t == minimum)
        .map(|(m, _)| m.clone())
        .collect();
    Ok(BruteMin {
        minimum,
        minimisers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouredgraph::{canonical_key, goodman};
    use crate::extremal::pentagon_base;

    #[test]
    fn small_minima() {
        for n in 3..=6 {
            assert_eq!(
                brute_min_mono(n, 2).unwrap().minimum,
                goodman(n as u64),
                "n={n}"
            );
        }
        let five = brute_min_mono(5, 3).unwrap();
        assert_eq!(five.minimum, 0);
        let pentagon = canonical_key(&pentagon_base()).unwrap();
        assert!(five.minimisers.iter().any(|(k, _)| *k == pentagon));
        assert_eq!(brute_min_mono(6, 3).unwrap().minimum, 0);
        assert!(brute_min_mono(8, 2).is_err());
        assert!(brute_min_mono(7, 3).is_err());
    }
}
