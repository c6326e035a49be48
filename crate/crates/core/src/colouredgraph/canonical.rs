use std::fmt;

use super::{ColouredGraph, GraphError};

/// Exhaustive canonicalisation is used up to this many vertices.
pub const MAX_CANONICAL_N: usize = 10;

/// Canonical byte key: the vertex count followed by the lexicographically
/// smallest upper-triangle colour listing, taken column by column
/// (`(0,1), (0,2), (1,2), (0,3), …`), over all vertex orders.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalKey(Vec<u8>);

impl CanonicalKey {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }

    pub fn from_hex(s: &str) -> Option<Self> {
        hex::decode(s).ok().map(CanonicalKey)
    }

    pub fn vertex_count(&self) -> usize {
        self.0[0] as usize
    }
}

impl fmt::Display for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for CanonicalKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CanonicalKey({})", self.to_hex())
    }
}

/// Returns the canonical key and a permutation `perm` such that
/// `g.permuted(&perm)` is the canonical representative.
pub fn canonical_form(g: &ColouredGraph) -> Result<(CanonicalKey, Vec<usize>), GraphError> {
    if g.n() > MAX_CANONICAL_N {
        return Err(GraphError::SizeLimit {
            what: "canonical form",
            size: g.n(),
            limit: MAX_CANONICAL_N,
        });
    }
    let (listing, perm) = min_listing(g, 0);
    let mut key = Vec::with_capacity(listing.len() + 1);
    key.push(g.n() as u8);
    key.extend(listing);
    Ok((CanonicalKey(key), perm))
}

pub fn canonical_key(g: &ColouredGraph) -> Result<CanonicalKey, GraphError> {
    canonical_form(g).map(|(k, _)| k)
}

/// Key comparison up to [`MAX_CANONICAL_N`] vertices; beyond that a direct
/// backtracking search matching vertices of equal colour degrees.
pub fn is_isomorphic(g: &ColouredGraph, h: &ColouredGraph) -> Result<bool, GraphError> {
    if g.n() != h.n() || g.k() != h.k() {
        return Ok(false);
    }
    if g.n() <= MAX_CANONICAL_N {
        return Ok(canonical_key(g)? == canonical_key(h)?);
    }
    let (dg, dh) = (colour_degrees(g), colour_degrees(h));
    let mut sorted_g = dg.clone();
    let mut sorted_h = dh.clone();
    sorted_g.sort();
    sorted_h.sort();
    if sorted_g != sorted_h {
        return Ok(false);
    }
    fn rec(
        g: &ColouredGraph,
        h: &ColouredGraph,
        dg: &[Vec<usize>],
        dh: &[Vec<usize>],
        map: &mut Vec<usize>,
        used: &mut [bool],
    ) -> bool {
        let t = map.len();
        if t == g.n() {
            return true;
        }
        for w in 0..h.n() {
            if used[w] || dg[t] != dh[w] || (0..t).any(|i| g.colour(i, t) != h.colour(map[i], w)) {
                continue;
            }
            used[w] = true;
            map.push(w);
            if rec(g, h, dg, dh, map, used) {
                return true;
            }
            map.pop();
            used[w] = false;
        }
        false
    }
    Ok(rec(
        g,
        h,
        &dg,
        &dh,
        &mut Vec::with_capacity(g.n()),
        &mut vec![false; h.n()],
    ))
}

fn colour_degrees(g: &ColouredGraph) -> Vec<Vec<usize>> {
    (0..g.n())
        .map(|v| {
            let mut d = vec![0; g.k() as usize];
            for u in (0..g.n()).filter(|&u| u != v) {
                d[(g.colour(u, v) - 1) as usize] += 1;
            }
            d
        })
        .collect()
}

/// Minimal column-wise listing over vertex orders that keep vertices
/// `0..fixed` in place. Branch-and-bound: a partial order whose listing
/// prefix already exceeds the best complete listing is abandoned.
pub(crate) fn min_listing(g: &ColouredGraph, fixed: usize) -> (Vec<u8>, Vec<usize>) {
    let n = g.n();
    let mut s = Search {
        g,
        fixed,
        perm: Vec::with_capacity(n),
        used: vec![false; n],
        cur: Vec::with_capacity(n * n / 2),
        best: None,
        best_perm: (0..n).collect(),
    };
    s.dfs();
    (s.best.unwrap_or_default(), s.best_perm)
}

struct Search<'a> {
    g: &'a ColouredGraph,
    fixed: usize,
    perm: Vec<usize>,
    used: Vec<bool>,
    cur: Vec<u8>,
    best: Option<Vec<u8>>,
    best_perm: Vec<usize>,
}

impl Search<'_> {
    fn dfs(&mut self) {
        let t = self.perm.len();
        let n = self.g.n();
        if t == n {
            if self.best.as_ref().is_none_or(|b| self.cur < *b) {
                self.best = Some(self.cur.clone());
                self.best_perm.clone_from(&self.perm);
            }
            return;
        }
        let range = if t < self.fixed { t..t + 1 } else { 0..n };
        for v in range {
            if self.used[v] {
                continue;
            }
            let start = self.cur.len();
            for i in 0..t {
                let c = self.g.colour(self.perm[i], v);
                self.cur.push(c);
            }
            let prune = match &self.best {
                Some(b) => self.cur[..] > b[..self.cur.len()],
                None => false,
            };
            if !prune {
                self.perm.push(v);
                self.used[v] = true;
                self.dfs();
                self.used[v] = false;
                self.perm.pop();
            }
            self.cur.truncate(start);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouredgraph::{BLUE, GREEN, RED};

    fn pentagon() -> ColouredGraph {
        ColouredGraph::from_fn(5, 3, |i, j| {
            if (j - i) % 5 == 1 || (j - i) % 5 == 4 {
                GREEN
            } else {
                BLUE
            }
        })
        .unwrap()
    }

    /// Brute-force oracle: some vertex bijection preserves every colour.
    fn iso_by_permutations(g: &ColouredGraph, h: &ColouredGraph) -> bool {
        fn rec(
            g: &ColouredGraph,
            h: &ColouredGraph,
            p: &mut Vec<usize>,
            used: &mut [bool],
        ) -> bool {
            let t = p.len();
            if t == g.n() {
                return true;
            }
            for v in 0..g.n() {
                if used[v] || (0..t).any(|i| g.colour(i, t) != h.colour(p[i], v)) {
                    continue;
                }
                used[v] = true;
                p.push(v);
                if rec(g, h, p, used) {
                    return true;
                }
                p.pop();
                used[v] = false;
            }
            false
        }
        g.n() == h.n() && rec(g, h, &mut Vec::new(), &mut vec![false; g.n()])
    }

    #[test]
    fn monochromatic_triangle_labellings_agree() {
        let k = canonical_key(&ColouredGraph::monochromatic(3, 3, RED)).unwrap();
        let p = ColouredGraph::monochromatic(3, 3, RED).permuted(&[2, 0, 1]);
        assert_eq!(canonical_key(&p).unwrap(), k);
    }

    #[test]
    fn pentagon_relabellings_agree() {
        let g = pentagon();
        let k = canonical_key(&g).unwrap();
        for perm in [[1, 3, 0, 2, 4], [4, 3, 2, 1, 0], [2, 4, 1, 3, 0]] {
            let h = g.permuted(&perm);
            assert_eq!(canonical_key(&h).unwrap(), k);
        }
        let (key, perm) = canonical_form(&g).unwrap();
        assert_eq!(canonical_key(&g.permuted(&perm)).unwrap(), key);
    }

    #[test]
    fn path_versus_matching_on_k4() {
        // red path 0-1-2-3 versus red matching {01, 23}; all else blue
        let path =
            ColouredGraph::from_fn(4, 3, |i, j| if j == i + 1 { RED } else { BLUE }).unwrap();
        let matching = ColouredGraph::from_fn(4, 3, |i, j| {
            if (i, j) == (0, 1) || (i, j) == (2, 3) {
                RED
            } else {
                BLUE
            }
        })
        .unwrap();
        assert!(!iso_by_permutations(&path, &matching));
        assert_ne!(
            canonical_key(&path).unwrap(),
            canonical_key(&matching).unwrap()
        );
    }

    #[test]
    fn colours_are_not_permuted() {
        let r = ColouredGraph::monochromatic(4, 3, RED);
        let b = ColouredGraph::monochromatic(4, 3, BLUE);
        assert!(!is_isomorphic(&r, &b).unwrap());
        assert!(is_isomorphic(&r, &r.permuted(&[3, 2, 1, 0])).unwrap());
    }

    #[test]
    fn large_graphs_use_direct_search() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let g = ColouredGraph::from_fn(12, 3, |i, j| ((i * i + 3 * j) % 3 + 1) as u8).unwrap();
        let mut perm: Vec<usize> = (0..12).collect();
        perm.shuffle(&mut rng);
        assert!(is_isomorphic(&g, &g.permuted(&perm)).unwrap());
        let mut h = g.permuted(&perm);
        let c = h.colour(0, 1);
        h.set_colour(0, 1, c % 3 + 1).unwrap();
        assert!(!is_isomorphic(&g, &h).unwrap());
    }

    #[test]
    fn size_limit() {
        let g = ColouredGraph::monochromatic(11, 3, RED);
        assert!(matches!(
            canonical_form(&g),
            Err(GraphError::SizeLimit { .. })
        ));
        assert!(canonical_form(&ColouredGraph::monochromatic(10, 3, RED)).is_ok());
    }

    #[test]
    fn keys_match_brute_force_isomorphism_on_random_pairs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(2..=6);
            let g = ColouredGraph::from_fn(n, 3, |_, _| rng.gen_range(1..=2)).unwrap();
            let h = ColouredGraph::from_fn(n, 3, |_, _| rng.gen_range(1..=2)).unwrap();
            assert_eq!(is_isomorphic(&g, &h).unwrap(), iso_by_permutations(&g, &h));
        }
    }
}
