use super::enumerate::enumerate_models;
use super::ColouredGraph;

/// The triples `(i, j, k)` making up the bad family.
pub const BAD_TRIPLES: [(u8, u8, u8); 3] = [(2, 1, 0), (1, 1, 1), (0, 2, 1)];

/// For a 3-coloured `K_4` containing a monochromatic triangle of colour `c`:
/// `i` further `c`-edges and the other two colour counts `j ≥ k`.
/// Two triangles of `K_4` share an edge, so `c` is unique.
pub fn triangle_signature(g: &ColouredGraph) -> Option<(u8, u8, u8)> {
    if g.n() != 4 || g.k() != 3 {
        return None;
    }
    let mut counts = [0u8; 4];
    for a in 0..4 {
        for b in a + 1..4 {
            counts[g.colour(a, b) as usize] += 1;
        }
    }
    let tri = [[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]]
        .into_iter()
        .find_map(|[a, b, d]| {
            let c = g.colour(a, b);
            (g.colour(a, d) == c && g.colour(b, d) == c).then_some(c)
        })?;
    let mut others: Vec<u8> = (1..=3u8)
        .filter(|&x| x != tri)
        .map(|x| counts[x as usize])
        .collect();
    others.sort_unstable_by(|a, b| b.cmp(a));
    Some((counts[tri as usize] - 3, others[0], others[1]))
}

/// Members of `ℋ(i,j,k)` up to isomorphism, in canonical-key order.
pub fn bad_subfamily(i: u8, j: u8, k: u8) -> Vec<ColouredGraph> {
    enumerate_models(4, 3)
        .expect("K_4 models are within limits")
        .into_iter()
        .filter(|g| triangle_signature(g) == Some((i, j, k)))
        .collect()
}

/// `ℋ = ℋ(2,1,0) ∪ ℋ(1,1,1) ∪ ℋ(0,2,1)`, in canonical-key order.
pub fn bad_family() -> Vec<ColouredGraph> {
    enumerate_models(4, 3)
        .expect("K_4 models are within limits")
        .into_iter()
        .filter(|g| triangle_signature(g).is_some_and(|s| BAD_TRIPLES.contains(&s)))
        .collect()
}
