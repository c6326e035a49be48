use super::ClassPartition;
use crate::colouredgraph::{ColouredGraph, GraphError};

/// [`maximal_mono_cliques`] works on graphs up to this size.
pub const MAX_CLIQUE_N: usize = 40;

/// [`clique_partition_5`] searches exhaustively up to this size.
pub const EXACT_PARTITION_LIMIT: usize = 25;

fn colour_masks(g: &ColouredGraph, c: u8) -> Vec<u64> {
    (0..g.n())
        .map(|v| {
            (0..g.n())
                .filter(|&u| u != v && g.colour(u, v) == c)
                .fold(0u64, |m, u| m | 1 << u)
        })
        .collect()
}

fn bits(mut m: u64) -> Vec<usize> {
    let mut out = Vec::new();
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// All inclusion-maximal monochromatic cliques with at least `min_size`
/// vertices, as `(sorted vertices, colour)`, ordered by colour then vertices.
pub fn maximal_mono_cliques(
    g: &ColouredGraph,
    min_size: usize,
) -> Result<Vec<(Vec<usize>, u8)>, GraphError> {
    if g.n() > MAX_CLIQUE_N {
        return Err(GraphError::SizeLimit {
            what: "maximal cliques",
            size: g.n(),
            limit: MAX_CLIQUE_N,
        });
    }
    let mut out = Vec::new();
    for c in 1..=g.k() {
        let adj = colour_masks(g, c);
        let mut found = Vec::new();
        let all = if g.n() == 0 {
            0
        } else {
            u64::MAX >> (64 - g.n())
        };
        bron_kerbosch(&adj, 0, all, 0, &mut found);
        let mut cliques: Vec<Vec<usize>> = found
            .into_iter()
            .filter(|m| m.count_ones() as usize >= min_size.max(1))
            .map(bits)
            .collect();
        cliques.sort();
        out.extend(cliques.into_iter().map(|cl| (cl, c)));
    }
    Ok(out)
}

fn bron_kerbosch(adj: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = bits(p | x)
        .into_iter()
        .max_by_key(|&u| (adj[u] & p).count_ones())
        .unwrap();
    for v in bits(p & !adj[pivot]) {
        bron_kerbosch(adj, r | 1 << v, p & adj[v], x & adj[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// A partition of `V(g)` into exactly five nonempty monochromatic cliques of
/// one colour, trying colours in ascending order. Exhaustive for
/// `n ≤ 25`; larger graphs use first-fit and may miss a partition.
pub fn clique_partition_5(g: &ColouredGraph) -> Option<ClassPartition> {
    let n = g.n();
    if n < 5 {
        return None;
    }
    for c in 1..=g.k() {
        let classes = if n <= EXACT_PARTITION_LIMIT {
            exact_cover(g, c)
        } else {
            first_fit(g, c)
        };
        if let Some(mut classes) = classes {
            while classes.len() < 5 {
                let idx = (0..classes.len())
                    .max_by_key(|&i| (classes[i].len(), std::cmp::Reverse(i)))
                    .unwrap();
                let v = classes[idx].pop().expect("n >= 5 leaves a class of size 2");
                classes.push(vec![v]);
            }
            for cl in &mut classes {
                cl.sort_unstable();
            }
            classes.sort();
            let p = ClassPartition { classes, colour: c };
            if p.is_valid_for(g) {
                return Some(p);
            }
        }
    }
    None
}

fn exact_cover(g: &ColouredGraph, c: u8) -> Option<Vec<Vec<usize>>> {
    let adj = colour_masks(g, c);
    // most constrained vertices first
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by_key(|&v| (adj[v].count_ones(), v));
    let mut classes: Vec<u64> = Vec::with_capacity(5);
    fn rec(order: &[usize], adj: &[u64], classes: &mut Vec<u64>) -> bool {
        let Some((&v, rest)) = order.split_first() else {
            return true;
        };
        for i in 0..classes.len() {
            if classes[i] & !adj[v] == 0 {
                classes[i] |= 1 << v;
                if rec(rest, adj, classes) {
                    return true;
                }
                classes[i] &= !(1 << v);
            }
        }
        if classes.len() < 5 {
            classes.push(1 << v);
            if rec(rest, adj, classes) {
                return true;
            }
            classes.pop();
        }
        false
    }
    rec(&order, &adj, &mut classes).then(|| classes.into_iter().map(bits).collect())
}

fn first_fit(g: &ColouredGraph, c: u8) -> Option<Vec<Vec<usize>>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.n() {
        match classes
            .iter()
            .position(|cl| cl.iter().all(|&u| g.colour(u, v) == c))
        {
            Some(i) => classes[i].push(v),
            None if classes.len() < 5 => classes.push(vec![v]),
            None => return None,
        }
    }
    Some(classes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouredgraph::{BLUE, RED};
    use crate::extremal::{build_gex, pentagon_base};
    use itertools::Itertools;

    #[test]
    fn gex25_cliques() {
        let (g, _) = build_gex(25, 3, None).unwrap();
        let cliques = maximal_mono_cliques(&g, 4).unwrap();
        // brute force: every 4-set inside a class is red, and no red K4 meets
        // two classes since cross edges are blue or green
        let red_k4 = (0..25)
            .combinations(4)
            .filter(|s| {
                s.iter()
                    .tuple_combinations()
                    .all(|(&a, &b)| g.colour(a, b) == RED)
            })
            .count();
        assert_eq!(red_k4, 5 * 5);
        assert_eq!(cliques.len(), 5);
        for (idx, (cl, c)) in cliques.iter().enumerate() {
            assert_eq!(*c, RED);
            assert_eq!(cl, &(idx * 5..idx * 5 + 5).collect::<Vec<_>>());
        }
    }

    #[test]
    fn small_clique_cases() {
        assert!(maximal_mono_cliques(&pentagon_base(), 4)
            .unwrap()
            .is_empty());
        let red6 = ColouredGraph::monochromatic(6, 3, RED);
        assert_eq!(
            maximal_mono_cliques(&red6, 4).unwrap(),
            vec![((0..6).collect(), RED)]
        );
        assert!(maximal_mono_cliques(&ColouredGraph::monochromatic(41, 3, RED), 4).is_err());
    }

    #[test]
    fn partitions() {
        let (g, _) = build_gex(15, 3, None).unwrap();
        let p = clique_partition_5(&g).unwrap();
        assert_eq!(p.colour, RED);
        assert_eq!(p.sizes(), vec![3; 5]);
        let p = clique_partition_5(&pentagon_base()).unwrap();
        assert_eq!(p.sizes(), vec![1; 5]);
        let blue6 = ColouredGraph::monochromatic(6, 3, BLUE);
        let p = clique_partition_5(&blue6).unwrap();
        assert_eq!(p.colour, BLUE);
        assert!(p.is_valid_for(&blue6));
        assert_eq!(p.classes.len(), 5);
        // fewer than five vertices cannot fill five classes
        assert!(clique_partition_5(&ColouredGraph::monochromatic(4, 3, RED)).is_none());
    }
}
