use super::ClassPartition;
use crate::colouredgraph::{mono_triangles, ColouredGraph};

/// Search nodes allowed per clique colour before giving up.
pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000;

/// Structure showing that a graph lies in `𝒢ₙ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GnWitness {
    pub partition: ClassPartition,
    /// `base[i][j]`: the colour joining classes `i` and `j` outside the
    /// recoloured matching.
    pub base: Vec<Vec<u8>>,
    /// Recoloured cross edges `(u, v)` with `u < v`, grouped per class pair.
    pub matchings: Vec<((usize, usize), Vec<(usize, usize)>)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GnMembership {
    pub member: bool,
    pub witness: Option<GnWitness>,
    /// False when the node budget ran out before the search finished.
    pub complete: bool,
}

/// Whether `g` is `G_ex(n)` up to vertex and colour permutation with
/// (possibly empty) matchings between classes recoloured in the class
/// colour, creating no monochromatic triangle beyond those inside classes.
pub fn is_member_gn(g: &ColouredGraph) -> GnMembership {
    is_member_gn_with_budget(g, DEFAULT_NODE_BUDGET)
}

pub fn is_member_gn_with_budget(g: &ColouredGraph, budget: u64) -> GnMembership {
    let n = g.n();
    if n < 5 || g.colours_used().iter().any(|&c| c > 3) {
        return GnMembership {
            member: false,
            witness: None,
            complete: true,
        };
    }
    let expected: u64 = {
        let (q, r) = (n / 5, n % 5);
        let c3 = |m: usize| (m * m.saturating_sub(1) * m.saturating_sub(2) / 6) as u64;
        (r as u64) * c3(q + 1) + (5 - r as u64) * c3(q)
    };
    let tri = mono_triangles(g);
    let mut complete = true;
    for c in 1..=3u8 {
        // every monochromatic triangle must sit inside a class of colour c
        if tri.total != expected
            || tri.per_colour.get((c - 1) as usize).copied().unwrap_or(0) != expected
        {
            continue;
        }
        let mut s = Search::new(g, c, budget);
        s.assign(0);
        if let Some(w) = s.found.take() {
            return GnMembership {
                member: true,
                witness: Some(w),
                complete: true,
            };
        }
        complete &= !s.exhausted;
    }
    GnMembership {
        member: false,
        witness: None,
        complete,
    }
}

struct Search<'a> {
    g: &'a ColouredGraph,
    c: u8,
    n: usize,
    small: usize,
    large_allowed: usize,
    classes: Vec<Vec<usize>>,
    /// base colour fixed so far per class pair, 0 if undetermined
    pair: [[u8; 5]; 5],
    nodes: u64,
    budget: u64,
    exhausted: bool,
    found: Option<GnWitness>,
}

impl<'a> Search<'a> {
    fn new(g: &'a ColouredGraph, c: u8, budget: u64) -> Self {
        let n = g.n();
        Search {
            g,
            c,
            n,
            small: n / 5,
            large_allowed: n % 5,
            classes: vec![Vec::new(); 5],
            pair: [[0; 5]; 5],
            nodes: 0,
            budget,
            exhausted: false,
            found: None,
        }
    }

    fn assign(&mut self, v: usize) {
        if self.found.is_some() || self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        if v == self.n {
            self.finish();
            return;
        }
        let first_empty = self.classes.iter().position(Vec::is_empty).unwrap_or(5);
        for x in 0..5.min(first_empty + 1) {
            if let Some(undo) = self.try_place(v, x) {
                self.classes[x].push(v);
                self.assign(v + 1);
                self.classes[x].pop();
                for (a, b) in undo {
                    self.pair[a][b] = 0;
                    self.pair[b][a] = 0;
                }
                if self.found.is_some() || self.exhausted {
                    return;
                }
            }
        }
    }

    /// Checks placing `v` in class `x`; returns pair colours newly fixed.
    fn try_place(&mut self, v: usize, x: usize) -> Option<Vec<(usize, usize)>> {
        let (g, c) = (self.g, self.c);
        let size = self.classes[x].len();
        let large = self
            .classes
            .iter()
            .filter(|cl| cl.len() > self.small)
            .count();
        if size == self.small + 1 || (size == self.small && large == self.large_allowed) {
            return None;
        }
        // enough vertices left to populate the empty classes
        let empty_after = self
            .classes
            .iter()
            .enumerate()
            .filter(|(i, cl)| cl.is_empty() && *i != x)
            .count();
        if self.n - v - 1 < empty_after {
            return None;
        }
        if self.classes[x].iter().any(|&u| g.colour(u, v) != c) {
            return None;
        }
        let mut fixed = Vec::new();
        let fail = |pair: &mut [[u8; 5]; 5], fixed: &Vec<(usize, usize)>| {
            for &(a, b) in fixed {
                pair[a][b] = 0;
                pair[b][a] = 0;
            }
            None
        };
        for y in (0..5).filter(|&y| y != x) {
            let mut c_neighbour = None;
            for &u in &self.classes[y] {
                let col = g.colour(u, v);
                if col == c {
                    if c_neighbour.is_some() {
                        return fail(&mut self.pair, &fixed);
                    }
                    c_neighbour = Some(u);
                } else if self.pair[x][y] == 0 {
                    self.pair[x][y] = col;
                    self.pair[y][x] = col;
                    fixed.push((x, y));
                } else if self.pair[x][y] != col {
                    return fail(&mut self.pair, &fixed);
                }
            }
            // u may already be matched into class x
            if let Some(u) = c_neighbour {
                if self.classes[x].iter().any(|&w| g.colour(u, w) == c) {
                    return fail(&mut self.pair, &fixed);
                }
            }
        }
        Some(fixed)
    }

    fn finish(&mut self) {
        let free: Vec<u8> = (1..=3).filter(|&b| b != self.c).collect();
        let undetermined: Vec<(usize, usize)> = (0..5)
            .flat_map(|a| (a + 1..5).map(move |b| (a, b)))
            .filter(|&(a, b)| self.pair[a][b] == 0)
            .collect();
        for mask in 0..(1u32 << undetermined.len()) {
            let mut base = self.pair;
            for (bit, &(a, b)) in undetermined.iter().enumerate() {
                let col = free[((mask >> bit) & 1) as usize];
                base[a][b] = col;
                base[b][a] = col;
            }
            let triangle = (0..5).any(|a| {
                (a + 1..5).any(|b| {
                    (b + 1..5).any(|d| base[a][b] == base[a][d] && base[a][b] == base[b][d])
                })
            });
            if triangle {
                continue;
            }
            let mut matchings = Vec::new();
            for a in 0..5 {
                for b in a + 1..5 {
                    let mut edges = Vec::new();
                    for &u in &self.classes[a] {
                        for &w in &self.classes[b] {
                            if self.g.colour(u, w) == self.c {
                                edges.push((u.min(w), u.max(w)));
                            }
                        }
                    }
                    edges.sort_unstable();
                    matchings.push(((a, b), edges));
                }
            }
            let base_rows = (0..5)
                .map(|a| {
                    (0..5)
                        .map(|b| if a == b { 0 } else { base[a][b] })
                        .collect()
                })
                .collect();
            self.found = Some(GnWitness {
                partition: ClassPartition {
                    classes: self.classes.clone(),
                    colour: self.c,
                },
                base: base_rows,
                matchings,
            });
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::colouredgraph::{BLUE, GREEN, RED};
    use crate::extremal::{build_gex, pentagon_base};

    #[test]
    fn gex_members() {
        for n in 5..=12 {
            let (g, _) = build_gex(n, 3, None).unwrap();
            let m = is_member_gn(&g);
            assert!(m.member, "n={n}");
            let w = m.witness.unwrap();
            assert!(w.partition.is_valid_for(&g));
            assert!(w.matchings.iter().all(|(_, e)| e.is_empty()));
        }
        assert!(is_member_gn(&pentagon_base()).member);
    }

    /// Second graph of the pair: `G_ex(11)` with red matchings between
    /// classes `{0,1,2}`-`{3,4}` and `{5,6}`-`{7,8}`.
    fn recoloured_g11() -> ColouredGraph {
        let (mut g, _) = build_gex(11, 3, None).unwrap();
        for (u, v) in [(0, 3), (1, 4), (5, 7)] {
            g.set_colour(u, v, RED).unwrap();
        }
        g
    }

    #[test]
    fn recoloured_matching_is_member() {
        let g = recoloured_g11();
        assert_eq!(mono_triangles(&g).total, 1);
        let m = is_member_gn(&g);
        assert!(m.member);
        let recoloured: usize = m
            .witness
            .unwrap()
            .matchings
            .iter()
            .map(|(_, e)| e.len())
            .sum();
        assert_eq!(recoloured, 3);
        let (gex, _) = build_gex(11, 3, None).unwrap();
        assert!(!crate::colouredgraph::is_isomorphic(&g, &gex).unwrap());
        // independent reason: the red edge counts differ
        let red_edges = |h: &ColouredGraph| {
            (0..11)
                .map(|v| {
                    crate::colouredgraph::neighbourhood(h, v, RED)
                        .unwrap()
                        .len()
                })
                .sum::<usize>()
        };
        assert_eq!((red_edges(&gex) / 2, red_edges(&g) / 2), (7, 10));
    }

    #[test]
    fn incident_recolouring_is_rejected() {
        let (mut g, _) = build_gex(11, 3, None).unwrap();
        g.set_colour(0, 3, RED).unwrap();
        g.set_colour(0, 4, RED).unwrap();
        // independent count: 0-3-4 is a new red triangle
        let by_hand = (0..11)
            .flat_map(|a| (a + 1..11).flat_map(move |b| (b + 1..11).map(move |d| (a, b, d))))
            .filter(|&(a, b, d)| {
                g.colour(a, b) == g.colour(a, d) && g.colour(a, b) == g.colour(b, d)
            })
            .count();
        assert_eq!(by_hand, 2);
        let m = is_member_gn(&g);
        assert!(!m.member && m.complete);
    }

    #[test]
    fn colour_permutation_preserves_membership() {
        let g = recoloured_g11();
        for map in [[BLUE, RED, GREEN], [GREEN, BLUE, RED], [BLUE, GREEN, RED]] {
            assert!(is_member_gn(&g.recoloured(&map).unwrap()).member);
        }
    }

    #[test]
    fn non_members() {
        assert!(!is_member_gn(&ColouredGraph::monochromatic(8, 3, RED)).member);
        // classes {0,1} and {2,3} are joined in green; one blue edge there
        // creates blue triangles 0-2-6 and 0-2-7
        let (mut g, _) = build_gex(10, 3, None).unwrap();
        assert_eq!(g.colour(0, 2), GREEN);
        g.set_colour(0, 2, BLUE).unwrap();
        assert_eq!(mono_triangles(&g).of_colour(BLUE), 2);
        assert!(!is_member_gn(&g).member);
    }
}
