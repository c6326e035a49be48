use crate::colouredgraph::{mono_triangles, ColouredGraph, GraphError, BLUE, GREEN};

/// Vertex classes `V_1 … V_5` (or `V_1 … V_m` for a general base) that are
/// monochromatic cliques of one colour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassPartition {
    pub classes: Vec<Vec<usize>>,
    pub colour: u8,
}

impl ClassPartition {
    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }

    /// Class index of every vertex.
    pub fn class_of(&self, n: usize) -> Vec<usize> {
        let mut owner = vec![usize::MAX; n];
        for (idx, class) in self.classes.iter().enumerate() {
            for &v in class {
                owner[v] = idx;
            }
        }
        owner
    }

    /// Classes nonempty, disjoint, covering `V(g)`, each a clique in `colour`.
    pub fn is_valid_for(&self, g: &ColouredGraph) -> bool {
        let mut seen = vec![false; g.n()];
        for class in &self.classes {
            if class.is_empty() {
                return false;
            }
            for &v in class {
                if v >= g.n() || std::mem::replace(&mut seen[v], true) {
                    return false;
                }
            }
            for (a, &u) in class.iter().enumerate() {
                if class[a + 1..]
                    .iter()
                    .any(|&w| g.colour(u, w) != self.colour)
                {
                    return false;
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// The 2-coloured `K_5` without a monochromatic triangle: green cycle
/// 0-1-2-3-4-0, blue chords.
pub fn pentagon_base() -> ColouredGraph {
    ColouredGraph::from_fn(5, 3, |i, j| {
        if j - i == 1 || j - i == 4 {
            GREEN
        } else {
            BLUE
        }
    })
    .expect("colours in range")
}

/// Blow-up of `base` into balanced classes (larger classes first) joined by
/// the base colours, each class a clique in the smallest colour the base does
/// not use. The default base is [`pentagon_base`], giving red classes.
pub fn build_gex(
    n: usize,
    k: u8,
    base: Option<&ColouredGraph>,
) -> Result<(ColouredGraph, ClassPartition), GraphError> {
    let default_base;
    let base = match base {
        Some(b) => b,
        None => {
            default_base = pentagon_base();
            &default_base
        }
    };
    let m = base.n();
    if m == 0 || n < m {
        return Err(GraphError::SizeMismatch {
            pattern: m,
            host: n,
        });
    }
    if base.colours_used().iter().any(|&c| c > k) {
        return Err(GraphError::InvalidBase(format!(
            "base uses colours beyond 1..={k}"
        )));
    }
    if mono_triangles(base).total > 0 {
        return Err(GraphError::InvalidBase(
            "base has a monochromatic triangle".into(),
        ));
    }
    let used = base.colours_used();
    let clique = (1..=k).find(|c| !used.contains(c)).ok_or_else(|| {
        GraphError::InvalidBase(format!("base leaves no free colour among 1..={k}"))
    })?;
    let (q, r) = (n / m, n % m);
    let mut classes = Vec::with_capacity(m);
    let mut next = 0;
    for idx in 0..m {
        let size = if idx < r { q + 1 } else { q };
        classes.push((next..next + size).collect::<Vec<_>>());
        next += size;
    }
    let partition = ClassPartition {
        classes,
        colour: clique,
    };
    let owner = partition.class_of(n);
    let g = ColouredGraph::from_fn(n, k, |i, j| {
        let (a, b) = (owner[i], owner[j]);
        if a == b {
            clique
        } else {
            base.colour(a, b)
        }
    })?;
    Ok((g, partition))
}
