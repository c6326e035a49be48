//! Types, σ-flags and the densities built from them.

mod density;

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::colouredgraph::{
    extend, min_listing, model_size_limit, ColouredGraph, GraphError, MAX_CANONICAL_N,
};

pub use density::{
    avg_coefficient, flag_density, joint_density, subflag_histogram, unlabel_coefficient,
    verify_chain_rule,
};

/// A fully labelled coloured complete graph; vertex `i` carries label `i+1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TypeSigma {
    graph: ColouredGraph,
}

impl TypeSigma {
    pub fn new(graph: ColouredGraph) -> Self {
        TypeSigma { graph }
    }

    pub fn empty(k: u8) -> Self {
        TypeSigma {
            graph: ColouredGraph::monochromatic(0, k, 1),
        }
    }

    /// A 3-vertex type from its edge colours `(c12, c13, c23)`.
    pub fn triangle(c12: u8, c13: u8, c23: u8) -> Result<Self, GraphError> {
        ColouredGraph::from_upper_triangle(3, 3, &[c12, c13, c23]).map(TypeSigma::new)
    }

    pub fn size(&self) -> usize {
        self.graph.n()
    }

    pub fn graph(&self) -> &ColouredGraph {
        &self.graph
    }

    /// Whether `theta` embeds this type into `g` respecting colours.
    pub fn embeds(&self, g: &ColouredGraph, theta: &[usize]) -> bool {
        let s = self.size();
        theta.len() == s
            && (0..s).all(|a| {
                (a + 1..s).all(|b| g.colour(theta[a], theta[b]) == self.graph.colour(a, b))
            })
    }
}

/// The ten 3-vertex types in certificate order: colours `(c12, c13, c23)` =
/// RRR, RRB, RRG, RBB, RBG, RGG, BBB, BBG, BGG, GGG.
pub fn ten_types() -> Vec<TypeSigma> {
    const TRIPLES: [[u8; 3]; 10] = [
        [1, 1, 1],
        [1, 1, 2],
        [1, 1, 3],
        [1, 2, 2],
        [1, 2, 3],
        [1, 3, 3],
        [2, 2, 2],
        [2, 2, 3],
        [2, 3, 3],
        [3, 3, 3],
    ];
    TRIPLES
        .iter()
        .map(|t| TypeSigma::triangle(t[0], t[1], t[2]).expect("valid colours"))
        .collect()
}

/// A σ-flag: a model with a colour-respecting labelled copy of σ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Flag {
    model: ColouredGraph,
    theta: Vec<usize>,
}

/// Canonical key of a flag under label-fixing isomorphism: vertex count,
/// type size, then the minimal listing with labelled vertices first.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FlagClassKey(Vec<u8>);

impl FlagClassKey {
    pub fn to_hex(&self) -> String {
        hex::encode(&self.0)
    }
}

impl Flag {
    pub fn new(
        model: ColouredGraph,
        theta: Vec<usize>,
        sigma: &TypeSigma,
    ) -> Result<Self, GraphError> {
        let n = model.n();
        if let Some(&v) = theta.iter().find(|&&v| v >= n) {
            return Err(GraphError::VertexOutOfRange { v, n });
        }
        for (a, &u) in theta.iter().enumerate() {
            if theta[..a].contains(&u) {
                return Err(GraphError::InvalidFlag(format!(
                    "label map repeats vertex {u}"
                )));
            }
        }
        if model.k() != sigma.graph.k() {
            return Err(GraphError::InvalidFlag(
                "colour counts of model and type differ".into(),
            ));
        }
        if !sigma.embeds(&model, &theta) {
            return Err(GraphError::InvalidFlag(
                "label map does not respect the type colouring".into(),
            ));
        }
        Ok(Flag { model, theta })
    }

    /// The type itself, labelled by the identity.
    pub fn identity(sigma: &TypeSigma) -> Self {
        Flag {
            model: sigma.graph.clone(),
            theta: (0..sigma.size()).collect(),
        }
    }

    pub fn model(&self) -> &ColouredGraph {
        &self.model
    }

    pub fn theta(&self) -> &[usize] {
        &self.theta
    }

    pub fn size(&self) -> usize {
        self.model.n()
    }

    pub fn type_size(&self) -> usize {
        self.theta.len()
    }

    /// The labelled type read off the model.
    pub fn sigma(&self) -> TypeSigma {
        TypeSigma::new(self.model.induced(&self.theta))
    }

    /// Vertex order with labelled vertices first, then the rest ascending.
    pub(crate) fn label_first_order(&self) -> Vec<usize> {
        let mut order = self.theta.clone();
        order.extend((0..self.size()).filter(|v| !self.theta.contains(v)));
        order
    }

    pub fn key(&self) -> Result<FlagClassKey, GraphError> {
        if self.size() > MAX_CANONICAL_N {
            return Err(GraphError::SizeLimit {
                what: "flag canonical form",
                size: self.size(),
                limit: MAX_CANONICAL_N,
            });
        }
        Ok(self.canonical().0)
    }

    /// Key plus the representative with labels on `0..s` in canonical order.
    fn canonical(&self) -> (FlagClassKey, Flag) {
        let relabelled = self.model.permuted(&self.label_first_order());
        let s = self.type_size();
        let (listing, perm) = min_listing(&relabelled, s);
        let mut key = Vec::with_capacity(listing.len() + 2);
        key.push(self.size() as u8);
        key.push(s as u8);
        key.extend(listing);
        let rep = Flag {
            model: relabelled.permuted(&perm),
            theta: (0..s).collect(),
        };
        (FlagClassKey(key), rep)
    }

    /// Text form: the model in graph text format followed by a `theta` line
    /// of 1-based vertex images.
    pub fn to_text(&self) -> String {
        let labels: Vec<String> = self.theta.iter().map(|v| (v + 1).to_string()).collect();
        format!("{}theta {}\n", self.model.to_text(), labels.join(" "))
    }
}

/// Largest flag size accepted by [`enumerate_flags`] for a type of size `s`.
pub fn flag_size_limit(s: usize, k: u8) -> usize {
    let base = model_size_limit(k);
    if s == 0 {
        base
    } else {
        (base - 1).max(s)
    }
}

/// One representative per flag class of size `l` over `sigma`, sorted by
/// [`FlagClassKey`]. Labelled vertices of each representative are `0..s`.
pub fn enumerate_flags(sigma: &TypeSigma, l: usize) -> Result<Vec<Flag>, GraphError> {
    Ok(enumerate_flags_cached(sigma, l)?.as_ref().clone())
}

pub(crate) fn enumerate_flags_cached(
    sigma: &TypeSigma,
    l: usize,
) -> Result<Arc<Vec<Flag>>, GraphError> {
    type Cache = Mutex<HashMap<(TypeSigma, usize), Arc<Vec<Flag>>>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(hit) = cache.lock().unwrap().get(&(sigma.clone(), l)) {
        return Ok(hit.clone());
    }
    let flags = Arc::new(build_flags(sigma, l)?);
    cache
        .lock()
        .unwrap()
        .insert((sigma.clone(), l), flags.clone());
    Ok(flags)
}

fn build_flags(sigma: &TypeSigma, l: usize) -> Result<Vec<Flag>, GraphError> {
    let s = sigma.size();
    let k = sigma.graph.k();
    let limit = flag_size_limit(s, k);
    if l > limit {
        return Err(GraphError::SizeLimit {
            what: "flag enumeration",
            size: l,
            limit,
        });
    }
    if l < s {
        return Err(GraphError::SizeMismatch {
            pattern: s,
            host: l,
        });
    }
    let mut level: BTreeMap<FlagClassKey, Flag> = BTreeMap::new();
    let id = Flag::identity(sigma);
    let (key, rep) = id.canonical();
    level.insert(key, rep);
    let vectors_for = |len: usize| crate::colouredgraph::colour_vectors(len, k);
    for size in s..l {
        let vectors = vectors_for(size);
        let mut next = BTreeMap::new();
        for parent in level.values() {
            for v in &vectors {
                let f = Flag {
                    model: extend(&parent.model, v),
                    theta: parent.theta.clone(),
                };
                let (key, rep) = f.canonical();
                next.entry(key).or_insert(rep);
            }
        }
        level = next;
    }
    Ok(level.into_values().collect())
}

/// A random triple `(F, m, H)` for checking the chain rule: a random type
/// on at most 3 vertices, a random flag `F`, and `H` built by extending `F`
/// to at most 7 vertices and shuffling, so that `p(F, H) > 0`.
pub fn random_chain_triple<R: Rng>(rng: &mut R) -> (Flag, usize, Flag) {
    let random_vector =
        |rng: &mut R, len: usize| (0..len).map(|_| rng.gen_range(1..=3u8)).collect::<Vec<_>>();
    let s = rng.gen_range(0..=3usize);
    let mut type_graph = ColouredGraph::monochromatic(0, 3, 1);
    for size in 0..s {
        let v = random_vector(rng, size);
        type_graph = extend(&type_graph, &v);
    }
    let sigma = TypeSigma::new(type_graph);
    let m = rng.gen_range(s.max(1)..=flag_size_limit(s, 3).min(5));
    let f_size = rng.gen_range(s..=m);
    let h_size = rng.gen_range(m..=7);
    let mut model = sigma.graph.clone();
    for size in s..h_size {
        let v = random_vector(rng, size);
        model = extend(&model, &v);
    }
    let f = Flag {
        model: model.induced(&(0..f_size).collect::<Vec<_>>()),
        theta: (0..s).collect(),
    };
    let mut perm: Vec<usize> = (0..h_size).collect();
    perm.shuffle(rng);
    // vertex i of the shuffled graph is old vertex perm[i]
    let theta = (0..s)
        .map(|t| perm.iter().position(|&p| p == t).unwrap())
        .collect();
    let h = Flag {
        model: model.permuted(&perm),
        theta,
    };
    (f, m, h)
}

/// The 4-vertex σ-flag whose fourth vertex meets the labelled vertices in
/// colours `v`.
pub fn flag_from_vector(sigma: &TypeSigma, v: [u8; 3]) -> Result<Flag, GraphError> {
    if sigma.size() != 3 {
        return Err(GraphError::InvalidFlag(format!(
            "type has {} vertices, expected 3",
            sigma.size()
        )));
    }
    let k = sigma.graph.k();
    if let Some(&c) = v.iter().find(|&&c| c == 0 || c > k) {
        return Err(GraphError::ColourArgOutOfRange { c, k });
    }
    Ok(Flag {
        model: extend(&sigma.graph, &v),
        theta: vec![0, 1, 2],
    })
}

/// The colour vector of a 4-vertex flag over a 3-vertex type.
pub fn flag_vector(f: &Flag) -> Option<[u8; 3]> {
    if f.type_size() != 3 || f.size() != 4 {
        return None;
    }
    let x = (0..4).find(|v| !f.theta.contains(v))?;
    Some([0, 1, 2].map(|a| f.model.colour(x, f.theta[a])))
}
