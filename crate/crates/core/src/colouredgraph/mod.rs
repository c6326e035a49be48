//! Edge-coloured complete graphs.

mod bad;
mod canonical;
mod density;
mod enumerate;
mod formulas;
mod graph;

pub use bad::{bad_family, bad_subfamily, triangle_signature, BAD_TRIPLES};
pub(crate) use canonical::min_listing;
pub use canonical::{canonical_form, canonical_key, is_isomorphic, CanonicalKey, MAX_CANONICAL_N};
pub use density::{
    density, family_density, mono_triangle_family, mono_triangles, neighbourhood, subset_histogram,
    MonoTriangles,
};
pub(crate) use enumerate::{colour_vectors, enumerate_keyed, extend};
pub use enumerate::{count_models_polya, enumerate_models, model_size_limit};
pub use formulas::{corollary_value, goodman, M3_K3_17, RAMSEY_3_K3};
pub use graph::{ColouredGraph, GraphError, BLUE, GREEN, RED};
