use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use num_bigint::BigInt;

use super::{enumerate_flags_cached, Flag, FlagClassKey, TypeSigma};
use crate::colouredgraph::{ColouredGraph, GraphError};
use crate::exactmath::{binomial, Rational};

fn same_type(a: &Flag, b: &Flag) -> Result<(), GraphError> {
    if a.sigma() == b.sigma() {
        Ok(())
    } else {
        Err(GraphError::TypeMismatch)
    }
}

fn unlabelled(f: &Flag) -> Vec<usize> {
    (0..f.size()).filter(|v| !f.theta().contains(v)).collect()
}

/// The flag `(G[θ ∪ extra], θ)`.
fn subflag(g: &Flag, extra: &[usize]) -> Flag {
    let mut vs = g.theta().to_vec();
    vs.extend_from_slice(extra);
    let s = g.type_size();
    Flag {
        model: g.model().induced(&vs),
        theta: (0..s).collect(),
    }
}

/// Counts of the flag classes `(G[V], θ)` over all `V ⊇ im θ` with `|V| = m`.
pub fn subflag_histogram(g: &Flag, m: usize) -> Result<BTreeMap<FlagClassKey, u64>, GraphError> {
    if m < g.type_size() || m > g.size() {
        return Err(GraphError::SizeMismatch {
            pattern: m,
            host: g.size(),
        });
    }
    let mut hist = BTreeMap::new();
    for extra in unlabelled(g).into_iter().combinations(m - g.type_size()) {
        *hist.entry(subflag(g, &extra).key()?).or_insert(0) += 1;
    }
    Ok(hist)
}

/// `p(F, G)`: the chance that a random `V ⊇ im θ_G` of size `|F|` induces a
/// flag isomorphic to `F`; zero when `G` is smaller than `F`.
pub fn flag_density(f: &Flag, g: &Flag) -> Result<Rational, GraphError> {
    same_type(f, g)?;
    if g.size() < f.size() {
        return Ok(Rational::zero());
    }
    let key = f.key()?;
    let hist = subflag_histogram(g, f.size())?;
    let hits = hist.get(&key).copied().unwrap_or(0);
    let s = g.type_size() as u64;
    Ok(Rational::new(
        BigInt::from(hits),
        binomial(g.size() as u64 - s, f.size() as u64 - s),
    ))
}

/// `p(F1, F2; G)`: random `V1, V2 ⊇ im θ_G` meeting only in `im θ_G`.
pub fn joint_density(f1: &Flag, f2: &Flag, g: &Flag) -> Result<Rational, GraphError> {
    same_type(f1, g)?;
    same_type(f2, g)?;
    let s = g.type_size();
    let (a, b) = (f1.size() - s, f2.size() - s);
    if g.size() < s + a + b {
        return Err(GraphError::SizeMismatch {
            pattern: s + a + b,
            host: g.size(),
        });
    }
    let (k1, k2) = (f1.key()?, f2.key()?);
    let free = unlabelled(g);
    let mut hits = 0u64;
    for x in free.iter().copied().combinations(a) {
        if subflag(g, &x).key()? != k1 {
            continue;
        }
        let rest: Vec<usize> = free.iter().copied().filter(|v| !x.contains(v)).collect();
        for y in rest.into_iter().combinations(b) {
            if subflag(g, &y).key()? == k2 {
                hits += 1;
            }
        }
    }
    let n = free.len() as u64;
    Ok(Rational::new(
        BigInt::from(hits),
        binomial(n, a as u64) * binomial(n - a as u64, b as u64),
    ))
}

/// Probability that a random injection `θ: V(τ) → V(L)` together with a
/// random split of the remaining vertices into `X`, `Y` of sizes
/// `|K1| - |τ|`, `|K2| - |τ|` gives `(L[θ ∪ X], θ) ≅ K1` and
/// `(L[θ ∪ Y], θ) ≅ K2`. Injections that do not induce `τ` count as failures.
pub fn avg_coefficient(
    tau: &TypeSigma,
    k1: &Flag,
    k2: &Flag,
    l: &ColouredGraph,
) -> Result<Rational, GraphError> {
    if &k1.sigma() != tau || &k2.sigma() != tau {
        return Err(GraphError::TypeMismatch);
    }
    let s = tau.size();
    let (a, b) = (k1.size() - s, k2.size() - s);
    if l.n() != s + a + b {
        return Err(GraphError::SizeMismatch {
            pattern: s + a + b,
            host: l.n(),
        });
    }
    let (key1, key2) = (k1.key()?, k2.key()?);
    let mut hits = 0u64;
    let mut injections = 0u64;
    for theta in (0..l.n()).permutations(s) {
        injections += 1;
        if !tau.embeds(l, &theta) {
            continue;
        }
        let host = Flag {
            model: l.clone(),
            theta: theta.clone(),
        };
        let free = unlabelled(&host);
        for x in free.iter().copied().combinations(a) {
            let y: Vec<usize> = free.iter().copied().filter(|v| !x.contains(v)).collect();
            if subflag(&host, &x).key()? == key1 && subflag(&host, &y).key()? == key2 {
                hits += 1;
            }
        }
    }
    let splits = binomial((a + b) as u64, a as u64);
    Ok(Rational::new(
        BigInt::from(hits),
        BigInt::from(injections) * splits,
    ))
}

/// `q_σ(F)`: the chance that a random injection of the labels into the model
/// of `F` yields a flag isomorphic to `F`.
pub fn unlabel_coefficient(f: &Flag) -> Result<Rational, GraphError> {
    let sigma = f.sigma();
    let key = f.key()?;
    let mut hits = 0u64;
    let mut total = 0u64;
    for theta in (0..f.size()).permutations(f.type_size()) {
        total += 1;
        if sigma.embeds(f.model(), &theta)
            && (Flag {
                model: f.model().clone(),
                theta,
            })
            .key()?
                == key
        {
            hits += 1;
        }
    }
    Ok(Rational::new(BigInt::from(hits), BigInt::from(total)))
}

/// Checks `p(F, H) = Σ_{G ∈ F^σ_m} p(F, G) p(G, H)` exactly. The sum runs over
/// the enumerated classes; every class met in `H` must be among them.
pub fn verify_chain_rule(f: &Flag, m: usize, h: &Flag) -> Result<bool, GraphError> {
    same_type(f, h)?;
    if f.size() > m || m > h.size() {
        return Err(GraphError::SizeMismatch {
            pattern: m,
            host: h.size(),
        });
    }
    let lhs = flag_density(f, h)?;
    let classes = enumerate_flags_cached(&f.sigma(), m)?;
    let hist = subflag_histogram(h, m)?;
    let known: BTreeSet<FlagClassKey> =
        classes.iter().map(|g| g.key()).collect::<Result<_, _>>()?;
    if hist.keys().any(|k| !known.contains(k)) {
        return Ok(false);
    }
    let s = h.type_size() as u64;
    let total = binomial(h.size() as u64 - s, m as u64 - s);
    let mut rhs = Rational::zero();
    for g in classes.iter() {
        let Some(&count) = hist.get(&g.key()?) else {
            continue;
        };
        rhs += flag_density(f, g)? * Rational::new(BigInt::from(count), total.clone());
    }
    Ok(lhs == rhs)
}
