//! Two-number labelings for dichotomic graphs (decoder `x1 = y2`) and
//! linear neighborhood graphs (decoder `x1 < y2`), and the renumberings that
//! bring such labels into `[n]_0`.

use std::collections::BTreeMap;

use crate::graph::{is_dichotomic, is_linear_neighborhood, Graph};
use crate::logic::{FoScheme, Formula, Semantics, Term};

use super::SchemeError;

/// A label `(u1, u2)`.
pub type NumLabel = [u64; 2];

/// `(x1 = y2, 1)` under bounded semantics.
pub fn equality_scheme() -> FoScheme {
    FoScheme::new(Formula::eq(Term::x(1), Term::y(2)), 1, Semantics::Bounded).expect("well-formed formula")
}

/// `(x1 < y2, 1)` under bounded semantics.
pub fn order_scheme() -> FoScheme {
    FoScheme::new(Formula::lt(Term::x(1), Term::y(2)), 1, Semantics::Bounded).expect("well-formed formula")
}

fn out_set(g: &Graph, u: usize) -> Vec<bool> {
    (0..g.n()).map(|v| g.has_edge(u, v)).collect()
}

fn in_set(g: &Graph, v: usize) -> Vec<bool> {
    (0..g.n()).map(|u| g.has_edge(u, v)).collect()
}

/// Group vertices by a key, numbering groups `1..` by their least vertex.
fn classes_by<K: Ord>(n: usize, key: impl Fn(usize) -> K) -> Vec<usize> {
    let mut index: BTreeMap<K, usize> = BTreeMap::new();
    (0..n)
        .map(|v| {
            let next = index.len() + 1;
            *index.entry(key(v)).or_insert(next)
        })
        .collect()
}

/// `u1` is the class of `u`'s out-neighbourhood (classes numbered from 1 by
/// least vertex); `u2` is the class whose members are exactly `u`'s
/// in-neighbours, or 0 when `u` has none.
pub fn dichotomic_encode(g: &Graph) -> Result<Vec<NumLabel>, SchemeError> {
    if !is_dichotomic(g) {
        return Err(SchemeError::NotDichotomic);
    }
    let n = g.n();
    let class = classes_by(n, |u| out_set(g, u));
    Ok((0..n)
        .map(|v| {
            let u2 = (0..n).find(|&u| g.has_edge(u, v)).map_or(0, |u| class[u]);
            [class[v] as u64, u2 as u64]
        })
        .collect())
}

/// Vertices are grouped by in-neighbourhood: `V_0` has in-degree zero and
/// `V_1 ⊂ … ⊂ V_k` are the other classes ordered by their nested
/// in-neighbourhoods. `u2` is the index of `u`'s class and `u1` the least `i`
/// with `u ∈ N_in(V_{i+1})`, or `k` when there is none.
pub fn linear_neighborhood_encode(g: &Graph) -> Result<Vec<NumLabel>, SchemeError> {
    if !is_linear_neighborhood(g) {
        return Err(SchemeError::NotLinearNeighborhood);
    }
    let n = g.n();
    let mut sets: Vec<Vec<bool>> = (0..n).map(|v| in_set(g, v)).filter(|s| s.iter().any(|&b| b)).collect();
    // Nested sets are ordered by size.
    sets.sort_by_key(|s| s.iter().filter(|&&b| b).count());
    sets.dedup();
    let k = sets.len();
    Ok((0..n)
        .map(|u| {
            let own = in_set(g, u);
            let u2 = sets.iter().position(|s| *s == own).map_or(0, |i| i + 1);
            let u1 = sets.iter().position(|s| s[u]).unwrap_or(k);
            [u1 as u64, u2 as u64]
        })
        .collect())
}

fn distinct_firsts(labels: &[NumLabel]) -> Vec<u64> {
    let mut firsts: Vec<u64> = labels.iter().map(|l| l[0]).collect();
    firsts.sort_unstable();
    firsts.dedup();
    firsts
}

/// Renumber labels for `x1 < y2` into `[n]_0`: first components become their
/// rank among all first components, second components the number of first
/// components below them. Every verdict `x1 < y2` is preserved.
pub fn compress_order_labels(labels: &[NumLabel]) -> Vec<NumLabel> {
    let firsts = distinct_firsts(labels);
    labels
        .iter()
        .map(|l| {
            let rank = firsts.partition_point(|&f| f < l[0]);
            let below = firsts.partition_point(|&f| f < l[1]);
            [rank as u64, below as u64]
        })
        .collect()
}

/// Renumber labels for `x1 = y2` into `[n]_0`: first components become
/// their rank among all first components plus one; a second component maps to
/// the new number of the equal first component, or 0 if there is none.
pub fn compress_eq_labels(labels: &[NumLabel]) -> Vec<NumLabel> {
    let firsts = distinct_firsts(labels);
    labels
        .iter()
        .map(|l| {
            let x = firsts.binary_search(&l[0]).expect("present") + 1;
            let y = firsts.binary_search(&l[1]).map_or(0, |i| i + 1);
            [x as u64, y as u64]
        })
        .collect()
}
