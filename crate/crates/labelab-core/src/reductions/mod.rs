//! Algebraic and subgraph reductions between graph classes: verifiers,
//! small-instance searchers, composition, and constructive witnesses.
//!
//! An algebraic witness writes `g` as `f(H_1, ..., H_k)` up to self-loops. A
//! subgraph representation maps each vertex of `g` to a `k`-tuple of host
//! vertices; distinct `u`, `v` are adjacent iff `f` accepts the `k x k`
//! matrix `A_ij = [(ℓ(u)_i, ℓ(v)_j) ∈ E(H)]`.

mod builtins;

use thiserror::Error;

use crate::boolfn::{compose_boolean, BoolFnError, BooleanFunctionTable};
use crate::graph::{apply_boolean, equiv_mod_selfloops, induced_subgraph, Graph, GraphError};
use crate::oracle::GraphClassOracle;
use crate::schemes::SchemeError;
use crate::search::{Meter, Outcome, SearchBudget};

pub use builtins::{
    algebraic_to_subgraph, dichotomic_to_paths, k_interval_to_interval, lng_to_tcpaths, rectangles_to_intervals,
    tcpaths_to_interval, BuiltinReduction, KIntervalModel,
};

/// Completions of a partial matrix are enumerated up to this many unknown entries.
pub const MAX_OPEN_ENTRIES: usize = 10;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ReductionError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    BoolFn(#[from] BoolFnError),
    #[error(transparent)]
    Scheme(#[from] SchemeError),
    #[error("vertex {vertex} maps to {len} host vertices, expected {k}")]
    TupleLength { vertex: usize, len: usize, k: usize },
    #[error("host vertex {index} out of range for a host on {n} vertices")]
    HostIndex { index: usize, n: usize },
    #[error("representation covers {given} vertices, graph has {n}")]
    Coverage { given: usize, n: usize },
    #[error("{0}")]
    Invalid(String),
}

/// An `(H, f)`-representation with vertex map `ℓ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgraphRepresentation {
    pub host: Graph,
    pub k: usize,
    pub f: BooleanFunctionTable,
    pub ell: Vec<Vec<usize>>,
}

impl SubgraphRepresentation {
    pub fn new(host: Graph, f: BooleanFunctionTable, ell: Vec<Vec<usize>>) -> Result<Self, ReductionError> {
        let k = f.matrix_side()?;
        for (vertex, t) in ell.iter().enumerate() {
            if t.len() != k {
                return Err(ReductionError::TupleLength { vertex, len: t.len(), k });
            }
            if let Some(&index) = t.iter().find(|&&h| h >= host.n()) {
                return Err(ReductionError::HostIndex { index, n: host.n() });
            }
        }
        Ok(SubgraphRepresentation { host, k, f, ell })
    }

    /// The matrix `A^ℓ_{uv}`, flattened row-major.
    pub fn matrix(&self, u: usize, v: usize) -> Vec<bool> {
        let (a, b) = (&self.ell[u], &self.ell[v]);
        (0..self.k * self.k).map(|p| self.host.has_edge(a[p / self.k], b[p % self.k])).collect()
    }

    /// Whether distinct `u`, `v` are adjacent in the represented graph.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.f.eval_matrix(&self.matrix(u, v))
    }

    /// Whether the host has exactly `n^c` vertices.
    pub fn host_size_ok(&self, n: usize, c: u32) -> bool {
        n.checked_pow(c) == Some(self.host.n())
    }
}

/// Whether `g ≡ f(witnesses)` on all pairs of distinct vertices.
pub fn verify_algebraic(g: &Graph, f: &BooleanFunctionTable, witnesses: &[Graph]) -> Result<bool, ReductionError> {
    let refs: Vec<&Graph> = witnesses.iter().collect();
    let h = apply_boolean(f, &refs)?;
    Ok(equiv_mod_selfloops(g, &h)?)
}

/// Whether `rep` describes `g` on all pairs of distinct vertices.
pub fn verify_subgraph(g: &Graph, rep: &SubgraphRepresentation) -> Result<bool, ReductionError> {
    let n = g.n();
    if rep.ell.len() != n {
        return Err(ReductionError::Coverage { given: rep.ell.len(), n });
    }
    // Re-check the invariants in case fields were edited directly.
    let rep = SubgraphRepresentation::new(rep.host.clone(), rep.f.clone(), rep.ell.clone())?;
    Ok((0..n).all(|u| (0..n).all(|v| u == v || rep.adjacent(u, v) == g.has_edge(u, v))))
}

/// Chain `g → H1` (via `first`) with `H1 → H2` (via `second`): tuples are
/// concatenated images and the functions composed block-wise. The result is
/// correct whenever `first` maps distinct vertices to distinct host vertices
/// or `second`'s verdict on equal vertices matches `H1`'s loops.
pub fn compose_representations(
    first: &SubgraphRepresentation,
    second: &SubgraphRepresentation,
) -> Result<SubgraphRepresentation, ReductionError> {
    if second.ell.len() != first.host.n() {
        return Err(ReductionError::Coverage { given: second.ell.len(), n: first.host.n() });
    }
    let f = compose_boolean(&first.f, &second.f)?;
    let ell = first.ell.iter().map(|t| t.iter().flat_map(|&h| second.ell[h].iter().copied()).collect()).collect();
    SubgraphRepresentation::new(second.host.clone(), f, ell)
}

/// Ordered pairs constrained by the witnesses, grouped by larger endpoint.
fn pair_order(g: &Graph) -> Vec<(usize, usize)> {
    let mut pairs = Vec::new();
    for v in 1..g.n() {
        for u in 0..v {
            pairs.push((u, v));
            if g.is_directed() {
                pairs.push((v, u));
            }
        }
    }
    pairs
}

/// Search loop-free witnesses `H_1..H_k` in the oracle's class with
/// `g ≡ f(H_1, ..., H_k)`. Edge vectors are tried in ascending order per
/// pair; hereditary oracles are checked on every completed vertex prefix.
pub fn search_algebraic(
    g: &Graph,
    f: &BooleanFunctionTable,
    oracle: &dyn GraphClassOracle,
    budget: SearchBudget,
) -> Result<Outcome<Vec<Graph>>, ReductionError> {
    let n = g.n();
    if n > budget.max_vertices {
        return Ok(Outcome::Unknown(format!("{n} vertices exceed the budget of {}", budget.max_vertices)));
    }
    let k = f.arity();
    if k == 0 {
        return Err(ReductionError::Invalid("algebraic witnesses need a function of positive arity".into()));
    }
    let pairs = pair_order(g);
    let vectors = |value: bool| -> Vec<Vec<bool>> {
        (0..1usize << k)
            .filter(|&i| f.eval_index(i) == value)
            .map(|i| (0..k).map(|j| i >> (k - 1 - j) & 1 == 1).collect())
            .collect()
    };
    let choices = [vectors(false), vectors(true)];
    if pairs.iter().any(|&(u, v)| choices[g.has_edge(u, v) as usize].is_empty()) {
        return Ok(Outcome::NotFound);
    }
    // Index of the last pair involving each vertex as the larger endpoint.
    let completes: Vec<Option<usize>> = (0..pairs.len())
        .map(|i| {
            let v = pairs[i].0.max(pairs[i].1);
            let last = pairs.get(i + 1).is_none_or(|&(a, b)| a.max(b) != v);
            last.then_some(v)
        })
        .collect();
    let meter = Meter::new(budget);
    let mut ws: Vec<Graph> = vec![Graph::edgeless(n, g.is_directed()); k];
    let prefix_ok = |ws: &[Graph], v: usize| -> Result<bool, ReductionError> {
        let vs: Vec<usize> = (0..=v).collect();
        for w in ws {
            if !oracle.contains(&induced_subgraph(w, &vs)?) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    if oracle.hereditary() && !prefix_ok(&ws, 0)? {
        return Ok(Outcome::NotFound);
    }
    let mut next = vec![0usize; pairs.len()];
    let mut depth = 0;
    loop {
        if depth == pairs.len() {
            if ws.iter().all(|w| oracle.contains(w)) {
                if !verify_algebraic(g, f, &ws)? {
                    return Err(ReductionError::Invalid("search produced an inconsistent witness".into()));
                }
                return Ok(Outcome::Found(ws));
            }
            if depth == 0 {
                return Ok(Outcome::NotFound);
            }
            depth -= 1;
            continue;
        }
        let (u, v) = pairs[depth];
        let opts = &choices[g.has_edge(u, v) as usize];
        let mut advanced = false;
        while next[depth] < opts.len() {
            if !meter.tick() {
                return Ok(Outcome::Unknown(meter.reason()));
            }
            let x = &opts[next[depth]];
            next[depth] += 1;
            for (w, &bit) in ws.iter_mut().zip(x) {
                w.set_edge(u, v, bit);
            }
            let ok = match completes[depth] {
                Some(last) if oracle.hereditary() => prefix_ok(&ws, last)?,
                _ => true,
            };
            if ok {
                advanced = true;
                break;
            }
        }
        if advanced {
            depth += 1;
        } else {
            next[depth] = 0;
            for w in ws.iter_mut() {
                w.set_edge(u, v, false);
            }
            if depth == 0 {
                return Ok(Outcome::NotFound);
            }
            depth -= 1;
        }
    }
}

/// Whether some completion of a partial matrix gives `f` the value `want`.
/// Too many open entries are optimistically treated as feasible.
fn feasible(f: &BooleanFunctionTable, known: &[Option<bool>], want: bool) -> bool {
    let open: Vec<usize> = (0..known.len()).filter(|&p| known[p].is_none()).collect();
    if open.len() > MAX_OPEN_ENTRIES {
        return true;
    }
    let arity = known.len();
    let base: usize = known.iter().enumerate().filter(|(_, b)| **b == Some(true)).map(|(p, _)| 1 << (arity - 1 - p)).sum();
    (0..1usize << open.len()).any(|m| {
        let idx = open.iter().enumerate().filter(|(j, _)| m >> j & 1 == 1).fold(base, |acc, (_, &p)| acc | 1 << (arity - 1 - p));
        f.eval_index(idx) == want
    })
}

/// Search the lexicographically least vertex map `ℓ` into `host` with
/// `k`-tuples for which `(host, f, ℓ)` represents `g`. Components are
/// assigned one at a time and checked against every earlier vertex.
pub fn search_subgraph(
    g: &Graph,
    host: &Graph,
    f: &BooleanFunctionTable,
    budget: SearchBudget,
) -> Result<Outcome<SubgraphRepresentation>, ReductionError> {
    let n = g.n();
    let k = f.matrix_side()?;
    let h = host.n();
    if n > budget.max_vertices {
        return Ok(Outcome::Unknown(format!("{n} vertices exceed the budget of {}", budget.max_vertices)));
    }
    let meter = Meter::new(budget);
    let total = n * k;
    // Entry (a, b) of A_uv is known once u's component a and v's component b are.
    let consistent = |assign: &[usize], v: usize, i: usize| -> bool {
        for u in 0..v {
            let tu = &assign[u * k..u * k + k];
            let tv = &assign[v * k..v * k + i + 1];
            let uv: Vec<Option<bool>> =
                (0..k * k).map(|p| tv.get(p % k).map(|&y| host.has_edge(tu[p / k], y))).collect();
            let vu: Vec<Option<bool>> =
                (0..k * k).map(|p| tv.get(p / k).map(|&x| host.has_edge(x, tu[p % k]))).collect();
            if !feasible(f, &uv, g.has_edge(u, v)) || !feasible(f, &vu, g.has_edge(v, u)) {
                return false;
            }
        }
        true
    };
    let mut assign: Vec<usize> = Vec::with_capacity(total);
    let mut next = vec![0usize; total];
    while assign.len() < total {
        let pos = assign.len();
        let (v, i) = (pos / k, pos % k);
        let mut placed = false;
        while next[pos] < h {
            if !meter.tick() {
                return Ok(Outcome::Unknown(meter.reason()));
            }
            let x = next[pos];
            next[pos] += 1;
            assign.push(x);
            if consistent(&assign, v, i) {
                placed = true;
                break;
            }
            assign.pop();
        }
        if !placed {
            next[pos] = 0;
            if assign.pop().is_none() {
                return Ok(Outcome::NotFound);
            }
        }
    }
    let ell = if k == 0 { vec![Vec::new(); n] } else { assign.chunks(k).map(|c| c.to_vec()).collect() };
    let rep = SubgraphRepresentation::new(host.clone(), f.clone(), ell)?;
    if !verify_subgraph(g, &rep)? {
        return Err(ReductionError::Invalid("search produced an inconsistent representation".into()));
    }
    Ok(Outcome::Found(rep))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_graphs;
    use crate::oracle::{ForestOracle, IntervalOracle};

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    fn identity_rep(g: &Graph) -> SubgraphRepresentation {
        SubgraphRepresentation::new(g.clone(), BooleanFunctionTable::identity(), (0..g.n()).map(|v| vec![v]).collect())
            .unwrap()
    }

    #[test]
    fn algebraic_trivial_cases() {
        let k3 = Graph::complete(3, false);
        assert!(verify_algebraic(&k3, &BooleanFunctionTable::identity(), &[k3.clone()]).unwrap());
        let e3 = Graph::edgeless(3, false);
        assert!(!verify_algebraic(&k3, &BooleanFunctionTable::and(), &[k3.clone(), e3.clone()]).unwrap());
        assert!(verify_algebraic(&k3, &BooleanFunctionTable::and(), &[k3.clone()]).is_err());
        assert!(verify_algebraic(&k3, &BooleanFunctionTable::identity(), &[Graph::edgeless(2, false)]).is_err());
    }

    #[test]
    fn four_cycle_is_and_of_two_interval_graphs() {
        let c4 = Graph::cycle(4);
        let ws = search_algebraic(&c4, &BooleanFunctionTable::and(), &IntervalOracle, budget()).unwrap().found().unwrap();
        assert!(ws.iter().all(|w| IntervalOracle.contains(w)));
        assert!(verify_algebraic(&c4, &BooleanFunctionTable::and(), &ws).unwrap());
        // But C4 itself is not an interval graph.
        let id = BooleanFunctionTable::identity();
        assert_eq!(search_algebraic(&c4, &id, &IntervalOracle, budget()).unwrap(), Outcome::NotFound);
    }

    #[test]
    fn triangle_is_not_a_forest() {
        let k3 = Graph::complete(3, false);
        let id = BooleanFunctionTable::identity();
        assert_eq!(search_algebraic(&k3, &id, &ForestOracle, budget()).unwrap(), Outcome::NotFound);
    }

    #[test]
    fn forests_have_two_interval_witnesses() {
        for n in 1..=5 {
            for g in crate::graph::canonical_graphs(n, false, false).unwrap().into_iter().filter(Graph::is_forest) {
                let out = search_algebraic(&g, &BooleanFunctionTable::and(), &IntervalOracle, budget()).unwrap();
                assert!(matches!(out, Outcome::Found(_)), "{g:?}");
            }
        }
    }

    #[test]
    fn identity_representation_verifies() {
        for n in 1..=3 {
            for g in enumerate_graphs(n, true, true).unwrap() {
                assert!(verify_subgraph(&g, &identity_rep(&g)).unwrap());
            }
        }
    }

    #[test]
    fn malformed_representations_are_rejected() {
        let p = Graph::path(3);
        let f = BooleanFunctionTable::identity();
        assert!(SubgraphRepresentation::new(p.clone(), f.clone(), vec![vec![3]]).is_err());
        assert!(SubgraphRepresentation::new(p.clone(), f.clone(), vec![vec![0, 1]]).is_err());
        assert!(SubgraphRepresentation::new(p.clone(), BooleanFunctionTable::and(), vec![]).is_err());
        let rep = identity_rep(&p);
        assert!(verify_subgraph(&Graph::path(2), &rep).is_err());
    }

    #[test]
    fn identity_search_finds_identity_map() {
        let g = Graph::path(4);
        let rep = search_subgraph(&g, &g, &BooleanFunctionTable::identity(), budget()).unwrap().found().unwrap();
        // P4 into itself: the least map is the identity 0-1-2-3.
        assert_eq!(rep.ell, vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(
            search_subgraph(&Graph::complete(3, false), &g, &BooleanFunctionTable::identity(), budget()).unwrap(),
            Outcome::NotFound
        );
    }

    #[test]
    fn feasibility_enumerates_completions() {
        let and = BooleanFunctionTable::from_fn(4, |a| a[1] && a[2]).unwrap();
        assert!(!feasible(&and, &[None, Some(false), None, None], true));
        assert!(feasible(&and, &[None, Some(true), None, None], true));
        assert!(feasible(&and, &[None, Some(false), None, None], false));
    }

    #[test]
    fn composition_of_identity_functions() {
        let g = Graph::cycle(3);
        let composed = compose_representations(&identity_rep(&g), &identity_rep(&g)).unwrap();
        assert_eq!(composed.f, BooleanFunctionTable::identity());
        assert!(verify_subgraph(&g, &composed).unwrap());
    }

    #[test]
    fn self_loops_never_change_verdicts() {
        let g = Graph::cycle(4);
        let ws = vec![Graph::path(4), Graph::cycle(4)];
        let f = BooleanFunctionTable::or();
        let base = verify_algebraic(&g, &f, &ws).unwrap();
        let rep = identity_rep(&g);
        for v in 0..4 {
            let mut h = g.clone();
            h.set_edge(v, v, true);
            assert_eq!(verify_algebraic(&h, &f, &ws).unwrap(), base);
            assert!(verify_subgraph(&h, &rep).unwrap());
        }
    }
}
