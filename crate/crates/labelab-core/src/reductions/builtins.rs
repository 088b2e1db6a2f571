//! Constructive reductions: explicit representations for dichotomic graphs in
//! paths, linear neighborhood graphs in transitive paths, transitive paths in
//! interval graphs, boxes as two interval graphs, and `k`-interval graphs in
//! interval graphs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::boolfn::BooleanFunctionTable;
use crate::graph::{equiv_mod_selfloops, Graph};
use crate::schemes::{compress_order_labels, dichotomic_encode, linear_neighborhood_encode, IntervalModel};

use super::{verify_algebraic, verify_subgraph, ReductionError, SubgraphRepresentation};

fn checked(g: &Graph, rep: SubgraphRepresentation) -> Result<SubgraphRepresentation, ReductionError> {
    if !verify_subgraph(g, &rep)? {
        return Err(ReductionError::Invalid("constructed representation fails verification".into()));
    }
    Ok(rep)
}

/// `f(A) = A[i][j]` conjunctions on a `k x k` matrix, 1-based entries.
fn matrix_and(k: usize, entries: &[(usize, usize)]) -> BooleanFunctionTable {
    BooleanFunctionTable::from_fn(k * k, |a| entries.iter().all(|&(i, j)| a[(i - 1) * k + j - 1]))
        .expect("small arity")
}

/// Dichotomic graph into the path on `n³` vertices with `k = 4`:
/// `ℓ(u) = (2u1, 2u1+1, 2u2, 2u2+1)` and `f = a14 ∧ a23`, which holds iff
/// `u1 = v2`.
pub fn dichotomic_to_paths(g: &Graph) -> Result<SubgraphRepresentation, ReductionError> {
    let labels = dichotomic_encode(g)?;
    let n = g.n();
    let f = matrix_and(4, &[(1, 4), (2, 3)]);
    if n == 1 {
        // No pairs to represent; the one-vertex host suffices.
        return checked(g, SubgraphRepresentation::new(Graph::path(1), f, vec![vec![0; 4]])?);
    }
    let ell = labels
        .iter()
        .map(|&[a, b]| {
            let (a, b) = (a as usize, b as usize);
            vec![2 * a, 2 * a + 1, 2 * b, 2 * b + 1]
        })
        .collect();
    checked(g, SubgraphRepresentation::new(Graph::path(n.pow(3)), f, ell)?)
}

/// Linear neighborhood graph into the transitive path on `n²` vertices with
/// `k = 2`: `ℓ(u) = (u1, u2)` from renumbered labels and `f = a12`, which
/// holds iff `u1 < v2`.
pub fn lng_to_tcpaths(g: &Graph) -> Result<SubgraphRepresentation, ReductionError> {
    let labels = compress_order_labels(&linear_neighborhood_encode(g)?);
    let n = g.n();
    let f = matrix_and(2, &[(1, 2)]);
    let ell = labels.iter().map(|&[a, b]| vec![a as usize, b as usize]).collect();
    checked(g, SubgraphRepresentation::new(Graph::transitive_path(n * n), f, ell)?)
}

/// The transitive path `D_n` into an interval graph on `n²` vertices with
/// `k = 2`: `ℓ(u) = ([0, u], [u, u])` and `f = a21 ∧ ¬a12`, which holds iff
/// `u < v`. The host has the `2n - 1` distinct intervals followed by
/// isolated points as padding; every interval meets itself, so the host
/// carries all loops.
pub fn tcpaths_to_interval(g: &Graph) -> Result<(IntervalModel, SubgraphRepresentation), ReductionError> {
    let n = g.n();
    if !g.is_directed() || !equiv_mod_selfloops(g, &Graph::transitive_path(n))? {
        return Err(ReductionError::Invalid("input is not a transitive path".into()));
    }
    let mut intervals: Vec<(i64, i64)> = (0..n as i64).map(|u| (0, u)).collect();
    intervals.extend((1..n as i64).map(|u| (u, u)));
    let pad = n * n - intervals.len();
    intervals.extend((0..pad as i64).map(|i| (n as i64 + 1 + i, n as i64 + 1 + i)));
    let model = IntervalModel::new(intervals)?;
    let host = model.graph().with_all_loops();
    let point = |u: usize| if u == 0 { 0 } else { n - 1 + u };
    let ell = (0..n).map(|u| vec![u, point(u)]).collect();
    let f = BooleanFunctionTable::from_fn(4, |a| a[2] && !a[1]).expect("arity 4");
    let rep = checked(g, SubgraphRepresentation::new(host, f, ell)?)?;
    Ok((model, rep))
}

/// Axis-parallel boxes as the conjunction of their two projection interval
/// graphs. Returns the box intersection graph and the two witnesses.
pub fn rectangles_to_intervals(
    boxes: &[((i64, i64), (i64, i64))],
) -> Result<(Graph, [Graph; 2]), ReductionError> {
    let gx = IntervalModel::new(boxes.iter().map(|b| b.0).collect())?.graph();
    let gy = IntervalModel::new(boxes.iter().map(|b| b.1).collect())?.graph();
    let g = Graph::from_fn(boxes.len(), false, |u, v| gx.has_edge(u, v) && gy.has_edge(u, v));
    if !verify_algebraic(&g, &BooleanFunctionTable::and(), &[gx.clone(), gy.clone()])? {
        return Err(ReductionError::Invalid("projection witnesses fail verification".into()));
    }
    Ok((g, [gx, gy]))
}

/// `k` closed intervals per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KIntervalModel {
    pub k: usize,
    pub intervals: Vec<Vec<(i64, i64)>>,
}

impl KIntervalModel {
    pub fn new(intervals: Vec<Vec<(i64, i64)>>) -> Result<Self, ReductionError> {
        let k = intervals.first().map_or(0, Vec::len);
        if k == 0 {
            return Err(ReductionError::Invalid("k-interval model needs at least one interval per vertex".into()));
        }
        if let Some(v) = intervals.iter().position(|iv| iv.len() != k) {
            return Err(ReductionError::Invalid(format!("vertex {v} does not have {k} intervals")));
        }
        Ok(KIntervalModel { k, intervals })
    }

    /// Vertices are adjacent iff some of their intervals intersect.
    pub fn graph(&self) -> Graph {
        let iv = &self.intervals;
        let meet = |a: (i64, i64), b: (i64, i64)| a.0 <= b.1 && b.0 <= a.1;
        Graph::from_fn(iv.len(), false, |u, v| u != v && iv[u].iter().any(|&a| iv[v].iter().any(|&b| meet(a, b))))
    }
}

/// A `k`-interval graph into the interval graph of all its intervals:
/// vertex `v`'s `i`-th interval is host vertex `vk + i`, and `f` is the
/// disjunction of all `k²` entries.
pub fn k_interval_to_interval(m: &KIntervalModel) -> Result<(Graph, SubgraphRepresentation), ReductionError> {
    let k = m.k;
    let host = IntervalModel::new(m.intervals.iter().flatten().copied().collect())?.graph();
    let f = BooleanFunctionTable::from_fn(k * k, |a| a.iter().any(|&b| b))?;
    let ell = (0..m.intervals.len()).map(|v| (0..k).map(|i| v * k + i).collect()).collect();
    let g = m.graph();
    let rep = checked(&g, SubgraphRepresentation::new(host, f, ell)?)?;
    Ok((g, rep))
}

/// An algebraic witness `g ≡ f(H_1..H_k)` as a diagonal subgraph
/// representation: the host is the disjoint union of the witnesses, vertex
/// `u` maps to its copies, and `f` reads the matrix diagonal.
pub fn algebraic_to_subgraph(
    f: &BooleanFunctionTable,
    witnesses: &[Graph],
) -> Result<SubgraphRepresentation, ReductionError> {
    let first = witnesses.first().ok_or_else(|| ReductionError::Invalid("no witnesses".into()))?;
    let n = first.n();
    let mut host = first.clone();
    for w in &witnesses[1..] {
        host = host.disjoint_union(w)?;
    }
    let lifted = f.diagonal_lift()?;
    let ell = (0..n).map(|u| (0..witnesses.len()).map(|i| i * n + u).collect()).collect();
    SubgraphRepresentation::new(host, lifted, ell)
}

/// The named graph-to-representation constructions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum BuiltinReduction {
    DichotomicToPaths,
    LngToTcPaths,
    TcPathsToInterval,
}

impl BuiltinReduction {
    pub const ALL: [BuiltinReduction; 3] =
        [BuiltinReduction::DichotomicToPaths, BuiltinReduction::LngToTcPaths, BuiltinReduction::TcPathsToInterval];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinReduction::DichotomicToPaths => "dichotomic-paths",
            BuiltinReduction::LngToTcPaths => "lng-tcpaths",
            BuiltinReduction::TcPathsToInterval => "tcpaths-interval",
        }
    }

    /// Exponent `c` in the host size `n^c`.
    pub fn host_exponent(self) -> u32 {
        match self {
            BuiltinReduction::DichotomicToPaths => 3,
            _ => 2,
        }
    }

    pub fn apply(self, g: &Graph) -> Result<SubgraphRepresentation, ReductionError> {
        match self {
            BuiltinReduction::DichotomicToPaths => dichotomic_to_paths(g),
            BuiltinReduction::LngToTcPaths => lng_to_tcpaths(g),
            BuiltinReduction::TcPathsToInterval => tcpaths_to_interval(g).map(|(_, r)| r),
        }
    }

    /// Every builtin with its name.
    pub fn catalogue() -> BTreeMap<&'static str, BuiltinReduction> {
        Self::ALL.iter().map(|&b| (b.name(), b)).collect()
    }
}

impl fmt::Display for BuiltinReduction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinReduction {
    type Err = ReductionError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::catalogue()
            .get(s)
            .copied()
            .ok_or_else(|| ReductionError::Invalid(format!("unknown reduction '{s}'")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{enumerate_graphs, is_dichotomic, is_linear_neighborhood};
    use crate::oracle::{GraphClassOracle, IntervalOracle};
    use crate::reductions::{compose_representations, search_subgraph};
    use crate::search::{Outcome, SearchBudget};

    fn four_boxes() -> Vec<((i64, i64), (i64, i64))> {
        vec![((0, 5), (3, 13)), ((3, 13), (11, 16)), ((11, 16), (3, 13)), ((3, 13), (0, 5))]
    }

    #[test]
    fn four_boxes_give_four_cycle() {
        let (g, [gx, gy]) = rectangles_to_intervals(&four_boxes()).unwrap();
        assert_eq!(g, Graph::cycle(4));
        assert!(IntervalOracle.contains(&gx) && IntervalOracle.contains(&gy));
        assert!(!IntervalOracle.contains(&g));
    }

    #[test]
    fn dichotomic_and_lng_reductions_exhaustive() {
        for n in 1..=4 {
            for g in enumerate_graphs(n, true, false).unwrap() {
                if is_dichotomic(&g) {
                    let rep = dichotomic_to_paths(&g).unwrap();
                    assert!(rep.host_size_ok(n, 3));
                } else {
                    assert!(dichotomic_to_paths(&g).is_err());
                }
                if is_linear_neighborhood(&g) {
                    let rep = lng_to_tcpaths(&g).unwrap();
                    assert!(rep.host_size_ok(n, 2));
                } else {
                    assert!(lng_to_tcpaths(&g).is_err());
                }
            }
        }
    }

    #[test]
    fn transitive_paths_into_intervals() {
        for n in 1..=8 {
            let (model, rep) = tcpaths_to_interval(&Graph::transitive_path(n)).unwrap();
            assert!(rep.host_size_ok(n, 2));
            assert_eq!(model.n(), n * n);
        }
        assert!(tcpaths_to_interval(&Graph::path(3)).is_err());
    }

    #[test]
    fn searched_map_into_interval_host_is_least() {
        let d3 = Graph::transitive_path(3);
        let (_, rep) = tcpaths_to_interval(&d3).unwrap();
        let found = search_subgraph(&d3, &rep.host, &rep.f, SearchBudget::default()).unwrap().found().unwrap();
        // Both maps verify; the search returns the lexicographically least,
        // which sends vertex 1 to ([0,0], [1,1]) rather than ([0,1], [1,1]).
        assert!(verify_subgraph(&d3, &found).unwrap());
        assert_eq!(found.ell, vec![vec![0, 0], vec![0, 3], vec![1, 3]]);
        assert!(found.ell <= rep.ell);
    }

    #[test]
    fn dichotomic_graph_found_in_path_host() {
        // Out-neighbourhoods {1, 2}, {3}, {3}, {} form a dichotomic graph.
        let g = Graph::from_edges(4, true, &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
        assert!(is_dichotomic(&g));
        let f = matrix_and(4, &[(1, 4), (2, 3)]);
        let out = search_subgraph(&g, &Graph::path(64), &f, SearchBudget::default()).unwrap();
        assert!(matches!(out, Outcome::Found(_)));
    }

    #[test]
    fn two_interval_model_and_corruption() {
        // Vertex 0 has [0,1] and [10,11]; vertex 1 meets only the second,
        // vertex 2 only the first, vertex 3 neither.
        let m = KIntervalModel::new(vec![
            vec![(0, 1), (10, 11)],
            vec![(11, 12), (20, 21)],
            vec![(1, 2), (30, 31)],
            vec![(5, 6), (40, 41)],
        ])
        .unwrap();
        let (g, rep) = k_interval_to_interval(&m).unwrap();
        assert_eq!(g, Graph::from_edges(4, false, &[(0, 1), (0, 2)]).unwrap());
        let mut bad = rep.clone();
        bad.ell.swap(1, 3);
        assert!(!verify_subgraph(&g, &bad).unwrap());
        assert!(KIntervalModel::new(vec![vec![(0, 1)], vec![]]).is_err());
    }

    #[test]
    fn algebraic_witnesses_become_diagonal_representations() {
        let and = BooleanFunctionTable::and();
        for n in 1..=4 {
            for g in crate::graph::canonical_graphs(n, false, false).unwrap() {
                let out = crate::reductions::search_algebraic(&g, &and, &IntervalOracle, SearchBudget::default());
                if let Outcome::Found(ws) = out.unwrap() {
                    let rep = algebraic_to_subgraph(&and, &ws).unwrap();
                    assert!(rep.f.is_diagonal().unwrap());
                    assert!(verify_subgraph(&g, &rep).unwrap(), "{g:?}");
                }
            }
        }
    }

    #[test]
    fn composed_representations_verify() {
        // LNG graph into D_{n²}, then D_{n²} into an interval host.
        for n in 2..=3 {
            for g in enumerate_graphs(n, true, false).unwrap().filter(is_linear_neighborhood) {
                let first = lng_to_tcpaths(&g).unwrap();
                let (_, second) = tcpaths_to_interval(&first.host).unwrap();
                let composed = compose_representations(&first, &second).unwrap();
                assert_eq!(composed.k, 4);
                assert!(verify_subgraph(&g, &composed).unwrap(), "{g:?}");
            }
        }
    }

    #[test]
    fn catalogue_names_round_trip() {
        for b in BuiltinReduction::ALL {
            assert_eq!(b.name().parse::<BuiltinReduction>().unwrap(), b);
        }
        assert!("nope".parse::<BuiltinReduction>().is_err());
    }
}
