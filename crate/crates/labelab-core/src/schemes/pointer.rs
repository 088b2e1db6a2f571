//! Pointer labelings: every vertex has an id in `[n]` and `k` slots of ids;
//! distinct `u`, `v` are adjacent iff `id(u) ∈ ℓ(v)` or/and `id(v) ∈ ℓ(u)`.

use std::collections::VecDeque;
use std::fmt;

use crate::graph::{degeneracy, twin_classes, Graph};

use super::SchemeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PointerMode {
    Or,
    And,
}

impl fmt::Display for PointerMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PointerMode::Or => "or",
            PointerMode::And => "and",
        })
    }
}

/// Ids and slots are 1-based, within `[n]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointerLabeling {
    pub ids: Vec<usize>,
    pub slots: Vec<Vec<usize>>,
    pub mode: PointerMode,
}

impl PointerLabeling {
    pub fn new(ids: Vec<usize>, slots: Vec<Vec<usize>>, mode: PointerMode) -> Result<Self, SchemeError> {
        let n = ids.len();
        if n == 0 || slots.len() != n {
            return Err(SchemeError::Pointer(format!("{} ids but {} slot lists", n, slots.len())));
        }
        let k = slots[0].len();
        for (v, s) in slots.iter().enumerate() {
            if s.len() != k {
                return Err(SchemeError::Pointer(format!("vertex {v} has {} slots, expected {k}", s.len())));
            }
        }
        if let Some(&bad) = ids.iter().chain(slots.iter().flatten()).find(|&&i| i == 0 || i > n) {
            return Err(SchemeError::Pointer(format!("id {bad} outside [1, {n}]")));
        }
        Ok(PointerLabeling { ids, slots, mode })
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    /// Number of slots per vertex.
    pub fn k(&self) -> usize {
        self.slots[0].len()
    }

    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.n() + 1];
        self.ids.iter().all(|&i| !std::mem::replace(&mut seen[i], true))
    }

    /// Adjacency of distinct vertices `u`, `v`.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        let a = self.slots[v].contains(&self.ids[u]);
        let b = self.slots[u].contains(&self.ids[v]);
        match self.mode {
            PointerMode::Or => a || b,
            PointerMode::And => a && b,
        }
    }

    /// The loop-free undirected graph described by the labeling.
    pub fn decode(&self) -> Graph {
        Graph::from_fn(self.n(), false, |u, v| u != v && self.adjacent(u, v))
    }

    /// Whether the labeling describes `g` on all pairs of distinct vertices.
    pub fn verify(&self, g: &Graph) -> bool {
        let n = self.n();
        g.n() == n && (0..n).all(|u| (0..n).all(|v| u == v || self.adjacent(u, v) == g.has_edge(u, v)))
    }
}

/// Fill a slot list to length `k` by repeating its first entry, or with `pad`
/// when it is empty.
fn pad_slots(mut s: Vec<usize>, k: usize, pad: usize) -> Vec<usize> {
    let fill = s.first().copied().unwrap_or(pad);
    s.resize(k.max(s.len()), fill);
    s
}

/// Bijective or-pointer labeling with `c` slots from a degeneracy order:
/// each vertex points to its neighbours that are removed after it. Unused
/// slots hold the vertex's own id, which only affects the excluded self-pair.
pub fn or_pointer_encode(g: &Graph, c: usize) -> Result<PointerLabeling, SchemeError> {
    let (d, order) = degeneracy(g)?;
    if d > c {
        return Err(SchemeError::Degeneracy { degeneracy: d, c });
    }
    let n = g.n();
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let ids: Vec<usize> = (1..=n).collect();
    let slots = (0..n)
        .map(|v| {
            let mut later: Vec<usize> = (0..n).filter(|&u| u != v && g.has_edge(v, u) && pos[u] > pos[v]).map(|u| u + 1).collect();
            later.resize(c, v + 1);
            later
        })
        .collect();
    PointerLabeling::new(ids, slots, PointerMode::Or)
}

/// And-pointer labeling of a forest with two slots. Each vertex with children
/// receives a fresh "children id"; children take it as their id and every
/// vertex lists its parent's id and its own children id. Roots are the least
/// vertex of each component and get fresh ids.
pub fn and_pointer_forest_encode(g: &Graph) -> Result<PointerLabeling, SchemeError> {
    if !g.is_forest() {
        return Err(SchemeError::NotForest);
    }
    let n = g.n();
    let mut ids = vec![0usize; n];
    let mut lists: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut seen = vec![false; n];
    let mut fresh = 0;
    for comp in g.components() {
        let root = comp[0];
        fresh += 1;
        ids[root] = fresh;
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let children: Vec<usize> = g.neighbors(v).into_iter().filter(|&u| !seen[u]).collect();
            if let Some(p) = parent[v] {
                lists[v].push(ids[p]);
            }
            if !children.is_empty() {
                fresh += 1;
                lists[v].push(fresh);
                for &u in &children {
                    seen[u] = true;
                    parent[u] = Some(v);
                    ids[u] = fresh;
                    queue.push_back(u);
                }
            }
        }
    }
    let slots = lists.into_iter().zip(&ids).map(|(s, &id)| pad_slots(s, 2, id)).collect();
    PointerLabeling::new(ids, slots, PointerMode::And)
}

/// Twin-class labeling with `k` slots: the id is the twin-class index and the
/// slots list the adjacent classes, including the own class when it is a clique.
/// The result is valid under both modes.
pub fn twin_encode(g: &Graph, k: usize, mode: PointerMode) -> Result<PointerLabeling, SchemeError> {
    let classes = twin_classes(g)?;
    if classes.len() > k {
        return Err(SchemeError::TwinIndex { index: classes.len(), k });
    }
    let n = g.n();
    let mut class_of = vec![0; n];
    for (i, c) in classes.iter().enumerate() {
        for &v in c {
            class_of[v] = i;
        }
    }
    let clique = |c: &[usize]| c.iter().all(|&u| c.iter().all(|&v| u == v || g.has_edge(u, v)));
    // An id no vertex carries; only needed when some class has two members.
    let spare = (classes.len() < n).then_some(classes.len() + 1);
    let mut ids = Vec::with_capacity(n);
    let mut slots = Vec::with_capacity(n);
    for v in 0..n {
        let own = class_of[v];
        let adj: Vec<usize> = classes
            .iter()
            .enumerate()
            .filter(|&(j, c)| if j == own { clique(c) } else { g.has_edge(v, c[0]) })
            .map(|(j, _)| j + 1)
            .collect();
        ids.push(own + 1);
        slots.push(pad_slots(adj, k, spare.unwrap_or(own + 1)));
    }
    PointerLabeling::new(ids, slots, mode)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::enumerate_graphs;

    fn seven_vertex_tree() -> Graph {
        // Root 0 with children 1 (leaf), 2 (two children) and 3 (one child).
        Graph::from_edges(7, false, &[(0, 1), (0, 2), (0, 3), (2, 4), (2, 5), (3, 6)]).unwrap()
    }

    #[test]
    fn seven_vertex_tree_forest_labels() {
        let l = and_pointer_forest_encode(&seven_vertex_tree()).unwrap();
        assert_eq!(l.ids, vec![1, 2, 2, 2, 3, 3, 4]);
        assert_eq!(l.slots, vec![vec![2, 2], vec![1, 1], vec![1, 3], vec![1, 4], vec![2, 2], vec![2, 2], vec![2, 2]]);
        assert!(l.verify(&seven_vertex_tree()));
        assert!(!l.is_bijective());
    }

    #[test]
    fn single_edge_and_two_trees() {
        let l = and_pointer_forest_encode(&Graph::path(2)).unwrap();
        assert_eq!((l.ids.clone(), l.slots.clone()), (vec![1, 2], vec![vec![2, 2], vec![1, 1]]));
        let g = Graph::path(2).disjoint_union(&Graph::path(3)).unwrap();
        let l = and_pointer_forest_encode(&g).unwrap();
        assert!(l.verify(&g));
        assert!(and_pointer_forest_encode(&Graph::cycle(3)).is_err());
    }

    #[test]
    fn forests_round_trip_exhaustively() {
        for n in 1..=6 {
            for g in enumerate_graphs(n, false, false).unwrap().filter(Graph::is_forest) {
                let l = and_pointer_forest_encode(&g).unwrap();
                assert!(l.verify(&g), "{g:?}");
                let distinct: std::collections::BTreeSet<_> = l.ids.iter().chain(l.slots.iter().flatten()).collect();
                assert!(distinct.len() <= n + 1);
                assert!(or_pointer_encode(&g, 1).unwrap().verify(&g));
            }
        }
    }

    #[test]
    fn or_pointer_round_trip_and_edge_bound() {
        for n in 1..=5 {
            for g in enumerate_graphs(n, false, false).unwrap() {
                let (d, _) = degeneracy(&g).unwrap();
                let l = or_pointer_encode(&g, d).unwrap();
                assert!(l.verify(&g) && l.is_bijective());
                assert!(g.proper_edge_count() <= d * n);
                if d > 0 {
                    assert!(or_pointer_encode(&g, d - 1).is_err());
                }
            }
        }
        assert!(or_pointer_encode(&Graph::cycle(5), 2).unwrap().verify(&Graph::cycle(5)));
    }

    #[test]
    fn complete_graph_with_one_shared_id() {
        let n = 5;
        let l = PointerLabeling::new(vec![1; n], vec![vec![1]; n], PointerMode::Or).unwrap();
        assert!(l.verify(&Graph::complete(n, false)));
    }

    #[test]
    fn twin_examples() {
        let g = Graph::complete_bipartite(2, 3);
        for mode in [PointerMode::Or, PointerMode::And] {
            let l = twin_encode(&g, 2, mode).unwrap();
            assert_eq!(l.ids, vec![1, 1, 2, 2, 2]);
            assert_eq!(l.slots, vec![vec![2, 2], vec![2, 2], vec![1, 1], vec![1, 1], vec![1, 1]]);
            assert!(l.verify(&g));
        }
        let k3 = Graph::complete(3, false);
        assert_eq!(twin_encode(&k3, 1, PointerMode::And).unwrap().slots, vec![vec![1]; 3]);
        let p4 = twin_encode(&Graph::path(4), 4, PointerMode::Or).unwrap();
        assert_eq!(p4.ids, vec![1, 2, 3, 4]);
        assert!(p4.verify(&Graph::path(4)));
        assert!(twin_encode(&Graph::path(4), 3, PointerMode::Or).is_err());
    }

    #[test]
    fn twin_round_trip_exhaustive() {
        for n in 1..=5 {
            for g in enumerate_graphs(n, false, false).unwrap() {
                let k = twin_classes(&g).unwrap().len();
                for mode in [PointerMode::Or, PointerMode::And] {
                    assert!(twin_encode(&g, k, mode).unwrap().verify(&g), "{g:?}");
                }
            }
        }
    }
}
