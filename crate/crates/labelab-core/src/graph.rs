//! Finite graphs with explicit self-loop tracking.
//!
//! A [`Graph`] is a directed adjacency relation on `[n-1]_0`; undirected graphs
//! are stored as symmetric instances. Self-loops are first-class: every
//! operation that compares graphs states whether loop positions count.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::boolfn::BooleanFunctionTable;

/// Default vertex bound for [`canonical_min`].
pub const CANONICAL_BOUND: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graphs need at least one vertex")]
    Empty,
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex count mismatch: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("directedness mismatch")]
    DirectednessMismatch,
    #[error("boolean function has arity {arity} but {given} graphs were supplied")]
    ArityMismatch { arity: usize, given: usize },
    #[error("operation requires an undirected graph")]
    NotUndirected,
    #[error("operation requires a loop-free graph")]
    HasLoops,
    #[error("vertex subset repeats vertex {0}")]
    RepeatedVertex(usize),
    #[error("graph on {n} vertices exceeds the size bound {bound}")]
    SizeLimit { n: usize, bound: usize },
}

/// A directed adjacency relation on `n >= 1` vertices, including loop positions.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    directed: bool,
    adj: Vec<bool>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn new(n: usize, directed: bool) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Graph { n, directed, adj: vec![false; n * n] })
    }

    pub fn edgeless(n: usize, directed: bool) -> Self {
        Self::new(n, directed).expect("n >= 1")
    }

    /// Build from an edge list; undirected edges are listed once.
    pub fn from_edges(n: usize, directed: bool, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::new(n, directed)?;
        for &(u, v) in edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            g.set_edge(u, v, true);
        }
        Ok(g)
    }

    /// Build from a predicate over ordered pairs. For undirected graphs the
    /// predicate must be symmetric; the pair `(min, max)` decides.
    pub fn from_fn(n: usize, directed: bool, mut f: impl FnMut(usize, usize) -> bool) -> Self {
        let mut g = Self::edgeless(n, directed);
        for u in 0..n {
            for v in 0..n {
                if directed || u <= v {
                    if f(u, v) {
                        g.set_edge(u, v, true);
                    }
                }
            }
        }
        g
    }

    pub fn complete(n: usize, loops: bool) -> Self {
        Self::from_fn(n, false, |u, v| loops || u != v)
    }

    pub fn path(n: usize) -> Self {
        Self::from_fn(n, false, |u, v| u + 1 == v || v + 1 == u)
    }

    pub fn cycle(n: usize) -> Self {
        Self::from_fn(n, false, |u, v| u != v && ((u + 1) % n == v || (v + 1) % n == u))
    }

    /// Transitive closure of the directed path `0 -> 1 -> ... -> n-1`.
    pub fn transitive_path(n: usize) -> Self {
        Self::from_fn(n, true, |u, v| u < v)
    }

    /// Complete bipartite graph with parts `0..a` and `a..a+b`.
    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        Self::from_fn(a + b, false, |u, v| (u < a) != (v < a))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    fn check_vertex(&self, v: usize) -> Result<(), GraphError> {
        if v < self.n {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange { vertex: v, n: self.n })
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u * self.n + v]
    }

    /// Set or clear `(u,v)`; undirected graphs update `(v,u)` as well.
    pub fn set_edge(&mut self, u: usize, v: usize, present: bool) {
        self.adj[u * self.n + v] = present;
        if !self.directed {
            self.adj[v * self.n + u] = present;
        }
    }

    pub fn has_loop(&self, v: usize) -> bool {
        self.has_edge(v, v)
    }

    pub fn has_loops(&self) -> bool {
        (0..self.n).any(|v| self.has_loop(v))
    }

    /// Copy with every loop position cleared.
    pub fn without_loops(&self) -> Self {
        let mut g = self.clone();
        for v in 0..self.n {
            g.set_edge(v, v, false);
        }
        g
    }

    /// Copy with every loop position set.
    pub fn with_all_loops(&self) -> Self {
        let mut g = self.clone();
        for v in 0..self.n {
            g.set_edge(v, v, true);
        }
        g
    }

    /// Reinterpret as a directed graph (same relation).
    pub fn as_directed(&self) -> Self {
        Graph { n: self.n, directed: true, adj: self.adj.clone() }
    }

    /// Whether the relation is symmetric.
    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|u| (0..u).all(|v| self.has_edge(u, v) == self.has_edge(v, u)))
    }

    /// Reinterpret a symmetric relation as an undirected graph.
    pub fn to_undirected(&self) -> Result<Self, GraphError> {
        if !self.is_symmetric() {
            return Err(GraphError::NotUndirected);
        }
        Ok(Graph { n: self.n, directed: false, adj: self.adj.clone() })
    }

    /// Ordered pairs in the relation, row-major.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    /// Edges as they would be written to a file: undirected edges once (`u <= v`).
    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        self.edges().into_iter().filter(|&(u, v)| self.directed || u <= v).collect()
    }

    /// Number of proper (non-loop) edges; undirected edges count once.
    pub fn proper_edge_count(&self) -> usize {
        self.edge_list().iter().filter(|(u, v)| u != v).count()
    }

    pub fn out_neighbors(&self, u: usize) -> Vec<usize> {
        (0..self.n).filter(|&v| self.has_edge(u, v)).collect()
    }

    pub fn in_neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| self.has_edge(u, v)).collect()
    }

    /// Neighbours excluding `v` itself.
    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n).filter(|&u| u != v && self.has_edge(v, u)).collect()
    }

    /// Degree ignoring loops (undirected reading of the out-relation).
    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&u| u != v && self.has_edge(v, u)).count()
    }

    /// The row-major adjacency bit string (`n*n` bits).
    pub fn bit_string(&self) -> Vec<bool> {
        self.adj.clone()
    }

    /// Row-major bit string packed MSB-first into a `u128` (requires `n*n <= 128`).
    pub fn bit_key(&self) -> u128 {
        debug_assert!(self.n * self.n <= 128);
        self.adj.iter().fold(0u128, |acc, &b| (acc << 1) | b as u128)
    }

    /// `self` relabelled so that new vertex `i` is old vertex `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        Self::from_fn(self.n, self.directed, |i, j| self.has_edge(perm[i], perm[j]))
    }

    /// Connectivity of the underlying undirected graph.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(u) = stack.pop() {
            for v in 0..self.n {
                if !seen[v] && (self.has_edge(u, v) || self.has_edge(v, u)) {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Acyclic and loop-free undirected graph.
    pub fn is_forest(&self) -> bool {
        if self.directed || self.has_loops() {
            return false;
        }
        let mut parent: Vec<usize> = (0..self.n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            let mut r = x;
            while p[r] != r {
                r = p[r];
            }
            let mut c = x;
            while p[c] != r {
                let next = p[c];
                p[c] = r;
                c = next;
            }
            r
        }
        for (u, v) in self.edge_list() {
            let (a, b) = (find(&mut parent, u), find(&mut parent, v));
            if a == b {
                return false;
            }
            parent[a] = b;
        }
        true
    }

    /// Vertex sets of the connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut members = vec![s];
            comp[s] = id;
            let mut i = 0;
            while i < members.len() {
                let u = members[i];
                i += 1;
                for v in 0..self.n {
                    if comp[v] == usize::MAX && (self.has_edge(u, v) || self.has_edge(v, u)) {
                        comp[v] = id;
                        members.push(v);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        if self.directed != other.directed {
            return Err(GraphError::DirectednessMismatch);
        }
        let n = self.n + other.n;
        Ok(Graph::from_fn(n, self.directed, |u, v| {
            if u < self.n && v < self.n {
                self.has_edge(u, v)
            } else if u >= self.n && v >= self.n {
                other.has_edge(u - self.n, v - self.n)
            } else {
                false
            }
        }))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph({}, n={}, {:?})",
            if self.directed { "directed" } else { "undirected" },
            self.n,
            self.edge_list()
        )
    }
}

// ---------------------------------------------------------------------------
// Boolean algebra on graphs
// ---------------------------------------------------------------------------

/// Apply `f` pointwise: `(u,v)` is an edge iff `f(x_1..x_k)` with
/// `x_i = [(u,v) in E(H_i)]`, for every ordered pair including `u = v`.
pub fn apply_boolean(f: &BooleanFunctionTable, graphs: &[&Graph]) -> Result<Graph, GraphError> {
    if f.arity() != graphs.len() {
        return Err(GraphError::ArityMismatch { arity: f.arity(), given: graphs.len() });
    }
    let Some(first) = graphs.first() else {
        // Nullary function: there is no vertex count to inherit.
        return Err(GraphError::ArityMismatch { arity: 0, given: 0 });
    };
    for g in graphs {
        if g.n != first.n {
            return Err(GraphError::SizeMismatch(first.n, g.n));
        }
        if g.directed != first.directed {
            return Err(GraphError::DirectednessMismatch);
        }
    }
    let mut args = vec![false; graphs.len()];
    Ok(Graph::from_fn(first.n, first.directed, |u, v| {
        for (a, g) in args.iter_mut().zip(graphs) {
            *a = g.has_edge(u, v);
        }
        f.eval(&args)
    }))
}

/// `f` applied to graphs with a given vertex count; nullary functions yield
/// the constant graph on `n` vertices.
pub fn apply_boolean_n(f: &BooleanFunctionTable, n: usize, directed: bool, graphs: &[&Graph]) -> Result<Graph, GraphError> {
    if graphs.is_empty() && f.arity() == 0 {
        let value = f.eval(&[]);
        return Ok(Graph::from_fn(n, directed, |_, _| value));
    }
    apply_boolean(f, graphs)
}

/// Edge-complement, loop positions included.
pub fn edge_complement(g: &Graph) -> Graph {
    apply_boolean(&BooleanFunctionTable::not(), &[g]).expect("unary")
}

/// Equality of the edge relations on all pairs `u != v`.
pub fn equiv_mod_selfloops(g: &Graph, h: &Graph) -> Result<bool, GraphError> {
    if g.n != h.n {
        return Err(GraphError::SizeMismatch(g.n, h.n));
    }
    if g.directed != h.directed {
        return Err(GraphError::DirectednessMismatch);
    }
    Ok((0..g.n).all(|u| (0..g.n).all(|v| u == v || g.has_edge(u, v) == h.has_edge(u, v))))
}

/// Subgraph induced by `vs`, reindexed in the given order.
pub fn induced_subgraph(g: &Graph, vs: &[usize]) -> Result<Graph, GraphError> {
    if vs.is_empty() {
        return Err(GraphError::Empty);
    }
    let mut seen = vec![false; g.n];
    for &v in vs {
        g.check_vertex(v)?;
        if seen[v] {
            return Err(GraphError::RepeatedVertex(v));
        }
        seen[v] = true;
    }
    Ok(Graph::from_fn(vs.len(), g.directed, |i, j| g.has_edge(vs[i], vs[j])))
}

// ---------------------------------------------------------------------------
// Parameters
// ---------------------------------------------------------------------------

fn require_simple_undirected(g: &Graph) -> Result<(), GraphError> {
    if g.directed {
        return Err(GraphError::NotUndirected);
    }
    if g.has_loops() {
        return Err(GraphError::HasLoops);
    }
    Ok(())
}

/// Degeneracy and the elimination order realising it (repeated removal of a
/// minimum-degree vertex, ties broken by smallest index).
pub fn degeneracy(g: &Graph) -> Result<(usize, Vec<usize>), GraphError> {
    require_simple_undirected(g)?;
    let n = g.n;
    let mut alive = vec![true; n];
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut order = Vec::with_capacity(n);
    let mut k = 0;
    for _ in 0..n {
        let v = (0..n).filter(|&v| alive[v]).min_by_key(|&v| (deg[v], v)).expect("vertex left");
        k = k.max(deg[v]);
        alive[v] = false;
        order.push(v);
        for u in 0..n {
            if alive[u] && u != v && g.has_edge(u, v) {
                deg[u] -= 1;
            }
        }
    }
    Ok((k, order))
}

pub fn max_degree(g: &Graph) -> Result<usize, GraphError> {
    require_simple_undirected(g)?;
    Ok((0..g.n).map(|v| g.degree(v)).max().unwrap_or(0))
}

/// Whether `u` and `v` are twins: `N(u) \ {v} = N(v) \ {u}`.
pub fn are_twins(g: &Graph, u: usize, v: usize) -> bool {
    (0..g.n).filter(|&w| w != u && w != v).all(|w| g.has_edge(u, w) == g.has_edge(v, w))
}

/// Partition into twin classes, each sorted, ordered by least vertex.
pub fn twin_classes(g: &Graph) -> Result<Vec<Vec<usize>>, GraphError> {
    require_simple_undirected(g)?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for v in 0..g.n {
        match classes.iter_mut().find(|c| are_twins(g, c[0], v)) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    Ok(classes)
}

// ---------------------------------------------------------------------------
// Enumeration and canonical forms
// ---------------------------------------------------------------------------

/// Positions of the adjacency matrix that vary during enumeration, row-major.
fn free_positions(n: usize, directed: bool, loops: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in 0..n {
            let keep = if u == v { loops } else { directed || u < v };
            if keep {
                out.push((u, v));
            }
        }
    }
    out
}

/// Stream of all labelled graphs on `n` vertices in lexicographic order of
/// the row-major adjacency bit string.
pub struct GraphEnumerator {
    n: usize,
    directed: bool,
    positions: Vec<(usize, usize)>,
    next: u128,
    end: u128,
}

impl Iterator for GraphEnumerator {
    type Item = Graph;

    fn next(&mut self) -> Option<Graph> {
        if self.next >= self.end {
            return None;
        }
        let m = self.positions.len();
        let mut g = Graph::edgeless(self.n, self.directed);
        for (i, &(u, v)) in self.positions.iter().enumerate() {
            if (self.next >> (m - 1 - i)) & 1 == 1 {
                g.set_edge(u, v, true);
            }
        }
        self.next += 1;
        Some(g)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.next).min(usize::MAX as u128) as usize;
        (left, Some(left))
    }
}

/// All labelled graphs on `n` vertices; fails when there are `>= 2^127` of them.
pub fn enumerate_graphs(n: usize, directed: bool, loops: bool) -> Result<GraphEnumerator, GraphError> {
    if n == 0 {
        return Err(GraphError::Empty);
    }
    let positions = free_positions(n, directed, loops);
    if positions.len() > 126 {
        return Err(GraphError::SizeLimit { n, bound: 11 });
    }
    Ok(GraphEnumerator { n, directed, end: 1u128 << positions.len(), positions, next: 0 })
}

/// Lexicographically least labelled graph isomorphic to `g`, for `n <= bound`.
pub fn canonical_min_bounded(g: &Graph, bound: usize) -> Result<Graph, GraphError> {
    if g.n > bound || g.n > 11 {
        return Err(GraphError::SizeLimit { n: g.n, bound });
    }
    let n = g.n;
    // Depth-first over permutations; a prefix is abandoned once the rows it
    // fixes can no longer beat the best string found so far.
    let mut best: Option<u128> = None;
    let mut perm = Vec::with_capacity(n);
    let mut used = vec![false; n];
    fn rec(g: &Graph, perm: &mut Vec<usize>, used: &mut [bool], best: &mut Option<u128>) {
        let n = g.n;
        if perm.len() == n {
            let key = g.permuted(perm).bit_key();
            if best.map_or(true, |b| key < b) {
                *best = Some(key);
            }
            return;
        }
        for v in 0..n {
            if used[v] {
                continue;
            }
            perm.push(v);
            used[v] = true;
            if !prefix_hopeless(g, perm, *best) {
                rec(g, perm, used, best);
            }
            used[v] = false;
            perm.pop();
        }
    }
    rec(g, &mut perm, &mut used, &mut best);
    let key = best.expect("n >= 1");
    let m = n * n;
    let mut out = Graph::edgeless(n, g.directed);
    for i in 0..n {
        for j in 0..n {
            out.adj[i * n + j] = (key >> (m - 1 - (i * n + j))) & 1 == 1;
        }
    }
    Ok(out)
}

/// With `t` vertices placed, the first rows are only partially known, but the
/// entries `(i, j)` with `i, j < t` are; for row 0 the known prefix is
/// `(0, 0..t)`. Compare the known leading block of row 0 against `best`.
fn prefix_hopeless(g: &Graph, perm: &[usize], best: Option<u128>) -> bool {
    let Some(best) = best else { return false };
    let n = g.n;
    let t = perm.len();
    let m = n * n;
    // Bits (0, 0..t) are the first t bits of the string.
    let mut prefix = 0u128;
    for j in 0..t {
        prefix = (prefix << 1) | g.has_edge(perm[0], perm[j]) as u128;
    }
    let best_prefix = best >> (m - t);
    prefix > best_prefix
}

/// [`canonical_min_bounded`] with the default bound.
pub fn canonical_min(g: &Graph) -> Result<Graph, GraphError> {
    canonical_min_bounded(g, CANONICAL_BOUND)
}

/// Whether `g` is its own canonical form.
pub fn is_canonical(g: &Graph) -> Result<bool, GraphError> {
    Ok(canonical_min(g)? == *g)
}

/// Canonical representatives of all graphs on `n` vertices (one per
/// isomorphism class), in lexicographic order.
pub fn canonical_graphs(n: usize, directed: bool, loops: bool) -> Result<Vec<Graph>, GraphError> {
    let mut seen = BTreeMap::new();
    for g in enumerate_graphs(n, directed, loops)? {
        let c = canonical_min(&g)?;
        seen.entry(c.bit_key()).or_insert(c);
    }
    Ok(seen.into_values().collect())
}

// ---------------------------------------------------------------------------
// Neighbourhood structure predicates
// ---------------------------------------------------------------------------

fn neighborhood_sets(g: &Graph) -> (Vec<Vec<bool>>, Vec<Vec<bool>>) {
    let n = g.n;
    let out = (0..n).map(|u| (0..n).map(|v| g.has_edge(u, v)).collect()).collect();
    let inn = (0..n).map(|v| (0..n).map(|u| g.has_edge(u, v)).collect()).collect();
    (out, inn)
}

fn disjoint(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(x, y)| !(x & y))
}

fn subset(a: &[bool], b: &[bool]) -> bool {
    a.iter().zip(b).all(|(x, y)| !x | y)
}

/// All same-direction neighbourhoods are pairwise equal or disjoint.
pub fn is_dichotomic(g: &Graph) -> bool {
    let (out, inn) = neighborhood_sets(g);
    [out, inn].iter().all(|sets| {
        sets.iter().enumerate().all(|(i, a)| {
            sets[i + 1..].iter().all(|b| a == b || disjoint(a, b))
        })
    })
}

/// All same-direction neighbourhoods are pairwise nested.
pub fn is_linear_neighborhood(g: &Graph) -> bool {
    let (out, inn) = neighborhood_sets(g);
    [out, inn].iter().all(|sets| {
        sets.iter().enumerate().all(|(i, a)| {
            sets[i + 1..].iter().all(|b| subset(a, b) || subset(b, a))
        })
    })
}

/// Whether `g` contains an induced path on four vertices (loops ignored).
pub fn has_induced_p4(g: &Graph) -> bool {
    let n = g.n;
    let e = |a: usize, b: usize| g.has_edge(a, b);
    for a in 0..n {
        for b in 0..n {
            if b == a || !e(a, b) {
                continue;
            }
            for c in 0..n {
                if c == a || c == b || !e(b, c) || e(a, c) {
                    continue;
                }
                for d in 0..n {
                    if d == a || d == b || d == c {
                        continue;
                    }
                    if e(c, d) && !e(a, d) && !e(b, d) {
                        return true;
                    }
                }
            }
        }
    }
    false
}

/// Cographs are exactly the undirected graphs without an induced `P_4`.
pub fn is_cograph(g: &Graph) -> bool {
    !g.directed && !has_induced_p4(g)
}
