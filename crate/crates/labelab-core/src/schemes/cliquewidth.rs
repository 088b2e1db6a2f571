//! Block labels from balanced module trees.
//!
//! A node splits its vertex set `V` into a left part `L` with
//! `|V|/3 ≤ |L| ≤ 2|V|/3` and a right part `R`, where `L` is partitioned into
//! at most `k` modules with respect to `R`. A vertex's label has one block
//! per node on its root-to-leaf path: the side bit, then either the one-hot
//! index of its module (left) or the set of modules it is adjacent to (right).

use std::collections::BTreeMap;

use crate::decoders::{ceil_log2, cliquewidth_block_decoder, encode_symbols, BitLabel, BlockSymbol, LabelingScheme};
use crate::graph::{induced_subgraph, Graph};

use super::SchemeError;

/// Largest vertex count [`find_balanced_kmodule`] accepts.
pub const MODULE_SEARCH_BOUND: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleTree {
    Leaf(usize),
    Node {
        /// Modules partitioning the left child's vertices.
        parts: Vec<Vec<usize>>,
        /// For each right-side vertex, the 1-based indices of adjacent modules.
        attach: BTreeMap<usize, Vec<usize>>,
        left: Box<ModuleTree>,
        right: Box<ModuleTree>,
    },
}

impl ModuleTree {
    /// Vertices below this node, sorted.
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out.sort_unstable();
        out
    }

    fn collect(&self, out: &mut Vec<usize>) {
        match self {
            ModuleTree::Leaf(v) => out.push(*v),
            ModuleTree::Node { left, right, .. } => {
                left.collect(out);
                right.collect(out);
            }
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            ModuleTree::Leaf(_) => 0,
            ModuleTree::Node { left, right, .. } => 1 + left.depth().max(right.depth()),
        }
    }

    /// Check balance, module and attachment conditions against `g`.
    pub fn validate(&self, g: &Graph, k: usize) -> Result<(), SchemeError> {
        if g.is_directed() {
            return Err(SchemeError::InvalidTree("block labels need an undirected graph".into()));
        }
        let all = self.vertices();
        if all != (0..g.n()).collect::<Vec<_>>() {
            return Err(SchemeError::InvalidTree("leaves must be exactly the vertices, once each".into()));
        }
        self.validate_node(g, k)
    }

    fn validate_node(&self, g: &Graph, k: usize) -> Result<(), SchemeError> {
        let ModuleTree::Node { parts, attach, left, right } = self else { return Ok(()) };
        let (lv, rv) = (left.vertices(), right.vertices());
        let total = lv.len() + rv.len();
        if 3 * lv.len() < total || 3 * lv.len() > 2 * total {
            return Err(SchemeError::InvalidTree(format!("left side {} of {} vertices is unbalanced", lv.len(), total)));
        }
        if parts.is_empty() || parts.len() > k || parts.iter().any(Vec::is_empty) {
            return Err(SchemeError::InvalidTree(format!("need 1 to {k} non-empty modules, got {}", parts.len())));
        }
        let mut flat: Vec<usize> = parts.iter().flatten().copied().collect();
        flat.sort_unstable();
        if flat != lv {
            return Err(SchemeError::InvalidTree("modules do not partition the left side".into()));
        }
        if attach.keys().copied().collect::<Vec<_>>() != rv {
            return Err(SchemeError::InvalidTree("attachment sets must cover exactly the right side".into()));
        }
        for &r in &rv {
            let mut expected = Vec::new();
            for (i, part) in parts.iter().enumerate() {
                let adj = g.has_edge(r, part[0]);
                if part.iter().any(|&u| g.has_edge(r, u) != adj) {
                    return Err(SchemeError::InvalidTree(format!("module {} is split by vertex {r}", i + 1)));
                }
                if adj {
                    expected.push(i + 1);
                }
            }
            if attach[&r] != expected {
                return Err(SchemeError::InvalidTree(format!("wrong attachment set for vertex {r}")));
            }
        }
        left.validate_node(g, k)?;
        right.validate_node(g, k)
    }
}

/// All balanced `k`-module splits of `g`, in lexicographic order of the
/// left side; modules are ordered by least vertex.
fn balanced_kmodules(g: &Graph, k: usize) -> Result<Vec<Vec<Vec<usize>>>, SchemeError> {
    let n = g.n();
    if n > MODULE_SEARCH_BOUND {
        return Err(SchemeError::SizeLimit { n, bound: MODULE_SEARCH_BOUND });
    }
    let (lo, hi) = (n.div_ceil(3), 2 * n / 3);
    let mut found: Vec<(Vec<usize>, Vec<Vec<usize>>)> = Vec::new();
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size < lo || size > hi || size == n {
            continue;
        }
        let inside: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        // Members of one module share their neighbourhood outside the set.
        let mut groups: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
        for &v in &inside {
            let outside = (0..n).filter(|&u| mask >> u & 1 == 0 && g.has_edge(v, u)).fold(0u32, |m, u| m | 1 << u);
            groups.entry(outside).or_default().push(v);
        }
        if groups.len() <= k {
            let mut parts: Vec<Vec<usize>> = groups.into_values().collect();
            parts.sort();
            found.push((inside, parts));
        }
    }
    found.sort();
    Ok(found.into_iter().map(|(_, parts)| parts).collect())
}

/// The lexicographically least balanced `k`-module of `g`, as its modules.
pub fn find_balanced_kmodule(g: &Graph, k: usize) -> Result<Option<Vec<Vec<usize>>>, SchemeError> {
    Ok(balanced_kmodules(g, k)?.into_iter().next())
}

/// A balanced `k`-module tree for `g`, trying splits in lexicographic order.
pub fn build_module_tree(g: &Graph, k: usize) -> Result<Option<ModuleTree>, SchemeError> {
    if g.n() > MODULE_SEARCH_BOUND {
        return Err(SchemeError::SizeLimit { n: g.n(), bound: MODULE_SEARCH_BOUND });
    }
    let all: Vec<usize> = (0..g.n()).collect();
    build_on(g, &all, k)
}

fn build_on(g: &Graph, vs: &[usize], k: usize) -> Result<Option<ModuleTree>, SchemeError> {
    if vs.len() == 1 {
        return Ok(Some(ModuleTree::Leaf(vs[0])));
    }
    let sub = induced_subgraph(g, vs)?;
    for local in balanced_kmodules(&sub, k)? {
        let parts: Vec<Vec<usize>> = local.iter().map(|p| p.iter().map(|&i| vs[i]).collect()).collect();
        let mut left: Vec<usize> = parts.iter().flatten().copied().collect();
        left.sort_unstable();
        let right: Vec<usize> = vs.iter().copied().filter(|v| !left.contains(v)).collect();
        let Some(lt) = build_on(g, &left, k)? else { continue };
        let Some(rt) = build_on(g, &right, k)? else { continue };
        let attach = right
            .iter()
            .map(|&r| (r, (0..parts.len()).filter(|&i| g.has_edge(r, parts[i][0])).map(|i| i + 1).collect()))
            .collect();
        return Ok(Some(ModuleTree::Node { parts, attach, left: Box::new(lt), right: Box::new(rt) }));
    }
    Ok(None)
}

/// The block decoder for parameter `k`, with room for `2⌈log₂ n⌉` blocks
/// (enough for any balanced tree).
pub fn cliquewidth_scheme(k: usize) -> LabelingScheme {
    LabelingScheme::new(cliquewidth_block_decoder(k), 4 * (k + 2))
}

/// Block labels for `g` from a validated tree, padded to the length of
/// [`cliquewidth_scheme`].
pub fn cliquewidth_encode(g: &Graph, t: &ModuleTree, k: usize) -> Result<Vec<BitLabel>, SchemeError> {
    t.validate(g, k)?;
    let n = g.n();
    let max_blocks = 2 * ceil_log2(n);
    if t.depth() > max_blocks {
        return Err(SchemeError::InvalidTree(format!("depth {} exceeds {max_blocks}", t.depth())));
    }
    let mut symbols: Vec<Vec<BlockSymbol>> = vec![Vec::new(); n];
    fn walk(t: &ModuleTree, k: usize, symbols: &mut [Vec<BlockSymbol>]) {
        let ModuleTree::Node { parts, attach, left, right } = t else { return };
        let bit = |b: bool| if b { BlockSymbol::One } else { BlockSymbol::Zero };
        for (i, part) in parts.iter().enumerate() {
            for &v in part {
                symbols[v].push(BlockSymbol::Zero);
                symbols[v].extend((0..k).map(|j| bit(j == i)));
                symbols[v].push(BlockSymbol::Delim);
            }
        }
        for (&v, set) in attach {
            symbols[v].push(BlockSymbol::One);
            symbols[v].extend((0..k).map(|j| bit(set.contains(&(j + 1)))));
            symbols[v].push(BlockSymbol::Delim);
        }
        walk(left, k, symbols);
        walk(right, k, symbols);
    }
    walk(t, k, &mut symbols);
    let len = max_blocks * (k + 2);
    Ok(symbols
        .into_iter()
        .map(|mut s| {
            s.resize(len, BlockSymbol::Pad);
            encode_symbols(&s)
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decoders::{verify, PairScope};
    use crate::graph::{enumerate_graphs, is_cograph};

    fn round_trip(g: &Graph, k: usize) -> bool {
        let t = build_module_tree(g, k).unwrap().expect("tree exists");
        let labels = cliquewidth_encode(g, &t, k).unwrap();
        verify(&cliquewidth_scheme(k), &labels, g, PairScope::AllPairs).unwrap()
    }

    #[test]
    fn smallest_case() {
        let g = Graph::path(2);
        let t = build_module_tree(&g, 1).unwrap().unwrap();
        assert_eq!(t.depth(), 1);
        let labels = cliquewidth_encode(&g, &t, 1).unwrap();
        assert!(verify(&cliquewidth_scheme(1), &labels, &g, PairScope::AllPairs).unwrap());
    }

    #[test]
    fn balanced_module_examples() {
        assert_eq!(find_balanced_kmodule(&Graph::complete(4, false), 1).unwrap(), Some(vec![vec![0, 1]]));
        assert_eq!(find_balanced_kmodule(&Graph::path(4), 1).unwrap(), None);
        let c5 = Graph::cycle(5);
        let parts = find_balanced_kmodule(&c5, 2).unwrap().unwrap();
        assert!(parts.len() <= 2);
        assert!(find_balanced_kmodule(&Graph::edgeless(13, false), 1).is_err());
    }

    #[test]
    fn path_and_disjoint_edges() {
        assert!(round_trip(&Graph::path(4), 3));
        let g = Graph::path(2).disjoint_union(&Graph::path(2)).unwrap();
        assert!(round_trip(&g, 2));
        assert!(round_trip(&Graph::cycle(5), 2));
    }

    #[test]
    fn invalid_trees_are_rejected() {
        let g = Graph::path(3);
        let good = ModuleTree::Node {
            parts: vec![vec![0, 2]],
            attach: [(1, vec![1])].into(),
            left: Box::new(ModuleTree::Node {
                parts: vec![vec![0]],
                attach: [(2, vec![])].into(),
                left: Box::new(ModuleTree::Leaf(0)),
                right: Box::new(ModuleTree::Leaf(2)),
            }),
            right: Box::new(ModuleTree::Leaf(1)),
        };
        good.validate(&g, 1).unwrap();
        // {0, 1} as one module is split by vertex 2.
        let split = ModuleTree::Node {
            parts: vec![vec![0, 1]],
            attach: [(2, vec![1])].into(),
            left: Box::new(ModuleTree::Node {
                parts: vec![vec![0]],
                attach: [(1, vec![1])].into(),
                left: Box::new(ModuleTree::Leaf(0)),
                right: Box::new(ModuleTree::Leaf(1)),
            }),
            right: Box::new(ModuleTree::Leaf(2)),
        };
        assert!(split.validate(&g, 1).is_err());
    }

    #[test]
    fn all_small_graphs_round_trip() {
        for n in 1..=5 {
            for g in enumerate_graphs(n, false, false).unwrap() {
                assert!(round_trip(&g, n), "{g:?}");
                if is_cograph(&g) {
                    assert!(round_trip(&g, 2), "{g:?}");
                }
            }
        }
    }
}
