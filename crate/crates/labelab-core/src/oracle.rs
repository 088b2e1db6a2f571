//! Finite membership predicates for graph classes, used as search targets.
//! All built-in oracles ignore self-loops.

use crate::graph::{is_cograph, is_dichotomic, is_linear_neighborhood, Graph};

/// Membership test for a graph class.
pub trait GraphClassOracle: Sync {
    fn name(&self) -> &str;

    fn contains(&self, g: &Graph) -> bool;

    /// Closed under induced subgraphs; searches may then prune on partial graphs.
    fn hereditary(&self) -> bool {
        false
    }
}

/// Undirected acyclic graphs.
pub struct ForestOracle;

impl GraphClassOracle for ForestOracle {
    fn name(&self) -> &str {
        "forest"
    }

    fn contains(&self, g: &Graph) -> bool {
        g.without_loops().is_forest()
    }

    fn hereditary(&self) -> bool {
        true
    }
}

/// Interval graphs, decided exactly by searching for a vertex ordering in
/// which `u < v < w` and `uw ∈ E` imply `uv ∈ E`.
pub struct IntervalOracle;

impl GraphClassOracle for IntervalOracle {
    fn name(&self) -> &str {
        "interval"
    }

    fn contains(&self, g: &Graph) -> bool {
        !g.is_directed() && interval_ordering(g).is_some()
    }

    fn hereditary(&self) -> bool {
        true
    }
}

/// An ordering witnessing that `g` is an interval graph (loops ignored).
pub fn interval_ordering(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    let e = |a: usize, b: usize| a != b && g.has_edge(a, b);
    fn rec(n: usize, e: &impl Fn(usize, usize) -> bool, order: &mut Vec<usize>, used: &mut [bool]) -> bool {
        if order.len() == n {
            return true;
        }
        for w in 0..n {
            if used[w] {
                continue;
            }
            // w becomes the last vertex: every earlier u adjacent to w must be
            // adjacent to everything placed after u.
            let ok = order.iter().enumerate().all(|(i, &u)| !e(u, w) || order[i + 1..].iter().all(|&v| e(u, v)));
            if ok {
                used[w] = true;
                order.push(w);
                if rec(n, e, order, used) {
                    return true;
                }
                order.pop();
                used[w] = false;
            }
        }
        false
    }
    let mut order = Vec::with_capacity(n);
    let mut used = vec![false; n];
    rec(n, &e, &mut order, &mut used).then_some(order)
}

/// Undirected graphs without an induced path on four vertices.
pub struct CographOracle;

impl GraphClassOracle for CographOracle {
    fn name(&self) -> &str {
        "cograph"
    }

    fn contains(&self, g: &Graph) -> bool {
        is_cograph(&g.without_loops())
    }

    fn hereditary(&self) -> bool {
        true
    }
}

pub struct DichotomicOracle;

impl GraphClassOracle for DichotomicOracle {
    fn name(&self) -> &str {
        "dichotomic"
    }

    fn contains(&self, g: &Graph) -> bool {
        is_dichotomic(&g.without_loops())
    }

    fn hereditary(&self) -> bool {
        true
    }
}

pub struct LinearNeighborhoodOracle;

impl GraphClassOracle for LinearNeighborhoodOracle {
    fn name(&self) -> &str {
        "lng"
    }

    fn contains(&self, g: &Graph) -> bool {
        is_linear_neighborhood(&g.without_loops())
    }

    fn hereditary(&self) -> bool {
        true
    }
}

/// Every graph.
pub struct AllGraphsOracle;

impl GraphClassOracle for AllGraphsOracle {
    fn name(&self) -> &str {
        "all"
    }

    fn contains(&self, _: &Graph) -> bool {
        true
    }

    fn hereditary(&self) -> bool {
        true
    }
}

/// Built-in oracle by name.
pub fn oracle_by_name(name: &str) -> Option<Box<dyn GraphClassOracle>> {
    Some(match name {
        "forest" => Box::new(ForestOracle),
        "interval" => Box::new(IntervalOracle),
        "cograph" => Box::new(CographOracle),
        "dichotomic" => Box::new(DichotomicOracle),
        "lng" => Box::new(LinearNeighborhoodOracle),
        "all" => Box::new(AllGraphsOracle),
        _ => return None,
    })
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::graph::enumerate_graphs;

    /// Intersection graphs of all models with endpoints in `[0, m)`.
    fn model_graphs(n: usize, m: usize) -> BTreeSet<u128> {
        let ivs: Vec<(usize, usize)> = (0..m).flat_map(|a| (a..m).map(move |b| (a, b))).collect();
        let mut out = BTreeSet::new();
        let mut idx = vec![0usize; n];
        loop {
            let g = Graph::from_fn(n, false, |u, v| {
                let (a, b) = (ivs[idx[u]], ivs[idx[v]]);
                u != v && a.0 <= b.1 && b.0 <= a.1
            });
            out.insert(g.bit_key());
            let Some(p) = (0..n).rev().find(|&p| idx[p] + 1 < ivs.len()) else { break };
            idx[p] += 1;
            idx[p + 1..].iter_mut().for_each(|i| *i = 0);
        }
        out
    }

    #[test]
    fn interval_oracle_matches_model_enumeration() {
        for n in 1..=4 {
            // 2n distinct endpoints suffice for any interval graph on n vertices.
            let models = model_graphs(n, 2 * n);
            for g in enumerate_graphs(n, false, false).unwrap() {
                assert_eq!(IntervalOracle.contains(&g), models.contains(&g.bit_key()), "{g:?}");
            }
        }
    }

    #[test]
    fn small_non_interval_graphs() {
        assert!(!IntervalOracle.contains(&Graph::cycle(4)));
        assert!(IntervalOracle.contains(&Graph::path(5)));
        // The claw with subdivided edges (an asteroidal triple) is not interval.
        let t = Graph::from_edges(7, false, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5), (5, 6)]).unwrap();
        assert!(!IntervalOracle.contains(&t));
    }

    #[test]
    fn names_resolve() {
        for name in ["forest", "interval", "cograph", "dichotomic", "lng", "all"] {
            assert_eq!(oracle_by_name(name).unwrap().name(), name);
        }
        assert!(oracle_by_name("planar").is_none());
    }
}
