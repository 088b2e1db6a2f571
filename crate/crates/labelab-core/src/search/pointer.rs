//! Exact pointer numbers by exhaustive search over ids and slot sets.
//!
//! Only the set of ids in a vertex's slots matters, so slots are searched as
//! sets of size at most `k`. Bijective ids are fixed to the identity (any
//! bijective labeling becomes one by renaming ids); non-bijective ids are
//! enumerated as restricted growth strings, which fixes the first vertex's id.

use crate::graph::Graph;
use crate::schemes::{PointerLabeling, PointerMode};

use super::{Meter, Outcome, SearchBudget, SearchError};

/// Restricted growth strings of length `n`: `ids[0] = 1` and each id is at
/// most one more than the largest before it.
fn growth_strings(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, cur: &mut Vec<usize>, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for id in 1..=max + 1 {
            cur.push(id);
            rec(n, cur, max.max(id), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::with_capacity(n), 0, &mut out);
    out
}

/// Subsets of `pool` with at most `k` elements, smallest first.
fn small_subsets(pool: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for size in 1..=k.min(pool.len()) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            out.push(idx.iter().map(|&i| pool[i]).collect());
            let Some(p) = (0..size).rev().find(|&p| idx[p] < pool.len() - size + p) else { break };
            idx[p] += 1;
            for q in p + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    out
}

/// Search slot sets for fixed ids; `None` when the budget runs out.
fn slots_for_ids(g: &Graph, ids: &[usize], k: usize, mode: PointerMode, meter: &Meter) -> Option<Option<Vec<Vec<usize>>>> {
    let n = g.n();
    let mut used: Vec<usize> = ids.to_vec();
    used.sort_unstable();
    used.dedup();
    let spare = (1..=n).find(|i| !used.contains(i));
    let candidates: Vec<Vec<Vec<usize>>> = (0..n)
        .map(|v| {
            let unique = ids.iter().filter(|&&i| i == ids[v]).count() == 1;
            // A unique id in the own slots only touches the excluded self-pair.
            let pool: Vec<usize> = used.iter().copied().filter(|&i| !(unique && i == ids[v])).collect();
            small_subsets(&pool, k)
                .into_iter()
                .filter(|t| !t.is_empty() || k == 0 || spare.is_some() || unique)
                .collect()
        })
        .collect();
    let adjacent = |tu: &[usize], tv: &[usize], u: usize, v: usize| {
        let a = tv.contains(&ids[u]);
        let b = tu.contains(&ids[v]);
        match mode {
            PointerMode::Or => a || b,
            PointerMode::And => a && b,
        }
    };
    let mut chosen: Vec<usize> = Vec::with_capacity(n);
    // Iterative backtracking over candidate indices.
    let mut next = vec![0usize; n];
    loop {
        let v = chosen.len();
        if v == n {
            break;
        }
        let mut placed = false;
        while next[v] < candidates[v].len() {
            if !meter.tick() {
                return None;
            }
            let c = next[v];
            next[v] += 1;
            let t = &candidates[v][c];
            if (0..v).all(|u| adjacent(&candidates[u][chosen[u]], t, u, v) == g.has_edge(u, v)) {
                chosen.push(c);
                placed = true;
                break;
            }
        }
        if !placed {
            if v == 0 {
                return Some(None);
            }
            next[v] = 0;
            chosen.pop();
        }
    }
    let slots = (0..n)
        .map(|v| {
            let t = &candidates[v][chosen[v]];
            let fill = t.first().copied().or(spare).unwrap_or(ids[v]);
            let mut s = t.clone();
            s.resize(k, fill);
            s
        })
        .collect();
    Some(Some(slots))
}

/// A pointer labeling of `g` with exactly `k` slots, if one exists.
/// Loops are ignored: self-pairs are not constrained by pointer labelings.
pub fn pointer_search(
    g: &Graph,
    mode: PointerMode,
    bijective: bool,
    k: usize,
    budget: SearchBudget,
) -> Result<Outcome<PointerLabeling>, SearchError> {
    if g.is_directed() {
        return Err(SearchError::Invalid("pointer labelings need an undirected graph".into()));
    }
    let n = g.n();
    if n > budget.max_vertices {
        return Ok(Outcome::Unknown(format!("{n} vertices exceed the budget of {}", budget.max_vertices)));
    }
    let meter = Meter::new(budget);
    let id_choices = if bijective { vec![(1..=n).collect()] } else { growth_strings(n) };
    for ids in id_choices {
        match slots_for_ids(g, &ids, k, mode, &meter) {
            None => return Ok(Outcome::Unknown(meter.reason())),
            Some(None) => {}
            Some(Some(slots)) => {
                let l = PointerLabeling::new(ids, slots, mode).map_err(|e| SearchError::Invalid(e.to_string()))?;
                if !l.verify(g) {
                    return Err(SearchError::Unsound);
                }
                return Ok(Outcome::Found(l));
            }
        }
    }
    Ok(Outcome::NotFound)
}

/// The least `k` admitting a pointer labeling, with a witness. Every graph
/// has one with `k = n - 1` (identity ids, slots listing all neighbours).
pub fn pointer_number(
    g: &Graph,
    mode: PointerMode,
    bijective: bool,
    budget: SearchBudget,
) -> Result<Outcome<(usize, PointerLabeling)>, SearchError> {
    for k in 0..g.n() {
        match pointer_search(g, mode, bijective, k, budget)? {
            Outcome::Found(l) => return Ok(Outcome::Found((k, l))),
            Outcome::NotFound => {}
            Outcome::Unknown(r) => return Ok(Outcome::Unknown(format!("k = {k}: {r}"))),
        }
    }
    Ok(Outcome::NotFound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{canonical_graphs, degeneracy, enumerate_graphs, max_degree};

    fn budget() -> SearchBudget {
        SearchBudget::default()
    }

    fn number(g: &Graph, mode: PointerMode, bijective: bool) -> usize {
        pointer_number(g, mode, bijective, budget()).unwrap().found().expect("decided").0
    }

    #[test]
    fn growth_strings_count_set_partitions() {
        let bell = [1, 1, 2, 5, 15, 52, 203];
        for n in 1..=6 {
            assert_eq!(growth_strings(n).len(), bell[n]);
        }
        assert_eq!(small_subsets(&[1, 2, 3], 2).len(), 7);
    }

    #[test]
    fn small_examples() {
        assert_eq!(number(&Graph::edgeless(3, false), PointerMode::Or, true), 0);
        assert_eq!(number(&Graph::path(2), PointerMode::Or, true), 1);
        assert_eq!(number(&Graph::path(3), PointerMode::And, true), 2);
        assert_eq!(number(&Graph::cycle(5), PointerMode::Or, true), 1);
        // A shared id lets one slot describe a clique.
        assert_eq!(number(&Graph::complete(4, false), PointerMode::Or, false), 1);
        assert_eq!(number(&Graph::complete(4, false), PointerMode::And, false), 1);
        assert_eq!(number(&Graph::complete(4, false), PointerMode::And, true), 3);
    }

    #[test]
    fn degree_and_degeneracy_bounds_small_graphs() {
        for n in 1..=4 {
            for g in enumerate_graphs(n, false, false).unwrap() {
                assert_eq!(number(&g, PointerMode::And, true), max_degree(&g).unwrap(), "{g:?}");
                let k = number(&g, PointerMode::Or, true);
                let (d, _) = degeneracy(&g).unwrap();
                assert!(k <= d && d <= 2 * k, "{g:?}");
                assert!(number(&g, PointerMode::Or, false) <= k);
            }
        }
    }

    #[test]
    fn non_bijective_and_matches_forest_bound() {
        for g in canonical_graphs(5, false, false).unwrap().into_iter().filter(Graph::is_forest) {
            assert!(number(&g, PointerMode::And, false) <= 2, "{g:?}");
        }
    }

    #[test]
    fn budget_gives_unknown() {
        let tiny = SearchBudget { max_nodes: 2, ..SearchBudget::default() };
        assert!(matches!(pointer_number(&Graph::cycle(5), PointerMode::And, false, tiny).unwrap(), Outcome::Unknown(_)));
        assert!(pointer_search(&Graph::transitive_path(2), PointerMode::Or, true, 1, budget()).is_err());
    }
}
