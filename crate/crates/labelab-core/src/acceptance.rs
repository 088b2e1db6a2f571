//! The acceptance suite: thirteen end-to-end checks with pinned limits.
//!
//! Each check runs exhaustively (or on a seeded sample where noted) and
//! fails on any mismatch, on an inconclusive search, or when it exceeds its
//! time limit.

use std::collections::BTreeSet;
use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::boolfn::BooleanFunctionTable;
use crate::decoders::{
    ceil_log2, dfa_decode, io_decode, lex_less_dfa, verify, BitLabel, Decoder, LabelingScheme, PairScope,
};
use crate::graph::{
    canonical_graphs, degeneracy, enumerate_graphs, is_cograph, is_dichotomic,
    is_linear_neighborhood, max_degree, Graph,
};
use crate::logic::{
    eval_bounded, eval_infinite_u64, guard_transform, normalize_linear_atom, parse_formula, qe_order, FoScheme,
    Semantics,
};
use crate::pbs::{clear_denominators, disk_pbs, dot_product_pbs, segment_pbs, sign_split, split_and_clear_values, Pbs};
use crate::reductions::{verify_subgraph, BuiltinReduction, SubgraphRepresentation};
use crate::schemes::{
    build_module_tree, cliquewidth_encode, cliquewidth_scheme, equality_scheme, interval_bit_labels,
    interval_encode, interval_scheme, order_scheme, IntervalModel, PointerMode,
};
use crate::search::{
    class_membership, diagonal_class, diagonal_decoders, pointer_number, pointer_search, DiagonalResult, Membership,
    Outcome, SearchBudget,
};

/// A criterion of the suite.
#[derive(Clone, Copy, Debug)]
pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub limit: Duration,
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

/// All criteria with their time limits.
pub const CRITERIA: [Criterion; 13] = [
    Criterion { id: 1, name: "interval endpoint labels of the five-interval model", limit: secs(1) },
    Criterion { id: 2, name: "equality scheme membership equals dichotomic", limit: secs(300) },
    Criterion { id: 3, name: "order scheme membership equals linear neighborhood", limit: secs(300) },
    Criterion { id: 4, name: "bijective and-pointer number equals max degree", limit: secs(600) },
    Criterion { id: 5, name: "bijective or-pointer number sandwiches degeneracy", limit: secs(600) },
    Criterion { id: 6, name: "and-pointer lower bound on the six-vertex ladder", limit: secs(120) },
    Criterion { id: 7, name: "constructive completeness reductions verify", limit: secs(120) },
    Criterion { id: 8, name: "overflow guard preserves bounded semantics", limit: secs(300) },
    Criterion { id: 9, name: "order quantifier elimination is exact", limit: secs(300) },
    Criterion { id: 10, name: "linear atom normalization verifies", limit: secs(600) },
    Criterion { id: 11, name: "polynomial system transforms are exact", limit: secs(60) },
    Criterion { id: 12, name: "regular decoders", limit: secs(300) },
    Criterion { id: 13, name: "diagonal graphs are non-members", limit: secs(120) },
];

/// Outcome of one criterion.
#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u32,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Duration,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {:>2} {} ({:.2}s / {}s): {}",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.elapsed.as_secs_f64(),
            self.limit.as_secs(),
            self.detail
        )
    }
}

/// `Ok((passed, detail))`, or an error message that fails the criterion.
type Check = Result<(bool, String), String>;

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

/// Run one criterion by id. `seed` drives the randomized criteria.
pub fn run_criterion(id: u32, seed: u64) -> Option<CriterionReport> {
    let c = CRITERIA.iter().find(|c| c.id == id)?;
    let start = Instant::now();
    let result = match id {
        1 => five_interval_check(),
        2 => characterization(false),
        3 => characterization(true),
        4 => and_pointer_max_degree(),
        5 => or_pointer_degeneracy(),
        6 => and_pointer_ladder(),
        7 => completeness_reductions(),
        8 => overflow_guard(),
        9 => order_elimination(),
        10 => linear_normalization(),
        11 => pbs_transforms(seed),
        12 => regular_decoders(),
        _ => diagonalization(),
    };
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = result.unwrap_or_else(|e| (false, format!("error: {e}")));
    if elapsed > c.limit {
        passed = false;
        detail = format!("time limit exceeded; {detail}");
    }
    Some(CriterionReport { id, name: c.name, passed, detail, elapsed, limit: c.limit })
}

/// Run every criterion in order.
pub fn run_all(seed: u64) -> Vec<CriterionReport> {
    CRITERIA.iter().filter_map(|c| run_criterion(c.id, seed)).collect()
}

fn budget() -> SearchBudget {
    SearchBudget::default()
}

fn mismatches(count: usize, total: usize, first: Option<String>) -> (bool, String) {
    let mut detail = format!("{count} mismatches over {total} cases");
    if let Some(f) = first {
        detail.push_str(&format!("; first: {f}"));
    }
    (count == 0, detail)
}

// 1 ---------------------------------------------------------------------

/// The drawn five-interval model, its expected ranks and graph.
pub fn five_interval_model() -> (IntervalModel, Vec<(u64, u64)>, Graph) {
    let m = IntervalModel::new(vec![(5, 20), (27, 43), (50, 65), (70, 80), (12, 58)]).expect("valid model");
    let labels = vec![(1, 3), (4, 5), (6, 8), (9, 10), (2, 7)];
    let g = Graph::from_edges(5, false, &[(0, 4), (1, 4), (2, 4)]).expect("valid graph");
    (m, labels, g)
}

fn five_interval_check() -> Check {
    let (m, expected_labels, expected) = five_interval_model();
    let enc = interval_encode(&m).map_err(err)?;
    let labels: Vec<(u64, u64)> = enc.labels.iter().map(|&(a, b)| (a as u64, b as u64)).collect();
    let same = verify(&interval_scheme(), &interval_bit_labels(&enc), &expected, PairScope::DistinctPairs).map_err(err)?;
    let ok = labels == expected_labels && same;
    Ok((ok, format!("labels {labels:?}, decoded graph {}", if same { "matches" } else { "differs" })))
}

// 2, 3 ------------------------------------------------------------------

fn characterization(order: bool) -> Check {
    let scheme = if order { order_scheme() } else { equality_scheme() };
    let oracle: fn(&Graph) -> bool = if order { is_linear_neighborhood } else { is_dichotomic };
    let (mut total, mut bad, mut first) = (0, 0, None);
    for n in 1..=4 {
        for g in enumerate_graphs(n, true, false).map_err(err)? {
            total += 1;
            let member = match class_membership(&scheme, &g, false, budget()).map_err(err)? {
                Membership::Member(_) => true,
                Membership::NonMember => false,
                Membership::Unknown(r) => return Err(format!("inconclusive search: {r}")),
            };
            if member != oracle(&g) {
                bad += 1;
                first.get_or_insert_with(|| format!("{:?}", g.edges()));
            }
        }
    }
    Ok(mismatches(bad, total, first))
}

// 4, 5, 6 ---------------------------------------------------------------

fn connected_graphs(max_n: usize) -> Result<Vec<Graph>, String> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(canonical_graphs(n, false, false).map_err(err)?.into_iter().filter(Graph::is_connected));
    }
    Ok(out)
}

fn pointer_k(g: &Graph, mode: PointerMode, bijective: bool) -> Result<usize, String> {
    match pointer_number(g, mode, bijective, budget()).map_err(err)? {
        Outcome::Found((k, l)) if l.verify(g) => Ok(k),
        Outcome::Found(_) => Err("witness does not verify".into()),
        Outcome::NotFound => Err("no pointer labeling found".into()),
        Outcome::Unknown(r) => Err(format!("inconclusive search: {r}")),
    }
}

fn and_pointer_max_degree() -> Check {
    let graphs = connected_graphs(5)?;
    let (mut bad, mut first) = (0, None);
    for g in &graphs {
        let k = pointer_k(g, PointerMode::And, true)?;
        if k != max_degree(g).map_err(err)? {
            bad += 1;
            first.get_or_insert_with(|| format!("{:?}: k = {k}", g.edges()));
        }
    }
    Ok(mismatches(bad, graphs.len(), first))
}

fn or_pointer_degeneracy() -> Check {
    let graphs = connected_graphs(5)?;
    let (mut bad, mut first) = (0, None);
    for g in &graphs {
        let k = pointer_k(g, PointerMode::Or, true)?;
        let d = degeneracy(g).map_err(err)?.0;
        if !(k <= d && d <= 2 * k) {
            bad += 1;
            first.get_or_insert_with(|| format!("{:?}: k = {k}, degeneracy {d}", g.edges()));
        }
    }
    Ok(mismatches(bad, graphs.len(), first))
}

/// Hubs `x`, `y` with two spokes each, spokes matched across:
/// `x = 0`, `x1 = 1`, `x2 = 2`, `y1 = 3`, `y2 = 4`, `y = 5`.
pub fn ladder_graph() -> Graph {
    Graph::from_edges(6, false, &[(0, 1), (0, 2), (5, 3), (5, 4), (1, 3), (2, 4)]).expect("valid graph")
}

fn and_pointer_ladder() -> Check {
    let g = ladder_graph();
    for k in 0..=1 {
        match pointer_search(&g, PointerMode::And, false, k, budget()).map_err(err)? {
            Outcome::NotFound => {}
            Outcome::Found(l) => return Ok((false, format!("found a labeling with k = {k}: {l:?}"))),
            Outcome::Unknown(r) => return Err(format!("inconclusive at k = {k}: {r}")),
        }
    }
    let exact = pointer_k(&g, PointerMode::And, false)?;
    Ok((exact >= 2, format!("k = 0, 1 refuted; and-pointer number is {exact}")))
}

// 7 ---------------------------------------------------------------------

fn expect_rep(g: &Graph, rep: &SubgraphRepresentation, host: &Graph, f: &BooleanFunctionTable) -> Result<bool, String> {
    Ok(&rep.host == host && &rep.f == f && verify_subgraph(g, rep).map_err(err)?)
}

fn completeness_reductions() -> Check {
    let paths_f = BooleanFunctionTable::from_fn(16, |a| a[3] && a[6]).map_err(err)?;
    let order_f = BooleanFunctionTable::from_fn(4, |a| a[1]).map_err(err)?;
    let interval_f = BooleanFunctionTable::from_fn(4, |a| a[2] && !a[1]).map_err(err)?;
    let mut counts = [0usize; 3];
    let mut failures = Vec::new();
    for n in 1..=4 {
        for g in enumerate_graphs(n, true, false).map_err(err)? {
            if is_dichotomic(&g) {
                counts[0] += 1;
                let rep = BuiltinReduction::DichotomicToPaths.apply(&g).map_err(err)?;
                if !expect_rep(&g, &rep, &Graph::path(n.pow(3)), &paths_f)? {
                    failures.push(format!("dichotomic {:?}", g.edges()));
                }
            }
            if is_linear_neighborhood(&g) {
                counts[1] += 1;
                let rep = BuiltinReduction::LngToTcPaths.apply(&g).map_err(err)?;
                if !expect_rep(&g, &rep, &Graph::transitive_path(n * n), &order_f)? {
                    failures.push(format!("linear neighborhood {:?}", g.edges()));
                }
            }
        }
    }
    for n in 1..=8 {
        counts[2] += 1;
        let g = Graph::transitive_path(n);
        let rep = BuiltinReduction::TcPathsToInterval.apply(&g).map_err(err)?;
        let constructive: Vec<Vec<usize>> = (0..n).map(|u| vec![u, if u == 0 { 0 } else { n - 1 + u }]).collect();
        if rep.f != interval_f || rep.ell != constructive || !verify_subgraph(&g, &rep).map_err(err)? {
            failures.push(format!("transitive path on {n} vertices"));
        }
    }
    Ok((
        failures.is_empty(),
        format!(
            "{} dichotomic, {} linear neighborhood, {} transitive paths; {} failures{}",
            counts[0],
            counts[1],
            counts[2],
            failures.len(),
            failures.first().map(|f| format!("; first: {f}")).unwrap_or_default()
        ),
    ))
}

// 8, 9 ------------------------------------------------------------------

/// Quantifier-free formulas for the guard check: every `<`/`=` atom over a
/// set of terms with nested arithmetic, plus connective combinations.
pub fn guard_corpus() -> Vec<String> {
    let terms = [
        "x1",
        "y2",
        "cm",
        "(x1 + y1)",
        "(x2 * y2)",
        "((x1 + y2) * x2)",
        "(x2 + y1)",
        "((y1 * y1) + c1)",
        "(c1 + (x1 * cm))",
    ];
    let mut out = vec!["((x1 + y2) * x2) < (x2 + y1)".to_string()];
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i + 1..] {
            out.push(format!("{a} < {b}"));
            out.push(format!("{b} = {a}"));
        }
    }
    out.extend(
        [
            "!(x1 + y1) < x2",
            "((x1 + y1) < x2 & (x1 * y2) = c0)",
            "((x1 * x1) < y1 | !(y2 + c1) = x2)",
            "!((x2 * y2) = cm & ((x1 + c1) + c1) < y1)",
            "(((x1 + y1) + (x2 + y2)) < cm | (x1 * (y1 * x2)) = y2)",
        ]
        .map(String::from),
    );
    out
}

fn assignments(len: usize, n: u64) -> impl Iterator<Item = Vec<u64>> {
    let total = (n + 1).pow(len as u32);
    (0..total).map(move |mut i| {
        let mut a = vec![0; len];
        for s in a.iter_mut() {
            *s = i % (n + 1);
            i /= n + 1;
        }
        a
    })
}

fn overflow_guard() -> Check {
    let corpus = guard_corpus();
    let (mut total, mut bad, mut first) = (0usize, 0usize, None);
    for src in &corpus {
        let phi = parse_formula(src).map_err(err)?;
        let guarded = guard_transform(&phi).map_err(err)?;
        let k = phi.arity().max(1);
        for n in 1..=6 {
            for a in assignments(2 * k, n) {
                total += 1;
                if eval_bounded(&phi, &a, n).map_err(err)? != eval_infinite_u64(&guarded, &a, n).map_err(err)? {
                    bad += 1;
                    first.get_or_insert_with(|| format!("{src} at n = {n}, {a:?}"));
                }
            }
        }
    }
    let (ok, detail) = mismatches(bad, total, first);
    Ok((ok && corpus.len() >= 50, format!("{} formulas; {detail}", corpus.len())))
}

/// Quantified formulas over `<` and `=` for the elimination check.
pub fn order_corpus() -> Vec<&'static str> {
    vec![
        "E z1 . (x1 < z1 & z1 < y1)",
        "E z1 . x1 < z1",
        "A z1 . (z1 < x1 | !z1 < y1)",
        "E z1 . (x1 = z1 & z1 = y1)",
        "E z1 . E z2 . (x1 < z1 & (z1 < z2 & z2 < y1))",
        "A z1 . E z2 . (z1 < z2 | z1 = cm)",
        "E z1 . (!z1 = x1 & (!z1 = y1 & z1 < x2))",
        "(x1 < y1 | E z1 . (y1 < z1 & z1 < x1))",
        "A z1 . (x1 < z1 | (z1 < y1 | z1 = x2))",
        "E z1 . (c1 < z1 & z1 < x1)",
        "!E z1 . (x1 < z1 & (z1 < y1 & !z1 = x2))",
        "A z1 . (z1 < x1 | E z2 . (z1 < z2 & z2 < y2))",
    ]
}

fn order_elimination() -> Check {
    let (mut total, mut bad, mut first) = (0usize, 0usize, None);
    let corpus = order_corpus();
    for src in &corpus {
        let phi = parse_formula(src).map_err(err)?;
        let out = qe_order(&phi).map_err(err)?;
        if !out.is_quantifier_free() {
            return Ok((false, format!("{src} kept a quantifier")));
        }
        let k = phi.arity().max(1);
        for n in 1..=6 {
            for a in assignments(2 * k, n) {
                total += 1;
                if eval_bounded(&phi, &a, n).map_err(err)? != eval_bounded(&out, &a, n).map_err(err)? {
                    bad += 1;
                    first.get_or_insert_with(|| format!("{src} at n = {n}, {a:?}"));
                }
            }
        }
    }
    let (ok, detail) = mismatches(bad, total, first);
    Ok((ok, format!("{} formulas; {detail}", corpus.len())))
}

// 10 --------------------------------------------------------------------

/// Linear atoms for the normalization check.
pub fn linear_corpus() -> Vec<&'static str> {
    vec![
        "x1 < y1",
        "x1 = y1",
        "y1 < x1",
        "(x1 + x2) < y1",
        "(x1 + y1) < cm",
        "((x1 + y2) + c1) < ((x2 + y1) + cm)",
        "(x1 + x1) = (y1 + c1)",
        "(x1 + y2) = (x2 + y1)",
        "x2 < (y1 + y1)",
        "(y1 + y2) = (x1 + cm)",
    ]
}

fn linear_normalization() -> Check {
    let (mut graphs, mut bad, mut first) = (0usize, 0usize, None);
    for src in linear_corpus() {
        let atom = parse_formula(src).map_err(err)?;
        let scheme = FoScheme::new(atom.clone(), 1, Semantics::Infinite).map_err(err)?;
        for n in 1..=4usize {
            let norm = normalize_linear_atom(&atom, n as u64, 1).map_err(err)?;
            let normal = FoScheme::new(norm.normal_form(), 1, Semantics::Infinite).map_err(err)?;
            let k = scheme.k;
            let vectors: Vec<Vec<u64>> = assignments(k, n as u64).collect();
            let ranks: Vec<Vec<u64>> = vectors
                .iter()
                .map(|v| {
                    let (a, b) = norm.transform(v);
                    vec![a, b]
                })
                .collect();
            let top = ranks.iter().flatten().copied().max().unwrap_or(1).max(1);
            let m = vectors.len();
            let mut original = vec![false; m * m];
            let mut normalized = vec![false; m * m];
            for i in 0..m {
                for j in 0..m {
                    original[i * m + j] = scheme.accepts(n, &vectors[i], &vectors[j]).map_err(err)?;
                    normalized[i * m + j] = normal.accepts_in(top, &ranks[i], &ranks[j]).map_err(err)?;
                }
            }
            // Every labeling of n vertices; each distinct graph is checked once.
            let mut seen = BTreeSet::new();
            let mut labeling = vec![0usize; n];
            loop {
                let g = Graph::from_fn(n, true, |u, v| original[labeling[u] * m + labeling[v]]);
                if seen.insert(g.bit_key()) {
                    let h = Graph::from_fn(n, true, |u, v| normalized[labeling[u] * m + labeling[v]]);
                    if h != g {
                        bad += 1;
                        first.get_or_insert_with(|| format!("{src} at n = {n}, labeling {labeling:?}"));
                    }
                }
                let Some(pos) = labeling.iter().rposition(|&v| v + 1 < m) else { break };
                labeling[pos] += 1;
                labeling[pos + 1..].iter_mut().for_each(|v| *v = 0);
            }
            graphs += seen.len();
        }
    }
    let (ok, detail) = mismatches(bad, graphs, first);
    Ok((ok, format!("{} atoms; {detail} (representable graphs)", linear_corpus().len())))
}

// 11 --------------------------------------------------------------------

fn pbs_transforms(seed: u64) -> Check {
    let systems: [(&str, Pbs); 4] =
        [("dot1", dot_product_pbs(1)), ("dot2", dot_product_pbs(2)), ("disk", disk_pbs()), ("segment", segment_pbs())];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut total, mut bad, mut first) = (0usize, 0usize, None);
    for (name, r) in &systems {
        let t = clear_denominators(&sign_split(r).map_err(err)?).map_err(err)?;
        for _ in 0..100 {
            let a: Vec<BigRational> = (0..r.nvars())
                .map(|_| BigRational::new(BigInt::from(rng.gen_range(-9i64..=9)), BigInt::from(rng.gen_range(1i64..=6))))
                .collect();
            total += 1;
            if t.eval_int(&split_and_clear_values(&a)).map_err(err)? != r.eval_rat(&a).map_err(err)? {
                bad += 1;
                first.get_or_insert_with(|| format!("{name} at {a:?}"));
            }
        }
    }
    let (ok, detail) = mismatches(bad, total, first);
    Ok((ok, format!("seed {seed}; {detail}")))
}

// 12 --------------------------------------------------------------------

fn regular_decoders() -> Check {
    let dfa = lex_less_dfa();
    let mut pairs = 0usize;
    for len in 0..=6 {
        let all = BitLabel::all_of_length(len);
        for x in &all {
            for y in &all {
                pairs += 1;
                if dfa_decode(&dfa, x, y).map_err(err)? != (x.to_number() < y.to_number()) {
                    return Ok((false, format!("lexicographic DFA differs at {x} vs {y}")));
                }
            }
        }
    }
    let lex = LabelingScheme::new(Decoder::Dfa(dfa), 1);
    for n in 1..=16 {
        let labels: Vec<BitLabel> = (0..n).map(|u| BitLabel::from_number(u as u64, ceil_log2(n))).collect();
        if !io_decode(&lex, &labels, &labels, &Graph::transitive_path(n)).map_err(err)? {
            return Ok((false, format!("io labeling of the transitive path on {n} vertices fails")));
        }
    }
    let mut cographs = 0usize;
    for n in 1..=6 {
        for g in canonical_graphs(n, false, false).map_err(err)?.into_iter().filter(is_cograph) {
            cographs += 1;
            let Some(t) = build_module_tree(&g, 2).map_err(err)? else {
                return Ok((false, format!("no 2-module tree for cograph {:?}", g.edges())));
            };
            let labels = cliquewidth_encode(&g, &t, 2).map_err(err)?;
            if !verify(&cliquewidth_scheme(2), &labels, &g, PairScope::AllPairs).map_err(err)? {
                return Ok((false, format!("block labels of cograph {:?} decode wrongly", g.edges())));
            }
        }
    }
    Ok((
        true,
        format!("{pairs} label pairs, transitive paths up to 16, {cographs} cographs round-trip"),
    ))
}

// 13 --------------------------------------------------------------------

fn diagonalization() -> Check {
    let decoders = diagonal_decoders();
    let entries = diagonal_class(&decoders, 64, budget(), 1 << 12).map_err(err)?;
    for e in &entries {
        let DiagonalResult::NonMember(g) = &e.result else {
            return Ok((false, format!("n = {}: no diagonal graph ({:?})", e.n, e.result)));
        };
        let s = LabelingScheme::new(decoders[e.y].clone(), e.z);
        match class_membership(&s, g, false, budget()).map_err(err)? {
            Membership::NonMember => {}
            other => return Ok((false, format!("n = {}: diagonal graph re-checks as {other:?}", e.n))),
        }
    }
    let picks: Vec<String> = entries.iter().map(|e| format!("n={} y={} z={}", e.n, e.y, e.z)).collect();
    Ok((!entries.is_empty(), format!("{} diagonal graphs re-check: {}", entries.len(), picks.join(", "))))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn criteria_are_numbered_in_order() {
        for (i, c) in CRITERIA.iter().enumerate() {
            assert_eq!(c.id as usize, i + 1);
        }
        assert!(run_criterion(99, 0).is_none());
    }

    #[test]
    fn corpora_sizes() {
        assert!(guard_corpus().len() >= 50);
        assert_eq!(linear_corpus().len(), 10);
        assert!(order_corpus().contains(&"E z1 . (x1 < z1 & z1 < y1)"));
    }

    #[test]
    fn ladder_is_a_six_cycle() {
        let g = ladder_graph();
        assert_eq!(g.proper_edge_count(), 6);
        assert!((0..6).all(|v| g.degree(v) == 2) && g.is_connected());
    }

    #[test]
    fn fast_criteria_pass() {
        for id in [1, 11] {
            let r = run_criterion(id, 0).unwrap();
            assert!(r.passed, "{r}");
        }
    }
}
