//! Exhaustive search for labelings, pointer numbers and the finite
//! diagonalization class.
//!
//! Labelings are built vertex by vertex in index order; each candidate label
//! is tried in ascending order and kept only if it agrees with the graph on
//! every pair with already labeled vertices (and on its own self-pair outside
//! io mode). The first complete labeling is therefore the lexicographically
//! least one. Branches for the first vertex run in parallel; the result is
//! taken from the earliest branch, so it does not depend on scheduling.

mod diag;
mod pointer;

use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use thiserror::Error;

use crate::decoders::{BitLabel, DecodeError, LabelingScheme, PairScope};
use crate::graph::{Graph, GraphError};
use crate::logic::{FoScheme, LogicError};
use crate::pbs::{PbsError, PbsScheme};

pub use diag::{diagonal_class, diagonal_decoders, pairing_preimages, pairing_tau, DiagonalEntry, DiagonalResult};
pub use pointer::{pointer_number, pointer_search};

/// Largest label domain the engine enumerates.
pub const MAX_DOMAIN: usize = 1 << 20;
/// Domains up to this size get a precomputed acceptance matrix.
pub const MATRIX_DOMAIN: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error(transparent)]
    Decode(#[from] DecodeError),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Pbs(#[from] PbsError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("label domain too large: {0}")]
    DomainTooLarge(String),
    #[error("found labeling fails re-verification")]
    Unsound,
    #[error("{0}")]
    Invalid(String),
}

/// Limits on a search; exceeding one yields [`Outcome::Unknown`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_vertices: usize,
    pub max_nodes: u64,
    pub time_limit: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget { max_vertices: 64, max_nodes: 50_000_000, time_limit: None }
    }
}

/// Result of an exhaustive search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome<T> {
    Found(T),
    /// The search space was exhausted without a witness.
    NotFound,
    /// A budget ran out first.
    Unknown(String),
}

impl<T> Outcome<T> {
    pub fn found(self) -> Option<T> {
        match self {
            Outcome::Found(t) => Some(t),
            _ => None,
        }
    }

    pub fn map<U>(self, f: impl FnOnce(T) -> U) -> Outcome<U> {
        match self {
            Outcome::Found(t) => Outcome::Found(f(t)),
            Outcome::NotFound => Outcome::NotFound,
            Outcome::Unknown(r) => Outcome::Unknown(r),
        }
    }
}

/// Shared node and time accounting.
pub(crate) struct Meter {
    nodes: AtomicU64,
    stopped: AtomicBool,
    start: Instant,
    budget: SearchBudget,
}

impl Meter {
    pub(crate) fn new(budget: SearchBudget) -> Self {
        Meter { nodes: AtomicU64::new(0), stopped: AtomicBool::new(false), start: Instant::now(), budget }
    }

    /// Count one node; false once a budget is exhausted.
    pub(crate) fn tick(&self) -> bool {
        let c = self.nodes.fetch_add(1, Ordering::Relaxed);
        if c >= self.budget.max_nodes {
            self.stopped.store(true, Ordering::Relaxed);
        }
        if c % 1024 == 0 {
            if let Some(limit) = self.budget.time_limit {
                if self.start.elapsed() > limit {
                    self.stopped.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.stopped.load(Ordering::Relaxed)
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub(crate) fn reason(&self) -> String {
        format!("budget exhausted after {} nodes", self.nodes())
    }
}

/// A decoder together with its label space for each vertex count.
pub trait Scheme: Sync {
    type Label: Clone + Send + Sync + fmt::Debug;

    /// Every label usable for graphs on `n` vertices, in ascending order.
    fn labels(&self, n: usize) -> Result<Vec<Self::Label>, SearchError>;

    fn adjacent(&self, n: usize, x: &Self::Label, y: &Self::Label) -> Result<bool, SearchError>;
}

impl Scheme for LabelingScheme {
    type Label = BitLabel;

    fn labels(&self, n: usize) -> Result<Vec<BitLabel>, SearchError> {
        let len = self.label_len(n);
        if len > 20 {
            return Err(SearchError::DomainTooLarge(format!("2^{len} bit labels")));
        }
        Ok(BitLabel::all_of_length(len))
    }

    fn adjacent(&self, _: usize, x: &BitLabel, y: &BitLabel) -> Result<bool, SearchError> {
        Ok(self.decoder.accepts(x, y)?)
    }
}

/// All `k`-vectors over `[bound]_0` in lexicographic order.
fn vectors(k: usize, bound: u64) -> Result<Vec<Vec<u64>>, SearchError> {
    let base = bound as u128 + 1;
    let total = base.checked_pow(k as u32).unwrap_or(u128::MAX);
    if total > MAX_DOMAIN as u128 {
        return Err(SearchError::DomainTooLarge(format!("{base}^{k} label vectors")));
    }
    Ok((0..total as u64)
        .map(|mut i| {
            let mut v = vec![0u64; k];
            for s in v.iter_mut().rev() {
                *s = i % base as u64;
                i /= base as u64;
            }
            v
        })
        .collect())
}

impl Scheme for FoScheme {
    type Label = Vec<u64>;

    fn labels(&self, n: usize) -> Result<Vec<Vec<u64>>, SearchError> {
        vectors(self.k, self.universe(n)?)
    }

    fn adjacent(&self, n: usize, x: &Vec<u64>, y: &Vec<u64>) -> Result<bool, SearchError> {
        Ok(self.accepts(n, x, y)?)
    }
}

impl Scheme for PbsScheme {
    type Label = Vec<u64>;

    fn labels(&self, n: usize) -> Result<Vec<Vec<u64>>, SearchError> {
        vectors(self.pbs.k(), self.bound.at(n))
    }

    fn adjacent(&self, n: usize, x: &Vec<u64>, y: &Vec<u64>) -> Result<bool, SearchError> {
        Ok(self.accepts(n, x, y)?)
    }
}

/// The decoder relation on label indices, precomputed when small.
struct Relation<'a, S: Scheme> {
    scheme: &'a S,
    n: usize,
    labels: Vec<S::Label>,
    matrix: Option<Vec<bool>>,
}

impl<'a, S: Scheme> Relation<'a, S> {
    fn new(scheme: &'a S, n: usize) -> Result<Self, SearchError> {
        let labels = scheme.labels(n)?;
        let d = labels.len();
        let matrix = if d <= MATRIX_DOMAIN {
            let m: Result<Vec<bool>, SearchError> =
                (0..d * d).into_par_iter().map(|p| scheme.adjacent(n, &labels[p / d], &labels[p % d])).collect();
            Some(m?)
        } else {
            None
        };
        Ok(Relation { scheme, n, labels, matrix })
    }

    fn d(&self) -> usize {
        self.labels.len()
    }

    fn acc(&self, i: usize, j: usize) -> Result<bool, SearchError> {
        match &self.matrix {
            Some(m) => Ok(m[i * self.labels.len() + j]),
            None => self.scheme.adjacent(self.n, &self.labels[i], &self.labels[j]),
        }
    }
}

/// A labeling found by the search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Labeling<L> {
    /// One label per vertex; every ordered pair, including `(u, u)`, is decoded.
    Plain(Vec<L>),
    /// Out- and in-labels; pairs `(u, v)` with `u != v` are decoded from
    /// `(out(u), in(v))`.
    Io { out: Vec<L>, inn: Vec<L> },
}

enum Step {
    Found(Vec<usize>),
    Exhausted,
    Budget,
}

/// Search for the lexicographically least labeling of `g` under `s`.
pub fn find_labeling<S: Scheme>(
    s: &S,
    g: &Graph,
    io: bool,
    budget: SearchBudget,
) -> Result<Outcome<Labeling<S::Label>>, SearchError> {
    let n = g.n();
    if n > budget.max_vertices {
        return Ok(Outcome::Unknown(format!("{n} vertices exceed the budget of {}", budget.max_vertices)));
    }
    let rel = Relation::new(s, n)?;
    let meter = Meter::new(budget);
    let outcome = if io { search_io(&rel, g, &meter)? } else { search_plain(&rel, g, &meter)? };
    let labeling = match outcome {
        Outcome::Found(l) => l,
        Outcome::NotFound => return Ok(Outcome::NotFound),
        Outcome::Unknown(r) => return Ok(Outcome::Unknown(r)),
    };
    // Re-verify every ordered pair directly against the scheme.
    let ok = match &labeling {
        Labeling::Plain(l) => (0..n).all(|u| (0..n).all(|v| rel.acc(l[u], l[v]).ok() == Some(g.has_edge(u, v)))),
        Labeling::Io { out, inn } => (0..n)
            .all(|u| (0..n).all(|v| u == v || rel.acc(out[u], inn[v]).ok() == Some(g.has_edge(u, v)))),
    };
    if !ok {
        return Err(SearchError::Unsound);
    }
    let pick = |idx: &[usize]| idx.iter().map(|&i| rel.labels[i].clone()).collect::<Vec<_>>();
    Ok(Outcome::Found(match labeling {
        Labeling::Plain(l) => Labeling::Plain(pick(&l)),
        Labeling::Io { out, inn } => Labeling::Io { out: pick(&out), inn: pick(&inn) },
    }))
}

/// Check a labeling against the scheme directly. Plain labelings are
/// checked on the pairs selected by `scope`; io-labelings on pairs `u != v`.
pub fn verify_labeling<S: Scheme>(
    s: &S,
    g: &Graph,
    labeling: &Labeling<S::Label>,
    scope: PairScope,
) -> Result<bool, SearchError> {
    let n = g.n();
    let (out, inn, distinct) = match labeling {
        Labeling::Plain(l) => (l, l, scope == PairScope::DistinctPairs),
        Labeling::Io { out, inn } => (out, inn, true),
    };
    if out.len() != n || inn.len() != n {
        return Err(SearchError::Invalid(format!("{} labels for {n} vertices", out.len().min(inn.len()))));
    }
    for u in 0..n {
        for v in 0..n {
            if (u != v || !distinct) && s.adjacent(n, &out[u], &inn[v])? != g.has_edge(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn search_plain<S: Scheme>(rel: &Relation<'_, S>, g: &Graph, meter: &Meter) -> Result<Outcome<Labeling<usize>>, SearchError> {
    let step = match &rel.matrix {
        Some(m) => plain_with_domains(rel.d(), m, g, meter),
        None => plain_direct(rel, g, meter)?,
    };
    Ok(match step {
        Step::Found(l) => Outcome::Found(Labeling::Plain(l)),
        Step::Exhausted => Outcome::NotFound,
        Step::Budget => Outcome::Unknown(meter.reason()),
    })
}

/// Earliest non-exhausted branch over vertex 0's candidates, in parallel.
fn first_branch(
    candidates: Vec<usize>,
    branch: impl Fn(usize) -> Result<Step, SearchError> + Sync + Send,
) -> Result<Step, SearchError> {
    let hit = candidates.into_par_iter().map(branch).find_map_first(|r| match r {
        Ok(Step::Exhausted) => None,
        other => Some(other),
    });
    hit.unwrap_or(Ok(Step::Exhausted))
}

type Bits = Vec<u64>;

/// Forward checking on bitset domains: assigning a label to a vertex filters
/// the domains of all later vertices; an empty domain cuts the branch.
fn plain_with_domains(d: usize, m: &[bool], g: &Graph, meter: &Meter) -> Step {
    let n = g.n();
    let words = d.div_ceil(64);
    let row = |f: &dyn Fn(usize) -> bool| -> Bits {
        let mut b = vec![0u64; words];
        for y in (0..d).filter(|&y| f(y)) {
            b[y / 64] |= 1 << (y % 64);
        }
        b
    };
    // out_rows[x][y] = acc(x, y), in_rows[x][y] = acc(y, x), and complements.
    let out_rows: Vec<[Bits; 2]> = (0..d).map(|x| [row(&|y| !m[x * d + y]), row(&|y| m[x * d + y])]).collect();
    let in_rows: Vec<[Bits; 2]> = (0..d).map(|x| [row(&|y| !m[y * d + x]), row(&|y| m[y * d + x])]).collect();
    let doms: Vec<Bits> = (0..n).map(|v| row(&|x| m[x * d + x] == g.has_edge(v, v))).collect();

    fn members(b: &Bits) -> impl Iterator<Item = usize> + '_ {
        b.iter().enumerate().flat_map(|(i, &w)| (0..64).filter(move |j| w >> j & 1 == 1).map(move |j| i * 64 + j))
    }

    struct Ctx<'c> {
        n: usize,
        g: &'c Graph,
        out_rows: &'c [[Bits; 2]],
        in_rows: &'c [[Bits; 2]],
        meter: &'c Meter,
    }

    /// `doms` holds the domains of vertices `v..`; returns those of `v + 1..`
    /// once `v` carries `x`, or `None` if one empties.
    fn narrow(c: &Ctx<'_>, doms: &[Bits], v: usize, x: usize) -> Option<Vec<Bits>> {
        let mut next = Vec::with_capacity(c.n - v - 1);
        for (j, dom) in doms.iter().enumerate().skip(1) {
            let w = v + j;
            let o = &c.out_rows[x][c.g.has_edge(v, w) as usize];
            let i = &c.in_rows[x][c.g.has_edge(w, v) as usize];
            let nd: Bits = dom.iter().zip(o).zip(i).map(|((a, b), c)| a & b & c).collect();
            if nd.iter().all(|&w| w == 0) {
                return None;
            }
            next.push(nd);
        }
        Some(next)
    }

    fn dfs(c: &Ctx<'_>, assign: &mut Vec<usize>, doms: &[Bits]) -> Step {
        let v = assign.len();
        if v == c.n {
            return Step::Found(assign.clone());
        }
        for x in members(&doms[0]) {
            if !c.meter.tick() {
                return Step::Budget;
            }
            if let Some(next) = narrow(c, doms, v, x) {
                assign.push(x);
                let r = dfs(c, assign, &next);
                assign.pop();
                if !matches!(r, Step::Exhausted) {
                    return r;
                }
            }
        }
        Step::Exhausted
    }

    let ctx = Ctx { n, g, out_rows: &out_rows, in_rows: &in_rows, meter };
    if doms.iter().any(|b| b.iter().all(|&w| w == 0)) {
        return Step::Exhausted;
    }
    let candidates: Vec<usize> = members(&doms[0]).collect();
    first_branch(candidates, |x| {
        if !meter.tick() {
            return Ok(Step::Budget);
        }
        Ok(match narrow(&ctx, &doms, 0, x) {
            None => Step::Exhausted,
            Some(next) => dfs(&ctx, &mut vec![x], &next),
        })
    })
    .expect("domain search is infallible")
}

/// Plain backtracking for domains too large to tabulate.
fn plain_direct<S: Scheme>(rel: &Relation<'_, S>, g: &Graph, meter: &Meter) -> Result<Step, SearchError> {
    let n = g.n();
    let fits = |assign: &[usize], v: usize, x: usize| -> Result<bool, SearchError> {
        if rel.acc(x, x)? != g.has_edge(v, v) {
            return Ok(false);
        }
        for (u, &y) in assign.iter().enumerate() {
            if rel.acc(y, x)? != g.has_edge(u, v) || rel.acc(x, y)? != g.has_edge(v, u) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    fn dfs(
        n: usize,
        d: usize,
        assign: &mut Vec<usize>,
        fits: &impl Fn(&[usize], usize, usize) -> Result<bool, SearchError>,
        meter: &Meter,
    ) -> Result<Step, SearchError> {
        let v = assign.len();
        if v == n {
            return Ok(Step::Found(assign.clone()));
        }
        for x in 0..d {
            if !meter.tick() {
                return Ok(Step::Budget);
            }
            if fits(assign, v, x)? {
                assign.push(x);
                let r = dfs(n, d, assign, fits, meter)?;
                assign.pop();
                if !matches!(r, Step::Exhausted) {
                    return Ok(r);
                }
            }
        }
        Ok(Step::Exhausted)
    }
    let d = rel.d();
    first_branch((0..d).collect(), |x| {
        if !meter.tick() {
            return Ok(Step::Budget);
        }
        if !fits(&[], 0, x)? {
            return Ok(Step::Exhausted);
        }
        dfs(n, d, &mut vec![x], &fits, meter)
    })
}

fn search_io<S: Scheme>(rel: &Relation<'_, S>, g: &Graph, meter: &Meter) -> Result<Outcome<Labeling<usize>>, SearchError> {
    let n = g.n();
    let d = rel.d();
    // Constraints of an out-label `o` for vertex `v`: (v, u) for earlier u.
    let out_fits = |inn: &[usize], v: usize, o: usize| -> Result<bool, SearchError> {
        for (u, &i) in inn.iter().enumerate() {
            if rel.acc(o, i)? != g.has_edge(v, u) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    let in_fits = |out: &[usize], v: usize, i: usize| -> Result<bool, SearchError> {
        for (u, &o) in out[..v].iter().enumerate() {
            if rel.acc(o, i)? != g.has_edge(u, v) {
                return Ok(false);
            }
        }
        Ok(true)
    };
    struct Ctx<'c, A, B> {
        n: usize,
        d: usize,
        out_fits: &'c A,
        in_fits: &'c B,
        meter: &'c Meter,
    }
    fn dfs<A, B>(c: &Ctx<'_, A, B>, out: &mut Vec<usize>, inn: &mut Vec<usize>) -> Result<Step, SearchError>
    where
        A: Fn(&[usize], usize, usize) -> Result<bool, SearchError>,
        B: Fn(&[usize], usize, usize) -> Result<bool, SearchError>,
    {
        let v = out.len();
        if v == c.n {
            let mut both = out.clone();
            both.extend_from_slice(inn);
            return Ok(Step::Found(both));
        }
        for o in 0..c.d {
            if !c.meter.tick() {
                return Ok(Step::Budget);
            }
            if !(c.out_fits)(inn, v, o)? {
                continue;
            }
            out.push(o);
            for i in 0..c.d {
                if !c.meter.tick() {
                    out.pop();
                    return Ok(Step::Budget);
                }
                if !(c.in_fits)(out, v, i)? {
                    continue;
                }
                inn.push(i);
                let r = dfs(c, out, inn)?;
                inn.pop();
                if !matches!(r, Step::Exhausted) {
                    out.pop();
                    return Ok(r);
                }
            }
            out.pop();
        }
        Ok(Step::Exhausted)
    }
    let ctx = Ctx { n, d, out_fits: &out_fits, in_fits: &in_fits, meter };
    // Vertex 0 has no constraints of its own; branch on its label pair.
    let first = (0..d * d).into_par_iter().map(|p| -> Result<Option<Step>, SearchError> {
        if !meter.tick() {
            return Ok(Some(Step::Budget));
        }
        let (mut out, mut inn) = (vec![p / d], vec![p % d]);
        match dfs(&ctx, &mut out, &mut inn)? {
            Step::Exhausted => Ok(None),
            other => Ok(Some(other)),
        }
    });
    Ok(match first.find_map_first(|r| match r {
        Ok(None) => None,
        other => Some(other),
    }) {
        None => Outcome::NotFound,
        Some(r) => match r? {
            Some(Step::Found(both)) => {
                let inn = both[n..].to_vec();
                let mut out = both;
                out.truncate(n);
                Outcome::Found(Labeling::Io { out, inn })
            }
            _ => Outcome::Unknown(meter.reason()),
        },
    })
}

/// Membership of a graph in the class spanned by a scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership<L> {
    Member(Labeling<L>),
    NonMember,
    Unknown(String),
}

impl<L> Membership<L> {
    pub fn is_member(&self) -> bool {
        matches!(self, Membership::Member(_))
    }
}

pub fn class_membership<S: Scheme>(
    s: &S,
    g: &Graph,
    io: bool,
    budget: SearchBudget,
) -> Result<Membership<S::Label>, SearchError> {
    Ok(match find_labeling(s, g, io, budget)? {
        Outcome::Found(l) => Membership::Member(l),
        Outcome::NotFound => Membership::NonMember,
        Outcome::Unknown(r) => Membership::Unknown(r),
    })
}
