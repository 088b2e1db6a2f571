//! Interval graphs: each vertex is labeled with the ranks of its two
//! endpoints in the left-to-right order of all endpoints.

use crate::decoders::{ceil_log2, BitLabel, Decoder, LabelingScheme};
use crate::graph::Graph;

use super::SchemeError;

/// Closed intervals `[lo, hi]`, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalModel {
    intervals: Vec<(i64, i64)>,
}

impl IntervalModel {
    pub fn new(intervals: Vec<(i64, i64)>) -> Result<Self, SchemeError> {
        if intervals.is_empty() {
            return Err(SchemeError::Model("no intervals".into()));
        }
        if let Some((v, &(lo, hi))) = intervals.iter().enumerate().find(|(_, &(lo, hi))| lo > hi) {
            return Err(SchemeError::Model(format!("vertex {v}: lower end {lo} exceeds upper end {hi}")));
        }
        Ok(IntervalModel { intervals })
    }

    pub fn n(&self) -> usize {
        self.intervals.len()
    }

    pub fn intervals(&self) -> &[(i64, i64)] {
        &self.intervals
    }

    /// The loop-free intersection graph.
    pub fn graph(&self) -> Graph {
        let iv = &self.intervals;
        Graph::from_fn(self.n(), false, |u, v| u != v && iv[u].0 <= iv[v].1 && iv[v].0 <= iv[u].1)
    }
}

/// Endpoint ranks per vertex and the graph they decode to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalEncoding {
    /// `(rank of lo, rank of hi)`, ranks in `1..=2n`.
    pub labels: Vec<(u64, u64)>,
    pub graph: Graph,
}

/// Rank all endpoints left to right; ties go by coordinate, then lower ends
/// before upper ends, then vertex index. Every endpoint gets its own rank,
/// so a point interval `[a, a]` still receives two distinct ranks.
pub fn interval_encode(m: &IntervalModel) -> Result<IntervalEncoding, SchemeError> {
    let n = m.n();
    let mut ends: Vec<(i64, u8, usize)> = Vec::with_capacity(2 * n);
    for (v, &(lo, hi)) in m.intervals.iter().enumerate() {
        ends.push((lo, 0, v));
        ends.push((hi, 1, v));
    }
    ends.sort_unstable();
    let mut labels = vec![(0u64, 0u64); n];
    for (rank, &(_, kind, v)) in ends.iter().enumerate() {
        let r = rank as u64 + 1;
        if kind == 0 {
            labels[v].0 = r;
        } else {
            labels[v].1 = r;
        }
    }
    let graph = Graph::from_fn(n, false, |u, v| {
        let (x, y) = (labels[u], labels[v]);
        u != v && !(x.1 < y.0) && !(y.1 < x.0)
    });
    Ok(IntervalEncoding { labels, graph })
}

/// The interval decoder with `c = 4`: two numbers of `2⌈log₂ n⌉` bits.
pub fn interval_scheme() -> LabelingScheme {
    LabelingScheme::new(Decoder::Interval, 4)
}

/// Bit labels for [`interval_scheme`], storing zero-based ranks.
pub fn interval_bit_labels(enc: &IntervalEncoding) -> Vec<BitLabel> {
    let n = enc.labels.len();
    let w = 2 * ceil_log2(n);
    if w == 0 {
        return vec![BitLabel::empty(); n];
    }
    enc.labels.iter().map(|&(a, b)| BitLabel::from_numbers(&[a - 1, b - 1], w)).collect()
}
