//! Label decoders over equal-length bit labels, labeling schemes `(F, c)`,
//! regular decoders on interleaved labels, and io-labelings.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use thiserror::Error;

use crate::boolfn::BooleanFunctionTable;
use crate::graph::Graph;
use crate::logic::FoBitDecoder;
use crate::pbs::Pbs;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecodeError {
    #[error("label lengths differ: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("label length {len} is invalid for this decoder: {reason}")]
    BadLength { len: usize, reason: String },
    #[error("symbol {symbol} is outside the alphabet of size {alphabet}")]
    Symbol { symbol: usize, alphabet: usize },
    #[error("malformed block label: {0}")]
    Malformed(String),
    #[error("labeling has {labels} labels for a graph on {n} vertices")]
    LabelCount { labels: usize, n: usize },
    #[error("vertex {vertex} has a {len}-bit label, expected {expected}")]
    LabelLength { vertex: usize, len: usize, expected: usize },
    #[error("invalid DFA: {0}")]
    InvalidDfa(String),
    #[error("invalid bit string {0:?}")]
    BitString(String),
    #[error("{0}")]
    Other(String),
}

// ---------------------------------------------------------------------------
// Bit labels
// ---------------------------------------------------------------------------

/// A bit label; numbers stored in labels are big-endian.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitLabel(pub Vec<bool>);

impl BitLabel {
    pub fn empty() -> Self {
        BitLabel(Vec::new())
    }

    /// `value` in `width` bits, most significant first; high bits beyond the width are dropped.
    pub fn from_number(value: u64, width: usize) -> Self {
        BitLabel((0..width).rev().map(|i| i < 64 && (value >> i) & 1 == 1).collect())
    }

    /// Several numbers of equal width, concatenated.
    pub fn from_numbers(values: &[u64], width: usize) -> Self {
        BitLabel(values.iter().flat_map(|&v| Self::from_number(v, width).0).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    /// Big-endian value of the whole label (at most 64 bits).
    pub fn to_number(&self) -> Option<u64> {
        bits_to_number(&self.0)
    }

    pub fn concat(&self, other: &BitLabel) -> BitLabel {
        BitLabel(self.0.iter().chain(&other.0).copied().collect())
    }

    pub fn slice(&self, start: usize, end: usize) -> BitLabel {
        BitLabel(self.0[start..end].to_vec())
    }

    /// Every label of length `len` in numeric order (`len <= 24`).
    pub fn all_of_length(len: usize) -> Vec<BitLabel> {
        assert!(len <= 24, "label space too large");
        (0..1u64 << len).map(|v| Self::from_number(v, len)).collect()
    }
}

pub(crate) fn bits_to_number(bits: &[bool]) -> Option<u64> {
    if bits.len() > 64 {
        return None;
    }
    Some(bits.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64))
}

impl fmt::Display for BitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        for &b in &self.0 {
            write!(f, "{}", if b { '1' } else { '0' })?;
        }
        Ok(())
    }
}

impl fmt::Debug for BitLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl FromStr for BitLabel {
    type Err = DecodeError;

    /// Parses a `0`/`1` string; `-` denotes the empty label.
    fn from_str(s: &str) -> Result<Self, DecodeError> {
        if s == "-" {
            return Ok(BitLabel::empty());
        }
        s.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(DecodeError::BitString(s.to_string())),
            })
            .collect::<Result<Vec<_>, _>>()
            .map(BitLabel)
    }
}

/// `⌈log₂ n⌉`, with `0` for `n <= 1`.
pub fn ceil_log2(n: usize) -> usize {
    if n <= 1 {
        0
    } else {
        (usize::BITS - (n - 1).leading_zeros()) as usize
    }
}

/// Number of bits needed to write `v` (at least 1).
pub fn bit_width(v: u64) -> usize {
    ((u64::BITS - v.leading_zeros()) as usize).max(1)
}

// ---------------------------------------------------------------------------
// Deterministic finite automata
// ---------------------------------------------------------------------------

/// A total DFA with states `0..states` over symbols `0..alphabet`.
#[derive(Clone, PartialEq, Eq)]
pub struct Dfa {
    states: usize,
    alphabet: usize,
    start: usize,
    accepting: Vec<bool>,
    delta: Vec<usize>,
}

impl Dfa {
    /// Build from `(from, symbol, to)` triples, which must cover every pair exactly once.
    pub fn new(
        states: usize,
        alphabet: usize,
        start: usize,
        accept: &[usize],
        transitions: &[(usize, usize, usize)],
    ) -> Result<Self, DecodeError> {
        if states == 0 || alphabet == 0 {
            return Err(DecodeError::InvalidDfa("needs at least one state and one symbol".into()));
        }
        if start >= states {
            return Err(DecodeError::InvalidDfa(format!("start state {start} out of range")));
        }
        let mut accepting = vec![false; states];
        for &a in accept {
            if a >= states {
                return Err(DecodeError::InvalidDfa(format!("accepting state {a} out of range")));
            }
            accepting[a] = true;
        }
        let mut delta = vec![usize::MAX; states * alphabet];
        for &(from, sym, to) in transitions {
            if from >= states || to >= states || sym >= alphabet {
                return Err(DecodeError::InvalidDfa(format!("transition {from} {sym} {to} out of range")));
            }
            let slot = &mut delta[from * alphabet + sym];
            if *slot != usize::MAX {
                return Err(DecodeError::InvalidDfa(format!("duplicate transition from {from} on {sym}")));
            }
            *slot = to;
        }
        if let Some(i) = delta.iter().position(|&t| t == usize::MAX) {
            return Err(DecodeError::InvalidDfa(format!(
                "missing transition from {} on {}",
                i / alphabet,
                i % alphabet
            )));
        }
        Ok(Dfa { states, alphabet, start, accepting, delta })
    }

    /// Explore the reachable part of a deterministic step function.
    pub fn from_step<S: Clone + Eq + Hash>(
        start: S,
        alphabet: usize,
        step: impl Fn(&S, usize) -> S,
        accept: impl Fn(&S) -> bool,
    ) -> Self {
        let mut index: HashMap<S, usize> = HashMap::new();
        let mut states = vec![start.clone()];
        index.insert(start, 0);
        let mut delta = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        let mut rows: Vec<Vec<usize>> = vec![Vec::new()];
        while let Some(i) = queue.pop_front() {
            let mut row = Vec::with_capacity(alphabet);
            for sym in 0..alphabet {
                let next = step(&states[i], sym);
                let j = match index.get(&next) {
                    Some(&j) => j,
                    None => {
                        let j = states.len();
                        index.insert(next.clone(), j);
                        states.push(next);
                        rows.push(Vec::new());
                        queue.push_back(j);
                        j
                    }
                };
                row.push(j);
            }
            rows[i] = row;
        }
        for row in &rows {
            delta.extend_from_slice(row);
        }
        let accepting = states.iter().map(accept).collect();
        Dfa { states: states.len(), alphabet, start: 0, accepting, delta }
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn alphabet(&self) -> usize {
        self.alphabet
    }

    pub fn start(&self) -> usize {
        self.start
    }

    pub fn is_accepting(&self, s: usize) -> bool {
        self.accepting[s]
    }

    pub fn accepting_states(&self) -> Vec<usize> {
        (0..self.states).filter(|&s| self.accepting[s]).collect()
    }

    pub fn next(&self, s: usize, sym: usize) -> usize {
        self.delta[s * self.alphabet + sym]
    }

    /// All transitions as `(from, symbol, to)`.
    pub fn transitions(&self) -> Vec<(usize, usize, usize)> {
        (0..self.states)
            .flat_map(|s| (0..self.alphabet).map(move |a| (s, a)))
            .map(|(s, a)| (s, a, self.next(s, a)))
            .collect()
    }

    pub fn run(&self, word: impl IntoIterator<Item = usize>) -> Result<bool, DecodeError> {
        let mut s = self.start;
        for sym in word {
            if sym >= self.alphabet {
                return Err(DecodeError::Symbol { symbol: sym, alphabet: self.alphabet });
            }
            s = self.next(s, sym);
        }
        Ok(self.accepting[s])
    }

    /// Equivalent automaton over bits for a DFA whose symbols are bit pairs
    /// `2x + y`: it reads `x` and then `y`.
    pub fn split_pairs(&self) -> Result<Dfa, DecodeError> {
        if self.alphabet != 4 {
            return Err(DecodeError::InvalidDfa("pair splitting needs a 4-symbol alphabet".into()));
        }
        Ok(Dfa::from_step(
            (self.start, None::<usize>),
            2,
            |&(s, pending), bit| match pending {
                None => (s, Some(bit)),
                Some(x) => (self.next(s, 2 * x + bit), None),
            },
            |&(s, pending)| pending.is_none() && self.accepting[s],
        ))
    }
}

impl fmt::Debug for Dfa {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Dfa(states={}, alphabet={}, start={})", self.states, self.alphabet, self.start)
    }
}

/// Run `d` on the interleaving of `x` and `y`. A 2-symbol DFA reads
/// `x1 y1 x2 y2 ...`; a 4-symbol DFA reads the pairs `2*x_i + y_i`.
pub fn dfa_decode(d: &Dfa, x: &BitLabel, y: &BitLabel) -> Result<bool, DecodeError> {
    if x.len() != y.len() {
        return Err(DecodeError::LengthMismatch(x.len(), y.len()));
    }
    let pairs = x.0.iter().zip(&y.0);
    match d.alphabet {
        2 => d.run(pairs.flat_map(|(&a, &b)| [a as usize, b as usize])),
        4 => d.run(pairs.map(|(&a, &b)| 2 * a as usize + b as usize)),
        other => Err(DecodeError::InvalidDfa(format!("interleaved decoding needs alphabet 2 or 4, got {other}"))),
    }
}

/// Three states over bit pairs: undecided (0), less (1), not-less (2).
pub fn lex_less_dfa() -> Dfa {
    let mut t = Vec::new();
    for sym in 0..4 {
        let (x, y) = (sym >> 1, sym & 1);
        let from_undecided = match (x, y) {
            (0, 1) => 1,
            (1, 0) => 2,
            _ => 0,
        };
        t.push((0, sym, from_undecided));
        t.push((1, sym, 1));
        t.push((2, sym, 2));
    }
    Dfa::new(3, 4, 0, &[1], &t).expect("well-formed")
}

/// Accepts iff the two labels are equal (`neq = true`: iff they differ).
pub fn equality_dfa(neq: bool) -> Dfa {
    let mut t = Vec::new();
    for sym in 0..4 {
        let same = sym == 0 || sym == 3;
        t.push((0, sym, if same { 0 } else { 1 }));
        t.push((1, sym, 1));
    }
    Dfa::new(2, 4, 0, if neq { &[1] } else { &[0] }, &t).expect("well-formed")
}

// ---------------------------------------------------------------------------
// Clique-width block labels
// ---------------------------------------------------------------------------

/// Symbols of the block alphabet, two bits each.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BlockSymbol {
    Zero,
    One,
    Delim,
    Pad,
}

impl BlockSymbol {
    pub fn code(self) -> [bool; 2] {
        match self {
            BlockSymbol::Zero => [false, false],
            BlockSymbol::One => [false, true],
            BlockSymbol::Delim => [true, false],
            BlockSymbol::Pad => [true, true],
        }
    }

    pub fn from_code(hi: bool, lo: bool) -> Self {
        match (hi, lo) {
            (false, false) => BlockSymbol::Zero,
            (false, true) => BlockSymbol::One,
            (true, false) => BlockSymbol::Delim,
            (true, true) => BlockSymbol::Pad,
        }
    }

    fn bit(self) -> Option<bool> {
        match self {
            BlockSymbol::Zero => Some(false),
            BlockSymbol::One => Some(true),
            _ => None,
        }
    }
}

/// Encode block symbols as bits.
pub fn encode_symbols(symbols: &[BlockSymbol]) -> BitLabel {
    BitLabel(symbols.iter().flat_map(|s| s.code()).collect())
}

/// Decode bits into block symbols (length must be even).
pub fn decode_symbols(label: &BitLabel) -> Result<Vec<BlockSymbol>, DecodeError> {
    if label.len() % 2 != 0 {
        return Err(DecodeError::Malformed(format!("odd label length {}", label.len())));
    }
    Ok(label.0.chunks(2).map(|c| BlockSymbol::from_code(c[0], c[1])).collect())
}

/// Check that a label is a sequence of `k+1`-bit blocks each closed by a
/// delimiter, followed only by padding.
pub fn validate_blocks(label: &BitLabel, k: usize) -> Result<usize, DecodeError> {
    let syms = decode_symbols(label)?;
    let mut i = 0;
    let mut blocks = 0;
    while i < syms.len() && syms[i] != BlockSymbol::Pad {
        if i + k + 2 > syms.len() {
            return Err(DecodeError::Malformed(format!("truncated block at symbol {i}")));
        }
        if syms[i..i + k + 1].iter().any(|s| s.bit().is_none()) {
            return Err(DecodeError::Malformed(format!("non-bit symbol inside block at symbol {i}")));
        }
        if syms[i + k + 1] != BlockSymbol::Delim {
            return Err(DecodeError::Malformed(format!("missing delimiter at symbol {}", i + k + 1)));
        }
        i += k + 2;
        blocks += 1;
    }
    if syms[i..].iter().any(|&s| s != BlockSymbol::Pad) {
        return Err(DecodeError::Malformed("data after padding".into()));
    }
    Ok(blocks)
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum CwPhase {
    Same,
    Diff { found: bool },
    Done(bool),
}

#[derive(Clone, PartialEq, Eq, Hash)]
struct CwState {
    phase: CwPhase,
    pos: usize,
    half: Option<(bool, bool)>,
}

/// DFA over bit pairs deciding block-label adjacency for parameter `k`: at
/// the first block whose leading bits differ, accept iff the two `k`-bit
/// tails share a 1. Labels that never differ are rejected.
pub fn cliquewidth_dfa(k: usize) -> Dfa {
    let step = move |s: &CwState, sym: usize| -> CwState {
        let (xb, yb) = (sym >> 1 == 1, sym & 1 == 1);
        if let CwPhase::Done(_) = s.phase {
            return s.clone();
        }
        let Some((xh, yh)) = s.half else {
            return CwState { half: Some((xb, yb)), ..s.clone() };
        };
        let (sx, sy) = (BlockSymbol::from_code(xh, xb), BlockSymbol::from_code(yh, yb));
        let done = |v| CwState { phase: CwPhase::Done(v), pos: 0, half: None };
        let at = |phase, pos| CwState { phase, pos, half: None };
        match (&s.phase, s.pos) {
            (CwPhase::Same, 0) => match (sx.bit(), sy.bit()) {
                (Some(a), Some(b)) if a == b => at(CwPhase::Same, 1),
                (Some(_), Some(_)) => at(CwPhase::Diff { found: false }, 1),
                _ => done(false),
            },
            (phase, p) if p <= k => match (sx.bit(), sy.bit()) {
                (Some(a), Some(b)) => {
                    let phase = match phase {
                        CwPhase::Diff { found } => CwPhase::Diff { found: *found || (a && b) },
                        other => other.clone(),
                    };
                    at(phase, p + 1)
                }
                _ => done(false),
            },
            (phase, _) => {
                if sx != BlockSymbol::Delim || sy != BlockSymbol::Delim {
                    return done(false);
                }
                match phase {
                    CwPhase::Diff { found } => done(*found),
                    _ => at(CwPhase::Same, 0),
                }
            }
        }
    };
    Dfa::from_step(
        CwState { phase: CwPhase::Same, pos: 0, half: None },
        4,
        step,
        |s| s.phase == CwPhase::Done(true),
    )
}

// ---------------------------------------------------------------------------
// Decoders and schemes
// ---------------------------------------------------------------------------

/// A label decoder: a relation over pairs of equal-length bit labels.
#[derive(Clone, Debug)]
pub enum Decoder {
    /// Accepts everything or nothing.
    Const(bool),
    /// Explicit list of accepted pairs.
    Table(BTreeSet<(BitLabel, BitLabel)>),
    /// Language-induced: accepts `(x, y)` iff `xy` is in the set.
    Language(BTreeSet<BitLabel>),
    /// Endpoint pairs `x1 x2`, `y1 y2`: accepts iff neither interval ends before the other starts.
    Interval,
    /// Regular decoder on the interleaved labels.
    Dfa(Dfa),
    /// Clique-width block labels with parameter `k`.
    CliqueWidth { k: usize, dfa: Dfa },
    /// First-order formula over labels split into equal-width numbers.
    Formula(FoBitDecoder),
    /// Polynomial-boolean system over labels split into equal-width naturals.
    Pbs(Pbs),
    /// `f` applied to the verdicts of the parts on proportional label slices.
    Combination { f: BooleanFunctionTable, parts: Vec<LabelingScheme> },
}

impl Decoder {
    pub fn accepts(&self, x: &BitLabel, y: &BitLabel) -> Result<bool, DecodeError> {
        if x.len() != y.len() {
            return Err(DecodeError::LengthMismatch(x.len(), y.len()));
        }
        match self {
            Decoder::Const(v) => Ok(*v),
            Decoder::Table(pairs) => Ok(pairs.contains(&(x.clone(), y.clone()))),
            Decoder::Language(words) => Ok(words.contains(&x.concat(y))),
            Decoder::Interval => interval_accepts(x, y),
            Decoder::Dfa(d) => dfa_decode(d, x, y),
            Decoder::CliqueWidth { k, dfa } => {
                validate_blocks(x, *k)?;
                validate_blocks(y, *k)?;
                dfa_decode(dfa, x, y)
            }
            Decoder::Formula(fo) => fo.accepts(x, y),
            Decoder::Pbs(p) => p.accepts_bits(x, y),
            Decoder::Combination { f, parts } => {
                let c: usize = parts.iter().map(|p| p.c).sum();
                let len = x.len();
                if c == 0 {
                    if len != 0 {
                        return Err(DecodeError::BadLength { len, reason: "all parts have c = 0".into() });
                    }
                } else if len % c != 0 {
                    return Err(DecodeError::BadLength { len, reason: format!("not divisible by c = {c}") });
                }
                let unit = if c == 0 { 0 } else { len / c };
                let mut args = Vec::with_capacity(parts.len());
                let mut at = 0;
                for p in parts {
                    let w = unit * p.c;
                    args.push(p.decoder.accepts(&x.slice(at, at + w), &y.slice(at, at + w))?);
                    at += w;
                }
                Ok(f.eval(&args))
            }
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Decoder::Const(_) => "const",
            Decoder::Table(_) => "table",
            Decoder::Language(_) => "language",
            Decoder::Interval => "interval",
            Decoder::Dfa(_) => "dfa",
            Decoder::CliqueWidth { .. } => "cliquewidth",
            Decoder::Formula(_) => "formula",
            Decoder::Pbs(_) => "pbs",
            Decoder::Combination { .. } => "combination",
        }
    }
}

fn interval_accepts(x: &BitLabel, y: &BitLabel) -> Result<bool, DecodeError> {
    let len = x.len();
    if len % 2 != 0 {
        return Err(DecodeError::BadLength { len, reason: "interval labels hold two equal-width numbers".into() });
    }
    let m = len / 2;
    let (x1, x2) = (&x.0[..m], &x.0[m..]);
    let (y1, y2) = (&y.0[..m], &y.0[m..]);
    // Equal-width big-endian numbers compare lexicographically.
    Ok(!(x2 < y1) && !(y2 < x1))
}

pub fn interval_decoder() -> Decoder {
    Decoder::Interval
}

pub fn cliquewidth_block_decoder(k: usize) -> Decoder {
    Decoder::CliqueWidth { k, dfa: cliquewidth_dfa(k) }
}

/// A labeling scheme `(F, c)`: graphs on `n` vertices use `c·⌈log₂ n⌉`-bit labels.
#[derive(Clone, Debug)]
pub struct LabelingScheme {
    pub decoder: Decoder,
    pub c: usize,
}

impl LabelingScheme {
    pub fn new(decoder: Decoder, c: usize) -> Self {
        LabelingScheme { decoder, c }
    }

    pub fn label_len(&self, n: usize) -> usize {
        self.c * ceil_log2(n)
    }
}

pub fn decode(s: &LabelingScheme, x: &BitLabel, y: &BitLabel) -> Result<bool, DecodeError> {
    s.decoder.accepts(x, y)
}

/// `(F1 ∧ F2, c1 + c2)` with labels split proportionally.
pub fn conjunction_decoder(s1: &LabelingScheme, s2: &LabelingScheme) -> LabelingScheme {
    combination_decoder(BooleanFunctionTable::and(), vec![s1.clone(), s2.clone()])
}

pub fn negation_decoder(s: &LabelingScheme) -> LabelingScheme {
    combination_decoder(BooleanFunctionTable::not(), vec![s.clone()])
}

/// `f` over the parts' verdicts; the label length multiplier is the sum of the parts'.
pub fn combination_decoder(f: BooleanFunctionTable, parts: Vec<LabelingScheme>) -> LabelingScheme {
    let c = parts.iter().map(|p| p.c).sum();
    LabelingScheme { decoder: Decoder::Combination { f, parts }, c }
}

// ---------------------------------------------------------------------------
// Verification
// ---------------------------------------------------------------------------

/// Which ordered pairs a verification quantifies over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairScope {
    /// Every `(u, v)` including `u = v`.
    AllPairs,
    /// Only `u != v`: loop positions are ignored.
    DistinctPairs,
}

fn check_labels(labels: &[BitLabel], n: usize, expected: Option<usize>) -> Result<(), DecodeError> {
    if labels.len() != n {
        return Err(DecodeError::LabelCount { labels: labels.len(), n });
    }
    let expected = expected.unwrap_or_else(|| labels.first().map_or(0, |l| l.len()));
    for (v, l) in labels.iter().enumerate() {
        if l.len() != expected {
            return Err(DecodeError::LabelLength { vertex: v, len: l.len(), expected });
        }
    }
    Ok(())
}

/// The relation decoded from `labels`, as a directed graph.
pub fn decode_graph(s: &LabelingScheme, labels: &[BitLabel]) -> Result<Graph, DecodeError> {
    let n = labels.len();
    check_labels(labels, n, None)?;
    let mut g = Graph::new(n, true).map_err(|e| DecodeError::Other(e.to_string()))?;
    for u in 0..n {
        for v in 0..n {
            if s.decoder.accepts(&labels[u], &labels[v])? {
                g.set_edge(u, v, true);
            }
        }
    }
    Ok(g)
}

/// Whether `labels` witnesses `g ∈ gr(S)`; labels must have `c·⌈log₂ n⌉` bits.
pub fn verify(s: &LabelingScheme, labels: &[BitLabel], g: &Graph, scope: PairScope) -> Result<bool, DecodeError> {
    io_decode_scoped(s, labels, labels, g, scope)
}

/// io-labelings: `(u,v) ∈ E(g)` iff `(ℓ_out(u), ℓ_in(v))` is accepted, over all ordered pairs.
pub fn io_decode(s: &LabelingScheme, out: &[BitLabel], inn: &[BitLabel], g: &Graph) -> Result<bool, DecodeError> {
    io_decode_scoped(s, out, inn, g, PairScope::AllPairs)
}

pub fn io_decode_scoped(
    s: &LabelingScheme,
    out: &[BitLabel],
    inn: &[BitLabel],
    g: &Graph,
    scope: PairScope,
) -> Result<bool, DecodeError> {
    let n = g.n();
    let len = s.label_len(n);
    check_labels(out, n, Some(len))?;
    check_labels(inn, n, Some(len))?;
    for u in 0..n {
        for v in 0..n {
            if u == v && scope == PairScope::DistinctPairs {
                continue;
            }
            if s.decoder.accepts(&out[u], &inn[v])? != g.has_edge(u, v) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
