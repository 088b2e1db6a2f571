//! Plain-text file formats with line/column diagnostics.
//!
//! Every format is line based: `#` starts a comment, blank lines are
//! ignored, and the first remaining line is a header naming the format.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::boolfn::BooleanFunctionTable;
use crate::decoders::{
    cliquewidth_block_decoder, equality_dfa, lex_less_dfa, BitLabel, Decoder, Dfa, LabelingScheme,
};
use crate::graph::Graph;
use crate::logic::{fo_decoder, parse_formula, FoScheme, Semantics};
use crate::pbs::{BoolExpr, Connective, Pbs, PbsScheme, Polynomial, SizeBound};
use crate::schemes::{IntervalModel, ModuleTree, PointerLabeling, PointerMode};

/// A parse error at a 1-based line and column.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}, column {col}: {msg}")]
pub struct FormatError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

type Result<T> = std::result::Result<T, FormatError>;

/// A whitespace-separated token with its position.
#[derive(Clone, Copy, Debug)]
struct Tok<'a> {
    text: &'a str,
    line: usize,
    col: usize,
}

impl<'a> Tok<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(FormatError { line: self.line, col: self.col, msg: msg.into() })
    }

    fn parse<T: std::str::FromStr>(&self, what: &str) -> Result<T> {
        self.text.parse().or_else(|_| self.err(format!("expected {what}, found '{}'", self.text)))
    }

    fn expect(&self, word: &str) -> Result<()> {
        if self.text == word {
            Ok(())
        } else {
            self.err(format!("expected '{word}', found '{}'", self.text))
        }
    }
}

/// A non-empty content line.
#[derive(Clone, Debug)]
struct Line<'a> {
    no: usize,
    /// Text with the comment removed.
    text: &'a str,
}

impl<'a> Line<'a> {
    fn tokens(&self) -> Vec<Tok<'a>> {
        let mut out = Vec::new();
        let mut start = None;
        for (i, ch) in self.text.char_indices().chain(std::iter::once((self.text.len(), ' '))) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(i),
                (true, Some(s)) => {
                    out.push(Tok { text: &self.text[s..i], line: self.no, col: s + 1 });
                    start = None;
                }
                _ => {}
            }
        }
        out
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(FormatError { line: self.no, col: 1, msg: msg.into() })
    }

    /// Split `v: rest`, checking `v` against the expected vertex.
    fn vertex_entry(&self, expected: Option<usize>) -> Result<(usize, Vec<Tok<'a>>)> {
        let toks = self.tokens();
        let Some(first) = toks.first() else { return self.err("empty entry") };
        let Some(num) = first.text.strip_suffix(':') else {
            return first.err(format!("expected '<vertex>:', found '{}'", first.text));
        };
        let v: usize = num.parse().or_else(|_| first.err(format!("bad vertex '{num}'")))?;
        if let Some(e) = expected {
            if v != e {
                return first.err(format!("expected entry for vertex {e}, found {v}"));
            }
        }
        Ok((v, toks[1..].to_vec()))
    }
}

fn content_lines(src: &str) -> Vec<Line<'_>> {
    src.lines()
        .enumerate()
        .filter_map(|(i, l)| {
            let text = l.split('#').next().unwrap_or("");
            (!text.trim().is_empty()).then_some(Line { no: i + 1, text })
        })
        .collect()
}

fn end_err<T>(src: &str, msg: &str) -> Result<T> {
    Err(FormatError { line: src.lines().count().max(1), col: 1, msg: msg.into() })
}

/// The header tokens, checking the format keyword.
fn header<'a>(lines: &[Line<'a>], src: &str, keyword: &str) -> Result<Vec<Tok<'a>>> {
    let Some(first) = lines.first() else { return end_err(src, &format!("missing '{keyword}' header")) };
    let toks = first.tokens();
    toks[0].expect(keyword)?;
    Ok(toks)
}

fn arg<'a>(toks: &[Tok<'a>], i: usize, line: &Line<'a>, what: &str) -> Result<Tok<'a>> {
    toks.get(i).copied().map_or_else(|| line.err(format!("missing {what}")), Ok)
}

fn no_extra(toks: &[Tok<'_>], max: usize) -> Result<()> {
    match toks.get(max) {
        Some(t) => t.err(format!("unexpected '{}'", t.text)),
        None => Ok(()),
    }
}

// ---------------------------------------------------------------------------
// Graphs
// ---------------------------------------------------------------------------

/// `graph <directed|undirected> <n> [loops]`, then one `u v` per edge.
pub fn parse_graph(src: &str) -> Result<Graph> {
    let lines = content_lines(src);
    let h = header(&lines, src, "graph")?;
    let kind = arg(&h, 1, &lines[0], "directedness")?;
    let directed = match kind.text {
        "directed" => true,
        "undirected" => false,
        other => return kind.err(format!("expected 'directed' or 'undirected', found '{other}'")),
    };
    let n: usize = arg(&h, 2, &lines[0], "vertex count")?.parse("vertex count")?;
    let loops = match h.get(3) {
        None => false,
        Some(t) => {
            t.expect("loops")?;
            true
        }
    };
    no_extra(&h, 4)?;
    let mut g = Graph::new(n, directed).or_else(|e| h[2].err(e.to_string()))?;
    for line in &lines[1..] {
        let t = line.tokens();
        let u: usize = t[0].parse("vertex")?;
        let v: usize = arg(&t, 1, line, "second endpoint")?.parse("vertex")?;
        no_extra(&t, 2)?;
        for (tok, x) in [(t[0], u), (t[1], v)] {
            if x >= n {
                return tok.err(format!("vertex {x} out of range for {n} vertices"));
            }
        }
        if u == v && !loops {
            return t[0].err("loop in a graph declared without 'loops'");
        }
        g.set_edge(u, v, true);
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!(
        "graph {} {}{}\n",
        if g.is_directed() { "directed" } else { "undirected" },
        g.n(),
        if g.has_loops() { " loops" } else { "" }
    );
    for (u, v) in g.edges() {
        if g.is_directed() || u <= v {
            let _ = writeln!(s, "{u} {v}");
        }
    }
    s
}

// ---------------------------------------------------------------------------
// Labels
// ---------------------------------------------------------------------------

/// Contents of a label file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LabelFile {
    /// `labels bits <n> <len>`, entries `v: <bits>` (`-` for the empty label).
    Bits(Vec<BitLabel>),
    /// `labels io <n> <len>`, entries `v: <out> <in>`.
    Io { out: Vec<BitLabel>, inn: Vec<BitLabel> },
    /// `labels num <n> <k>`, entries `v: a1 … ak`.
    Num(Vec<Vec<u64>>),
}

fn parse_bits(t: &Tok<'_>, len: usize) -> Result<BitLabel> {
    let bits: Vec<bool> = if t.text == "-" {
        Vec::new()
    } else {
        t.text
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => t.err(format!("invalid bit '{other}'")),
            })
            .collect::<Result<_>>()?
    };
    if bits.len() != len {
        return t.err(format!("label has {} bits, header says {len}", bits.len()));
    }
    Ok(BitLabel(bits))
}

fn bits_text(l: &BitLabel) -> String {
    if l.is_empty() {
        "-".into()
    } else {
        l.to_string()
    }
}

pub fn parse_labels(src: &str) -> Result<LabelFile> {
    let lines = content_lines(src);
    let h = header(&lines, src, "labels")?;
    let kind = arg(&h, 1, &lines[0], "label kind")?;
    let n: usize = arg(&h, 2, &lines[0], "vertex count")?.parse("vertex count")?;
    let width: usize = arg(&h, 3, &lines[0], "label width")?.parse("label width")?;
    no_extra(&h, 4)?;
    if !matches!(kind.text, "bits" | "io" | "num") {
        return kind.err(format!("expected 'bits', 'io' or 'num', found '{}'", kind.text));
    }
    let entries = &lines[1..];
    if entries.len() != n {
        return match entries.get(n) {
            Some(extra) => extra.err(format!("more than {n} entries")),
            None => end_err(src, &format!("expected {n} entries, found {}", entries.len())),
        };
    }
    let mut bits = Vec::with_capacity(n);
    let mut inn = Vec::new();
    let mut nums = Vec::new();
    for (v, line) in entries.iter().enumerate() {
        let (_, t) = line.vertex_entry(Some(v))?;
        match kind.text {
            "bits" => {
                let tok = arg(&t, 0, line, "label")?;
                no_extra(&t, 1)?;
                bits.push(parse_bits(&tok, width)?);
            }
            "io" => {
                bits.push(parse_bits(&arg(&t, 0, line, "out-label")?, width)?);
                inn.push(parse_bits(&arg(&t, 1, line, "in-label")?, width)?);
                no_extra(&t, 2)?;
            }
            _ => {
                if t.len() != width {
                    return line.err(format!("expected {width} numbers, found {}", t.len()));
                }
                nums.push(t.iter().map(|x| x.parse("natural number")).collect::<Result<Vec<u64>>>()?);
            }
        }
    }
    Ok(match kind.text {
        "bits" => LabelFile::Bits(bits),
        "io" => LabelFile::Io { out: bits, inn },
        _ => LabelFile::Num(nums),
    })
}

pub fn write_labels(l: &LabelFile) -> String {
    let mut s = String::new();
    match l {
        LabelFile::Bits(ls) => {
            let _ = writeln!(s, "labels bits {} {}", ls.len(), ls.first().map_or(0, BitLabel::len));
            for (v, x) in ls.iter().enumerate() {
                let _ = writeln!(s, "{v}: {}", bits_text(x));
            }
        }
        LabelFile::Io { out, inn } => {
            let _ = writeln!(s, "labels io {} {}", out.len(), out.first().map_or(0, BitLabel::len));
            for (v, (o, i)) in out.iter().zip(inn).enumerate() {
                let _ = writeln!(s, "{v}: {} {}", bits_text(o), bits_text(i));
            }
        }
        LabelFile::Num(ls) => {
            let _ = writeln!(s, "labels num {} {}", ls.len(), ls.first().map_or(0, Vec::len));
            for (v, x) in ls.iter().enumerate() {
                let nums: Vec<String> = x.iter().map(u64::to_string).collect();
                let _ = writeln!(s, "{v}: {}", nums.join(" "));
            }
        }
    }
    s
}

// ---------------------------------------------------------------------------
// Pointer labelings
// ---------------------------------------------------------------------------

/// `pointer <or|and> <n> <k>`, entries `v: <id> | <s1> … <sk>`.
pub fn parse_pointer(src: &str) -> Result<PointerLabeling> {
    let lines = content_lines(src);
    let h = header(&lines, src, "pointer")?;
    let mt = arg(&h, 1, &lines[0], "mode")?;
    let mode = match mt.text {
        "or" => PointerMode::Or,
        "and" => PointerMode::And,
        other => return mt.err(format!("expected 'or' or 'and', found '{other}'")),
    };
    let n: usize = arg(&h, 2, &lines[0], "vertex count")?.parse("vertex count")?;
    let k: usize = arg(&h, 3, &lines[0], "slot count")?.parse("slot count")?;
    no_extra(&h, 4)?;
    let entries = &lines[1..];
    if entries.len() != n {
        return end_err(src, &format!("expected {n} entries, found {}", entries.len()));
    }
    let mut ids = Vec::with_capacity(n);
    let mut slots = Vec::with_capacity(n);
    for (v, line) in entries.iter().enumerate() {
        let (_, t) = line.vertex_entry(Some(v))?;
        ids.push(arg(&t, 0, line, "id")?.parse::<usize>("id")?);
        arg(&t, 1, line, "'|'")?.expect("|")?;
        if t.len() - 2 != k {
            return line.err(format!("expected {k} slots, found {}", t.len() - 2));
        }
        slots.push(t[2..].iter().map(|x| x.parse("id")).collect::<Result<Vec<usize>>>()?);
    }
    PointerLabeling::new(ids, slots, mode).or_else(|e| lines[0].err(e.to_string()))
}

pub fn write_pointer(l: &PointerLabeling) -> String {
    let mut s = format!("pointer {} {} {}\n", l.mode, l.n(), l.k());
    for v in 0..l.n() {
        let slots: Vec<String> = l.slots[v].iter().map(usize::to_string).collect();
        let _ = writeln!(s, "{v}: {} | {}", l.ids[v], slots.join(" "));
    }
    s
}

// ---------------------------------------------------------------------------
// DFAs and boolean functions
// ---------------------------------------------------------------------------

fn parse_dfa_lines(lines: &[Line<'_>], src: &str) -> Result<Dfa> {
    let h = header(lines, src, "dfa")?;
    let states: usize = arg(&h, 1, &lines[0], "state count")?.parse("state count")?;
    let alphabet: usize = arg(&h, 2, &lines[0], "alphabet size")?.parse("alphabet size")?;
    no_extra(&h, 3)?;
    let mut start = None;
    let mut accept = Vec::new();
    let mut trans = Vec::new();
    for line in &lines[1..] {
        let t = line.tokens();
        match t[0].text {
            "start" => {
                start = Some(arg(&t, 1, line, "start state")?.parse::<usize>("state")?);
                no_extra(&t, 2)?;
            }
            "accept" => {
                for x in &t[1..] {
                    accept.push(x.parse::<usize>("state")?);
                }
            }
            _ => {
                let from = t[0].parse("state")?;
                let sym = arg(&t, 1, line, "symbol")?.parse("symbol")?;
                let to = arg(&t, 2, line, "target state")?.parse("state")?;
                no_extra(&t, 3)?;
                trans.push((from, sym, to));
            }
        }
    }
    let Some(start) = start else { return lines[0].err("missing 'start' line") };
    Dfa::new(states, alphabet, start, &accept, &trans).or_else(|e| lines[0].err(e.to_string()))
}

/// `dfa <states> <alphabet>`, `start <s>`, `accept <s…>`, then `from symbol to` lines.
pub fn parse_dfa(src: &str) -> Result<Dfa> {
    parse_dfa_lines(&content_lines(src), src)
}

pub fn write_dfa(d: &Dfa) -> String {
    let mut s = format!("dfa {} {}\nstart {}\naccept", d.states(), d.alphabet(), d.start());
    for a in d.accepting_states() {
        let _ = write!(s, " {a}");
    }
    s.push('\n');
    for (from, sym, to) in d.transitions() {
        let _ = writeln!(s, "{from} {sym} {to}");
    }
    s
}

fn bf_from_tokens(t: &[Tok<'_>], line: &Line<'_>) -> Result<BooleanFunctionTable> {
    t[0].expect("bf")?;
    let arity: usize = arg(t, 1, line, "arity")?.parse("arity")?;
    let hex = arg(t, 2, line, "truth table")?;
    no_extra(t, 3)?;
    BooleanFunctionTable::from_hex(arity, hex.text).or_else(|e| hex.err(e.to_string()))
}

/// `bf <arity> <hex-truth-table>`.
pub fn parse_bf(src: &str) -> Result<BooleanFunctionTable> {
    let lines = content_lines(src);
    let h = header(&lines, src, "bf")?;
    if let Some(extra) = lines.get(1) {
        return extra.err("unexpected content after the table");
    }
    bf_from_tokens(&h, &lines[0])
}

pub fn write_bf(f: &BooleanFunctionTable) -> String {
    format!("bf {} {}\n", f.arity(), f.to_hex())
}

// ---------------------------------------------------------------------------
// Boolean expressions and PBS
// ---------------------------------------------------------------------------

/// Parse `a(i,j)`, `0`, `1`, `!e`, `(e & …)`, `(e | …)` for `l` polynomials.
pub fn parse_bool_expr(text: &str, l: usize, line: usize, col0: usize) -> Result<BoolExpr> {
    struct P<'a> {
        s: &'a [u8],
        pos: usize,
        l: usize,
        line: usize,
        col0: usize,
    }
    impl P<'_> {
        fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
            Err(FormatError { line: self.line, col: self.col0 + self.pos, msg: msg.into() })
        }
        fn ws(&mut self) {
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
                self.pos += 1;
            }
        }
        fn peek(&mut self) -> Option<u8> {
            self.ws();
            self.s.get(self.pos).copied()
        }
        fn eat(&mut self, c: u8) -> Result<()> {
            if self.peek() == Some(c) {
                self.pos += 1;
                Ok(())
            } else {
                self.err(format!("expected '{}'", c as char))
            }
        }
        fn num(&mut self) -> Result<usize> {
            self.ws();
            let start = self.pos;
            while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            std::str::from_utf8(&self.s[start..self.pos]).unwrap_or("").parse().or_else(|_| self.err("expected a number"))
        }
        fn expr(&mut self) -> Result<BoolExpr> {
            match self.peek() {
                Some(b'!') => {
                    self.pos += 1;
                    Ok(BoolExpr::not(self.expr()?))
                }
                Some(b'0') => {
                    self.pos += 1;
                    Ok(BoolExpr::Const(false))
                }
                Some(b'1') => {
                    self.pos += 1;
                    Ok(BoolExpr::Const(true))
                }
                Some(b'a') => {
                    self.pos += 1;
                    self.eat(b'(')?;
                    let i = self.num()?;
                    self.eat(b',')?;
                    let j = self.num()?;
                    self.eat(b')')?;
                    if i == 0 || j == 0 || i > self.l || j > self.l {
                        return self.err(format!("a({i},{j}) outside 1..={}", self.l));
                    }
                    Ok(BoolExpr::cmp(self.l, i - 1, j - 1))
                }
                Some(b'(') => {
                    self.pos += 1;
                    let mut parts = vec![self.expr()?];
                    let op = match self.peek() {
                        Some(c @ (b'&' | b'|')) => c,
                        Some(b')') => {
                            self.pos += 1;
                            return Ok(parts.pop().expect("one part"));
                        }
                        _ => return self.err("expected '&', '|' or ')'"),
                    };
                    while self.peek() == Some(op) {
                        self.pos += 1;
                        parts.push(self.expr()?);
                    }
                    self.eat(b')')?;
                    Ok(if op == b'&' { BoolExpr::And(parts) } else { BoolExpr::Or(parts) })
                }
                _ => self.err("expected an expression"),
            }
        }
    }
    let mut p = P { s: text.as_bytes(), pos: 0, l, line, col0 };
    let e = p.expr()?;
    if p.peek().is_some() {
        return p.err("trailing input");
    }
    Ok(e)
}

fn parse_poly(toks: &[Tok<'_>], nvars: usize, line: &Line<'_>) -> Result<Polynomial> {
    let mut p = Polynomial::zero(nvars);
    let mut term: Vec<Tok<'_>> = Vec::new();
    let mut flush = |term: &mut Vec<Tok<'_>>| -> Result<()> {
        if term.is_empty() {
            return Ok(());
        }
        let coeff: num_bigint::BigUint = term[0].parse("coefficient")?;
        if term.len() - 1 != nvars {
            return term[0].err(format!("term needs {nvars} exponents, found {}", term.len() - 1));
        }
        let exps = term[1..].iter().map(|t| t.parse::<u32>("exponent")).collect::<Result<Vec<_>>>()?;
        p.add_term(exps, coeff);
        term.clear();
        Ok(())
    };
    for t in toks {
        // Terms are separated by ';', possibly attached to a token.
        let (body, sep) = match t.text.strip_suffix(';') {
            Some(b) => (b, true),
            None => (t.text, false),
        };
        if !body.is_empty() {
            term.push(Tok { text: body, ..*t });
        }
        if sep {
            flush(&mut term)?;
        }
    }
    flush(&mut term)?;
    let _ = line;
    Ok(p)
}

fn parse_pbs_lines(lines: &[Line<'_>], src: &str) -> Result<Pbs> {
    let h = header(lines, src, "pbs")?;
    let nvars: usize = arg(&h, 1, &lines[0], "variable count")?.parse("variable count")?;
    let l: usize = arg(&h, 2, &lines[0], "polynomial count")?.parse("polynomial count")?;
    no_extra(&h, 3)?;
    if lines.len() < l + 2 {
        return end_err(src, &format!("expected {l} polynomial lines and a connective"));
    }
    let mut polys = Vec::with_capacity(l);
    for line in &lines[1..=l] {
        let t = line.tokens();
        t[0].expect("poly:")?;
        polys.push(parse_poly(&t[1..], nvars, line)?);
    }
    let last = &lines[l + 1];
    if let Some(extra) = lines.get(l + 2) {
        return extra.err("unexpected content after the connective");
    }
    let t = last.tokens();
    let f = match t[0].text {
        "bf" => Connective::Table(bf_from_tokens(&t, last)?),
        "bexpr" => {
            let arity: usize = arg(&t, 1, last, "arity")?.parse("arity")?;
            let body = arg(&t, 2, last, "expression")?;
            let expr = parse_bool_expr(&last.text[body.col - 1..], l, last.no, body.col)?;
            Connective::Expr { arity, expr }
        }
        other => return t[0].err(format!("expected 'bf' or 'bexpr', found '{other}'")),
    };
    Pbs::new(nvars, polys, f).or_else(|e| lines[0].err(e.to_string()))
}

/// `pbs <2k> <l>`, `l` lines `poly: coeff e1 … e2k; …`, then
/// `bf <l²> <hex>` or `bexpr <l²> <expression>`.
pub fn parse_pbs(src: &str) -> Result<Pbs> {
    parse_pbs_lines(&content_lines(src), src)
}

pub fn write_pbs(p: &Pbs) -> String {
    let l = p.polys().len();
    let mut s = format!("pbs {} {l}\n", p.nvars());
    for poly in p.polys() {
        let _ = writeln!(s, "poly: {poly}");
    }
    match p.connective() {
        Connective::Table(t) => s.push_str(&write_bf(t)),
        Connective::Expr { arity, expr } => {
            let _ = writeln!(s, "bexpr {arity} {}", expr.display(l));
        }
    }
    s
}

// ---------------------------------------------------------------------------
// Interval models and module trees
// ---------------------------------------------------------------------------

/// `intervals <n>`, entries `v: lo hi`.
pub fn parse_intervals(src: &str) -> Result<IntervalModel> {
    let lines = content_lines(src);
    let h = header(&lines, src, "intervals")?;
    let n: usize = arg(&h, 1, &lines[0], "vertex count")?.parse("vertex count")?;
    no_extra(&h, 2)?;
    let entries = &lines[1..];
    if entries.len() != n {
        return end_err(src, &format!("expected {n} entries, found {}", entries.len()));
    }
    let mut iv = Vec::with_capacity(n);
    for (v, line) in entries.iter().enumerate() {
        let (_, t) = line.vertex_entry(Some(v))?;
        let lo = arg(&t, 0, line, "lower end")?.parse("integer")?;
        let hi = arg(&t, 1, line, "upper end")?.parse("integer")?;
        no_extra(&t, 2)?;
        iv.push((lo, hi));
    }
    IntervalModel::new(iv).or_else(|e| lines[0].err(e.to_string()))
}

pub fn write_intervals(m: &IntervalModel) -> String {
    let mut s = format!("intervals {}\n", m.n());
    for (v, (lo, hi)) in m.intervals().iter().enumerate() {
        let _ = writeln!(s, "{v}: {lo} {hi}");
    }
    s
}

/// S-expression tokens with positions.
fn sexp_tokens(src: &str) -> Vec<(String, usize, usize)> {
    let mut out = Vec::new();
    for (i, raw) in src.lines().enumerate() {
        let text = raw.split('#').next().unwrap_or("");
        let mut cur = String::new();
        let mut start = 0;
        for (j, ch) in text.char_indices() {
            if ch == '(' || ch == ')' || ch.is_whitespace() {
                if !cur.is_empty() {
                    out.push((std::mem::take(&mut cur), i + 1, start + 1));
                }
                if !ch.is_whitespace() {
                    out.push((ch.to_string(), i + 1, j + 1));
                }
            } else {
                if cur.is_empty() {
                    start = j;
                }
                cur.push(ch);
            }
        }
        if !cur.is_empty() {
            out.push((cur, i + 1, start + 1));
        }
    }
    out
}

/// `(node (parts (…) (…)) (attach (v: i j) …) left right)`; a bare number is a leaf.
pub fn parse_module_tree(src: &str) -> Result<ModuleTree> {
    let toks = sexp_tokens(src);
    let mut pos = 0;
    let err = |pos: usize, msg: String| -> FormatError {
        match toks.get(pos) {
            Some((_, line, col)) => FormatError { line: *line, col: *col, msg },
            None => FormatError { line: src.lines().count().max(1), col: 1, msg },
        }
    };
    fn expect(toks: &[(String, usize, usize)], pos: &mut usize, word: &str, err: &dyn Fn(usize, String) -> FormatError) -> Result<()> {
        match toks.get(*pos) {
            Some((t, _, _)) if t == word => {
                *pos += 1;
                Ok(())
            }
            Some((t, _, _)) => Err(err(*pos, format!("expected '{word}', found '{t}'"))),
            None => Err(err(*pos, format!("expected '{word}', found end of input"))),
        }
    }
    fn number(toks: &[(String, usize, usize)], pos: &mut usize, err: &dyn Fn(usize, String) -> FormatError) -> Result<usize> {
        let Some((t, _, _)) = toks.get(*pos) else { return Err(err(*pos, "expected a number".into())) };
        let v = t.parse().map_err(|_| err(*pos, format!("expected a number, found '{t}'")))?;
        *pos += 1;
        Ok(v)
    }
    fn tree(toks: &[(String, usize, usize)], pos: &mut usize, err: &dyn Fn(usize, String) -> FormatError) -> Result<ModuleTree> {
        if toks.get(*pos).is_some_and(|(t, _, _)| t != "(") {
            return Ok(ModuleTree::Leaf(number(toks, pos, err)?));
        }
        expect(toks, pos, "(", err)?;
        expect(toks, pos, "node", err)?;
        expect(toks, pos, "(", err)?;
        expect(toks, pos, "parts", err)?;
        let mut parts = Vec::new();
        while toks.get(*pos).is_some_and(|(t, _, _)| t == "(") {
            *pos += 1;
            let mut part = Vec::new();
            while toks.get(*pos).is_some_and(|(t, _, _)| t != ")") {
                part.push(number(toks, pos, err)?);
            }
            expect(toks, pos, ")", err)?;
            parts.push(part);
        }
        expect(toks, pos, ")", err)?;
        expect(toks, pos, "(", err)?;
        expect(toks, pos, "attach", err)?;
        let mut attach = BTreeMap::new();
        while toks.get(*pos).is_some_and(|(t, _, _)| t == "(") {
            *pos += 1;
            let at = *pos;
            let Some((head, _, _)) = toks.get(*pos) else { return Err(err(at, "expected '<vertex>:'".into())) };
            let v: usize = head
                .strip_suffix(':')
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| err(at, format!("expected '<vertex>:', found '{head}'")))?;
            *pos += 1;
            let mut mods = Vec::new();
            while toks.get(*pos).is_some_and(|(t, _, _)| t != ")") {
                mods.push(number(toks, pos, err)?);
            }
            expect(toks, pos, ")", err)?;
            if attach.insert(v, mods).is_some() {
                return Err(err(at, format!("vertex {v} attached twice")));
            }
        }
        expect(toks, pos, ")", err)?;
        let left = tree(toks, pos, err)?;
        let right = tree(toks, pos, err)?;
        expect(toks, pos, ")", err)?;
        Ok(ModuleTree::Node { parts, attach, left: Box::new(left), right: Box::new(right) })
    }
    let t = tree(&toks, &mut pos, &err)?;
    if pos < toks.len() {
        return Err(err(pos, "trailing input".into()));
    }
    Ok(t)
}

pub fn write_module_tree(t: &ModuleTree) -> String {
    fn rec(t: &ModuleTree, s: &mut String) {
        match t {
            ModuleTree::Leaf(v) => {
                let _ = write!(s, "{v}");
            }
            ModuleTree::Node { parts, attach, left, right } => {
                s.push_str("(node (parts");
                for p in parts {
                    let items: Vec<String> = p.iter().map(usize::to_string).collect();
                    let _ = write!(s, " ({})", items.join(" "));
                }
                s.push_str(") (attach");
                for (v, mods) in attach {
                    let items: Vec<String> = mods.iter().map(usize::to_string).collect();
                    let _ = write!(s, " ({v}:{}{})", if items.is_empty() { "" } else { " " }, items.join(" "));
                }
                s.push_str(") ");
                rec(left, s);
                s.push(' ');
                rec(right, s);
                s.push(')');
            }
        }
    }
    let mut s = String::new();
    rec(t, &mut s);
    s.push('\n');
    s
}

// ---------------------------------------------------------------------------
// Subgraph representations
// ---------------------------------------------------------------------------

/// A representation file; the host graph is referenced by path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SgrepFile {
    pub k: usize,
    pub host: String,
    pub f: BooleanFunctionTable,
    pub ell: Vec<Vec<usize>>,
}

/// `sgrep k=<k> host=<graph-file> bf=<hex>`, entries `v: h1 … hk`.
pub fn parse_sgrep(src: &str) -> Result<SgrepFile> {
    let lines = content_lines(src);
    let h = header(&lines, src, "sgrep")?;
    let mut fields: BTreeMap<&str, Tok<'_>> = BTreeMap::new();
    for t in &h[1..] {
        let Some((key, value)) = t.text.split_once('=') else { return t.err("expected key=value") };
        if !matches!(key, "k" | "host" | "bf") {
            return t.err(format!("unknown field '{key}'"));
        }
        fields.insert(key, Tok { text: value, line: t.line, col: t.col + key.len() + 1 });
    }
    let get = |key: &str| fields.get(key).copied().map_or_else(|| lines[0].err(format!("missing '{key}='")), Ok);
    let kt = get("k")?;
    let k: usize = kt.parse("tuple length")?;
    let host = get("host")?.text.to_string();
    let bt = get("bf")?;
    let f = BooleanFunctionTable::from_hex(k * k, bt.text).or_else(|e| bt.err(e.to_string()))?;
    let mut ell = Vec::new();
    for (v, line) in lines[1..].iter().enumerate() {
        let (_, t) = line.vertex_entry(Some(v))?;
        if t.len() != k {
            return line.err(format!("expected {k} host vertices, found {}", t.len()));
        }
        ell.push(t.iter().map(|x| x.parse("host vertex")).collect::<Result<Vec<usize>>>()?);
    }
    Ok(SgrepFile { k, host, f, ell })
}

pub fn write_sgrep(k: usize, host: &str, f: &BooleanFunctionTable, ell: &[Vec<usize>]) -> String {
    let mut s = format!("sgrep k={k} host={host} bf={}\n", f.to_hex());
    for (v, t) in ell.iter().enumerate() {
        let items: Vec<String> = t.iter().map(usize::to_string).collect();
        let _ = writeln!(s, "{v}: {}", items.join(" "));
    }
    s
}

// ---------------------------------------------------------------------------
// Schemes and decoder lists
// ---------------------------------------------------------------------------

/// A scheme read from a file.
#[derive(Clone, Debug)]
pub enum SchemeFile {
    Bits(LabelingScheme),
    Fo(FoScheme),
    Pbs(PbsScheme),
}

/// One-line decoder names: `lex`, `eq`, `neq`, `interval`, `const 0|1`, `cw <k>`.
fn simple_decoder(t: &[Tok<'_>], line: &Line<'_>) -> Result<Option<Decoder>> {
    let d = match t[0].text {
        "lex" => Decoder::Dfa(lex_less_dfa()),
        "eq" => Decoder::Dfa(equality_dfa(false)),
        "neq" => Decoder::Dfa(equality_dfa(true)),
        "interval" => Decoder::Interval,
        "const" => {
            let v = arg(t, 1, line, "0 or 1")?;
            no_extra(t, 2)?;
            return Ok(Some(Decoder::Const(match v.text {
                "0" => false,
                "1" => true,
                _ => return v.err("expected 0 or 1"),
            })));
        }
        "cw" => {
            let k: usize = arg(t, 1, line, "k")?.parse("k")?;
            no_extra(t, 2)?;
            return Ok(Some(cliquewidth_block_decoder(k)));
        }
        _ => return Ok(None),
    };
    no_extra(t, 1)?;
    Ok(Some(d))
}

fn semantics(t: &Tok<'_>) -> Result<Semantics> {
    match t.text {
        "bounded" => Ok(Semantics::Bounded),
        "infinite" => Ok(Semantics::Infinite),
        other => t.err(format!("expected 'bounded' or 'infinite', found '{other}'")),
    }
}

/// Scheme files:
/// - `scheme bits <c> <decoder>` with a one-line decoder name, or
///   `scheme bits <c> dfa` followed by a DFA file body;
/// - `scheme bits <c> formula <bounded|infinite>` followed by a formula line;
/// - `scheme fo <c> <bounded|infinite>` followed by a formula line;
/// - `scheme pbs <coef> <exp>` followed by a PBS file body (`s(n) = coef·n^exp`).
pub fn parse_scheme(src: &str) -> Result<SchemeFile> {
    let lines = content_lines(src);
    let h = header(&lines, src, "scheme")?;
    let kind = arg(&h, 1, &lines[0], "scheme kind")?;
    let formula_line = |lines: &[Line<'_>]| -> Result<crate::logic::Formula> {
        let Some(line) = lines.get(1) else { return end_err(src, "missing formula line") };
        if let Some(extra) = lines.get(2) {
            return extra.err("unexpected content after the formula");
        }
        parse_formula(line.text.trim()).or_else(|e| line.err(e.to_string()))
    };
    match kind.text {
        "bits" => {
            let c: usize = arg(&h, 2, &lines[0], "c")?.parse("c")?;
            let dt = arg(&h, 3, &lines[0], "decoder")?;
            if dt.text == "dfa" {
                no_extra(&h, 4)?;
                let d = parse_dfa_lines(&lines[1..], src)?;
                return Ok(SchemeFile::Bits(LabelingScheme::new(Decoder::Dfa(d), c)));
            }
            if dt.text == "formula" {
                let sem = semantics(&arg(&h, 4, &lines[0], "semantics")?)?;
                no_extra(&h, 5)?;
                let phi = formula_line(&lines)?;
                let c32 = u32::try_from(c).or_else(|_| h[2].err("c too large"))?;
                return fo_decoder(phi, c32, sem).map(SchemeFile::Bits).or_else(|e| lines[0].err(e.to_string()));
            }
            let Some(d) = simple_decoder(&h[3..], &lines[0])? else {
                return dt.err(format!("unknown decoder '{}'", dt.text));
            };
            if let Some(extra) = lines.get(1) {
                return extra.err("unexpected content after the header");
            }
            Ok(SchemeFile::Bits(LabelingScheme::new(d, c)))
        }
        "fo" => {
            let c: u32 = arg(&h, 2, &lines[0], "c")?.parse("c")?;
            let sem = semantics(&arg(&h, 3, &lines[0], "semantics")?)?;
            no_extra(&h, 4)?;
            let phi = formula_line(&lines)?;
            FoScheme::new(phi, c, sem).map(SchemeFile::Fo).or_else(|e| lines[0].err(e.to_string()))
        }
        "pbs" => {
            let coef: u64 = arg(&h, 2, &lines[0], "size coefficient")?.parse("size coefficient")?;
            let exp: u32 = arg(&h, 3, &lines[0], "size exponent")?.parse("size exponent")?;
            no_extra(&h, 4)?;
            let pbs = parse_pbs_lines(&lines[1..], src)?;
            Ok(SchemeFile::Pbs(PbsScheme { pbs, bound: SizeBound { coef, exp } }))
        }
        other => kind.err(format!("expected 'bits', 'fo' or 'pbs', found '{other}'")),
    }
}

/// `decoders <m>` followed by `m` one-line decoder names.
pub fn parse_decoder_list(src: &str) -> Result<Vec<Decoder>> {
    let lines = content_lines(src);
    let h = header(&lines, src, "decoders")?;
    let m: usize = arg(&h, 1, &lines[0], "decoder count")?.parse("decoder count")?;
    no_extra(&h, 2)?;
    if lines.len() - 1 != m {
        return end_err(src, &format!("expected {m} decoders, found {}", lines.len() - 1));
    }
    lines[1..]
        .iter()
        .map(|line| {
            let t = line.tokens();
            simple_decoder(&t, line)?.map_or_else(|| t[0].err(format!("unknown decoder '{}'", t[0].text)), Ok)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pbs::{disk_pbs, dot_product_pbs, segment_pbs};

    #[test]
    fn graph_round_trip_and_comments() {
        let src = "# a path\ngraph undirected 3\n0 1  # first edge\n\n1 2\n";
        let g = parse_graph(src).unwrap();
        assert_eq!(g, Graph::path(3));
        assert_eq!(parse_graph(&write_graph(&g)).unwrap(), g);
        let mut d = Graph::transitive_path(3);
        d.set_edge(2, 2, true);
        assert_eq!(parse_graph(&write_graph(&d)).unwrap(), d);
    }

    #[test]
    fn graph_errors_have_positions() {
        let e = parse_graph("graph undirected 3\n0 5\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        let e = parse_graph("graph sideways 3\n").unwrap_err();
        assert_eq!((e.line, e.col), (1, 7));
        let e = parse_graph("graph directed 2\n1 1\n").unwrap_err();
        assert!(e.msg.contains("loops"));
        assert!(parse_graph("").is_err());
        assert!(parse_graph("graph directed 2\n0\n").is_err());
    }

    #[test]
    fn labels_round_trip() {
        let bits = LabelFile::Bits(vec![BitLabel(vec![true, false]), BitLabel(vec![false, false])]);
        assert_eq!(parse_labels(&write_labels(&bits)).unwrap(), bits);
        let empty = LabelFile::Bits(vec![BitLabel::empty()]);
        assert_eq!(parse_labels(&write_labels(&empty)).unwrap(), empty);
        let io = LabelFile::Io { out: vec![BitLabel(vec![true])], inn: vec![BitLabel(vec![false])] };
        assert_eq!(parse_labels(&write_labels(&io)).unwrap(), io);
        let num = LabelFile::Num(vec![vec![1, 2], vec![3, 0]]);
        assert_eq!(parse_labels(&write_labels(&num)).unwrap(), num);
        let e = parse_labels("labels bits 1 2\n0: 1x\n").unwrap_err();
        assert_eq!((e.line, e.col), (2, 4));
        let e = parse_labels("labels bits 2 1\n1: 1\n0: 0\n").unwrap_err();
        assert!(e.msg.contains("vertex 0"));
    }

    #[test]
    fn pointer_round_trip() {
        let l = PointerLabeling::new(vec![1, 2, 2], vec![vec![2, 2], vec![1, 1], vec![1, 1]], PointerMode::And).unwrap();
        assert_eq!(parse_pointer(&write_pointer(&l)).unwrap(), l);
        assert!(parse_pointer("pointer or 1 1\n0: 1 2\n").is_err());
    }

    #[test]
    fn dfa_and_bf_round_trip() {
        let d = lex_less_dfa();
        assert_eq!(parse_dfa(&write_dfa(&d)).unwrap(), d);
        let f = BooleanFunctionTable::from_fn(3, |a| a[0] ^ a[2]).unwrap();
        assert_eq!(parse_bf(&write_bf(&f)).unwrap(), f);
        assert!(parse_dfa("dfa 1 2\naccept 0\n0 0 0\n0 1 0\n").is_err());
        let e = parse_bf("bf 2 xz\n").unwrap_err();
        assert_eq!(e.col, 6);
    }

    #[test]
    fn pbs_round_trip() {
        for p in [dot_product_pbs(2), disk_pbs(), segment_pbs()] {
            assert_eq!(parse_pbs(&write_pbs(&p)).unwrap(), p);
        }
        let src = "pbs 2 2\npoly: 1 1 0\npoly: 1 0 1\nbexpr 4 (a(1,2) & !a(2,1))\n";
        let p = parse_pbs(src).unwrap();
        assert!(p.accepts_nat(&[1], &[2]).unwrap());
        assert!(!p.accepts_nat(&[2], &[1]).unwrap());
        let e = parse_pbs("pbs 2 1\npoly: 1 1 0\nbexpr 1 a(1,3)\n").unwrap_err();
        assert_eq!(e.line, 3);
    }

    #[test]
    fn intervals_and_module_trees_round_trip() {
        let m = IntervalModel::new(vec![(5, 20), (-3, 4)]).unwrap();
        assert_eq!(parse_intervals(&write_intervals(&m)).unwrap(), m);
        let src = "(node (parts (0) (1)) (attach (2: 1) (3:)) (node (parts (0)) (attach (1: 1)) 0 1) (node (parts (2)) (attach (3:)) 2 3))";
        let t = parse_module_tree(src).unwrap();
        assert_eq!(t.vertices(), vec![0, 1, 2, 3]);
        assert_eq!(parse_module_tree(&write_module_tree(&t)).unwrap(), t);
        assert_eq!(parse_module_tree("7").unwrap(), ModuleTree::Leaf(7));
        let e = parse_module_tree("(node (parts) (attach) 0)").unwrap_err();
        assert!(e.msg.contains("expected a number") || e.msg.contains("end of input"));
    }

    #[test]
    fn sgrep_round_trip() {
        let f = BooleanFunctionTable::from_fn(4, |a| a[2] && !a[1]).unwrap();
        let ell = vec![vec![0, 0], vec![1, 3]];
        let s = write_sgrep(2, "host.graph", &f, &ell);
        let r = parse_sgrep(&s).unwrap();
        assert_eq!((r.k, r.host.as_str(), &r.f, &r.ell), (2, "host.graph", &f, &ell));
        assert!(parse_sgrep("sgrep k=1 host=h bf=2\n0: 1 2\n").is_err());
    }

    #[test]
    fn scheme_files() {
        let SchemeFile::Fo(fo) = parse_scheme("scheme fo 1 bounded\nx1 = y2\n").unwrap() else { panic!() };
        assert_eq!(fo.k, 2);
        let SchemeFile::Bits(b) = parse_scheme("scheme bits 1 lex\n").unwrap() else { panic!() };
        assert_eq!(b.c, 1);
        let dfa = format!("scheme bits 2 dfa\n{}", write_dfa(&equality_dfa(false)));
        assert!(matches!(parse_scheme(&dfa).unwrap(), SchemeFile::Bits(_)));
        let pbs = format!("scheme pbs 1 1\n{}", write_pbs(&dot_product_pbs(1)));
        assert!(matches!(parse_scheme(&pbs).unwrap(), SchemeFile::Pbs(_)));
        let e = parse_scheme("scheme bits 1 wobble\n").unwrap_err();
        assert_eq!(e.col, 15);
        assert!(parse_scheme("scheme fo 1 bounded\n(x1 <\n").is_err());
        let list = parse_decoder_list("decoders 3\nlex\nneq\nconst 0\n").unwrap();
        assert_eq!(list.len(), 3);
    }
}
