//! Quantifier elimination for formulas over `{<, =}`.
//!
//! Formulas are translated into difference constraints `a - b ≤ k` over the
//! variables and the constants `c0`, `c1`, `cm`. A bound variable is
//! eliminated clause by clause from a disjunctive normal form: every lower
//! bound is paired with every upper bound (including the universe bounds
//! `c0 ≤ z ≤ cm`), which is exact over the integers. Universal quantifiers
//! are handled as `¬∃¬`.
//!
//! The result is rendered with `+ c1` chains: `a - b ≤ -2` becomes
//! `((a + c1) < b & !a = cm)`, where the guard rules out the overflow of
//! `a + c1` in the bounded structure. The output is therefore equivalent to
//! the input in every bounded structure `N_n`.

use super::{Const, Formula, LogicError, Term, Var};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
enum Leaf {
    C0,
    C1,
    Cm,
    V(Var),
}

impl Leaf {
    fn term(self) -> Term {
        match self {
            Leaf::C0 => Term::c(Const::C0),
            Leaf::C1 => Term::c(Const::C1),
            Leaf::Cm => Term::c(Const::Cm),
            Leaf::V(v) => Term::Var(v),
        }
    }
}

/// `a - b ≤ k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct Con {
    a: Leaf,
    b: Leaf,
    k: i64,
}

impl Con {
    fn negate(self) -> Con {
        Con { a: self.b, b: self.a, k: -self.k - 1 }
    }
}

type Clause = Vec<Con>;
type Dnf = Vec<Clause>;

fn leaf(t: &Term) -> Result<Leaf, LogicError> {
    Ok(match t {
        Term::Var(v) => Leaf::V(*v),
        Term::Const(Const::C0) => Leaf::C0,
        Term::Const(Const::C1) => Leaf::C1,
        Term::Const(Const::Cm) => Leaf::Cm,
        other => return Err(LogicError::Arithmetic(other.to_string())),
    })
}

/// Literal `a < b` or `a = b`, possibly negated, as a DNF.
fn literal(f: &Formula, positive: bool) -> Result<Dnf, LogicError> {
    match f {
        Formula::Lt(p, q) => {
            let c = Con { a: leaf(p)?, b: leaf(q)?, k: -1 };
            Ok(vec![vec![if positive { c } else { c.negate() }]])
        }
        Formula::Eq(p, q) => {
            let (a, b) = (leaf(p)?, leaf(q)?);
            let le = Con { a, b, k: 0 };
            let ge = Con { a: b, b: a, k: 0 };
            Ok(if positive { vec![vec![le, ge]] } else { vec![vec![le.negate()], vec![ge.negate()]] })
        }
        _ => unreachable!("literal called on an atom"),
    }
}

fn conjoin(x: Dnf, y: Dnf) -> Dnf {
    let mut out = Vec::new();
    for cx in &x {
        for cy in &y {
            let mut c = cx.clone();
            c.extend(cy.iter().copied());
            if let Some(c) = simplify(c) {
                out.push(c);
            }
        }
    }
    dedup(out)
}

fn disjoin(mut x: Dnf, y: Dnf) -> Dnf {
    x.extend(y);
    dedup(x)
}

fn dedup(d: Dnf) -> Dnf {
    let mut out: Dnf = Vec::new();
    for c in d {
        if !out.contains(&c) {
            out.push(c);
        }
    }
    // A tautological clause absorbs the whole disjunction.
    if out.iter().any(|c| c.is_empty()) {
        return vec![Vec::new()];
    }
    out
}

fn negate(d: Dnf) -> Dnf {
    let mut acc: Dnf = vec![Vec::new()];
    for clause in d {
        let alternatives: Dnf = clause.into_iter().map(|c| vec![c.negate()]).collect();
        acc = conjoin(acc, alternatives);
    }
    acc
}

/// DNF of `f` (pushing negation inward when `positive` is false).
fn to_dnf(f: &Formula, positive: bool) -> Result<Dnf, LogicError> {
    match f {
        Formula::Lt(..) | Formula::Eq(..) => literal(f, positive),
        Formula::Not(g) => to_dnf(g, !positive),
        Formula::And(a, b) if positive => Ok(conjoin(to_dnf(a, true)?, to_dnf(b, true)?)),
        Formula::And(a, b) => Ok(disjoin(to_dnf(a, false)?, to_dnf(b, false)?)),
        Formula::Or(a, b) if positive => Ok(disjoin(to_dnf(a, true)?, to_dnf(b, true)?)),
        Formula::Or(a, b) => Ok(conjoin(to_dnf(a, false)?, to_dnf(b, false)?)),
        Formula::Exists(z, g) => {
            let d = eliminate(*z, to_dnf(g, true)?);
            Ok(if positive { d } else { negate(d) })
        }
        Formula::Forall(z, g) => {
            // ∀z g = ¬∃z ¬g.
            let d = eliminate(*z, to_dnf(g, false)?);
            Ok(if positive { negate(d) } else { d })
        }
    }
}

fn eliminate(z: usize, d: Dnf) -> Dnf {
    let zl = Leaf::V(Var::Z(z));
    let mut out = Vec::new();
    for clause in d {
        let mut rest: Clause = clause.iter().copied().filter(|c| c.a != zl && c.b != zl).collect();
        // Lower bounds `a - z ≤ k` and upper bounds `z - b ≤ k`, with the universe bounds.
        let mut lower: Vec<(Leaf, i64)> = clause.iter().filter(|c| c.b == zl && c.a != zl).map(|c| (c.a, c.k)).collect();
        let mut upper: Vec<(Leaf, i64)> = clause.iter().filter(|c| c.a == zl && c.b != zl).map(|c| (c.b, c.k)).collect();
        lower.push((Leaf::C0, 0));
        upper.push((Leaf::Cm, 0));
        for &(a, k1) in &lower {
            for &(b, k2) in &upper {
                rest.push(Con { a, b, k: k1 + k2 });
            }
        }
        if let Some(c) = simplify(rest) {
            out.push(c);
        }
    }
    dedup(out)
}

/// Facts true in every bounded structure: `c1 = c0 + 1`, `1 ≤ cm`, and every
/// variable lies in `[c0, cm]`.
fn background(leaves: &[Leaf]) -> Vec<Con> {
    let mut bg = vec![
        Con { a: Leaf::C1, b: Leaf::C0, k: 1 },
        Con { a: Leaf::C0, b: Leaf::C1, k: -1 },
        Con { a: Leaf::C0, b: Leaf::Cm, k: -1 },
        Con { a: Leaf::C1, b: Leaf::Cm, k: 0 },
    ];
    for &l in leaves {
        if let Leaf::V(_) = l {
            bg.push(Con { a: l, b: Leaf::Cm, k: 0 });
            bg.push(Con { a: Leaf::C0, b: l, k: 0 });
        }
    }
    bg
}

/// All-pairs shortest paths; `dist[b][a]` bounds `a - b`. `None` if the
/// constraints are contradictory.
fn closure(leaves: &[Leaf], cons: &[Con]) -> Option<Vec<Vec<Option<i64>>>> {
    let idx = |l: Leaf| leaves.iter().position(|&m| m == l).expect("leaf registered");
    let m = leaves.len();
    let mut dist = vec![vec![None; m]; m];
    for (i, row) in dist.iter_mut().enumerate() {
        row[i] = Some(0);
    }
    let relax = |slot: &mut Option<i64>, w: i64| {
        if slot.map_or(true, |d| w < d) {
            *slot = Some(w);
        }
    };
    for c in cons {
        relax(&mut dist[idx(c.b)][idx(c.a)], c.k);
    }
    for via in 0..m {
        for i in 0..m {
            let Some(d1) = dist[i][via] else { continue };
            for j in 0..m {
                if let Some(d2) = dist[via][j] {
                    relax(&mut dist[i][j], d1 + d2);
                }
            }
        }
    }
    if (0..m).any(|i| dist[i][i].is_some_and(|d| d < 0)) {
        None
    } else {
        Some(dist)
    }
}

fn leaves_of(cons: &[Con]) -> Vec<Leaf> {
    let mut leaves = vec![Leaf::C0, Leaf::C1, Leaf::Cm];
    for c in cons {
        for l in [c.a, c.b] {
            if !leaves.contains(&l) {
                leaves.push(l);
            }
        }
    }
    leaves
}

/// Drop contradictory clauses (`None`) and constraints implied by the rest.
fn simplify(clause: Clause) -> Option<Clause> {
    let leaves = leaves_of(&clause);
    let bg = background(&leaves);
    let mut all = clause.clone();
    all.extend(bg.iter().copied());
    closure(&leaves, &all)?;
    let mut kept = clause;
    let mut i = 0;
    while i < kept.len() {
        let c = kept[i];
        let mut others: Vec<Con> = kept.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &d)| d).collect();
        others.extend(bg.iter().copied());
        let dist = closure(&leaves, &others).expect("subset of a consistent set");
        let ia = leaves.iter().position(|&l| l == c.a).expect("leaf");
        let ib = leaves.iter().position(|&l| l == c.b).expect("leaf");
        if dist[ib][ia].is_some_and(|d| d <= c.k) {
            kept.remove(i);
        } else {
            i += 1;
        }
    }
    Some(kept)
}

fn chain(a: Leaf, j: i64) -> Term {
    (0..j).fold(a.term(), |t, _| Term::add(t, Term::c(Const::C1)))
}

fn render_con(c: Con) -> Formula {
    match c.k {
        0 => Formula::not(Formula::lt(c.b.term(), c.a.term())),
        -1 => Formula::lt(c.a.term(), c.b.term()),
        k if k < -1 => {
            // a + j < b with j = -k - 1, guarded so that no partial sum overflows.
            let j = -k - 1;
            let mut parts = vec![Formula::lt(chain(c.a, j), c.b.term())];
            for i in 0..j {
                parts.push(Formula::not(Formula::eq(chain(c.a, i), Term::c(Const::Cm))));
            }
            Formula::and_all(parts)
        }
        _ => Formula::not(render_con(c.negate())),
    }
}

fn render_clause(clause: &Clause) -> Formula {
    let mut used = vec![false; clause.len()];
    let mut parts = Vec::new();
    for i in 0..clause.len() {
        if used[i] {
            continue;
        }
        let c = clause[i];
        if c.k == 0 {
            if let Some(j) = (i + 1..clause.len()).find(|&j| !used[j] && clause[j] == Con { a: c.b, b: c.a, k: 0 }) {
                used[j] = true;
                parts.push(Formula::eq(c.a.term(), c.b.term()));
                continue;
            }
        }
        parts.push(render_con(c));
    }
    Formula::and_all(parts)
}

fn first_arithmetic(f: &Formula) -> LogicError {
    match to_dnf(f, true) {
        Err(e) => e,
        Ok(_) => LogicError::Arithmetic(f.to_string()),
    }
}

/// Eliminate all quantifiers from a formula over `{<, =}`; the result uses
/// `<`, `=`, `+` and the constants, and is equivalent in every `N_n`.
pub fn qe_order(phi: &Formula) -> Result<Formula, LogicError> {
    phi.check_binding()?;
    if phi.is_quantifier_free() {
        if phi.has_arithmetic() {
            return Err(first_arithmetic(phi));
        }
        return Ok(phi.clone());
    }
    let dnf = to_dnf(phi, true)?;
    Ok(match dnf.as_slice() {
        [] => Formula::falsum(),
        [c] if c.is_empty() => Formula::verum(),
        _ => Formula::or_all(dnf.iter().map(render_clause).collect()),
    })
}
