//! First-order label decoders over signatures `σ ⊆ {<, +, ×}`.
//!
//! Free variables are `x1..xk` (first label) and `y1..yk` (second label);
//! `z1, z2, ...` are bound. Constants: `c0` (zero), `c1` (one) and `cm` (the
//! largest universe element).

mod atoms;
mod eval;
mod fo;
mod guard;
mod linear;
mod parse;
mod qe;

use std::fmt;

use thiserror::Error;

pub use atoms::{atoms_decompose, AtomDecomposition};
pub use eval::{eval_bounded, eval_infinite, eval_infinite_u64, Assignment};
pub use fo::{fo_decoder, FoBitDecoder, FoScheme, Semantics};
pub use guard::guard_transform;
pub use linear::{normalize_linear_atom, LinearNormalization};
pub use parse::parse_formula;
pub use qe::qe_order;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("value {value} outside the universe [0, {bound}]")]
    OutOfUniverse { value: u64, bound: u64 },
    #[error("assignment has {given} values, formula needs {expected}")]
    AssignmentLength { expected: usize, given: usize },
    #[error("unbound variable {0}")]
    Unbound(Var),
    #[error("operation requires a quantifier-free formula")]
    Quantified,
    #[error("operation forbids arithmetic, found {0}")]
    Arithmetic(String),
    #[error("atom is not linear: {0}")]
    NonLinear(String),
    #[error("operation requires an atomic formula")]
    NotAtomic,
    #[error("variable z{0} is quantified twice on one path")]
    Rebound(usize),
    #[error("universe bound must be at least 1")]
    EmptyUniverse,
    #[error("domain of {0} label vectors exceeds the enumeration limit")]
    DomainTooLarge(u128),
    #[error("formula has {0} atoms; truth tables are limited to 24")]
    TooManyAtoms(usize),
    #[error("label of {len} bits cannot be split into {k} numbers")]
    LabelSplit { len: usize, k: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    X(usize),
    Y(usize),
    Z(usize),
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Var::X(i) => write!(f, "x{i}"),
            Var::Y(i) => write!(f, "y{i}"),
            Var::Z(i) => write!(f, "z{i}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Const {
    C0,
    C1,
    Cm,
}

impl fmt::Display for Const {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Const::C0 => "c0",
            Const::C1 => "c1",
            Const::Cm => "cm",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Var(Var),
    Const(Const),
    Add(Box<Term>, Box<Term>),
    Mul(Box<Term>, Box<Term>),
}

impl Term {
    pub fn x(i: usize) -> Term {
        Term::Var(Var::X(i))
    }

    pub fn y(i: usize) -> Term {
        Term::Var(Var::Y(i))
    }

    pub fn z(i: usize) -> Term {
        Term::Var(Var::Z(i))
    }

    pub fn c(c: Const) -> Term {
        Term::Const(c)
    }

    pub fn add(a: Term, b: Term) -> Term {
        Term::Add(Box::new(a), Box::new(b))
    }

    pub fn mul(a: Term, b: Term) -> Term {
        Term::Mul(Box::new(a), Box::new(b))
    }

    pub fn is_leaf(&self) -> bool {
        matches!(self, Term::Var(_) | Term::Const(_))
    }

    pub fn has_arithmetic(&self) -> bool {
        !self.is_leaf()
    }

    fn visit_vars(&self, out: &mut Vec<Var>) {
        match self {
            Term::Var(v) => out.push(*v),
            Term::Const(_) => {}
            Term::Add(a, b) | Term::Mul(a, b) => {
                a.visit_vars(out);
                b.visit_vars(out);
            }
        }
    }

    fn map_vars(&self, f: &impl Fn(Var) -> Var) -> Term {
        match self {
            Term::Var(v) => Term::Var(f(*v)),
            Term::Const(c) => Term::Const(*c),
            Term::Add(a, b) => Term::add(a.map_vars(f), b.map_vars(f)),
            Term::Mul(a, b) => Term::mul(a.map_vars(f), b.map_vars(f)),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => write!(f, "{v}"),
            Term::Const(c) => write!(f, "{c}"),
            Term::Add(a, b) => write!(f, "({a} + {b})"),
            Term::Mul(a, b) => write!(f, "({a} * {b})"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    Lt(Term, Term),
    Eq(Term, Term),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Exists(usize, Box<Formula>),
    Forall(usize, Box<Formula>),
}

impl Formula {
    pub fn lt(a: Term, b: Term) -> Formula {
        Formula::Lt(a, b)
    }

    pub fn eq(a: Term, b: Term) -> Formula {
        Formula::Eq(a, b)
    }

    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn exists(z: usize, f: Formula) -> Formula {
        Formula::Exists(z, Box::new(f))
    }

    pub fn forall(z: usize, f: Formula) -> Formula {
        Formula::Forall(z, Box::new(f))
    }

    /// The contradiction `c0 < c0`.
    pub fn falsum() -> Formula {
        Formula::Lt(Term::c(Const::C0), Term::c(Const::C0))
    }

    /// The tautology `!c0 < c0`.
    pub fn verum() -> Formula {
        Formula::not(Formula::falsum())
    }

    /// Left-nested conjunction; the empty conjunction is [`Formula::verum`].
    pub fn and_all(fs: Vec<Formula>) -> Formula {
        fs.into_iter().reduce(Formula::and).unwrap_or_else(Formula::verum)
    }

    /// Left-nested disjunction; the empty disjunction is [`Formula::falsum`].
    pub fn or_all(fs: Vec<Formula>) -> Formula {
        fs.into_iter().reduce(Formula::or).unwrap_or_else(Formula::falsum)
    }

    pub fn is_atom(&self) -> bool {
        matches!(self, Formula::Lt(..) | Formula::Eq(..))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::Lt(..) | Formula::Eq(..) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(a, b) | Formula::Or(a, b) => a.is_quantifier_free() && b.is_quantifier_free(),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn has_arithmetic(&self) -> bool {
        match self {
            Formula::Lt(a, b) | Formula::Eq(a, b) => a.has_arithmetic() || b.has_arithmetic(),
            Formula::Not(f) | Formula::Exists(_, f) | Formula::Forall(_, f) => f.has_arithmetic(),
            Formula::And(a, b) | Formula::Or(a, b) => a.has_arithmetic() || b.has_arithmetic(),
        }
    }

    /// Every variable occurrence, in left-to-right order.
    pub fn variables(&self) -> Vec<Var> {
        let mut out = Vec::new();
        self.visit_vars(&mut out);
        out
    }

    fn visit_vars(&self, out: &mut Vec<Var>) {
        match self {
            Formula::Lt(a, b) | Formula::Eq(a, b) => {
                a.visit_vars(out);
                b.visit_vars(out);
            }
            Formula::Not(f) => f.visit_vars(out),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.visit_vars(out);
                b.visit_vars(out);
            }
            Formula::Exists(z, f) | Formula::Forall(z, f) => {
                out.push(Var::Z(*z));
                f.visit_vars(out);
            }
        }
    }

    /// Free arity `k`: the largest index among the `x` and `y` variables.
    pub fn arity(&self) -> usize {
        self.variables()
            .into_iter()
            .map(|v| match v {
                Var::X(i) | Var::Y(i) => i,
                Var::Z(_) => 0,
            })
            .max()
            .unwrap_or(0)
    }

    /// Rename variables with `f`.
    pub fn map_vars(&self, f: &impl Fn(Var) -> Var) -> Formula {
        match self {
            Formula::Lt(a, b) => Formula::Lt(a.map_vars(f), b.map_vars(f)),
            Formula::Eq(a, b) => Formula::Eq(a.map_vars(f), b.map_vars(f)),
            Formula::Not(g) => Formula::not(g.map_vars(f)),
            Formula::And(a, b) => Formula::and(a.map_vars(f), b.map_vars(f)),
            Formula::Or(a, b) => Formula::or(a.map_vars(f), b.map_vars(f)),
            Formula::Exists(z, g) => match f(Var::Z(*z)) {
                Var::Z(w) => Formula::exists(w, g.map_vars(f)),
                _ => Formula::exists(*z, g.map_vars(f)),
            },
            Formula::Forall(z, g) => match f(Var::Z(*z)) {
                Var::Z(w) => Formula::forall(w, g.map_vars(f)),
                _ => Formula::forall(*z, g.map_vars(f)),
            },
        }
    }

    /// Check that no bound variable is quantified twice on a root-to-atom
    /// path and that every `z` occurrence is bound.
    pub fn check_binding(&self) -> Result<(), LogicError> {
        fn term(t: &Term, bound: &[usize]) -> Result<(), LogicError> {
            match t {
                Term::Var(Var::Z(z)) if !bound.contains(z) => Err(LogicError::Unbound(Var::Z(*z))),
                Term::Add(a, b) | Term::Mul(a, b) => {
                    term(a, bound)?;
                    term(b, bound)
                }
                _ => Ok(()),
            }
        }
        fn rec(f: &Formula, bound: &mut Vec<usize>) -> Result<(), LogicError> {
            match f {
                Formula::Lt(a, b) | Formula::Eq(a, b) => {
                    term(a, bound)?;
                    term(b, bound)
                }
                Formula::Not(g) => rec(g, bound),
                Formula::And(a, b) | Formula::Or(a, b) => {
                    rec(a, bound)?;
                    rec(b, bound)
                }
                Formula::Exists(z, g) | Formula::Forall(z, g) => {
                    if bound.contains(z) {
                        return Err(LogicError::Rebound(*z));
                    }
                    bound.push(*z);
                    let r = rec(g, bound);
                    bound.pop();
                    r
                }
            }
        }
        rec(self, &mut Vec::new())
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Lt(a, b) => write!(f, "{a} < {b}"),
            Formula::Eq(a, b) => write!(f, "{a} = {b}"),
            Formula::Not(g) => write!(f, "!{g}"),
            Formula::And(a, b) => write!(f, "({a} & {b})"),
            Formula::Or(a, b) => write!(f, "({a} | {b})"),
            Formula::Exists(z, g) => write!(f, "E z{z} . {g}"),
            Formula::Forall(z, g) => write!(f, "A z{z} . {g}"),
        }
    }
}

/// The interval-intersection formula `!(x2 < y1 | y2 < x1)`.
pub fn interval_formula() -> Formula {
    Formula::not(Formula::or(
        Formula::lt(Term::x(2), Term::y(1)),
        Formula::lt(Term::y(2), Term::x(1)),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_round_trips_through_parser() {
        let samples = [
            "!(x2 < y1 | y2 < x1)",
            "E z1 . (x1 < z1 & z1 < y1)",
            "A z1 . !((x1 + c1) * z1) = cm",
            "((x1 * y1) < x2 | x1 = y1)",
        ];
        for s in samples {
            let f = parse_formula(s).unwrap();
            assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
        }
    }

    #[test]
    fn arity_and_binding() {
        let f = parse_formula("E z1 . (x1 < z1 & z1 < y3)").unwrap();
        assert_eq!(f.arity(), 3);
        f.check_binding().unwrap();
        let g = parse_formula("E z1 . E z1 . x1 < z1").unwrap();
        assert_eq!(g.check_binding(), Err(LogicError::Rebound(1)));
        let h = parse_formula("x1 < z2").unwrap();
        assert!(h.check_binding().is_err());
    }
}
