//! Boolean expressions over the comparison matrix, for systems whose `l²`
//! arguments are too many for a truth table.
//!
//! Syntax: `a(i,j)` is the comparison `[p_i < p_j]` (1-based), `0`/`1` are
//! constants, `!e` negates, `(e & e & …)` and `(e | e | …)` combine.

use std::fmt;

use crate::boolfn::BooleanFunctionTable;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BoolExpr {
    /// Argument index `i·l + j` (0-based).
    Var(usize),
    Const(bool),
    Not(Box<BoolExpr>),
    And(Vec<BoolExpr>),
    Or(Vec<BoolExpr>),
    /// A truth table applied to sub-expressions.
    Apply(BooleanFunctionTable, Vec<BoolExpr>),
}

impl BoolExpr {
    /// `[p_i < p_j]` with 0-based indices in a system of `l` polynomials.
    pub fn cmp(l: usize, i: usize, j: usize) -> BoolExpr {
        BoolExpr::Var(i * l + j)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(e: BoolExpr) -> BoolExpr {
        BoolExpr::Not(Box::new(e))
    }

    pub fn eval(&self, arg: &mut impl FnMut(usize) -> bool) -> bool {
        match self {
            BoolExpr::Var(i) => arg(*i),
            BoolExpr::Const(b) => *b,
            BoolExpr::Not(e) => !e.eval(arg),
            BoolExpr::And(es) => es.iter().all(|e| e.eval(arg)),
            BoolExpr::Or(es) => es.iter().any(|e| e.eval(arg)),
            BoolExpr::Apply(t, es) => {
                let args: Vec<bool> = es.iter().map(|e| e.eval(arg)).collect();
                t.eval(&args)
            }
        }
    }

    pub fn collect_vars(&self, out: &mut Vec<usize>) {
        match self {
            BoolExpr::Var(i) => out.push(*i),
            BoolExpr::Const(_) => {}
            BoolExpr::Not(e) => e.collect_vars(out),
            BoolExpr::And(es) | BoolExpr::Or(es) | BoolExpr::Apply(_, es) => {
                es.iter().for_each(|e| e.collect_vars(out));
            }
        }
    }

    /// Replace every variable by an expression.
    pub fn substitute(&self, f: &mut impl FnMut(usize) -> BoolExpr) -> BoolExpr {
        match self {
            BoolExpr::Var(i) => f(*i),
            BoolExpr::Const(b) => BoolExpr::Const(*b),
            BoolExpr::Not(e) => BoolExpr::not(e.substitute(f)),
            BoolExpr::And(es) => BoolExpr::And(es.iter().map(|e| e.substitute(f)).collect()),
            BoolExpr::Or(es) => BoolExpr::Or(es.iter().map(|e| e.substitute(f)).collect()),
            BoolExpr::Apply(t, es) => BoolExpr::Apply(t.clone(), es.iter().map(|e| e.substitute(f)).collect()),
        }
    }

    /// Render with `l` polynomials (needed to print `a(i,j)`).
    pub fn display(&self, l: usize) -> ExprDisplay<'_> {
        ExprDisplay { e: self, l }
    }

    /// Expand `Apply` nodes into sums of products (only for tables of small arity).
    pub fn expand(&self) -> BoolExpr {
        match self {
            BoolExpr::Apply(t, es) => {
                let es: Vec<BoolExpr> = es.iter().map(|e| e.expand()).collect();
                let a = t.arity();
                let rows = (0..1usize << a)
                    .filter(|&idx| t.eval_index(idx))
                    .map(|idx| {
                        BoolExpr::And(
                            (0..a)
                                .map(|i| {
                                    if (idx >> (a - 1 - i)) & 1 == 1 {
                                        es[i].clone()
                                    } else {
                                        BoolExpr::not(es[i].clone())
                                    }
                                })
                                .collect(),
                        )
                    })
                    .collect();
                BoolExpr::Or(rows)
            }
            BoolExpr::Not(e) => BoolExpr::not(e.expand()),
            BoolExpr::And(es) => BoolExpr::And(es.iter().map(|e| e.expand()).collect()),
            BoolExpr::Or(es) => BoolExpr::Or(es.iter().map(|e| e.expand()).collect()),
            other => other.clone(),
        }
    }
}

pub struct ExprDisplay<'a> {
    e: &'a BoolExpr,
    l: usize,
}

impl fmt::Display for ExprDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let l = self.l.max(1);
        let list = |f: &mut fmt::Formatter<'_>, es: &[BoolExpr], op: &str, empty: &str| -> fmt::Result {
            if es.is_empty() {
                return f.write_str(empty);
            }
            if es.len() == 1 {
                return write!(f, "{}", es[0].display(self.l));
            }
            f.write_str("(")?;
            for (i, e) in es.iter().enumerate() {
                if i > 0 {
                    write!(f, " {op} ")?;
                }
                write!(f, "{}", e.display(self.l))?;
            }
            f.write_str(")")
        };
        match self.e {
            BoolExpr::Var(i) => write!(f, "a({},{})", i / l + 1, i % l + 1),
            BoolExpr::Const(b) => write!(f, "{}", *b as u8),
            BoolExpr::Not(e) => write!(f, "!{}", e.display(self.l)),
            BoolExpr::And(es) => list(f, es, "&", "1"),
            BoolExpr::Or(es) => list(f, es, "|", "0"),
            BoolExpr::Apply(..) => write!(f, "{}", self.e.expand().display(self.l)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn evaluation_and_expansion_agree() {
        let t = BooleanFunctionTable::from_fn(2, |a| a[0] ^ a[1]).unwrap();
        let e = BoolExpr::Apply(t, vec![BoolExpr::Var(0), BoolExpr::not(BoolExpr::Var(3))]);
        let x = e.expand();
        for bits in 0..16usize {
            let mut get = |i: usize| (bits >> i) & 1 == 1;
            let direct = e.eval(&mut get);
            assert_eq!(direct, x.eval(&mut get));
        }
    }

    #[test]
    fn display_uses_one_based_pairs() {
        let e = BoolExpr::And(vec![BoolExpr::cmp(4, 0, 3), BoolExpr::not(BoolExpr::cmp(4, 1, 2))]);
        assert_eq!(e.display(4).to_string(), "(a(1,4) & !a(2,3))");
    }
}
