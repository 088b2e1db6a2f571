//! Normal form for linear atoms: a two-number relabeling under which the
//! atom becomes `x1 < y2` (or `x1 = y2`).
//!
//! A linear atom `Σ a_i x_i + b_i y_i + s ◦ Σ c_i x_i + d_i y_i + t` is
//! rearranged to `l(x) ◦ r(y)` with `l(x) = Σ (a_i - c_i) x_i` and
//! `r(y) = Σ (d_i - b_i) y_i + (t - s)`. Each label `u` is mapped to the ranks
//! of `l(u)` and `r(u)` within the sorted set of all values either side can
//! take over `[n^c]_0^k`. Evaluation is over `ℕ` (no overflow).

use std::collections::BTreeSet;

use super::{Const, Formula, LogicError, Term, Var};

/// Largest number of label vectors enumerated to build the value set.
pub const MAX_DOMAIN: u128 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearNormalization {
    /// Coefficients of `l` on `x_1..x_k`.
    pub left: Vec<i128>,
    /// Coefficients of `r` on `y_1..y_k`.
    pub right: Vec<i128>,
    /// Constant of `r`.
    pub offset: i128,
    /// `true` for `<`, `false` for `=`.
    pub strict: bool,
    /// Universe bound `n^c`.
    pub bound: u64,
    /// Sorted distinct values of `l` and `r` over the universe.
    pub values: Vec<i128>,
}

#[derive(Default)]
struct Linear {
    x: Vec<i128>,
    y: Vec<i128>,
    constant: i128,
}

impl Linear {
    fn add_var(&mut self, v: Var, sign: i128) -> Result<(), LogicError> {
        let (vec, i) = match v {
            Var::X(i) => (&mut self.x, i),
            Var::Y(i) => (&mut self.y, i),
            Var::Z(_) => return Err(LogicError::Unbound(v)),
        };
        if vec.len() < i {
            vec.resize(i, 0);
        }
        vec[i - 1] += sign;
        Ok(())
    }
}

fn linearize(t: &Term, sign: i128, bound: u64, out: &mut Linear) -> Result<(), LogicError> {
    match t {
        Term::Var(v) => out.add_var(*v, sign)?,
        Term::Const(Const::C0) => {}
        Term::Const(Const::C1) => out.constant += sign,
        Term::Const(Const::Cm) => out.constant += sign * bound as i128,
        Term::Add(a, b) => {
            linearize(a, sign, bound, out)?;
            linearize(b, sign, bound, out)?;
        }
        Term::Mul(..) => return Err(LogicError::NonLinear(t.to_string())),
    }
    Ok(())
}

fn dot(coeffs: &[i128], v: &[u64]) -> i128 {
    coeffs.iter().zip(v).map(|(&c, &x)| c * x as i128).sum()
}

impl LinearNormalization {
    pub fn k(&self) -> usize {
        self.left.len()
    }

    /// `l(x)`.
    pub fn lhs(&self, x: &[u64]) -> i128 {
        dot(&self.left, x)
    }

    /// `r(y)`.
    pub fn rhs(&self, y: &[u64]) -> i128 {
        dot(&self.right, y) + self.offset
    }

    /// Whether the atom holds for labels `x`, `y` (exact arithmetic).
    pub fn holds(&self, x: &[u64], y: &[u64]) -> bool {
        let (l, r) = (self.lhs(x), self.rhs(y));
        if self.strict {
            l < r
        } else {
            l == r
        }
    }

    fn rank(&self, v: i128) -> u64 {
        self.values.binary_search(&v).expect("value in the enumerated set") as u64 + 1
    }

    /// The two-number label `(rank l(u), rank r(u))`, ranks starting at 1.
    pub fn transform(&self, u: &[u64]) -> (u64, u64) {
        (self.rank(self.lhs(u)), self.rank(self.rhs(u)))
    }

    /// The decoder of the normal form, `x1 < y2` or `x1 = y2`.
    pub fn normal_form(&self) -> Formula {
        let (a, b) = (Term::x(1), Term::y(2));
        if self.strict {
            Formula::lt(a, b)
        } else {
            Formula::eq(a, b)
        }
    }
}

/// Normalize a linear atom for labels over `[n^c]_0^k`, `k` the atom's arity.
pub fn normalize_linear_atom(atom: &Formula, n: u64, c: u32) -> Result<LinearNormalization, LogicError> {
    let (lhs, rhs, strict) = match atom {
        Formula::Lt(a, b) => (a, b, true),
        Formula::Eq(a, b) => (a, b, false),
        _ => return Err(LogicError::NotAtomic),
    };
    if n == 0 {
        return Err(LogicError::EmptyUniverse);
    }
    let bound = n.checked_pow(c).ok_or(LogicError::DomainTooLarge(u128::MAX))?;
    let k = atom.arity();
    let mut lin = Linear::default();
    linearize(lhs, 1, bound, &mut lin)?;
    linearize(rhs, -1, bound, &mut lin)?;
    lin.x.resize(k, 0);
    lin.y.resize(k, 0);
    // lhs - rhs ◦ 0 becomes l(x) ◦ r(y) with l = x-part, r = -(y-part) - constant.
    let left = lin.x;
    let right: Vec<i128> = lin.y.iter().map(|&b| -b).collect();
    let offset = -lin.constant;
    let domain = (bound as u128 + 1).checked_pow(k as u32).unwrap_or(u128::MAX);
    if domain > MAX_DOMAIN {
        return Err(LogicError::DomainTooLarge(domain));
    }
    let mut norm = LinearNormalization { left, right, offset, strict, bound, values: Vec::new() };
    let mut values = BTreeSet::new();
    let mut u = vec![0u64; k];
    loop {
        values.insert(norm.lhs(&u));
        values.insert(norm.rhs(&u));
        let Some(pos) = u.iter().rposition(|&v| v < bound) else { break };
        u[pos] += 1;
        u[pos + 1..].iter_mut().for_each(|v| *v = 0);
    }
    norm.values = values.into_iter().collect();
    Ok(norm)
}
