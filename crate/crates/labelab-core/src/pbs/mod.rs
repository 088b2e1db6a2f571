//! Polynomial-boolean systems: polynomials `p_1..p_l` in the `2k` label
//! variables and a boolean function of the comparison matrix
//! `A_{ij} = [p_i < p_j]`. All arithmetic is exact.

mod builtins;
mod expr;
mod poly;
mod probe;
mod transform;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::boolfn::BooleanFunctionTable;
use crate::decoders::{BitLabel, DecodeError};

pub use builtins::{disk_pbs, dot_product_pbs, segment_pbs};
pub use expr::BoolExpr;
pub use poly::Polynomial;
pub use probe::{sign_pattern_probe, MAX_PROBE_LABELINGS};
pub use transform::{
    clear_denominators, clear_values, sign_split, sign_split_values, split_and_clear_values, MAX_SPLIT_POLYNOMIALS,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PbsError {
    #[error("expected {expected} values, got {given}")]
    Arity { expected: usize, given: usize },
    #[error("the variable count {0} is odd")]
    OddVariables(usize),
    #[error("polynomial {index} has {given} variables, expected {expected}")]
    PolyVars { index: usize, expected: usize, given: usize },
    #[error("boolean function has arity {given}, expected {expected}")]
    FArity { expected: usize, given: usize },
    #[error("size limit exceeded: {0}")]
    SizeLimit(String),
    #[error("label value {value} outside the bound {bound}")]
    OutOfBound { value: String, bound: String },
}

/// The boolean part of a system: a truth table or, for large `l`, an expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Connective {
    Table(BooleanFunctionTable),
    Expr { arity: usize, expr: BoolExpr },
}

impl Connective {
    pub fn arity(&self) -> usize {
        match self {
            Connective::Table(t) => t.arity(),
            Connective::Expr { arity, .. } => *arity,
        }
    }

    pub fn eval(&self, mut arg: impl FnMut(usize) -> bool) -> bool {
        match self {
            Connective::Table(t) => {
                let args: Vec<bool> = (0..t.arity()).map(&mut arg).collect();
                t.eval(&args)
            }
            Connective::Expr { expr, .. } => expr.eval(&mut arg),
        }
    }

    /// The connective as an expression (tables become an application).
    pub fn to_expr(&self) -> BoolExpr {
        match self {
            Connective::Table(t) => BoolExpr::Apply(t.clone(), (0..t.arity()).map(BoolExpr::Var).collect()),
            Connective::Expr { expr, .. } => expr.clone(),
        }
    }

    /// Argument positions the value may depend on.
    pub fn support(&self) -> Vec<usize> {
        match self {
            Connective::Table(t) => {
                let a = t.arity();
                (0..a)
                    .filter(|&i| {
                        let bit = 1usize << (a - 1 - i);
                        (0..t.table().len()).any(|idx| idx & bit == 0 && t.eval_index(idx) != t.eval_index(idx | bit))
                    })
                    .collect()
            }
            Connective::Expr { expr, .. } => {
                let mut v = Vec::new();
                expr.collect_vars(&mut v);
                v.sort_unstable();
                v.dedup();
                v
            }
        }
    }
}

/// A polynomial-boolean system over `2k` variables (`x` block, then `y` block).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pbs {
    nvars: usize,
    polys: Vec<Polynomial>,
    f: Connective,
}

impl Pbs {
    pub fn new(nvars: usize, polys: Vec<Polynomial>, f: Connective) -> Result<Self, PbsError> {
        if nvars % 2 != 0 {
            return Err(PbsError::OddVariables(nvars));
        }
        for (index, p) in polys.iter().enumerate() {
            if p.nvars() != nvars {
                return Err(PbsError::PolyVars { index, expected: nvars, given: p.nvars() });
            }
        }
        let l = polys.len();
        if f.arity() != l * l {
            return Err(PbsError::FArity { expected: l * l, given: f.arity() });
        }
        Ok(Pbs { nvars, polys, f })
    }

    /// Number of variables per label.
    pub fn k(&self) -> usize {
        self.nvars / 2
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn polys(&self) -> &[Polynomial] {
        &self.polys
    }

    pub fn connective(&self) -> &Connective {
        &self.f
    }

    fn decide<T: Ord>(&self, values: &[T]) -> bool {
        let l = self.polys.len();
        self.f.eval(|idx| values[idx / l] < values[idx % l])
    }

    fn check_len(&self, len: usize) -> Result<(), PbsError> {
        if len != self.nvars {
            return Err(PbsError::Arity { expected: self.nvars, given: len });
        }
        Ok(())
    }

    /// Evaluate over integers (`x` values then `y` values).
    pub fn eval_int(&self, a: &[BigInt]) -> Result<bool, PbsError> {
        self.check_len(a.len())?;
        let values: Vec<BigInt> = self.polys.iter().map(|p| p.eval_int(a)).collect();
        Ok(self.decide(&values))
    }

    /// Evaluate over rationals.
    pub fn eval_rat(&self, a: &[BigRational]) -> Result<bool, PbsError> {
        self.check_len(a.len())?;
        let values: Vec<BigRational> = self.polys.iter().map(|p| p.eval_rat(a)).collect();
        Ok(self.decide(&values))
    }

    /// Decoder verdict for natural-number labels `x`, `y` of `k` values each.
    pub fn accepts_nat(&self, x: &[u64], y: &[u64]) -> Result<bool, PbsError> {
        let a: Vec<BigInt> = x.iter().chain(y).map(|&v| BigInt::from(v)).collect();
        self.eval_int(&a)
    }

    /// Decoder verdict for rational labels.
    pub fn accepts_rat(&self, x: &[BigRational], y: &[BigRational]) -> Result<bool, PbsError> {
        let a: Vec<BigRational> = x.iter().chain(y).cloned().collect();
        self.eval_rat(&a)
    }

    /// Bit labels holding `k` equal-width big-endian naturals.
    pub fn accepts_bits(&self, x: &BitLabel, y: &BitLabel) -> Result<bool, DecodeError> {
        let k = self.k();
        let split = |l: &BitLabel| -> Result<Vec<BigInt>, DecodeError> {
            if k == 0 {
                return Ok(Vec::new());
            }
            if l.len() % k != 0 {
                return Err(DecodeError::BadLength { len: l.len(), reason: format!("not divisible into {k} numbers") });
            }
            let w = l.len() / k;
            Ok((0..k)
                .map(|i| {
                    let bits = &l.bits()[i * w..(i + 1) * w];
                    BigInt::from(bits.iter().fold(BigUint::zero(), |acc, &b| (acc << 1u32) + BigUint::from(b as u8)))
                })
                .collect())
        };
        let mut a = split(x)?;
        a.extend(split(y)?);
        self.eval_int(&a).map_err(|e| DecodeError::Other(e.to_string()))
    }
}

/// Whether `r` lies in `ℚ_m = { s·a/b : a, b ∈ [m], s ∈ {-1, 0, 1} }`.
pub fn in_q_m(r: &BigRational, m: &BigUint) -> bool {
    if r.is_zero() {
        return true;
    }
    let m = BigInt::from(m.clone());
    r.numer().abs() <= m && r.denom() <= &m && r.denom() >= &BigInt::one()
}

/// Size bound `s(n) = coef · n^exp` on label values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SizeBound {
    pub coef: u64,
    pub exp: u32,
}

impl SizeBound {
    pub fn at(&self, n: usize) -> u64 {
        self.coef.saturating_mul((n as u64).saturating_pow(self.exp))
    }
}

/// A PBS decoder over natural-number labels bounded by `s(n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PbsScheme {
    pub pbs: Pbs,
    pub bound: SizeBound,
}

impl PbsScheme {
    /// Verdict for labels of a graph on `n` vertices; values must lie in `[s(n)]_0`.
    pub fn accepts(&self, n: usize, x: &[u64], y: &[u64]) -> Result<bool, PbsError> {
        let b = self.bound.at(n);
        if let Some(v) = x.iter().chain(y).find(|&&v| v > b) {
            return Err(PbsError::OutOfBound { value: v.to_string(), bound: b.to_string() });
        }
        self.pbs.accepts_nat(x, y)
    }
}
