//! Explicit truth tables for k-ary and k²-ary boolean functions.
//!
//! Bit `i` of a table holds `f` applied to the big-endian binary expansion of
//! `i`: the first argument is the most significant bit. A `k x k` argument
//! matrix is flattened row by row.

use std::fmt;

use thiserror::Error;

/// Largest arity for which a table is materialised.
pub const MAX_ARITY: usize = 24;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoolFnError {
    #[error("arity {0} exceeds the table limit {MAX_ARITY}")]
    ArityTooLarge(usize),
    #[error("expected {expected} arguments, got {given}")]
    ArgumentCount { expected: usize, given: usize },
    #[error("arity {0} is not a perfect square")]
    NotSquare(usize),
    #[error("hex table has {given} digits, expected {expected}")]
    HexLength { expected: usize, given: usize },
    #[error("invalid hex digit {0:?}")]
    HexDigit(char),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BooleanFunctionTable {
    arity: usize,
    table: Vec<bool>,
}

impl BooleanFunctionTable {
    /// Tabulate `f` over all `2^arity` argument vectors.
    pub fn from_fn(arity: usize, mut f: impl FnMut(&[bool]) -> bool) -> Result<Self, BoolFnError> {
        if arity > MAX_ARITY {
            return Err(BoolFnError::ArityTooLarge(arity));
        }
        let mut args = vec![false; arity];
        let table = (0..1usize << arity)
            .map(|i| {
                for (j, a) in args.iter_mut().enumerate() {
                    *a = (i >> (arity - 1 - j)) & 1 == 1;
                }
                f(&args)
            })
            .collect();
        Ok(BooleanFunctionTable { arity, table })
    }

    pub fn from_table(arity: usize, table: Vec<bool>) -> Result<Self, BoolFnError> {
        if arity > MAX_ARITY {
            return Err(BoolFnError::ArityTooLarge(arity));
        }
        if table.len() != 1 << arity {
            return Err(BoolFnError::ArgumentCount { expected: 1 << arity, given: table.len() });
        }
        Ok(BooleanFunctionTable { arity, table })
    }

    pub fn constant(arity: usize, value: bool) -> Self {
        Self::from_fn(arity, |_| value).expect("arity within limit")
    }

    pub fn identity() -> Self {
        Self::from_fn(1, |a| a[0]).expect("unary")
    }

    pub fn not() -> Self {
        Self::from_fn(1, |a| !a[0]).expect("unary")
    }

    pub fn and() -> Self {
        Self::from_fn(2, |a| a[0] && a[1]).expect("binary")
    }

    pub fn or() -> Self {
        Self::from_fn(2, |a| a[0] || a[1]).expect("binary")
    }

    /// Projection onto argument `i` of an `arity`-ary function.
    pub fn projection(arity: usize, i: usize) -> Result<Self, BoolFnError> {
        Self::from_fn(arity, |a| a[i])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    /// Evaluate at the argument vector `args` (first argument most significant).
    pub fn eval(&self, args: &[bool]) -> bool {
        debug_assert_eq!(args.len(), self.arity);
        let idx = args.iter().fold(0usize, |acc, &b| (acc << 1) | b as usize);
        self.table[idx]
    }

    pub fn try_eval(&self, args: &[bool]) -> Result<bool, BoolFnError> {
        if args.len() != self.arity {
            return Err(BoolFnError::ArgumentCount { expected: self.arity, given: args.len() });
        }
        Ok(self.eval(args))
    }

    /// Evaluate at a table index.
    pub fn eval_index(&self, idx: usize) -> bool {
        self.table[idx]
    }

    /// Side length `k` when the arity is `k²`.
    pub fn matrix_side(&self) -> Result<usize, BoolFnError> {
        let k = (self.arity as f64).sqrt().round() as usize;
        if k * k == self.arity {
            Ok(k)
        } else {
            Err(BoolFnError::NotSquare(self.arity))
        }
    }

    /// `f(A)` for a `k x k` matrix flattened row-major.
    pub fn eval_matrix(&self, a: &[bool]) -> bool {
        self.eval(a)
    }

    /// Whether the value depends only on the main diagonal of the argument matrix.
    pub fn is_diagonal(&self) -> Result<bool, BoolFnError> {
        let k = self.matrix_side()?;
        let off: usize = (0..k * k)
            .filter(|&p| p / k != p % k)
            .map(|p| 1usize << (self.arity - 1 - p))
            .fold(0, |a, b| a | b);
        // f is diagonal iff flipping any off-diagonal bit never changes it.
        Ok((0..self.table.len()).all(|i| self.table[i] == self.table[i & !off]))
    }

    /// The diagonal `k²`-ary function `f'(A) = f(A_11, ..., A_kk)`.
    pub fn diagonal_lift(&self) -> Result<Self, BoolFnError> {
        let k = self.arity;
        Self::from_fn(k * k, |a| {
            let diag: Vec<bool> = (0..k).map(|i| a[i * k + i]).collect();
            self.eval(&diag)
        })
    }

    /// Function of `arity` arguments obtained by feeding this function's
    /// arguments from the listed positions.
    pub fn with_arguments(&self, arity: usize, positions: &[usize]) -> Result<Self, BoolFnError> {
        if positions.len() != self.arity {
            return Err(BoolFnError::ArgumentCount { expected: self.arity, given: positions.len() });
        }
        Self::from_fn(arity, |a| {
            let args: Vec<bool> = positions.iter().map(|&p| a[p]).collect();
            self.eval(&args)
        })
    }

    /// `g ∘ (h_1, ..., h_l)` where every `h_i` has the same arity.
    pub fn compose_outer(g: &Self, hs: &[Self]) -> Result<Self, BoolFnError> {
        if hs.len() != g.arity {
            return Err(BoolFnError::ArgumentCount { expected: g.arity, given: hs.len() });
        }
        let arity = hs.first().map_or(0, |h| h.arity);
        if let Some(h) = hs.iter().find(|h| h.arity != arity) {
            return Err(BoolFnError::ArgumentCount { expected: arity, given: h.arity });
        }
        Self::from_fn(arity, |a| {
            let inner: Vec<bool> = hs.iter().map(|h| h.eval(a)).collect();
            g.eval(&inner)
        })
    }

    /// Hex rendering: table bits in index order, four per digit, first bit
    /// most significant, zero-padded to a whole digit.
    pub fn to_hex(&self) -> String {
        let digits = self.table.len().div_ceil(4);
        (0..digits)
            .map(|d| {
                let v = (0..4).fold(0u32, |acc, b| {
                    let bit = self.table.get(d * 4 + b).copied().unwrap_or(false);
                    (acc << 1) | bit as u32
                });
                char::from_digit(v, 16).expect("nibble")
            })
            .collect()
    }

    pub fn from_hex(arity: usize, hex: &str) -> Result<Self, BoolFnError> {
        if arity > MAX_ARITY {
            return Err(BoolFnError::ArityTooLarge(arity));
        }
        let len = 1usize << arity;
        let expected = len.div_ceil(4);
        let chars: Vec<char> = hex.chars().collect();
        if chars.len() != expected {
            return Err(BoolFnError::HexLength { expected, given: chars.len() });
        }
        let mut table = Vec::with_capacity(expected * 4);
        for c in chars {
            let v = c.to_digit(16).ok_or(BoolFnError::HexDigit(c))?;
            for b in (0..4).rev() {
                table.push((v >> b) & 1 == 1);
            }
        }
        table.truncate(len);
        Ok(BooleanFunctionTable { arity, table })
    }

    /// Table as a `0`/`1` string in index order.
    pub fn bit_string(&self) -> String {
        self.table.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }
}

impl fmt::Debug for BooleanFunctionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "bf({}, {})", self.arity, self.bit_string())
    }
}

/// Block-matrix composition: for a `k²`-ary `f` and an `l²`-ary `g`, the
/// `(kl)²`-ary function applying `g` to each `l x l` block of a `kl x kl`
/// matrix and `f` to the resulting `k x k` matrix.
pub fn compose_boolean(f: &BooleanFunctionTable, g: &BooleanFunctionTable) -> Result<BooleanFunctionTable, BoolFnError> {
    let k = f.matrix_side()?;
    let l = g.matrix_side()?;
    let side = k * l;
    if side * side > MAX_ARITY {
        return Err(BoolFnError::ArityTooLarge(side * side));
    }
    BooleanFunctionTable::from_fn(side * side, |b| {
        let mut outer = vec![false; k * k];
        let mut block = vec![false; l * l];
        for bi in 0..k {
            for bj in 0..k {
                for i in 0..l {
                    for j in 0..l {
                        block[i * l + j] = b[(bi * l + i) * side + bj * l + j];
                    }
                }
                outer[bi * k + bj] = g.eval(&block);
            }
        }
        f.eval(&outer)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn big_endian_convention() {
        // f(p, q) = p AND NOT q is true only at (1, 0), i.e. index 2.
        let f = BooleanFunctionTable::from_fn(2, |a| a[0] && !a[1]).unwrap();
        assert_eq!(f.bit_string(), "0010");
        assert!(f.eval(&[true, false]));
    }

    #[test]
    fn hex_round_trip() {
        for arity in 0..6 {
            for seed in 0..8u64 {
                let f = BooleanFunctionTable::from_fn(arity, |a| {
                    let idx = a.iter().fold(0u64, |acc, &b| acc * 2 + b as u64);
                    (idx.wrapping_mul(2654435761).wrapping_add(seed) >> 3) & 1 == 1
                })
                .unwrap();
                assert_eq!(BooleanFunctionTable::from_hex(arity, &f.to_hex()).unwrap(), f);
            }
        }
        assert_eq!(BooleanFunctionTable::and().to_hex(), "1");
        assert!(BooleanFunctionTable::from_hex(2, "11").is_err());
    }

    #[test]
    fn diagonal_predicate() {
        let f = BooleanFunctionTable::and().diagonal_lift().unwrap();
        assert!(f.is_diagonal().unwrap());
        let g = BooleanFunctionTable::from_fn(4, |a| a[1]).unwrap();
        assert!(!g.is_diagonal().unwrap());
        assert!(BooleanFunctionTable::and().is_diagonal().is_err());
    }

    #[test]
    fn composition_of_identities() {
        let id = BooleanFunctionTable::identity();
        assert_eq!(compose_boolean(&id, &id).unwrap(), id);
    }

    #[test]
    fn diagonal_composed_with_diagonal_is_diagonal() {
        // All 4-ary diagonal tables are lifts of the 16 binary functions.
        for a in 0..16u32 {
            let fa = BooleanFunctionTable::from_table(2, (0..4).map(|i| a >> i & 1 == 1).collect()).unwrap();
            let f = fa.diagonal_lift().unwrap();
            for b in 0..16u32 {
                let gb = BooleanFunctionTable::from_table(2, (0..4).map(|i| b >> i & 1 == 1).collect()).unwrap();
                let g = gb.diagonal_lift().unwrap();
                assert!(compose_boolean(&f, &g).unwrap().is_diagonal().unwrap());
            }
        }
    }
}
