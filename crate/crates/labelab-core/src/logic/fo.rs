//! Logical labeling schemes `(φ, c)`: labels are `k`-vectors over
//! `[n^c]_0` and adjacency is `φ(ℓ(u), ℓ(v))`.

use std::fmt;

use crate::decoders::{BitLabel, DecodeError, Decoder, LabelingScheme};

use super::eval::eval_infinite_u64;
use super::{eval_bounded, Formula, LogicError};

/// Interpretation of a formula scheme.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Semantics {
    /// Inside `N_{n^c}` with overflow to zero; quantifiers allowed.
    Bounded,
    /// Over `ℕ` with exact arithmetic and `cm = n^c`; quantifier-free only.
    Infinite,
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Semantics::Bounded => "bounded",
            Semantics::Infinite => "infinite",
        })
    }
}

/// A numeric logical labeling scheme.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoScheme {
    pub phi: Formula,
    pub c: u32,
    pub semantics: Semantics,
    /// Label vector length; at least the formula's arity.
    pub k: usize,
}

impl FoScheme {
    pub fn new(phi: Formula, c: u32, semantics: Semantics) -> Result<Self, LogicError> {
        phi.check_binding()?;
        if semantics == Semantics::Infinite && !phi.is_quantifier_free() {
            return Err(LogicError::Quantified);
        }
        let k = phi.arity();
        Ok(FoScheme { phi, c, semantics, k })
    }

    /// Universe bound `n^c` for graphs on `n` vertices.
    pub fn universe(&self, n: usize) -> Result<u64, LogicError> {
        if n == 0 {
            return Err(LogicError::EmptyUniverse);
        }
        (n as u64).checked_pow(self.c).ok_or(LogicError::DomainTooLarge(u128::MAX))
    }

    /// Whether `(x, y)` is accepted for a graph on `n` vertices.
    pub fn accepts(&self, n: usize, x: &[u64], y: &[u64]) -> Result<bool, LogicError> {
        let bound = self.universe(n)?;
        self.accepts_in(bound, x, y)
    }

    /// Whether `(x, y)` is accepted with universe bound `bound`.
    pub fn accepts_in(&self, bound: u64, x: &[u64], y: &[u64]) -> Result<bool, LogicError> {
        if x.len() != self.k || y.len() != self.k {
            return Err(LogicError::AssignmentLength { expected: 2 * self.k, given: x.len() + y.len() });
        }
        let mut a = Vec::with_capacity(2 * self.k);
        a.extend_from_slice(x);
        a.extend_from_slice(y);
        match self.semantics {
            Semantics::Bounded => eval_bounded(&self.phi, &a, bound),
            Semantics::Infinite => {
                if let Some(&value) = a.iter().find(|&&v| v > bound) {
                    return Err(LogicError::OutOfUniverse { value, bound });
                }
                eval_infinite_u64(&self.phi, &a, bound)
            }
        }
    }
}

/// A formula decoder on bit labels: a label of `k·w` bits holds `k`
/// big-endian numbers of `w` bits each. The universe bound is `2^w - 1`
/// (at least 1), because `n` cannot be recovered from the label length.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoBitDecoder {
    pub phi: Formula,
    pub k: usize,
    pub semantics: Semantics,
}

impl FoBitDecoder {
    /// Split a label into its `k` numbers.
    pub fn split(&self, label: &BitLabel) -> Result<(Vec<u64>, usize), DecodeError> {
        let len = label.len();
        if self.k == 0 {
            return Ok((Vec::new(), 0));
        }
        if len % self.k != 0 {
            return Err(DecodeError::BadLength { len, reason: format!("not divisible into {} numbers", self.k) });
        }
        let w = len / self.k;
        if w > 63 {
            return Err(DecodeError::BadLength { len, reason: "numbers wider than 63 bits".into() });
        }
        let values = (0..self.k)
            .map(|i| label.slice(i * w, (i + 1) * w).to_number().expect("width checked"))
            .collect();
        Ok((values, w))
    }

    pub fn accepts(&self, x: &BitLabel, y: &BitLabel) -> Result<bool, DecodeError> {
        let (xv, w) = self.split(x)?;
        let (yv, _) = self.split(y)?;
        let bound = ((1u64 << w) - 1).max(1);
        let scheme = FoScheme { phi: self.phi.clone(), c: 1, semantics: self.semantics, k: self.k };
        scheme.accepts_in(bound, &xv, &yv).map_err(|e| DecodeError::Other(e.to_string()))
    }
}

/// The bit-label scheme of `(φ, c)`: `k` numbers of `c·⌈log₂ n⌉` bits each.
pub fn fo_decoder(phi: Formula, c: u32, semantics: Semantics) -> Result<LabelingScheme, LogicError> {
    let scheme = FoScheme::new(phi, c, semantics)?;
    let k = scheme.k;
    Ok(LabelingScheme::new(Decoder::Formula(FoBitDecoder { phi: scheme.phi, k, semantics }), k * c as usize))
}
