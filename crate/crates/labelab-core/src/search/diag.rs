//! Diagonalization against a finite list of decoders: for each vertex count
//! `n` the pairing `τ(n) = (y, z)` selects decoder `y` with label constant
//! `z`, and the class receives the least `n`-vertex graph that scheme cannot
//! represent.
//!
//! Graphs are directed with loops and ordered by their row-major adjacency
//! bits. Representability is invariant under relabeling, so the least
//! labelled non-member is also the least canonical form of any non-member.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::decoders::{equality_dfa, lex_less_dfa, Decoder, LabelingScheme};
use crate::graph::Graph;

use super::{class_membership, Membership, SearchBudget, SearchError};

/// Largest exponent `2^y 3^z 5^w` for which preimages are materialized.
pub const MAX_PREIMAGE_EXPONENT: u64 = 1 << 26;

/// Strip all factors `p` from `e`, returning the multiplicity.
fn multiplicity(e: &mut BigUint, p: u32) -> u64 {
    let p = BigUint::from(p);
    let mut m = 0;
    while !e.is_zero() && (&*e % &p).is_zero() {
        *e /= &p;
        m += 1;
    }
    m
}

/// `τ(x) = (y, z)` when `x = 2^e` with `e = 2^y 3^z 5^w >= 1`; undefined
/// otherwise.
pub fn pairing_tau(x: &BigUint) -> Option<(u64, u64)> {
    if x < &BigUint::from(2u32) || x.count_ones() != 1 {
        return None;
    }
    let mut e = BigUint::from(x.trailing_zeros()?);
    let y = multiplicity(&mut e, 2);
    let z = multiplicity(&mut e, 3);
    multiplicity(&mut e, 5);
    e.is_one().then_some((y, z))
}

/// The first `count` values `x` with `τ(x) = (y, z)`, in increasing order:
/// `x = 2^(2^y 3^z 5^w)` for `w = 0, 1, ...`.
pub fn pairing_preimages(y: u64, z: u64, count: usize) -> Result<Vec<BigUint>, SearchError> {
    let too_big = || SearchError::DomainTooLarge(format!("exponent beyond 2^26 for (y, z) = ({y}, {z})"));
    let mut base: u64 = 1;
    for _ in 0..y {
        base = base.checked_mul(2).filter(|&b| b <= MAX_PREIMAGE_EXPONENT).ok_or_else(too_big)?;
    }
    for _ in 0..z {
        base = base.checked_mul(3).filter(|&b| b <= MAX_PREIMAGE_EXPONENT).ok_or_else(too_big)?;
    }
    let mut out = Vec::with_capacity(count);
    let mut e = base;
    for i in 0..count {
        if i > 0 {
            e = e.checked_mul(5).filter(|&b| b <= MAX_PREIMAGE_EXPONENT).ok_or_else(too_big)?;
        }
        out.push(BigUint::one() << e);
    }
    Ok(out)
}

/// The built-in decoder list: strict lexicographic order, inequality and
/// constant false.
pub fn diagonal_decoders() -> Vec<Decoder> {
    vec![Decoder::Dfa(lex_less_dfa()), Decoder::Dfa(equality_dfa(true)), Decoder::Const(false)]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DiagonalResult {
    /// The least graph not represented by the selected scheme.
    NonMember(Graph),
    /// Every `n`-vertex graph is represented; the class has no graph here.
    AllRepresented,
    /// A search budget or the candidate cap ran out.
    Unknown(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagonalEntry {
    pub n: usize,
    /// Index of the decoder in the list.
    pub y: usize,
    /// Label constant of the scheme.
    pub z: usize,
    pub result: DiagonalResult,
}

/// The graph whose adjacency bits, read row-major with loops, form `index`
/// right-aligned.
fn graph_at(n: usize, index: u64) -> Graph {
    let total = n * n;
    Graph::from_fn(n, true, |u, v| {
        let from_end = total - 1 - (u * n + v);
        from_end < 64 && index >> from_end & 1 == 1
    })
}

/// Diagonal graphs for every `n` in `1..=prefix` whose pairing selects a
/// listed decoder. At most `max_candidates` graphs are tried per `n`.
pub fn diagonal_class(
    decoders: &[Decoder],
    prefix: usize,
    budget: SearchBudget,
    max_candidates: u64,
) -> Result<Vec<DiagonalEntry>, SearchError> {
    let mut out = Vec::new();
    for n in 1..=prefix {
        let Some((y, z)) = pairing_tau(&BigUint::from(n)) else { continue };
        let (Some(y), Some(z)) = (y.to_usize(), z.to_usize()) else { continue };
        if y >= decoders.len() {
            continue;
        }
        let scheme = LabelingScheme::new(decoders[y].clone(), z);
        let bits = (n * n) as u32;
        let total = if bits >= 64 { u64::MAX } else { 1u64 << bits };
        let mut result = DiagonalResult::AllRepresented;
        let mut index = 0u64;
        loop {
            if index == total {
                break;
            }
            if index == max_candidates {
                result = DiagonalResult::Unknown(format!("candidate cap {max_candidates} reached"));
                break;
            }
            let g = graph_at(n, index);
            match class_membership(&scheme, &g, false, budget)? {
                Membership::Member(_) => {}
                Membership::NonMember => {
                    result = DiagonalResult::NonMember(g);
                    break;
                }
                Membership::Unknown(r) => {
                    result = DiagonalResult::Unknown(format!("candidate {index}: {r}"));
                    break;
                }
            }
            index += 1;
        }
        out.push(DiagonalEntry { n, y, z, result });
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tau(x: u64) -> Option<(u64, u64)> {
        pairing_tau(&BigUint::from(x))
    }

    #[test]
    fn tau_examples() {
        assert_eq!(tau(2), Some((0, 0)));
        assert_eq!(tau(3), None);
        assert_eq!(tau(4), Some((1, 0)));
        assert_eq!(tau(1), None);
        assert_eq!(tau(0), None);
        assert_eq!(tau(8), Some((0, 1)));
        assert_eq!(tau(32), Some((0, 0)));
        assert_eq!(tau(64), Some((1, 1)));
        // Exponent 7 has a factor outside {2, 3, 5}.
        assert_eq!(tau(128), None);
    }

    #[test]
    fn preimages_invert_tau() {
        for y in 0..3 {
            for z in 0..3 {
                let xs = pairing_preimages(y, z, 3).unwrap();
                assert!(xs.windows(2).all(|w| w[0] < w[1]));
                for x in xs {
                    assert_eq!(pairing_tau(&x), Some((y, z)));
                }
            }
        }
        // Independent check by trial: every power of two up to 2^200 with
        // τ = (1, 0) is among the preimages.
        let pre = pairing_preimages(1, 0, 3).unwrap();
        for e in 1..=200u32 {
            let x = BigUint::one() << e;
            if pairing_tau(&x) == Some((1, 0)) {
                assert!(pre.contains(&x), "2^{e}");
            }
        }
        assert!(pairing_preimages(30, 0, 1).is_err());
    }

    #[test]
    fn constant_false_list() {
        let out = diagonal_class(&[Decoder::Const(false)], 2, SearchBudget::default(), 1 << 10).unwrap();
        // Least non-edgeless graph on two vertices: a loop on the last vertex.
        let g = Graph::from_edges(2, true, &[(1, 1)]).unwrap();
        assert_eq!(out, vec![DiagonalEntry { n: 2, y: 0, z: 0, result: DiagonalResult::NonMember(g) }]);
    }

    #[test]
    fn constant_true_list() {
        let out = diagonal_class(&[Decoder::Const(true)], 2, SearchBudget::default(), 1 << 10).unwrap();
        // The edgeless graph already has a non-edge.
        assert_eq!(out[0].result, DiagonalResult::NonMember(Graph::edgeless(2, true)));
    }

    #[test]
    fn builtin_list_selects_by_pairing() {
        let out = diagonal_class(&diagonal_decoders(), 64, SearchBudget::default(), 1 << 12).unwrap();
        let picks: Vec<(usize, usize, usize)> = out.iter().map(|e| (e.n, e.y, e.z)).collect();
        assert_eq!(picks, vec![(2, 0, 0), (4, 1, 0), (8, 0, 1), (16, 2, 0), (32, 0, 0), (64, 1, 1)]);
        for e in &out {
            let DiagonalResult::NonMember(g) = &e.result else { panic!("n = {}: {:?}", e.n, e.result) };
            let s = LabelingScheme::new(diagonal_decoders()[e.y].clone(), e.z);
            assert_eq!(class_membership(&s, g, false, SearchBudget::default()).unwrap(), Membership::NonMember);
        }
    }

    #[test]
    fn undefined_pairings_and_candidate_cap() {
        // n = 1 has no pairing value.
        let out = diagonal_class(&[Decoder::Const(false)], 1, SearchBudget::default(), 4).unwrap();
        assert!(out.is_empty());
        let capped = diagonal_class(&[Decoder::Const(true)], 2, SearchBudget::default(), 0).unwrap();
        assert!(matches!(capped[0].result, DiagonalResult::Unknown(_)));
    }
}
