//! From rational labels to natural-number labels.
//!
//! [`sign_split`] makes a system over `ℚ` work on non-negative rationals:
//! each variable `v` becomes a pair `(|v|, w_v)` with `w_v = |v|` when `v < 0`
//! and `w_v = |v| + 1` otherwise, so the sign is the comparison `|v| < w_v`.
//! Every comparison `p_i < p_j` is replaced, per sign pattern of the variables
//! occurring in `p_i` or `p_j`, by `P⁺ + Q⁻ < P⁻ + Q⁺`, where `P⁺`/`P⁻` collect
//! the monomials of `p_i` that are positive/negative under the pattern.
//!
//! [`clear_denominators`] then maps each non-negative rational `a/b` to the
//! pair `(a, b)` and multiplies every polynomial by `Π b_v^{d_v}`, `d_v` the
//! largest degree of `v` in the system.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{BoolExpr, Connective, Pbs, PbsError, Polynomial};

/// Upper limit on the number of polynomials produced by [`sign_split`].
pub const MAX_SPLIT_POLYNOMIALS: usize = 1 << 20;

/// Layout of the doubled variables: within each label block of `k`
/// variables, the `k` absolute values come first, then the `k` witnesses.
fn split_index(k: usize, v: usize) -> (usize, usize) {
    let (block, i) = (v / k, v % k);
    (2 * k * block + i, 2 * k * block + k + i)
}

/// Sign-split a system over `ℚ` into one over `ℚ₊` with `2·nvars` variables.
pub fn sign_split(r: &Pbs) -> Result<Pbs, PbsError> {
    let nv = r.nvars();
    let k = r.k();
    let nv2 = 2 * nv;
    let l = r.polys().len();
    // Pairs (i, j) the connective actually looks at.
    let support = r.connective().support();
    let mut total = 2 * nv;
    let mut plans = Vec::new();
    for &idx in &support {
        let (i, j) = (idx / l, idx % l);
        let mut vars = r.polys()[i].occurring_vars();
        vars.extend(r.polys()[j].occurring_vars());
        vars.sort_unstable();
        vars.dedup();
        total = total.saturating_add(2usize.saturating_mul(1usize.checked_shl(vars.len() as u32).unwrap_or(usize::MAX)));
        if total > MAX_SPLIT_POLYNOMIALS {
            return Err(PbsError::SizeLimit(format!("sign splitting needs more than {MAX_SPLIT_POLYNOMIALS} polynomials")));
        }
        plans.push((idx, i, j, vars));
    }

    let mut polys = Vec::with_capacity(total);
    // Identity polynomials: 2v is |v|, 2v + 1 is its witness.
    for v in 0..nv {
        let (a, w) = split_index(k, v);
        polys.push(Polynomial::var(nv2, a));
        polys.push(Polynomial::var(nv2, w));
    }
    let abs_map: Vec<usize> = (0..nv).map(|v| split_index(k, v).0).collect();
    // (original argument, sign pattern, index of p', index of q').
    let mut cases: Vec<(usize, Vec<(usize, bool)>, usize, usize)> = Vec::new();
    for (idx, i, j, vars) in &plans {
        for pattern in 0..1usize << vars.len() {
            let negative: BTreeMap<usize, bool> =
                vars.iter().enumerate().map(|(b, &v)| (v, (pattern >> b) & 1 == 1)).collect();
            let (p_pos, p_neg) = split_by_sign(&r.polys()[*i], &negative);
            let (q_pos, q_neg) = split_by_sign(&r.polys()[*j], &negative);
            let lhs = (&p_pos + &q_neg).remap(nv2, &abs_map);
            let rhs = (&p_neg + &q_pos).remap(nv2, &abs_map);
            polys.push(lhs);
            polys.push(rhs);
            let signs = negative.into_iter().collect();
            cases.push((*idx, signs, polys.len() - 2, polys.len() - 1));
        }
    }

    let l2 = polys.len();
    let mut by_arg: BTreeMap<usize, Vec<BoolExpr>> = BTreeMap::new();
    for (idx, signs, lhs, rhs) in cases {
        let mut conj: Vec<BoolExpr> = signs
            .iter()
            .map(|&(v, neg)| {
                // v < 0 iff not |v| < w_v.
                let lt = BoolExpr::cmp(l2, 2 * v, 2 * v + 1);
                if neg {
                    BoolExpr::not(lt)
                } else {
                    lt
                }
            })
            .collect();
        conj.push(BoolExpr::cmp(l2, lhs, rhs));
        by_arg.entry(idx).or_default().push(BoolExpr::And(conj));
    }
    let expr = r.connective().to_expr().substitute(&mut |idx| match by_arg.get(&idx) {
        Some(cases) => BoolExpr::Or(cases.clone()),
        // Arguments outside the support do not influence the value.
        None => BoolExpr::Const(false),
    });
    Pbs::new(nv2, polys, Connective::Expr { arity: l2 * l2, expr })
}

/// Split into the monomials that are positive / negative when the variables
/// marked `true` are negative.
fn split_by_sign(p: &Polynomial, negative: &BTreeMap<usize, bool>) -> (Polynomial, Polynomial) {
    let nv = p.nvars();
    let mut pos = Polynomial::zero(nv);
    let mut neg = Polynomial::zero(nv);
    for (e, c) in p.terms() {
        let odd = e.iter().enumerate().filter(|&(v, &k)| k % 2 == 1 && negative.get(&v) == Some(&true)).count();
        if odd % 2 == 0 {
            pos.add_term(e.clone(), c.clone());
        } else {
            neg.add_term(e.clone(), c.clone());
        }
    }
    (pos, neg)
}

/// Label values for a sign-split system: `(|v|, w_v)` per variable, laid
/// out block by block like the variables.
pub fn sign_split_values(a: &[BigRational]) -> Vec<BigRational> {
    let k = a.len() / 2;
    let mut out = vec![BigRational::zero(); 2 * a.len()];
    for (v, x) in a.iter().enumerate() {
        let (ai, wi) = split_index(k, v);
        let abs = x.abs();
        out[wi] = if x.is_negative() { abs.clone() } else { &abs + BigRational::one() };
        out[ai] = abs;
    }
    out
}

/// Multiply out denominators: a system over `ℚ₊` with `m` variables becomes
/// one over `ℕ₀` with `2m` variables (numerators, then denominators, per block).
pub fn clear_denominators(r: &Pbs) -> Result<Pbs, PbsError> {
    let nv = r.nvars();
    let k = r.k();
    let nv2 = 2 * nv;
    let degree: Vec<u32> = (0..nv).map(|v| r.polys().iter().map(|p| p.degree_in(v)).max().unwrap_or(0)).collect();
    let polys = r
        .polys()
        .iter()
        .map(|p| {
            let mut q = Polynomial::zero(nv2);
            for (e, c) in p.terms() {
                let mut ne = vec![0u32; nv2];
                for v in 0..nv {
                    let (num, den) = split_index(k, v);
                    ne[num] = e[v];
                    ne[den] = degree[v] - e[v];
                }
                q.add_term(ne, c.clone());
            }
            q
        })
        .collect();
    Pbs::new(nv2, polys, r.connective().clone())
}

/// Natural-number label values `(a, b)` for non-negative rationals `a/b`.
pub fn clear_values(a: &[BigRational]) -> Result<Vec<BigInt>, PbsError> {
    let k = a.len() / 2;
    let mut out = vec![BigInt::zero(); 2 * a.len()];
    for (v, x) in a.iter().enumerate() {
        if x.is_negative() {
            return Err(PbsError::OutOfBound { value: x.to_string(), bound: "non-negative".into() });
        }
        let (num, den) = split_index(k, v);
        out[num] = x.numer().clone();
        out[den] = x.denom().clone();
    }
    Ok(out)
}

/// Convenience: natural-number values of a rational labeling for
/// `clear_denominators(sign_split(R))`.
pub fn split_and_clear_values(a: &[BigRational]) -> Vec<BigInt> {
    clear_values(&sign_split_values(a)).expect("sign-split values are non-negative")
}

#[cfg(test)]
mod tests {
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    use super::super::{disk_pbs, dot_product_pbs};
    use super::*;
    use crate::boolfn::BooleanFunctionTable;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn worked_sign_pattern() {
        // p = x²y³z + y, q = z over variables (x, y, z | three unused).
        let nv = 6;
        let p = &Polynomial::product(nv, 1, &[0, 0, 1, 1, 1, 2]) + &Polynomial::var(nv, 1);
        let q = Polynomial::var(nv, 2);
        let negative: BTreeMap<usize, bool> = [(0, true), (1, false), (2, true)].into_iter().collect();
        let (pp, pn) = split_by_sign(&p, &negative);
        let (qp, qn) = split_by_sign(&q, &negative);
        assert_eq!(&pp + &qn, &Polynomial::var(nv, 1) + &Polynomial::var(nv, 2));
        assert_eq!(&pn + &qp, Polynomial::product(nv, 1, &[0, 0, 1, 1, 1, 2]));
    }

    #[test]
    fn all_positive_pattern_keeps_polynomials() {
        let p = dot_product_pbs(1);
        let negative = BTreeMap::new();
        let (pos, neg) = split_by_sign(&p.polys()[0], &negative);
        assert_eq!(pos, p.polys()[0]);
        assert!(neg.is_zero());
    }

    #[test]
    fn half_is_below_one_after_clearing() {
        // One variable per label; p1 = x1, p2 = 1, accept iff p1 < p2.
        let f = BooleanFunctionTable::from_fn(4, |a| a[1]).unwrap();
        let r = Pbs::new(2, vec![Polynomial::var(2, 0), Polynomial::constant(2, 1)], Connective::Table(f)).unwrap();
        let c = clear_denominators(&r).unwrap();
        let vals = clear_values(&[rat(1, 2), rat(0, 1)]).unwrap();
        assert!(c.eval_int(&vals).unwrap());
        assert!(r.eval_rat(&[rat(1, 2), rat(0, 1)]).unwrap());
    }

    #[test]
    fn dot_product_cleared_matches_rational() {
        let r = dot_product_pbs(1);
        let split = clear_denominators(&sign_split(&r).unwrap()).unwrap();
        let plain = clear_denominators(&r).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        for _ in 0..100 {
            let a = [rat(rng.gen_range(-6..=6), rng.gen_range(1..=5)), rat(rng.gen_range(-6..=6), rng.gen_range(1..=5))];
            let expected = r.eval_rat(&a).unwrap();
            assert_eq!(split.eval_int(&split_and_clear_values(&a)).unwrap(), expected);
            let nonneg = [a[0].abs(), a[1].abs()];
            assert_eq!(
                plain.eval_int(&clear_values(&nonneg).unwrap()).unwrap(),
                r.eval_rat(&nonneg).unwrap()
            );
        }
    }

    #[test]
    fn disk_end_to_end() {
        let r = disk_pbs();
        let t = clear_denominators(&sign_split(&r).unwrap()).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..100 {
            let a: Vec<BigRational> = (0..6)
                .map(|i| {
                    let lo = if i % 3 == 2 { 0 } else { -8 };
                    rat(rng.gen_range(lo..=8), rng.gen_range(1..=4))
                })
                .collect();
            assert_eq!(t.eval_int(&split_and_clear_values(&a)).unwrap(), r.eval_rat(&a).unwrap());
        }
    }
}
