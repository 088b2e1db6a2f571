//! Tarskian evaluation over the bounded structures `N_n` and over `ℕ`.
//!
//! In `N_n` the universe is `[n]_0` and `+`, `×` return 0 whenever the exact
//! result exceeds `n`. Over `ℕ` arithmetic is exact (arbitrary precision).

use std::collections::HashMap;

use num_bigint::BigUint;

use super::{Const, Formula, LogicError, Term, Var};

/// Values of `x1..xk` followed by `y1..yk`.
pub type Assignment<'a> = &'a [u64];

fn lookup(v: Var, a: &[u64], k: usize, z: &HashMap<usize, u64>) -> Result<u64, LogicError> {
    match v {
        Var::X(i) if i <= k => Ok(a[i - 1]),
        Var::Y(i) if i <= k => Ok(a[k + i - 1]),
        Var::Z(i) => z.get(&i).copied().ok_or(LogicError::Unbound(v)),
        _ => Err(LogicError::Unbound(v)),
    }
}

fn term_bounded(t: &Term, a: &[u64], k: usize, n: u64, z: &HashMap<usize, u64>) -> Result<u64, LogicError> {
    Ok(match t {
        Term::Var(v) => lookup(*v, a, k, z)?,
        Term::Const(Const::C0) => 0,
        Term::Const(Const::C1) => 1,
        Term::Const(Const::Cm) => n,
        Term::Add(p, q) => {
            let r = term_bounded(p, a, k, n, z)? as u128 + term_bounded(q, a, k, n, z)? as u128;
            if r > n as u128 {
                0
            } else {
                r as u64
            }
        }
        Term::Mul(p, q) => {
            let r = term_bounded(p, a, k, n, z)? as u128 * term_bounded(q, a, k, n, z)? as u128;
            if r > n as u128 {
                0
            } else {
                r as u64
            }
        }
    })
}

fn formula_bounded(f: &Formula, a: &[u64], k: usize, n: u64, z: &mut HashMap<usize, u64>) -> Result<bool, LogicError> {
    Ok(match f {
        Formula::Lt(p, q) => term_bounded(p, a, k, n, z)? < term_bounded(q, a, k, n, z)?,
        Formula::Eq(p, q) => term_bounded(p, a, k, n, z)? == term_bounded(q, a, k, n, z)?,
        Formula::Not(g) => !formula_bounded(g, a, k, n, z)?,
        Formula::And(p, q) => formula_bounded(p, a, k, n, z)? && formula_bounded(q, a, k, n, z)?,
        Formula::Or(p, q) => formula_bounded(p, a, k, n, z)? || formula_bounded(q, a, k, n, z)?,
        Formula::Exists(i, g) | Formula::Forall(i, g) => {
            let want = matches!(f, Formula::Exists(..));
            let saved = z.get(i).copied();
            let mut result = !want;
            for v in 0..=n {
                z.insert(*i, v);
                if formula_bounded(g, a, k, n, z)? == want {
                    result = want;
                    break;
                }
            }
            match saved {
                Some(s) => z.insert(*i, s),
                None => z.remove(i),
            };
            result
        }
    })
}

fn check_assignment(f: &Formula, a: &[u64]) -> Result<usize, LogicError> {
    if a.len() % 2 != 0 || a.len() / 2 < f.arity() {
        return Err(LogicError::AssignmentLength { expected: 2 * f.arity(), given: a.len() });
    }
    Ok(a.len() / 2)
}

/// Evaluate `f` in `N_n` (universe `[n]_0`, overflow to zero) under `a`.
pub fn eval_bounded(f: &Formula, a: Assignment<'_>, n: u64) -> Result<bool, LogicError> {
    if n == 0 {
        return Err(LogicError::EmptyUniverse);
    }
    let k = check_assignment(f, a)?;
    if let Some(&value) = a.iter().find(|&&v| v > n) {
        return Err(LogicError::OutOfUniverse { value, bound: n });
    }
    formula_bounded(f, a, k, n, &mut HashMap::new())
}

fn term_infinite(t: &Term, a: &[BigUint], k: usize, cm: &BigUint) -> Result<BigUint, LogicError> {
    Ok(match t {
        Term::Var(Var::X(i)) if *i <= k => a[i - 1].clone(),
        Term::Var(Var::Y(i)) if *i <= k => a[k + i - 1].clone(),
        Term::Var(v) => return Err(LogicError::Unbound(*v)),
        Term::Const(Const::C0) => BigUint::from(0u32),
        Term::Const(Const::C1) => BigUint::from(1u32),
        Term::Const(Const::Cm) => cm.clone(),
        Term::Add(p, q) => term_infinite(p, a, k, cm)? + term_infinite(q, a, k, cm)?,
        Term::Mul(p, q) => term_infinite(p, a, k, cm)? * term_infinite(q, a, k, cm)?,
    })
}

fn formula_infinite(f: &Formula, a: &[BigUint], k: usize, cm: &BigUint) -> Result<bool, LogicError> {
    Ok(match f {
        Formula::Lt(p, q) => term_infinite(p, a, k, cm)? < term_infinite(q, a, k, cm)?,
        Formula::Eq(p, q) => term_infinite(p, a, k, cm)? == term_infinite(q, a, k, cm)?,
        Formula::Not(g) => !formula_infinite(g, a, k, cm)?,
        Formula::And(p, q) => formula_infinite(p, a, k, cm)? && formula_infinite(q, a, k, cm)?,
        Formula::Or(p, q) => formula_infinite(p, a, k, cm)? || formula_infinite(q, a, k, cm)?,
        Formula::Exists(..) | Formula::Forall(..) => return Err(LogicError::Quantified),
    })
}

/// Evaluate a quantifier-free `f` over `ℕ` with exact arithmetic; the
/// constant `cm` denotes `cm`.
pub fn eval_infinite(f: &Formula, a: &[BigUint], cm: &BigUint) -> Result<bool, LogicError> {
    if !f.is_quantifier_free() {
        return Err(LogicError::Quantified);
    }
    if a.len() % 2 != 0 || a.len() / 2 < f.arity() {
        return Err(LogicError::AssignmentLength { expected: 2 * f.arity(), given: a.len() });
    }
    formula_infinite(f, a, a.len() / 2, cm)
}

/// [`eval_infinite`] for machine-word inputs.
pub fn eval_infinite_u64(f: &Formula, a: &[u64], cm: u64) -> Result<bool, LogicError> {
    let big: Vec<BigUint> = a.iter().map(|&v| BigUint::from(v)).collect();
    eval_infinite(f, &big, &BigUint::from(cm))
}

#[cfg(test)]
mod tests {
    use super::super::{interval_formula, parse_formula};
    use super::*;

    #[test]
    fn interval_formula_on_five_interval_labels() {
        assert!(eval_bounded(&interval_formula(), &[2, 7, 1, 3], 10).unwrap());
        assert!(!eval_bounded(&interval_formula(), &[1, 3, 4, 5], 10).unwrap());
    }

    #[test]
    fn overflow_goes_to_zero() {
        let f = parse_formula("(x1 + y1) = x2").unwrap();
        // k = 2: a = (x1, x2, y1, y2); 2 + 2 > 3 becomes 0.
        assert!(eval_bounded(&f, &[2, 0, 2, 0], 3).unwrap());
        assert!(!eval_bounded(&f, &[2, 1, 2, 0], 3).unwrap());
        let m = parse_formula("(x1 * y1) = c0").unwrap();
        assert!(eval_bounded(&m, &[2, 2], 3).unwrap());
    }

    #[test]
    fn quantifiers_range_over_the_universe() {
        let f = parse_formula("E z1 . (x1 < z1 & z1 < y1)").unwrap();
        assert!(eval_bounded(&f, &[1, 3], 3).unwrap());
        assert!(!eval_bounded(&f, &[1, 2], 3).unwrap());
        let g = parse_formula("A z1 . !cm < z1").unwrap();
        assert!(eval_bounded(&g, &[0, 0], 4).unwrap());
    }

    #[test]
    fn errors() {
        let f = parse_formula("x1 < y1").unwrap();
        assert!(matches!(eval_bounded(&f, &[5, 0], 3), Err(LogicError::OutOfUniverse { .. })));
        assert!(matches!(eval_bounded(&f, &[1], 3), Err(LogicError::AssignmentLength { .. })));
        let q = parse_formula("E z1 . x1 < z1").unwrap();
        assert_eq!(eval_infinite_u64(&q, &[0, 0], 3), Err(LogicError::Quantified));
    }

    #[test]
    fn exact_big_arithmetic() {
        let f = parse_formula("(x1 * y1) < x2").unwrap();
        assert!(!eval_infinite_u64(&f, &[1_000_000, 5, 1_000_000, 0], 1).unwrap());
        let g = parse_formula("(x1 * x1) < ((x1 * x1) + c1)").unwrap();
        assert!(eval_infinite_u64(&g, &[u64::MAX, 0], 1).unwrap());
    }

    #[test]
    fn interval_formula_has_no_overflow() {
        for n in 1..6u64 {
            for a in 0..=n {
                for b in 0..=n {
                    for c in 0..=n {
                        for d in 0..=n {
                            let v = [a, b, c, d];
                            assert_eq!(
                                eval_bounded(&interval_formula(), &v, n).unwrap(),
                                eval_infinite_u64(&interval_formula(), &v, n).unwrap()
                            );
                        }
                    }
                }
            }
        }
    }
}
