//! Overflow guards: rewrite a quantifier-free formula so that its meaning
//! over `ℕ` (with `cm` holding the universe bound) coincides with its meaning
//! in the bounded structure.
//!
//! Every non-leaf subterm `s` of an atom is visited bottom-up (left operand
//! before right). The atom splits into "if `cm < s` then the atom with `s`
//! replaced by `c0` else the atom unchanged", and the split recurses on the
//! remaining subterms. Once all children are guarded, every subterm value is
//! exact, so the case split reproduces the overflow-to-zero rule.

use super::{Const, Formula, LogicError, Term};

/// Path from an atom's root to a subterm: side (0 = left, 1 = right), then
/// operand choices.
type Path = (usize, Vec<usize>);

fn collect_paths(t: &Term, path: &mut Vec<usize>, side: usize, out: &mut Vec<Path>) {
    if let Term::Add(a, b) | Term::Mul(a, b) = t {
        path.push(0);
        collect_paths(a, path, side, out);
        path.pop();
        path.push(1);
        collect_paths(b, path, side, out);
        path.pop();
        out.push((side, path.clone()));
    }
}

fn subterm<'a>(t: &'a Term, path: &[usize]) -> &'a Term {
    match (t, path.split_first()) {
        (_, None) => t,
        (Term::Add(a, b) | Term::Mul(a, b), Some((&i, rest))) => subterm(if i == 0 { a } else { b }, rest),
        _ => unreachable!("guard paths follow the term structure"),
    }
}

fn replace(t: &Term, path: &[usize], with: &Term) -> Term {
    match path.split_first() {
        None => with.clone(),
        Some((&i, rest)) => match t {
            Term::Add(a, b) if i == 0 => Term::add(replace(a, rest, with), (**b).clone()),
            Term::Add(a, b) => Term::add((**a).clone(), replace(b, rest, with)),
            Term::Mul(a, b) if i == 0 => Term::mul(replace(a, rest, with), (**b).clone()),
            Term::Mul(a, b) => Term::mul((**a).clone(), replace(b, rest, with)),
            _ => unreachable!("guard paths follow the term structure"),
        },
    }
}

fn sides(atom: &Formula) -> (&Term, &Term) {
    match atom {
        Formula::Lt(a, b) | Formula::Eq(a, b) => (a, b),
        _ => unreachable!("only atoms are guarded"),
    }
}

fn with_sides(atom: &Formula, l: Term, r: Term) -> Formula {
    match atom {
        Formula::Lt(..) => Formula::Lt(l, r),
        _ => Formula::Eq(l, r),
    }
}

fn guard_rec(atom: &Formula, paths: &[Path]) -> Formula {
    let Some(((side, path), rest)) = paths.split_first() else {
        return atom.clone();
    };
    let (l, r) = sides(atom);
    let s = subterm(if *side == 0 { l } else { r }, path).clone();
    let zero = Term::c(Const::C0);
    let overflowed = if *side == 0 {
        with_sides(atom, replace(l, path, &zero), r.clone())
    } else {
        with_sides(atom, l.clone(), replace(r, path, &zero))
    };
    let g = Formula::lt(Term::c(Const::Cm), s);
    Formula::and(
        Formula::or(Formula::not(g.clone()), guard_rec(&overflowed, rest)),
        Formula::or(g, guard_rec(atom, rest)),
    )
}

fn guard_atom(atom: &Formula) -> Formula {
    let (l, r) = sides(atom);
    let mut paths = Vec::new();
    collect_paths(l, &mut Vec::new(), 0, &mut paths);
    collect_paths(r, &mut Vec::new(), 1, &mut paths);
    guard_rec(atom, &paths)
}

/// Guard every atom of a quantifier-free formula against overflow.
pub fn guard_transform(phi: &Formula) -> Result<Formula, LogicError> {
    Ok(match phi {
        Formula::Lt(..) | Formula::Eq(..) => guard_atom(phi),
        Formula::Not(g) => Formula::not(guard_transform(g)?),
        Formula::And(a, b) => Formula::and(guard_transform(a)?, guard_transform(b)?),
        Formula::Or(a, b) => Formula::or(guard_transform(a)?, guard_transform(b)?),
        Formula::Exists(..) | Formula::Forall(..) => return Err(LogicError::Quantified),
    })
}

#[cfg(test)]
mod tests {
    use super::super::eval::eval_infinite_u64;
    use super::super::{eval_bounded, parse_formula};
    use super::*;

    fn assignments(len: usize, n: u64) -> impl Iterator<Item = Vec<u64>> {
        let total = (n + 1).pow(len as u32);
        (0..total).map(move |mut i| {
            let mut a = vec![0; len];
            for slot in a.iter_mut().rev() {
                *slot = i % (n + 1);
                i /= n + 1;
            }
            a
        })
    }

    fn agrees(src: &str, max_n: u64) {
        let phi = parse_formula(src).unwrap();
        let guarded = guard_transform(&phi).unwrap();
        let k = phi.arity().max(1);
        for n in 1..=max_n {
            for a in assignments(2 * k, n) {
                assert_eq!(
                    eval_bounded(&phi, &a, n).unwrap(),
                    eval_infinite_u64(&guarded, &a, n).unwrap(),
                    "{src} at n={n}, a={a:?}"
                );
            }
        }
    }

    #[test]
    fn arithmetic_free_atoms_are_unchanged() {
        let phi = parse_formula("x1 = y1").unwrap();
        assert_eq!(guard_transform(&phi).unwrap(), phi);
    }

    #[test]
    fn sum_overflow_example() {
        // k = 2: a = (x1, x2, y1, y2); x1 + y1 = 4 > 3 overflows to 0 < x2 = 1.
        let phi = parse_formula("(x1 + y1) < x2").unwrap();
        let guarded = guard_transform(&phi).unwrap();
        assert!(eval_infinite_u64(&guarded, &[2, 1, 2, 0], 3).unwrap());
        assert!(!eval_infinite_u64(&phi, &[2, 1, 2, 0], 3).unwrap());
        agrees("(x1 + y1) < x2", 3);
    }

    #[test]
    fn worked_atom_cascade() {
        let src = "((x1 + y2) * x2) < (x2 + y1)";
        let guarded = guard_transform(&parse_formula(src).unwrap()).unwrap();
        // The first split tests the innermost sum; its overflow branch
        // substitutes c0 into the product.
        let text = guarded.to_string();
        assert!(text.starts_with("((!cm < (x1 + y2) | ((!cm < (c0 * x2) | ((!cm < (x2 + y1) | c0 < c0)"));
        agrees(src, 4);
    }

    #[test]
    fn quantified_input_is_rejected() {
        let phi = parse_formula("E z1 . x1 < z1").unwrap();
        assert_eq!(guard_transform(&phi), Err(LogicError::Quantified));
    }

    #[test]
    fn nested_connectives() {
        agrees("!((x1 * y1) = c1 | (cm < (x1 + c1) & x1 < (y1 * y1)))", 5);
    }
}
