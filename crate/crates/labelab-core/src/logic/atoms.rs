//! Splitting a quantifier-free formula into its atoms and the boolean
//! function that combines them.

use crate::boolfn::{BooleanFunctionTable, MAX_ARITY};

use super::{Formula, LogicError, Var};

/// `φ = f(A_1, ..., A_a)`, one atom per occurrence (left to right).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomDecomposition {
    /// The atoms as they occur in the formula.
    pub atoms: Vec<Formula>,
    /// Atom `i` with `x_j`, `y_j` renamed to `x_{i·k+j}`, `y_{i·k+j}`, so the
    /// atoms use pairwise disjoint variable blocks.
    pub block_atoms: Vec<Formula>,
    /// The underlying boolean function, first atom most significant.
    pub f: BooleanFunctionTable,
    /// Free arity `k` of the original formula.
    pub k: usize,
}

fn collect(phi: &Formula, out: &mut Vec<Formula>) -> Result<(), LogicError> {
    match phi {
        Formula::Lt(..) | Formula::Eq(..) => out.push(phi.clone()),
        Formula::Not(g) => collect(g, out)?,
        Formula::And(a, b) | Formula::Or(a, b) => {
            collect(a, out)?;
            collect(b, out)?;
        }
        Formula::Exists(..) | Formula::Forall(..) => return Err(LogicError::Quantified),
    }
    Ok(())
}

fn skeleton(phi: &Formula, args: &[bool], next: &mut usize) -> bool {
    match phi {
        Formula::Lt(..) | Formula::Eq(..) => {
            *next += 1;
            args[*next - 1]
        }
        Formula::Not(g) => !skeleton(g, args, next),
        Formula::And(a, b) => {
            let l = skeleton(a, args, next);
            let r = skeleton(b, args, next);
            l && r
        }
        Formula::Or(a, b) => {
            let l = skeleton(a, args, next);
            let r = skeleton(b, args, next);
            l || r
        }
        Formula::Exists(..) | Formula::Forall(..) => unreachable!("checked quantifier-free"),
    }
}

/// Decompose a quantifier-free formula into atoms and its boolean skeleton.
pub fn atoms_decompose(phi: &Formula) -> Result<AtomDecomposition, LogicError> {
    let mut atoms = Vec::new();
    collect(phi, &mut atoms)?;
    if atoms.len() > MAX_ARITY {
        return Err(LogicError::TooManyAtoms(atoms.len()));
    }
    let k = phi.arity();
    let block_atoms = atoms
        .iter()
        .enumerate()
        .map(|(i, a)| {
            a.map_vars(&|v| match v {
                Var::X(j) => Var::X(i * k + j),
                Var::Y(j) => Var::Y(i * k + j),
                z => z,
            })
        })
        .collect();
    let f = BooleanFunctionTable::from_fn(atoms.len(), |args| skeleton(phi, args, &mut 0))
        .map_err(|_| LogicError::TooManyAtoms(atoms.len()))?;
    Ok(AtomDecomposition { atoms, block_atoms, f, k })
}

impl AtomDecomposition {
    /// Evaluate `f` over the atom verdicts given by `verdict`.
    pub fn combine(&self, mut verdict: impl FnMut(&Formula) -> Result<bool, LogicError>) -> Result<bool, LogicError> {
        let args = self.atoms.iter().map(&mut verdict).collect::<Result<Vec<_>, _>>()?;
        Ok(self.f.eval(&args))
    }

    /// Assignment for the block atoms: the `x` block repeated once per atom,
    /// then the `y` block likewise.
    pub fn block_assignment(&self, a: &[u64]) -> Vec<u64> {
        let k = a.len() / 2;
        let (x, y) = a.split_at(k);
        let reps = self.atoms.len();
        let mut out = Vec::with_capacity(2 * k * reps);
        for _ in 0..reps {
            out.extend_from_slice(x);
        }
        for _ in 0..reps {
            out.extend_from_slice(y);
        }
        out
    }
}
