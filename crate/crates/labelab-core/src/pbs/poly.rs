//! Multivariate polynomials with non-negative integer coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

/// `Σ c_e · Π v_i^{e_i}`; the zero polynomial has no terms.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigUint>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: u64) -> Self {
        Self::monomial(nvars, BigUint::from(c), vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(nvars, BigUint::one(), e)
    }

    pub fn monomial(nvars: usize, coeff: BigUint, exps: Vec<u32>) -> Self {
        assert_eq!(exps.len(), nvars, "exponent vector length");
        let mut p = Self::zero(nvars);
        if !coeff.is_zero() {
            p.terms.insert(exps, coeff);
        }
        p
    }

    /// Product of variables listed with multiplicity, times `coeff`.
    pub fn product(nvars: usize, coeff: u64, vars: &[usize]) -> Self {
        let mut e = vec![0; nvars];
        for &v in vars {
            e[v] += 1;
        }
        Self::monomial(nvars, BigUint::from(coeff), e)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigUint)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, exps: Vec<u32>, coeff: BigUint) {
        if coeff.is_zero() {
            return;
        }
        *self.terms.entry(exps).or_insert_with(BigUint::zero) += coeff;
    }

    /// Largest exponent of variable `v`.
    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|e| e[v]).max().unwrap_or(0)
    }

    /// Variables with a positive exponent in some term.
    pub fn occurring_vars(&self) -> Vec<usize> {
        (0..self.nvars).filter(|&v| self.terms.keys().any(|e| e[v] > 0)).collect()
    }

    pub fn eval_int(&self, a: &[BigInt]) -> BigInt {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(a)
                    .filter(|(&k, _)| k > 0)
                    .fold(BigInt::from(c.clone()), |acc, (&k, x)| acc * Pow::pow(x, k))
            })
            .sum()
    }

    pub fn eval_rat(&self, a: &[BigRational]) -> BigRational {
        self.terms
            .iter()
            .map(|(e, c)| {
                e.iter()
                    .zip(a)
                    .filter(|(&k, _)| k > 0)
                    .fold(BigRational::from_integer(BigInt::from(c.clone())), |acc, (&k, x)| acc * Pow::pow(x, k as i32))
            })
            .fold(BigRational::zero(), |acc, t| acc + t)
    }

    /// The same polynomial over a larger variable set: variable `i` becomes `map[i]`.
    pub fn remap(&self, nvars: usize, map: &[usize]) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in &self.terms {
            let mut ne = vec![0; nvars];
            for (i, &k) in e.iter().enumerate() {
                ne[map[i]] += k;
            }
            p.add_term(ne, c.clone());
        }
        p
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    fn add(self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c.clone());
        }
        p
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars, "variable count");
        let mut p = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, c1 * c2);
            }
        }
        p
    }
}

/// File syntax: `coeff e1 … em; coeff …` (empty for the zero polynomial).
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(e, c)| {
                let exps: Vec<String> = e.iter().map(|k| k.to_string()).collect();
                format!("{c} {}", exps.join(" "))
            })
            .collect();
        f.write_str(&parts.join("; "))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "poly[{}]({self})", self.nvars)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_evaluation() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let s = &x + &y;
        let sq = &s * &s; // x² + 2xy + y²
        assert_eq!(sq.terms().count(), 3);
        let a = [BigInt::from(3), BigInt::from(-5)];
        assert_eq!(sq.eval_int(&a), BigInt::from(4));
        let r = [BigRational::new(1.into(), 2.into()), BigRational::new(1.into(), 3.into())];
        assert_eq!(sq.eval_rat(&r), BigRational::new(25.into(), 36.into()));
        assert_eq!(sq.degree_in(0), 2);
        assert_eq!(Polynomial::zero(2).eval_int(&a), BigInt::zero());
    }

    #[test]
    fn constants_use_the_zero_exponent() {
        let c = Polynomial::constant(3, 7);
        assert_eq!(c.to_string(), "7 0 0 0");
        assert!(c.occurring_vars().is_empty());
        assert!(Polynomial::constant(3, 0).is_zero());
    }
}
